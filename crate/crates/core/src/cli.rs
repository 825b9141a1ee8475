//! The `graphaug` command line: `augment`, `verify`, `bench`, `stats` and
//! `replay`.
//!
//! Every command that writes to `--output` also writes `manifest.json`,
//! whose `config` block can be fed back through `replay`.
//!
//! Exit codes: 0 on success, 1 when a verified property fails, 2 on usage,
//! input or output errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::augment::{Augmenter, Method};
use crate::baselines::DEFAULT_RHO;
use crate::dataset::{load_tudataset, write_dataset, DatasetStats};
use crate::error::{Error, Result};
use crate::rng;
use crate::submix::{AugmentedSample, DEFAULT_P};
use crate::verify::{
    check_properties, delta_distribution, log_sizes, measure_scaling, property_corpus,
    CorpusConfig, DeltaDistribution, GraphFamily, Property, PropertyReport, ScalingConfig, Verdict,
};
use crate::GraphSet;

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Parser)]
#[command(
    name = "graphaug",
    version,
    about = "Graph augmentation and property checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write augmented copies of a TUDataset collection.
    Augment(AugmentArgs),
    /// Estimate properties P1 to P5 for one or more methods.
    Verify(VerifyArgs),
    /// Time methods on random graphs of growing size.
    Bench(BenchArgs),
    /// Summary counts of a TUDataset collection.
    Stats(StatsArgs),
    /// Re-run the command recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// Directory holding `<name>_A.txt` and friends.
    #[arg(long)]
    pub input: PathBuf,
    /// File prefix; defaults to the directory name.
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Debug, Args)]
pub struct MethodArgs {
    /// Augmentation method(s), comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub method: Vec<String>,
    /// Variant applied to every method (nodesam: base, split-only,
    /// merge-only, full; submix: base, full).
    #[arg(long)]
    pub variant: Option<String>,
    /// SubMix replacement ratio.
    #[arg(long = "p", default_value_t = DEFAULT_P)]
    pub p: f64,
    /// GraphCrop kept fraction.
    #[arg(long, default_value_t = DEFAULT_RHO)]
    pub rho: f64,
    /// DropEdge and AddEdge applications per augmentation.
    #[arg(long, default_value_t = 1)]
    pub repeat: usize,
}

#[derive(Debug, Args)]
pub struct TimingArgs {
    /// Edge counts to time, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    #[arg(long, value_enum, default_value_t = FamilyArg::Sparse)]
    pub family: FamilyArg,
    /// Average degree of the sparse family.
    #[arg(long, default_value_t = 6.0)]
    pub degree: f64,
    /// Timed runs per size.
    #[arg(long, default_value_t = 11)]
    pub repeats: usize,
    /// Skip cache flushing between timed runs.
    #[arg(long)]
    pub warm: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Sparse,
    Dense,
}

#[derive(Debug, Args)]
pub struct AugmentArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub method: MethodArgs,
    /// Augmented samples per input graph.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub method: MethodArgs,
    /// Property to check (p1..p5), comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        required_unless_present = "all_properties"
    )]
    pub property: Vec<Property>,
    #[arg(long, conflicts_with = "property")]
    pub all_properties: bool,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
    /// Check on the input graphs alone. By default random triangle-rich
    /// graphs and disjoint unions of input pairs are added, without which
    /// size and connectivity checks cannot tell methods apart on
    /// triangle-free, all-connected collections.
    #[arg(long)]
    pub input_only: bool,
    #[command(flatten)]
    pub timing: TimingArgs,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub method: MethodArgs,
    #[command(flatten)]
    pub timing: TimingArgs,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    /// Where to write; defaults to no files for verify, bench and stats.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Augment,
    Verify,
    Bench,
    Stats,
}

/// A fully resolved invocation. This is what manifests record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub input: Option<PathBuf>,
    pub name: Option<String>,
    pub methods: Vec<Method>,
    pub p: f64,
    pub rho: f64,
    pub repeat: usize,
    pub count: usize,
    pub trials: usize,
    pub seed: Option<u64>,
    pub properties: Vec<Property>,
    pub extend_corpus: bool,
    pub family: GraphFamily,
    pub sizes: Vec<usize>,
    pub repeats: usize,
    pub cold_cache: bool,
    pub format: Format,
    /// Not recorded, so a replay into another directory writes the same
    /// manifest.
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    fn base(command: CommandKind) -> Self {
        Self {
            command,
            input: None,
            name: None,
            methods: Vec::new(),
            p: DEFAULT_P,
            rho: DEFAULT_RHO,
            repeat: 1,
            count: 1,
            trials: 0,
            seed: None,
            properties: Vec::new(),
            extend_corpus: false,
            family: GraphFamily::Sparse { avg_degree: 6.0 },
            sizes: Vec::new(),
            repeats: 11,
            cold_cache: true,
            format: Format::Text,
            output: None,
        }
    }

    fn with_data(mut self, d: DataArgs) -> Self {
        self.name = Some(d.name.unwrap_or_else(|| dir_name(&d.input)));
        self.input = Some(d.input);
        self
    }

    fn with_methods(mut self, m: MethodArgs) -> Result<Self> {
        self.methods = m
            .method
            .iter()
            .map(|name| Method::parse(name, m.variant.as_deref()))
            .collect::<Result<_>>()?;
        self.p = m.p;
        self.rho = m.rho;
        self.repeat = m.repeat;
        Ok(self)
    }

    fn with_timing(mut self, t: TimingArgs) -> Self {
        self.family = match t.family {
            FamilyArg::Sparse => GraphFamily::Sparse {
                avg_degree: t.degree,
            },
            FamilyArg::Dense => GraphFamily::Dense,
        };
        self.sizes = t.sizes;
        self.repeats = t.repeats;
        self.cold_cache = !t.warm;
        self
    }

    /// Resolves parsed arguments. `replay` reads its manifest here.
    pub fn from_command(cmd: Command) -> Result<Self> {
        Ok(match cmd {
            Command::Augment(a) => {
                let mut c = RunConfig::base(CommandKind::Augment)
                    .with_data(a.data)
                    .with_methods(a.method)?;
                c.count = a.count;
                c.seed = Some(a.seed);
                c.output = Some(a.output);
                c
            }
            Command::Verify(a) => {
                let mut c = RunConfig::base(CommandKind::Verify)
                    .with_data(a.data)
                    .with_methods(a.method)?
                    .with_timing(a.timing);
                c.properties = if a.all_properties {
                    Property::ALL.to_vec()
                } else {
                    a.property
                };
                c.trials = a.trials;
                c.seed = Some(a.seed);
                c.extend_corpus = !a.input_only;
                c.output = a.output;
                c
            }
            Command::Bench(a) => {
                let mut c = RunConfig::base(CommandKind::Bench)
                    .with_methods(a.method)?
                    .with_timing(a.timing);
                c.seed = Some(a.seed);
                c.output = a.output;
                c
            }
            Command::Stats(a) => {
                let mut c = RunConfig::base(CommandKind::Stats).with_data(a.data);
                c.format = a.format;
                c.output = a.output;
                c
            }
            Command::Replay(a) => {
                let text = fs::read_to_string(&a.manifest)?;
                let manifest: Value = serde_json::from_str(&text)?;
                let config = manifest.get("config").cloned().ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "{} has no `config` block",
                        a.manifest.display()
                    ))
                })?;
                let mut c: RunConfig = serde_json::from_value(config)?;
                c.output = a.output;
                c
            }
        })
    }

    pub fn augmenter(&self, method: Method) -> Augmenter {
        let mut a = Augmenter::new(method);
        a.p = self.p;
        a.rho = self.rho;
        a.repeat = self.repeat;
        a
    }

    fn seed(&self) -> Result<u64> {
        self.seed
            .ok_or_else(|| Error::InvalidParameter("a seed is required".into()))
    }

    fn dataset(&self) -> Result<(GraphSet, String)> {
        let input = self
            .input
            .as_deref()
            .ok_or_else(|| Error::InvalidParameter("an input directory is required".into()))?;
        let name = self.name.clone().unwrap_or_else(|| dir_name(input));
        Ok((load_tudataset(input, &name)?, name))
    }

    fn scaling(&self) -> ScalingConfig {
        let sizes = if self.sizes.is_empty() {
            log_sizes(10_000, 1_000_000, 5)
        } else {
            self.sizes.clone()
        };
        let mut s = ScalingConfig::single(self.family, sizes, self.repeats);
        s.cold_cache = self.cold_cache;
        s
    }
}

fn dir_name(p: &Path) -> String {
    p.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// What a finished command reports back.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    /// Text meant for stdout.
    pub stdout: String,
    /// True when any verified property came out FAIL.
    pub failed: bool,
    /// Files written, relative to the output directory.
    pub files: Vec<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        u8::from(self.failed)
    }
}

/// Collects output files and finishes with a manifest.
struct Sink<'a> {
    dir: Option<&'a Path>,
    files: Vec<String>,
}

impl<'a> Sink<'a> {
    fn new(dir: Option<&'a Path>) -> Result<Self> {
        if let Some(d) = dir {
            fs::create_dir_all(d)?;
        }
        Ok(Self {
            dir,
            files: Vec::new(),
        })
    }

    fn write(&mut self, file: &str, contents: &str) -> Result<()> {
        if let Some(d) = self.dir {
            fs::write(d.join(file), contents)?;
            self.files.push(file.to_string());
        }
        Ok(())
    }

    fn finish(mut self, cfg: &RunConfig, summary: Value) -> Result<Vec<String>> {
        if self.dir.is_none() {
            return Ok(Vec::new());
        }
        self.files.sort();
        let manifest = json!({
            "tool": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "config": cfg,
            "summary": summary,
            "files": self.files,
        });
        let text = serde_json::to_string_pretty(&manifest)? + "\n";
        self.write(MANIFEST, &text)?;
        Ok(self.files)
    }
}

/// Runs a resolved configuration.
pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    match cfg.command {
        CommandKind::Augment => augment(cfg),
        CommandKind::Verify => verify(cfg),
        CommandKind::Bench => bench(cfg),
        CommandKind::Stats => stats(cfg),
    }
}

fn single_method(cfg: &RunConfig) -> Result<Method> {
    match cfg.methods.as_slice() {
        [m] => Ok(*m),
        _ => Err(Error::InvalidParameter(
            "augment takes exactly one method".into(),
        )),
    }
}

fn augment(cfg: &RunConfig) -> Result<Outcome> {
    let method = single_method(cfg)?;
    let seed = cfg.seed()?;
    let out_dir = cfg
        .output
        .as_deref()
        .ok_or_else(|| Error::InvalidParameter("augment needs --output".into()))?;
    if cfg.count == 0 {
        return Err(Error::InvalidParameter("count must be positive".into()));
    }
    let (set, name) = cfg.dataset()?;
    let aug = cfg.augmenter(method);

    let mut graphs = Vec::with_capacity(set.len() * cfg.count);
    let mut soft = Vec::with_capacity(set.len() * cfg.count);
    let mut unchanged = 0usize;
    for i in 0..set.len() {
        for c in 0..cfg.count {
            let mut r = rng::stream(seed, i as u64, c as u64);
            let sample = match aug.apply(&set, i, &mut r) {
                Ok(s) => s,
                // nothing to act on: pass the graph through untouched
                Err(e) if e.is_inapplicable() => {
                    unchanged += 1;
                    AugmentedSample::hard(set.graphs()[i].clone(), set.num_classes())?
                }
                Err(e) => return Err(e),
            };
            graphs.push(sample.graph);
            soft.push(sample.soft_label);
        }
    }

    let mut sink = Sink::new(Some(out_dir))?;
    sink.files
        .extend(write_dataset(out_dir, &name, &graphs, Some(&soft))?);
    let summary = json!({
        "method": method,
        "input_graphs": set.len(),
        "output_graphs": graphs.len(),
        "unchanged": unchanged,
    });
    let files = sink.finish(cfg, summary)?;
    Ok(Outcome {
        stdout: format!(
            "{method}: wrote {} graphs ({unchanged} passed through unchanged) to {}\n",
            graphs.len(),
            out_dir.display()
        ),
        failed: false,
        files,
    })
}

fn file_tag(m: Method) -> String {
    m.to_string().replace('/', "-")
}

fn verify(cfg: &RunConfig) -> Result<Outcome> {
    let seed = cfg.seed()?;
    if cfg.methods.is_empty() || cfg.properties.is_empty() {
        return Err(Error::InvalidParameter(
            "verify needs at least one method and one property".into(),
        ));
    }
    let (base, name) = cfg.dataset()?;
    let set = if cfg.extend_corpus {
        property_corpus(&base, &CorpusConfig::default(), seed)?
    } else {
        base
    };
    let scaling = cfg.scaling();
    let trial_props = cfg.properties.iter().any(|&p| p != Property::P5);

    let mut sink = Sink::new(cfg.output.as_deref())?;
    let mut reports: Vec<PropertyReport> = Vec::new();
    let mut dists: Vec<DeltaDistribution> = Vec::new();
    for &m in &cfg.methods {
        let aug = cfg.augmenter(m);
        reports.extend(check_properties(
            &aug,
            &set,
            &cfg.properties,
            cfg.trials,
            &scaling,
            seed,
        )?);
        if trial_props {
            let d = delta_distribution(&aug, &set, &name, cfg.trials, seed)?;
            sink.write(&format!("deltas_{}.csv", file_tag(m)), &d.deltas_csv())?;
            dists.push(d);
        }
    }

    let mut csv = String::from(PropertyReport::csv_header());
    let mut stdout = String::new();
    for r in &reports {
        csv.push_str(&r.csv_row());
        writeln!(stdout, "{r}").unwrap();
        for (k, v) in &r.extra {
            writeln!(stdout, "    {k} = {v}").unwrap();
        }
    }
    sink.write("properties.csv", &csv)?;
    if !dists.is_empty() {
        let mut s = String::from(DeltaDistribution::summary_csv_header());
        for d in &dists {
            s.push_str(&d.summary_csv_row());
        }
        sink.write("deltas_summary.csv", &s)?;
    }

    let failed = reports.iter().any(|r| r.verdict == Verdict::Fail);
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| json!({"method": r.method, "property": r.property, "verdict": r.verdict}))
        .collect();
    let files = sink.finish(
        cfg,
        json!({"dataset": name, "graphs": set.len(), "reports": rows, "failed": failed}),
    )?;
    Ok(Outcome {
        stdout,
        failed,
        files,
    })
}

fn bench(cfg: &RunConfig) -> Result<Outcome> {
    let seed = cfg.seed()?;
    if cfg.methods.is_empty() {
        return Err(Error::InvalidParameter("bench needs a method".into()));
    }
    let scaling = cfg.scaling();
    let mut sink = Sink::new(cfg.output.as_deref())?;
    let mut timings = String::from("method,family,edges,nodes,median_seconds,repeats\n");
    let mut fits = String::from("method,family,slope,intercept,r2,linear\n");
    let mut stdout = String::new();
    let mut summary = Map::new();
    for &m in &cfg.methods {
        let res = measure_scaling(&cfg.augmenter(m), &scaling, seed)?;
        for p in &res.points {
            writeln!(
                timings,
                "{m},{},{},{},{:.9},{}",
                p.family, p.edges, p.nodes, p.median_seconds, p.repeats
            )
            .unwrap();
        }
        for (family, f) in &res.fits {
            writeln!(
                fits,
                "{m},{family},{:.6},{:.6},{:.6},{}",
                f.slope,
                f.intercept,
                f.r2,
                f.is_linear()
            )
            .unwrap();
            writeln!(
                stdout,
                "{m} on {family}: slope {:.3}, r2 {:.4}, doubling ratio {:.2}",
                f.slope,
                f.r2,
                2f64.powf(f.slope)
            )
            .unwrap();
            summary.insert(
                format!("{m}/{family}"),
                json!({"slope": f.slope, "r2": f.r2}),
            );
        }
    }
    sink.write("timings.csv", &timings)?;
    sink.write("fits.csv", &fits)?;
    let files = sink.finish(cfg, Value::Object(summary))?;
    Ok(Outcome {
        stdout: timings + &stdout,
        failed: false,
        files,
    })
}

#[derive(Serialize)]
struct StatsRow<'a> {
    dataset: &'a str,
    graphs: usize,
    nodes: usize,
    edges: usize,
    features: usize,
    labels: usize,
}

fn stats(cfg: &RunConfig) -> Result<Outcome> {
    let (set, name) = cfg.dataset()?;
    let s = DatasetStats::compute(&set);
    let row = StatsRow {
        dataset: &name,
        graphs: s.num_graphs,
        nodes: s.total_nodes,
        edges: s.total_edges,
        features: s.feature_dim,
        labels: s.num_labels,
    };
    let width = name.len().max(7);
    let text = format!(
        "{:<width$}  {:>7}  {:>8}  {:>8}  {:>8}  {:>6}\n{:<width$}  {:>7}  {:>8}  {:>8}  {:>8}  {:>6}\n",
        "dataset", "graphs", "nodes", "edges", "features", "labels",
        name, row.graphs, row.nodes, row.edges, row.features, row.labels,
    );
    let doc = serde_json::to_string_pretty(&row)? + "\n";
    let mut sink = Sink::new(cfg.output.as_deref())?;
    sink.write("stats.txt", &text)?;
    sink.write("stats.json", &doc)?;
    let files = sink.finish(cfg, serde_json::to_value(&row)?)?;
    Ok(Outcome {
        stdout: match cfg.format {
            Format::Text => text,
            Format::Json => doc,
        },
        failed: false,
        files,
    })
}

/// Parses `args` (program name first), runs, prints and returns the exit
/// code.
pub fn main_from<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match RunConfig::from_command(cli.command).and_then(|c| run(&c)) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig> {
        let cli = Cli::try_parse_from(std::iter::once("graphaug").chain(args.iter().copied()))
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        RunConfig::from_command(cli.command)
    }

    #[test]
    fn flags_resolve_into_a_config() {
        let c = parse(&[
            "verify",
            "--input",
            "data/MUTAG",
            "--method",
            "nodesam,dropedge",
            "--variant",
            "base",
            "--property",
            "p1,p3",
            "--seed",
            "3",
        ]);
        // dropedge has no variants
        assert!(matches!(c, Err(Error::InvalidParameter(_))));

        let c = parse(&[
            "verify",
            "--input",
            "data/MUTAG",
            "--method",
            "nodesam,dropedge",
            "--property",
            "p1,p3",
            "--seed",
            "3",
            "--p",
            "0.2",
        ])
        .unwrap();
        assert_eq!(c.name.as_deref(), Some("MUTAG"));
        assert_eq!(c.methods, vec![Method::ALL[0], Method::DropEdge]);
        assert_eq!(c.properties, vec![Property::P1, Property::P3]);
        assert_eq!((c.p, c.rho, c.seed), (0.2, DEFAULT_RHO, Some(3)));
    }

    #[test]
    fn seed_and_properties_are_mandatory() {
        assert!(
            parse(&["augment", "--input", "x", "--method", "nodesam", "--output", "o"]).is_err()
        );
        assert!(parse(&["verify", "--input", "x", "--method", "nodesam", "--seed", "1"]).is_err());
        assert!(parse(&["bench", "--method", "nodesam"]).is_err());
        assert!(parse(&["stats", "--input", "x"]).is_ok());
    }

    #[test]
    fn config_survives_a_json_round_trip() {
        let c = parse(&[
            "bench",
            "--method",
            "submix",
            "--variant",
            "base",
            "--sizes",
            "10,100",
            "--family",
            "dense",
            "--seed",
            "9",
            "--warm",
        ])
        .unwrap();
        let back: RunConfig = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
        assert!(!back.cold_cache);
        assert_eq!(back.family, GraphFamily::Dense);
    }
}
