//! Empirical P1-P5 verdicts for every registered method on MUTAG extended
//! with random triangle-rich and disconnected graphs.
//!
//! ```text
//! cargo run --release --example property_matrix -- [trials] [seed]
//! ```

use std::path::Path;

use graphaug::dataset::load_tudataset;
use graphaug::verify::{
    expected_verdict, property_corpus, property_matrix, CorpusConfig, ScalingConfig,
};
use graphaug::{Augmenter, Method};

fn main() -> graphaug::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials: usize = args.next().map_or(20_000, |s| s.parse().expect("trials"));
    let seed: u64 = args.next().map_or(0, |s| s.parse().expect("seed"));

    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/MUTAG");
    let mutag = load_tudataset(&data, "MUTAG")?;
    let corpus = property_corpus(&mutag, &CorpusConfig::default(), seed)?;
    let methods: Vec<Augmenter> = Method::ALL.iter().copied().map(Augmenter::new).collect();
    let matrix = property_matrix(&methods, &corpus, trials, &ScalingConfig::standard(), seed)?;

    println!(
        "{:<12} {:^6} {:^6} {:^6} {:^6} {:^6}",
        "method", "P1", "P2", "P3", "P4", "P5"
    );
    for row in &matrix {
        print!("{:<12}", row[0].method.to_string());
        for r in row {
            let mark = match expected_verdict(r.method, r.property) {
                Some(v) if v == r.verdict => " ",
                Some(_) => "!",
                None => "?",
            };
            print!(" {:>5}{}", r.verdict.to_string(), mark);
        }
        println!();
    }
    println!();
    for r in matrix.iter().flatten() {
        println!("{r}");
        for (k, v) in &r.extra {
            println!("    {k} = {v}");
        }
    }
    Ok(())
}
