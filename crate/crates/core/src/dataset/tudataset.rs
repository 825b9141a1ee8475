//! Reader and writer for the TUDataset plain-text layout.
//!
//! ```text
//! <name>_A.txt                 "i, j" per line, 1-indexed, both directions
//! <name>_graph_indicator.txt   graph id (1-indexed) per node line
//! <name>_graph_labels.txt      optional, integer class per graph
//! <name>_node_labels.txt       optional, integer per node
//! <name>_node_attributes.txt   optional, comma-separated reals per node
//! <name>_soft_labels.txt       written by this crate, one distribution per graph
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::degree_onehot;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphSet};

/// Irregularities tolerated while loading.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LoadReport {
    /// Lines in the adjacency file.
    pub directed_lines: usize,
    /// Undirected pairs listed in only one direction.
    pub one_directional: usize,
    pub self_loops_dropped: usize,
    /// Original graph label values, in class-index order.
    pub label_values: Vec<i64>,
    pub feature_source: FeatureSource,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FeatureSource {
    NodeLabels,
    NodeAttributes,
    #[default]
    DegreeOneHot,
}

fn file(dir: &Path, name: &str, suffix: &str) -> PathBuf {
    dir.join(format!("{name}_{suffix}.txt"))
}

fn read_required(path: &Path) -> Result<String> {
    if !path.is_file() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    Ok(fs::read_to_string(path)?)
}

fn read_optional(path: &Path) -> Result<Option<String>> {
    if path.is_file() {
        Ok(Some(fs::read_to_string(path)?))
    } else {
        Ok(None)
    }
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        file: path.display().to_string(),
        line,
        message: message.into(),
    }
}

/// Non-blank lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_ints(path: &Path, text: &str) -> Result<Vec<i64>> {
    lines(text)
        .map(|(n, l)| {
            l.parse::<i64>()
                .map_err(|_| parse_err(path, n, format!("expected an integer, got `{l}`")))
        })
        .collect()
}

/// Dense indices for the sorted distinct values of `values`.
fn rank_values(values: &[i64]) -> (Vec<usize>, Vec<i64>) {
    let distinct: Vec<i64> = values
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let idx = values
        .iter()
        .map(|v| distinct.binary_search(v).expect("value is present"))
        .collect();
    (idx, distinct)
}

pub fn load_tudataset(dir: &Path, name: &str) -> Result<GraphSet> {
    load_tudataset_report(dir, name).map(|(set, _)| set)
}

/// Loads `<dir>/<name>_*.txt`. Node features come from node labels
/// (one-hot), else node attributes, else a one-hot of the node degree.
pub fn load_tudataset_report(dir: &Path, name: &str) -> Result<(GraphSet, LoadReport)> {
    let a_path = file(dir, name, "A");
    let ind_path = file(dir, name, "graph_indicator");
    let gl_path = file(dir, name, "graph_labels");
    let a_text = read_required(&a_path)?;
    let ind_text = read_required(&ind_path)?;
    let gl_text = read_optional(&gl_path)?;

    let indicator = parse_ints(&ind_path, &ind_text)?;
    let (graph_of, _) = rank_values(&indicator);
    let num_nodes = indicator.len();
    let num_ids = graph_of.iter().max().map_or(0, |&g| g + 1);
    // without a label file every graph gets class 0
    let raw_labels = match &gl_text {
        Some(text) => parse_ints(&gl_path, text)?,
        None => vec![0; num_ids],
    };
    let num_graphs = raw_labels.len();
    {
        let g = num_ids;
        if g > num_graphs {
            return Err(parse_err(
                &ind_path,
                0,
                format!("{g} graph ids but {num_graphs} graph labels"),
            ));
        }
    }

    // local index of every node inside its graph
    let mut sizes = vec![0usize; num_graphs];
    let mut local = Vec::with_capacity(num_nodes);
    for &g in &graph_of {
        local.push(sizes[g]);
        sizes[g] += 1;
    }

    let mut report = LoadReport::default();
    let mut pairs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); num_graphs];
    for (n, l) in lines(&a_text) {
        let mut it = l.split(',').map(str::trim);
        let (Some(x), Some(y), None) = (it.next(), it.next(), it.next()) else {
            return Err(parse_err(&a_path, n, format!("expected `i, j`, got `{l}`")));
        };
        let parse = |s: &str| -> Result<usize> {
            let v = s
                .parse::<usize>()
                .map_err(|_| parse_err(&a_path, n, format!("expected a node id, got `{s}`")))?;
            if v == 0 || v > num_nodes {
                return Err(parse_err(&a_path, n, format!("dangling node id {v}")));
            }
            Ok(v - 1)
        };
        let (u, v) = (parse(x)?, parse(y)?);
        report.directed_lines += 1;
        if u == v {
            report.self_loops_dropped += 1;
            continue;
        }
        let g = graph_of[u];
        if graph_of[v] != g {
            return Err(parse_err(&a_path, n, "edge joins two different graphs"));
        }
        let (a, b) = (local[u], local[v]);
        pairs[g].push((a.min(b), a.max(b)));
    }

    let node_labels = read_optional(&file(dir, name, "node_labels"))?;
    let attr_path = file(dir, name, "node_attributes");
    let node_attrs = read_optional(&attr_path)?;
    let (features, dim) = if let Some(text) = node_labels {
        let path = file(dir, name, "node_labels");
        let values = parse_ints(&path, &text)?;
        if values.len() != num_nodes {
            return Err(parse_err(&path, 0, "one node label per node expected"));
        }
        let (idx, distinct) = rank_values(&values);
        let d = distinct.len();
        let mut x = vec![0.0; num_nodes * d];
        for (v, &i) in idx.iter().enumerate() {
            x[v * d + i] = 1.0;
        }
        report.feature_source = FeatureSource::NodeLabels;
        (Some(x), d)
    } else if let Some(text) = node_attrs {
        let mut rows = Vec::with_capacity(num_nodes);
        for (n, l) in lines(&text) {
            let row: Vec<f64> = l
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| parse_err(&attr_path, n, format!("bad real `{s}`")))
                })
                .collect::<Result<_>>()?;
            rows.push(row);
        }
        if rows.len() != num_nodes {
            return Err(parse_err(
                &attr_path,
                0,
                "one attribute row per node expected",
            ));
        }
        let d = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != d) {
            return Err(parse_err(&attr_path, 0, "ragged attribute rows"));
        }
        report.feature_source = FeatureSource::NodeAttributes;
        (Some(rows.concat()), d)
    } else {
        (None, 0)
    };

    let (label_idx, label_values) = rank_values(&raw_labels);
    report.label_values = label_values.clone();
    let mut graphs = Vec::with_capacity(num_graphs);
    let mut offset = 0;
    for (g, mut p) in pairs.into_iter().enumerate() {
        p.sort_unstable();
        let before = p.len();
        p.dedup();
        // a pair listed in both directions collapses from 2 entries to 1
        let doubled = before - p.len();
        report.one_directional += p.len().saturating_sub(doubled);
        let n = sizes[g];
        let x = match &features {
            Some(x) => x[offset * dim..(offset + n) * dim].to_vec(),
            None => Vec::new(),
        };
        offset += n;
        graphs.push(Graph::assemble(n, &p, x, dim, Some(label_idx[g])));
    }
    let num_classes = label_values.len().max(1);
    let set = GraphSet::new(graphs, num_classes, dim)?;
    let set = if features.is_none() {
        degree_onehot(&set)?
    } else {
        set
    };
    Ok((set, report))
}

/// Reads `<name>_soft_labels.txt` if present.
pub fn load_soft_labels(dir: &Path, name: &str) -> Result<Option<Vec<Vec<f64>>>> {
    let path = file(dir, name, "soft_labels");
    let Some(text) = read_optional(&path)? else {
        return Ok(None);
    };
    let rows = lines(&text)
        .map(|(n, l)| {
            l.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| parse_err(&path, n, format!("bad real `{s}`")))
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    Ok(Some(rows))
}

fn one_hot_columns(graphs: &[Graph], dim: usize) -> Option<Vec<usize>> {
    let mut used = vec![false; dim];
    let mut idx = Vec::new();
    for g in graphs {
        for v in 0..g.node_count() {
            let row = g.feature_row(v);
            let hot = row.iter().position(|&x| x == 1.0)?;
            if row.iter().enumerate().any(|(i, &x)| i != hot && x != 0.0) {
                return None;
            }
            used[hot] = true;
            idx.push(hot);
        }
    }
    used.iter().all(|&u| u).then_some(idx)
}

/// Writes graphs (with hard labels) and, when given, one soft-label row per
/// graph. Features go to `node_labels` when every row is one-hot and every
/// column is used, so that reloading reproduces them exactly; otherwise to
/// `node_attributes`. Optional files left over from an earlier write are
/// removed. Returns the names of the files written.
pub fn write_dataset(
    dir: &Path,
    name: &str,
    graphs: &[Graph],
    soft_labels: Option<&[Vec<f64>]>,
) -> Result<Vec<String>> {
    if graphs.is_empty() {
        return Err(Error::EmptyOutput);
    }
    if let Some(soft) = soft_labels {
        if soft.len() != graphs.len() {
            return Err(Error::SizeMismatch(soft.len(), graphs.len()));
        }
    }
    let dim = graphs[0].feature_dim();
    for (i, g) in graphs.iter().enumerate() {
        if g.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "graph {i} has no nodes and cannot be written"
            )));
        }
        if g.feature_dim() != dim {
            return Err(Error::FeatureDimMismatch(g.feature_dim(), dim));
        }
        if g.label().is_none() {
            return Err(Error::MissingLabel { index: i });
        }
    }
    fs::create_dir_all(dir)?;

    let mut a = String::new();
    let mut indicator = String::new();
    let mut labels = String::new();
    let mut offset = 1;
    for (gi, g) in graphs.iter().enumerate() {
        for u in 0..g.node_count() {
            writeln!(indicator, "{}", gi + 1).unwrap();
            for &v in g.neighbors(u) {
                writeln!(a, "{}, {}", offset + u, offset + v).unwrap();
            }
        }
        writeln!(labels, "{}", g.label().unwrap()).unwrap();
        offset += g.node_count();
    }
    let mut written = Vec::new();
    let mut put = |kind: &str, contents: String| -> Result<()> {
        let path = file(dir, name, kind);
        fs::write(&path, contents)?;
        written.push(format!("{name}_{kind}.txt"));
        Ok(())
    };
    put("A", a)?;
    put("graph_indicator", indicator)?;
    put("graph_labels", labels)?;

    if dim > 0 {
        let mut out = String::new();
        if let Some(idx) = one_hot_columns(graphs, dim) {
            for i in idx {
                writeln!(out, "{i}").unwrap();
            }
            put("node_labels", out)?;
        } else {
            for g in graphs {
                for v in 0..g.node_count() {
                    write_row(&mut out, g.feature_row(v));
                }
            }
            put("node_attributes", out)?;
        }
    }

    if let Some(soft) = soft_labels {
        let mut out = String::new();
        for row in soft {
            write_row(&mut out, row);
        }
        put("soft_labels", out)?;
    }

    for kind in ["node_labels", "node_attributes", "soft_labels"] {
        let path = file(dir, name, kind);
        if !written.contains(&format!("{name}_{kind}.txt")) && path.exists() {
            fs::remove_file(path)?;
        }
    }
    Ok(written)
}

fn write_row(out: &mut String, row: &[f64]) {
    for (i, x) in row.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write!(out, "{x}").unwrap();
    }
    out.push('\n');
}
