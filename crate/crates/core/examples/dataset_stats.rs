//! Loading a TUDataset collection: summary counts, what the loader
//! tolerated, stratified folds and a write/reload round trip.
//!
//! ```text
//! cargo run --release --example dataset_stats -- [dir] [name]
//! ```

use std::path::PathBuf;

use graphaug::dataset::{
    load_tudataset, load_tudataset_report, make_folds, write_dataset, DatasetStats,
};
use graphaug::rng;

fn main() -> graphaug::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/MUTAG"));
    let name = args.next().unwrap_or_else(|| {
        dir.file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    });

    let (set, report) = load_tudataset_report(&dir, &name)?;
    let stats = DatasetStats::compute(&set);
    println!("{name}\n{stats}");
    println!(
        "adjacency lines {}, one-directional pairs {}, self-loops dropped {}",
        report.directed_lines, report.one_directional, report.self_loops_dropped
    );
    println!(
        "label values {:?} map to classes 0..{}; features from {:?}",
        report.label_values,
        set.num_classes(),
        report.feature_source
    );

    let folds = make_folds(&set, 10, &mut rng::master(0))?;
    print!("10 folds, sizes:");
    for f in 0..folds.k {
        print!(" {}", folds.fold(f).len());
    }
    println!();

    let tmp = std::env::temp_dir().join(format!("graphaug-roundtrip-{}", std::process::id()));
    let files = write_dataset(&tmp, &name, set.graphs(), None)?;
    let back = load_tudataset(&tmp, &name)?;
    println!("wrote {files:?}; reload identical: {}", back == set);
    std::fs::remove_dir_all(&tmp)?;
    Ok(())
}
