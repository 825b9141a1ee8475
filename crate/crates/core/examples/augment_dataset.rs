//! Augmenting a whole TUDataset collection through the library and writing
//! the result, soft labels included, back out in the same format.
//!
//! ```text
//! cargo run --release --example augment_dataset -- [method] [copies] [out_dir]
//! ```

use std::path::PathBuf;

use graphaug::dataset::{load_soft_labels, load_tudataset, write_dataset, DatasetStats};
use graphaug::rng;
use graphaug::{Augmenter, Method};

fn main() -> graphaug::Result<()> {
    let mut args = std::env::args().skip(1);
    let method: Method = args.next().as_deref().unwrap_or("submix").parse()?;
    let copies: usize = args.next().map_or(2, |s| s.parse().expect("copies"));
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| {
        std::env::temp_dir().join(format!("graphaug-augmented-{}", std::process::id()))
    });

    let set = load_tudataset(
        &PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/MUTAG"),
        "MUTAG",
    )?;
    let aug = Augmenter::new(method);
    let mut graphs = Vec::new();
    let mut soft = Vec::new();
    let mut skipped = 0;
    for i in 0..set.len() {
        for c in 0..copies {
            match aug.apply(&set, i, &mut rng::stream(0, i as u64, c as u64)) {
                Ok(s) => {
                    graphs.push(s.graph);
                    soft.push(s.soft_label);
                }
                Err(e) if e.is_inapplicable() => skipped += 1,
                Err(e) => return Err(e),
            }
        }
    }

    let files = write_dataset(&out, "MUTAG", &graphs, Some(&soft))?;
    let back = load_tudataset(&out, "MUTAG")?;
    let labels = load_soft_labels(&out, "MUTAG")?.unwrap_or_default();
    let mixed = labels
        .iter()
        .filter(|row| row.iter().all(|&p| p < 1.0))
        .count();
    println!("{method} x{copies}: {skipped} inputs skipped as inapplicable");
    println!("before\n{}", DatasetStats::compute(&set));
    println!("after\n{}", DatasetStats::compute(&back));
    println!("{mixed} of {} soft labels are mixed", labels.len());
    println!("wrote {} files to {}", files.len(), out.display());
    Ok(())
}
