//! Runtime against edge count on random graphs, with a log-log fit.
//!
//! ```text
//! cargo run --release --example scalability -- [method] [sparse|dense] [min_edges] [max_edges] [points] [cold|warm]
//! cargo run --release --example scalability -- nodesam sparse 10000 1000000 5
//! cargo run --release --example scalability -- motifswap dense 1000 100000 5
//! ```

use graphaug::verify::{log_sizes, measure_scaling, GraphFamily, ScalingConfig};
use graphaug::{Augmenter, Method};

fn main() -> graphaug::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, default: &str| args.get(i).cloned().unwrap_or_else(|| default.to_string());
    let method: Method = arg(0, "nodesam").parse()?;
    let family = match arg(1, "sparse").as_str() {
        "dense" => GraphFamily::Dense,
        _ => GraphFamily::Sparse { avg_degree: 6.0 },
    };
    let lo: usize = arg(2, "10000").parse().expect("min_edges");
    let hi: usize = arg(3, "1000000").parse().expect("max_edges");
    let points: usize = arg(4, "5").parse().expect("points");

    let mut cfg = ScalingConfig::single(family, log_sizes(lo, hi, points), 11);
    cfg.cold_cache = arg(5, "cold") != "warm";
    let res = measure_scaling(&Augmenter::new(method), &cfg, 0)?;
    print!("{}", res.points_csv());
    for (name, fit) in &res.fits {
        println!(
            "{method} on {name}: slope {:.3}, r2 {:.4}, time ratio per doubling {:.2}",
            fit.slope,
            fit.r2,
            2f64.powf(fit.slope)
        );
    }
    Ok(())
}
