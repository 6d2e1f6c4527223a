//! Sample explicit paths: a radius segment between disks, the ray into a
//! residue-field point, and a kappa segment through the trivial norm.
//!
//! ```bash
//! cargo run -p berkline --example path_sampling
//! ```

use berkline::points::{json::point_to_value, BerkPoint, DiskPoint, GammaPoint};
use berkline::topology::{entourage_dist, path_sample, TestSet};
use berkline::valuation::{rat, ratio, ExtRational, Prime};

fn describe(label: &str, path: &[BerkPoint]) -> berkline::Result<()> {
    let x = TestSet::canonical();
    let mut worst: f64 = 0.0;
    for w in path.windows(2) {
        worst = worst.max(entourage_dist(&w[0], &w[1], &x)?);
    }
    println!("{label}: {} points, max consecutive distance {worst:.3e}", path.len());
    for idx in [0, path.len() / 2, path.len() - 1] {
        println!("  [{idx:>4}] {}", point_to_value(&path[idx]));
    }
    Ok(())
}

fn main() -> berkline::Result<()> {
    let p = Prime::new(2)?;

    // Stage 1: radius segment from the evaluation point at 5 out to the
    // join radius |5 - 1| = 1/4 (which recenters to 1).
    let start: BerkPoint = DiskPoint::new(p, rat(5), ExtRational::Infinity, rat(2))?.into();
    let mid: BerkPoint = DiskPoint::new(p, rat(1), ExtRational::from_int(2), rat(2))?.into();
    describe("disk -> disk  ", &path_sample(&start, &mid, 200)?)?;

    // Stage 2: through the ray base zeta_{1, (1/4)^(1/2)} and along the
    // ray (parameter 1/omega -> 0) into gamma_{t+1, 1/4}.
    let end: BerkPoint = GammaPoint::linear(p, 1, ratio(1, 4))?.into();
    describe("disk -> gamma ", &path_sample(&mid, &end, 200)?)?;

    // Residue-field line: bristle to bristle through the trivial norm.
    let a: BerkPoint = GammaPoint::linear(p, 0, ratio(1, 3))?.into();
    let b: BerkPoint =
        GammaPoint::new(p, berkline::FpPoly::new(p, vec![1, 1, 1]), ratio(1, 2))?.into();
    describe("gamma -> gamma", &path_sample(&a, &b, 200)?)?;

    Ok(())
}
