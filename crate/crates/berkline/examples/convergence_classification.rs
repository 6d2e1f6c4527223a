//! Classify the limit of sampled nets of disk points: the three families
//! that leave the disk region for the residue-field line, and one net
//! that stays interior.
//!
//! ```bash
//! cargo run -p berkline --example convergence_classification
//! ```

use berkline::points::DiskPoint;
use berkline::topology::{classify_limit, NetSample, TestSet, Verdict};
use berkline::valuation::{rat, ratio, ExtRational, Prime};

fn main() -> berkline::Result<()> {
    let p = Prime::new(2)?;
    let testset = TestSet::canonical();

    // zeta_{b, kappa^(1/n)}^n keeps |t - b|^n pinned at kappa while the
    // omega component escapes to infinity.
    let family = |center: i64, kappa_log: i64| -> berkline::Result<NetSample> {
        NetSample::new(
            (1..=30)
                .map(|n| {
                    DiskPoint::new(
                        p,
                        rat(center),
                        ExtRational::finite(ratio(kappa_log, n)),
                        rat(n),
                    )
                })
                .collect::<berkline::Result<_>>()?,
        )
    };

    for (name, net) in [
        ("zeta_{1,(1/2)^(1/n)}^n", family(1, 1)?),
        ("zeta_{0,2^(1/n)}^n    ", family(0, -1)?),
        ("zeta_{0,1}^n          ", family(0, 0)?),
    ] {
        let c = classify_limit(&net, 1e-6, 10, &testset)?;
        let limit = c
            .limit
            .as_ref()
            .map(|pt| berkline::points::json::point_to_value(pt).to_string())
            .unwrap_or_default();
        println!(
            "{name} -> {:<8} final distance {:.2e}   limit {limit}",
            c.verdict.name(),
            c.distances.last().unwrap(),
        );
    }

    // An interior net: omega settles at 1, nothing escapes.
    let interior = NetSample::new(
        (1..=20_000)
            .map(|n| {
                DiskPoint::new(p, ratio(1, 2), ExtRational::Infinity, rat(1) + ratio(1, n))
            })
            .collect::<berkline::Result<_>>()?,
    )?;
    let c = classify_limit(&interior, 1e-6, 10, &testset)?;
    if let Verdict::Interior { representative } = &c.verdict {
        println!(
            "zeta_{{1/2,0}}^(1+1/n)  -> interior  representative omega = {}",
            representative.omega()
        );
    }
    Ok(())
}
