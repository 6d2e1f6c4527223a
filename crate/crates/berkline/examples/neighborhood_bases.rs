//! Membership in the three neighborhood-basis shapes around residue-field
//! points. Every window comparison is exact rational arithmetic.
//!
//! ```bash
//! cargo run -p berkline --example neighborhood_bases
//! ```

use std::collections::BTreeSet;

use berkline::points::{BerkPoint, DiskPoint, GammaPoint};
use berkline::topology::{nbhd_contains, NeighborhoodDatum};
use berkline::valuation::{rat, ratio, ExtRational, Prime};

fn show(datum: &NeighborhoodDatum, name: &str, pt: &BerkPoint) {
    println!("  {name:<34} -> {}", nbhd_contains(datum, pt));
}

fn main() -> berkline::Result<()> {
    let p = Prime::new(2)?;

    // N1 around zeta_{Q(1), 1/2}: window (1/4, 3/4) on |t-1|, omega > 3.
    let n1 = NeighborhoodDatum::n1(p, 1, ratio(1, 2), ratio(1, 4), 3)?;
    println!("N1(b=1, tau=1/2, eps=1/4, m=3):");
    let inside: BerkPoint =
        DiskPoint::new(p, rat(1), ExtRational::finite(ratio(1, 5)), rat(5))?.into();
    show(&n1, "zeta_{1,2^(-1/5)}^5 (value 1/2)", &inside);
    let stratum: BerkPoint = GammaPoint::linear(p, 1, ratio(2, 5))?.into();
    show(&n1, "gamma_{t+1, 2/5}", &stratum);
    let outside: BerkPoint = DiskPoint::new(p, rat(0), ExtRational::Infinity, rat(10))?.into();
    show(&n1, "zeta_{0,0}^10 (value 1)", &outside);

    // N2 around zeta_{0_F, 2}: window (3/2, 5/2) on |t|.
    let n2 = NeighborhoodDatum::n2(p, rat(2), ratio(1, 2), 1)?;
    println!("N2(tau=2, eps=1/2, m=1):");
    let approach: BerkPoint =
        DiskPoint::new(p, rat(0), ExtRational::finite(ratio(-1, 4)), rat(4))?.into();
    show(&n2, "zeta_{0,2^(1/4)}^4 (value 2)", &approach);
    let ray: BerkPoint = GammaPoint::new(p, berkline::FpPoly::var(p), rat(2))?.into();
    show(&n2, "gamma_{t, 2}", &ray);

    // N3 around the trivial norm, naming only the residue 0.
    let n3 = NeighborhoodDatum::n3(p, BTreeSet::from([0]), ratio(1, 2), 1)?;
    println!("N3(X={{0}}, eps=1/2, m=1):");
    let trivial: BerkPoint = GammaPoint::linear(p, 1, rat(1))?.into();
    show(&n3, "the trivial norm", &trivial);
    let named_near: BerkPoint = GammaPoint::linear(p, 0, ratio(3, 4))?.into();
    show(&n3, "gamma_{t, 3/4} (named, near 1)", &named_near);
    let named_far: BerkPoint = GammaPoint::linear(p, 0, ratio(1, 4))?.into();
    show(&n3, "gamma_{t, 1/4} (named, deep)", &named_far);
    let unnamed: BerkPoint = GammaPoint::linear(p, 1, ratio(1, 4))?.into();
    show(&n3, "gamma_{t+1, 1/4} (unnamed)", &unnamed);

    Ok(())
}
