//! Evaluate multiplicative seminorms at the three representable point
//! kinds: Gauss norms of disks, nested-disk chains, and residue-field
//! points.
//!
//! ```bash
//! cargo run -p berkline --example seminorm_evaluation
//! ```

use berkline::points::{point_eq, BerkPoint, ChainPoint, DiskPoint, GammaPoint};
use berkline::polynomial::parse_poly;
use berkline::valuation::{rat, ratio, ExtRational, Prime};

fn main() -> berkline::Result<()> {
    let p = Prime::new(2)?;
    let f = parse_poly("t^2 + 2")?;

    // Gauss norm of the disk of radius 1/2 at 0: max(|1| (1/2)^2, |2|) = 1/2.
    let disk: BerkPoint = DiskPoint::new(p, rat(0), ExtRational::from_int(1), rat(1))?.into();
    println!("|t^2+2| on D(0, 1/2)      = {}", disk.eval(&f)?);

    // Raising omega powers the whole seminorm: the same disk at omega = 3/2.
    let twisted: BerkPoint =
        DiskPoint::new(p, rat(0), ExtRational::from_int(1), ratio(3, 2))?.into();
    println!("same disk at omega = 3/2  = {}", twisted.eval(&f)?);

    // A two-disk chain evaluates at the innermost disk.
    let chain: BerkPoint = ChainPoint::new(
        p,
        vec![
            (rat(0), ExtRational::from_int(0)),
            (rat(2), ExtRational::from_int(3)),
        ],
        rat(1),
    )?
    .into();
    println!("|t^2+2| on the chain      = {}", chain.eval(&f)?);

    // Residue-field point gamma_{t+1, 1/4}: reduce mod 2, expand by t+1.
    let gamma: BerkPoint = GammaPoint::linear(p, 1, ratio(1, 4))?.into();
    println!("|t^2+2| at gamma_(t+1,1/4) = {}", gamma.eval(&f)?);

    // t - 3 reduces to t + 1, so the kappa = 0 point kills it.
    let g0: BerkPoint = GammaPoint::linear(p, 1, rat(0))?.into();
    println!("|t-3|   at gamma_(t+1,0)   = {}", g0.eval(&parse_poly("t - 3")?)?);

    // Ball recentering: D(2, 1/2) and D(0, 1/2) are the same disk.
    let a = DiskPoint::new(p, rat(2), ExtRational::from_int(1), rat(1))?;
    let b = DiskPoint::new(p, rat(0), ExtRational::from_int(1), rat(1))?;
    println!(
        "zeta_(2,1/2) == zeta_(0,1/2)? {} (canonical center {})",
        point_eq(&a.clone().into(), &b.into()),
        a.canonicalize().center(),
    );

    // Membership in the closed balls {|t| <= n}.
    let far: BerkPoint = DiskPoint::new(p, ratio(1, 2), ExtRational::Infinity, rat(1))?.into();
    println!(
        "zeta_(1/2,0): in_ball(1) = {}, in_ball(2) = {}",
        far.in_ball(1),
        far.in_ball(2)
    );
    Ok(())
}
