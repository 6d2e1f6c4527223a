//! Explicit path sampling between representable points.
//!
//! Paths are built from the constructions that witness path connectedness:
//! radius segments `zeta_{s, upsilon}` with `upsilon` running linearly
//! through the join radius, omega segments at fixed seminorm data, rays
//! `zeta_{b, kappa^(1/omega)}^omega` into a residue-field point with the
//! infinite end mapped to the parameter `1/omega -> 0`, and kappa segments
//! inside the residue-field line through the trivial norm.
//!
//! Sampled radii must be exact p-powers in log scale. Radius segments are
//! therefore parameterized uniformly in the radius value and each interior
//! sample is snapped to the nearest log-radius on a fixed fine grid
//! (denominator 2^16); endpoints are exact. Ray and omega parameters are
//! exact rationals throughout, as are kappa segments.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::points::{point_eq, BerkPoint, DiskPoint, GammaPoint};
use crate::valuation::{mag_of, rat, ExtRational, Magnitude, Prime, Rational};

/// Log-radius grid for snapped interior samples.
const SNAP_DENOM: i64 = 1 << 16;

/// Sample a path from `from` to `to` with `steps + 1` points, the first
/// and last being the endpoints themselves.
///
/// Supported configurations: disk-disk (same or different omega),
/// disk-gamma along the ray construction (linear residue data only),
/// gamma-gamma through kappa segments. Chains are approximation artifacts
/// with no cited path construction and are rejected.
pub fn path_sample(
    from: &BerkPoint,
    to: &BerkPoint,
    steps: usize,
) -> Result<Vec<BerkPoint>> {
    if from.prime() != to.prime() {
        return Err(Error::UnsupportedPair("endpoints over different primes".into()));
    }
    if steps == 0 {
        return Err(Error::TooFewSteps(1));
    }
    if point_eq(from, to) {
        return Ok(vec![from.clone(); steps + 1]);
    }
    let mut points = match (from, to) {
        (BerkPoint::Chain(_), _) | (_, BerkPoint::Chain(_)) => {
            return Err(Error::UnsupportedPair(
                "chain points have no cited path construction".into(),
            ))
        }
        (BerkPoint::Disk(a), BerkPoint::Disk(b)) => disk_to_disk(a, b, steps)?,
        (BerkPoint::Disk(d), BerkPoint::Gamma(g)) => disk_to_gamma(d, g, steps)?,
        (BerkPoint::Gamma(g), BerkPoint::Disk(d)) => {
            let mut rev = disk_to_gamma(d, g, steps)?;
            rev.reverse();
            rev
        }
        (BerkPoint::Gamma(a), BerkPoint::Gamma(b)) => gamma_to_gamma(a, b, steps)?,
    };
    debug_assert_eq!(points.len(), steps + 1);
    debug_assert!(point_eq(&points[0], from));
    debug_assert!(point_eq(points.last().unwrap(), to));
    // return the literal endpoints, not their canonical stand-ins
    points[0] = from.clone();
    *points.last_mut().unwrap() = to.clone();
    Ok(points)
}

/// A path as a list of segments, each contributing `n_j` new points after
/// its shared start.
struct Assembler {
    points: Vec<BerkPoint>,
}

impl Assembler {
    fn start(pt: BerkPoint) -> Self {
        Assembler { points: vec![pt] }
    }

    /// Append a segment given as points including its start; the start
    /// must coincide with the current end and is dropped.
    fn push_segment(&mut self, seg: Vec<BerkPoint>) {
        debug_assert!(point_eq(&seg[0], self.points.last().unwrap()));
        self.points.extend(seg.into_iter().skip(1));
    }
}

/// Split `steps` across `n` segments, at least one step each.
fn allocate(steps: usize, n: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return Ok(vec![]);
    }
    if steps < n {
        return Err(Error::TooFewSteps(n));
    }
    let base = steps / n;
    let extra = steps % n;
    Ok((0..n).map(|i| base + usize::from(i < extra)).collect())
}

fn disk_to_disk(a: &DiskPoint, b: &DiskPoint, steps: usize) -> Result<Vec<BerkPoint>> {
    if a.omega() == b.omega() {
        return same_omega_path(a, b, steps);
    }
    // omega segment at a's seminorm data, then the same-omega path
    let a_at = a.with_omega(b.omega().clone())?;
    if point_eq(&a_at.clone().into(), &b.clone().into()) {
        return Ok(omega_segment(a, b.omega(), steps));
    }
    let split = allocate(steps, 2)?;
    let mut asm = Assembler::start(a.clone().into());
    asm.push_segment(omega_segment(a, b.omega(), split[0]));
    asm.push_segment(same_omega_path(&a_at, b, split[1])?);
    Ok(asm.points)
}

/// Radius/center segments through the join radius
/// `max(tau_a, tau_b, |s_a - s_b|)`.
fn same_omega_path(a: &DiskPoint, b: &DiskPoint, steps: usize) -> Result<Vec<BerkPoint>> {
    let p = a.prime();
    let join = join_radius_log(a, b);
    // each endpoint needs a segment iff it sits strictly inside the join
    let mut segs: Vec<bool> = Vec::new(); // true: a-side, false: b-side
    if a.radius_log() != &join {
        segs.push(true);
    }
    if b.radius_log() != &join {
        segs.push(false);
    }
    if segs.is_empty() {
        // both endpoints already describe the join ball
        return Ok(vec![a.clone().into(); steps + 1]);
    }
    let alloc = allocate(steps, segs.len())?;
    let mut asm = Assembler::start(a.clone().into());
    for (side, n) in segs.into_iter().zip(alloc) {
        if side {
            asm.push_segment(radius_segment(
                p,
                a.center(),
                a.radius_log(),
                &join,
                a.omega(),
                n,
            )?);
        } else {
            // the join ball recenters: switch to b's center, then descend
            let top = DiskPoint::new(p, b.center().clone(), join.clone(), a.omega().clone())?;
            debug_assert!(point_eq(
                asm.points.last().unwrap(),
                &top.clone().into()
            ));
            *asm.points.last_mut().unwrap() = top.into();
            asm.push_segment(radius_segment(
                p,
                b.center(),
                &join,
                b.radius_log(),
                a.omega(),
                n,
            )?);
        }
    }
    Ok(asm.points)
}

/// Log of the join radius `max(tau_a, tau_b, |s_a - s_b|)`; magnitudes of
/// rationals have integer log, so the max stays an exact log value.
fn join_radius_log(a: &DiskPoint, b: &DiskPoint) -> ExtRational {
    let p = a.prime();
    let sep = mag_of(&(a.center() - b.center()), p);
    let tau = Magnitude::from_logval_ext(p, a.radius_log())
        .max(Magnitude::from_logval_ext(p, b.radius_log()))
        .max(sep);
    tau.as_ppower_log().expect("radii and separations are p-powers")
}

/// `zeta_{center, upsilon}^omega` with `upsilon` linear from the start to
/// the end radius; interior samples snap to the log grid.
fn radius_segment(
    p: Prime,
    center: &Rational,
    from_log: &ExtRational,
    to_log: &ExtRational,
    omega: &Rational,
    steps: usize,
) -> Result<Vec<BerkPoint>> {
    let v_from = Magnitude::from_logval_ext(p, from_log).to_f64();
    let v_to = Magnitude::from_logval_ext(p, to_log).to_f64();
    let mut out = Vec::with_capacity(steps + 1);
    for j in 0..=steps {
        let log = if j == 0 {
            from_log.clone()
        } else if j == steps {
            to_log.clone()
        } else {
            let target = v_from + (v_to - v_from) * (j as f64 / steps as f64);
            snap_log(p, target)
        };
        out.push(DiskPoint::new(p, center.clone(), log, omega.clone())?.into());
    }
    Ok(out)
}

/// Nearest grid log-radius to a positive float radius.
fn snap_log(p: Prime, radius: f64) -> ExtRational {
    debug_assert!(radius > 0.0);
    let l = -radius.ln() / (p.get() as f64).ln();
    let scaled = (l * SNAP_DENOM as f64).round() as i128;
    ExtRational::finite(Rational::new(BigInt::from(scaled), BigInt::from(SNAP_DENOM)))
}

/// Omega varying linearly at fixed seminorm data.
fn omega_segment(a: &DiskPoint, to_omega: &Rational, steps: usize) -> Vec<BerkPoint> {
    let delta = to_omega - a.omega();
    (0..=steps)
        .map(|j| {
            let w = a.omega() + &delta * ratio_of(j, steps);
            a.with_omega(w).expect("omega stays >= 1").into()
        })
        .collect()
}

fn ratio_of(num: usize, den: usize) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The ray `zeta_{b, kappa^(1/omega)}^omega` into `gamma_{t - b, kappa}`,
/// entered from `d` through a same-omega approach to the ray base. The
/// infinite end is parameterized by `1/omega` on `(0, 1/omega_0]`, uniform,
/// with the gamma point at parameter 0.
fn disk_to_gamma(d: &DiskPoint, g: &GammaPoint, steps: usize) -> Result<Vec<BerkPoint>> {
    let p = d.prime();
    let b = ray_center(g)?;
    let kappa = g.kappa();
    let omega0 = d.omega().clone();
    // exact log of kappa when it is a pure p-power; otherwise snapped later
    let kappa_log = Magnitude::from_value(p, kappa).as_ppower_log();
    let base_log = ray_radius_log(p, kappa, &kappa_log, &omega0.recip());
    let base = DiskPoint::new(p, b.clone(), base_log, omega0.clone())?;

    let mut asm;
    let ray_steps;
    if point_eq(&d.clone().into(), &base.clone().into()) {
        asm = Assembler::start(d.clone().into());
        ray_steps = steps;
    } else {
        let split = allocate(steps, 2)?;
        asm = Assembler::start(d.clone().into());
        asm.push_segment(same_omega_path(d, &base, split[0])?);
        ray_steps = split[1];
    }

    let mut seg: Vec<BerkPoint> = Vec::with_capacity(ray_steps + 1);
    seg.push(base.clone().into());
    for j in 1..=ray_steps {
        if j == ray_steps {
            seg.push(g.clone().into());
        } else {
            // u = (1/omega0) * (n - j)/n, omega = omega0 * n / (n - j)
            let u = omega0.recip() * ratio_of(ray_steps - j, ray_steps);
            let omega = u.recip();
            let log = ray_radius_log(p, kappa, &kappa_log, &u);
            seg.push(DiskPoint::new(p, b.clone(), log, omega)?.into());
        }
    }
    asm.push_segment(seg);
    Ok(asm.points)
}

/// Log-radius of `kappa^u` (`u = 1/omega`): exact when `kappa` is a pure
/// p-power or zero, snapped to the grid otherwise.
fn ray_radius_log(
    p: Prime,
    kappa: &Rational,
    kappa_log: &Option<ExtRational>,
    u: &Rational,
) -> ExtRational {
    if kappa.is_zero() {
        return ExtRational::Infinity;
    }
    match kappa_log {
        Some(ExtRational::Finite(l)) => ExtRational::finite(l * u),
        _ => {
            let target = kappa.to_f64().unwrap().powf(u.to_f64().unwrap());
            snap_log(p, target)
        }
    }
}

/// The integral lift of the residue datum: the root of a linear `q` (so
/// `t` itself lifts to 0). The trivial norm is reached through the
/// all-residues construction at center 0. Higher-degree residue data has
/// no rational-center ray.
fn ray_center(g: &GammaPoint) -> Result<Rational> {
    let p = g.prime();
    let q = g.q();
    if q.degree() == Some(1) {
        let c = (p.get() - q.coeff(0)) % p.get();
        return Ok(rat(c as i64));
    }
    if g.is_trivial_norm() {
        return Ok(Rational::zero());
    }
    Err(Error::UnsupportedPair(format!(
        "no rational-center ray into gamma with q = {q} of degree {:?}",
        q.degree()
    )))
}

/// Kappa segments inside the residue-field line, through the trivial norm
/// when the irreducible datum differs.
fn gamma_to_gamma(a: &GammaPoint, b: &GammaPoint, steps: usize) -> Result<Vec<BerkPoint>> {
    let p = a.prime();
    let one = Rational::one();
    if a.q() == b.q() || a.is_trivial_norm() || b.is_trivial_norm() {
        let q = if a.is_trivial_norm() { b.q() } else { a.q() };
        let mut asm = Assembler::start(a.clone().into());
        asm.push_segment(kappa_segment(p, q, a.kappa(), b.kappa(), steps)?);
        return Ok(asm.points);
    }
    let split = allocate(steps, 2)?;
    let mut asm = Assembler::start(a.clone().into());
    asm.push_segment(kappa_segment(p, a.q(), a.kappa(), &one, split[0])?);
    // the trivial norm is one point: swap its representation to b's datum
    *asm.points.last_mut().unwrap() =
        GammaPoint::new(p, b.q().clone(), one.clone())?.into();
    asm.push_segment(kappa_segment(p, b.q(), &one, b.kappa(), split[1])?);
    Ok(asm.points)
}

fn kappa_segment(
    p: Prime,
    q: &crate::polynomial::FpPoly,
    from: &Rational,
    to: &Rational,
    steps: usize,
) -> Result<Vec<BerkPoint>> {
    let delta = to - from;
    (0..=steps)
        .map(|j| {
            let kappa = from + &delta * ratio_of(j, steps);
            Ok(GammaPoint::new(p, q.clone(), kappa)?.into())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::FpPoly;
    use crate::topology::{entourage_dist, TestSet};
    use crate::valuation::ratio;

    fn p2() -> Prime {
        Prime::new(2).unwrap()
    }

    fn disk(s: Rational, l: ExtRational, w: Rational) -> DiskPoint {
        DiskPoint::new(p2(), s, l, w).unwrap()
    }

    #[test]
    fn constant_path() {
        let a: BerkPoint = disk(rat(5), ExtRational::Infinity, rat(2)).into();
        let path = path_sample(&a, &a, 4).unwrap();
        assert_eq!(path.len(), 5);
        assert!(path.iter().all(|q| point_eq(q, &a)));
    }

    #[test]
    fn radius_segment_to_recentered_ball() {
        // zeta_{5,0}^2 to zeta_{1,1/4}^2: join radius |5-1| = 1/4, and
        // zeta_{5,1/4} = zeta_{1,1/4}, so a single radius segment suffices.
        let a: BerkPoint = disk(rat(5), ExtRational::Infinity, rat(2)).into();
        let b: BerkPoint = disk(rat(1), ExtRational::from_int(2), rat(2)).into();
        let path = path_sample(&a, &b, 100).unwrap();
        assert_eq!(path.len(), 101);
        assert!(point_eq(&path[0], &a));
        assert!(point_eq(path.last().unwrap(), &b));
        let x = TestSet::canonical();
        for w in path.windows(2) {
            assert!(entourage_dist(&w[0], &w[1], &x).unwrap() < 1e-2);
        }
    }

    #[test]
    fn ray_into_gamma_keeps_the_window_exact() {
        // The ray base at omega_0 = 2 is zeta_{1, (1/4)^(1/2)} = zeta_{1, 1/2};
        // from there, |t-1|^omega is exactly 1/4 at every sample.
        let a: BerkPoint = disk(rat(1), ExtRational::from_int(1), rat(2)).into();
        let g: BerkPoint = GammaPoint::linear(p2(), 1, ratio(1, 4)).unwrap().into();
        let path = path_sample(&a, &g, 64).unwrap();
        assert_eq!(path.len(), 65);
        let f = crate::polynomial::RationalPoly::var_minus(&rat(1));
        for pt in &path {
            let v = pt.eval(&f).unwrap();
            assert_eq!(v.as_rational().unwrap(), ratio(1, 4));
        }
        // omega grows monotonically along the ray
        let omegas: Vec<f64> = path
            .iter()
            .filter_map(|pt| pt.omega().map(|w| w.to_f64().unwrap()))
            .collect();
        assert!(omegas.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn off_ray_disk_connects_through_the_ray_base() {
        // Starting below the ray base (radius 1/4 < 1/2) inserts a radius
        // connector; |t-1|^2 then climbs from 1/16 to the invariant 1/4
        // and stays there.
        let a: BerkPoint = disk(rat(1), ExtRational::from_int(2), rat(2)).into();
        let g: BerkPoint = GammaPoint::linear(p2(), 1, ratio(1, 4)).unwrap().into();
        let path = path_sample(&a, &g, 64).unwrap();
        let f = crate::polynomial::RationalPoly::var_minus(&rat(1));
        let vals: Vec<f64> = path.iter().map(|pt| pt.eval(&f).unwrap().to_f64()).collect();
        assert!((vals[0] - 1.0 / 16.0).abs() < 1e-12);
        assert!((vals.last().unwrap() - 0.25).abs() < 1e-12);
        for w in vals.windows(2) {
            assert!(w[1] >= w[0] - 1e-9, "values should climb monotonically");
        }
        let x = TestSet::canonical();
        for w in path.windows(2) {
            assert!(entourage_dist(&w[0], &w[1], &x).unwrap() < 2e-2);
        }
    }

    #[test]
    fn omega_segment_between_twists() {
        let a: BerkPoint = disk(rat(3), ExtRational::from_int(1), rat(1)).into();
        let b: BerkPoint = disk(rat(3), ExtRational::from_int(1), rat(4)).into();
        let path = path_sample(&a, &b, 6).unwrap();
        assert_eq!(path.len(), 7);
        for (j, pt) in path.iter().enumerate() {
            assert_eq!(pt.omega().unwrap(), &(rat(1) + ratio(j as i64, 2)));
        }
    }

    #[test]
    fn gamma_to_gamma_through_trivial_norm() {
        let a: BerkPoint = GammaPoint::linear(p2(), 0, ratio(1, 3)).unwrap().into();
        let b: BerkPoint =
            GammaPoint::new(p2(), FpPoly::new(p2(), vec![1, 1, 1]), ratio(1, 2))
                .unwrap()
                .into();
        let path = path_sample(&a, &b, 10).unwrap();
        assert_eq!(path.len(), 11);
        assert!(point_eq(&path[0], &a));
        assert!(point_eq(path.last().unwrap(), &b));
        // the middle of the path passes through the trivial norm
        assert!(path.iter().any(|pt| match pt {
            BerkPoint::Gamma(g) => g.is_trivial_norm(),
            _ => false,
        }));
    }

    #[test]
    fn unsupported_configurations() {
        let chain: BerkPoint = crate::points::ChainPoint::new(
            p2(),
            vec![(rat(0), ExtRational::from_int(0))],
            rat(1),
        )
        .unwrap()
        .into();
        let d: BerkPoint = disk(rat(0), ExtRational::Infinity, rat(1)).into();
        assert!(matches!(
            path_sample(&chain, &d, 5),
            Err(Error::UnsupportedPair(_))
        ));
        // gamma with quadratic q and kappa < 1 has no rational-center ray
        let g: BerkPoint =
            GammaPoint::new(p2(), FpPoly::new(p2(), vec![1, 1, 1]), ratio(1, 2))
                .unwrap()
                .into();
        assert!(matches!(
            path_sample(&d, &g, 5),
            Err(Error::UnsupportedPair(_))
        ));
        assert!(matches!(path_sample(&d, &g, 0), Err(Error::TooFewSteps(_))));
    }

    #[test]
    fn two_stage_path_is_continuous_and_enters_n1() {
        use crate::topology::{nbhd_contains, NeighborhoodDatum};
        let start: BerkPoint = disk(rat(5), ExtRational::Infinity, rat(2)).into();
        let mid: BerkPoint = disk(rat(1), ExtRational::from_int(2), rat(2)).into();
        let end: BerkPoint = GammaPoint::linear(p2(), 1, ratio(1, 4)).unwrap().into();
        let mut path = path_sample(&start, &mid, 500).unwrap();
        let stage2 = path_sample(&mid, &end, 500).unwrap();
        path.extend(stage2.iter().skip(1).cloned());
        assert_eq!(path.len(), 1001);
        let x = TestSet::canonical();
        for w in path.windows(2) {
            assert!(entourage_dist(&w[0], &w[1], &x).unwrap() < 1e-2);
        }
        // The path enters the neighborhood of its gamma endpoint during
        // stage 2 and never leaves it once inside.
        let datum =
            NeighborhoodDatum::n1(p2(), 1, ratio(1, 4), ratio(1, 8), 1).unwrap();
        let first_in = path
            .iter()
            .position(|pt| nbhd_contains(&datum, pt))
            .expect("the path must reach the neighborhood");
        assert!(first_in > 500, "stage 1 sits outside the window");
        assert!(first_in < 750, "entry happens before the ray proper");
        for pt in &path[first_in..] {
            assert!(nbhd_contains(&datum, pt));
        }
    }
}
