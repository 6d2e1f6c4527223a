//! The uniform structure on the affine line: entourage pseudo-metrics,
//! neighborhood-basis membership, convergence classification, and explicit
//! path sampling.
//!
//! The topology is pointwise convergence of seminorms, induced by
//! entourages that compare finitely many polynomial evaluations within an
//! epsilon. The disk family `A^1_K x [1, oo)` sits as an open dense subset
//! whose complement is the residue-field line, and neighborhoods of
//! residue-field points come in three shapes (here N1, N2, N3) indexed by
//! the residue datum, an evaluation window, and an omega cutoff.

mod classify;
mod path;

pub use classify::{classify_limit, Classification, NetSample, Verdict};
pub use path::path_sample;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::points::{BerkPoint, GammaPoint};
use crate::polynomial::RationalPoly;
use crate::valuation::{rat, Prime, Rational};

/// The finite polynomial set an entourage compares evaluations on.
#[derive(Debug, Clone)]
pub struct TestSet {
    polys: Vec<RationalPoly>,
}

impl TestSet {
    pub fn new(polys: Vec<RationalPoly>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::InvalidTestSet("test set must be nonempty".into()));
        }
        Ok(TestSet { polys })
    }

    /// The default separating set `{t, t-1, t^2+2, t^3-t}`.
    pub fn canonical() -> Self {
        let t = RationalPoly::var();
        TestSet {
            polys: vec![
                t.clone(),
                RationalPoly::var_minus(&Rational::one()),
                &(&t * &t) + &RationalPoly::constant(rat(2)),
                &t.pow(3) - &t,
            ],
        }
    }

    pub fn polys(&self) -> &[RationalPoly] {
        &self.polys
    }
}

/// Pseudo-metric of the entourage with test set `X`: the maximum over `X`
/// of the float distance between the two evaluations. Symmetric, zero on
/// equal points; integral polynomials are required whenever a
/// residue-field point participates.
pub fn entourage_dist(a: &BerkPoint, b: &BerkPoint, x: &TestSet) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for f in x.polys() {
        let va = a.eval(f)?.to_f64();
        let vb = b.eval(f)?.to_f64();
        worst = worst.max((va - vb).abs());
    }
    Ok(worst)
}

/// Parameters of a basic open neighborhood of a residue-field point.
///
/// All three shapes remove the closed slab `omega <= m` and keep an exact
/// rational evaluation window:
///
/// - `N1(b, tau, eps, m)`: around `zeta_{Q(b), tau}` with `tau in [0,1)`,
///   window `| |t-b|^omega - tau | < eps`;
/// - `N2(tau, eps, m)`: around `zeta_{0, tau}` with `tau > 1`, window on
///   `|t|^omega`;
/// - `N3(X, eps, m)`: around the trivial norm, windows `| |t-c|^omega - 1 |
///   < eps` for every `c` in the finite residue set `X` (which must
///   contain 0).
#[derive(Debug, Clone)]
pub struct NeighborhoodDatum {
    p: Prime,
    kind: NbhdKind,
    eps: Rational,
    omega_cutoff: u64,
}

#[derive(Debug, Clone)]
enum NbhdKind {
    N1 { b: u64, tau: Rational },
    N2 { tau: Rational },
    N3 { residues: BTreeSet<u64> },
}

impl NeighborhoodDatum {
    pub fn n1(p: Prime, b: u64, tau: Rational, eps: Rational, omega_cutoff: u64) -> Result<Self> {
        if b >= p.get() {
            return Err(Error::InvalidDatum(format!(
                "b = {b} is not a residue mod {p}"
            )));
        }
        if tau < rat(0) || tau >= Rational::one() {
            return Err(Error::InvalidDatum(format!("N1 needs tau in [0,1), got {tau}")));
        }
        let gap = Rational::one() - &tau;
        check_eps(&eps, &gap, "1 - tau")?;
        check_cutoff(omega_cutoff)?;
        Ok(NeighborhoodDatum { p, kind: NbhdKind::N1 { b, tau }, eps, omega_cutoff })
    }

    pub fn n2(p: Prime, tau: Rational, eps: Rational, omega_cutoff: u64) -> Result<Self> {
        if tau <= Rational::one() {
            return Err(Error::InvalidDatum(format!("N2 needs tau > 1, got {tau}")));
        }
        let gap = &tau - Rational::one();
        check_eps(&eps, &gap, "tau - 1")?;
        check_cutoff(omega_cutoff)?;
        Ok(NeighborhoodDatum { p, kind: NbhdKind::N2 { tau }, eps, omega_cutoff })
    }

    pub fn n3(
        p: Prime,
        residues: BTreeSet<u64>,
        eps: Rational,
        omega_cutoff: u64,
    ) -> Result<Self> {
        if !residues.contains(&0) {
            return Err(Error::InvalidDatum("N3 residue set must contain 0".into()));
        }
        if residues.iter().any(|&c| c >= p.get()) {
            return Err(Error::InvalidDatum(format!(
                "N3 residues must lie in [0, {})",
                p.get()
            )));
        }
        check_eps(&eps, &Rational::one(), "1")?;
        check_cutoff(omega_cutoff)?;
        Ok(NeighborhoodDatum { p, kind: NbhdKind::N3 { residues }, eps, omega_cutoff })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }

    pub fn omega_cutoff(&self) -> u64 {
        self.omega_cutoff
    }

    /// The gamma point this neighborhood is built around.
    pub fn base_point(&self) -> GammaPoint {
        match &self.kind {
            NbhdKind::N1 { b, tau } => {
                GammaPoint::linear(self.p, *b, tau.clone()).expect("valid datum")
            }
            NbhdKind::N2 { tau } => GammaPoint::new(
                self.p,
                crate::polynomial::FpPoly::var(self.p),
                tau.clone(),
            )
            .expect("valid datum"),
            NbhdKind::N3 { .. } => {
                GammaPoint::linear(self.p, 0, Rational::one()).expect("valid datum")
            }
        }
    }
}

fn check_eps(eps: &Rational, gap: &Rational, bound: &str) -> Result<()> {
    if eps <= &rat(0) || eps >= gap {
        return Err(Error::InvalidDatum(format!(
            "epsilon must lie in (0, {bound}), got {eps}"
        )));
    }
    Ok(())
}

fn check_cutoff(m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidDatum("omega cutoff must be >= 1".into()));
    }
    Ok(())
}

/// Literal membership test against the displayed set descriptions. Disk
/// and chain points are checked through their seminorm and omega
/// component; residue-field points against the listed strata. All window
/// comparisons are exact.
pub fn nbhd_contains(datum: &NeighborhoodDatum, pt: &BerkPoint) -> bool {
    if pt.prime() != datum.p {
        return false;
    }
    match pt {
        BerkPoint::Disk(_) | BerkPoint::Chain(_) => {
            let omega = pt.omega().expect("disk family has an omega");
            if omega <= &rat(datum.omega_cutoff as i64) {
                return false;
            }
            match &datum.kind {
                NbhdKind::N1 { b, tau } => {
                    window_contains(pt, *b, tau, &datum.eps)
                }
                NbhdKind::N2 { tau } => window_contains(pt, 0, tau, &datum.eps),
                NbhdKind::N3 { residues } => residues
                    .iter()
                    .all(|&c| window_contains(pt, c, &Rational::one(), &datum.eps)),
            }
        }
        BerkPoint::Gamma(g) => gamma_contains(datum, g),
    }
}

/// `tau - eps < |t - b|_pt < tau + eps`, exactly.
fn window_contains(pt: &BerkPoint, b: u64, tau: &Rational, eps: &Rational) -> bool {
    let f = RationalPoly::var_minus(&rat(b as i64));
    let v = pt.eval(&f).expect("t - b is integral");
    let lower = tau - eps;
    let upper = tau + eps;
    v.cmp_rational(&lower) == Ordering::Greater && v.cmp_rational(&upper) == Ordering::Less
}

fn gamma_contains(datum: &NeighborhoodDatum, g: &GammaPoint) -> bool {
    let one = Rational::one();
    let kappa = g.kappa();
    match &datum.kind {
        // { zeta_{Q(b), upsilon} : upsilon in [0,1), |upsilon - tau| < eps }
        NbhdKind::N1 { b, tau } => {
            is_linear_at(g, datum.p, *b)
                && kappa < &one
                && (kappa - tau).abs() < datum.eps
        }
        // { zeta_{0_F, upsilon} : tau - eps < upsilon < tau + eps }
        NbhdKind::N2 { tau } => {
            g.q().is_var()
                && kappa > &(tau - &datum.eps)
                && kappa < &(tau + &datum.eps)
        }
        NbhdKind::N3 { residues } => {
            // the trivial norm and the segment just above it on the t-ray
            if g.is_trivial_norm()
                || (g.q().is_var() && kappa >= &one && kappa < &(&one + &datum.eps))
            {
                return true;
            }
            if kappa >= &one {
                return false;
            }
            match linear_residue(g, datum.p) {
                // named residues only within (1 - eps, 1)
                Some(c) if residues.contains(&c) => kappa > &(&one - &datum.eps),
                // unnamed residues contribute their whole [0,1) stratum
                Some(_) => true,
                // higher-degree residue points are not in the listed strata
                None => false,
            }
        }
    }
}

fn is_linear_at(g: &GammaPoint, p: Prime, b: u64) -> bool {
    linear_residue(g, p) == Some(b % p.get())
}

/// The residue `c` with `q = t - c`, if `q` is linear.
fn linear_residue(g: &GammaPoint, p: Prime) -> Option<u64> {
    let q = g.q();
    if q.degree() != Some(1) || !q.is_monic() {
        return None;
    }
    Some((p.get() - q.coeff(0)) % p.get())
}
