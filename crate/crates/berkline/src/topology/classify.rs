//! Numerical classification of net limits.
//!
//! A net in the disk family converges to a residue-field point only when
//! omega diverges, and the limit is pinned down by the behavior of
//! `|t - b|^omega` across the finite residue cross-section {0, .., p-1}:
//! settling below 1 at one residue (C1), settling above 1 at every residue
//! simultaneously (C2, the value is then residue-independent), or settling
//! exactly at 1 for all residues (C3, the trivial norm). The cross-section
//! is finite here, which turns the "for all lifts" conditions into finite
//! sweeps.
//!
//! The decision runs on the trailing samples of a finite net with explicit
//! `tol`/`tail` parameters. It is a numerical classification of finite
//! data, not a proof about the underlying net. In particular the
//! "omega diverges" reading is `omega nondecreasing with spread >= tol`
//! across the tail: an omega sequence that is still creeping toward a
//! finite value looks the same at a short tail, so pick the net length
//! and tail so that omega either stabilizes below `tol` or has visibly
//! escaped.

use num_traits::{One, ToPrimitive};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::points::{json, BerkPoint, DiskPoint, GammaPoint};
use crate::polynomial::{FpPoly, RationalPoly};
use crate::valuation::{rat, Magnitude, Prime, Rational};

use super::{entourage_dist, TestSet};

/// A finite sampled net in the disk family, indices increasing.
#[derive(Debug, Clone)]
pub struct NetSample {
    samples: Vec<DiskPoint>,
}

impl NetSample {
    pub fn new(samples: Vec<DiskPoint>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidNet("net must be nonempty".into()));
        }
        let p = samples[0].prime();
        if samples.iter().any(|s| s.prime() != p) {
            return Err(Error::InvalidNet("net mixes primes".into()));
        }
        Ok(NetSample { samples })
    }

    /// Parse a JSON array of disk point objects.
    pub fn from_value(p: Prime, v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::InvalidNet("net must be a JSON array".into()))?;
        let mut samples = Vec::with_capacity(arr.len());
        for entry in arr {
            match json::point_from_value(p, entry)? {
                BerkPoint::Disk(d) => samples.push(d),
                _ => {
                    return Err(Error::InvalidNet(
                        "net samples must be disk points".into(),
                    ))
                }
            }
        }
        NetSample::new(samples)
    }

    pub fn samples(&self) -> &[DiskPoint] {
        &self.samples
    }

    pub fn prime(&self) -> Prime {
        self.samples[0].prime()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Outcome of the limit classification.
#[derive(Debug, Clone)]
pub enum Verdict {
    /// Omega stabilized and the evaluations settled: the net stays in the
    /// open disk family; the final sample stands in for the limit.
    Interior { representative: DiskPoint },
    /// `|t - b|^omega` settled at `tau1 < 1`: limit `gamma_{t-b, tau1}`.
    C1 { b: u64, tau1: Magnitude },
    /// `|t|^omega` settled at `tau2 > 1`: limit `gamma_{t, tau2}`.
    C2 { tau2: Magnitude },
    /// `|t - c|^omega -> 1` for every residue `c`: the trivial norm.
    C3,
    /// Evaluations escape every ball.
    Divergent,
    /// The trailing data supports none of the patterns at this tolerance.
    Inconclusive,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Interior { .. } => "interior",
            Verdict::C1 { .. } => "C1",
            Verdict::C2 { .. } => "C2",
            Verdict::C3 => "C3",
            Verdict::Divergent => "divergent",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub verdict: Verdict,
    /// The reported limit point: the gamma point for C1/C2/C3, the final
    /// representative for interior nets, absent otherwise.
    pub limit: Option<BerkPoint>,
    /// Entourage distance of every sample to the reported limit (to the
    /// final sample when there is none).
    pub distances: Vec<f64>,
}

/// Decide the limit pattern from the last `tail` samples at tolerance
/// `tol`, then report per-sample distances to the limit over the whole
/// net.
pub fn classify_limit(
    net: &NetSample,
    tol: f64,
    tail: usize,
    testset: &TestSet,
) -> Result<Classification> {
    if tail == 0 || tail > net.len() {
        return Err(Error::TailTooLong(tail, net.len()));
    }
    let p = net.prime();
    let tail_slice = &net.samples()[net.len() - tail..];
    let omegas: Vec<f64> = tail_slice
        .iter()
        .map(|s| s.omega().to_f64().unwrap_or(f64::NAN))
        .collect();
    let omega_span = spread(&omegas);

    let verdict = if omega_span < tol {
        interior_check(net, tail_slice, tol, testset)?
    } else if omegas.windows(2).all(|w| w[0] <= w[1]) {
        escape_check(p, tail_slice, tol)
    } else {
        Verdict::Inconclusive
    };

    let limit = limit_point(p, &verdict);
    let reference = limit
        .clone()
        .unwrap_or_else(|| BerkPoint::Disk(net.samples().last().unwrap().clone()));
    let distances = net
        .samples()
        .iter()
        .map(|s| entourage_dist(&BerkPoint::Disk(s.clone()), &reference, testset))
        .collect::<Result<Vec<f64>>>()?;
    Ok(Classification { verdict, limit, distances })
}

fn spread(values: &[f64]) -> f64 {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    hi - lo
}

/// Omega stabilized: interior when the evaluations settle too.
fn interior_check(
    net: &NetSample,
    tail: &[DiskPoint],
    tol: f64,
    testset: &TestSet,
) -> Result<Verdict> {
    let last = BerkPoint::Disk(tail.last().unwrap().clone());
    for s in tail {
        if entourage_dist(&BerkPoint::Disk(s.clone()), &last, testset)? >= tol {
            return Ok(Verdict::Inconclusive);
        }
    }
    Ok(Verdict::Interior {
        representative: net.samples().last().unwrap().clone(),
    })
}

/// Omega diverges: sweep the residue cross-section for the three limit
/// families, in order.
fn escape_check(p: Prime, tail: &[DiskPoint], tol: f64) -> Verdict {
    // C1: |t - b|^omega settles strictly below 1 at some residue lift.
    for b in 0..p.get() {
        let vals = eval_track(tail, b);
        let last = *vals.last().unwrap();
        if spread(&vals) < tol && last < 1.0 - tol {
            let tau1 = tail
                .last()
                .unwrap()
                .eval(&RationalPoly::var_minus(&rat(b as i64)));
            return Verdict::C1 { b, tau1 };
        }
    }
    // C2: |t|^omega settles strictly above 1.
    let t_vals = eval_track(tail, 0);
    let t_last = *t_vals.last().unwrap();
    if spread(&t_vals) < tol && t_last > 1.0 + tol {
        let tau2 = tail.last().unwrap().eval(&RationalPoly::var());
        return Verdict::C2 { tau2 };
    }
    // C3: |t - c|^omega pinned at 1 for the whole cross-section.
    if (0..p.get()).all(|c| eval_track(tail, c).iter().all(|v| (v - 1.0).abs() < tol)) {
        return Verdict::C3;
    }
    // Escaping every ball: |t| growth that never settles.
    if t_vals.windows(2).all(|w| w[1] >= w[0]) && t_last > 2.0 * t_vals[0] && t_last > 1.0 + tol {
        return Verdict::Divergent;
    }
    Verdict::Inconclusive
}

fn eval_track(samples: &[DiskPoint], b: u64) -> Vec<f64> {
    let f = RationalPoly::var_minus(&rat(b as i64));
    samples.iter().map(|s| s.eval(&f).to_f64()).collect()
}

/// The reported limit: C1 -> gamma_{t-b, tau1}, C2 -> gamma_{t, tau2},
/// C3 -> gamma_{t, 1}. When the settled value is not exactly rational
/// (possible for irrational log values), the float is frozen into an
/// exact binary rational; the classification is numerical either way.
fn limit_point(p: Prime, verdict: &Verdict) -> Option<BerkPoint> {
    match verdict {
        Verdict::Interior { representative } => {
            Some(BerkPoint::Disk(representative.clone()))
        }
        Verdict::C1 { b, tau1 } => {
            let kappa = magnitude_to_rational(tau1);
            Some(GammaPoint::linear(p, *b, kappa).expect("tau1 < 1").into())
        }
        Verdict::C2 { tau2 } => {
            let kappa = magnitude_to_rational(tau2);
            Some(
                GammaPoint::new(p, FpPoly::var(p), kappa)
                    .expect("tau2 > 1")
                    .into(),
            )
        }
        Verdict::C3 => Some(
            GammaPoint::new(p, FpPoly::var(p), Rational::one())
                .expect("trivial norm")
                .into(),
        ),
        Verdict::Divergent | Verdict::Inconclusive => None,
    }
}

fn magnitude_to_rational(m: &Magnitude) -> Rational {
    m.as_rational()
        .or_else(|| Rational::from_float(m.to_f64()))
        .expect("settled magnitudes are finite")
}
