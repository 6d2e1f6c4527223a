//! Representable points of the affine analytic line over `Z_p`, and the
//! seminorm evaluator.
//!
//! The space decomposes into omega-powered Gauss norms of closed disks in
//! `Q_p` and residue-field seminorms over `F_p`. Three variants cover the
//! representable points:
//!
//! - [`DiskPoint`]: the Gauss norm of a closed disk `D(s, tau)` with
//!   rational center, radius `p^(-l)` in exact log scale, raised to a
//!   rational power `omega >= 1`;
//! - [`ChainPoint`]: a finite strictly-nested disk chain, the desk-scale
//!   truncation of the limit points classified by nested-disk sequences
//!   (evaluation is the finite infimum, an upper bound for the true value
//!   and exact for eventually constant chains);
//! - [`GammaPoint`]: the seminorm on `F_p[t]` assigning `max kappa^l` over
//!   the nonzero terms of the q-adic expansion, pulled back through the
//!   coefficientwise reduction `Z_p[t] -> F_p[t]`.
//!
//! Centers are rationals (dense in `Q_p`); points whose description over
//! an algebraic closure needs irrational centers are reached indirectly by
//! the resultant-based spectrum evaluations instead. Everywhere the
//! convention `0^0 = 1` applies.

pub mod json;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polynomial::{reduce_mod_p, FpPoly, RationalPoly};
use crate::valuation::{mag_of, vp, ExtRational, Magnitude, Prime, Rational};

/// Gauss norm of a closed disk, raised to `omega`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiskPoint {
    p: Prime,
    center: Rational,
    radius_log: ExtRational,
    omega: Rational,
}

impl DiskPoint {
    /// `radius_log = l` encodes radius `p^(-l)`; `Infinity` is radius zero
    /// (the evaluation seminorm at the center). Requires `omega >= 1`.
    pub fn new(
        p: Prime,
        center: Rational,
        radius_log: ExtRational,
        omega: Rational,
    ) -> Result<Self> {
        check_omega(&omega)?;
        Ok(DiskPoint { p, center, radius_log, omega })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn center(&self) -> &Rational {
        &self.center
    }

    pub fn radius_log(&self) -> &ExtRational {
        &self.radius_log
    }

    pub fn radius(&self) -> Magnitude {
        Magnitude::from_logval_ext(self.p, &self.radius_log)
    }

    pub fn omega(&self) -> &Rational {
        &self.omega
    }

    /// Same disk data with a different omega.
    pub fn with_omega(&self, omega: Rational) -> Result<Self> {
        DiskPoint::new(self.p, self.center.clone(), self.radius_log.clone(), omega)
    }

    /// The Gauss norm before the omega power: recenter by a Taylor shift,
    /// then `max_k |a_k| tau^k`.
    fn gauss(&self, f: &RationalPoly) -> Magnitude {
        gauss_norm(self.p, &self.center, &self.radius_log, f)
    }

    /// `|f|` at this point: the Gauss norm raised to `omega`, exact.
    pub fn eval(&self, f: &RationalPoly) -> Magnitude {
        self.gauss(f)
            .pow(&self.omega)
            .expect("Gauss norms are pure p-powers")
    }

    /// Replace the center by the representative whose p-adic digits at and
    /// above `ceil(l)` are zeroed. Equal disks then have equal fields; the
    /// ground truth for equality stays the `|s - s'| <= tau` test.
    pub fn canonicalize(&self) -> DiskPoint {
        let Some(cap) = self.radius_log.ceil_int() else {
            // radius 0: the disk is a singleton and the center is unique
            return self.clone();
        };
        DiskPoint {
            center: truncate_padic_digits(&self.center, self.p, &cap),
            ..self.clone()
        }
    }
}

/// Common check: membership in the omega-indexed family needs `omega >= 1`.
fn check_omega(omega: &Rational) -> Result<()> {
    if omega < &Rational::one() {
        return Err(Error::InvalidPoint(format!(
            "omega must be >= 1, got {omega}"
        )));
    }
    Ok(())
}

/// `max_k |a_k| tau^k` for `f(t) = sum a_k (t - s)^k`, with `0^0 = 1`.
fn gauss_norm(
    p: Prime,
    center: &Rational,
    radius_log: &ExtRational,
    f: &RationalPoly,
) -> Magnitude {
    let shifted = f.taylor_shift(center);
    let radius = Magnitude::from_logval_ext(p, radius_log);
    let mut best = Magnitude::zero(p);
    for (k, a) in shifted.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let term = mag_of(a, p).mul(&radius.pow_int(k as u64));
        if term > best {
            best = term;
        }
    }
    best
}

/// Zero all p-adic digits of `s` at positions `>= cap`. The digits of a
/// rational below any position are finitely many and exactly computable,
/// periodic tails included, because each extraction step is exact.
fn truncate_padic_digits(s: &Rational, p: Prime, cap: &BigInt) -> Rational {
    if s.is_zero() {
        return Rational::zero();
    }
    let v = match vp(s, p) {
        ExtRational::Finite(v) => v.to_integer(),
        ExtRational::Infinity => unreachable!(),
    };
    if &v >= cap {
        return Rational::zero();
    }
    let v64 = v.to_i64().expect("desk-scale valuation");
    let cap64 = cap.to_i64().expect("desk-scale radius exponent");
    let pb = Rational::from(BigInt::from(p.get()));
    // x = s / p^v is a p-adic unit; peel digits from position v upward.
    let mut x = s / power(&pb, v64);
    let mut weight = power(&pb, v64);
    let mut acc = Rational::zero();
    for _ in v64..cap64 {
        let d = unit_digit(&x, p);
        acc += &weight * Rational::from(BigInt::from(d));
        x = (x - Rational::from(BigInt::from(d))) / &pb;
        weight *= &pb;
    }
    acc
}

fn power(base: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= base;
    }
    if e >= 0 {
        acc
    } else {
        acc.recip()
    }
}

/// First p-adic digit of a rational with nonnegative valuation: the unique
/// `d` in `[0, p)` with `vp(x - d) >= 1`.
fn unit_digit(x: &Rational, p: Prime) -> u64 {
    let pb = BigInt::from(p.get());
    let num = num_integer::Integer::mod_floor(x.numer(), &pb)
        .to_u64()
        .unwrap();
    let den = num_integer::Integer::mod_floor(x.denom(), &pb)
        .to_u64()
        .unwrap();
    debug_assert!(den != 0, "digit extraction needs p-integral input");
    let inv = inverse_mod(den, p.get());
    ((num as u128 * inv as u128) % p.get() as u128) as u64
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// A finite decreasing chain of closed disks, raised to `omega`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPoint {
    p: Prime,
    disks: Vec<(Rational, ExtRational)>,
    omega: Rational,
}

impl ChainPoint {
    /// Validates nesting: consecutive entries must satisfy
    /// `|s_{n+1} - s_n| <= tau_n` and `tau_{n+1} <= tau_n`.
    pub fn new(
        p: Prime,
        disks: Vec<(Rational, ExtRational)>,
        omega: Rational,
    ) -> Result<Self> {
        check_omega(&omega)?;
        if disks.is_empty() {
            return Err(Error::InvalidPoint("chain needs at least one disk".into()));
        }
        for w in disks.windows(2) {
            let (s0, l0) = &w[0];
            let (s1, l1) = &w[1];
            let tau0 = Magnitude::from_logval_ext(p, l0);
            let tau1 = Magnitude::from_logval_ext(p, l1);
            if mag_of(&(s1 - s0), p) > tau0 || tau1 > tau0 {
                return Err(Error::InvalidPoint(format!(
                    "disk D({s1}, {l1}) is not contained in D({s0}, {l0})"
                )));
            }
        }
        Ok(ChainPoint { p, disks, omega })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn disks(&self) -> &[(Rational, ExtRational)] {
        &self.disks
    }

    pub fn omega(&self) -> &Rational {
        &self.omega
    }

    /// The finite infimum of the Gauss norms over the chain, then the
    /// omega power. For nested disks the minimum is attained at the
    /// innermost disk; the literal minimum is evaluated anyway so a
    /// nesting bug cannot hide.
    pub fn eval(&self, f: &RationalPoly) -> Magnitude {
        let m = self
            .disks
            .iter()
            .map(|(s, l)| gauss_norm(self.p, s, l, f))
            .min()
            .expect("chain is nonempty");
        m.pow(&self.omega).expect("Gauss norms are pure p-powers")
    }
}

/// Residue-field seminorm `gamma_{q, kappa}` on `F_p[t]`, evaluated on
/// integral polynomials through the reduction map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaPoint {
    p: Prime,
    q: FpPoly,
    kappa: Rational,
}

impl GammaPoint {
    /// `q` must be monic irreducible. `kappa >= 0` always; for `q != t`
    /// additionally `kappa <= 1` (at `kappa = 1` every `q` gives the same
    /// point, the trivial norm).
    pub fn new(p: Prime, q: FpPoly, kappa: Rational) -> Result<Self> {
        if q.prime() != p {
            return Err(Error::InvalidPoint("q lives over a different prime".into()));
        }
        if !q.is_monic() || !q.is_irreducible() {
            return Err(Error::InvalidPoint(format!(
                "q = {q} is not monic irreducible"
            )));
        }
        if kappa.is_negative() {
            return Err(Error::InvalidPoint(format!("kappa must be >= 0, got {kappa}")));
        }
        if !q.is_var() && kappa > Rational::one() {
            return Err(Error::InvalidPoint(format!(
                "kappa must stay in [0, 1] for q = {q} != t, got {kappa}"
            )));
        }
        Ok(GammaPoint { p, q, kappa })
    }

    /// `gamma_{t - c, kappa}` with `c` a residue.
    pub fn linear(p: Prime, c: u64, kappa: Rational) -> Result<Self> {
        GammaPoint::new(p, FpPoly::var_minus(p, c), kappa)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn q(&self) -> &FpPoly {
        &self.q
    }

    pub fn kappa(&self) -> &Rational {
        &self.kappa
    }

    /// Whether this is the trivial norm (`kappa = 1`, any `q`).
    pub fn is_trivial_norm(&self) -> bool {
        self.kappa.is_one()
    }

    /// `max kappa^l` over the nonzero q-adic digits of the reduction of
    /// `f`; errors with `NotIntegral` when `f` has a coefficient of
    /// negative valuation. The values `kappa^l` are exact rationals.
    pub fn eval(&self, f: &RationalPoly) -> Result<Magnitude> {
        let fbar = reduce_mod_p(f, self.p)?;
        let digits = fbar.qadic_expansion(&self.q)?;
        let mut best = Magnitude::zero(self.p);
        for (l, r) in digits.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let v = Magnitude::from_value(self.p, &self.kappa).pow_int(l as u64);
            if v > best {
                best = v;
            }
        }
        Ok(best)
    }

    /// The coordinate of the point in the product-space chart: the
    /// function on monic irreducibles vanishing away from `q` and taking
    /// the value `kappa - 1` at `q`.
    pub fn phi_delta(&self) -> Rational {
        &self.kappa - Rational::one()
    }
}

/// A representable point of the affine line over `Z_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BerkPoint {
    Disk(DiskPoint),
    Chain(ChainPoint),
    Gamma(GammaPoint),
}

impl BerkPoint {
    pub fn prime(&self) -> Prime {
        match self {
            BerkPoint::Disk(d) => d.prime(),
            BerkPoint::Chain(c) => c.prime(),
            BerkPoint::Gamma(g) => g.prime(),
        }
    }

    /// The omega component for points in the disk family; residue-field
    /// points have none.
    pub fn omega(&self) -> Option<&Rational> {
        match self {
            BerkPoint::Disk(d) => Some(d.omega()),
            BerkPoint::Chain(c) => Some(c.omega()),
            BerkPoint::Gamma(_) => None,
        }
    }

    /// Evaluate the seminorm on a polynomial. Fails only for residue-field
    /// points applied to non-integral polynomials.
    pub fn eval(&self, f: &RationalPoly) -> Result<Magnitude> {
        match self {
            BerkPoint::Disk(d) => Ok(d.eval(f)),
            BerkPoint::Chain(c) => Ok(c.eval(f)),
            BerkPoint::Gamma(g) => g.eval(f),
        }
    }

    /// Membership in the closed ball `{|t| <= n}`, decided exactly.
    pub fn in_ball(&self, n: u64) -> bool {
        let t = RationalPoly::var();
        let v = self
            .eval(&t)
            .expect("t is integral, evaluation cannot fail");
        v.cmp_rational(&Rational::from(BigInt::from(n))) != std::cmp::Ordering::Greater
    }
}

impl From<DiskPoint> for BerkPoint {
    fn from(d: DiskPoint) -> Self {
        BerkPoint::Disk(d)
    }
}

impl From<ChainPoint> for BerkPoint {
    fn from(c: ChainPoint) -> Self {
        BerkPoint::Chain(c)
    }
}

impl From<GammaPoint> for BerkPoint {
    fn from(g: GammaPoint) -> Self {
        BerkPoint::Gamma(g)
    }
}

/// Equality of points as seminorms, decided within each variant; distinct
/// variants are never identified.
///
/// Two disks with the same radius are equal iff either center lies within
/// the radius of the other (`D(t,tau) = D(s,tau)` whenever one contains
/// the other); that predicate is the ground truth, canonical forms are a
/// convenience on top of it.
pub fn point_eq(a: &BerkPoint, b: &BerkPoint) -> bool {
    match (a, b) {
        (BerkPoint::Disk(x), BerkPoint::Disk(y)) => disk_eq(x, y),
        (BerkPoint::Chain(x), BerkPoint::Chain(y)) => {
            x.p == y.p
                && x.omega == y.omega
                && x.disks.len() == y.disks.len()
                && x.disks.iter().zip(&y.disks).all(|(d, e)| {
                    d.1 == e.1 && same_ball(x.p, &d.0, &e.0, &d.1)
                })
        }
        (BerkPoint::Gamma(x), BerkPoint::Gamma(y)) => {
            x.p == y.p
                && ((x.is_trivial_norm() && y.is_trivial_norm())
                    || (x.q == y.q && x.kappa == y.kappa))
        }
        _ => false,
    }
}

fn disk_eq(x: &DiskPoint, y: &DiskPoint) -> bool {
    x.p == y.p
        && x.omega == y.omega
        && x.radius_log == y.radius_log
        && same_ball(x.p, &x.center, &y.center, &x.radius_log)
}

fn same_ball(p: Prime, s: &Rational, t: &Rational, radius_log: &ExtRational) -> bool {
    mag_of(&(s - t), p) <= Magnitude::from_logval_ext(p, radius_log)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::parse_poly;
    use crate::valuation::{rat, ratio};
    use proptest::prelude::*;

    fn p2() -> Prime {
        Prime::new(2).unwrap()
    }

    fn disk(s: Rational, l: ExtRational, w: Rational) -> DiskPoint {
        DiskPoint::new(p2(), s, l, w).unwrap()
    }

    #[test]
    fn gauss_norm_example() {
        // |t^2 + 2| on the disk of radius 1/2 at 0: max(1/4, 1/2) = 1/2.
        let pt = disk(rat(0), ExtRational::from_int(1), rat(1));
        let f = parse_poly("t^2 + 2").unwrap();
        assert_eq!(pt.eval(&f), Magnitude::from_logval(p2(), rat(1)));
    }

    #[test]
    fn monte_carlo_sup_oracle() {
        // Independent oracle for the same value: the sup of |f(t)| over
        // sampled rationals t with vp(t) >= 1 reaches 1/2 exactly by the
        // ultrametric.
        let f = parse_poly("t^2 + 2").unwrap();
        let mut sup = Magnitude::zero(p2());
        for a in 1i64..=50 {
            for &den in &[1i64, 3, 5, 7] {
                let t = ratio(2 * a, den);
                assert!(vp(&t, p2()) >= ExtRational::from_int(1));
                sup = sup.max(mag_of(&f.eval(&t), p2()));
            }
        }
        assert_eq!(sup, Magnitude::from_logval(p2(), rat(1)));
    }

    #[test]
    fn unit_and_zero_polynomials() {
        let pts: Vec<BerkPoint> = vec![
            disk(rat(3), ExtRational::from_int(2), ratio(3, 2)).into(),
            ChainPoint::new(
                p2(),
                vec![(rat(0), ExtRational::from_int(1)), (rat(2), ExtRational::from_int(3))],
                rat(2),
            )
            .unwrap()
            .into(),
            GammaPoint::linear(p2(), 1, ratio(1, 3)).unwrap().into(),
        ];
        for pt in pts {
            assert!(pt.eval(&RationalPoly::one()).unwrap().is_one());
            assert!(pt.eval(&RationalPoly::zero()).unwrap().is_zero());
        }
    }

    #[test]
    fn gamma_kernel_example() {
        // f = t - 3 reduces to t + 1 = q over F_2, so gamma_{q, 0} kills it.
        let g = GammaPoint::linear(p2(), 1, rat(0)).unwrap();
        let f = parse_poly("t - 3").unwrap();
        assert!(g.eval(&f).unwrap().is_zero());
    }

    #[test]
    fn omega_scaling() {
        let f = parse_poly("t^2 + 2").unwrap();
        let base = disk(rat(0), ExtRational::from_int(1), rat(1));
        let scaled = disk(rat(0), ExtRational::from_int(1), ratio(3, 2));
        assert_eq!(
            scaled.eval(&f),
            base.eval(&f).pow(&ratio(3, 2)).unwrap()
        );
    }

    #[test]
    fn gamma_not_integral() {
        let g = GammaPoint::linear(p2(), 0, rat(0)).unwrap();
        let f = parse_poly("1/2*t").unwrap();
        assert!(matches!(g.eval(&f), Err(Error::NotIntegral(..))));
    }

    #[test]
    fn trivial_norm_evaluates_to_one() {
        let irr2 = FpPoly::new(p2(), vec![1, 1, 1]);
        let g = GammaPoint::new(p2(), irr2, rat(1)).unwrap();
        for text in ["t", "t - 3", "t^4 - 1", "7*t^2 + t + 1"] {
            let f = parse_poly(text).unwrap();
            let fbar = reduce_mod_p(&f, p2()).unwrap();
            if !fbar.is_zero() {
                assert!(g.eval(&f).unwrap().is_one(), "failed for {text}");
            }
        }
        // the trivial norm is one point regardless of q
        let h = GammaPoint::linear(p2(), 0, rat(1)).unwrap();
        assert!(point_eq(&g.clone().into(), &h.into()));
    }

    #[test]
    fn recentering_equalities() {
        // |2 - 0| = 1/2 <= tau, so the centers describe the same ball.
        let a = disk(rat(2), ExtRational::from_int(1), rat(1));
        let b = disk(rat(0), ExtRational::from_int(1), rat(1));
        assert!(point_eq(&a.clone().into(), &b.clone().into()));
        assert_eq!(a.canonicalize(), b.canonicalize());
        // |1 - 0| = 1 > 1/2: different balls.
        let c = disk(rat(1), ExtRational::from_int(1), rat(1));
        assert!(!point_eq(&b.clone().into(), &c.into()));
        // radius-zero disks are singletons
        let d = disk(ratio(1, 2), ExtRational::Infinity, rat(1));
        let e = disk(ratio(1, 3), ExtRational::Infinity, rat(1));
        assert!(!point_eq(&d.clone().into(), &e.into()));
        assert!(point_eq(&d.clone().into(), &d.into()));
    }

    #[test]
    fn canonical_truncation_of_periodic_expansion() {
        // 1/3 = 1 + 2 + 8 + ... in Z_2; digits below 2^2 give 3.
        let a = disk(ratio(1, 3), ExtRational::from_int(2), rat(1));
        assert_eq!(a.canonicalize().center(), &rat(3));
        // non-integer log-radius truncates at the ceiling
        let b = disk(ratio(1, 3), ExtRational::finite(ratio(3, 2)), rat(1));
        assert_eq!(b.canonicalize().center(), &rat(3));
        assert!(point_eq(&b.clone().into(), &b.canonicalize().into()));
    }

    #[test]
    fn in_ball_examples() {
        // |t| = |1/2| = 2 at the evaluation point 1/2.
        let pt: BerkPoint = disk(ratio(1, 2), ExtRational::Infinity, rat(1)).into();
        assert!(!pt.in_ball(1));
        assert!(pt.in_ball(2));
        // gamma_{t, 3/2}: |t| = 3/2 > 1.
        let g: BerkPoint = GammaPoint::new(p2(), FpPoly::var(p2()), ratio(3, 2))
            .unwrap()
            .into();
        assert!(!g.in_ball(1));
        assert!(g.in_ball(2));
        // integral center, radius <= 1: contractive on the unit ball.
        let pt: BerkPoint = disk(rat(7), ExtRational::from_int(0), rat(7)).into();
        assert!(pt.in_ball(1));
    }

    #[test]
    fn chain_nesting_validation() {
        // second disk not inside the first
        assert!(ChainPoint::new(
            p2(),
            vec![(rat(0), ExtRational::from_int(1)), (rat(1), ExtRational::from_int(2))],
            rat(1),
        )
        .is_err());
        // radius growing
        assert!(ChainPoint::new(
            p2(),
            vec![(rat(0), ExtRational::from_int(2)), (rat(0), ExtRational::from_int(1))],
            rat(1),
        )
        .is_err());
        assert!(ChainPoint::new(p2(), vec![], rat(1)).is_err());
    }

    #[test]
    fn chain_prefix_monotone() {
        let disks = [
            (rat(0), ExtRational::from_int(0)),
            (rat(2), ExtRational::from_int(2)),
            (rat(6), ExtRational::from_int(4)),
        ];
        let f = parse_poly("t^3 - t + 2").unwrap();
        let mut prev: Option<Magnitude> = None;
        for n in 1..=disks.len() {
            let c = ChainPoint::new(p2(), disks[..n].to_vec(), rat(1)).unwrap();
            let v = c.eval(&f);
            if let Some(pv) = prev {
                assert!(v <= pv, "longer chains can only decrease");
            }
            prev = Some(v);
        }
    }

    #[test]
    fn invalid_omega_and_kappa() {
        assert!(DiskPoint::new(p2(), rat(0), ExtRational::from_int(0), ratio(1, 2)).is_err());
        assert!(GammaPoint::linear(p2(), 0, rat(-1)).is_err());
        // kappa > 1 only for q = t
        assert!(GammaPoint::new(p2(), FpPoly::var(p2()), rat(2)).is_ok());
        assert!(GammaPoint::linear(p2(), 1, rat(2)).is_err());
        // reducible q rejected
        assert!(GammaPoint::new(p2(), FpPoly::new(p2(), vec![1, 0, 1]), rat(0)).is_err());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-100i64..=100, 1i64..=60).prop_map(|(n, d)| ratio(n, d))
    }

    fn arb_int_poly() -> impl Strategy<Value = RationalPoly> {
        proptest::collection::vec((-80i64..=80, 0u8..=1), 0..7).prop_map(|cs| {
            RationalPoly::new(
                cs.into_iter()
                    .map(|(n, odd)| ratio(n, if odd == 0 { 1 } else { 3 }))
                    .collect(),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn recentering_identity(
            f in arb_int_poly(),
            sn in -50i64..=50,
            sd in 1i64..=20,
            l in -4i64..=6,
        ) {
            let s = ratio(sn, sd);
            let at_s = disk(s.clone(), ExtRational::from_int(l), rat(1));
            let at_zero = disk(rat(0), ExtRational::from_int(l), rat(1));
            prop_assert_eq!(at_s.eval(&f), at_zero.eval(&f.taylor_shift(&s)));
        }

        #[test]
        fn ball_equality_preserves_eval(
            f in arb_int_poly(),
            s in arb_rational(),
            k in 0i64..=4,
            l in -2i64..=4,
        ) {
            // s' = s + p^max(l, vp-shift) * k stays within radius p^(-l)
            let shift = power(&rat(2), l) * rat(k);
            let a = disk(s.clone(), ExtRational::from_int(l), rat(1));
            let b = disk(&s + shift, ExtRational::from_int(l), rat(1));
            prop_assert!(point_eq(&a.clone().into(), &b.clone().into()));
            prop_assert_eq!(a.eval(&f), b.eval(&f));
            prop_assert_eq!(a.canonicalize(), b.canonicalize());
        }

        #[test]
        fn contractive_on_integers(a in -500i64..=500, l in -3i64..=5, wn in 1i64..=5) {
            let pt = disk(rat(0), ExtRational::from_int(l), rat(wn));
            let c = RationalPoly::constant(rat(a));
            prop_assert!(pt.eval(&c).cmp_rational(&rat(1)) != std::cmp::Ordering::Greater);
        }

        #[test]
        fn chain_eval_is_multiplicative_and_ultrametric(
            f in arb_int_poly(),
            g in arb_int_poly(),
            s in -50i64..=50,
            l in -2i64..=4,
            wn in 1i64..=7,
        ) {
            let disks = vec![
                (rat(s), ExtRational::from_int(l)),
                (rat(s) + power(&rat(2), l) * rat(3), ExtRational::from_int(l + 2)),
                (rat(s) + power(&rat(2), l) * rat(3), ExtRational::Infinity),
            ];
            let pt = ChainPoint::new(p2(), disks, ratio(wn, 2).max(rat(1))).unwrap();
            let (vf, vg) = (pt.eval(&f), pt.eval(&g));
            prop_assert_eq!(pt.eval(&(&f * &g)), vf.clone().mul(&vg));
            let bound = vf.clone().max(vg.clone());
            let vs = pt.eval(&(&f + &g));
            prop_assert!(vs <= bound);
            if vf != vg {
                prop_assert_eq!(vs, bound);
            }
        }
    }
}
