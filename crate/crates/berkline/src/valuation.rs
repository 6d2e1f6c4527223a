//! Exact p-adic valuation arithmetic and magnitude algebra in log scale.
//!
//! A magnitude is an absolute value `p^(-v)`; we keep `v` as an exact
//! rational instead of converting to floating point, so every algebraic
//! identity (multiplicativity, the ultrametric inequality, the isosceles
//! principle) can be checked with zero tolerance. Magnitude `0` is the
//! distinguished log value `+inf`, which keeps `max` and `mul` total.
//!
//! Residue-field seminorms produce values `kappa^l` for an arbitrary
//! rational `kappa`, which need not be a power of `p`. Those are carried
//! in a second exact channel: every positive magnitude is stored as
//! `unit * p^(-v)` with `vp(unit) = 0`. That normal form is unique, so
//! structural equality is semantic equality, and ordering across the two
//! channels reduces to an exact big-integer comparison.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational numbers; `num_rational` keeps them in lowest terms.
pub type Rational = BigRational;

/// Build a rational from an integer pair. Panics on zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Build a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// A prime number, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    /// Checks primality by trial division; inputs are desk-scale.
    pub fn new(p: u64) -> Result<Prime> {
        if p < 2 {
            return Err(Error::NotPrime(p));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(Error::NotPrime(p));
            }
            d += 1;
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `p^e` as a big integer.
    pub fn pow_big(self, e: u64) -> BigInt {
        BigInt::from(self.0).pow(e as u32)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A rational extended with `+inf`: the value domain of p-adic valuations
/// and of log-radii (`+inf` encodes radius zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtRational {
    Finite(Rational),
    Infinity,
}

impl ExtRational {
    pub fn finite(v: Rational) -> Self {
        ExtRational::Finite(v)
    }

    pub fn from_int(n: i64) -> Self {
        ExtRational::Finite(rat(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinity)
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(v) => Some(v),
            ExtRational::Infinity => None,
        }
    }

    /// Smallest integer >= self; `None` for `+inf`.
    pub fn ceil_int(&self) -> Option<BigInt> {
        self.as_finite().map(|v| v.ceil().to_integer())
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Infinity, ExtRational::Infinity) => Ordering::Equal,
            (ExtRational::Infinity, _) => Ordering::Greater,
            (_, ExtRational::Infinity) => Ordering::Less,
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(v) => write!(f, "{v}"),
            ExtRational::Infinity => write!(f, "inf"),
        }
    }
}

/// p-adic valuation of a big integer, which must be nonzero.
fn vp_int(n: &BigInt, p: Prime) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p.get());
    let mut n = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&n, &p);
        if r.is_zero() {
            v += 1;
            n = q;
        } else {
            return v;
        }
    }
}

/// p-adic valuation of a rational; `Infinity` iff `x = 0`.
///
/// Satisfies `vp(xy) = vp(x) + vp(y)` exactly.
pub fn vp(x: &Rational, p: Prime) -> ExtRational {
    if x.is_zero() {
        return ExtRational::Infinity;
    }
    // x is in lowest terms, so at most one of numer/denom is divisible by p.
    let v = vp_int(x.numer(), p) - vp_int(x.denom(), p);
    ExtRational::from_int(v)
}

/// An exact nonnegative real of the form `unit * p^(-logval)`, or zero.
///
/// Invariants of the positive normal form: `unit` is a positive rational
/// with `vp(unit) = 0`, `logval` is any rational. Magnitudes coming from
/// rational numbers via [`mag_of`] always have `unit = 1` and integer
/// `logval`; non-integer log values arise from radii and omega powers, and
/// `unit != 1` arises from residue-field seminorms with a kappa that is not
/// a power of p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Magnitude {
    p: Prime,
    repr: Repr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Zero,
    Pos { unit: Rational, logval: Rational },
}

impl Magnitude {
    pub fn zero(p: Prime) -> Self {
        Magnitude { p, repr: Repr::Zero }
    }

    pub fn one(p: Prime) -> Self {
        Magnitude::from_logval(p, Rational::zero())
    }

    /// The pure p-power `p^(-v)`.
    pub fn from_logval(p: Prime, v: Rational) -> Self {
        Magnitude {
            p,
            repr: Repr::Pos { unit: Rational::one(), logval: v },
        }
    }

    /// `p^(-v)` with `v = +inf` meaning zero.
    pub fn from_logval_ext(p: Prime, v: &ExtRational) -> Self {
        match v {
            ExtRational::Finite(v) => Magnitude::from_logval(p, v.clone()),
            ExtRational::Infinity => Magnitude::zero(p),
        }
    }

    /// Exact magnitude equal to the nonnegative rational `x`.
    pub fn from_value(p: Prime, x: &Rational) -> Self {
        assert!(!x.is_negative(), "magnitudes are nonnegative");
        if x.is_zero() {
            return Magnitude::zero(p);
        }
        let e = match vp(x, p) {
            ExtRational::Finite(e) => e.to_integer(),
            ExtRational::Infinity => unreachable!(),
        };
        let e64 = e.to_i64().expect("desk-scale valuation");
        let scale = Rational::from(p.pow_big(e64.unsigned_abs()));
        let unit = if e64 >= 0 { x / &scale } else { x * &scale };
        // x = unit * p^e, so the log value is -e.
        Magnitude {
            p,
            repr: Repr::Pos { unit, logval: -Rational::from(e) },
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Pos { unit, logval } => unit.is_one() && logval.is_zero(),
            Repr::Zero => false,
        }
    }

    /// Log value as an extended rational when the magnitude is a pure
    /// p-power (`unit = 1`); zero maps to `+inf`.
    pub fn as_ppower_log(&self) -> Option<ExtRational> {
        match &self.repr {
            Repr::Zero => Some(ExtRational::Infinity),
            Repr::Pos { unit, logval } => {
                unit.is_one().then(|| ExtRational::Finite(logval.clone()))
            }
        }
    }

    /// The unit channel; `1` for pure p-powers.
    pub fn unit(&self) -> Option<&Rational> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Pos { unit, .. } => Some(unit),
        }
    }

    /// The log channel.
    pub fn logval(&self) -> ExtRational {
        match &self.repr {
            Repr::Zero => ExtRational::Infinity,
            Repr::Pos { logval, .. } => ExtRational::Finite(logval.clone()),
        }
    }

    /// Exact rational value, when one exists (`logval` integer).
    pub fn as_rational(&self) -> Option<Rational> {
        match &self.repr {
            Repr::Zero => Some(Rational::zero()),
            Repr::Pos { unit, logval } => {
                if !logval.is_integer() {
                    return None;
                }
                let e = logval.to_integer().to_i64()?;
                let scale = Rational::from(self.p.pow_big(e.unsigned_abs()));
                Some(if e >= 0 { unit / scale } else { unit * scale })
            }
        }
    }

    /// `self * other`; zero absorbs. Both operands must share the prime.
    pub fn mul(&self, other: &Magnitude) -> Magnitude {
        assert_eq!(self.p, other.p, "magnitudes from different primes");
        match (&self.repr, &other.repr) {
            (Repr::Zero, _) | (_, Repr::Zero) => Magnitude::zero(self.p),
            (
                Repr::Pos { unit: u1, logval: v1 },
                Repr::Pos { unit: u2, logval: v2 },
            ) => Magnitude {
                p: self.p,
                // vp(u1 u2) = 0, so the normal form needs no rescaling.
                repr: Repr::Pos { unit: u1 * u2, logval: v1 + v2 },
            },
        }
    }

    /// `self^w` for rational `w >= 0`, with `0^0 = 1`.
    ///
    /// Errors when `w < 0`, or when the unit channel has no exact rational
    /// `w`-th power (only possible for `unit != 1` with non-integer `w`).
    pub fn pow(&self, w: &Rational) -> Result<Magnitude> {
        if w.is_negative() {
            return Err(Error::NegativeExponent(w.to_string()));
        }
        match &self.repr {
            Repr::Zero => Ok(if w.is_zero() {
                Magnitude::one(self.p)
            } else {
                Magnitude::zero(self.p)
            }),
            Repr::Pos { unit, logval } => {
                let unit = rational_pow(unit, w).ok_or_else(|| {
                    Error::IrrationalPower(unit.to_string(), w.to_string())
                })?;
                Ok(Magnitude {
                    p: self.p,
                    repr: Repr::Pos { unit, logval: logval * w },
                })
            }
        }
    }

    /// `self^k` for integer `k >= 0`.
    pub fn pow_int(&self, k: u64) -> Magnitude {
        self.pow(&rat(k as i64)).expect("integer powers are exact")
    }

    /// Compare against a rational threshold (exact; negative thresholds
    /// are below every magnitude).
    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        if x.is_negative() {
            return Ordering::Greater;
        }
        self.cmp(&Magnitude::from_value(self.p, x))
    }

    /// Round-to-nearest float value `unit * p^(-logval)`.
    pub fn to_f64(&self) -> f64 {
        match &self.repr {
            Repr::Zero => 0.0,
            Repr::Pos { unit, logval } => {
                let u = unit.to_f64().unwrap_or(f64::NAN);
                let v = logval.to_f64().unwrap_or(f64::NAN);
                u * (self.p.get() as f64).powf(-v)
            }
        }
    }
}

/// `x^w` for positive rational `x` and nonnegative rational `w`, when the
/// result is rational: integer powers always work, fractional ones only if
/// numerator and denominator are perfect powers.
fn rational_pow(x: &Rational, w: &Rational) -> Option<Rational> {
    if w.is_zero() || x.is_one() {
        return Some(Rational::one());
    }
    let a = w.numer().to_u32()?;
    let b = w.denom().to_u32()?;
    let num = x.numer().pow(a);
    let den = x.denom().pow(a);
    if b == 1 {
        return Some(Rational::new(num, den));
    }
    Some(Rational::new(exact_root(&num, b)?, exact_root(&den, b)?))
}

fn exact_root(n: &BigInt, b: u32) -> Option<BigInt> {
    let r = num_integer::Roots::nth_root(n, b);
    (r.clone().pow(b) == *n).then_some(r)
}

impl PartialOrd for Magnitude {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Magnitude {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.p, other.p, "magnitudes from different primes");
        match (&self.repr, &other.repr) {
            (Repr::Zero, Repr::Zero) => Ordering::Equal,
            (Repr::Zero, _) => Ordering::Less,
            (_, Repr::Zero) => Ordering::Greater,
            (
                Repr::Pos { unit: u1, logval: v1 },
                Repr::Pos { unit: u2, logval: v2 },
            ) => {
                // u1 p^(-v1) vs u2 p^(-v2)  <=>  u1/u2 vs p^(v1-v2).
                let q = u1 / u2;
                let e = v1 - v2;
                cmp_rational_vs_ppower(&q, self.p, &e)
            }
        }
    }
}

/// Exact comparison `q` vs `p^e` for positive rational `q`, rational `e`:
/// raise both sides to `denom(e)` and compare big integers.
fn cmp_rational_vs_ppower(q: &Rational, p: Prime, e: &Rational) -> Ordering {
    let d = e.denom().to_u32().expect("desk-scale exponent denominator");
    let n = e.numer().to_i64().expect("desk-scale exponent");
    let lhs_num = q.numer().pow(d);
    let lhs_den = q.denom().pow(d);
    let pn = p.pow_big(n.unsigned_abs());
    if n >= 0 {
        lhs_num.cmp(&(lhs_den * pn))
    } else {
        (lhs_num * pn).cmp(&lhs_den)
    }
}

/// Magnitude of a rational: `p^(-vp(x))`, a pure p-power.
///
/// Multiplicative: `mag_of(xy) = mag_of(x) * mag_of(y)` exactly.
pub fn mag_of(x: &Rational, p: Prime) -> Magnitude {
    Magnitude::from_logval_ext(p, &vp(x, p))
}

/// `m^w` for rational `w >= 0`; see [`Magnitude::pow`].
pub fn mag_pow(m: &Magnitude, w: &Rational) -> Result<Magnitude> {
    m.pow(w)
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero => write!(f, "0"),
            Repr::Pos { unit, logval } => {
                if logval.is_zero() {
                    write!(f, "{unit}")
                } else if unit.is_one() {
                    write!(f, "{}^(-{})", self.p, logval)
                } else {
                    write!(f, "{}*{}^(-{})", unit, self.p, logval)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p2() -> Prime {
        Prime::new(2).unwrap()
    }

    fn p5() -> Prime {
        Prime::new(5).unwrap()
    }

    #[test]
    fn primality_check() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(97).is_ok());
        assert!(Prime::new(0).is_err());
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(91).is_err()); // 7 * 13
    }

    #[test]
    fn vp_factor_counts() {
        assert_eq!(vp(&rat(12), p2()), ExtRational::from_int(2));
        assert_eq!(vp(&rat(0), p5()), ExtRational::Infinity);
        assert_eq!(vp(&ratio(3, 4), p2()), ExtRational::from_int(-2));
    }

    #[test]
    fn mag_of_values() {
        assert_eq!(mag_of(&rat(8), p2()), Magnitude::from_logval(p2(), rat(3)));
        assert!(mag_of(&rat(1), p5()).is_one());
        assert_eq!(
            mag_of(&ratio(10, 3), p5()),
            Magnitude::from_logval(p5(), rat(1))
        );
    }

    #[test]
    fn mag_pow_scales_logval() {
        let m = Magnitude::from_logval(p2(), rat(1));
        assert_eq!(
            m.pow(&ratio(3, 2)).unwrap(),
            Magnitude::from_logval(p2(), ratio(3, 2))
        );
        let z = Magnitude::zero(p2());
        assert!(z.pow(&rat(2)).unwrap().is_zero());
        assert!(z.pow(&rat(0)).unwrap().is_one()); // 0^0 = 1
        let m = Magnitude::from_logval(p2(), rat(-2));
        assert_eq!(
            m.pow(&ratio(1, 2)).unwrap(),
            Magnitude::from_logval(p2(), rat(-1))
        );
        assert!(m.pow(&ratio(-1, 2)).is_err());
    }

    #[test]
    fn mag_pow_free_function() {
        let m = mag_of(&rat(2), p2());
        assert_eq!(
            mag_pow(&m, &ratio(3, 2)).unwrap(),
            Magnitude::from_logval(p2(), ratio(3, 2))
        );
    }

    #[test]
    fn fractional_power_of_unit_channel() {
        let m = Magnitude::from_value(p5(), &ratio(4, 9));
        let r = m.pow(&ratio(1, 2)).unwrap();
        assert_eq!(r.as_rational().unwrap(), ratio(2, 3));
        let m = Magnitude::from_value(p5(), &ratio(2, 3));
        assert!(m.pow(&ratio(1, 2)).is_err());
    }

    #[test]
    fn cross_channel_order() {
        // 2^(-1/2) ~ 0.707 lies between 1/2 and 3/4.
        let half_pow = Magnitude::from_logval(p2(), ratio(1, 2));
        assert_eq!(half_pow.cmp_rational(&ratio(1, 2)), Ordering::Greater);
        assert_eq!(half_pow.cmp_rational(&ratio(3, 4)), Ordering::Less);
        // Exotic exact tie: (1/8)^(1/3) = 1/2.
        let m = Magnitude::from_logval(p2(), rat(3)).pow(&ratio(1, 3)).unwrap();
        assert_eq!(m.cmp_rational(&ratio(1, 2)), Ordering::Equal);
    }

    #[test]
    fn normal_form_is_unique() {
        // 3/4 at p=2: unit 3, logval 2.
        let m = Magnitude::from_value(p2(), &ratio(3, 4));
        assert_eq!(m.unit().unwrap(), &rat(3));
        assert_eq!(m.logval(), ExtRational::from_int(2));
        assert_eq!(m.as_rational().unwrap(), ratio(3, 4));
        // An integer p-power collapses to the pure channel.
        let m = Magnitude::from_value(p2(), &ratio(1, 4));
        assert_eq!(m, Magnitude::from_logval(p2(), rat(2)));
    }

    #[test]
    fn zero_is_minimum() {
        let z = Magnitude::zero(p2());
        let tiny = Magnitude::from_logval(p2(), rat(10_000));
        assert!(z < tiny);
        assert!(z.mul(&tiny).is_zero());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-200i64..=200, 1i64..=99).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn multiplicativity(x in arb_rational(), y in arb_rational()) {
            let p = p2();
            prop_assert_eq!(mag_of(&(&x * &y), p), mag_of(&x, p).mul(&mag_of(&y, p)));
        }

        #[test]
        fn ultrametric_and_isosceles(x in arb_rational(), y in arb_rational()) {
            let p = p5();
            let mx = mag_of(&x, p);
            let my = mag_of(&y, p);
            let ms = mag_of(&(&x + &y), p);
            let bound = mx.clone().max(my.clone());
            prop_assert!(ms <= bound);
            if mx != my {
                prop_assert_eq!(ms, bound);
            }
        }

        #[test]
        fn order_matches_float_rendering(x in arb_rational(), y in arb_rational()) {
            let p = p2();
            let (mx, my) = (mag_of(&x, p), mag_of(&y, p));
            let (fx, fy) = (mx.to_f64(), my.to_f64());
            if (fx - fy).abs() > 1e-12 {
                prop_assert_eq!(mx.cmp(&my), fx.partial_cmp(&fy).unwrap());
            }
        }

        #[test]
        fn value_roundtrip(n in 1i64..=500, d in 1i64..=500) {
            let p = p2();
            let x = ratio(n, d);
            prop_assert_eq!(Magnitude::from_value(p, &x).as_rational().unwrap(), x);
        }
    }
}
