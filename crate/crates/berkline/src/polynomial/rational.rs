//! Dense polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::valuation::Rational;

/// A dense polynomial over `Q`; index `k` holds the coefficient of `t^k`.
/// Trailing zeros are trimmed, so the zero polynomial has an empty
/// coefficient vector and no degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RationalPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RationalPoly::new(vec![c])
    }

    /// The variable `t`.
    pub fn var() -> Self {
        RationalPoly::new(vec![Rational::zero(), Rational::one()])
    }

    /// `c * t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        RationalPoly::new(coeffs)
    }

    /// `t - b`.
    pub fn var_minus(b: &Rational) -> Self {
        RationalPoly::new(vec![-b.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Horner evaluation at a rational.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `f(t + s)`, exact; degree preserved.
    ///
    /// In-place Ruffini-Horner recurrence on a copy of the coefficients.
    pub fn taylor_shift(&self, s: &Rational) -> RationalPoly {
        if self.coeffs.len() < 2 || s.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len() - 1;
        let mut b = self.coeffs.clone();
        for k in 0..n {
            for j in (k..n).rev() {
                let add = s * &b[j + 1];
                b[j] += add;
            }
        }
        RationalPoly::new(b)
    }

    /// Euclidean division by a nonzero polynomial: `self = q * d + r` with
    /// `deg r < deg d`.
    pub fn div_rem(&self, d: &RationalPoly) -> Result<(RationalPoly, RationalPoly)> {
        let dd = d.degree().ok_or(Error::ZeroDivisor)?;
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((RationalPoly::zero(), self.clone()));
        }
        let mut quo = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = &rem[i] / &lead;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let sub = &c * dc;
                rem[i - dd + j] -= sub;
            }
            quo[i - dd] = c;
        }
        Ok((RationalPoly::new(quo), RationalPoly::new(rem)))
    }

    pub fn pow(&self, e: usize) -> RationalPoly {
        let mut acc = RationalPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        RationalPoly::new(coeffs)
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        RationalPoly::new(coeffs)
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut coeffs =
            vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let add = a * b;
                coeffs[i + j] += add;
            }
        }
        RationalPoly::new(coeffs)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

/// Resultant of monic `q` with `f`, normalized as the product of `f` over
/// the roots of `q` with multiplicity: `Res(q, f) = prod_i f(r_i)`.
///
/// For monic `q` this equals the classical Sylvester resultant, computed by
/// the Euclidean remainder sequence in exact rational arithmetic. The
/// absolute value of the result is what seminorm evaluation consumes; the
/// sign follows the product convention, which makes the linear case
/// `Res(t - b, f) = f(b)` exact.
pub fn resultant(q: &RationalPoly, f: &RationalPoly) -> Result<Rational> {
    if !q.is_monic() {
        return Err(Error::NonMonic(
            q.leading().map_or_else(|| "0".into(), |c| c.to_string()),
        ));
    }
    if q.degree() == Some(0) || q.is_zero() {
        return Err(Error::ConstantDivisor);
    }
    Ok(res_rec(q.clone(), f.clone()))
}

/// `Res(a, b) = lc(a)^(deg b) * prod_{a(alpha)=0} b(alpha)` by the
/// remainder recurrence `Res(a, b) = (-1)^(deg a deg b) lc(b)^(deg a - deg r)
/// Res(b, r)` with `r = a mod b`.
fn res_rec(a: RationalPoly, b: RationalPoly) -> Rational {
    let Some(m) = a.degree() else {
        return Rational::zero();
    };
    let Some(n) = b.degree() else {
        // b = 0: the resultant vanishes unless a is a nonzero constant.
        return if m == 0 { Rational::one() } else { Rational::zero() };
    };
    if n == 0 {
        return pow_rat(b.leading().unwrap(), m);
    }
    if m == 0 {
        return pow_rat(a.leading().unwrap(), n);
    }
    let (_, r) = a.div_rem(&b).expect("nonzero divisor");
    let rdeg = r.degree();
    let lead_pow = pow_rat(b.leading().unwrap(), m - rdeg.unwrap_or(0));
    let sign = if (m * n) % 2 == 1 {
        -Rational::one()
    } else {
        Rational::one()
    };
    match rdeg {
        None => Rational::zero(),
        Some(_) => sign * lead_pow * res_rec(b, r),
    }
}

fn pow_rat(x: &Rational, e: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

impl fmt::Display for RationalPoly {
    /// Sparse human syntax: `t^4 - 1`, `3/2*t^2 + t - 5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valuation::{mag_of, rat, ratio, Prime};
    use proptest::prelude::*;

    fn poly(cs: &[(i64, i64)]) -> RationalPoly {
        RationalPoly::new(cs.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    #[test]
    fn taylor_shift_binomial() {
        // (t+1)^2 = t^2 + 2t + 1
        let f = poly(&[(0, 1), (0, 1), (1, 1)]);
        assert_eq!(f.taylor_shift(&rat(1)), poly(&[(1, 1), (2, 1), (1, 1)]));
        // t - s shifted by s cancels to t
        let s = ratio(7, 3);
        let f = RationalPoly::var_minus(&s);
        assert_eq!(f.taylor_shift(&s), RationalPoly::var());
        // zero shift is the identity
        let f = poly(&[(2, 1), (0, 1), (1, 1)]);
        assert_eq!(f.taylor_shift(&rat(0)), f);
    }

    #[test]
    fn resultant_frozen_values() {
        // Independent oracle for q = t^2 + 1, f = t - 1: the Euclidean
        // remainder of q by f is q(1) = 2, and Res(t-1, 2) = 2.
        let q = poly(&[(1, 1), (0, 1), (1, 1)]);
        let f = poly(&[(-1, 1), (1, 1)]);
        assert_eq!(resultant(&q, &f).unwrap(), rat(2));
        // Phi_2 = t + 1 against t - 1: product convention gives f(-1) = -2,
        // absolute value 2 = p.
        let q = poly(&[(1, 1), (1, 1)]);
        assert_eq!(resultant(&q, &f).unwrap(), rat(-2));
    }

    #[test]
    fn resultant_rejects_bad_divisors() {
        let f = RationalPoly::var();
        assert!(resultant(&poly(&[(2, 1), (0, 1), (2, 1)]), &f).is_err());
        assert!(resultant(&RationalPoly::one(), &f).is_err());
        assert!(resultant(&RationalPoly::zero(), &f).is_err());
    }

    #[test]
    fn resultant_of_factor_is_zero() {
        let q = poly(&[(-1, 1), (0, 1), (1, 1)]); // t^2 - 1
        let f = poly(&[(1, 1), (1, 1)]); // t + 1 divides q
        assert_eq!(resultant(&q, &f).unwrap(), rat(0));
    }

    fn arb_poly(maxdeg: usize) -> impl Strategy<Value = RationalPoly> {
        proptest::collection::vec((-50i64..=50, 1i64..=20), 0..=maxdeg + 1)
            .prop_map(|cs| {
                RationalPoly::new(cs.into_iter().map(|(n, d)| ratio(n, d)).collect())
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn shift_roundtrip(f in arb_poly(6), n in -30i64..=30, d in 1i64..=12) {
            let s = ratio(n, d);
            prop_assert_eq!(f.taylor_shift(&s).taylor_shift(&(-s.clone())), f);
        }

        #[test]
        fn resultant_multiplicative(
            f in arb_poly(4),
            g in arb_poly(4),
            b in -20i64..=20,
        ) {
            // q = t^2 - b t + 1, monic by construction.
            let q = RationalPoly::new(vec![rat(1), rat(-b), rat(1)]);
            let lhs = resultant(&q, &(&f * &g)).unwrap();
            let rhs = resultant(&q, &f).unwrap() * resultant(&q, &g).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn linear_resultant_is_evaluation(f in arb_poly(6), bn in -40i64..=40, bd in 1i64..=10) {
            let b = ratio(bn, bd);
            let q = RationalPoly::var_minus(&b);
            let r = resultant(&q, &f).unwrap();
            prop_assert_eq!(&r, &f.eval(&b));
            // |Res(q, f)|^(1/deg q) agrees with mag_of(f(b)) at every prime.
            let p = Prime::new(3).unwrap();
            prop_assert_eq!(mag_of(&r, p), mag_of(&f.eval(&b), p));
        }

        #[test]
        fn div_rem_reconstructs(f in arb_poly(7), g in arb_poly(3)) {
            prop_assume!(!g.is_zero());
            let (q, r) = f.div_rem(&g).unwrap();
            prop_assert_eq!(&(&(&q * &g) + &r), &f);
            prop_assert!(r.degree() < g.degree() || r.is_zero());
        }
    }
}
