//! Dense polynomials over the finite field `F_p`.

use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::valuation::{Prime, Rational};

use super::rational::RationalPoly;

/// Largest `maxdeg` accepted by [`enumerate_irreducibles`]; brute-force
/// divisor search stays desk-scale below this.
pub const MAX_ENUM_DEGREE: u32 = 8;

/// A dense polynomial over `F_p`, coefficients reduced to `[0, p-1]` and
/// trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: Prime,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: Prime, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> =
            coeffs.into_iter().map(|c| c % p.get()).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: Prime) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: Prime) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn constant(p: Prime, c: u64) -> Self {
        FpPoly::new(p, vec![c])
    }

    /// The variable `t`.
    pub fn var(p: Prime) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    /// `t - c` over `F_p`.
    pub fn var_minus(p: Prime, c: u64) -> Self {
        let c = c % p.get();
        FpPoly::new(p, vec![(p.get() - c) % p.get(), 1])
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Whether this is the variable `t` itself.
    pub fn is_var(&self) -> bool {
        self.coeffs == [0, 1]
    }

    fn check_same_prime(&self, other: &FpPoly) {
        assert_eq!(self.p, other.p, "polynomials over different primes");
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        self.check_same_prime(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        FpPoly::new(
            self.p,
            (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect(),
        )
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        self.check_same_prime(other);
        let p = self.p.get();
        let n = self.coeffs.len().max(other.coeffs.len());
        FpPoly::new(
            self.p,
            (0..n)
                .map(|k| self.coeff(k) + p - other.coeff(k))
                .collect(),
        )
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        self.check_same_prime(other);
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p.get() as u128;
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        FpPoly::new(self.p, acc.into_iter().map(|c| c as u64).collect())
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p.get() as u128;
        let x = x as u128 % p;
        let mut acc = 0u128;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * x + c as u128) % p;
        }
        acc as u64
    }

    /// Division with remainder by a nonzero polynomial.
    pub fn div_rem(&self, d: &FpPoly) -> Result<(FpPoly, FpPoly)> {
        self.check_same_prime(d);
        let dd = d.degree().ok_or(Error::ZeroDivisor)?;
        let p = self.p.get();
        let lead_inv = mod_inverse(*d.coeffs.last().unwrap(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((FpPoly::zero(self.p), self.clone()));
        }
        let mut quo = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i] == 0 {
                continue;
            }
            let c = mulmod(rem[i], lead_inv, p);
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let sub = mulmod(c, dc, p);
                rem[i - dd + j] = (rem[i - dd + j] + p - sub) % p;
            }
            quo[i - dd] = c;
        }
        Ok((FpPoly::new(self.p, quo), FpPoly::new(self.p, rem)))
    }

    /// Unique rewriting `f = sum_l r_l q^l` with `deg r_l < deg q`, for
    /// monic nonconstant `q`. The zero polynomial expands to `[]`, and the
    /// last entry is nonzero otherwise.
    pub fn qadic_expansion(&self, q: &FpPoly) -> Result<Vec<FpPoly>> {
        self.check_same_prime(q);
        if !q.is_monic() {
            return Err(Error::NonMonic(
                q.coeffs.last().map_or_else(|| "0".into(), u64::to_string),
            ));
        }
        if q.degree() == Some(0) {
            return Err(Error::ConstantDivisor);
        }
        let mut digits = Vec::new();
        let mut rest = self.clone();
        while !rest.is_zero() {
            let (quo, rem) = rest.div_rem(q)?;
            digits.push(rem);
            rest = quo;
        }
        Ok(digits)
    }

    /// Trial division by every monic polynomial of degree up to half the
    /// degree; desk-scale degrees make anything smarter unnecessary.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        for deg in 1..=(d / 2) {
            for cand in monic_of_degree(self.p, deg) {
                let (_, rem) = self.div_rem(&cand).expect("nonzero candidate");
                if rem.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Inverse mod p by Fermat's little theorem; `a` must be nonzero mod p.
fn mod_inverse(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Monic polynomials of the given degree, ordered lexicographically on the
/// written form (highest non-leading coefficient most significant).
fn monic_of_degree(p: Prime, deg: usize) -> impl Iterator<Item = FpPoly> {
    let pv = p.get();
    let count = pv.pow(deg as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs = vec![0u64; deg + 1];
        coeffs[deg] = 1;
        for c in coeffs.iter_mut().take(deg) {
            *c = idx % pv;
            idx /= pv;
        }
        FpPoly::new(p, coeffs)
    })
}

/// The monic irreducibles of degree `1..=maxdeg`, ordered by degree and
/// then lexicographically.
pub fn enumerate_irreducibles(p: Prime, maxdeg: u32) -> Result<Vec<FpPoly>> {
    if maxdeg == 0 || maxdeg > MAX_ENUM_DEGREE {
        return Err(Error::DegreeOutOfRange(maxdeg, MAX_ENUM_DEGREE));
    }
    let mut out = Vec::new();
    for deg in 1..=maxdeg as usize {
        let mut batch: Vec<FpPoly> = monic_of_degree(p, deg)
            .filter(FpPoly::is_irreducible)
            .collect();
        batch.sort_by(|a, b| {
            let key = |f: &FpPoly| {
                let mut v: Vec<u64> = f.coeffs[..deg].to_vec();
                v.reverse();
                v
            };
            key(a).cmp(&key(b))
        });
        out.extend(batch);
    }
    Ok(out)
}

/// Coefficientwise image of an integral polynomial under the quotient map
/// `Z_p -> F_p` (denominators inverted mod p).
///
/// Errors with `NotIntegral` if some coefficient has negative p-adic
/// valuation.
pub fn reduce_mod_p(f: &RationalPoly, p: Prime) -> Result<FpPoly> {
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| reduce_rational(c, p))
        .collect::<Result<Vec<u64>>>()?;
    Ok(FpPoly::new(p, coeffs))
}

fn reduce_rational(c: &Rational, p: Prime) -> Result<u64> {
    let pb = num_bigint::BigInt::from(p.get());
    // In lowest terms, p-integrality is exactly "p does not divide the
    // denominator".
    if c.denom().mod_floor(&pb).is_zero() {
        return Err(Error::NotIntegral(c.to_string(), p.get()));
    }
    let num = c.numer().mod_floor(&pb).to_u64().unwrap();
    let den = c.denom().mod_floor(&pb).to_u64().unwrap();
    Ok(mulmod(num, mod_inverse(den, p.get()), p.get()))
}

impl fmt::Display for FpPoly {
    /// Same sparse syntax as `RationalPoly`, with coefficients in `[0, p-1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[k];
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                _ => {
                    if c != 1 {
                        write!(f, "{c}*")?;
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
