//! Berkovich spectra of Banach group rings `Z_p[G]` for cyclic `G`.
//!
//! For `G` of order `M = p^N`, the polynomial `t^M - 1` factors over `Z_p`
//! into `q_0 = t - 1` and the prime-power cyclotomic factors
//! `q_{l+1} = t^(p^l (p-1)) + t^(p^l (p-2)) + ... + t^(p^l) + 1`,
//! each irreducible by Eisenstein's criterion after the shift `t -> t+1`.
//! Every contractive multiplicative seminorm on the group ring is either an
//! omega power `|x|_{alpha_k}^omega = |f(r)|^omega` at a root `r` of some
//! `q_k`, or the residue-field evaluation `beta`. Roots are never
//! constructed: Galois conjugates share their absolute value, so
//! `|f(r)| = |Res(q_k, f)|^(1/deg q_k)` is computed by exact resultants.
//!
//! For `M | p - 1` the roots of unity already live in `Z_p`; they are
//! reached by Teichmuller lifting (iterating `x -> x^p`) to a requested
//! precision, and all rays stay separate because the residues differ.

mod graph;

pub use graph::{broom_dot, spectrum_graph, Ray, Side, SpectrumGraph};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polynomial::{resultant, RationalPoly};
use crate::valuation::{mag_of, rat, vp, ExtRational, Magnitude, Prime, Rational};

/// Degrees stay desk-scale: `p^N` (and shifted witness degrees) at most this.
pub const MAX_ORDER: u64 = 1 << 14;

/// The factorization `t^(p^N) - 1 = q_0 q_1 ... q_N` over `Z_p`, with
/// `q_0 = t - 1` and `q_{l+1}` the prime-power cyclotomic factor of degree
/// `p^l (p - 1)`.
pub fn cyclotomic_factors(p: Prime, n: u32) -> Result<Vec<RationalPoly>> {
    let order = checked_power(p, n)?;
    let _ = order;
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(RationalPoly::var_minus(&Rational::one()));
    for l in 0..n {
        out.push(cyclotomic_factor(p, l));
    }
    Ok(out)
}

/// `q_{l+1} = sum_{i=0}^{p-1} t^(p^l * i)`.
fn cyclotomic_factor(p: Prime, l: u32) -> RationalPoly {
    let step = p.get().pow(l) as usize;
    let deg = step * (p.get() as usize - 1);
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for i in 0..p.get() as usize {
        coeffs[step * i] = Rational::one();
    }
    RationalPoly::new(coeffs)
}

fn checked_power(p: Prime, n: u32) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..n {
        acc = acc.saturating_mul(p.get());
        if acc > MAX_ORDER {
            return Err(Error::OrderTooLarge(acc, MAX_ORDER));
        }
    }
    Ok(acc)
}

/// The Eisenstein certificate for `q_{l+1}`: the exact coefficients of
/// `q_{l+1}(t + 1)` together with the checks that make the criterion
/// apply.
#[derive(Debug, Clone)]
pub struct EisensteinWitness {
    /// Coefficients of `q_{l+1}(t+1)`, ascending.
    pub shifted_coeffs: Vec<BigInt>,
    pub constant_term: BigInt,
    pub leading_term: BigInt,
    /// Divisibility by `p` of each intermediate coefficient.
    pub divisibility: Vec<bool>,
}

/// Compute `q_{l+1}(t+1)` exactly and verify the Eisenstein shape: leading
/// coefficient 1, constant term exactly `p`, all intermediate coefficients
/// divisible by `p`. A violation would be an implementation bug and fails
/// loudly.
pub fn eisenstein_witness(p: Prime, l: u32) -> Result<EisensteinWitness> {
    let deg = (p.get() as u128).pow(l) * (p.get() as u128 - 1);
    if deg > MAX_ORDER as u128 {
        return Err(Error::OrderTooLarge(deg.min(u64::MAX as u128) as u64, MAX_ORDER));
    }
    let step = p.get().pow(l) as usize;
    let deg = deg as usize;
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for i in 0..p.get() as usize {
        coeffs[step * i] = BigInt::one();
    }
    // integer Ruffini-Horner shift by 1
    for k in 0..deg {
        for j in (k..deg).rev() {
            let add = coeffs[j + 1].clone();
            coeffs[j] += add;
        }
    }
    let fail = |reason: String| Error::WitnessFailed { p: p.get(), l, reason };
    let leading = coeffs[deg].clone();
    if !leading.is_one() {
        return Err(fail(format!("leading coefficient {leading} != 1")));
    }
    let constant = coeffs[0].clone();
    if constant != BigInt::from(p.get()) {
        return Err(fail(format!("constant term {constant} != {p}")));
    }
    let pb = BigInt::from(p.get());
    let divisibility: Vec<bool> = coeffs[1..deg]
        .iter()
        .map(|c| c.mod_floor(&pb).is_zero())
        .collect();
    if let Some(i) = divisibility.iter().position(|ok| !ok) {
        return Err(fail(format!(
            "coefficient of t^{} is not divisible by {p}",
            i + 1
        )));
    }
    Ok(EisensteinWitness {
        shifted_coeffs: coeffs,
        constant_term: constant,
        leading_term: leading,
        divisibility,
    })
}

/// An element `sum_l a_l u^l` of `Z_p[G]` for cyclic `G = <u>` of order
/// `M`, with p-integral rational coefficients. The Banach norm is the sup
/// of the coefficient magnitudes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    p: Prime,
    coeffs: Vec<Rational>,
}

impl GroupRingElement {
    pub fn new(p: Prime, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidGroupElement("group order must be >= 1".into()));
        }
        for c in &coeffs {
            if vp(c, p) < ExtRational::from_int(0) {
                return Err(Error::NotIntegral(c.to_string(), p.get()));
            }
        }
        Ok(GroupRingElement { p, coeffs })
    }

    /// The identity `1` in the given order.
    pub fn identity(p: Prime, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order];
        coeffs[0] = Rational::one();
        GroupRingElement { p, coeffs }
    }

    /// The separating element `u - 1`.
    pub fn u_minus_one(p: Prime, order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidGroupElement(
                "u - 1 needs group order >= 2".into(),
            ));
        }
        let mut coeffs = vec![Rational::zero(); order];
        coeffs[0] = -Rational::one();
        coeffs[1] = Rational::one();
        Ok(GroupRingElement { p, coeffs })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The representative polynomial `sum a_l t^l` of degree `< M`.
    pub fn as_poly(&self) -> RationalPoly {
        RationalPoly::new(self.coeffs.clone())
    }

    /// Convolution product in the group ring (polynomial product reduced
    /// modulo `t^M - 1`).
    pub fn mul(&self, other: &GroupRingElement) -> GroupRingElement {
        assert_eq!(self.p, other.p, "elements over different primes");
        assert_eq!(self.order(), other.order(), "elements of different orders");
        let m = self.order();
        let mut coeffs = vec![Rational::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let idx = (i + j) % m;
                let add = a * b;
                coeffs[idx] += add;
            }
        }
        GroupRingElement { p: self.p, coeffs }
    }

    /// The Banach norm `max_l |a_l|`.
    pub fn sup_norm(&self) -> Magnitude {
        self.coeffs
            .iter()
            .map(|c| mag_of(c, self.p))
            .max()
            .expect("nonempty")
    }
}

/// `N` with `M = p^N`, if the order is a prime power of `p`.
pub fn prime_power_exponent(p: Prime, m: u64) -> Option<u32> {
    let mut m = m;
    let mut n = 0;
    while m > 1 {
        if !m.is_multiple_of(p.get()) {
            return None;
        }
        m /= p.get();
        n += 1;
    }
    Some(n)
}

/// Seminorm value `|x|` on ray `k` at exponent `omega` for orders
/// `M = p^N`: `|Res(q_k, f)|^(omega / deg q_k)` with `f` the representative
/// polynomial. This equals `|f(r)|^omega` at any root `r` of `q_k`, because
/// Galois conjugates share their absolute value; the value is zero exactly
/// when `q_k` divides `f`.
pub fn group_ring_eval(
    x: &GroupRingElement,
    k: usize,
    omega: &Rational,
) -> Result<Magnitude> {
    let p = x.prime();
    let n = prime_power_exponent(p, x.order() as u64).ok_or_else(|| {
        Error::UnsupportedOrder(x.order() as u64, p.get(), p.get() - 1)
    })?;
    if k > n as usize {
        return Err(Error::RayOutOfRange(k, n as usize));
    }
    if omega < &Rational::one() {
        return Err(Error::InvalidPoint(format!("omega must be >= 1, got {omega}")));
    }
    let factors = cyclotomic_factors(p, n)?;
    let q = &factors[k];
    let deg = q.degree().expect("factors are nonconstant") as i64;
    let res = resultant(q, &x.as_poly())?;
    mag_of(&res, p).pow(&(omega / rat(deg)))
}

/// The residue-field seminorm at the root residue: `1` if the reduced
/// evaluation `sum Q(a_l) rbar^l` is nonzero in `F_p`, else `0`.
pub fn beta_eval(x: &GroupRingElement, root_residue: u64) -> Result<u8> {
    let p = x.prime();
    let m = x.order() as u64;
    if mod_pow(root_residue, m, p.get()) != 1 {
        return Err(Error::NotRootOfUnity(root_residue, m, p.get()));
    }
    let mut acc = 0u64;
    let mut power = 1u64;
    for c in &x.coeffs {
        let cred = reduce_rational_mod_p(c, p);
        acc = (acc + cred * power) % p.get();
        power = (power as u128 * root_residue as u128 % p.get() as u128) as u64;
    }
    Ok(u8::from(acc != 0))
}

/// Residue of a p-integral rational.
fn reduce_rational_mod_p(c: &Rational, p: Prime) -> u64 {
    let pb = BigInt::from(p.get());
    let num = c.numer().mod_floor(&pb).to_u64().unwrap();
    let den = c.denom().mod_floor(&pb).to_u64().unwrap();
    debug_assert!(den != 0, "coefficients are p-integral by construction");
    (num as u128 * mod_pow(den, p.get() - 2, p.get()) as u128 % p.get() as u128) as u64
}

fn mod_pow(mut base: u64, mut e: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// The `M` Teichmuller lifts of the `M`-th roots of unity for `M | p - 1`,
/// modulo `p^precision`, ordered by residue. Each lift satisfies
/// `x^M = 1 mod p^precision`; iterating `x -> x^p` gains one digit of
/// agreement per step, so `precision` squarings suffice.
pub fn teichmuller_roots(p: Prime, m: u64, precision: u32) -> Result<Vec<BigUint>> {
    if m == 0 || !(p.get() - 1).is_multiple_of(m) {
        return Err(Error::UnsupportedOrder(m, p.get(), p.get() - 1));
    }
    let modulus = BigUint::from(p.get()).pow(precision);
    let mut out = Vec::with_capacity(m as usize);
    for r in 1..p.get() {
        if mod_pow(r, m, p.get()) != 1 {
            continue;
        }
        let mut x = BigUint::from(r);
        for _ in 0..precision {
            x = big_mod_pow(&x, p.get(), &modulus);
        }
        debug_assert_eq!(big_mod_pow(&x, p.get(), &modulus), x, "lift not stable");
        out.push(x);
    }
    debug_assert_eq!(out.len(), m as usize);
    Ok(out)
}

fn big_mod_pow(base: &BigUint, e: u64, modulus: &BigUint) -> BigUint {
    base.modpow(&BigUint::from(e), modulus)
}
