//! The glued-ray picture of `M(Z_p[G])`, with DOT and JSON emission.
//!
//! Each ray is an interval `[1, oo]` of omega powers of one seminorm
//! family; its `1`-end is free and its `oo`-end lands on a residue-field
//! junction. Rays are glued at infinity exactly when the underlying roots
//! of unity share a residue: for `M = p^N` every root reduces to 1, so all
//! ends meet in a single junction; for `M | p - 1` the residues are
//! pairwise distinct and every ray keeps its own junction.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::points::json::magnitude_to_value;
use crate::polynomial::enumerate_irreducibles;
use crate::valuation::{mag_of, rat, vp, ExtRational, Magnitude, Prime, Rational};

use super::{
    group_ring_eval, prime_power_exponent, GroupRingElement, MAX_ORDER,
};

/// Which base ring the ray count describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Spectrum over `Z_p`: one ray per irreducible factor.
    Zp,
    /// Spectrum over the ring of integers of the completed algebraic
    /// closure: one ray per root, `n_k = p^(k-1)(p-1)` of them per factor.
    Closed,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Zp => "zp",
            Side::Closed => "closed",
        }
    }
}

/// One interval `[1, oo]` of the spectrum.
#[derive(Debug, Clone)]
pub struct Ray {
    pub label: String,
    /// Index of the cyclotomic factor the underlying root belongs to
    /// (`M = p^N` orders), or the root index (`M | p - 1` orders).
    pub factor_index: usize,
    /// Residue of the underlying root of unity mod p.
    pub root_residue: u64,
    /// Junction class of the infinity end.
    pub infinity_class: usize,
}

/// The glued-ray graph, carrying enough data to evaluate group-ring
/// elements anywhere on any ray.
#[derive(Debug, Clone)]
pub struct SpectrumGraph {
    p: Prime,
    order: u64,
    side: Side,
    rays: Vec<Ray>,
    junctions: BTreeMap<usize, String>,
    kind: GraphKind,
}

#[derive(Debug, Clone)]
enum GraphKind {
    PrimePower,
    RootsOfUnity { lifts: Vec<BigUint>, precision: u32 },
}

/// Working precision (base-p digits) for Teichmuller lifts backing the
/// `M | p - 1` evaluation handles.
const LIFT_PRECISION: u32 = 20;

/// Build the spectrum graph of `Z_p[G]` for cyclic `G` of order `M`.
///
/// Supported orders: `M = p^N` (where the side flag selects between the
/// `Z_p` ray count `N + 1` and the algebraically closed count
/// `1 + sum n_k`) and `M | p - 1` (same picture on both sides: `M` rays,
/// no identifications). Mixed orders are rejected.
pub fn spectrum_graph(p: Prime, m: u64, side: Side) -> Result<SpectrumGraph> {
    if m == 0 || m > MAX_ORDER {
        return Err(Error::OrderTooLarge(m, MAX_ORDER));
    }
    if let Some(n) = prime_power_exponent(p, m) {
        if n >= 1 {
            return Ok(prime_power_graph(p, m, n, side));
        }
    }

    if (p.get() - 1).is_multiple_of(m) {
        return roots_of_unity_graph(p, m, side);
    }
    Err(Error::UnsupportedOrder(m, p.get(), p.get() - 1))
}

fn prime_power_graph(p: Prime, m: u64, n: u32, side: Side) -> SpectrumGraph {
    let mut rays = Vec::new();
    match side {
        Side::Zp => {
            // one ray per irreducible factor, all glued at beta_bar_1
            for k in 0..=n as usize {
                rays.push(Ray {
                    label: format!("alpha_bar_{k}"),
                    factor_index: k,
                    root_residue: 1,
                    infinity_class: 0,
                });
            }
        }
        Side::Closed => {
            // one ray per root: 1 + sum_k n_k with n_k = p^(k-1)(p-1)
            rays.push(Ray {
                label: "alpha_0_1".into(),
                factor_index: 0,
                root_residue: 1,
                infinity_class: 0,
            });
            for k in 1..=n {
                let nk = p.get().pow(k - 1) * (p.get() - 1);
                for i in 1..=nk {
                    rays.push(Ray {
                        label: format!("alpha_{k}_{i}"),
                        factor_index: k as usize,
                        root_residue: 1,
                        infinity_class: 0,
                    });
                }
            }
        }
    }
    let beta = match side {
        Side::Zp => "beta_bar_1",
        Side::Closed => "beta_1",
    };
    SpectrumGraph {
        p,
        order: m,
        side,
        rays,
        junctions: BTreeMap::from([(0, beta.to_string())]),
        kind: GraphKind::PrimePower,
    }
}

fn roots_of_unity_graph(p: Prime, m: u64, side: Side) -> Result<SpectrumGraph> {
    // the roots already live in Z_p, so both sides agree
    let lifts = super::teichmuller_roots(p, m, LIFT_PRECISION)?;
    let mut rays = Vec::new();
    let mut junctions = BTreeMap::new();
    for (i, lift) in lifts.iter().enumerate() {
        let residue = (lift % BigUint::from(p.get())).to_u64().unwrap();
        rays.push(Ray {
            label: format!("alpha_r{residue}"),
            factor_index: i,
            root_residue: residue,
            infinity_class: i,
        });
        junctions.insert(i, format!("beta_r{residue}"));
    }
    Ok(SpectrumGraph {
        p,
        order: m,
        side,
        rays,
        junctions,
        kind: GraphKind::RootsOfUnity { lifts, precision: LIFT_PRECISION },
    })
}

impl SpectrumGraph {
    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn junctions(&self) -> &BTreeMap<usize, String> {
        &self.junctions
    }

    /// Evaluate `|x|` at parameter `omega` on the given ray.
    ///
    /// Prime-power orders go through exact resultants. Root-of-unity
    /// orders evaluate at the Teichmuller lift; if the valuation reaches
    /// the working precision without an exact zero, the evaluation fails
    /// rather than guess.
    pub fn eval_on_ray(
        &self,
        x: &GroupRingElement,
        ray: usize,
        omega: &Rational,
    ) -> Result<Magnitude> {
        let r = self
            .rays
            .get(ray)
            .ok_or(Error::RayOutOfRange(ray, self.rays.len().saturating_sub(1)))?;
        if x.order() as u64 != self.order || x.prime() != self.p {
            return Err(Error::InvalidGroupElement(format!(
                "element of order {} does not live on this graph (order {})",
                x.order(),
                self.order
            )));
        }
        match &self.kind {
            GraphKind::PrimePower => group_ring_eval(x, r.factor_index, omega),
            GraphKind::RootsOfUnity { lifts, precision } => {
                if omega < &Rational::one() {
                    return Err(Error::InvalidPoint(format!(
                        "omega must be >= 1, got {omega}"
                    )));
                }
                let lift = &lifts[r.factor_index];
                let value = eval_at_lift(x, lift);
                if value.is_zero() {
                    // exact only at the fixed point 1; elsewhere the lift
                    // carries O(p^precision) error
                    if lift.is_one() {
                        return Ok(Magnitude::zero(self.p));
                    }
                    return Err(Error::PrecisionExhausted(*precision));
                }
                match vp(&value, self.p) {
                    ExtRational::Finite(v) if v < rat(*precision as i64) => {
                        mag_of(&value, self.p).pow(omega)
                    }
                    _ => Err(Error::PrecisionExhausted(*precision)),
                }
            }
        }
    }

    /// Deterministic DOT rendering: one node per free end and per
    /// junction, one edge per ray labeled by its parameter interval.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "graph spectrum_p{}_M{}_{} {{",
            self.p,
            self.order,
            self.side.name()
        );
        let _ = writeln!(out, "  // free 1-ends");
        for ray in &self.rays {
            let _ = writeln!(out, "  \"{}^1\" [shape=circle];", ray.label);
        }
        let _ = writeln!(out, "  // junctions (identified infinity-ends)");
        for label in self.junctions.values() {
            let _ = writeln!(out, "  \"{label}\" [shape=point];");
        }
        for ray in &self.rays {
            let junction = &self.junctions[&ray.infinity_class];
            let _ = writeln!(
                out,
                "  \"{}^1\" -- \"{junction}\" [label=\"omega: [1,inf]\"];",
                ray.label
            );
        }
        out.push_str("}\n");
        out
    }

    /// Full graph as JSON, with exact evaluation samples of the separating
    /// element `u - 1` at `omega` in {1, 2, 4, 8} on every ray.
    pub fn to_json(&self) -> Result<Value> {
        let sample_element = (self.order >= 2)
            .then(|| GroupRingElement::u_minus_one(self.p, self.order as usize))
            .transpose()?;
        let mut rays = Vec::new();
        for (i, ray) in self.rays.iter().enumerate() {
            let mut samples = serde_json::Map::new();
            if let Some(x) = &sample_element {
                for w in [1i64, 2, 4, 8] {
                    let v = self.eval_on_ray(x, i, &rat(w))?;
                    samples.insert(w.to_string(), magnitude_to_value(&v));
                }
            }
            rays.push(json!({
                "label": ray.label,
                "factor_index": ray.factor_index,
                "root_residue": ray.root_residue,
                "infinity_class": ray.infinity_class,
                "samples_u_minus_1": samples,
            }));
        }
        let junctions: BTreeMap<String, String> = self
            .junctions
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        Ok(json!({
            "p": self.p.get(),
            "order": self.order,
            "side": self.side.name(),
            "rays": rays,
            "junctions": junctions,
        }))
    }
}

/// `sum a_l b^l` as an exact rational at an integer lift `b`.
fn eval_at_lift(x: &GroupRingElement, lift: &BigUint) -> Rational {
    let b = Rational::from(num_bigint::BigInt::from(lift.clone()));
    let mut acc = Rational::zero();
    for c in x.coeffs().iter().rev() {
        acc = acc * &b + c;
    }
    acc
}

/// The residue-field line over `F_p` as a broom: bristles `[0, 1]` in
/// kappa for every monic irreducible up to the degree bound, glued at the
/// trivial norm, plus the unbounded `t`-ray beyond it.
pub fn broom_dot(p: Prime, maxdeg: u32) -> Result<String> {
    let irreducibles = enumerate_irreducibles(p, maxdeg)?;
    let mut out = String::new();
    let _ = writeln!(out, "graph broom_p{}_deg{} {{", p, maxdeg);
    let _ = writeln!(out, "  \"gamma(t,1)\" [shape=point, label=\"trivial norm\"];");
    let _ = writeln!(out, "  \"gamma(t,inf)\" [shape=none, label=\"kappa -> inf\"];");
    for q in &irreducibles {
        let _ = writeln!(out, "  \"gamma({q},0)\" [shape=circle];");
    }
    let _ = writeln!(
        out,
        "  \"gamma(t,1)\" -- \"gamma(t,inf)\" [label=\"kappa: (1,inf)\"];"
    );
    for q in &irreducibles {
        let _ = writeln!(
            out,
            "  \"gamma(t,1)\" -- \"gamma({q},0)\" [label=\"kappa: [0,1]\"];"
        );
    }
    out.push_str("}\n");
    Ok(out)
}
