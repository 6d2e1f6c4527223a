//! Exact computation with points of the Berkovich affine line over the
//! p-adic integers.
//!
//! The affine analytic line over a Banach ring is the space of nonzero
//! multiplicative seminorms on its one-variable polynomial ring whose
//! restriction to the ring is contractive. Over `Z_p` it decomposes into
//! residue-field seminorms (through the quotient `Z_p -> F_p`) and
//! omega-powered Gauss norms of closed disks in `Q_p`. This crate models
//! the representable points of that space with exact rational data and
//! provides:
//!
//! - p-adic valuations and magnitude algebra in exact log scale
//!   ([`valuation`]);
//! - dense polynomial algebra over `Q` and `F_p`, including Taylor shifts,
//!   q-adic expansions, resultants, and irreducible enumeration
//!   ([`polynomial`]);
//! - the point model and the seminorm evaluator ([`points`]);
//! - entourage pseudo-metrics, neighborhood-basis membership, a numerical
//!   convergence classifier, and explicit path sampling ([`topology`]);
//! - Berkovich spectra of Banach group rings `Z_p[G]` for cyclic `G`,
//!   emitted as glued-ray graphs ([`spectrum`]).
//!
//! The `berkline` binary exposes all of it on the command line; see the
//! `examples/` directory for one runnable program per capability.

pub mod cli;
pub mod error;
pub mod points;
pub mod polynomial;
pub mod spectrum;
pub mod topology;
pub mod valuation;

pub use error::{Error, Result};
pub use points::{BerkPoint, ChainPoint, DiskPoint, GammaPoint};
pub use polynomial::{FpPoly, RationalPoly};
pub use valuation::{mag_of, mag_pow, vp, ExtRational, Magnitude, Prime, Rational};
