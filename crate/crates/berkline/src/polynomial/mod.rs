//! Exact dense polynomial algebra over `Q` and over `F_p`.

mod fp;
mod parse;
mod rational;

pub use fp::{enumerate_irreducibles, reduce_mod_p, FpPoly};
pub use parse::parse_poly;
pub use rational::{resultant, RationalPoly};
