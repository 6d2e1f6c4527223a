//! The residue-field line over F_p drawn as a broom: one bristle
//! [0, 1] in kappa per monic irreducible, glued at the trivial norm,
//! plus the unbounded t-ray.
//!
//! ```bash
//! cargo run -p berkline --example residue_broom > broom.dot
//! dot -Tsvg broom.dot -o broom.svg   # if graphviz is installed
//! ```

use berkline::polynomial::enumerate_irreducibles;
use berkline::spectrum::broom_dot;
use berkline::valuation::Prime;

fn main() -> berkline::Result<()> {
    let p = Prime::new(2)?;
    let irr = enumerate_irreducibles(p, 3)?;
    eprintln!("monic irreducibles over F_2 up to degree 3:");
    for q in &irr {
        eprintln!("  {q}");
    }
    print!("{}", broom_dot(p, 3)?);
    Ok(())
}
