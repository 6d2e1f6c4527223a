//! Spectra of Banach group rings Z_p[G] for cyclic G, as glued-ray
//! graphs, with exact seminorm values of the separating element u - 1.
//!
//! ```bash
//! cargo run -p berkline --example group_ring_spectrum
//! ```

use berkline::spectrum::{
    cyclotomic_factors, eisenstein_witness, group_ring_eval, spectrum_graph,
    GroupRingElement, Side,
};
use berkline::valuation::{rat, Prime};

fn main() -> berkline::Result<()> {
    let p = Prime::new(2)?;

    // t^4 - 1 = (t-1)(t+1)(t^2+1) over Z_2, certified by Eisenstein shifts.
    let factors = cyclotomic_factors(p, 2)?;
    println!("t^4 - 1 factors over Z_2 as:");
    for (k, q) in factors.iter().enumerate() {
        println!("  q_{k} = {q}");
    }
    for l in 0..2 {
        let w = eisenstein_witness(p, l)?;
        println!(
            "  q_{}(t+1): constant {}, leading {} (Eisenstein)",
            l + 1,
            w.constant_term,
            w.leading_term
        );
    }

    // |u - 1| along each ray at omega = 1: zero on the linear ray, then
    // p^(-1/deg q_k); pairwise distinct, so u - 1 separates the rays.
    let x = GroupRingElement::u_minus_one(p, 4)?;
    for k in 0..=2 {
        println!("  |u-1| on ray {k} at omega=1: {}", group_ring_eval(&x, k, &rat(1))?);
    }

    // The glued-ray picture for order p^N: every infinity-end meets in
    // one junction since all roots of unity reduce to 1.
    let g = spectrum_graph(p, 4, Side::Zp)?;
    println!(
        "M(Z_2[C_4]): {} rays, {} junction(s) over Z_p",
        g.rays().len(),
        g.junctions().len()
    );
    let g = spectrum_graph(p, 4, Side::Closed)?;
    println!(
        "             {} rays over the completed algebraic closure",
        g.rays().len()
    );

    // M | p - 1: the roots are Teichmuller lifts with distinct residues,
    // so nothing is identified.
    let g = spectrum_graph(Prime::new(5)?, 4, Side::Zp)?;
    println!(
        "M(Z_5[C_4]): {} rays, {} junctions (distinct residues)",
        g.rays().len(),
        g.junctions().len()
    );

    println!("\nDOT rendering of M(Z_2[C_4]):\n{}", spectrum_graph(p, 4, Side::Zp)?.to_dot());
    Ok(())
}
