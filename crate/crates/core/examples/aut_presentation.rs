//! The automorphism group `H^1(C, Z(G)) ⋊ (Out(G, δ) × Aut(C))` for one
//! group and degree.
//!
//! ```text
//! cargo run --example aut_presentation -- Spin10 0 5
//! cargo run --example aut_presentation -- PSO12 1,1
//! ```

use moduli_aut::cli::{parse_delta, parse_group_spec};
use moduli_aut::moduli::aut_presentation;

fn main() {
    let mut args = std::env::args().skip(1);
    let group = args.next().unwrap_or_else(|| "D5:sc".to_string());
    let gf = parse_group_spec(&group).unwrap_or_else(|e| panic!("{e}"));
    let pi1 = gf.fundamental_group();
    let delta = match args.next() {
        Some(d) => parse_delta(&pi1, &d).unwrap_or_else(|e| panic!("{e}")),
        None => pi1.zero(),
    };
    let genus: u32 = args.next().map_or(4, |g| g.parse().expect("genus"));

    let p = aut_presentation(&gf, &delta, genus).unwrap_or_else(|e| panic!("{e}"));
    println!("G = {}, π₁(G) = {}, δ = {}", gf, pi1, pi1.format_element(&delta));
    println!("Aut = {}", p.render());
    println!("    = {}", p.latex());
    println!("H¹(C, Z(G)) = {} (order {})", p.torsion_group(), p.torsion_order());
    for (name, action) in &p.actions {
        println!("  {name:<8} acts on H¹ by {action:?}");
    }
}
