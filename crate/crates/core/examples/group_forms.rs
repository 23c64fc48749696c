//! All forms `G^sc / mu` of a type, with their fundamental groups, center
//! characters and outer automorphism groups.
//!
//! ```text
//! cargo run --example group_forms -- D6
//! ```

use moduli_aut::groupclass::enumerate_forms;
use moduli_aut::rootdata::DynkinType;

fn main() {
    let t: DynkinType = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "D4".to_string())
        .parse()
        .expect("a Dynkin type");
    println!("{:<14} {:<12} {:<16} Out(G)", "G", "π₁(G)", "Hom(Z(G),G_m)");
    for gf in enumerate_forms(t) {
        println!(
            "{:<14} {:<12} {:<16} {}",
            gf.display_name(),
            gf.fundamental_group().to_string(),
            gf.center_char_group().to_string(),
            gf.out_group().kind
        );
    }
}
