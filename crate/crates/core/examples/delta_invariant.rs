//! Local delta-invariants `δ_p = (deg_p - drop_p) / 2` of Hitchin fibers.
//!
//! ```text
//! cargo run --example delta_invariant -- 4:0,3:1,1:1
//! ```

use moduli_aut::moduli::{cameral_double_point, delta_local, delta_total, RamificationProfile};

fn main() {
    println!("t^2 = x^m:");
    for m in 1..=8 {
        let e = cameral_double_point(m);
        println!("  m = {m}: {e} -> δ_p = {}", delta_local(&e).unwrap());
    }
    let input = std::env::args().nth(1).unwrap_or_else(|| "2:0,1:1,1:1".to_string());
    let profile = RamificationProfile::parse(&input).expect("deg:drop,deg:drop,...");
    match delta_total(&profile) {
        Ok(d) => println!("profile {input}: δ = {d}{}", if d == 0 { " (abelian fiber)" } else { "" }),
        Err(e) => println!("profile {input}: {e}"),
    }
}
