//! Builds the root system of a Dynkin type and prints its basic data.
//!
//! ```text
//! cargo run --example root_systems -- F4
//! ```

use moduli_aut::rootdata::{DynkinType, RootDatum};

fn main() {
    let t: DynkinType = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "G2".to_string())
        .parse()
        .expect("a Dynkin type such as A3, D5 or E6");
    let rd = RootDatum::build(t);

    println!("{t}: rank {}, {} roots in R^{}", rd.rank(), rd.num_roots(), rd.ambient_dim());
    println!("simple roots:");
    for (i, a) in rd.simple_roots().iter().enumerate() {
        println!("  α{} = {a}", i + 1);
    }
    println!("Cartan matrix C[i][j] = <α_j, α_i^v>:");
    for row in rd.cartan() {
        println!("  {row:?}");
    }
    println!("fundamental weights:");
    for (i, w) in rd.fundamental_weights().iter().enumerate() {
        println!("  w{} = {w}", i + 1);
    }
    println!("closed under reflections: {}", rd.check_closed());
    println!("dim G = {}", rd.dim_group());
}
