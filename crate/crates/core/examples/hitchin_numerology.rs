//! Dimensions and component counts of the Hitchin fibration.

use moduli_aut::groupclass::GroupForm;
use moduli_aut::moduli::hitchin_report;
use moduli_aut::rootdata::DynkinType;

fn main() {
    let genus: u32 = std::env::args().nth(1).map_or(4, |g| g.parse().expect("genus"));
    println!("genus {genus}");
    println!("{:<4} {:>5} {:>7} {:>8} {:>3} {:>3} {:>4}  weights", "type", "dim G", "dim 𝔸", "dim M", "h", "m", "n");
    for t in DynkinType::all_up_to(8) {
        let r = hitchin_report(&GroupForm::simply_connected(t), genus).expect("genus >= 2");
        assert_eq!(r.dim_basis, r.dim_basis_riemann_roch);
        println!(
            "{:<4} {:>5} {:>7} {:>8} {:>3} {:>3} {:>4}  {:?}",
            t.to_string(),
            r.dim_g,
            r.dim_basis,
            r.higgs_stack_dim,
            r.coxeter_number,
            r.m_ab_components,
            r.n_extra_components,
            r.weights
        );
    }
}
