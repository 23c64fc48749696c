//! Invariant degrees, Coxeter numbers, Weyl group orders and the orbit
//! counts of the Weyl group on roots and hyperplane pairs.

use moduli_aut::rootdata::{DynkinType, RootDatum};
use moduli_aut::weyl;

fn main() {
    println!("{:<4} {:>4} {:>3} {:>12} {:>3} {:>4}  degrees", "type", "|Φ|", "h", "|W|", "m", "n");
    for t in DynkinType::all_up_to(8) {
        let rd = RootDatum::build(t);
        let degrees = weyl::invariant_degrees(&rd).expect("Coxeter elements have cyclotomic char. polynomials");
        let h = weyl::coxeter_number(&rd);
        let w = weyl::weyl_group_order(rd.cartan());
        let m = weyl::orbits_on_roots(&rd).count();
        let n = weyl::orbits_on_hyperplane_pairs(&rd).map(|p| p.count()).unwrap_or(0);
        assert_eq!(degrees.iter().map(|&d| d as u128).product::<u128>(), w);
        println!("{:<4} {:>4} {:>3} {:>12} {:>3} {:>4}  {degrees:?}", t.to_string(), rd.num_roots(), h, w, m, n);
    }
}
