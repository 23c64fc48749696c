//! Smith normal form and the finite abelian groups it produces.

use moduli_aut::finabel::{enumerate_subgroups, smith_normal_form, FiniteAbelianGroup, IntegerMatrix};

fn main() {
    // Cartan matrix of D4: its cokernel is P/Q = (Z/2)^2.
    let m = IntegerMatrix::from_rows(&[
        vec![2, -1, 0, 0],
        vec![-1, 2, -1, -1],
        vec![0, -1, 2, 0],
        vec![0, -1, 0, 2],
    ]);
    let snf = smith_normal_form(&m);
    println!("M =\n{m}");
    println!("S = U M V =\n{}", snf.s);
    assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s);

    let orders: Vec<u64> = snf.diagonal().iter().map(|d| d.try_into().unwrap()).collect();
    let g = FiniteAbelianGroup::from_cyclic_orders(&orders);
    println!("coker M = {g}, order {}", g.order());

    let z4 = FiniteAbelianGroup::cyclic(4);
    let z2z4 = FiniteAbelianGroup::from_cyclic_orders(&[2, 4]);
    for h in [z4, z2z4] {
        let subs = enumerate_subgroups(&h);
        let types: Vec<String> = subs.iter().map(|s| s.isomorphism_type().to_string()).collect();
        println!("{h} has {} subgroups: {}", subs.len(), types.join(", "));
    }
}
