//! Diagram automorphisms acting on weight classes: the D_n swap, the E6
//! flip and D4 triality.

use std::collections::BTreeSet;

use moduli_aut::groupclass::{GroupForm, SimplyConnected};
use moduli_aut::rational::RationalVector;
use moduli_aut::rootdata::{half_sum, DynkinType};

fn main() {
    let d4: DynkinType = "D4".parse().unwrap();
    let sc = SimplyConnected::get(d4);
    let q = sc.weight_classes();
    let g = q.group();
    let eps1 = q.project(&RationalVector::unit(4, 0)).unwrap();
    let w3 = q.project(&half_sum(4, true)).unwrap();
    let w4 = q.project(&half_sum(4, false)).unwrap();
    println!("D4: P/Q = {g}, ε1 = {eps1:?}, w3 = {w3:?}, w4 = {w4:?}");
    let mut images = BTreeSet::new();
    for s in sc.symmetries() {
        let m = sc.weight_class_map(s);
        let img: Vec<_> = [&eps1, &w3, &w4].iter().map(|x| m.apply(g, x)).collect();
        println!("  {:<8} (ε1, w3, w4) -> {img:?}", s.name());
        images.insert(img);
    }
    println!("  {} distinct permutations of the three classes", images.len());

    let e6: DynkinType = "E6".parse().unwrap();
    let sc = SimplyConnected::get(e6);
    let q = sc.weight_classes();
    let w1 = q.project(&sc.root_datum().fundamental_weights()[0]).unwrap();
    let flip = &sc.symmetries()[1];
    let image = sc.weight_class_map(flip).apply(q.group(), &w1);
    println!("E6: w1 = {w1:?} in {}, {} sends it to {image:?}", q.group(), flip.name());

    let pso12 = GroupForm::adjoint("D6".parse().unwrap());
    let action = pso12.out_action_on_pi1();
    for (name, m) in &action.actors {
        let img: Vec<_> = action.group.elements().iter().map(|x| m.apply(&action.group, x)).collect();
        println!("PSO_12: {name} acts on π₁ = {} as {img:?}", action.group);
    }
}
