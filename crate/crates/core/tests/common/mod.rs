//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use moduli_aut::finabel::{smith_normal_form, Element, FiniteAbelianGroup, IntegerMatrix};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub fn normalize(line: &str) -> String {
    line.split_whitespace().collect()
}

/// Non-blank, non-comment lines of a file under `tables/`, whitespace removed.
pub fn golden_lines(name: &str) -> Vec<String> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tables/").to_string() + name;
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(normalize)
        .collect()
}

/// Every finite abelian group of order at most `n`, as divisor chains.
pub fn groups_up_to(n: u64) -> Vec<FiniteAbelianGroup> {
    fn extend(prefix: &mut Vec<u64>, product: u64, n: u64, out: &mut Vec<FiniteAbelianGroup>) {
        out.push(FiniteAbelianGroup::from_invariant_factors(prefix.clone()).unwrap());
        let previous = prefix.last().copied();
        let mut l = previous.unwrap_or(2);
        while product * l <= n {
            if previous.map_or(true, |p| l % p == 0) {
                prefix.push(l);
                extend(prefix, product * l, n, out);
                prefix.pop();
            }
            l += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, n, &mut out);
    out
}

/// Subgroups found by testing every subset containing zero for closure.
pub fn brute_force_subgroups(g: &FiniteAbelianGroup) -> BTreeSet<BTreeSet<Element>> {
    let elements = g.elements();
    let zero = g.zero();
    let others: Vec<&Element> = elements.iter().filter(|x| **x != zero).collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << others.len()) {
        let mut set: BTreeSet<Element> = BTreeSet::new();
        set.insert(zero.clone());
        for (i, x) in others.iter().enumerate() {
            if mask & (1 << i) != 0 {
                set.insert((*x).clone());
            }
        }
        let closed = set.iter().all(|a| set.iter().all(|b| set.contains(&g.add(a, b))));
        if closed {
            out.insert(set);
        }
    }
    out
}

/// Checks `U M V = S`, unimodularity, `V V^-1 = I` and the divisor chain.
pub fn check_smith(m: &IntegerMatrix) -> Result<(), String> {
    let snf = smith_normal_form(m);
    if snf.u.mul(m).mul(&snf.v) != snf.s {
        return Err(format!("U M V != S for\n{m}"));
    }
    if !snf.s.is_diagonal() {
        return Err(format!("S not diagonal for\n{m}"));
    }
    if snf.u.determinant().abs() != BigInt::from(1) || snf.v.determinant().abs() != BigInt::from(1) {
        return Err(format!("U or V not unimodular for\n{m}"));
    }
    if snf.v.mul(&snf.v_inv) != IntegerMatrix::identity(m.cols()) {
        return Err(format!("V^-1 wrong for\n{m}"));
    }
    let d = snf.diagonal();
    for w in d.windows(2) {
        if w[0].is_negative() || w[1].is_negative() {
            return Err(format!("negative invariant factor for\n{m}"));
        }
        if w[0].is_zero() && !w[1].is_zero() {
            return Err(format!("zero before nonzero for\n{m}"));
        }
        if !w[0].is_zero() && !(&w[1] % &w[0]).is_zero() {
            return Err(format!("{} does not divide {} for\n{m}", w[0], w[1]));
        }
    }
    Ok(())
}
