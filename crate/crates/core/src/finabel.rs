//! Integer lattices and finite abelian groups.
//!
//! Group elements are coordinate vectors modulo the invariant factors.
//! Homomorphisms between such groups are integer matrices acting on row
//! vectors: `x -> x * M`, row `i` being the image of the `i`-th generator.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, CoordinateSystem, RationalVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice bases have different ranks ({sup} vs {sub})")]
    RankMismatch { sup: usize, sub: usize },
    #[error("vector {0} is not in the lattice")]
    NotContained(String),
    #[error("basis vectors are linearly dependent")]
    Degenerate,
    #[error("invariant factor {0} does not fit in 64 bits")]
    Overflow(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged integer matrix");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        IntegerMatrix {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// `col[dst] += k * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `U * M * V = S` with `S` diagonal, `d_i | d_{i+1}`, `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    /// Inverse of `v`, kept alongside so lifts need no extra inversion.
    pub v_inv: IntegerMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }
}

/// Smith normal form by row and column reduction, pivoting on the entry of
/// smallest absolute value.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    let mut v_inv = IntegerMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !s[(i, j)].is_zero())
                .min_by(|&a, &b| s[a].abs().cmp(&s[b].abs()).then(a.cmp(&b)));
            let Some((pi, pj)) = pivot else {
                break;
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                let k = -q;
                s.add_row(i, t, &k);
                u.add_row(i, t, &k);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                let k = -&q;
                s.add_col(j, t, &k);
                v.add_col(j, t, &k);
                // V^-1 gets the inverse operation on rows: row[t] += q * row[j].
                v_inv.add_row(t, j, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any offending row into row t and retry.
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&s[(t, t)])));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if t < rows && t < cols && s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { s, u, v, v_inv }
}

/// A finite abelian group in invariant-factor form `Z/l1 x ... x Z/lk`,
/// `l1 | l2 | ... | lk`, every `li >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
}

pub type Element = Vec<u64>;

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(&[n])
    }

    /// Normalizes an arbitrary product of cyclic groups.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let n = orders.len();
        let mut m = IntegerMatrix::zeros(n, n);
        for (i, &o) in orders.iter().enumerate() {
            m[(i, i)] = BigInt::from(o);
        }
        let diag = smith_normal_form(&m).diagonal();
        let invariant_factors = diag
            .iter()
            .filter_map(|d| d.to_u64())
            .filter(|&d| d != 1)
            .collect::<Vec<_>>();
        // Z/0 factors never arise for finite groups; a zero would sort last.
        FiniteAbelianGroup { invariant_factors }
    }

    /// Builds a group from factors already in invariant-factor form.
    pub fn from_invariant_factors(factors: Vec<u64>) -> Option<Self> {
        let ok = factors.iter().all(|&l| l >= 2) && factors.windows(2).all(|w| w[1] % w[0] == 0);
        ok.then_some(FiniteAbelianGroup {
            invariant_factors: factors,
        })
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    pub fn zero(&self) -> Element {
        vec![0; self.rank()]
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        x.len() == self.rank() && x.iter().zip(&self.invariant_factors).all(|(a, l)| a < l)
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Element {
        x.iter()
            .zip(y)
            .zip(&self.invariant_factors)
            .map(|((a, b), l)| (a + b) % l)
            .collect()
    }

    pub fn neg(&self, x: &[u64]) -> Element {
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(a, l)| (l - a) % l)
            .collect()
    }

    pub fn scale(&self, k: i64, x: &[u64]) -> Element {
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(&a, &l)| (k as i128 * a as i128).rem_euclid(l as i128) as u64)
            .collect()
    }

    /// Reduces arbitrary integer coordinates into the group.
    pub fn reduce(&self, x: &[BigInt]) -> Element {
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(a, &l)| {
                a.mod_floor(&BigInt::from(l))
                    .to_u64()
                    .expect("residue fits")
            })
            .collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(&a, &l)| l / a.gcd(&l))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<Element> {
        let mut out = vec![Vec::new()];
        for &l in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..l).map(move |a| {
                        let mut p = prefix.clone();
                        p.push(a);
                        p
                    })
                })
                .collect();
        }
        out
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.rank())
            .map(|i| {
                let mut e = self.zero();
                e[i] = 1;
                e
            })
            .collect()
    }

    /// `Z/l` repeated `exponent` times per invariant factor.
    pub fn torsion_power(&self, exponent: usize) -> FiniteAbelianGroup {
        let mut factors: Vec<u64> = self
            .invariant_factors
            .iter()
            .flat_map(|&l| std::iter::repeat(l).take(exponent))
            .collect();
        factors.sort_unstable();
        Self::from_cyclic_orders(&factors)
    }

    /// Formats an element as `k` (cyclic, or `0` in the trivial group) or
    /// `(a,b,...)`.
    pub fn format_element(&self, x: &[u64]) -> String {
        if self.rank() == 0 {
            "0".to_string()
        } else if self.rank() == 1 {
            x[0].to_string()
        } else {
            let parts: Vec<String> = x.iter().map(ToString::to_string).collect();
            format!("({})", parts.join(","))
        }
    }

    pub fn parse_element(&self, s: &str) -> Option<Element> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return self.is_trivial().then(Vec::new);
        }
        let x: Option<Vec<u64>> = s.split(',').map(|p| p.trim().parse().ok()).collect();
        let x = x?;
        if self.is_trivial() && x.iter().all(|&c| c == 0) {
            return Some(Vec::new());
        }
        self.contains(&x).then_some(x)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "{{0}}");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.rank() {
            let l = self.invariant_factors[i];
            let run = self.invariant_factors[i..].iter().take_while(|&&x| x == l).count();
            if !first {
                write!(f, " × ")?;
            }
            if run == 1 {
                write!(f, "Z/{l}Z")?;
            } else {
                write!(f, "(Z/{l}Z)^{run}")?;
            }
            first = false;
            i += run;
        }
        Ok(())
    }
}

/// `⊕ (Z/l_i)^{2g}`: the torsion group `H^1(C, Z)` for a finite group `Z`.
pub fn torsion_power(g: &FiniteAbelianGroup, exponent_2g: usize) -> FiniteAbelianGroup {
    g.torsion_power(exponent_2g)
}

/// A subgroup with its element set materialized.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    ambient: FiniteAbelianGroup,
    generators: Vec<Element>,
    elements: BTreeSet<Element>,
}

impl Subgroup {
    pub fn generated_by(ambient: &FiniteAbelianGroup, generators: &[Element]) -> Subgroup {
        let mut elements: BTreeSet<Element> = BTreeSet::new();
        elements.insert(ambient.zero());
        let mut frontier = vec![ambient.zero()];
        while let Some(x) = frontier.pop() {
            for g in generators {
                let y = ambient.add(&x, g);
                if elements.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Subgroup {
            ambient: ambient.clone(),
            generators: generators.to_vec(),
            elements,
        }
    }

    pub fn trivial(ambient: &FiniteAbelianGroup) -> Subgroup {
        Self::generated_by(ambient, &[])
    }

    pub fn full(ambient: &FiniteAbelianGroup) -> Subgroup {
        Self::generated_by(ambient, &ambient.generators())
    }

    pub fn ambient(&self) -> &FiniteAbelianGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn elements(&self) -> &BTreeSet<Element> {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.elements.contains(x)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.is_subset(&other.elements)
    }

    /// Isomorphism type of the subgroup as an abstract group.
    pub fn isomorphism_type(&self) -> FiniteAbelianGroup {
        let mut counts: HashMap<u64, u64> = HashMap::new();
        for x in &self.elements {
            *counts.entry(self.ambient.element_order(x)).or_default() += 1;
        }
        invariant_factors_from_order_counts(self.order(), &counts)
    }

    fn sort_key(&self) -> (u64, &BTreeSet<Element>) {
        (self.order(), &self.elements)
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// Recovers invariant factors of a finite abelian group of order `order`
/// from the number of elements of each order, by matching against every
/// candidate factorization.
fn invariant_factors_from_order_counts(order: u64, counts: &HashMap<u64, u64>) -> FiniteAbelianGroup {
    for candidate in invariant_factor_candidates(order) {
        let g = FiniteAbelianGroup::from_invariant_factors(candidate).expect("candidate chain");
        let mut c: HashMap<u64, u64> = HashMap::new();
        for x in g.elements() {
            *c.entry(g.element_order(&x)).or_default() += 1;
        }
        if &c == counts {
            return g;
        }
    }
    unreachable!("every finite abelian group has an invariant-factor form")
}

fn invariant_factor_candidates(order: u64) -> Vec<Vec<u64>> {
    fn go(remaining: u64, last: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if remaining == 1 {
            out.push(prefix.clone());
            return;
        }
        for l in 2..=remaining {
            if remaining % l == 0 && l % last == 0 {
                prefix.push(l);
                go(remaining / l, l, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(order, 1, &mut Vec::new(), &mut out);
    out
}

/// Every subgroup exactly once, ordered by order and then by element list.
pub fn enumerate_subgroups(g: &FiniteAbelianGroup) -> Vec<Subgroup> {
    let elements = g.elements();
    let mut found: BTreeSet<BTreeSet<Element>> = BTreeSet::new();
    let mut out = Vec::new();
    let trivial = Subgroup::trivial(g);
    found.insert(trivial.elements.clone());
    let mut frontier = vec![trivial.clone()];
    out.push(trivial);
    while let Some(h) = frontier.pop() {
        for x in &elements {
            if h.contains(x) {
                continue;
            }
            let mut gens = h.generators.clone();
            gens.push(x.clone());
            let bigger = Subgroup::generated_by(g, &gens);
            if found.insert(bigger.elements.clone()) {
                frontier.push(bigger.clone());
                out.push(bigger);
            }
        }
    }
    out.sort();
    out
}

/// A homomorphism between finite abelian groups in invariant-factor
/// coordinates, acting on row vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupMap {
    pub rows: Vec<Vec<u64>>,
}

impl GroupMap {
    pub fn identity(g: &FiniteAbelianGroup) -> GroupMap {
        GroupMap { rows: g.generators() }
    }

    pub fn apply(&self, target: &FiniteAbelianGroup, x: &[u64]) -> Element {
        let mut out = target.zero();
        for (&xi, row) in x.iter().zip(&self.rows) {
            let term = target.scale(xi as i64, row);
            out = target.add(&out, &term);
        }
        out
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &GroupMap, target: &FiniteAbelianGroup) -> GroupMap {
        GroupMap {
            rows: self.rows.iter().map(|r| then.apply(target, r)).collect(),
        }
    }

    pub fn is_bijective_on(&self, g: &FiniteAbelianGroup) -> bool {
        let images: BTreeSet<Element> = g.elements().iter().map(|x| self.apply(g, x)).collect();
        images.len() as u64 == g.order()
    }

    pub fn is_identity_on(&self, g: &FiniteAbelianGroup) -> bool {
        g.generators().iter().all(|e| self.apply(g, e) == *e)
    }

    /// `x -> -x` on every coordinate.
    pub fn is_inversion_on(&self, g: &FiniteAbelianGroup) -> bool {
        g.generators().iter().all(|e| self.apply(g, e) == g.neg(e))
    }

    pub fn is_well_defined(&self, source: &FiniteAbelianGroup, target: &FiniteAbelianGroup) -> bool {
        self.rows.len() == source.rank()
            && self
                .rows
                .iter()
                .zip(source.invariant_factors())
                .all(|(row, &l)| target.scale(l as i64, row) == target.zero())
    }
}

/// Named automorphisms of a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianAction {
    pub group: FiniteAbelianGroup,
    pub actors: Vec<(String, GroupMap)>,
}

impl AbelianAction {
    pub fn new(group: FiniteAbelianGroup, actors: Vec<(String, GroupMap)>) -> Self {
        AbelianAction { group, actors }
    }

    pub fn all_invertible(&self) -> bool {
        self.actors
            .iter()
            .all(|(_, m)| m.is_well_defined(&self.group, &self.group) && m.is_bijective_on(&self.group))
    }

    /// True when the named maps are closed under composition.
    pub fn is_closed(&self) -> bool {
        let maps: Vec<&GroupMap> = self.actors.iter().map(|(_, m)| m).collect();
        maps.iter().all(|a| {
            maps.iter().all(|b| {
                let c = a.then(b, &self.group);
                maps.iter().any(|m| {
                    self.group
                        .generators()
                        .iter()
                        .all(|e| m.apply(&self.group, e) == c.apply(&self.group, e))
                })
            })
        })
    }

    pub fn orbit(&self, x: &[u64]) -> BTreeSet<Element> {
        let mut seen: BTreeSet<Element> = BTreeSet::new();
        seen.insert(x.to_vec());
        let mut frontier = vec![x.to_vec()];
        while let Some(y) = frontier.pop() {
            for (_, m) in &self.actors {
                let z = m.apply(&self.group, &y);
                if seen.insert(z.clone()) {
                    frontier.push(z);
                }
            }
        }
        seen
    }

    /// Partition of the group into orbits, ordered by smallest element.
    pub fn orbits(&self) -> Vec<BTreeSet<Element>> {
        let mut seen: BTreeSet<Element> = BTreeSet::new();
        let mut out = Vec::new();
        for x in self.group.elements() {
            if seen.contains(&x) {
                continue;
            }
            let orbit = self.orbit(&x);
            seen.extend(orbit.iter().cloned());
            out.push(orbit);
        }
        out
    }
}

/// Full-rank sublattice quotient `L / M` with a projection from `L`.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    group: FiniteAbelianGroup,
    sup: CoordinateSystem,
    /// `class_i = (x * to_class)_i mod l_i` for integer coordinates `x` in
    /// `sup_basis`.
    to_class: IntegerMatrix,
    lifts: Vec<RationalVector>,
}

/// Integer coordinates of `v` in the lattice with basis `basis`.
pub fn integer_coordinates(
    basis: &[RationalVector],
    v: &RationalVector,
) -> Result<Vec<BigInt>, LatticeError> {
    let system = CoordinateSystem::new(basis).ok_or(LatticeError::Degenerate)?;
    coordinates_in(&system, v)
}

fn coordinates_in(system: &CoordinateSystem, v: &RationalVector) -> Result<Vec<BigInt>, LatticeError> {
    let coeffs = system.coordinates(v).ok_or_else(|| LatticeError::NotContained(v.to_string()))?;
    coeffs
        .iter()
        .map(|c| rational::to_integer(c).ok_or_else(|| LatticeError::NotContained(v.to_string())))
        .collect()
}

fn coordinate_matrix(basis: &[RationalVector], vectors: &[RationalVector]) -> Result<IntegerMatrix, LatticeError> {
    let system = CoordinateSystem::new(basis).ok_or(LatticeError::Degenerate)?;
    let rows = vectors
        .iter()
        .map(|v| coordinates_in(&system, v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntegerMatrix::from_big_rows(rows))
}

/// A basis of the lattice generated by `generators`, all of which must lie
/// in the lattice spanned by `frame`.
pub fn lattice_basis(
    frame: &[RationalVector],
    generators: &[RationalVector],
) -> Result<Vec<RationalVector>, LatticeError> {
    let dim = frame.first().map_or(0, RationalVector::dim);
    let m = coordinate_matrix(frame, generators)?;
    let snf = smith_normal_form(&m);
    // Row space of M equals the row space of S * V^-1.
    let sv = snf.s.mul(&snf.v_inv);
    let mut out = Vec::new();
    for i in 0..sv.rows() {
        if sv.row(i).iter().all(Zero::is_zero) {
            continue;
        }
        let coeffs: Vec<rational::Rational> = sv
            .row(i)
            .iter()
            .map(|c| rational::Rational::from_integer(c.clone()))
            .collect();
        out.push(RationalVector::combination(&coeffs, frame, dim));
    }
    Ok(out)
}

pub fn lattice_quotient(
    sup_basis: &[RationalVector],
    sub_basis: &[RationalVector],
) -> Result<LatticeQuotient, LatticeError> {
    if sup_basis.len() != sub_basis.len() {
        return Err(LatticeError::RankMismatch {
            sup: sup_basis.len(),
            sub: sub_basis.len(),
        });
    }
    let sup = CoordinateSystem::new(sup_basis).ok_or(LatticeError::Degenerate)?;
    let m = IntegerMatrix::from_big_rows(
        sub_basis
            .iter()
            .map(|v| coordinates_in(&sup, v))
            .collect::<Result<Vec<_>, _>>()?,
    );
    if m.determinant().is_zero() {
        return Err(LatticeError::Degenerate);
    }
    let snf = smith_normal_form(&m);
    let diag = snf.diagonal();
    let dim = sup_basis.first().map_or(0, RationalVector::dim);
    let kept: Vec<usize> = (0..diag.len()).filter(|&i| !diag[i].is_one()).collect();
    let mut factors = Vec::with_capacity(kept.len());
    for &i in &kept {
        factors.push(diag[i].to_u64().ok_or_else(|| LatticeError::Overflow(diag[i].to_string()))?);
    }
    let group = FiniteAbelianGroup::from_invariant_factors(factors).expect("Smith diagonal is a divisor chain");

    let n = sup_basis.len();
    let mut to_class = IntegerMatrix::zeros(n, kept.len());
    for (c, &i) in kept.iter().enumerate() {
        for r in 0..n {
            to_class[(r, c)] = snf.v[(r, i)].clone();
        }
    }
    // Row i of V^-1 is the i-th new basis vector in old coordinates.
    let lifts = kept
        .iter()
        .map(|&i| {
            let coeffs: Vec<rational::Rational> = snf
                .v_inv
                .row(i)
                .iter()
                .map(|c| rational::Rational::from_integer(c.clone()))
                .collect();
            RationalVector::combination(&coeffs, sup_basis, dim)
        })
        .collect();
    Ok(LatticeQuotient {
        group,
        sup,
        to_class,
        lifts,
    })
}

impl LatticeQuotient {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn sup_basis(&self) -> &[RationalVector] {
        self.sup.basis()
    }

    /// Ambient representatives of the generators.
    pub fn lifts(&self) -> &[RationalVector] {
        &self.lifts
    }

    pub fn project(&self, v: &RationalVector) -> Result<Element, LatticeError> {
        let x = coordinates_in(&self.sup, v)?;
        let coords: Vec<BigInt> = (0..self.to_class.cols())
            .map(|c| {
                x.iter()
                    .enumerate()
                    .fold(BigInt::zero(), |acc, (r, xr)| acc + xr * &self.to_class[(r, c)])
            })
            .collect();
        Ok(self.group.reduce(&coords))
    }

    pub fn lift(&self, x: &[u64]) -> RationalVector {
        let dim = self.sup.basis().first().map_or(0, RationalVector::dim);
        let coeffs: Vec<i64> = x.iter().map(|&c| c as i64).collect();
        RationalVector::int_combination(&coeffs, &self.lifts, dim)
    }

    /// Re-coordinatizes the quotient so that its generators are classes of
    /// vectors from `candidates`. Later candidates are tried first; within a
    /// run of equal invariant factors the generators keep candidate order.
    /// Returns `self` unchanged when no such basis exists.
    pub fn rebased(&self, candidates: &[RationalVector]) -> LatticeQuotient {
        let classes: Vec<(Element, &RationalVector)> = candidates
            .iter()
            .filter_map(|v| self.project(v).ok().map(|c| (c, v)))
            .collect();
        let factors = self.group.invariant_factors();
        let k = factors.len();
        if k == 0 {
            return self.clone();
        }
        let Some(choice) = find_basis(&self.group, &classes, k) else {
            return self.clone();
        };
        // Expand every combination of the new generators to old coordinates.
        let new_gens: Vec<&Element> = choice.iter().map(|&i| &classes[i].0).collect();
        let mut table: HashMap<Element, Element> = HashMap::new();
        for coeffs in self.group.elements() {
            let mut x = self.group.zero();
            for (&c, g) in coeffs.iter().zip(&new_gens) {
                x = self.group.add(&x, &self.group.scale(c as i64, g));
            }
            table.insert(x, coeffs);
        }
        // T maps old coordinates to new ones.
        let t_rows: Vec<Vec<BigInt>> = self
            .group
            .generators()
            .iter()
            .map(|e| table[e].iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        let t = IntegerMatrix::from_big_rows(t_rows);
        let to_class = self.to_class.mul(&t);
        LatticeQuotient {
            group: self.group.clone(),
            sup: self.sup.clone(),
            to_class,
            lifts: choice.iter().map(|&i| classes[i].1.clone()).collect(),
        }
    }
}

/// Picks candidate indices forming an invariant-factor basis: element `j`
/// has order `l_j` and together they generate the whole group.
fn find_basis(
    group: &FiniteAbelianGroup,
    classes: &[(Element, &RationalVector)],
    k: usize,
) -> Option<Vec<usize>> {
    let factors = group.invariant_factors();
    let mut chosen = Vec::with_capacity(k);
    fn go(
        group: &FiniteAbelianGroup,
        classes: &[(Element, &RationalVector)],
        factors: &[u64],
        chosen: &mut Vec<usize>,
    ) -> bool {
        let j = chosen.len();
        if j == factors.len() {
            let gens: Vec<Element> = chosen.iter().map(|&i| classes[i].0.clone()).collect();
            return Subgroup::generated_by(group, &gens).order() == group.order();
        }
        for i in (0..classes.len()).rev() {
            if chosen.contains(&i) || group.element_order(&classes[i].0) != factors[j] {
                continue;
            }
            chosen.push(i);
            if go(group, classes, factors, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if !go(group, classes, factors, &mut chosen) {
        return None;
    }
    let mut start = 0;
    while start < k {
        let end = start + factors[start..].iter().take_while(|&&l| l == factors[start]).count();
        chosen[start..end].sort_unstable();
        start = end;
    }
    Some(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn diag(m: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&IntegerMatrix::from_rows(m))
            .diagonal()
            .iter()
            .map(|d| d.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn snf_identity() {
        assert_eq!(diag(&[vec![1, 0], vec![0, 1]]), vec![1, 1]);
    }

    #[test]
    fn snf_a2_cartan() {
        assert_eq!(diag(&[vec![2, -1], vec![-1, 2]]), vec![1, 3]);
    }

    #[test]
    fn snf_d4_cartan() {
        let d4 = [
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ];
        assert_eq!(diag(&d4), vec![1, 1, 2, 2]);
    }

    #[test]
    fn snf_rectangular_and_zero() {
        assert_eq!(diag(&[vec![2, 4, 4], vec![-6, 6, 12]]), vec![2, 6]);
        assert_eq!(diag(&[vec![0, 0], vec![0, 0]]), vec![0, 0]);
    }

    #[test]
    fn group_normalization() {
        let g = FiniteAbelianGroup::from_cyclic_orders(&[2, 3]);
        assert_eq!(g.invariant_factors(), &[6]);
        let g = FiniteAbelianGroup::from_cyclic_orders(&[4, 2, 1]);
        assert_eq!(g.invariant_factors(), &[2, 4]);
        assert!(FiniteAbelianGroup::from_cyclic_orders(&[1]).is_trivial());
        assert_eq!(g.to_string(), "Z/2Z × Z/4Z");
        assert_eq!(FiniteAbelianGroup::from_cyclic_orders(&[2, 2]).to_string(), "(Z/2Z)^2");
        assert_eq!(FiniteAbelianGroup::trivial().to_string(), "{0}");
        assert!(FiniteAbelianGroup::from_invariant_factors(vec![4, 2]).is_none());
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(enumerate_subgroups(&FiniteAbelianGroup::cyclic(4)).len(), 3);
        assert_eq!(enumerate_subgroups(&FiniteAbelianGroup::from_cyclic_orders(&[2, 2])).len(), 5);
        assert_eq!(enumerate_subgroups(&FiniteAbelianGroup::trivial()).len(), 1);
        let orders: Vec<u64> = enumerate_subgroups(&FiniteAbelianGroup::cyclic(4))
            .iter()
            .map(Subgroup::order)
            .collect();
        assert_eq!(orders, vec![1, 2, 4]);
    }

    #[test]
    fn torsion_powers() {
        let g = torsion_power(&FiniteAbelianGroup::cyclic(3), 8);
        assert_eq!(g.invariant_factors(), &[3; 8]);
        assert!(torsion_power(&FiniteAbelianGroup::trivial(), 8).is_trivial());
        let g = torsion_power(&FiniteAbelianGroup::from_cyclic_orders(&[2, 2]), 8);
        assert_eq!(g.invariant_factors(), &[2; 16]);
    }

    #[test]
    fn equal_lattices_give_trivial_quotient() {
        let basis = vec![
            RationalVector::from_ints(&[1, 0]),
            RationalVector::from_ints(&[0, 1]),
        ];
        let other = vec![
            RationalVector::from_ints(&[1, 1]),
            RationalVector::from_ints(&[0, 1]),
        ];
        let q = lattice_quotient(&basis, &other).unwrap();
        assert!(q.group().is_trivial());
    }

    #[test]
    fn quotient_errors() {
        let basis = vec![RationalVector::from_ints(&[1, 0]), RationalVector::from_ints(&[0, 1])];
        assert!(matches!(
            lattice_quotient(&basis, &basis[..1]),
            Err(LatticeError::RankMismatch { .. })
        ));
        let outside = vec![
            RationalVector::new(vec![frac(1, 2), frac(0, 1)]),
            RationalVector::from_ints(&[0, 1]),
        ];
        assert!(matches!(
            lattice_quotient(&basis, &outside),
            Err(LatticeError::NotContained(_))
        ));
        let singular = vec![RationalVector::from_ints(&[1, 0]), RationalVector::from_ints(&[2, 0])];
        assert!(lattice_quotient(&basis, &singular).is_err());
    }

    #[test]
    fn projection_of_sub_lattice_is_zero() {
        let sup = vec![RationalVector::from_ints(&[1, 0]), RationalVector::from_ints(&[0, 1])];
        let sub = vec![RationalVector::from_ints(&[2, 0]), RationalVector::from_ints(&[1, 3])];
        let q = lattice_quotient(&sup, &sub).unwrap();
        assert_eq!(q.group().invariant_factors(), &[6]);
        for v in &sub {
            assert_eq!(q.project(v).unwrap(), vec![0]);
        }
        let e = q.project(&RationalVector::from_ints(&[1, 0])).unwrap();
        assert_eq!(q.group().element_order(&e), 2);
        let e = q.project(&RationalVector::from_ints(&[0, 1])).unwrap();
        assert_eq!(q.group().element_order(&e), 6);
        for x in q.group().elements() {
            assert_eq!(q.project(&q.lift(&x)).unwrap(), x);
        }
    }

    #[test]
    fn lattice_basis_from_redundant_generators() {
        let frame = vec![RationalVector::from_ints(&[1, 0]), RationalVector::from_ints(&[0, 1])];
        let gens = vec![
            RationalVector::from_ints(&[2, 0]),
            RationalVector::from_ints(&[0, 2]),
            RationalVector::from_ints(&[1, 1]),
        ];
        let basis = lattice_basis(&frame, &gens).unwrap();
        assert_eq!(basis.len(), 2);
        let q = lattice_quotient(&frame, &basis).unwrap();
        assert_eq!(q.group().invariant_factors(), &[2]);
    }

    #[test]
    fn isomorphism_type_of_subgroups() {
        let g = FiniteAbelianGroup::from_cyclic_orders(&[2, 4]);
        let h = Subgroup::generated_by(&g, &[vec![0, 2], vec![1, 0]]);
        assert_eq!(h.isomorphism_type().invariant_factors(), &[2, 2]);
        let h = Subgroup::generated_by(&g, &[vec![1, 1]]);
        assert_eq!(h.isomorphism_type().invariant_factors(), &[4]);
    }
}
