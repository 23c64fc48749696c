//! Weyl group actions: orbits on roots and root-hyperplane pairs, the
//! Coxeter element and the invariant degrees read off from it, the longest
//! element, and the group order by an orbit-stabilizer chain.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use num_integer::Integer;
use thiserror::Error;

use crate::rootdata::RootDatum;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("fewer than two root hyperplanes: the singular locus is empty")]
    EmptyPairSet,
    #[error("characteristic polynomial does not split into cyclotomic factors")]
    NotCyclotomic,
}

/// An element of `W` as an integer matrix acting on simple-root
/// coordinates (column vectors), with an optional word in the simple
/// reflections (`[i, j]` means `s_i s_j`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    matrix: Vec<Vec<i64>>,
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            matrix: (0..rank)
                .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
                .collect(),
            word: Vec::new(),
        }
    }

    pub fn simple_reflection(cartan: &[Vec<i64>], i: usize) -> Self {
        let mut m = Self::identity(cartan.len());
        for (j, &c) in cartan[i].iter().enumerate() {
            m.matrix[i][j] -= c;
        }
        m.word = vec![i];
        m
    }

    pub fn from_word(cartan: &[Vec<i64>], word: &[usize]) -> Self {
        word.iter().fold(Self::identity(cartan.len()), |acc, &i| {
            acc.compose(&Self::simple_reflection(cartan, i))
        })
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    /// `self * other`: apply `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.rank();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum())
                    .collect()
            })
            .collect();
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement { matrix, word }
    }

    pub fn apply(&self, beta: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(beta).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
    }

    pub fn is_minus_identity(&self) -> bool {
        self.matrix
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == -i64::from(i == j)))
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        let mut power = self.clone();
        let mut k = 1;
        while !power.is_identity() {
            power = power.compose(self);
            k += 1;
        }
        k
    }

    /// Whether the element permutes the root set.
    pub fn permutes_roots(&self, rd: &RootDatum) -> bool {
        rd.root_coords()
            .iter()
            .all(|b| rd.root_index(&self.apply(b)).is_some())
    }

    /// Whether the element preserves the inner product, checked on the Gram
    /// matrix of the simple roots.
    pub fn is_orthogonal(&self, rd: &RootDatum) -> bool {
        let simple = rd.simple_roots();
        let r = rd.rank();
        let images: Vec<_> = (0..r)
            .map(|j| {
                let col: Vec<i64> = (0..r).map(|i| self.matrix[i][j]).collect();
                crate::rational::RationalVector::int_combination(&col, simple, rd.ambient_dim())
            })
            .collect();
        (0..r).all(|i| (0..r).all(|j| images[i].dot(&images[j]) == simple[i].dot(&simple[j])))
    }

    /// Images of the simple roots as root indices.
    pub fn simple_root_images(&self, rd: &RootDatum) -> Vec<usize> {
        (0..rd.rank())
            .map(|i| {
                let e: Vec<i64> = (0..rd.rank()).map(|j| i64::from(i == j)).collect();
                rd.root_index(&self.apply(&e)).expect("Weyl elements permute roots")
            })
            .collect()
    }
}

/// A partition of a finite set into orbits, in order of first appearance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition<T> {
    pub items: Vec<T>,
    pub orbits: Vec<Vec<T>>,
}

impl<T: Clone> OrbitDecomposition<T> {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    pub fn representatives(&self) -> Vec<T> {
        self.orbits.iter().map(|o| o[0].clone()).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }
}

/// Orbits of `items` under the group generated by `generators` maps.
pub fn orbit_partition<T, F>(items: Vec<T>, generators: usize, act: F) -> OrbitDecomposition<T>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, usize) -> T,
{
    let index: HashMap<T, usize> = items.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let mut seen = vec![false; items.len()];
    let mut orbits = Vec::new();
    for start in 0..items.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![items[start].clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for g in 0..generators {
                let image = act(&items[i], g);
                let j = *index.get(&image).expect("action preserves the item set");
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(image);
                    queue.push_back(j);
                }
            }
        }
        orbits.push(orbit);
    }
    OrbitDecomposition { items, orbits }
}

fn reflection_tables(rd: &RootDatum) -> Vec<Vec<usize>> {
    (0..rd.rank()).map(|i| rd.simple_reflection_permutation(i)).collect()
}

/// `W`-orbits on the root set, as root indices.
pub fn orbits_on_roots(rd: &RootDatum) -> OrbitDecomposition<usize> {
    let tables = reflection_tables(rd);
    orbit_partition((0..rd.num_roots()).collect(), rd.rank(), |&k, g| tables[g][k])
}

/// Orbits on unordered pairs of distinct root hyperplanes, together with the
/// orbit count of the diagonal action on ordered pairs in `Phi x Phi`.
#[derive(Clone, Debug)]
pub struct HyperplanePairOrbits {
    /// Pairs of hyperplane indices `(i, j)`, `i < j`, into
    /// [`RootDatum::root_hyperplanes`].
    pub distinct_pairs: OrbitDecomposition<(usize, usize)>,
    pub root_pair_orbits: usize,
}

impl HyperplanePairOrbits {
    pub fn count(&self) -> usize {
        self.distinct_pairs.count()
    }
}

pub fn orbits_on_hyperplane_pairs(rd: &RootDatum) -> Result<HyperplanePairOrbits, WeylError> {
    let hyperplanes = rd.root_hyperplanes();
    if hyperplanes.len() < 2 {
        return Err(WeylError::EmptyPairSet);
    }
    let tables = reflection_tables(rd);
    let mut hyperplane_of = vec![0usize; rd.num_roots()];
    for (h, hp) in hyperplanes.iter().enumerate() {
        hyperplane_of[hp.positive] = h;
        hyperplane_of[hp.negative] = h;
    }
    let hyper_tables: Vec<Vec<usize>> = tables
        .iter()
        .map(|t| hyperplanes.iter().map(|hp| hyperplane_of[t[hp.positive]]).collect())
        .collect();

    let n = hyperplanes.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let distinct_pairs = orbit_partition(pairs, rd.rank(), |&(i, j), g| {
        let (a, b) = (hyper_tables[g][i], hyper_tables[g][j]);
        (a.min(b), a.max(b))
    });

    let m = rd.num_roots();
    let ordered: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
    let root_pair_orbits = orbit_partition(ordered, rd.rank(), |&(i, j), g| (tables[g][i], tables[g][j])).count();

    Ok(HyperplanePairOrbits {
        distinct_pairs,
        root_pair_orbits,
    })
}

/// `s_1 s_2 ... s_r`.
pub fn coxeter_element(rd: &RootDatum) -> WeylElement {
    let word: Vec<usize> = (0..rd.rank()).collect();
    WeylElement::from_word(rd.cartan(), &word)
}

/// Longest element by greedy descent: keep multiplying on the right by a
/// simple reflection `s_i` while `w(a_i)` is still positive.
pub fn longest_element(rd: &RootDatum) -> WeylElement {
    let cartan = rd.cartan();
    let r = rd.rank();
    let mut w = WeylElement::identity(r);
    loop {
        let next = (0..r).find(|&i| {
            let e: Vec<i64> = (0..r).map(|j| i64::from(i == j)).collect();
            w.apply(&e).iter().all(|&c| c >= 0)
        });
        match next {
            Some(i) => w = w.compose(&WeylElement::simple_reflection(cartan, i)),
            None => return w,
        }
    }
}

/// Characteristic polynomial `det(xI - A)`, coefficients from the constant
/// term upwards, by Faddeev-LeVerrier.
pub fn characteristic_polynomial(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    let a: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut m = vec![vec![0i128; n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).map(|l| a[i][l] * m[l][j]).sum::<i128>();
            }
            next[i][i] += coeffs[n - k + 1];
        }
        m = next;
        let trace: i128 = (0..n).map(|i| (0..n).map(|l| a[i][l] * m[l][i]).sum::<i128>()).sum();
        coeffs[n - k] = -trace / k as i128;
    }
    coeffs.into_iter().map(|c| c as i64).collect()
}

/// Exact division by a monic polynomial; `None` when the remainder is not
/// zero.
fn divide_exact(p: &[i64], d: &[i64]) -> Option<Vec<i64>> {
    let mut rem = p.to_vec();
    let dd = d.len() - 1;
    if rem.len() <= dd {
        return None;
    }
    let mut q = vec![0i64; rem.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (j, &dj) in d.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    rem.iter().all(|&c| c == 0).then_some(q)
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: usize) -> Vec<i64> {
    // x^n - 1 divided by every Phi_d, d | n, d < n.
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = divide_exact(&p, &cyclotomic(d)).expect("Phi_d divides x^n - 1");
        }
    }
    p
}

/// Multiplicities `(k, e_k)` of `Phi_k` in a product of cyclotomic
/// polynomials.
pub fn cyclotomic_factorization(p: &[i64]) -> Result<Vec<(usize, usize)>, WeylError> {
    let mut rest = p.to_vec();
    let mut out = Vec::new();
    let degree = p.len() - 1;
    // Phi_k has degree phi(k) >= sqrt(k / 2); beyond 2 * degree^2 nothing fits.
    for k in 1..=(2 * degree * degree).max(2) {
        let phi = cyclotomic(k);
        if phi.len() - 1 > degree {
            continue;
        }
        let mut mult = 0;
        while rest.len() > 1 {
            match divide_exact(&rest, &phi) {
                Some(q) => {
                    rest = q;
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            out.push((k, mult));
        }
    }
    if rest != [1] {
        return Err(WeylError::NotCyclotomic);
    }
    Ok(out)
}

/// Exponents `m_i` such that the Coxeter element has eigenvalues
/// `exp(2 pi i m_i / h)`, sorted.
pub fn exponents(rd: &RootDatum) -> Result<Vec<usize>, WeylError> {
    let c = coxeter_element(rd);
    let factors = cyclotomic_factorization(&characteristic_polynomial(c.matrix()))?;
    let h = factors.iter().fold(1usize, |acc, &(k, _)| acc.lcm(&k));
    let mut out = Vec::new();
    for &(k, mult) in &factors {
        for j in 0..k {
            if j.gcd(&k) == 1 {
                for _ in 0..mult {
                    out.push(j * h / k);
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Degrees `d_i = m_i + 1` of the basic invariants, ascending.
pub fn invariant_degrees(rd: &RootDatum) -> Result<Vec<usize>, WeylError> {
    Ok(exponents(rd)?.into_iter().map(|m| m + 1).collect())
}

/// `h`, the order of the Coxeter element.
pub fn coxeter_number(rd: &RootDatum) -> usize {
    coxeter_element(rd).order()
}

/// `|W|` from a chain of orbit-stabilizer steps: the stabilizer of the
/// last fundamental weight is the parabolic subgroup on the remaining
/// nodes, so `|W| = |W w_k| * |W_{I - k}|`, recursively.
pub fn weyl_group_order(cartan: &[Vec<i64>]) -> u128 {
    let r = cartan.len();
    if r == 0 {
        return 1;
    }
    let k = r - 1;
    // In fundamental-weight coordinates s_j(l) = l - l_j * a_j, with a_j the
    // j-th column of the Cartan matrix.
    let start: Vec<i64> = (0..r).map(|i| i64::from(i == k)).collect();
    let mut seen = std::collections::HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(l) = queue.pop_front() {
        for j in 0..r {
            if l[j] == 0 {
                continue;
            }
            let image: Vec<i64> = (0..r).map(|i| l[i] - l[j] * cartan[i][j]).collect();
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    let sub: Vec<Vec<i64>> = cartan[..k].iter().map(|row| row[..k].to_vec()).collect();
    seen.len() as u128 * weyl_group_order(&sub)
}

/// Orbit of a vector in simple-root coordinates; handy for ad-hoc checks.
pub fn root_coordinate_orbit(cartan: &[Vec<i64>], start: &[i64]) -> Vec<Vec<i64>> {
    crate::rootdata::reflection_closure(cartan, &[start.to_vec()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::DynkinType;
    use std::collections::HashSet;

    fn rd(s: &str) -> RootDatum {
        RootDatum::build(s.parse().unwrap())
    }

    /// Enumerates every element of `W` as a matrix; only for small ranks.
    fn brute_force_group(cartan: &[Vec<i64>]) -> HashSet<Vec<Vec<i64>>> {
        let r = cartan.len();
        let gens: Vec<WeylElement> = (0..r).map(|i| WeylElement::simple_reflection(cartan, i)).collect();
        let id = WeylElement::identity(r);
        let mut seen = HashSet::from([id.matrix.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for g in &gens {
                let x = w.compose(g);
                if seen.insert(x.matrix.clone()) {
                    queue.push_back(WeylElement { matrix: x.matrix, word: Vec::new() });
                }
            }
        }
        seen
    }

    #[test]
    fn root_orbits() {
        assert_eq!(orbits_on_roots(&rd("A2")).count(), 1);
        assert_eq!(orbits_on_roots(&rd("B2")).count(), 2);
        assert_eq!(orbits_on_roots(&rd("E6")).count(), 1);
        let b2 = orbits_on_roots(&rd("B2"));
        assert_eq!(b2.sizes(), vec![4, 4]);
    }

    /// Brute force: all pairs of distinct hyperplanes pushed through every
    /// element of the (enumerated) Weyl group.
    fn brute_force_pair_orbits(rd: &RootDatum) -> usize {
        let hs = rd.root_hyperplanes();
        let group = brute_force_group(rd.cartan());
        let hyper_of = |coords: &[i64]| -> usize {
            let i = rd.root_index(coords).unwrap();
            hs.iter().position(|h| h.positive == i || h.negative == i).unwrap()
        };
        let mut classes: Vec<std::collections::BTreeSet<(usize, usize)>> = Vec::new();
        for a in 0..hs.len() {
            for b in a + 1..hs.len() {
                if classes.iter().any(|c| c.contains(&(a, b))) {
                    continue;
                }
                let mut orbit = std::collections::BTreeSet::new();
                for m in &group {
                    let w = WeylElement { matrix: m.clone(), word: Vec::new() };
                    let x = hyper_of(&w.apply(&rd.root_coords()[hs[a].positive]));
                    let y = hyper_of(&w.apply(&rd.root_coords()[hs[b].positive]));
                    orbit.insert((x.min(y), x.max(y)));
                }
                classes.push(orbit);
            }
        }
        classes.len()
    }

    #[test]
    fn hyperplane_pair_orbits() {
        assert_eq!(orbits_on_hyperplane_pairs(&rd("A2")).unwrap().count(), 1);
        assert_eq!(
            orbits_on_hyperplane_pairs(&rd("A1")).unwrap_err(),
            WeylError::EmptyPairSet
        );
        // Golden value from the brute-force oracle over the 8 elements of W(B2):
        // {short, short}, {long, long} and {short, long}.
        let b2 = rd("B2");
        assert_eq!(brute_force_pair_orbits(&b2), 3);
        assert_eq!(orbits_on_hyperplane_pairs(&b2).unwrap().count(), 3);
        for ty in ["A3", "B3", "C3", "G2", "D4"] {
            let d = rd(ty);
            assert_eq!(
                orbits_on_hyperplane_pairs(&d).unwrap().count(),
                brute_force_pair_orbits(&d),
                "{ty}"
            );
        }
    }

    #[test]
    fn coxeter_orders() {
        assert_eq!(coxeter_number(&rd("A1")), 2);
        assert_eq!(coxeter_number(&rd("G2")), 6);
        assert_eq!(coxeter_number(&rd("E6")), 12);
    }

    #[test]
    fn degrees() {
        assert_eq!(invariant_degrees(&rd("A1")).unwrap(), vec![2]);
        assert_eq!(invariant_degrees(&rd("G2")).unwrap(), vec![2, 6]);
        assert_eq!(
            invariant_degrees(&rd("E8")).unwrap(),
            vec![2, 8, 12, 14, 18, 20, 24, 30]
        );
        assert_eq!(invariant_degrees(&rd("E6")).unwrap(), vec![2, 5, 6, 8, 9, 12]);
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic(30).len(), 9);
    }

    #[test]
    fn characteristic_polynomial_of_rotation() {
        // x^2 + 1
        assert_eq!(characteristic_polynomial(&[vec![0, -1], vec![1, 0]]), vec![1, 0, 1]);
    }

    #[test]
    fn longest_elements() {
        let a1 = rd("A1");
        let w0 = longest_element(&a1);
        assert_eq!(w0.matrix(), WeylElement::simple_reflection(a1.cartan(), 0).matrix());

        let a2 = rd("A2");
        let w0 = longest_element(&a2);
        assert_eq!(w0.order(), 2);
        let group = brute_force_group(a2.cartan());
        assert_eq!(group.len(), 6);
        // Exhaustive search: the unique element sending both simple roots negative.
        let negatives: Vec<_> = group
            .iter()
            .filter(|m| {
                let w = WeylElement { matrix: (*m).clone(), word: Vec::new() };
                (0..2).all(|i| {
                    let e: Vec<i64> = (0..2).map(|j| i64::from(i == j)).collect();
                    w.apply(&e).iter().all(|&c| c <= 0)
                })
            })
            .collect();
        assert_eq!(negatives.len(), 1);
        assert_eq!(negatives[0], &w0.matrix().to_vec());
        // -w0 swaps the two simple roots.
        assert_eq!(w0.apply(&[1, 0]), vec![0, -1]);

        assert!(longest_element(&rd("D4")).is_minus_identity());
        assert!(!longest_element(&rd("D5")).is_minus_identity());
    }

    #[test]
    fn longest_element_properties() {
        for ty in DynkinType::all_up_to(8) {
            let d = RootDatum::build(ty);
            let w0 = longest_element(&d);
            assert!(w0.compose(&w0).is_identity(), "{ty}");
            assert_eq!(w0.word().len(), d.num_roots() / 2, "{ty}");
            let images = w0.simple_root_images(&d);
            let mut negated: Vec<usize> = (0..d.rank())
                .map(|i| {
                    let e: Vec<i64> = (0..d.rank()).map(|j| -i64::from(i == j)).collect();
                    d.root_index(&e).unwrap()
                })
                .collect();
            let mut sorted = images.clone();
            sorted.sort_unstable();
            negated.sort_unstable();
            assert_eq!(sorted, negated, "{ty}");
            assert!(w0.is_orthogonal(&d) && w0.permutes_roots(&d));
        }
    }

    #[test]
    fn weyl_order_matches_enumeration() {
        for ty in ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4", "F4", "B4", "A4"] {
            let d = rd(ty);
            assert_eq!(
                weyl_group_order(d.cartan()),
                brute_force_group(d.cartan()).len() as u128,
                "{ty}"
            );
        }
        assert_eq!(weyl_group_order(rd("E8").cartan()), 696_729_600);
    }

    #[test]
    fn reflections_permute_roots() {
        for ty in DynkinType::all_up_to(8) {
            let d = RootDatum::build(ty);
            for i in 0..d.rank() {
                let s = WeylElement::simple_reflection(d.cartan(), i);
                assert!(s.permutes_roots(&d));
                let perm = d.simple_reflection_permutation(i);
                let mut sorted = perm.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, (0..d.num_roots()).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn coordinate_orbit_of_simple_root_is_root_orbit() {
        let d = rd("B2");
        let orbit = root_coordinate_orbit(d.cartan(), &[1, 0]);
        assert_eq!(orbit.len(), 4);
    }
}
