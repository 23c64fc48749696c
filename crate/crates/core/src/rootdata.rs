//! Exact root data for the simple Dynkin types.
//!
//! Every type is realized in an explicit ambient space with the standard
//! inner product, using Bourbaki's numbering of the simple roots. The
//! `E6` realization lives in the subspace `x8 = -x6, x7 = x6` of `Q^8` and
//! `D_n` uses `a_n = e_{n-1} + e_n`, so the fundamental weights come out as
//! `w_n = (e_1 + ... + e_n) / 2` and `w_1 = 2/3 (e_8 - e_7 - e_6)` for `E6`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, frac, rat, Rational, RationalVector};

/// Default rank bound for the infinite families.
pub const DEFAULT_MAX_RANK: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootDataError {
    #[error("invalid Dynkin type {family}{rank}")]
    InvalidType { family: char, rank: usize },
    #[error("cannot parse Dynkin type `{0}`")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self, Family::A | Family::D | Family::E)
    }
}

/// An admissible Dynkin type: `A_n (n>=1)`, `B_n (n>=2)`, `C_n (n>=3)`,
/// `D_n (n>=4)`, `E_6`, `E_7`, `E_8`, `F_4`, `G_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DynkinType {
    family: Family,
    rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootDataError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(DynkinType { family, rank })
        } else {
            Err(RootDataError::InvalidType {
                family: family.letter(),
                rank,
            })
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// All admissible types of rank at most `max_rank`, in table order
    /// (A, B, C, D by rank, then E6, E7, E8, F4, G2).
    pub fn all_up_to(max_rank: usize) -> Vec<DynkinType> {
        let mut out = Vec::new();
        for (family, start) in [(Family::A, 1), (Family::B, 2), (Family::C, 3), (Family::D, 4)] {
            for rank in start..=max_rank {
                out.push(DynkinType { family, rank });
            }
        }
        for (family, rank) in [(Family::E, 6), (Family::E, 7), (Family::E, 8), (Family::F, 4), (Family::G, 2)] {
            if rank <= max_rank {
                out.push(DynkinType { family, rank });
            }
        }
        out
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = RootDataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| RootDataError::Parse(s.to_string()))?;
        let rest = chars.as_str().trim_start_matches('_');
        let rank: usize = rest
            .parse()
            .map_err(|_| RootDataError::Parse(s.to_string()))?;
        DynkinType::new(family, rank)
    }
}

/// An unordered root pair `{a, -a}`, stored as indices into
/// [`RootDatum::roots`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    pub positive: usize,
    pub negative: usize,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    dynkin: DynkinType,
    ambient_dim: usize,
    simple_roots: Vec<RationalVector>,
    simple_coroots: Vec<RationalVector>,
    cartan: Vec<Vec<i64>>,
    roots: Vec<RationalVector>,
    root_coords: Vec<Vec<i64>>,
    coroots: Vec<RationalVector>,
    fundamental_weights: Vec<RationalVector>,
    fundamental_coweights: Vec<RationalVector>,
    index: HashMap<Vec<i64>, usize>,
}

pub fn coroot(alpha: &RationalVector) -> RationalVector {
    alpha.scale(&(rat(2) / alpha.norm_sq()))
}

/// `s_a(v) = v - (v, a^v) a`.
pub fn reflect(v: &RationalVector, alpha: &RationalVector) -> RationalVector {
    let k = rat(2) * v.dot(alpha) / alpha.norm_sq();
    v - &alpha.scale(&k)
}

fn simple_roots_of(t: DynkinType) -> (usize, Vec<RationalVector>) {
    let n = t.rank;
    let eps_diff = |dim: usize, i: usize, j: usize, sj: i64| {
        let mut v = vec![0i64; dim];
        v[i] = 1;
        v[j] += sj;
        RationalVector::from_ints(&v)
    };
    match t.family {
        Family::A => {
            let dim = n + 1;
            (dim, (0..n).map(|i| eps_diff(dim, i, i + 1, -1)).collect())
        }
        Family::B | Family::C | Family::D => {
            let dim = n;
            let mut roots: Vec<_> = (0..n - 1).map(|i| eps_diff(dim, i, i + 1, -1)).collect();
            let last = match t.family {
                Family::B => RationalVector::unit(dim, n - 1),
                Family::C => RationalVector::unit(dim, n - 1).scale_int(2),
                _ => eps_diff(dim, n - 2, n - 1, 1),
            };
            roots.push(last);
            (dim, roots)
        }
        Family::E => {
            let dim = 8;
            let mut roots = vec![
                RationalVector::from_scaled(&[1, -1, -1, -1, -1, -1, -1, 1], 2),
                RationalVector::from_ints(&[1, 1, 0, 0, 0, 0, 0, 0]),
            ];
            for i in 0..n - 2 {
                roots.push(eps_diff(dim, i + 1, i, -1));
            }
            (dim, roots)
        }
        Family::F => (
            4,
            vec![
                RationalVector::from_ints(&[0, 1, -1, 0]),
                RationalVector::from_ints(&[0, 0, 1, -1]),
                RationalVector::from_ints(&[0, 0, 0, 1]),
                RationalVector::from_scaled(&[1, -1, -1, -1], 2),
            ],
        ),
        Family::G => (
            3,
            vec![
                RationalVector::from_ints(&[1, -1, 0]),
                RationalVector::from_ints(&[-2, 1, 1]),
            ],
        ),
    }
}

/// Cartan matrix `C[i][j] = <a_j, a_i^v> = 2 (a_j, a_i) / (a_i, a_i)`.
pub fn cartan_matrix(simple_roots: &[RationalVector]) -> Vec<Vec<i64>> {
    simple_roots
        .iter()
        .map(|ai| {
            simple_roots
                .iter()
                .map(|aj| {
                    let c = rat(2) * aj.dot(ai) / ai.norm_sq();
                    c.to_integer().to_i64().expect("Cartan entries are small integers")
                })
                .collect()
        })
        .collect()
}

/// `s_i(b) = b - <b, a_i^v> a_i` in simple-root coordinates.
pub fn reflect_coords(cartan: &[Vec<i64>], i: usize, beta: &[i64]) -> Vec<i64> {
    let pairing: i64 = cartan[i].iter().zip(beta).map(|(c, b)| c * b).sum();
    let mut out = beta.to_vec();
    out[i] -= pairing;
    out
}

/// Breadth-first closure of `seeds` (simple-root coordinates) under all
/// simple reflections, returned sorted.
pub fn reflection_closure(cartan: &[Vec<i64>], seeds: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut seen: BTreeSet<Vec<i64>> = seeds.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = seeds.iter().cloned().collect();
    while let Some(beta) = queue.pop_front() {
        for i in 0..cartan.len() {
            let image = reflect_coords(cartan, i, &beta);
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    seen.into_iter().collect()
}

impl RootDatum {
    pub fn build(t: DynkinType) -> RootDatum {
        let (ambient_dim, simple_roots) = simple_roots_of(t);
        let r = t.rank;
        let cartan = cartan_matrix(&simple_roots);
        let seeds: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
            .collect();
        let closure = reflection_closure(&cartan, &seeds);

        let mut pairs: Vec<(RationalVector, Vec<i64>)> = closure
            .into_iter()
            .map(|c| {
                let v = RationalVector::int_combination(&c, &simple_roots, ambient_dim);
                (v, c)
            })
            .collect();
        pairs.sort();
        let (roots, root_coords): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        let coroots = roots.iter().map(coroot).collect();
        let simple_coroots: Vec<RationalVector> = simple_roots.iter().map(coroot).collect();

        let cartan_q: Vec<Vec<Rational>> = cartan
            .iter()
            .map(|row| row.iter().map(|&c| rat(c)).collect())
            .collect();
        let transpose: Vec<Vec<Rational>> = (0..r)
            .map(|i| (0..r).map(|j| cartan_q[j][i].clone()).collect())
            .collect();
        // w_i = sum_k ((C^T)^-1)[i][k] a_k and w_i^v = sum_k (C^-1)[i][k] a_k^v.
        let weight_coeffs = rational::invert(&transpose).expect("Cartan matrix is invertible");
        let coweight_coeffs = rational::invert(&cartan_q).expect("Cartan matrix is invertible");
        let fundamental_weights = weight_coeffs
            .iter()
            .map(|row| RationalVector::combination(row, &simple_roots, ambient_dim))
            .collect();
        let fundamental_coweights = coweight_coeffs
            .iter()
            .map(|row| RationalVector::combination(row, &simple_coroots, ambient_dim))
            .collect();

        let index = root_coords
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        RootDatum {
            dynkin: t,
            ambient_dim,
            simple_roots,
            simple_coroots,
            cartan,
            roots,
            root_coords,
            coroots,
            fundamental_weights,
            fundamental_coweights,
            index,
        }
    }

    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn rank(&self) -> usize {
        self.dynkin.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn simple_roots(&self) -> &[RationalVector] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[RationalVector] {
        &self.simple_coroots
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn roots(&self) -> &[RationalVector] {
        &self.roots
    }

    /// Roots in simple-root coordinates, aligned with [`Self::roots`].
    pub fn root_coords(&self) -> &[Vec<i64>] {
        &self.root_coords
    }

    pub fn coroots(&self) -> &[RationalVector] {
        &self.coroots
    }

    pub fn fundamental_weights(&self) -> &[RationalVector] {
        &self.fundamental_weights
    }

    pub fn fundamental_coweights(&self) -> &[RationalVector] {
        &self.fundamental_coweights
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Index of a root given in simple-root coordinates.
    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn is_positive(&self, root: usize) -> bool {
        self.root_coords[root].iter().all(|&c| c >= 0)
    }

    pub fn negative_of(&self, root: usize) -> usize {
        let neg: Vec<i64> = self.root_coords[root].iter().map(|c| -c).collect();
        self.index[&neg]
    }

    /// Permutation of root indices induced by the simple reflection `s_i`.
    pub fn simple_reflection_permutation(&self, i: usize) -> Vec<usize> {
        self.root_coords
            .iter()
            .map(|c| self.index[&reflect_coords(&self.cartan, i, c)])
            .collect()
    }

    pub fn root_hyperplanes(&self) -> Vec<Hyperplane> {
        (0..self.num_roots())
            .filter(|&i| self.is_positive(i))
            .map(|i| Hyperplane {
                positive: i,
                negative: self.negative_of(i),
            })
            .collect()
    }

    /// Rational coordinates of an ambient vector in the simple-root basis.
    pub fn root_basis_coords(&self, v: &RationalVector) -> Option<Vec<Rational>> {
        rational::coordinates(&self.simple_roots, v)
    }

    pub fn coroot_basis_coords(&self, v: &RationalVector) -> Option<Vec<Rational>> {
        rational::coordinates(&self.simple_coroots, v)
    }

    /// Checks `Phi = -Phi`, evenness and closure under simple reflections in
    /// the ambient realization.
    pub fn check_closed(&self) -> bool {
        let set: BTreeSet<&RationalVector> = self.roots.iter().collect();
        self.roots.len() % 2 == 0
            && self.roots.iter().all(|a| set.contains(&-a))
            && self.simple_roots.iter().all(|s| {
                self.roots.iter().all(|a| set.contains(&reflect(a, s)))
            })
    }

    pub fn dim_group(&self) -> usize {
        self.rank() + self.num_roots()
    }

    /// Weight-lattice pairing `<v, a_j^v>` for every simple coroot.
    pub fn coroot_pairings(&self, v: &RationalVector) -> Vec<Rational> {
        self.simple_coroots.iter().map(|c| v.dot(c)).collect()
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "root datum {} in Q^{}", self.dynkin, self.ambient_dim)?;
        for (i, a) in self.simple_roots.iter().enumerate() {
            writeln!(f, "  a{} = {}", i + 1, a)?;
        }
        write!(f, "  |Phi| = {}", self.roots.len())
    }
}

/// The `D_n` half-spin weight classes used throughout the `D` tables.
pub fn half_sum(dim: usize, negate_last: bool) -> RationalVector {
    let mut coords = vec![frac(1, 2); dim];
    if negate_last {
        coords[dim - 1] = frac(-1, 2);
    }
    RationalVector::new(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> DynkinType {
        s.parse().unwrap()
    }

    /// Ambient-space oracle: closure of the simple roots under reflections
    /// computed directly on rational vectors.
    fn ambient_closure(simple: &[RationalVector]) -> BTreeSet<RationalVector> {
        let mut seen: BTreeSet<RationalVector> = simple.iter().cloned().collect();
        let mut queue: VecDeque<RationalVector> = simple.iter().cloned().collect();
        while let Some(v) = queue.pop_front() {
            for s in simple {
                let w = reflect(&v, s);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    #[test]
    fn admissible_types() {
        assert!(DynkinType::new(Family::A, 0).is_err());
        assert!(DynkinType::new(Family::B, 1).is_err());
        assert!(DynkinType::new(Family::C, 2).is_err());
        assert!(DynkinType::new(Family::D, 3).is_err());
        assert!(DynkinType::new(Family::E, 5).is_err());
        assert!(DynkinType::new(Family::E, 9).is_err());
        assert!(DynkinType::new(Family::F, 3).is_err());
        assert!(DynkinType::new(Family::G, 3).is_err());
        assert_eq!(t("E6").rank(), 6);
        assert_eq!(t("d_5").family(), Family::D);
        assert!("X3".parse::<DynkinType>().is_err());
    }

    #[test]
    fn a1_has_two_opposite_roots() {
        let rd = RootDatum::build(t("A1"));
        assert_eq!(rd.num_roots(), 2);
        assert_eq!(rd.roots()[0], -&rd.roots()[1]);
    }

    #[test]
    fn root_counts_match_ambient_oracle() {
        // Frozen from the ambient-space closure: D4 -> 24, E6 -> 72.
        for (ty, expected) in [("D4", 24), ("E6", 72)] {
            let rd = RootDatum::build(t(ty));
            assert_eq!(ambient_closure(rd.simple_roots()).len(), expected);
            assert_eq!(rd.num_roots(), expected);
        }
        for ty in DynkinType::all_up_to(8) {
            let rd = RootDatum::build(ty);
            let oracle = ambient_closure(rd.simple_roots());
            let built: BTreeSet<RationalVector> = rd.roots().iter().cloned().collect();
            assert_eq!(oracle, built, "{ty}");
        }
    }

    #[test]
    fn hyperplane_counts() {
        for (ty, n) in [("A1", 1), ("A2", 3), ("G2", 6)] {
            let rd = RootDatum::build(t(ty));
            let hs = rd.root_hyperplanes();
            assert_eq!(hs.len(), n);
            let mut covered: Vec<usize> = hs.iter().flat_map(|h| [h.positive, h.negative]).collect();
            covered.sort();
            assert_eq!(covered, (0..rd.num_roots()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn cartan_shapes() {
        for ty in DynkinType::all_up_to(8) {
            let rd = RootDatum::build(ty);
            for (i, row) in rd.cartan().iter().enumerate() {
                for (j, &c) in row.iter().enumerate() {
                    if i == j {
                        assert_eq!(c, 2);
                    } else {
                        assert!([0, -1, -2, -3].contains(&c), "{ty} C[{i}][{j}] = {c}");
                    }
                }
            }
        }
        let g2 = RootDatum::build(t("G2"));
        assert_eq!(g2.cartan(), &[vec![2, -3], vec![-1, 2]]);
        let b3 = RootDatum::build(t("B3"));
        assert_eq!(b3.cartan()[2], vec![0, -2, 2]);
        let f4 = RootDatum::build(t("F4"));
        assert_eq!(f4.cartan()[1], vec![-1, 2, -1, 0]);
        assert_eq!(f4.cartan()[2], vec![0, -2, 2, -1]);
    }

    #[test]
    fn datum_invariants_hold_for_all_types() {
        for ty in DynkinType::all_up_to(8) {
            let rd = RootDatum::build(ty);
            assert!(rd.check_closed(), "{ty}");
            for (a, c) in rd.roots().iter().zip(rd.coroots()) {
                assert_eq!(a.dot(c), rat(2));
            }
            for (i, w) in rd.fundamental_weights().iter().enumerate() {
                for (j, c) in rd.simple_coroots().iter().enumerate() {
                    assert_eq!(w.dot(c), rat(i64::from(i == j)), "{ty}");
                }
            }
            for (i, w) in rd.fundamental_coweights().iter().enumerate() {
                for (j, a) in rd.simple_roots().iter().enumerate() {
                    assert_eq!(w.dot(a), rat(i64::from(i == j)), "{ty}");
                }
            }
        }
    }

    #[test]
    fn e6_lives_in_the_subspace_and_w1_matches() {
        let rd = RootDatum::build(t("E6"));
        for a in rd.roots() {
            let c = a.coords();
            assert_eq!(c[7], -c[5].clone());
            assert_eq!(c[6], c[5]);
        }
        let w1 = RationalVector::new(vec![
            rat(0),
            rat(0),
            rat(0),
            rat(0),
            rat(0),
            frac(-2, 3),
            frac(-2, 3),
            frac(2, 3),
        ]);
        assert_eq!(rd.fundamental_weights()[0], w1);
    }

    #[test]
    fn d_n_spin_weights() {
        for n in 4..=8 {
            let rd = RootDatum::build(DynkinType::new(Family::D, n).unwrap());
            assert_eq!(rd.fundamental_weights()[n - 1], half_sum(n, false));
            assert_eq!(rd.fundamental_weights()[n - 2], half_sum(n, true));
            assert_eq!(rd.fundamental_weights()[0], RationalVector::unit(n, 0));
        }
    }

    #[test]
    fn closure_is_idempotent() {
        for ty in DynkinType::all_up_to(6) {
            let rd = RootDatum::build(ty);
            let again = reflection_closure(rd.cartan(), rd.root_coords());
            let mut sorted = rd.root_coords().to_vec();
            sorted.sort();
            assert_eq!(again, sorted);
        }
    }
}
