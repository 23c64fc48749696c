//! Almost-simple groups `G = G^sc / mu` of a given Dynkin type: centers,
//! fundamental groups, outer automorphisms and how they act.
//!
//! Conventions:
//! - `Z(G^sc) = P^v / Q^v` (coweights modulo coroots), and `mu` is a subgroup
//!   of it;
//! - `pi_1(G) = X_*(T) / Q^v` where `X_*(T) = Q^v + lifts(mu)`;
//! - `Hom(Z(G), G_m) = X^*(T) / Q` with `X^*(T)` the dual lattice of
//!   `X_*(T)`, i.e. the classes of `P / Q` pairing trivially with `mu`.
//!
//! Outer automorphisms are the Dynkin diagram symmetries preserving `mu`;
//! each acts on the (co)weight lattices by permuting simple (co)roots.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finabel::{
    enumerate_subgroups, lattice_basis, lattice_quotient, AbelianAction, Element, FiniteAbelianGroup, GroupMap,
    LatticeError, LatticeQuotient, Subgroup,
};
use crate::rational::{self, CoordinateSystem, Rational, RationalVector};
use crate::rootdata::{DynkinType, Family, RootDatum};
use crate::weyl;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("δ = {delta:?} is not an element of π₁(G) = {group}")]
    InvalidDegree { delta: Vec<u64>, group: FiniteAbelianGroup },
    #[error("subgroup does not lie in the center of the simply-connected group")]
    InvalidSubgroup,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A permutation of the Dynkin nodes preserving the Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiagramSymmetry {
    pub perm: Vec<usize>,
}

impl DiagramSymmetry {
    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Cycle notation on 1-based node labels; `1` for the identity.
    pub fn name(&self) -> String {
        if self.is_identity() {
            return "1".to_string();
        }
        let mut seen = vec![false; self.perm.len()];
        let mut out = String::new();
        for start in 0..self.perm.len() {
            if seen[start] || self.perm[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push((i + 1).to_string());
                i = self.perm[i];
            }
            out.push_str(&format!("({})", cycle.join(" ")));
        }
        out
    }

    pub fn compose(&self, then: &DiagramSymmetry) -> DiagramSymmetry {
        DiagramSymmetry {
            perm: self.perm.iter().map(|&i| then.perm[i]).collect(),
        }
    }

    /// Applies the symmetry to a vector in the span of `basis` (simple roots
    /// or simple coroots): `sum c_k b_k -> sum c_k b_{perm(k)}`.
    pub fn apply(&self, basis: &CoordinateSystem, v: &RationalVector) -> RationalVector {
        let coeffs = basis.coordinates(v).expect("vector lies in the root span");
        let mut permuted = vec![Rational::from_integer(0.into()); coeffs.len()];
        for (k, c) in coeffs.into_iter().enumerate() {
            permuted[self.perm[k]] = c;
        }
        RationalVector::combination(&permuted, basis.basis(), v.dim())
    }
}

/// All automorphisms of the Dynkin diagram, identity first.
pub fn diagram_symmetries(cartan: &[Vec<i64>]) -> Vec<DiagramSymmetry> {
    fn extend(cartan: &[Vec<i64>], perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<DiagramSymmetry>) {
        let i = perm.len();
        if i == cartan.len() {
            out.push(DiagramSymmetry { perm: perm.clone() });
            return;
        }
        for p in 0..cartan.len() {
            if used[p] {
                continue;
            }
            let compatible = (0..i).all(|j| cartan[i][j] == cartan[p][perm[j]] && cartan[j][i] == cartan[perm[j]][p]);
            if compatible {
                used[p] = true;
                perm.push(p);
                extend(cartan, perm, used, out);
                perm.pop();
                used[p] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(cartan, &mut Vec::new(), &mut vec![false; cartan.len()], &mut out);
    out.sort();
    out
}

/// The opposition involution `i -> j` where `-w_0(a_i) = a_j`.
pub fn opposition_involution(rd: &RootDatum) -> DiagramSymmetry {
    let w0 = weyl::longest_element(rd);
    let r = rd.rank();
    let perm = (0..r)
        .map(|i| {
            let e: Vec<i64> = (0..r).map(|j| i64::from(i == j)).collect();
            let image: Vec<i64> = w0.apply(&e).iter().map(|c| -c).collect();
            image.iter().position(|&c| c == 1).expect("-w0 permutes simple roots")
        })
        .collect();
    DiagramSymmetry { perm }
}

/// Per-type data shared by every isogeny class of that type.
#[derive(Debug)]
pub struct SimplyConnected {
    rd: RootDatum,
    root_system: CoordinateSystem,
    coroot_system: CoordinateSystem,
    center: LatticeQuotient,
    weight_classes: LatticeQuotient,
    symmetries: Vec<DiagramSymmetry>,
}

impl SimplyConnected {
    fn build(t: DynkinType) -> Result<SimplyConnected, GroupError> {
        let rd = RootDatum::build(t);
        let center = lattice_quotient(rd.fundamental_coweights(), rd.simple_coroots())?
            .rebased(rd.fundamental_coweights());
        let weight_classes =
            lattice_quotient(rd.fundamental_weights(), rd.simple_roots())?.rebased(rd.fundamental_weights());
        let symmetries = diagram_symmetries(rd.cartan());
        let root_system = CoordinateSystem::new(rd.simple_roots()).ok_or(LatticeError::Degenerate)?;
        let coroot_system = CoordinateSystem::new(rd.simple_coroots()).ok_or(LatticeError::Degenerate)?;
        Ok(SimplyConnected {
            rd,
            root_system,
            coroot_system,
            center,
            weight_classes,
            symmetries,
        })
    }

    /// Cached per-type data.
    pub fn get(t: DynkinType) -> Arc<SimplyConnected> {
        static CACHE: OnceLock<Mutex<HashMap<DynkinType, Arc<SimplyConnected>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(sc) = cache.lock().expect("cache lock").get(&t) {
            return sc.clone();
        }
        let sc = Arc::new(Self::build(t).expect("root lattices of a simple type are well formed"));
        cache.lock().expect("cache lock").entry(t).or_insert(sc).clone()
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.rd
    }

    /// `Z(G^sc) = P^v / Q^v`, generated by classes of fundamental coweights.
    pub fn center(&self) -> &LatticeQuotient {
        &self.center
    }

    /// `P / Q`, generated by classes of fundamental weights.
    pub fn weight_classes(&self) -> &LatticeQuotient {
        &self.weight_classes
    }

    pub fn symmetries(&self) -> &[DiagramSymmetry] {
        &self.symmetries
    }

    pub fn apply_to_coweight(&self, s: &DiagramSymmetry, v: &RationalVector) -> RationalVector {
        s.apply(&self.coroot_system, v)
    }

    pub fn apply_to_weight(&self, s: &DiagramSymmetry, v: &RationalVector) -> RationalVector {
        s.apply(&self.root_system, v)
    }

    /// Action of a diagram symmetry on a quotient of coweight lattices.
    fn coweight_map(&self, s: &DiagramSymmetry, q: &LatticeQuotient) -> GroupMap {
        GroupMap {
            rows: q
                .lifts()
                .iter()
                .map(|g| q.project(&self.apply_to_coweight(s, g)).expect("symmetry preserves the lattice"))
                .collect(),
        }
    }

    fn weight_map(&self, s: &DiagramSymmetry, q: &LatticeQuotient) -> GroupMap {
        GroupMap {
            rows: q
                .lifts()
                .iter()
                .map(|g| q.project(&self.apply_to_weight(s, g)).expect("symmetry preserves the lattice"))
                .collect(),
        }
    }

    /// Action on `Z(G^sc)`.
    pub fn center_map(&self, s: &DiagramSymmetry) -> GroupMap {
        self.coweight_map(s, &self.center)
    }

    /// Action on `P / Q`.
    pub fn weight_class_map(&self, s: &DiagramSymmetry) -> GroupMap {
        self.weight_map(s, &self.weight_classes)
    }

    fn image_of_subgroup(&self, s: &DiagramSymmetry, h: &Subgroup) -> Subgroup {
        let g = self.center.group();
        let m = self.center_map(s);
        let gens: Vec<Element> = h.generators().iter().map(|x| m.apply(g, x)).collect();
        Subgroup::generated_by(g, &gens)
    }

    fn preserves(&self, s: &DiagramSymmetry, h: &Subgroup) -> bool {
        self.image_of_subgroup(s, h).elements() == h.elements()
    }

    /// Class of the first fundamental coweight in `Z(G^sc)`; for `D_n` this
    /// is the kernel of `Spin -> SO`.
    fn vector_class(&self) -> Element {
        self.center
            .project(&self.rd.fundamental_coweights()[0])
            .expect("fundamental coweights lie in P^v")
    }
}

/// An isogeny class `G^sc / mu`.
#[derive(Clone)]
pub struct GroupForm {
    dynkin: DynkinType,
    mu: Subgroup,
    display_name: String,
    sc: Arc<SimplyConnected>,
    pi1: OnceLock<LatticeQuotient>,
    center_chars: OnceLock<LatticeQuotient>,
}

impl fmt::Debug for GroupForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupForm")
            .field("dynkin", &self.dynkin)
            .field("mu", &self.mu.elements())
            .field("display_name", &self.display_name)
            .finish()
    }
}

impl PartialEq for GroupForm {
    fn eq(&self, other: &Self) -> bool {
        self.dynkin == other.dynkin && self.mu == other.mu
    }
}

impl fmt::Display for GroupForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_name)
    }
}

fn display_name(t: DynkinType, sc: &SimplyConnected, mu: &Subgroup) -> String {
    let r = t.rank();
    let order = mu.order();
    let full = order == sc.center.group().order();
    match t.family() {
        Family::A => {
            let n = r as u64 + 1;
            if order == 1 {
                format!("SL_{n}")
            } else if order == n {
                format!("PSL_{n}")
            } else {
                format!("SL_{n}/mu_{order}")
            }
        }
        Family::B => {
            if order == 1 {
                format!("Spin_{}", 2 * r + 1)
            } else {
                format!("SO_{}", 2 * r + 1)
            }
        }
        Family::C => {
            if order == 1 {
                format!("Sp_{}", 2 * r)
            } else {
                format!("PSp_{}", 2 * r)
            }
        }
        Family::D => {
            let m = 2 * r;
            if order == 1 {
                format!("Spin_{m}")
            } else if full {
                format!("PSO_{m}")
            } else if mu.contains(&sc.vector_class()) {
                format!("SO_{m}")
            } else {
                format!("SemiSpin_{m}")
            }
        }
        Family::E if r == 8 => "E8".to_string(),
        Family::E => {
            if order == 1 {
                format!("E{r}_sc")
            } else {
                format!("E{r}_ad")
            }
        }
        Family::F => "F4".to_string(),
        Family::G => "G2".to_string(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OutKind {
    Trivial,
    Z2,
    S3,
}

impl OutKind {
    fn from_order(n: usize) -> OutKind {
        match n {
            1 => OutKind::Trivial,
            2 => OutKind::Z2,
            6 => OutKind::S3,
            _ => unreachable!("subgroups of diagram symmetry groups realized here have order 1, 2 or 6"),
        }
    }

    pub fn order(self) -> usize {
        match self {
            OutKind::Trivial => 1,
            OutKind::Z2 => 2,
            OutKind::S3 => 6,
        }
    }
}

impl fmt::Display for OutKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutKind::Trivial => "{1}",
            OutKind::Z2 => "Z/2Z",
            OutKind::S3 => "S₃",
        })
    }
}

/// An outer automorphism with its actions on `pi_1(G)` and on
/// `Hom(Z(G), G_m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutElement {
    pub symmetry: DiagramSymmetry,
    pub name: String,
    pub on_pi1: GroupMap,
    pub on_center_chars: GroupMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutGroup {
    pub kind: OutKind,
    pub pi1: FiniteAbelianGroup,
    pub center_chars: FiniteAbelianGroup,
    pub elements: Vec<OutElement>,
}

impl OutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn action_on_pi1(&self) -> AbelianAction {
        AbelianAction::new(
            self.pi1.clone(),
            self.elements.iter().map(|e| (e.name.clone(), e.on_pi1.clone())).collect(),
        )
    }

    pub fn action_on_center_chars(&self) -> AbelianAction {
        AbelianAction::new(
            self.center_chars.clone(),
            self.elements
                .iter()
                .map(|e| (e.name.clone(), e.on_center_chars.clone()))
                .collect(),
        )
    }

    fn restricted(&self, keep: impl Fn(&OutElement) -> bool) -> OutGroup {
        let elements: Vec<OutElement> = self.elements.iter().filter(|e| keep(e)).cloned().collect();
        OutGroup {
            kind: OutKind::from_order(elements.len()),
            pi1: self.pi1.clone(),
            center_chars: self.center_chars.clone(),
            elements,
        }
    }
}

impl GroupForm {
    /// `G^sc / mu`; `mu` must be a subgroup of `Z(G^sc)` as returned by
    /// [`SimplyConnected::center`].
    pub fn new(t: DynkinType, mu: Subgroup) -> Result<GroupForm, GroupError> {
        let sc = SimplyConnected::get(t);
        if mu.ambient() != sc.center.group() {
            return Err(GroupError::InvalidSubgroup);
        }
        let display_name = display_name(t, &sc, &mu);
        Ok(GroupForm {
            dynkin: t,
            mu,
            display_name,
            sc,
            pi1: OnceLock::new(),
            center_chars: OnceLock::new(),
        })
    }

    pub fn simply_connected(t: DynkinType) -> GroupForm {
        let sc = SimplyConnected::get(t);
        let mu = Subgroup::trivial(sc.center.group());
        GroupForm::new(t, mu).expect("trivial subgroup")
    }

    pub fn adjoint(t: DynkinType) -> GroupForm {
        let sc = SimplyConnected::get(t);
        let mu = Subgroup::full(sc.center.group());
        GroupForm::new(t, mu).expect("full center")
    }

    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn mu(&self) -> &Subgroup {
        &self.mu
    }

    pub fn display_name(&self) -> &str {
        &self.display_name
    }

    pub fn simply_connected_data(&self) -> &SimplyConnected {
        &self.sc
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.sc.rd
    }

    /// Basis of the cocharacter lattice `X_*(T) = Q^v + lifts(mu)`.
    pub fn cocharacter_basis(&self) -> Vec<RationalVector> {
        let rd = &self.sc.rd;
        let mut gens: Vec<RationalVector> = rd.simple_coroots().to_vec();
        gens.extend(self.mu.generators().iter().map(|x| self.sc.center.lift(x)));
        lattice_basis(rd.fundamental_coweights(), &gens).expect("Q^v + lifts(mu) lies in P^v")
    }

    /// Basis of the character lattice `X^*(T)`, dual to the cocharacters.
    pub fn character_basis(&self) -> Vec<RationalVector> {
        rational::dual_basis(&self.cocharacter_basis()).expect("cocharacter lattice has full rank")
    }

    /// `pi_1(G) = X_*(T) / Q^v` with generators taken among fundamental
    /// coweight classes when possible.
    pub fn pi1_quotient(&self) -> &LatticeQuotient {
        self.pi1.get_or_init(|| {
            let rd = &self.sc.rd;
            lattice_quotient(&self.cocharacter_basis(), rd.simple_coroots())
                .expect("Q^v has full rank in X_*")
                .rebased(rd.fundamental_coweights())
        })
    }

    /// `Hom(Z(G), G_m) = X^*(T) / Q`.
    pub fn center_char_quotient(&self) -> &LatticeQuotient {
        self.center_chars.get_or_init(|| {
            let rd = &self.sc.rd;
            lattice_quotient(&self.character_basis(), rd.simple_roots())
                .expect("Q has full rank in X^*")
                .rebased(rd.fundamental_weights())
        })
    }

    pub fn fundamental_group(&self) -> FiniteAbelianGroup {
        self.pi1_quotient().group().clone()
    }

    pub fn center_char_group(&self) -> FiniteAbelianGroup {
        self.center_char_quotient().group().clone()
    }

    pub fn out_group(&self) -> OutGroup {
        let pi1 = self.pi1_quotient();
        let chars = self.center_char_quotient();
        let elements = self
            .sc
            .symmetries
            .iter()
            .filter(|s| self.sc.preserves(s, &self.mu))
            .map(|s| OutElement {
                symmetry: s.clone(),
                name: s.name(),
                on_pi1: self.sc.coweight_map(s, pi1),
                on_center_chars: self.sc.weight_map(s, chars),
            })
            .collect::<Vec<_>>();
        OutGroup {
            kind: OutKind::from_order(elements.len()),
            pi1: pi1.group().clone(),
            center_chars: chars.group().clone(),
            elements,
        }
    }

    pub fn out_action_on_pi1(&self) -> AbelianAction {
        self.out_group().action_on_pi1()
    }

    pub fn out_action_on_center_chars(&self) -> AbelianAction {
        self.out_group().action_on_center_chars()
    }

    /// `Out(G, delta)`: outer automorphisms fixing `delta` in `pi_1(G)`.
    pub fn out_stabilizer(&self, delta: &[u64]) -> Result<OutGroup, GroupError> {
        let out = self.out_group();
        if !out.pi1.contains(delta) {
            return Err(GroupError::InvalidDegree {
                delta: delta.to_vec(),
                group: out.pi1.clone(),
            });
        }
        Ok(out.restricted(|e| e.on_pi1.apply(&out.pi1, delta) == delta))
    }
}

/// One form per isomorphism class: subgroups of `Z(G^sc)` up to diagram
/// symmetries. The representative of each class is the first subgroup in
/// canonical order, except that a member containing the vector class is
/// preferred (so the `D4` class of order two is named `SO_8`).
pub fn enumerate_forms(t: DynkinType) -> Vec<GroupForm> {
    let sc = SimplyConnected::get(t);
    let subgroups = enumerate_subgroups(sc.center.group());
    let vector = sc.vector_class();
    let mut assigned: BTreeSet<BTreeSet<Element>> = BTreeSet::new();
    let mut forms = Vec::new();
    for h in &subgroups {
        if assigned.contains(h.elements()) {
            continue;
        }
        let mut orbit: Vec<Subgroup> = Vec::new();
        for s in &sc.symmetries {
            let image = sc.image_of_subgroup(s, h);
            if !orbit.iter().any(|o| o.elements() == image.elements()) {
                orbit.push(image);
            }
        }
        for o in &orbit {
            assigned.insert(o.elements().clone());
        }
        let rep = orbit
            .iter()
            .min_by_key(|o| (!o.contains(&vector) || o.order() == 1, (*o).clone()))
            .expect("orbit contains h")
            .clone();
        forms.push(GroupForm::new(t, rep).expect("subgroup of the center"));
    }
    forms
}
