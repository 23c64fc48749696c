//! Automorphism groups of moduli of `G`-bundles, Hitchin numerology and the
//! local delta-invariant of Hitchin fibers.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finabel::{Element, FiniteAbelianGroup, GroupMap};
use crate::groupclass::{enumerate_forms, GroupError, GroupForm, OutGroup, OutKind};
use crate::rootdata::{DynkinType, Family, RootDatum};
use crate::weyl::{self, WeylError};

/// Smallest genus for which the automorphism group is described.
pub const MIN_GENUS: u32 = 4;
/// Smallest genus for which the Hitchin numerology is reported.
pub const MIN_HITCHIN_GENUS: u32 = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuliError {
    #[error("genus {genus} is out of range (need g >= {min})")]
    GenusOutOfRange { genus: u32, min: u32 },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("inconsistent ramification entry {entry}: {reason}")]
    InconsistentProfile { entry: RamificationEntry, reason: String },
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// `Pic(C)[l]^k`, i.e. `(Z/l)^{2gk}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionBlock {
    pub l: u64,
    pub copies: usize,
    /// `2g`: each copy of `Pic(C)[l]` is `(Z/l)^{2g}`.
    pub multiplicity: u32,
}

/// How an outer automorphism acts on the torsion part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TorsionAction {
    Identity,
    /// `L -> L^{-1}` on every factor.
    Dualization,
    /// Anything else, in invariant-factor coordinates.
    Matrix(GroupMap),
}

/// `H^1(C, Z(G)) ⋊ (Out(G, delta) × Aut(C))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutPresentation {
    pub group: String,
    pub genus: u32,
    pub delta: Element,
    pub pi1: FiniteAbelianGroup,
    /// `Hom(Z(G), G_m)`; its invariant factors index the torsion blocks.
    pub center_chars: FiniteAbelianGroup,
    pub torsion_part: Vec<TorsionBlock>,
    pub outer_part: OutGroup,
    pub curve_part: String,
    /// Action of each element of `outer_part` on the torsion part, in the
    /// order of `outer_part.elements`. `Aut(C)` acts by pull-back.
    pub actions: Vec<(String, TorsionAction)>,
}

fn torsion_blocks(chars: &FiniteAbelianGroup, genus: u32) -> Vec<TorsionBlock> {
    let mut blocks: Vec<TorsionBlock> = Vec::new();
    for &l in chars.invariant_factors() {
        match blocks.last_mut() {
            Some(b) if b.l == l => b.copies += 1,
            _ => blocks.push(TorsionBlock {
                l,
                copies: 1,
                multiplicity: 2 * genus,
            }),
        }
    }
    blocks
}

impl AutPresentation {
    /// `|H^1(C, Z(G))| = |Hom(Z(G), G_m)|^{2g}`.
    pub fn torsion_order(&self) -> num_bigint::BigUint {
        self.torsion_part.iter().fold(num_bigint::BigUint::from(1u32), |acc, b| {
            acc * num_bigint::BigUint::from(b.l).pow(b.copies as u32 * b.multiplicity)
        })
    }

    fn torsion_string(&self) -> Option<String> {
        if self.torsion_part.is_empty() {
            return None;
        }
        let parts: Vec<String> = self
            .torsion_part
            .iter()
            .map(|b| match b.copies {
                1 => format!("Pic(C)[{}]", b.l),
                k => format!("(Pic(C)[{}])^{k}", b.l),
            })
            .collect();
        Some(parts.join(" × "))
    }

    fn torsion_latex(&self) -> Option<String> {
        if self.torsion_part.is_empty() {
            return None;
        }
        let parts: Vec<String> = self
            .torsion_part
            .iter()
            .map(|b| match b.copies {
                1 => format!("\\mathrm{{Pic}}(C)[{}]", b.l),
                k => format!("(\\mathrm{{Pic}}(C)[{}])^{{{k}}}", b.l),
            })
            .collect();
        Some(parts.join("\\times "))
    }

    /// The torsion part as an abstract group at the numeric genus.
    pub fn torsion_group(&self) -> String {
        if self.torsion_part.is_empty() {
            return "{0}".to_string();
        }
        let parts: Vec<String> = self
            .torsion_part
            .iter()
            .map(|b| format!("(Z/{}Z)^{}", b.l, b.copies as u32 * b.multiplicity))
            .collect();
        parts.join(" × ")
    }

    /// Row of the classification table, e.g. `Pic(C)[4] ⋊ (Z/2Z × Aut(C))`.
    pub fn render(&self) -> String {
        let outer = match self.outer_part.kind {
            OutKind::Trivial => self.curve_part.clone(),
            kind => format!("{kind} × {}", self.curve_part),
        };
        match self.torsion_string() {
            None => outer,
            Some(t) if self.outer_part.kind == OutKind::Trivial => format!("{t} ⋊ {outer}"),
            Some(t) => format!("{t} ⋊ ({outer})"),
        }
    }

    pub fn latex(&self) -> String {
        let curve = "\\mathrm{Aut}(C)";
        let outer = match self.outer_part.kind {
            OutKind::Trivial => curve.to_string(),
            OutKind::Z2 => format!("\\mathbb{{Z}}/2\\mathbb{{Z}}\\times {curve}"),
            OutKind::S3 => format!("S_3\\times {curve}"),
        };
        match self.torsion_latex() {
            None => outer,
            Some(t) if self.outer_part.kind == OutKind::Trivial => format!("{t}\\rtimes {outer}"),
            Some(t) => format!("{t}\\rtimes ({outer})"),
        }
    }
}

impl fmt::Display for AutPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn classify_action(m: &GroupMap, g: &FiniteAbelianGroup) -> TorsionAction {
    if m.is_identity_on(g) {
        TorsionAction::Identity
    } else if m.is_inversion_on(g) {
        TorsionAction::Dualization
    } else {
        TorsionAction::Matrix(m.clone())
    }
}

pub fn aut_presentation(gf: &GroupForm, delta: &[u64], genus: u32) -> Result<AutPresentation, ModuliError> {
    if genus < MIN_GENUS {
        return Err(ModuliError::GenusOutOfRange { genus, min: MIN_GENUS });
    }
    let outer_part = gf.out_stabilizer(delta)?;
    let chars = outer_part.center_chars.clone();
    let actions = outer_part
        .elements
        .iter()
        .map(|e| (e.name.clone(), classify_action(&e.on_center_chars, &chars)))
        .collect();
    Ok(AutPresentation {
        group: gf.display_name().to_string(),
        genus,
        delta: delta.to_vec(),
        pi1: outer_part.pi1.clone(),
        torsion_part: torsion_blocks(&chars, genus),
        center_chars: chars,
        outer_part,
        curve_part: "Aut(C)".to_string(),
        actions,
    })
}

/// A set of degrees sharing one table row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeltaClass {
    /// `pi_1(G)` is trivial.
    Trivial,
    /// Every degree.
    All,
    /// `2 delta = 0` (or its negation) in a cyclic group.
    Doubling { zero: bool },
    Zero,
    NonZero,
    List(Vec<Element>),
}

impl DeltaClass {
    pub fn render(&self, pi1: &FiniteAbelianGroup) -> String {
        let zero = pi1.format_element(&pi1.zero());
        match self {
            DeltaClass::Trivial => "δ∈{0}".to_string(),
            DeltaClass::All => format!("δ∈{pi1}"),
            DeltaClass::Doubling { zero: true } => format!("2δ=0∈{pi1}"),
            DeltaClass::Doubling { zero: false } => format!("2δ≠0∈{pi1}"),
            DeltaClass::Zero => format!("δ={zero}∈{pi1}"),
            DeltaClass::NonZero => format!("δ≠{zero}∈{pi1}"),
            DeltaClass::List(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| pi1.format_element(x)).collect();
                format!("δ={}∈{pi1}", parts.join(","))
            }
        }
    }

    pub fn latex(&self, pi1: &FiniteAbelianGroup) -> String {
        let group = group_latex(pi1);
        let zero = pi1.format_element(&pi1.zero());
        match self {
            DeltaClass::Trivial => "\\delta\\in\\{0\\}".to_string(),
            DeltaClass::All => format!("\\delta\\in {group}"),
            DeltaClass::Doubling { zero: true } => format!("2\\delta=0\\in {group}"),
            DeltaClass::Doubling { zero: false } => format!("2\\delta\\neq 0\\in {group}"),
            DeltaClass::Zero => format!("\\delta={zero}\\in {group}"),
            DeltaClass::NonZero => format!("\\delta\\neq{zero}\\in {group}"),
            DeltaClass::List(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| pi1.format_element(x)).collect();
                format!("\\delta={}\\in {group}", parts.join(","))
            }
        }
    }
}

fn group_latex(g: &FiniteAbelianGroup) -> String {
    let factors = g.invariant_factors();
    if factors.is_empty() {
        return "\\{0\\}".to_string();
    }
    if factors.iter().all(|&l| l == factors[0]) && factors.len() > 1 {
        return format!("(\\mathbb{{Z}}/{}\\mathbb{{Z}})^{}", factors[0], factors.len());
    }
    let parts: Vec<String> = factors
        .iter()
        .map(|l| format!("\\mathbb{{Z}}/{l}\\mathbb{{Z}}"))
        .collect();
    parts.join("\\times ")
}

/// LaTeX name of a form, following the table's notation.
pub fn group_name_latex(gf: &GroupForm) -> String {
    let name = gf.display_name();
    if let Some(rest) = name.strip_prefix('E') {
        return match rest.split_once('_') {
            Some((r, kind)) => format!("\\mathbb{{E}}_{r}^{{\\mathrm{{{kind}}}}}"),
            None => format!("\\mathbb{{E}}_{rest}"),
        };
    }
    if name == "F4" || name == "G2" {
        return format!("\\mathbb{{{}}}_{}", &name[..1], &name[1..]);
    }
    let (base, quotient) = match name.split_once('/') {
        Some((b, q)) => (b, Some(q)),
        None => (name, None),
    };
    let (head, index) = base.split_once('_').expect("classical names carry an index");
    let mut out = format!("\\mathrm{{{head}}}_{{{index}}}");
    if let Some(q) = quotient {
        let r = q.trim_start_matches("mu_");
        out.push_str(&format!("/\\mu_{{{r}}}"));
    }
    out
}

/// One row of the classification table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub dynkin: DynkinType,
    pub group: String,
    pub pi1: FiniteAbelianGroup,
    pub delta_class: DeltaClass,
    /// Every degree in the class.
    pub deltas: Vec<Element>,
    pub presentation: String,
    pub latex: LatexRow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatexRow {
    pub group: String,
    pub delta: String,
    pub presentation: String,
}

impl TableRow {
    pub fn delta_label(&self) -> String {
        self.delta_class.render(&self.pi1)
    }

    /// `TYPE | GROUP | DELTA | PRESENTATION`, the golden-file line format.
    pub fn line(&self) -> String {
        format!("{} | {} | {} | {}", self.dynkin, self.group, self.delta_label(), self.presentation)
    }
}

fn label_classes(gf: &GroupForm, classes: &[BTreeSet<Element>]) -> Vec<DeltaClass> {
    let pi1 = gf.fundamental_group();
    if pi1.is_trivial() {
        return vec![DeltaClass::Trivial];
    }
    if classes.len() == 1 {
        return vec![DeltaClass::All];
    }
    let zero = pi1.zero();
    let two_torsion: BTreeSet<Element> = pi1
        .elements()
        .into_iter()
        .filter(|x| pi1.scale(2, x) == zero)
        .collect();
    if gf.dynkin().family() == Family::A && classes.len() == 2 && classes.contains(&two_torsion) {
        return classes
            .iter()
            .map(|c| DeltaClass::Doubling { zero: *c == two_torsion })
            .collect();
    }
    classes
        .iter()
        .map(|c| {
            if c.len() == 1 && c.contains(&zero) {
                DeltaClass::Zero
            } else if !c.contains(&zero) && c.len() as u64 == pi1.order() - 1 && pi1.order() > 2 {
                DeltaClass::NonZero
            } else {
                DeltaClass::List(c.iter().cloned().collect())
            }
        })
        .collect()
}

/// Rows for one form: Out-orbits of degrees, merged when they give the same
/// presentation, in order of their smallest element.
pub fn form_rows(gf: &GroupForm, genus: u32) -> Result<Vec<TableRow>, ModuliError> {
    let out = gf.out_group();
    let pi1 = out.pi1.clone();
    let mut classes: Vec<(AutPresentation, BTreeSet<Element>)> = Vec::new();
    for orbit in out.action_on_pi1().orbits() {
        let rep = orbit.iter().next().expect("orbits are nonempty").clone();
        let p = aut_presentation(gf, &rep, genus)?;
        match classes.iter_mut().find(|(q, _)| q.render() == p.render()) {
            Some((_, c)) => c.extend(orbit),
            None => classes.push((p, orbit)),
        }
    }
    classes.sort_by(|a, b| a.1.iter().next().cmp(&b.1.iter().next()));
    let sets: Vec<BTreeSet<Element>> = classes.iter().map(|(_, c)| c.clone()).collect();
    let labels = label_classes(gf, &sets);
    Ok(classes
        .into_iter()
        .zip(labels)
        .map(|((p, c), label)| TableRow {
            dynkin: gf.dynkin(),
            group: gf.display_name().to_string(),
            pi1: pi1.clone(),
            latex: LatexRow {
                group: group_name_latex(gf),
                delta: label.latex(&pi1),
                presentation: p.latex(),
            },
            delta_class: label,
            deltas: c.into_iter().collect(),
            presentation: p.render(),
        })
        .collect())
}

/// Every row of the classification table for types of rank at most
/// `max_rank`, in canonical type order.
pub fn classification_table(genus: u32, max_rank: usize) -> Result<Vec<TableRow>, ModuliError> {
    if genus < MIN_GENUS {
        return Err(ModuliError::GenusOutOfRange { genus, min: MIN_GENUS });
    }
    let types = DynkinType::all_up_to(max_rank);
    let per_type: Vec<Result<Vec<TableRow>, ModuliError>> = std::thread::scope(|s| {
        let handles: Vec<_> = types
            .iter()
            .map(|&t| {
                s.spawn(move || -> Result<Vec<TableRow>, ModuliError> {
                    let mut rows = Vec::new();
                    for gf in enumerate_forms(t) {
                        rows.extend(form_rows(&gf, genus)?);
                    }
                    Ok(rows)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("table worker panicked")).collect()
    });
    let mut rows = Vec::new();
    for r in per_type {
        rows.extend(r?);
    }
    Ok(rows)
}

/// Dimensions attached to the Hitchin fibration of `G` on a genus-`g` curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HitchinReport {
    pub group: String,
    pub genus: u32,
    pub rank: usize,
    pub num_roots: usize,
    pub dim_g: usize,
    pub dim_center: usize,
    pub dim_basis: i64,
    /// `sum d_i (2g - 2) + r (1 - g)`.
    pub dim_basis_riemann_roch: i64,
    pub weights: Vec<usize>,
    pub coxeter_number: usize,
    pub fiber_dim: i64,
    pub higgs_stack_dim: i64,
    pub m_ab_components: usize,
    pub n_extra_components: usize,
    /// Orbits of the diagonal action on ordered pairs of roots; `None` in
    /// rank one, where the pair count is reported as zero.
    pub root_pair_orbits: Option<usize>,
}

/// `(sum d_i (2g-2) + r (1-g), dim G (g-1))`.
pub fn basis_dimensions(degrees: &[usize], dim_g: usize, genus: u32) -> (i64, i64) {
    let g = i64::from(genus);
    let r = degrees.len() as i64;
    let rr = degrees.iter().map(|&d| d as i64 * (2 * g - 2)).sum::<i64>() + r * (1 - g);
    (rr, dim_g as i64 * (g - 1))
}

pub fn hitchin_report(gf: &GroupForm, genus: u32) -> Result<HitchinReport, ModuliError> {
    if genus < MIN_HITCHIN_GENUS {
        return Err(ModuliError::GenusOutOfRange {
            genus,
            min: MIN_HITCHIN_GENUS,
        });
    }
    let rd = gf.root_datum();
    let weights = weyl::invariant_degrees(rd)?;
    let dim_g = rd.dim_group();
    let dim_center = 0usize;
    let (rr, closed) = basis_dimensions(&weights, dim_g, genus);
    assert_eq!(rr, closed, "Riemann-Roch and closed-form dimensions of the Hitchin basis disagree");
    let g1 = i64::from(genus) - 1;
    let (n_extra, root_pairs) = match weyl::orbits_on_hyperplane_pairs(rd) {
        Ok(p) => (p.count(), Some(p.root_pair_orbits)),
        Err(WeylError::EmptyPairSet) => (0, None),
        Err(e) => return Err(e.into()),
    };
    Ok(HitchinReport {
        group: gf.display_name().to_string(),
        genus,
        rank: rd.rank(),
        num_roots: rd.num_roots(),
        dim_g,
        dim_center,
        dim_basis: closed + dim_center as i64,
        dim_basis_riemann_roch: rr,
        coxeter_number: weyl::coxeter_number(rd),
        weights,
        fiber_dim: dim_g as i64 * g1,
        higgs_stack_dim: 2 * dim_g as i64 * g1 + dim_center as i64,
        m_ab_components: weyl::orbits_on_roots(rd).count(),
        n_extra_components: n_extra,
        root_pair_orbits: root_pairs,
    })
}

/// Local data of a Hitchin section at one point of the curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationEntry {
    /// `deg_p(a^* D)`.
    pub deg: u64,
    /// `dim t - dim t^{W_x}`.
    pub drop: u64,
}

impl fmt::Display for RamificationEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.deg, self.drop)
    }
}

impl std::str::FromStr for RamificationEntry {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (d, k) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| format!("expected <deg>:<drop>, got `{s}`"))?;
        let parse = |x: &str| x.trim().parse::<u64>().map_err(|_| format!("not a nonnegative integer: `{x}`"));
        Ok(RamificationEntry {
            deg: parse(d)?,
            drop: parse(k)?,
        })
    }
}

impl RamificationEntry {
    pub fn new(deg: u64, drop: u64) -> Self {
        RamificationEntry { deg, drop }
    }

    /// `delta_p = 0`, i.e. the section meets the discriminant transversally.
    pub fn is_transversal(&self) -> bool {
        self.deg == self.drop
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationProfile {
    pub points: Vec<RamificationEntry>,
    /// When set, every `drop` must be at most this rank.
    pub rank: Option<u64>,
}

impl RamificationProfile {
    pub fn new(points: Vec<RamificationEntry>) -> Self {
        RamificationProfile { points, rank: None }
    }

    /// Parses `deg:drop,deg:drop,...`; the empty string is the empty profile.
    pub fn parse(s: &str) -> Result<Self, String> {
        if s.trim().is_empty() {
            return Ok(Self::default());
        }
        Ok(Self::new(s.split(',').map(str::parse).collect::<Result<_, _>>()?))
    }

    pub fn union(&self, other: &RamificationProfile) -> RamificationProfile {
        RamificationProfile {
            points: self.points.iter().chain(&other.points).copied().collect(),
            rank: self.rank.or(other.rank),
        }
    }
}

/// `delta_p = (deg - drop) / 2`.
pub fn delta_local(entry: &RamificationEntry) -> Result<u64, ModuliError> {
    if entry.deg < entry.drop {
        return Err(ModuliError::InconsistentProfile {
            entry: *entry,
            reason: "degree is smaller than the stabilizer rank drop".to_string(),
        });
    }
    let d = entry.deg - entry.drop;
    if d % 2 != 0 {
        return Err(ModuliError::InconsistentProfile {
            entry: *entry,
            reason: "degree and rank drop have different parity".to_string(),
        });
    }
    Ok(d / 2)
}

pub fn delta_total(profile: &RamificationProfile) -> Result<u64, ModuliError> {
    let mut total = 0;
    for p in &profile.points {
        if let Some(r) = profile.rank {
            if p.drop > r {
                return Err(ModuliError::InconsistentProfile {
                    entry: *p,
                    reason: format!("rank drop exceeds the rank {r}"),
                });
            }
        }
        total += delta_local(p)?;
    }
    Ok(total)
}

/// `t^2 = x^m` locally: degree `m`, rank drop `m mod 2`.
pub fn cameral_double_point(m: u64) -> RamificationEntry {
    RamificationEntry::new(m, m % 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeIdentity {
    pub num_roots: usize,
    pub rank: usize,
    pub coxeter_number: usize,
    pub degrees: Vec<usize>,
}

impl DegreeIdentity {
    /// `|Phi| = r h`.
    pub fn holds(&self) -> bool {
        self.num_roots == self.rank * self.coxeter_number
    }

    pub fn triple(&self) -> (usize, usize, usize) {
        (self.num_roots, self.rank, self.coxeter_number)
    }
}

pub fn degree_identity_check(rd: &RootDatum) -> Result<DegreeIdentity, ModuliError> {
    let id = DegreeIdentity {
        num_roots: rd.num_roots(),
        rank: rd.rank(),
        coxeter_number: weyl::coxeter_number(rd),
        degrees: weyl::invariant_degrees(rd)?,
    };
    assert!(id.holds(), "|Phi| = r h fails for {}", rd.dynkin());
    Ok(id)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> DynkinType {
        s.parse().unwrap()
    }

    fn form(t: &str, name: &str) -> GroupForm {
        enumerate_forms(ty(t))
            .into_iter()
            .find(|f| f.display_name() == name)
            .unwrap()
    }

    #[test]
    fn presentations() {
        let spin10 = GroupForm::simply_connected(ty("D5"));
        let p = aut_presentation(&spin10, &[], 5).unwrap();
        assert_eq!(p.render(), "Pic(C)[4] ⋊ (Z/2Z × Aut(C))");
        assert_eq!(p.actions[1].1, TorsionAction::Dualization);
        assert_eq!(p.torsion_group(), "(Z/4Z)^10");

        let e6 = GroupForm::adjoint(ty("E6"));
        assert_eq!(aut_presentation(&e6, &[1], 4).unwrap().render(), "Aut(C)");
        assert_eq!(aut_presentation(&e6, &[0], 4).unwrap().render(), "Z/2Z × Aut(C)");
        let e8 = GroupForm::simply_connected(ty("E8"));
        assert_eq!(aut_presentation(&e8, &[], 4).unwrap().render(), "Aut(C)");
        let spin8 = GroupForm::simply_connected(ty("D4"));
        assert_eq!(
            aut_presentation(&spin8, &[], 4).unwrap().render(),
            "(Pic(C)[2])^2 ⋊ (S₃ × Aut(C))"
        );
    }

    #[test]
    fn presentation_errors() {
        let sl2 = GroupForm::simply_connected(ty("A1"));
        assert_eq!(
            aut_presentation(&sl2, &[], 3),
            Err(ModuliError::GenusOutOfRange { genus: 3, min: 4 })
        );
        let psl2 = GroupForm::adjoint(ty("A1"));
        assert!(matches!(
            aut_presentation(&psl2, &[2], 4),
            Err(ModuliError::Group(GroupError::InvalidDegree { .. }))
        ));
    }

    #[test]
    fn torsion_is_independent_of_delta() {
        for t in ["A5", "D4", "D6", "E6"] {
            for gf in enumerate_forms(ty(t)) {
                let pi1 = gf.fundamental_group();
                let base = aut_presentation(&gf, &pi1.zero(), 6).unwrap();
                assert_eq!(base.outer_part, gf.out_group());
                let chars = gf.center_char_group().order();
                assert_eq!(base.torsion_order(), num_bigint::BigUint::from(chars).pow(12));
                for d in pi1.elements() {
                    let p = aut_presentation(&gf, &d, 6).unwrap();
                    assert_eq!(p.torsion_part, base.torsion_part);
                }
            }
        }
    }

    #[test]
    fn row_blocks() {
        let lines = |t: &str| -> Vec<String> {
            enumerate_forms(ty(t))
                .iter()
                .flat_map(|f| form_rows(f, 4).unwrap())
                .map(|r| r.line())
                .collect()
        };
        assert_eq!(
            lines("A1"),
            ["A1 | SL_2 | δ∈{0} | Pic(C)[2] ⋊ Aut(C)", "A1 | PSL_2 | δ∈Z/2Z | Aut(C)"]
        );
        assert_eq!(
            lines("D4"),
            [
                "D4 | Spin_8 | δ∈{0} | (Pic(C)[2])^2 ⋊ (S₃ × Aut(C))",
                "D4 | SO_8 | δ∈Z/2Z | Pic(C)[2] ⋊ (Z/2Z × Aut(C))",
                "D4 | PSO_8 | δ=(0,0)∈(Z/2Z)^2 | S₃ × Aut(C)",
                "D4 | PSO_8 | δ≠(0,0)∈(Z/2Z)^2 | Z/2Z × Aut(C)",
            ]
        );
        assert_eq!(
            lines("A5")[2..],
            [
                "A5 | SL_6/mu_3 | 2δ=0∈Z/3Z | Pic(C)[2] ⋊ (Z/2Z × Aut(C))",
                "A5 | SL_6/mu_3 | 2δ≠0∈Z/3Z | Pic(C)[2] ⋊ Aut(C)",
                "A5 | PSL_6 | 2δ=0∈Z/6Z | Z/2Z × Aut(C)",
                "A5 | PSL_6 | 2δ≠0∈Z/6Z | Aut(C)",
            ]
        );
    }

    #[test]
    fn rows_are_unions_of_orbits() {
        for t in ["A7", "D5", "D6", "E6"] {
            for gf in enumerate_forms(ty(t)) {
                let rows = form_rows(&gf, 4).unwrap();
                let orbits = gf.out_action_on_pi1().orbits();
                let mut covered = 0;
                for row in &rows {
                    let set: BTreeSet<Element> = row.deltas.iter().cloned().collect();
                    for o in &orbits {
                        assert!(o.is_subset(&set) || o.is_disjoint(&set));
                    }
                    covered += set.len() as u64;
                }
                assert_eq!(covered, gf.fundamental_group().order());
            }
        }
    }

    #[test]
    fn latex_names() {
        assert_eq!(group_name_latex(&form("A3", "SL_4/mu_2")), "\\mathrm{SL}_{4}/\\mu_{2}");
        assert_eq!(group_name_latex(&GroupForm::adjoint(ty("E6"))), "\\mathbb{E}_6^{\\mathrm{ad}}");
        assert_eq!(group_name_latex(&GroupForm::adjoint(ty("G2"))), "\\mathbb{G}_2");
    }

    #[test]
    fn hitchin_examples() {
        let sl2 = hitchin_report(&GroupForm::simply_connected(ty("A1")), 4).unwrap();
        assert_eq!((sl2.dim_basis, sl2.weights.clone(), sl2.coxeter_number), (9, vec![2], 2));
        assert_eq!((sl2.m_ab_components, sl2.n_extra_components), (1, 0));
        let g2 = hitchin_report(&GroupForm::simply_connected(ty("G2")), 4).unwrap();
        assert_eq!((g2.dim_basis, g2.weights.clone(), g2.m_ab_components), (42, vec![2, 6], 2));
        let e6 = hitchin_report(&GroupForm::simply_connected(ty("E6")), 5).unwrap();
        assert_eq!(e6.m_ab_components, 1);
        assert_eq!(e6.higgs_stack_dim, 2 * 78 * 4);
        assert!(hitchin_report(&GroupForm::simply_connected(ty("A1")), 1).is_err());
    }

    #[test]
    fn delta_examples() {
        for m in 1..=12u64 {
            let expected = if m % 2 == 0 { m / 2 } else { (m - 1) / 2 };
            assert_eq!(delta_local(&cameral_double_point(m)).unwrap(), expected);
        }
        assert_eq!(delta_local(&RamificationEntry::new(0, 0)).unwrap(), 0);
        assert!(delta_local(&RamificationEntry::new(3, 0)).is_err());
        assert!(delta_local(&RamificationEntry::new(1, 3)).is_err());
        assert_eq!(delta_total(&RamificationProfile::default()).unwrap(), 0);
        let p = RamificationProfile::parse("2:0,1:1,1:1").unwrap();
        assert_eq!(delta_total(&p).unwrap(), 1);
        let bounded = RamificationProfile {
            points: vec![RamificationEntry::new(4, 2)],
            rank: Some(1),
        };
        assert!(delta_total(&bounded).is_err());
        assert!(RamificationProfile::parse("3").is_err());
    }

    #[test]
    fn degree_identities() {
        let triple = |t: &str| degree_identity_check(&RootDatum::build(ty(t))).unwrap().triple();
        assert_eq!(triple("F4"), (48, 4, 12));
        assert_eq!(triple("A1"), (2, 1, 2));
        assert_eq!(triple("D5"), (40, 5, 8));
    }

    #[test]
    fn small_table() {
        let rows = classification_table(4, 2).unwrap();
        let types: BTreeSet<String> = rows.iter().map(|r| r.dynkin.to_string()).collect();
        assert_eq!(types.into_iter().collect::<Vec<_>>(), ["A1", "A2", "B2", "G2"]);
        assert!(classification_table(3, 2).is_err());
    }
}
