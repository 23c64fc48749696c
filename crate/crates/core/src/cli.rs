//! Command-line front end: `report`, `table`, `delta` and `rootdata`.
//!
//! Exit codes: 0 on success, 1 on usage or parse errors, 2 when the input
//! is well formed but mathematically inconsistent (a ramification entry
//! with the wrong parity, say).
//!
//! Output is plain unless `MODULI_AUT_COLOR=always`, which turns on ANSI
//! bold headings in text output.

use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finabel::{Element, FiniteAbelianGroup, GroupMap};
use crate::groupclass::{enumerate_forms, GroupForm, OutKind};
use crate::moduli::{
    self, aut_presentation, classification_table, delta_local, hitchin_report, HitchinReport, ModuliError,
    RamificationProfile, TableRow, MIN_GENUS, MIN_HITCHIN_GENUS,
};
use crate::rootdata::{DynkinType, Family, RootDatum, DEFAULT_MAX_RANK};
use crate::weyl;

pub const COLOR_ENV: &str = "MODULI_AUT_COLOR";

/// Largest rank for which `rootdata` reports `|W|`.
pub const WEYL_ORDER_MAX_RANK: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "moduli-aut", version, about = "Automorphism groups of moduli of G-bundles on curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants of one group and degree.
    Report {
        /// `<TYPE><rank>:<form>` with form sc, adjoint, so, semispin or mu<k>;
        /// names like Spin8, PSL4 or Sp6 also work.
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = MIN_GENUS)]
        genus: u32,
        /// Coordinates of the degree in `pi_1(G)`, comma separated.
        #[arg(long)]
        delta: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The full classification table.
    Table {
        #[arg(long, default_value_t = MIN_GENUS)]
        genus: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_RANK)]
        max_rank: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The delta-invariant of a ramification profile `deg:drop,deg:drop,...`.
    Delta {
        #[arg(long, allow_hyphen_values = true)]
        profile: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Roots, Cartan matrix, degrees and orbit counts of a Dynkin type.
    Rootdata {
        #[arg(long = "type")]
        dynkin: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Inconsistent(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Inconsistent(_) => 2,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse group `{input}`: {reason} (offending token `{token}`)")]
pub struct SpecError {
    pub input: String,
    pub token: String,
    pub reason: String,
}

fn spec_error(input: &str, token: &str, reason: impl Into<String>) -> SpecError {
    SpecError {
        input: input.to_string(),
        token: token.to_string(),
        reason: reason.into(),
    }
}

fn find_form(t: DynkinType, name: &str) -> Option<GroupForm> {
    enumerate_forms(t).into_iter().find(|f| f.display_name() == name)
}

/// Parses `<TYPE><rank>[:<form>]` or a classical name such as `Spin8`,
/// `SO_10`, `PSL4`, `SL6/mu3`, `Sp6`, `E6_ad`.
pub fn parse_group_spec(input: &str) -> Result<GroupForm, SpecError> {
    let s = input.trim();
    if let Some((ty, form)) = s.split_once(':') {
        let t: DynkinType = ty
            .trim()
            .parse()
            .map_err(|e| spec_error(input, ty, format!("{e}")))?;
        return form_of_type(input, t, form.trim());
    }
    if let Ok(t) = s.parse::<DynkinType>() {
        return Ok(GroupForm::simply_connected(t));
    }
    parse_alias(input, s)
}

fn form_of_type(input: &str, t: DynkinType, form: &str) -> Result<GroupForm, SpecError> {
    let lower = form.to_ascii_lowercase();
    let n = t.rank();
    match lower.as_str() {
        "sc" | "simply-connected" => Ok(GroupForm::simply_connected(t)),
        "adjoint" | "ad" => Ok(GroupForm::adjoint(t)),
        "so" => match t.family() {
            Family::B => Ok(GroupForm::adjoint(t)),
            Family::D => Ok(find_form(t, &format!("SO_{}", 2 * n)).expect("SO exists for D_n")),
            _ => Err(spec_error(input, form, "`so` applies to types B and D")),
        },
        "semispin" => match t.family() {
            Family::D if n == 4 => Ok(find_form(t, "SO_8").expect("SO_8 exists")),
            Family::D if n % 2 == 0 => Ok(find_form(t, &format!("SemiSpin_{}", 2 * n)).expect("SemiSpin exists")),
            _ => Err(spec_error(input, form, "`semispin` applies to D_n with n even")),
        },
        _ => {
            let k: u64 = lower
                .strip_prefix("mu")
                .map(|k| k.trim_start_matches('_'))
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| spec_error(input, form, "expected sc, adjoint, so, semispin or mu<k>"))?;
            let candidates: Vec<GroupForm> = enumerate_forms(t).into_iter().filter(|f| f.mu().order() == k).collect();
            match candidates.len() {
                1 => Ok(candidates.into_iter().next().expect("one candidate")),
                0 => Err(spec_error(input, form, format!("{t} has no central subgroup of order {k}"))),
                _ => Err(spec_error(
                    input,
                    form,
                    format!("{t} has several central subgroups of order {k}; use so or semispin"),
                )),
            }
        }
    }
}

fn parse_alias(input: &str, s: &str) -> Result<GroupForm, SpecError> {
    if let Some((e, kind)) = s.split_once('_') {
        if e.starts_with(['E', 'e']) && (kind == "sc" || kind == "ad") {
            let t: DynkinType = e.parse().map_err(|err| spec_error(input, e, format!("{err}")))?;
            return form_of_type(input, t, kind);
        }
    }
    let (base, quotient) = match s.split_once('/') {
        Some((b, q)) => (b, Some(q)),
        None => (s, None),
    };
    let split = base
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| spec_error(input, s, "expected <TYPE><rank>:<form> or a name such as Spin8"))?;
    let (head, digits) = base.split_at(split);
    let head = head.trim_end_matches('_');
    let m: usize = digits
        .parse()
        .map_err(|_| spec_error(input, digits, "expected an integer"))?;
    let ty = |family: Family, rank: usize| {
        DynkinType::new(family, rank).map_err(|e| spec_error(input, base, format!("{e}")))
    };
    let even = |m: usize| {
        if m % 2 == 0 {
            Ok(m / 2)
        } else {
            Err(spec_error(input, digits, "expected an even dimension"))
        }
    };
    let odd = |m: usize| {
        if m % 2 == 1 {
            Ok(m / 2)
        } else {
            Err(spec_error(input, digits, "expected an odd dimension"))
        }
    };
    let form = match head.to_ascii_lowercase().as_str() {
        "sl" if m >= 2 => {
            let t = ty(Family::A, m - 1)?;
            match quotient {
                None => return Ok(GroupForm::simply_connected(t)),
                Some(q) => return form_of_type(input, t, q),
            }
        }
        "psl" if m >= 2 => return Ok(GroupForm::adjoint(ty(Family::A, m - 1)?)),
        "spin" if m % 2 == 1 => GroupForm::simply_connected(ty(Family::B, odd(m)?)?),
        "spin" => GroupForm::simply_connected(ty(Family::D, even(m)?)?),
        "so" if m % 2 == 1 => GroupForm::adjoint(ty(Family::B, odd(m)?)?),
        "so" => form_of_type(input, ty(Family::D, even(m)?)?, "so")?,
        "semispin" => form_of_type(input, ty(Family::D, even(m)?)?, "semispin")?,
        "pso" => GroupForm::adjoint(ty(Family::D, even(m)?)?),
        "sp" => GroupForm::simply_connected(ty(Family::C, even(m)?)?),
        "psp" => GroupForm::adjoint(ty(Family::C, even(m)?)?),
        _ => return Err(spec_error(input, head, "unknown group name")),
    };
    match quotient {
        None => Ok(form),
        Some(q) => Err(spec_error(input, q, "quotients are only accepted after SL")),
    }
}

/// Parses comma-separated coordinates of `delta`; an empty string is zero.
pub fn parse_delta(group: &FiniteAbelianGroup, s: &str) -> Result<Element, String> {
    group.parse_element(s).ok_or_else(|| invalid_delta_message(group, s))
}

fn invalid_delta_message(group: &FiniteAbelianGroup, s: &str) -> String {
    let valid: Vec<String> = group.elements().iter().map(|x| group.format_element(x)).collect();
    let listed = if group.is_trivial() {
        "0 (or empty)".to_string()
    } else {
        valid.join(" ")
    };
    format!("invalid degree `{s}` for π₁(G) = {group}; valid values: {listed}")
}

/// Whether a value was checked against the published classification or
/// derived here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Reproduces an entry of the published classification tables.
    Tabulated,
    /// Computed here, checked only by independent computation.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceNote {
    pub field: String,
    pub provenance: Provenance,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutElementDoc {
    pub name: String,
    pub on_pi1: GroupMap,
    pub on_center_chars: GroupMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub delta: Element,
    pub delta_text: String,
    pub out_stabilizer: OutKind,
    pub torsion_group: String,
    pub text: String,
    pub latex: String,
    pub actions: Vec<(String, moduli::TorsionAction)>,
}

/// Everything `report` knows about one group and degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub group: String,
    pub dynkin: DynkinType,
    pub mu: FiniteAbelianGroup,
    pub pi1: FiniteAbelianGroup,
    pub center_chars: FiniteAbelianGroup,
    pub out_kind: OutKind,
    pub out_elements: Vec<OutElementDoc>,
    pub genus: u32,
    pub presentation: Option<PresentationDoc>,
    pub hitchin: HitchinReport,
    pub warnings: Vec<String>,
    pub provenance: Vec<ProvenanceNote>,
}

fn note(field: &str, provenance: Provenance, note: &str) -> ProvenanceNote {
    ProvenanceNote {
        field: field.to_string(),
        provenance,
        note: note.to_string(),
    }
}

pub fn build_report(gf: &GroupForm, genus: u32, delta: &Element) -> Result<ReportDocument, CliError> {
    if genus < MIN_HITCHIN_GENUS {
        return Err(CliError::Usage(format!("genus must be at least {MIN_HITCHIN_GENUS}")));
    }
    let out = gf.out_group();
    let mut warnings = Vec::new();
    let presentation = if genus >= MIN_GENUS {
        let p = aut_presentation(gf, delta, genus).map_err(|e| CliError::Usage(e.to_string()))?;
        Some(PresentationDoc {
            delta: delta.clone(),
            delta_text: out.pi1.format_element(delta),
            out_stabilizer: p.outer_part.kind,
            torsion_group: p.torsion_group(),
            text: p.render(),
            latex: p.latex(),
            actions: p.actions.clone(),
        })
    } else {
        warnings.push(format!(
            "genus {genus} < {MIN_GENUS}: the automorphism group is not described, only Hitchin data is reported"
        ));
        None
    };
    let hitchin = hitchin_report(gf, genus).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(ReportDocument {
        group: gf.display_name().to_string(),
        dynkin: gf.dynkin(),
        mu: gf.mu().isomorphism_type(),
        pi1: out.pi1.clone(),
        center_chars: out.center_chars.clone(),
        out_kind: out.kind,
        out_elements: out
            .elements
            .iter()
            .map(|e| OutElementDoc {
                name: e.name.clone(),
                on_pi1: e.on_pi1.clone(),
                on_center_chars: e.on_center_chars.clone(),
            })
            .collect(),
        genus,
        presentation,
        hitchin,
        warnings,
        provenance: vec![
            note("pi1", Provenance::Tabulated, "lattice quotient X_*(T)/Q^v"),
            note("center_chars", Provenance::Tabulated, "lattice quotient X^*(T)/Q"),
            note("out_kind", Provenance::Tabulated, "diagram symmetries preserving mu"),
            note("presentation", Provenance::Tabulated, "H^1(C,Z(G)) ⋊ (Out(G,δ) × Aut(C))"),
            note("hitchin.dim_basis", Provenance::Derived, "Riemann-Roch, checked against dim G (g-1)"),
            note("hitchin.m_ab_components", Provenance::Derived, "Weyl orbits on roots"),
            note(
                "hitchin.n_extra_components",
                Provenance::Derived,
                "Weyl orbits on pairs of distinct root hyperplanes; root_pair_orbits counts ordered pairs of roots",
            ),
        ],
    })
}

struct Style {
    color: bool,
}

impl Style {
    fn from_env() -> Self {
        Style {
            color: std::env::var(COLOR_ENV).map(|v| v == "always").unwrap_or(false),
        }
    }

    fn heading(&self, s: &str) -> String {
        if self.color {
            format!("\x1b[1m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }
}

fn group_or_braces(g: &FiniteAbelianGroup) -> String {
    g.to_string()
}

fn render_report_text(doc: &ReportDocument, style: &Style) -> String {
    let mut s = String::new();
    let names: Vec<&str> = doc.out_elements.iter().map(|e| e.name.as_str()).collect();
    let _ = writeln!(s, "{}", style.heading(&format!("{} (type {})", doc.group, doc.dynkin)));
    let _ = writeln!(s, "  mu              {}", group_or_braces(&doc.mu));
    let _ = writeln!(s, "  π₁(G)           {}", group_or_braces(&doc.pi1));
    let _ = writeln!(s, "  Hom(Z(G),G_m)   {}", group_or_braces(&doc.center_chars));
    let _ = writeln!(s, "  Out(G)          {} [{}]", doc.out_kind, names.join(", "));
    let _ = writeln!(s, "  genus           {}", doc.genus);
    for w in &doc.warnings {
        let _ = writeln!(s, "  warning: {w}");
    }
    if let Some(p) = &doc.presentation {
        let _ = writeln!(s, "{}", style.heading("Automorphisms"));
        let _ = writeln!(s, "  δ               {}", p.delta_text);
        let _ = writeln!(s, "  Out(G,δ)        {}", p.out_stabilizer);
        let _ = writeln!(s, "  H¹(C,Z(G))      {}", p.torsion_group);
        let _ = writeln!(s, "  Aut             {}", p.text);
    }
    let h = &doc.hitchin;
    let _ = writeln!(s, "{}", style.heading("Hitchin fibration"));
    let _ = writeln!(s, "  dim G           {}", h.dim_g);
    let _ = writeln!(s, "  weights         {:?}", h.weights);
    let _ = writeln!(s, "  Coxeter number  {}", h.coxeter_number);
    let _ = writeln!(s, "  dim 𝔸           {}", h.dim_basis);
    let _ = writeln!(s, "  fiber dim       {}", h.fiber_dim);
    let _ = writeln!(s, "  Higgs stack dim {}", h.higgs_stack_dim);
    let _ = writeln!(s, "  m (𝔇^ab)        {}", h.m_ab_components);
    let _ = writeln!(s, "  n (𝔇^extra)     {}", h.n_extra_components);
    if let Some(k) = h.root_pair_orbits {
        let _ = writeln!(s, "  Φ×Φ orbits      {k}");
    }
    s
}

fn render_report_latex(doc: &ReportDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "\\begin{{tabular}}{{|l|l|}}\\hline");
    let _ = writeln!(s, "$G$ & {}\\\\", doc.group.replace('_', "\\_"));
    if let Some(p) = &doc.presentation {
        let _ = writeln!(s, "$\\delta$ & ${}$\\\\", p.delta_text);
        let _ = writeln!(s, "$\\mathrm{{Aut}}$ & ${}$\\\\", p.latex);
    }
    let h = &doc.hitchin;
    let _ = writeln!(s, "$\\dim\\mathbb{{A}}$ & ${}$\\\\", h.dim_basis);
    let weights: Vec<String> = h.weights.iter().map(ToString::to_string).collect();
    let _ = writeln!(s, "weights & ${}$\\\\", weights.join(","));
    let _ = writeln!(s, "$m$ & ${}$\\\\", h.m_ab_components);
    let _ = writeln!(s, "$n$ & ${}$\\\\", h.n_extra_components);
    let _ = writeln!(s, "\\hline\\end{{tabular}}");
    s
}

/// The `table` command's JSON document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub genus: u32,
    pub max_rank: usize,
    pub rows: Vec<TableRow>,
}

pub fn render_table_text(rows: &[TableRow]) -> String {
    let mut s = String::new();
    let mut last: Option<DynkinType> = None;
    for r in rows {
        if last.is_some() && last != Some(r.dynkin) {
            s.push('\n');
        }
        last = Some(r.dynkin);
        let _ = writeln!(s, "{}", r.line());
    }
    s
}

fn type_latex(t: DynkinType) -> String {
    format!("{}_{{{}}}", t.family().letter(), t.rank())
}

/// Body of a four-column longtable, one `\hline` between type blocks.
pub fn render_table_latex(rows: &[TableRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "\\mathfrak g & G & \\delta\\in\\pi_1(G) & \\mathrm{{Aut}}(\\overline{{\\mathcal M}}^\\delta_G(C))\\\\\\hline"
    );
    let mut last: Option<DynkinType> = None;
    for r in rows {
        let first = last != Some(r.dynkin);
        if first && last.is_some() {
            let _ = writeln!(s, "\\hline");
        }
        last = Some(r.dynkin);
        let ty = if first { type_latex(r.dynkin) } else { String::new() };
        let _ = writeln!(
            s,
            "{ty} & {} & {} & {}\\\\",
            r.latex.group, r.latex.delta, r.latex.presentation
        );
    }
    let _ = writeln!(s, "\\hline");
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaPoint {
    pub deg: u64,
    pub drop: u64,
    pub delta: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaDocument {
    pub points: Vec<DeltaPoint>,
    pub total: u64,
}

pub fn build_delta(profile: &str) -> Result<DeltaDocument, CliError> {
    let profile = RamificationProfile::parse(profile).map_err(CliError::Usage)?;
    let mut points = Vec::new();
    for p in &profile.points {
        let d = delta_local(p).map_err(|e| match e {
            ModuliError::InconsistentProfile { .. } => CliError::Inconsistent(e.to_string()),
            other => CliError::Usage(other.to_string()),
        })?;
        points.push(DeltaPoint {
            deg: p.deg,
            drop: p.drop,
            delta: d,
        });
    }
    let total = points.iter().map(|p| p.delta).sum();
    Ok(DeltaDocument { points, total })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDataDocument {
    pub dynkin: DynkinType,
    pub rank: usize,
    pub ambient_dim: usize,
    pub num_roots: usize,
    pub simple_roots: Vec<String>,
    pub cartan: Vec<Vec<i64>>,
    pub roots: Vec<String>,
    pub degrees: Vec<usize>,
    pub exponents: Vec<usize>,
    pub coxeter_number: usize,
    /// Only for rank at most [`WEYL_ORDER_MAX_RANK`].
    pub weyl_order: Option<u128>,
    pub weight_classes: FiniteAbelianGroup,
    pub m_root_orbits: usize,
    pub n_hyperplane_pair_orbits: usize,
    pub root_pair_orbits: Option<usize>,
}

pub fn build_rootdata(t: DynkinType) -> Result<RootDataDocument, CliError> {
    let rd = RootDatum::build(t);
    let err = |e: weyl::WeylError| CliError::Inconsistent(e.to_string());
    let (n, pairs) = match weyl::orbits_on_hyperplane_pairs(&rd) {
        Ok(p) => (p.count(), Some(p.root_pair_orbits)),
        Err(weyl::WeylError::EmptyPairSet) => (0, None),
        Err(e) => return Err(err(e)),
    };
    let sc = crate::groupclass::SimplyConnected::get(t);
    Ok(RootDataDocument {
        dynkin: t,
        rank: rd.rank(),
        ambient_dim: rd.ambient_dim(),
        num_roots: rd.num_roots(),
        simple_roots: rd.simple_roots().iter().map(ToString::to_string).collect(),
        cartan: rd.cartan().to_vec(),
        roots: rd.roots().iter().map(ToString::to_string).collect(),
        degrees: weyl::invariant_degrees(&rd).map_err(err)?,
        exponents: weyl::exponents(&rd).map_err(err)?,
        coxeter_number: weyl::coxeter_number(&rd),
        weyl_order: (t.rank() <= WEYL_ORDER_MAX_RANK).then(|| weyl::weyl_group_order(rd.cartan())),
        weight_classes: sc.weight_classes().group().clone(),
        m_root_orbits: weyl::orbits_on_roots(&rd).count(),
        n_hyperplane_pair_orbits: n,
        root_pair_orbits: pairs,
    })
}

fn render_rootdata_text(doc: &RootDataDocument, style: &Style) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", style.heading(&format!("Root datum of type {}", doc.dynkin)));
    let _ = writeln!(s, "  rank            {}", doc.rank);
    let _ = writeln!(s, "  roots           {}", doc.num_roots);
    let _ = writeln!(s, "  simple roots    {}", doc.simple_roots.join(" "));
    let _ = writeln!(s, "  Cartan matrix");
    for row in &doc.cartan {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>3}")).collect();
        let _ = writeln!(s, "    {}", cells.join(""));
    }
    let _ = writeln!(s, "  degrees         {:?}", doc.degrees);
    let _ = writeln!(s, "  exponents       {:?}", doc.exponents);
    let _ = writeln!(s, "  Coxeter number  {}", doc.coxeter_number);
    if let Some(w) = doc.weyl_order {
        let _ = writeln!(s, "  |W|             {w}");
    }
    let _ = writeln!(s, "  P/Q             {}", doc.weight_classes);
    let _ = writeln!(s, "  m (root orbits) {}", doc.m_root_orbits);
    let _ = writeln!(s, "  n (pair orbits) {}", doc.n_hyperplane_pair_orbits);
    if let Some(k) = doc.root_pair_orbits {
        let _ = writeln!(s, "  Φ×Φ orbits      {k}");
    }
    s
}

fn render_rootdata_latex(doc: &RootDataDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "\\begin{{tabular}}{{|l|l|}}\\hline");
    let _ = writeln!(s, "type & ${}$\\\\", type_latex(doc.dynkin));
    let _ = writeln!(s, "$|\\Phi|$ & ${}$\\\\", doc.num_roots);
    let degrees: Vec<String> = doc.degrees.iter().map(ToString::to_string).collect();
    let _ = writeln!(s, "degrees & ${}$\\\\", degrees.join(","));
    let _ = writeln!(s, "$h$ & ${}$\\\\", doc.coxeter_number);
    if let Some(w) = doc.weyl_order {
        let _ = writeln!(s, "$|W|$ & ${w}$\\\\");
    }
    let _ = writeln!(s, "\\hline\\end{{tabular}}");
    s
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn execute(cli: Cli) -> Result<String, CliError> {
    let style = Style::from_env();
    match cli.command {
        Command::Report {
            group,
            genus,
            delta,
            format,
        } => {
            let gf = parse_group_spec(&group).map_err(|e| CliError::Usage(e.to_string()))?;
            let pi1 = gf.fundamental_group();
            let delta = match &delta {
                Some(d) => parse_delta(&pi1, d).map_err(CliError::Usage)?,
                None => pi1.zero(),
            };
            let doc = build_report(&gf, genus, &delta)?;
            Ok(match format {
                Format::Text => render_report_text(&doc, &style),
                Format::Json => json(&doc),
                Format::Latex => render_report_latex(&doc),
            })
        }
        Command::Table {
            genus,
            max_rank,
            format,
        } => {
            let rows = classification_table(genus, max_rank).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(match format {
                Format::Text => render_table_text(&rows),
                Format::Json => json(&TableDocument { genus, max_rank, rows }),
                Format::Latex => render_table_latex(&rows),
            })
        }
        Command::Delta { profile, format } => {
            let doc = build_delta(&profile)?;
            Ok(match format {
                Format::Json => json(&doc),
                Format::Text | Format::Latex => {
                    let mut s = String::new();
                    for (i, p) in doc.points.iter().enumerate() {
                        let _ = writeln!(s, "point {}: {}:{} -> δ_p = {}", i + 1, p.deg, p.drop, p.delta);
                    }
                    let _ = writeln!(s, "δ = {}", doc.total);
                    s
                }
            })
        }
        Command::Rootdata { dynkin, format } => {
            let t: DynkinType = dynkin
                .parse()
                .map_err(|e| CliError::Usage(format!("invalid type `{dynkin}`: {e}")))?;
            let doc = build_rootdata(t)?;
            Ok(match format {
                Format::Text => render_rootdata_text(&doc, &style),
                Format::Json => json(&doc),
                Format::Latex => render_rootdata_latex(&doc),
            })
        }
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn name(spec: &str) -> String {
        parse_group_spec(spec).unwrap().display_name().to_string()
    }

    #[test]
    fn group_specs() {
        assert_eq!(name("D4:adjoint"), "PSO_8");
        assert_eq!(name("A1:sc"), "SL_2");
        assert_eq!(name("G2"), "G2");
        assert_eq!(name("D6:semispin"), "SemiSpin_12");
        assert_eq!(name("D4:semispin"), "SO_8");
        assert_eq!(name("D5:so"), "SO_10");
        assert_eq!(name("B3:so"), "SO_7");
        assert_eq!(name("A5:mu3"), "SL_6/mu_3");
        assert_eq!(name("E6:ad"), "E6_ad");
        assert_eq!(name("Spin8"), "Spin_8");
        assert_eq!(name("Spin_9"), "Spin_9");
        assert_eq!(name("PSL4"), "PSL_4");
        assert_eq!(name("SL6/mu2"), "SL_6/mu_2");
        assert_eq!(name("Sp6"), "Sp_6");
        assert_eq!(name("PSO10"), "PSO_10");
        assert_eq!(name("SO12"), "SO_12");
        assert_eq!(name("E7_sc"), "E7_sc");
    }

    #[test]
    fn bad_group_specs() {
        let e = parse_group_spec("D6:mu2").unwrap_err();
        assert_eq!(e.token, "mu2");
        assert_eq!(parse_group_spec("A3:so").unwrap_err().token, "so");
        assert_eq!(parse_group_spec("X4:sc").unwrap_err().token, "X4");
        assert_eq!(parse_group_spec("A3:mu3").unwrap_err().token, "mu3");
        assert!(parse_group_spec("Spin7/mu2").is_err());
        assert!(parse_group_spec("Foo8").is_err());
        assert!(parse_group_spec("Sp5").is_err());
    }

    #[test]
    fn deltas() {
        let g = FiniteAbelianGroup::from_cyclic_orders(&[2, 2]);
        assert_eq!(parse_delta(&g, "1,0").unwrap(), vec![1, 0]);
        let e = parse_delta(&g, "2,0").unwrap_err();
        assert!(e.contains("(0,1)"), "{e}");
        assert_eq!(parse_delta(&FiniteAbelianGroup::trivial(), "0").unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn delta_documents() {
        assert_eq!(build_delta("4:0").unwrap().total, 2);
        assert_eq!(build_delta("3:1,1:1").unwrap().total, 1);
        assert_eq!(build_delta("3:0").unwrap_err().exit_code(), 2);
        assert_eq!(build_delta("x").unwrap_err().exit_code(), 1);
    }
}
