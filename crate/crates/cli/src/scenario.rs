//! Scenario files and their translation into library objects.
//!
//! A scenario is a JSON document
//! `{"format_version": 1, "kind": "...", "tolerance": 1e-9, "payload": {...}}`.
//! Parsing happens in three stages, each with its own error position: JSON
//! syntax (line and column), the envelope and kind-specific payload schema
//! (field path), and construction of the mathematical objects (field path plus
//! the library's message).

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use nccover::linalg::{self, CMat, C64};
use nccover::{
    AlgebraElement, Automorphism, ConnectionForm, FiniteGroup, GSet, GroupAction, LeftGModule, LocalSystem,
    MatrixAlgebra, RightGModule, Side,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    GaloisCheck,
    Cotensor,
    Borel,
    FlatBundle,
    KClass,
    TorusCover,
    TorusConnection,
    Descent,
}

impl Kind {
    pub const ALL: [Kind; 8] = [
        Kind::GaloisCheck,
        Kind::Cotensor,
        Kind::Borel,
        Kind::FlatBundle,
        Kind::KClass,
        Kind::TorusCover,
        Kind::TorusConnection,
        Kind::Descent,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::GaloisCheck => "galois-check",
            Kind::Cotensor => "cotensor",
            Kind::Borel => "borel",
            Kind::FlatBundle => "flat-bundle",
            Kind::KClass => "k-class",
            Kind::TorusCover => "torus-cover",
            Kind::TorusConnection => "torus-connection",
            Kind::Descent => "descent",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Anything wrong with a scenario file. Always maps to exit status 2.
#[derive(Debug, Clone, PartialEq)]
pub struct InputError {
    pub message: String,
}

impl InputError {
    pub fn new(message: impl Into<String>) -> Self {
        Self { message: message.into() }
    }

    fn at(field: &str, err: impl fmt::Display) -> Self {
        Self::new(format!("invalid value at `{field}`: {err}"))
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for InputError {}

type Built<T> = std::result::Result<T, InputError>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    format_version: u32,
    kind: Kind,
    #[serde(default)]
    tolerance: Option<f64>,
    payload: Value,
}

/// A parsed, schema-checked scenario. `raw` is the document as read, echoed
/// into the report.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub kind: Kind,
    pub tolerance: Option<f64>,
    pub payload: Payload,
    pub raw: Value,
}

#[derive(Debug, Clone)]
pub enum Payload {
    Galois(GaloisPayload),
    Cotensor(CotensorPayload),
    Borel(BorelPayload),
    FlatBundle(BundlePayload),
    KClass(BundlePayload),
    TorusCover(TorusParams),
    TorusConnection(ConnectionPayload),
    Descent(DescentPayload),
}

pub fn load_scenario(path: &Path) -> Built<Scenario> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::new(format!("cannot read {}: {e}", path.display())))?;
    parse_scenario(&text)
}

pub fn parse_scenario(text: &str) -> Built<Scenario> {
    let raw: Value = serde_json::from_str(text).map_err(|e| {
        InputError::new(format!("malformed JSON at line {}, column {}: {e}", e.line(), e.column()))
    })?;
    let envelope: Envelope = serde_path_to_error::deserialize(raw.clone()).map_err(|e| {
        let path = e.path().to_string();
        InputError::at(&path, e.into_inner())
    })?;
    if envelope.format_version != FORMAT_VERSION {
        return Err(InputError::at(
            "format_version",
            format!("unsupported version {}, expected {FORMAT_VERSION}", envelope.format_version),
        ));
    }
    if let Some(t) = envelope.tolerance {
        check_tolerance(t).map_err(|e| InputError::at("tolerance", e))?;
    }
    let p = envelope.payload;
    let payload = match envelope.kind {
        Kind::GaloisCheck => Payload::Galois(decode(p)?),
        Kind::Cotensor => Payload::Cotensor(decode(p)?),
        Kind::Borel => Payload::Borel(decode(p)?),
        Kind::FlatBundle => Payload::FlatBundle(decode(p)?),
        Kind::KClass => Payload::KClass(decode(p)?),
        Kind::TorusCover => Payload::TorusCover(decode(p)?),
        Kind::TorusConnection => Payload::TorusConnection(decode(p)?),
        Kind::Descent => Payload::Descent(decode(p)?),
    };
    Ok(Scenario {
        kind: envelope.kind,
        tolerance: envelope.tolerance,
        payload,
        raw,
    })
}

pub fn check_tolerance(t: f64) -> std::result::Result<(), String> {
    if t.is_finite() && t > 0.0 && t < 1.0 {
        Ok(())
    } else {
        Err(format!("tolerance must lie in (0, 1), got {t}"))
    }
}

fn decode<T: for<'de> Deserialize<'de>>(payload: Value) -> Built<T> {
    serde_path_to_error::deserialize(payload).map_err(|e| {
        let path = e.path().to_string();
        let field = if path == "." { "payload".to_string() } else { format!("payload.{path}") };
        InputError::at(&field, e.into_inner())
    })
}

// ---------------------------------------------------------------------------
// Literals

/// `[re, im]` or a bare real number.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum ComplexSpec {
    Real(f64),
    Pair([f64; 2]),
}

impl ComplexSpec {
    pub fn value(self) -> C64 {
        match self {
            ComplexSpec::Real(x) => linalg::c(x, 0.0),
            ComplexSpec::Pair([re, im]) => linalg::c(re, im),
        }
    }
}

/// Row-major nested list.
pub type MatrixSpec = Vec<Vec<ComplexSpec>>;

pub fn build_matrix(spec: &MatrixSpec, field: &str) -> Built<CMat> {
    let rows = spec.len();
    let cols = spec.first().map_or(0, Vec::len);
    if rows == 0 || cols != rows {
        return Err(InputError::at(field, format!("expected a nonempty square matrix, got {rows} rows")));
    }
    if let Some(i) = spec.iter().position(|r| r.len() != cols) {
        return Err(InputError::at(&format!("{field}[{i}]"), format!("row length differs from {cols}")));
    }
    Ok(CMat::from_fn(rows, cols, |i, j| spec[i][j].value()))
}

fn build_matrices(specs: &[MatrixSpec], field: &str) -> Built<Vec<CMat>> {
    specs
        .iter()
        .enumerate()
        .map(|(i, m)| build_matrix(m, &format!("{field}[{i}]")))
        .collect()
}

/// An element of a block algebra: one matrix per block, or the diagonal of a
/// commutative algebra `ℂᵏ`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Blocks(Vec<MatrixSpec>),
    Diagonal { diagonal: Vec<ComplexSpec> },
}

fn build_element(spec: &ElementSpec, algebra: &Arc<MatrixAlgebra>, field: &str) -> Built<AlgebraElement> {
    match spec {
        ElementSpec::Blocks(blocks) => {
            let blocks = build_matrices(blocks, field)?;
            AlgebraElement::from_blocks(algebra, blocks).map_err(|e| InputError::at(field, e))
        }
        ElementSpec::Diagonal { diagonal } => {
            let values: Vec<C64> = diagonal.iter().map(|z| z.value()).collect();
            AlgebraElement::diagonal(algebra, &values).map_err(|e| InputError::at(field, e))
        }
    }
}

// ---------------------------------------------------------------------------
// Groups and actions

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupSpec {
    Cyclic(usize),
    Product(Vec<GroupSpec>),
    Dihedral(usize),
    Symmetric(usize),
    Quaternion,
    /// Multiplication table with the identity at index 0.
    Table(Vec<Vec<usize>>),
}

pub fn build_group(spec: &GroupSpec, field: &str) -> Built<FiniteGroup> {
    let err = |e: nccover::Error| InputError::at(field, e);
    match spec {
        GroupSpec::Cyclic(k) => FiniteGroup::cyclic(*k).map_err(err),
        GroupSpec::Dihedral(n) => FiniteGroup::dihedral(*n).map_err(err),
        GroupSpec::Symmetric(n) => FiniteGroup::symmetric(*n).map_err(err),
        GroupSpec::Quaternion => Ok(FiniteGroup::quaternion()),
        GroupSpec::Table(t) => FiniteGroup::from_table(t.clone(), "table").map_err(err),
        GroupSpec::Product(factors) => {
            if factors.is_empty() {
                return Err(InputError::at(field, "a product needs at least one factor"));
            }
            let mut g = build_group(&factors[0], &format!("{field}.product[0]"))?;
            for (i, f) in factors.iter().enumerate().skip(1) {
                let h = build_group(f, &format!("{field}.product[{i}]"))?;
                g = FiniteGroup::product(&g, &h).map_err(err)?;
            }
            Ok(g)
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismSpec {
    /// Block permutation: block `i` is sent to block `permutation[i]`.
    pub permutation: Vec<usize>,
    /// Unitaries per target block; identity when omitted.
    #[serde(default)]
    pub unitaries: Option<Vec<MatrixSpec>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ActionSpec {
    /// `G` permuting `copies` copies of `ℂ^{|G|}` by left translation.
    Regular { group: GroupSpec, copies: usize },
    /// Block permutations per group element on `⊕ M_{blocks[i]}`; `blocks`
    /// defaults to all ones (a commutative algebra).
    Permutations {
        group: GroupSpec,
        #[serde(default)]
        blocks: Option<Vec<usize>>,
        perms: Vec<Vec<usize>>,
    },
    /// Arbitrary automorphisms, one per group element.
    Automorphisms {
        group: GroupSpec,
        blocks: Vec<usize>,
        elements: Vec<AutomorphismSpec>,
    },
    /// Conjugation `a ↦ W_g a W_g*` on `M_size`.
    Conjugation {
        group: GroupSpec,
        size: usize,
        unitaries: Vec<MatrixSpec>,
    },
}

pub fn build_action(spec: &ActionSpec, field: &str) -> Built<GroupAction> {
    let err = |e: nccover::Error| InputError::at(field, e);
    match spec {
        ActionSpec::Regular { group, copies } => {
            let g = build_group(group, &format!("{field}.regular.group"))?;
            GroupAction::regular(g, *copies).map_err(err)
        }
        ActionSpec::Permutations { group, blocks, perms } => {
            let g = build_group(group, &format!("{field}.permutations.group"))?;
            let sizes = match blocks {
                Some(b) => b.clone(),
                None => vec![1; perms.first().map_or(0, Vec::len)],
            };
            let algebra = algebra_for(&sizes, &format!("{field}.permutations.blocks"))?;
            GroupAction::by_permutations(g, algebra, perms.clone()).map_err(err)
        }
        ActionSpec::Automorphisms { group, blocks, elements } => {
            let g = build_group(group, &format!("{field}.automorphisms.group"))?;
            let algebra = algebra_for(blocks, &format!("{field}.automorphisms.blocks"))?;
            let autos = elements
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let at = format!("{field}.automorphisms.elements[{i}]");
                    match &a.unitaries {
                        None => Automorphism::permutation_only(&algebra, a.permutation.clone()),
                        Some(us) => Automorphism::new(&algebra, a.permutation.clone(), build_matrices(us, &at)?),
                    }
                    .map_err(|e| InputError::at(&at, e))
                })
                .collect::<Built<Vec<_>>>()?;
            GroupAction::new(g, algebra, autos).map_err(err)
        }
        ActionSpec::Conjugation { group, size, unitaries } => {
            let g = build_group(group, &format!("{field}.conjugation.group"))?;
            let algebra = algebra_for(&[*size], &format!("{field}.conjugation.size"))?;
            let us = build_matrices(unitaries, &format!("{field}.conjugation.unitaries"))?;
            GroupAction::by_conjugation(g, algebra, us).map_err(err)
        }
    }
}

fn algebra_for(sizes: &[usize], field: &str) -> Built<Arc<MatrixAlgebra>> {
    let label = sizes.iter().map(|n| format!("M{n}")).collect::<Vec<_>>().join("+");
    nccover::make_algebra(sizes, &label).map_err(|e| InputError::at(field, e))
}

// ---------------------------------------------------------------------------
// galois-check

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaloisPayload {
    pub action: ActionSpec,
    pub frame: FrameSpec,
    /// Extra elements whose inner products are cross-checked by the oracle.
    #[serde(default)]
    pub probes: Vec<ElementSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameSpec {
    /// The frame built automatically for free commutative actions.
    Canonical,
    Explicit { e: Vec<ElementSpec>, xi: Vec<ElementSpec> },
}

pub fn build_elements(specs: &[ElementSpec], algebra: &Arc<MatrixAlgebra>, field: &str) -> Built<Vec<AlgebraElement>> {
    specs
        .iter()
        .enumerate()
        .map(|(i, s)| build_element(s, algebra, &format!("{field}[{i}]")))
        .collect()
}

// ---------------------------------------------------------------------------
// cotensor

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CotensorPayload {
    pub group: GroupSpec,
    pub right: ModuleSpec,
    pub left: ModuleSpec,
}

/// A finite-dimensional unitary `G`-module. `matrices` lists one operator per
/// group element: `R_g` for right modules, `L_g` for left ones.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleSpec {
    Regular,
    Trivial(usize),
    Matrices(Vec<MatrixSpec>),
    Character(CharacterSpec),
    /// The algebra of an action, viewed as a module (`a·g = α_{g⁻¹}(a)` on the right).
    Action(ActionSpec),
    Sum(Vec<ModuleSpec>),
}

pub fn build_right_module(spec: &ModuleSpec, group: &FiniteGroup, tol: f64, field: &str) -> Built<RightGModule> {
    let err = |e: nccover::Error| InputError::at(field, e);
    match spec {
        ModuleSpec::Regular => Ok(RightGModule::regular(group)),
        ModuleSpec::Trivial(d) => nonzero(*d, field).map(|d| RightGModule::trivial(group, d)),
        ModuleSpec::Matrices(ms) => {
            RightGModule::new(group.clone(), build_matrices(ms, &format!("{field}.matrices"))?, tol).map_err(err)
        }
        ModuleSpec::Character(c) => {
            // Right operators of a one-dimensional character are its inverse values.
            let sys = build_character(c, group, &format!("{field}.character"))?;
            let ops = group.elements().map(|g| sys.matrix(group.inverse(g)).clone()).collect();
            RightGModule::new(group.clone(), ops, tol).map_err(err)
        }
        ModuleSpec::Action(a) => {
            let action = build_action(a, &format!("{field}.action"))?;
            same_group(action.group(), group, field)?;
            Ok(RightGModule::from_action(&action))
        }
        ModuleSpec::Sum(parts) => sum_of(parts, field, |s, f| build_right_module(s, group, tol, f), |a, b| {
            a.direct_sum(b).map_err(err)
        }),
    }
}

pub fn build_left_module(spec: &ModuleSpec, group: &FiniteGroup, tol: f64, field: &str) -> Built<LeftGModule> {
    let err = |e: nccover::Error| InputError::at(field, e);
    match spec {
        ModuleSpec::Regular => Ok(LeftGModule::regular(group)),
        ModuleSpec::Trivial(d) => nonzero(*d, field).map(|d| LeftGModule::trivial(group, d)),
        ModuleSpec::Matrices(ms) => {
            LeftGModule::new(group.clone(), build_matrices(ms, &format!("{field}.matrices"))?, tol).map_err(err)
        }
        ModuleSpec::Character(c) => Ok(build_character(c, group, &format!("{field}.character"))?.to_left_module()),
        ModuleSpec::Action(a) => {
            let action = build_action(a, &format!("{field}.action"))?;
            same_group(action.group(), group, field)?;
            Ok(LeftGModule::from_action(&action))
        }
        ModuleSpec::Sum(parts) => sum_of(parts, field, |s, f| build_left_module(s, group, tol, f), |a, b| {
            a.direct_sum(b).map_err(err)
        }),
    }
}

fn nonzero(d: usize, field: &str) -> Built<usize> {
    if d == 0 {
        Err(InputError::at(field, "dimension must be positive"))
    } else {
        Ok(d)
    }
}

fn sum_of<S, T>(
    parts: &[S],
    field: &str,
    build: impl Fn(&S, &str) -> Built<T>,
    add: impl Fn(&T, &T) -> Built<T>,
) -> Built<T> {
    let mut acc: Option<T> = None;
    for (i, p) in parts.iter().enumerate() {
        let x = build(p, &format!("{field}.sum[{i}]"))?;
        acc = Some(match acc {
            None => x,
            Some(a) => add(&a, &x)?,
        });
    }
    acc.ok_or_else(|| InputError::at(field, "a sum needs at least one summand"))
}

fn same_group(a: &FiniteGroup, b: &FiniteGroup, field: &str) -> Built<()> {
    if a.table() == b.table() {
        Ok(())
    } else {
        Err(InputError::at(field, "group does not match the scenario group (tables differ)"))
    }
}

// ---------------------------------------------------------------------------
// Characters and local systems

/// A character of `ℤ_k` (`[k, j]`, value `ζ_k^{jg}`) or of a product
/// `ℤ_{k₁} × ℤ_{k₂} × …` (`[[k₁, j₁], [k₂, j₂], …]`).
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum CharacterSpec {
    Cyclic([usize; 2]),
    Product(Vec<[usize; 2]>),
}

fn build_character(spec: &CharacterSpec, group: &FiniteGroup, field: &str) -> Built<LocalSystem> {
    let factors: Vec<[usize; 2]> = match spec {
        CharacterSpec::Cyclic(kj) => vec![*kj],
        CharacterSpec::Product(fs) => fs.clone(),
    };
    if factors.is_empty() {
        return Err(InputError::at(field, "a character needs at least one factor"));
    }
    let mut expected = FiniteGroup::cyclic(factors[0][0]).map_err(|e| InputError::at(field, e))?;
    for f in &factors[1..] {
        let z = FiniteGroup::cyclic(f[0]).map_err(|e| InputError::at(field, e))?;
        expected = FiniteGroup::product(&expected, &z).map_err(|e| InputError::at(field, e))?;
    }
    same_group(&expected, group, field)?;
    // Element index is mixed radix with the last factor fastest.
    let values: Vec<C64> = group
        .elements()
        .map(|mut g| {
            let mut z = linalg::c(1.0, 0.0);
            for &[k, j] in factors.iter().rev() {
                z *= linalg::root_of_unity(((g % k) * (j % k)) as i64, k);
                g /= k;
            }
            z
        })
        .collect();
    Ok(LocalSystem::from_character(group, &values))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemSpec {
    Trivial(usize),
    Character(CharacterSpec),
    /// One unitary per group element.
    Matrices(Vec<MatrixSpec>),
    Sum(Vec<SystemSpec>),
}

pub fn build_system(spec: &SystemSpec, group: &FiniteGroup, tol: f64, field: &str) -> Built<LocalSystem> {
    let err = |e: nccover::Error| InputError::at(field, e);
    match spec {
        SystemSpec::Trivial(n) => LocalSystem::trivial(group, nonzero(*n, field)?).map_err(err),
        SystemSpec::Character(c) => build_character(c, group, &format!("{field}.character")),
        SystemSpec::Matrices(ms) => {
            LocalSystem::new(group.clone(), build_matrices(ms, &format!("{field}.matrices"))?, tol).map_err(err)
        }
        SystemSpec::Sum(parts) => sum_of(parts, field, |s, f| build_system(s, group, tol, f), |a, b| {
            a.direct_sum(b).map_err(err)
        }),
    }
}

// ---------------------------------------------------------------------------
// borel, flat-bundle, k-class

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BorelPayload {
    /// Commutative case: functions on a right `G`-set `X` and a left `G`-set `Y`.
    Gsets {
        group: GroupSpec,
        right: GSetSpec,
        left: GSetSpec,
    },
    /// General case: a right action on `Ã` (given as a left action, converted by
    /// `a·g = α_{g⁻¹}(a)`) and a left action on `B`.
    Actions { right: ActionSpec, left: ActionSpec },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GSetSpec {
    Regular,
    Trivial(usize),
    /// Cosets of the subgroup generated by these elements.
    Cosets(Vec<usize>),
    /// One permutation of the points per group element.
    Perms(Vec<Vec<usize>>),
    Union(Vec<GSetSpec>),
}

pub fn build_gset(spec: &GSetSpec, group: &FiniteGroup, side: Side, field: &str) -> Built<GSet> {
    let err = |e: nccover::Error| InputError::at(field, e);
    match spec {
        GSetSpec::Regular => Ok(GSet::regular(group, side)),
        GSetSpec::Trivial(n) => GSet::trivial(group, side, nonzero(*n, field)?).map_err(err),
        GSetSpec::Cosets(gens) => {
            if let Some(&g) = gens.iter().find(|&&g| g >= group.order()) {
                return Err(InputError::at(field, format!("element {g} is outside the group")));
            }
            nccover::random::coset_space(group, gens, side).map_err(err)
        }
        GSetSpec::Perms(p) => GSet::new(group.clone(), side, p.clone()).map_err(err),
        GSetSpec::Union(parts) => sum_of(parts, field, |s, f| build_gset(s, group, side, f), |a, b| {
            a.disjoint_union(b).map_err(err)
        }),
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundlePayload {
    pub action: ActionSpec,
    pub system: SystemSpec,
}

// ---------------------------------------------------------------------------
// Torus

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusParams {
    pub q: usize,
    pub p: i64,
    pub m: usize,
    pub n: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConnectionSpec {
    /// The rank-4 antisymmetric connection with coefficients `c_u`, `c_v`.
    Standard { c_u: f64, c_v: f64 },
    Matrices { u: MatrixSpec, v: MatrixSpec },
}

pub fn build_connection(spec: &ConnectionSpec, field: &str) -> Built<ConnectionForm> {
    match spec {
        ConnectionSpec::Standard { c_u, c_v } => {
            if !(c_u.is_finite() && c_v.is_finite()) {
                return Err(InputError::at(field, "coefficients must be finite"));
            }
            Ok(ConnectionForm::standard(*c_u, *c_v))
        }
        ConnectionSpec::Matrices { u, v } => {
            let u = build_matrix(u, &format!("{field}.matrices.u"))?;
            let v = build_matrix(v, &format!("{field}.matrices.v"))?;
            ConnectionForm::new(u, v).map_err(|e| InputError::at(field, e))
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionPayload {
    pub q: usize,
    pub p: i64,
    pub m: usize,
    pub n: usize,
    pub connection: ConnectionSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescentPayload {
    pub q: usize,
    pub p: i64,
    pub m: usize,
    pub n: usize,
    pub connection: ConnectionSpec,
    /// Local system of the covering group `ℤ_m × ℤ_n`.
    pub system: SystemSpec,
}
