//! Finite groups acting on `⊕ M_{n_i}(ℂ)` by *-automorphisms, the averaging
//! conditional expectation and the fixed-point subalgebra `A^G`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, MatrixAlgebra};
use crate::error::{invalid, Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{self, CMat, CVec, C64};

/// A *-automorphism of `⊕ M_{n_i}(ℂ)`: block `i` is moved to block
/// `permutation[i]`, then conjugated by the unitary attached to its target.
#[derive(Debug, Clone, PartialEq)]
pub struct Automorphism {
    permutation: Vec<usize>,
    unitaries: Vec<CMat>,
}

impl Automorphism {
    pub fn new(algebra: &MatrixAlgebra, permutation: Vec<usize>, unitaries: Vec<CMat>) -> Result<Self> {
        let k = algebra.num_blocks();
        if permutation.len() != k {
            return invalid(format!("permutation has length {}, expected {k}", permutation.len()));
        }
        let mut seen = vec![false; k];
        for (i, &t) in permutation.iter().enumerate() {
            if t >= k || seen[t] {
                return invalid(format!("block permutation {permutation:?} is not a bijection"));
            }
            seen[t] = true;
            if algebra.block_sizes()[t] != algebra.block_sizes()[i] {
                return invalid(format!("block {i} cannot move to block {t} of a different size"));
            }
        }
        if unitaries.len() != k {
            return invalid(format!("expected {k} block unitaries, got {}", unitaries.len()));
        }
        for (i, (u, &n)) in unitaries.iter().zip(algebra.block_sizes()).enumerate() {
            if u.nrows() != n || u.ncols() != n {
                return invalid(format!("unitary for block {i} must be {n}x{n}"));
            }
        }
        Ok(Self {
            permutation,
            unitaries,
        })
    }

    pub fn identity(algebra: &MatrixAlgebra) -> Self {
        Self::permutation_only(algebra, (0..algebra.num_blocks()).collect())
            .expect("identity permutation is valid")
    }

    /// Pure block permutation with identity unitaries.
    pub fn permutation_only(algebra: &MatrixAlgebra, permutation: Vec<usize>) -> Result<Self> {
        let unitaries = algebra.block_sizes().iter().map(|&n| linalg::identity(n)).collect();
        Self::new(algebra, permutation, unitaries)
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn unitaries(&self) -> &[CMat] {
        &self.unitaries
    }

    pub fn apply(&self, a: &AlgebraElement) -> AlgebraElement {
        let mut blocks: Vec<CMat> = a.blocks().to_vec();
        for (i, b) in a.blocks().iter().enumerate() {
            let t = self.permutation[i];
            let u = &self.unitaries[t];
            blocks[t] = u * b * u.adjoint();
        }
        AlgebraElement::from_blocks(a.algebra(), blocks).expect("sizes preserved")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let permutation: Vec<usize> = other.permutation.iter().map(|&t| self.permutation[t]).collect();
        let mut unitaries = self.unitaries.clone();
        for &mid in &other.permutation {
            let t = self.permutation[mid];
            unitaries[t] = &self.unitaries[t] * &other.unitaries[mid];
        }
        Automorphism {
            permutation,
            unitaries,
        }
    }

    /// Dense matrix of the automorphism in the coordinate basis.
    pub fn matrix(&self, algebra: &MatrixAlgebra) -> CMat {
        let d = algebra.dimension();
        let mut m = CMat::zeros(d, d);
        for (i, &t) in self.permutation.iter().enumerate() {
            let u = &self.unitaries[t];
            let block = linalg::kron(u, &u.map(|z| z.conj()));
            let n2 = u.nrows() * u.nrows();
            m.view_mut((algebra.block_offset(t), algebra.block_offset(i)), (n2, n2))
                .copy_from(&block);
        }
        m
    }

    /// Frobenius distance between the induced linear maps, computed blockwise.
    pub fn distance(&self, other: &Automorphism) -> f64 {
        let mut sq = 0.0;
        for (&t1, &t2) in self.permutation.iter().zip(&other.permutation) {
            let u1 = &self.unitaries[t1];
            let u2 = &other.unitaries[t2];
            if t1 == t2 {
                let k1 = linalg::kron(u1, &u1.map(|z| z.conj()));
                let k2 = linalg::kron(u2, &u2.map(|z| z.conj()));
                sq += (k1 - k2).norm_squared();
            } else {
                sq += linalg::frobenius_norm(u1).powi(4) + linalg::frobenius_norm(u2).powi(4);
            }
        }
        sq.sqrt()
    }

    /// Largest defect `max_r ‖u_r‖² · |(U*U − I)_{su}|` of
    /// `α(E_rs)α(E_uv) = α(E_rs E_uv)` over matrix units, in closed form.
    fn multiplicativity_defect(&self) -> f64 {
        self.unitaries
            .iter()
            .map(|u| {
                let n = u.nrows();
                let gram = u.adjoint() * u - linalg::identity(n);
                let entry = gram.iter().map(|z| z.norm()).fold(0.0, f64::max);
                let col = (0..n).map(|r| u.column(r).norm()).fold(0.0, f64::max);
                entry * col * col
            })
            .fold(0.0, f64::max)
    }
}

/// An action of a finite group on a matrix algebra, `g ↦ α_g`.
#[derive(Debug, Clone)]
pub struct GroupAction {
    group: FiniteGroup,
    algebra: Arc<MatrixAlgebra>,
    automorphisms: Vec<Automorphism>,
}

impl GroupAction {
    /// Structural validation only; the homomorphism laws are checked by
    /// [`check`](Self::check).
    pub fn new(group: FiniteGroup, algebra: Arc<MatrixAlgebra>, automorphisms: Vec<Automorphism>) -> Result<Self> {
        if automorphisms.len() != group.order() {
            return invalid(format!(
                "expected {} automorphisms, got {}",
                group.order(),
                automorphisms.len()
            ));
        }
        for a in &automorphisms {
            // Re-run the structural checks for automorphisms built elsewhere.
            Automorphism::new(&algebra, a.permutation.clone(), a.unitaries.clone())?;
        }
        Ok(Self {
            group,
            algebra,
            automorphisms,
        })
    }

    pub fn trivial(group: FiniteGroup, algebra: Arc<MatrixAlgebra>) -> Self {
        let automorphisms = group.elements().map(|_| Automorphism::identity(&algebra)).collect();
        Self {
            group,
            algebra,
            automorphisms,
        }
    }

    /// Action by block permutations, one per group element.
    pub fn by_permutations(group: FiniteGroup, algebra: Arc<MatrixAlgebra>, perms: Vec<Vec<usize>>) -> Result<Self> {
        let automorphisms = perms
            .into_iter()
            .map(|p| Automorphism::permutation_only(&algebra, p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, algebra, automorphisms)
    }

    /// Inner action on a single block `M_n(ℂ)`: `α_g(a) = W_g a W_g*`.
    pub fn by_conjugation(group: FiniteGroup, algebra: Arc<MatrixAlgebra>, unitaries: Vec<CMat>) -> Result<Self> {
        if algebra.num_blocks() != 1 {
            return Err(Error::UnsupportedAlgebra(
                "conjugation shorthand needs a single-block algebra".into(),
            ));
        }
        let automorphisms = unitaries
            .into_iter()
            .map(|u| Automorphism::new(&algebra, vec![0], vec![u]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, algebra, automorphisms)
    }

    /// Free action of `G` on `ℂ^{|G|·copies}` = functions on `G × {0..copies}`,
    /// by left translation of the `G` factor. Point `(h, j)` has index `h·copies + j`.
    pub fn regular(group: FiniteGroup, copies: usize) -> Result<Self> {
        if copies == 0 {
            return invalid("copies must be positive");
        }
        let n = group.order();
        let algebra = Arc::new(MatrixAlgebra::commutative(
            n * copies,
            format!("C({}x{copies})", group.label()),
        )?);
        let perms = group
            .elements()
            .map(|g| {
                (0..n * copies)
                    .map(|x| group.mul(g, x / copies) * copies + x % copies)
                    .collect()
            })
            .collect();
        Self::by_permutations(group, algebra, perms)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn algebra(&self) -> &Arc<MatrixAlgebra> {
        &self.algebra
    }

    pub fn automorphism(&self, g: usize) -> &Automorphism {
        &self.automorphisms[g]
    }

    pub fn automorphisms(&self) -> &[Automorphism] {
        &self.automorphisms
    }

    /// `α_g(a)`.
    pub fn apply(&self, g: usize, a: &AlgebraElement) -> AlgebraElement {
        self.automorphisms[g].apply(a)
    }

    /// Right action `a·g := α_{g⁻¹}(a)`.
    pub fn apply_right(&self, a: &AlgebraElement, g: usize) -> AlgebraElement {
        self.apply(self.group.inverse(g), a)
    }

    /// Dense matrix of `α_g`.
    pub fn matrix(&self, g: usize) -> CMat {
        self.automorphisms[g].matrix(&self.algebra)
    }

    /// Exhaustive law check: `α_e = id`, `α_g∘α_h = α_{gh}` for all pairs,
    /// multiplicativity on matrix units, and `*`/norm preservation on a
    /// fixed pseudo-random probe element.
    pub fn check(&self, tol: f64) -> ActionReport {
        let mut violations = Vec::new();
        let id = Automorphism::identity(&self.algebra);
        let e = self.group.identity();
        let r = self.automorphisms[e].distance(&id);
        if r > tol {
            violations.push(LawViolation::new(Law::Identity, Some(e), None, r));
        }
        for g in self.group.elements() {
            for h in self.group.elements() {
                let composed = self.automorphisms[g].compose(&self.automorphisms[h]);
                let r = composed.distance(&self.automorphisms[self.group.mul(g, h)]);
                if r > tol {
                    violations.push(LawViolation::new(Law::Composition, Some(g), Some(h), r));
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let probe = crate::random::element(&self.algebra, &mut rng);
        let probe_norm = probe.operator_norm();
        for g in self.group.elements() {
            let alpha = &self.automorphisms[g];
            let r = alpha.multiplicativity_defect();
            if r > tol {
                violations.push(LawViolation::new(Law::Multiplicativity, Some(g), None, r));
            }
            let image = alpha.apply(&probe);
            let r = alpha
                .apply(&probe.adjoint())
                .distance(&image.adjoint())
                .expect("same algebra");
            if r > tol * probe_norm.max(1.0) {
                violations.push(LawViolation::new(Law::Adjoint, Some(g), None, r));
            }
            let r = (image.operator_norm() - probe_norm).abs();
            if r > tol * probe_norm.max(1.0) {
                violations.push(LawViolation::new(Law::Isometry, Some(g), None, r));
            }
        }
        ActionReport { violations }
    }

    /// `E(a) = (1/|G|) Σ_g α_g(a)`.
    pub fn conditional_expectation(&self, a: &AlgebraElement) -> AlgebraElement {
        let mut sum = AlgebraElement::zero(a.algebra());
        for alpha in &self.automorphisms {
            sum = sum.add(&alpha.apply(a)).expect("same algebra");
        }
        sum.scale(C64::from(1.0 / self.group.order() as f64))
    }

    /// Dense matrix of the conditional expectation.
    pub fn averaging_matrix(&self) -> CMat {
        let d = self.algebra.dimension();
        let mut m = CMat::zeros(d, d);
        for g in self.group.elements() {
            m += self.matrix(g);
        }
        m / C64::from(self.group.order() as f64)
    }

    /// `A^G` as the image of the averaging map, orthonormal in the
    /// Hilbert–Schmidt inner product.
    pub fn fixed_subalgebra(&self, tol: f64) -> FixedSubalgebra {
        let range = linalg::column_space(&self.averaging_matrix(), tol);
        let basis = range
            .iter()
            .map(|v| AlgebraElement::from_vector(&self.algebra, v).expect("dimension matches"))
            .collect();
        FixedSubalgebra {
            parent: Arc::clone(&self.algebra),
            basis,
            vectors: range,
        }
    }

    /// Point-freeness of a commutative action: no non-identity element fixes a point.
    pub fn is_free_on_spectrum(&self) -> Result<bool> {
        if !self.algebra.is_commutative() {
            return Err(Error::UnsupportedAlgebra(format!(
                "spectrum freeness is only defined for commutative algebras, got {}",
                self.algebra
            )));
        }
        Ok(self.group.nontrivial().all(|g| {
            let p = self.automorphisms[g].permutation();
            p.iter().enumerate().all(|(i, &t)| i != t)
        }))
    }

    /// Orbits of the block permutation action, each sorted, ordered by smallest member.
    pub fn block_orbits(&self) -> Vec<Vec<usize>> {
        let k = self.algebra.num_blocks();
        let mut seen = vec![false; k];
        let mut orbits = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut orbit: Vec<usize> = self
                .automorphisms
                .iter()
                .map(|a| a.permutation()[start])
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &x in &orbit {
                seen[x] = true;
            }
            orbits.push(orbit);
        }
        orbits
    }
}

/// Laws of a homomorphism `G → Aut(A)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    Identity,
    Composition,
    Multiplicativity,
    Adjoint,
    Isometry,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Identity => "identity",
            Law::Composition => "composition",
            Law::Multiplicativity => "multiplicativity",
            Law::Adjoint => "adjoint",
            Law::Isometry => "isometry",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LawViolation {
    pub law: Law,
    pub g: Option<usize>,
    pub h: Option<usize>,
    pub residual: f64,
}

impl LawViolation {
    fn new(law: Law, g: Option<usize>, h: Option<usize>, residual: f64) -> Self {
        Self { law, g, h, residual }
    }
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.g, self.h) {
            (Some(g), Some(h)) => write!(f, "{} fails at ({g}, {h}), residual {:.3e}", self.law, self.residual),
            (Some(g), None) => write!(f, "{} fails at {g}, residual {:.3e}", self.law, self.residual),
            _ => write!(f, "{} fails, residual {:.3e}", self.law, self.residual),
        }
    }
}

/// Result of [`GroupAction::check`]; empty when the action is valid.
#[derive(Debug, Clone, Default)]
pub struct ActionReport {
    pub violations: Vec<LawViolation>,
}

impl ActionReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.violations.iter().map(|v| v.residual).fold(0.0, f64::max)
    }
}

/// The fixed-point subalgebra `A^G`, held as an orthonormal basis of elements
/// of the parent algebra.
#[derive(Debug, Clone)]
pub struct FixedSubalgebra {
    parent: Arc<MatrixAlgebra>,
    basis: Vec<AlgebraElement>,
    vectors: Vec<CVec>,
}

/// A minimal central projection of a subalgebra together with the size `k`
/// of the matrix block `M_k(ℂ)` it cuts out.
#[derive(Debug, Clone)]
pub struct CentralBlock {
    pub projection: AlgebraElement,
    pub size: usize,
}

impl FixedSubalgebra {
    pub fn parent(&self) -> &Arc<MatrixAlgebra> {
        &self.parent
    }

    pub fn basis(&self) -> &[AlgebraElement] {
        &self.basis
    }

    /// Basis as coordinate vectors in the parent algebra.
    pub fn vectors(&self) -> &[CVec] {
        &self.vectors
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Hilbert–Schmidt distance from `a` to the subalgebra.
    pub fn residual(&self, a: &AlgebraElement) -> f64 {
        linalg::span_residual(&self.vectors, &a.to_vector())
    }

    /// Largest residual of `b_i b_j` and `b_i*` against the span.
    pub fn closure_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for x in &self.basis {
            worst = worst.max(self.residual(&x.adjoint()));
            for y in &self.basis {
                worst = worst.max(self.residual(&x.mul(y).expect("same algebra")));
            }
        }
        worst
    }

    /// Wedderburn decomposition `A^G ≅ ⊕_j M_{k_j}(ℂ)` by spectral
    /// decomposition of a generic self-adjoint central element.
    ///
    /// Blocks are ordered by comparing the coordinate vectors of their
    /// projections lexicographically.
    pub fn central_decomposition(&self, tol: f64) -> Result<Vec<CentralBlock>> {
        let d = self.dimension();
        let dim = self.parent.dimension();
        if d == 0 {
            return Ok(Vec::new());
        }
        // Center: coefficient vectors c with Σ c_k [b_k, b_l] = 0 for all l.
        let mut system = CMat::zeros(dim * d, d);
        for (k, bk) in self.basis.iter().enumerate() {
            for (l, bl) in self.basis.iter().enumerate() {
                let comm = bk.mul(bl).expect("same").sub(&bl.mul(bk).expect("same")).expect("same");
                system.view_mut((l * dim, k), (dim, 1)).copy_from(&comm.to_vector());
            }
        }
        let center: Vec<AlgebraElement> = linalg::null_space_scaled(&system, tol, 1.0)
            .iter()
            .map(|coeffs| {
                let mut z = AlgebraElement::zero(&self.parent);
                for (c, b) in coeffs.iter().zip(&self.basis) {
                    z = z.add(&b.scale(*c)).expect("same");
                }
                z
            })
            .collect();

        let mut rng = ChaCha8Rng::seed_from_u64(0xce17e5);
        for _attempt in 0..8 {
            let mut z = AlgebraElement::zero(&self.parent);
            for c in &center {
                // both Hermitian parts, so no direction of the center is lost
                let w: f64 = rng.random_range(0.5..1.5);
                let w2: f64 = rng.random_range(0.5..1.5);
                let re = c.add(&c.adjoint()).expect("same");
                let im = c.sub(&c.adjoint()).expect("same").scale(C64::new(0.0, 1.0));
                z = z.add(&re.scale(C64::from(w))).expect("same");
                z = z.add(&im.scale(C64::from(w2))).expect("same");
            }
            if let Some(blocks) = self.spectral_blocks(&z, center.len(), tol) {
                return Ok(blocks);
            }
        }
        Err(Error::InternalInconsistency(
            "could not split the fixed subalgebra into simple blocks".into(),
        ))
    }

    fn spectral_blocks(&self, z: &AlgebraElement, center_dim: usize, tol: f64) -> Option<Vec<CentralBlock>> {
        // Eigenpairs of every block of the parent, pooled.
        let mut pairs: Vec<(f64, usize, CVec)> = Vec::new();
        for (i, b) in z.blocks().iter().enumerate() {
            let herm = (b + b.adjoint()) * C64::from(0.5);
            let eig = herm.symmetric_eigen();
            for (j, &lam) in eig.eigenvalues.iter().enumerate() {
                pairs.push((lam, i, eig.eigenvectors.column(j).into_owned()));
            }
        }
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
        let scale = pairs.iter().map(|p| p.0.abs()).fold(1.0, f64::max);
        let cluster_gap = 1e-6 * scale;
        let mut clusters: Vec<Vec<&(f64, usize, CVec)>> = Vec::new();
        for p in &pairs {
            match clusters.last_mut() {
                Some(c) if (p.0 - c.last().expect("nonempty").0).abs() <= cluster_gap => c.push(p),
                _ => clusters.push(vec![p]),
            }
        }
        if clusters.len() != center_dim {
            return None;
        }
        let mut blocks = Vec::with_capacity(clusters.len());
        let mut total_sq = 0;
        for cl in &clusters {
            let mut mats: Vec<CMat> = self
                .parent
                .block_sizes()
                .iter()
                .map(|&n| CMat::zeros(n, n))
                .collect();
            for (_, i, v) in cl {
                mats[*i] += v * v.adjoint();
            }
            let projection = AlgebraElement::from_blocks(&self.parent, mats).expect("shapes");
            if self.residual(&projection) > 1e-6 {
                return None;
            }
            let images: Vec<CVec> = self
                .basis
                .iter()
                .map(|b| projection.mul(b).expect("same").to_vector())
                .collect();
            let r = linalg::rank(&linalg::columns_to_matrix(&images, self.parent.dimension()), tol);
            let k = (r as f64).sqrt().round() as usize;
            if k * k != r || k == 0 {
                return None;
            }
            total_sq += r;
            blocks.push(CentralBlock { projection, size: k });
        }
        if total_sq != self.dimension() {
            return None;
        }
        blocks.sort_by(|a, b| lex_compare(&a.projection.to_vector(), &b.projection.to_vector()));
        Some(blocks)
    }
}

fn lex_compare(a: &CVec, b: &CVec) -> Ordering {
    const EPS: f64 = 1e-9;
    for (x, y) in a.iter().zip(b.iter()) {
        for (p, q) in [(x.re, y.re), (x.im, y.im)] {
            if (p - q).abs() > EPS {
                // Larger leading weight sorts first.
                return q.partial_cmp(&p).unwrap_or(Ordering::Equal);
            }
        }
    }
    Ordering::Equal
}
