//! Local systems `ρ : G → U(n)`, the flat-bundle module `P = Ã □_G ℂⁿ` and
//! its class in `K₀(A)` for `A = Ã^G`.
//!
//! Coordinates on `Ã ⊗ ℂⁿ` are `a·n + x` for algebra coordinate `a` and
//! vector coordinate `x`.

use std::fmt;

use rand::Rng;

use crate::action::GroupAction;
use crate::cotensor::{cotensor_modules_with_tol, LeftGModule, RightGModule};
use crate::error::{invalid, Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{self, CMat, CVec, C64};

/// A unitary representation of a finite group.
#[derive(Debug, Clone)]
pub struct LocalSystem {
    group: FiniteGroup,
    matrices: Vec<CMat>,
    label: String,
}

impl LocalSystem {
    /// Checks `ρ(e) = Id` exactly, and unitarity and `ρ(g)ρ(h) = ρ(gh)` within `tol`.
    pub fn new(group: FiniteGroup, matrices: Vec<CMat>, tol: f64) -> Result<Self> {
        if matrices.len() != group.order() {
            return invalid(format!("expected {} matrices, got {}", group.order(), matrices.len()));
        }
        let n = matrices[0].nrows();
        if n == 0 {
            return invalid("local system must have positive dimension");
        }
        if let Some(g) = matrices.iter().position(|m| m.nrows() != n || m.ncols() != n) {
            return invalid(format!("matrix for element {g} must be {n}x{n}"));
        }
        if matrices[group.identity()] != CMat::identity(n, n) {
            return invalid("the identity element must map to the identity matrix exactly");
        }
        for (g, m) in matrices.iter().enumerate() {
            let r = linalg::frobenius_norm(&(m.adjoint() * m - CMat::identity(n, n)));
            if r > tol {
                return invalid(format!("matrix for element {g} is not unitary (residual {r:.3e})"));
            }
        }
        for g in group.elements() {
            for h in group.elements() {
                let r = linalg::frobenius_norm(&(&matrices[g] * &matrices[h] - &matrices[group.mul(g, h)]));
                if r > tol {
                    return invalid(format!("rho({g}) rho({h}) != rho({g}{h}) (residual {r:.3e})"));
                }
            }
        }
        Ok(Self {
            group,
            matrices,
            label: format!("rho(dim {n})"),
        })
    }

    pub fn trivial(group: &FiniteGroup, n: usize) -> Result<Self> {
        if n == 0 {
            return invalid("local system must have positive dimension");
        }
        Ok(Self {
            group: group.clone(),
            matrices: vec![CMat::identity(n, n); group.order()],
            label: format!("triv_{n}"),
        })
    }

    /// The character `g ↦ e^{2πi·jg/k}` of `ℤ_k`.
    pub fn character(k: usize, j: usize) -> Result<Self> {
        let group = FiniteGroup::cyclic(k)?;
        let matrices = group
            .elements()
            .map(|g| {
                if g == 0 {
                    CMat::identity(1, 1)
                } else {
                    CMat::from_element(1, 1, linalg::root_of_unity((j * g % k) as i64, k))
                }
            })
            .collect();
        Ok(Self {
            group,
            matrices,
            label: format!("chi_{j} of Z{k}"),
        })
    }

    /// One-dimensional system from a character table row.
    pub fn from_character(group: &FiniteGroup, values: &[C64]) -> Self {
        let matrices = group
            .elements()
            .map(|g| {
                if g == group.identity() {
                    CMat::identity(1, 1)
                } else {
                    CMat::from_element(1, 1, values[g])
                }
            })
            .collect();
        Self {
            group: group.clone(),
            matrices,
            label: "character".into(),
        }
    }

    pub fn direct_sum(&self, other: &LocalSystem) -> Result<Self> {
        crate::cotensor::same_group(&self.group, &other.group)?;
        let (p, q) = (self.dimension(), other.dimension());
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| {
                let mut m = CMat::zeros(p + q, p + q);
                m.view_mut((0, 0), (p, p)).copy_from(a);
                m.view_mut((p, p), (q, q)).copy_from(b);
                m
            })
            .collect();
        Ok(Self {
            group: self.group.clone(),
            matrices,
            label: format!("{} + {}", self.label, other.label),
        })
    }

    /// A random `n`-dimensional unitary representation of an abelian group:
    /// random characters on the diagonal, conjugated by a random unitary.
    pub fn random<R: Rng + ?Sized>(group: &FiniteGroup, n: usize, rng: &mut R) -> Result<Self> {
        if n == 0 {
            return invalid("local system must have positive dimension");
        }
        let chars = characters(group)?;
        let picks: Vec<&Vec<C64>> = (0..n).map(|_| &chars[rng.random_range(0..chars.len())]).collect();
        let w = crate::random::unitary(n, rng);
        let matrices = group
            .elements()
            .map(|g| {
                if g == group.identity() {
                    return CMat::identity(n, n);
                }
                let d = CVec::from_iterator(n, picks.iter().map(|chi| chi[g]));
                &w * CMat::from_diagonal(&d) * w.adjoint()
            })
            .collect();
        Ok(Self {
            group: group.clone(),
            matrices,
            label: format!("random(dim {n})"),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dimension(&self) -> usize {
        self.matrices[0].nrows()
    }

    pub fn matrix(&self, g: usize) -> &CMat {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[CMat] {
        &self.matrices
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn to_left_module(&self) -> LeftGModule {
        LeftGModule::new(self.group.clone(), self.matrices.clone(), f64::INFINITY).expect("validated on construction")
    }
}

/// All characters of an abelian group, each as a vector of values indexed
/// by group element. Found by trying every assignment of roots of unity of
/// the exponent to the generators.
pub fn characters(group: &FiniteGroup) -> Result<Vec<Vec<C64>>> {
    if !group.is_abelian() {
        return Err(Error::UnsupportedParameters(format!(
            "character enumeration needs an abelian group, got {group}"
        )));
    }
    let exponent = group.elements().map(|g| group.element_order(g)).max().unwrap_or(1);
    let gens = group.generators();
    let total = exponent.pow(gens.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let assignment: Vec<usize> = gens
            .iter()
            .map(|_| {
                let t = c % exponent;
                c /= exponent;
                t
            })
            .collect();
        // exponent of χ(g) in units of 2π/exponent, spread by breadth-first search
        let mut value: Vec<Option<usize>> = vec![None; group.order()];
        value[group.identity()] = Some(0);
        let mut queue = vec![group.identity()];
        let mut consistent = true;
        while let Some(x) = queue.pop() {
            let vx = value[x].expect("set before push");
            for (s, &t) in gens.iter().zip(&assignment) {
                let y = group.mul(x, *s);
                let vy = (vx + t) % exponent;
                match value[y] {
                    None => {
                        value[y] = Some(vy);
                        queue.push(y);
                    }
                    Some(v) if v != vy => consistent = false,
                    Some(_) => {}
                }
            }
        }
        if consistent {
            out.push(
                value
                    .iter()
                    .map(|v| linalg::root_of_unity(v.expect("generators span") as i64, exponent))
                    .collect(),
            );
        }
    }
    Ok(out)
}

/// `p(a ⊗ x) = (1/|G|) Σ_g (a·g) ⊗ ρ(g)⁻¹x = (1/|G|) Σ_h α_h(a) ⊗ ρ(h)x`.
pub fn averaging_projection(action: &GroupAction, system: &LocalSystem) -> Result<CMat> {
    crate::cotensor::same_group(action.group(), system.group())?;
    let d = action.algebra().dimension() * system.dimension();
    let mut p = CMat::zeros(d, d);
    for h in action.group().elements() {
        p += linalg::kron(&action.matrix(h), system.matrix(h));
    }
    Ok(p / C64::from(action.group().order() as f64))
}

/// `P = Ã □_G ℂⁿ` with its projection, orthonormal basis and `K₀` rank vector.
#[derive(Debug, Clone)]
pub struct FlatBundleModule {
    action: GroupAction,
    system: LocalSystem,
    projection: CMat,
    basis: Vec<CVec>,
    block_sizes: Vec<usize>,
    rank_data: Vec<i64>,
    cotensor_dimension: usize,
}

impl FlatBundleModule {
    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn system(&self) -> &LocalSystem {
        &self.system
    }

    pub fn projection(&self) -> &CMat {
        &self.projection
    }

    pub fn basis(&self) -> &[CVec] {
        &self.basis
    }

    /// Complex dimension of `P`.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the cotensor kernel computed for the cross-check.
    pub fn cotensor_dimension(&self) -> usize {
        self.cotensor_dimension
    }

    /// Sizes `k_j` of the simple blocks `M_{k_j}(ℂ)` of `A`.
    pub fn base_block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    /// Trace of a representing idempotent of `P` in each block of `A`, with
    /// the identity of `M_k(ℂ)` having trace `k`.
    pub fn rank_data(&self) -> &[i64] {
        &self.rank_data
    }

    pub fn idempotent_residual(&self) -> f64 {
        linalg::frobenius_norm(&(&self.projection * &self.projection - &self.projection))
    }

    pub fn self_adjoint_residual(&self) -> f64 {
        linalg::frobenius_norm(&(self.projection.adjoint() - &self.projection))
    }

    /// Largest `‖(1 − p)(b·v)‖` over image basis vectors `v` and basis elements `b` of `A`.
    pub fn left_closure_residual(&self, tol: f64) -> f64 {
        self.closure_residual(tol, true)
    }

    /// Largest `‖(1 − p)(v·b)‖`.
    pub fn right_closure_residual(&self, tol: f64) -> f64 {
        self.closure_residual(tol, false)
    }

    fn closure_residual(&self, tol: f64, left: bool) -> f64 {
        let n = self.system.dimension();
        let id_n = CMat::identity(n, n);
        let complement = CMat::identity(self.projection.nrows(), self.projection.ncols()) - &self.projection;
        let base = self.action.fixed_subalgebra(tol);
        let mut worst: f64 = 0.0;
        for b in base.basis() {
            let op = if left { b.left_multiplication() } else { b.right_multiplication() };
            let op = linalg::kron(&op, &id_n);
            for v in &self.basis {
                worst = worst.max(linalg::vector_norm(&(&complement * (&op * v))));
            }
        }
        worst
    }
}

/// Builds `P` as the image of [`averaging_projection`] and cross-checks its
/// dimension against the cotensor kernel of `Ã` (right action
/// `a·g = α_{g⁻¹}(a)`) with `ℂⁿ`.
pub fn flat_bundle_module(action: &GroupAction, system: &LocalSystem, tol: f64) -> Result<FlatBundleModule> {
    let projection = averaging_projection(action, system)?;
    let basis = linalg::canonical_basis(&linalg::column_space(&projection, tol), projection.nrows());
    let cotensor = cotensor_modules_with_tol(&RightGModule::from_action(action), &system.to_left_module(), tol)?;
    if cotensor.dimension() != basis.len() {
        return Err(Error::InternalInconsistency(format!(
            "averaging projection has rank {} but the cotensor kernel has dimension {}",
            basis.len(),
            cotensor.dimension()
        )));
    }
    let n = system.dimension();
    let blocks = action.fixed_subalgebra(tol).central_decomposition(tol)?;
    let mut block_sizes = Vec::with_capacity(blocks.len());
    let mut rank_data = Vec::with_capacity(blocks.len());
    for block in &blocks {
        let z = linalg::kron(&block.projection.right_multiplication(), &CMat::identity(n, n));
        let dim = (z * &projection).trace().re;
        let m = dim / block.size as f64;
        let rounded = m.round();
        if (m - rounded).abs() > 1e-6 {
            return Err(Error::InternalInconsistency(format!(
                "block of size {} carries a non-integral rank {m:.6}",
                block.size
            )));
        }
        block_sizes.push(block.size);
        rank_data.push(rounded as i64);
    }
    Ok(FlatBundleModule {
        action: action.clone(),
        system: system.clone(),
        projection,
        basis,
        block_sizes,
        rank_data,
        cotensor_dimension: cotensor.dimension(),
    })
}

/// `[P(ρ)] − [Aⁿ]` as a pair of unreduced rank vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KClass {
    pub plus: Vec<i64>,
    pub minus: Vec<i64>,
    pub description: String,
}

impl KClass {
    pub fn difference(&self) -> Vec<i64> {
        self.plus.iter().zip(&self.minus).map(|(a, b)| a - b).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.plus == self.minus
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} - {:?} = {:?} ({})", self.plus, self.minus, self.difference(), self.description)
    }
}

pub fn k_class(action: &GroupAction, system: &LocalSystem, tol: f64) -> Result<KClass> {
    let module = flat_bundle_module(action, system, tol)?;
    let n = system.dimension() as i64;
    let minus = module.base_block_sizes().iter().map(|&k| n * k as i64).collect();
    Ok(KClass {
        plus: module.rank_data,
        minus,
        description: format!("[{}] - [triv_{n}]", system.label()),
    })
}
