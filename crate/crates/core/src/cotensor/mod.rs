//! Cotensor products `M □_G N` of a right and a left `G`-module, i.e. the
//! subspace of `M ⊗ N` on which `m·g ⊗ n = m ⊗ g·n` for every `g ∈ G`.
//!
//! Constraints are imposed for every group element, not only generators;
//! [`cotensor_from_generators`] exists so the two can be compared.

mod borel;
mod gset;
mod hopf;

pub use borel::{borel_construction, BorelConstruction};
pub use gset::{commutative_oracle, GSet, OrbitQuotient, Side};
pub use hopf::{
    hopf_comultiplication, hopf_cotensor, left_coaction, left_coaction_residual, right_coaction, right_coaction_residual,
    HopfDelta,
};

use crate::action::GroupAction;
use crate::error::{invalid, Result};
use crate::group::FiniteGroup;
use crate::linalg::{self, CMat, CVec, DEFAULT_TOL};

fn check_operators(group: &FiniteGroup, dim: usize, ops: &[CMat], right: bool, tol: f64) -> Result<()> {
    if ops.len() != group.order() {
        return invalid(format!("expected {} operators, got {}", group.order(), ops.len()));
    }
    if let Some(g) = ops.iter().position(|m| m.nrows() != dim || m.ncols() != dim) {
        return invalid(format!("operator for element {g} must be {dim}x{dim}"));
    }
    let e = group.identity();
    let scale = ops.iter().map(linalg::frobenius_norm).fold(1.0, f64::max);
    if linalg::frobenius_norm(&(&ops[e] - CMat::identity(dim, dim))) > tol * scale {
        return invalid("the identity element must act as the identity matrix");
    }
    for g in group.elements() {
        for h in group.elements() {
            let target = if right { group.mul(h, g) } else { group.mul(g, h) };
            let r = linalg::frobenius_norm(&(&ops[g] * &ops[h] - &ops[target]));
            if r > tol * scale * scale {
                let law = if right { "R_g R_h = R_hg" } else { "L_g L_h = L_gh" };
                return invalid(format!("{law} fails at ({g}, {h}) with residual {r:.3e}"));
            }
        }
    }
    Ok(())
}

fn regular_operators(group: &FiniteGroup, right: bool) -> Vec<CMat> {
    let n = group.order();
    group
        .elements()
        .map(|g| {
            let mut m = CMat::zeros(n, n);
            for h in group.elements() {
                let target = if right { group.mul(h, g) } else { group.mul(g, h) };
                m[(target, h)] = linalg::ONE;
            }
            m
        })
        .collect()
}

/// A right `G`-module `m ↦ m·g`, stored as matrices with `R_g R_h = R_{hg}`.
#[derive(Debug, Clone)]
pub struct RightGModule {
    group: FiniteGroup,
    operators: Vec<CMat>,
}

impl RightGModule {
    pub fn new(group: FiniteGroup, operators: Vec<CMat>, tol: f64) -> Result<Self> {
        let dim = operators.first().map_or(0, |m| m.nrows());
        check_operators(&group, dim, &operators, true, tol)?;
        Ok(Self { group, operators })
    }

    /// `ℂ[G]` with `δ_h·g = δ_{hg}`.
    pub fn regular(group: &FiniteGroup) -> Self {
        Self {
            operators: regular_operators(group, true),
            group: group.clone(),
        }
    }

    pub fn trivial(group: &FiniteGroup, dim: usize) -> Self {
        Self {
            operators: vec![CMat::identity(dim, dim); group.order()],
            group: group.clone(),
        }
    }

    /// `ℂ[G] ⊗ ℂ^copies`, free of rank `copies`.
    pub fn free(group: &FiniteGroup, copies: usize) -> Self {
        let id = CMat::identity(copies, copies);
        Self {
            operators: regular_operators(group, true).iter().map(|r| linalg::kron(r, &id)).collect(),
            group: group.clone(),
        }
    }

    /// The algebra of a left action as a right module, `a·g := α_{g⁻¹}(a)`.
    pub fn from_action(action: &GroupAction) -> Self {
        let group = action.group().clone();
        let operators = group.elements().map(|g| action.matrix(group.inverse(g))).collect();
        Self { group, operators }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        same_group(&self.group, &other.group)?;
        Ok(Self {
            operators: block_sum(&self.operators, &other.operators),
            group: self.group.clone(),
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dimension(&self) -> usize {
        self.operators[0].nrows()
    }

    pub fn operator(&self, g: usize) -> &CMat {
        &self.operators[g]
    }
}

/// A left `G`-module `n ↦ g·n`, stored as matrices with `L_g L_h = L_{gh}`.
#[derive(Debug, Clone)]
pub struct LeftGModule {
    group: FiniteGroup,
    operators: Vec<CMat>,
}

impl LeftGModule {
    pub fn new(group: FiniteGroup, operators: Vec<CMat>, tol: f64) -> Result<Self> {
        let dim = operators.first().map_or(0, |m| m.nrows());
        check_operators(&group, dim, &operators, false, tol)?;
        Ok(Self { group, operators })
    }

    /// `ℂ[G]` with `g·δ_h = δ_{gh}`.
    pub fn regular(group: &FiniteGroup) -> Self {
        Self {
            operators: regular_operators(group, false),
            group: group.clone(),
        }
    }

    pub fn trivial(group: &FiniteGroup, dim: usize) -> Self {
        Self {
            operators: vec![CMat::identity(dim, dim); group.order()],
            group: group.clone(),
        }
    }

    pub fn from_action(action: &GroupAction) -> Self {
        let group = action.group().clone();
        let operators = group.elements().map(|g| action.matrix(g)).collect();
        Self { group, operators }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        same_group(&self.group, &other.group)?;
        Ok(Self {
            operators: block_sum(&self.operators, &other.operators),
            group: self.group.clone(),
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dimension(&self) -> usize {
        self.operators[0].nrows()
    }

    pub fn operator(&self, g: usize) -> &CMat {
        &self.operators[g]
    }
}

pub(crate) fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> Result<()> {
    if a.table() == b.table() {
        Ok(())
    } else {
        invalid(format!("group mismatch: {a} vs {b}"))
    }
}

fn block_sum(a: &[CMat], b: &[CMat]) -> Vec<CMat> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let (p, q) = (x.nrows(), y.nrows());
            let mut m = CMat::zeros(p + q, p + q);
            m.view_mut((0, 0), (p, p)).copy_from(x);
            m.view_mut((p, p), (q, q)).copy_from(y);
            m
        })
        .collect()
}

/// Orthonormal basis of `M □_G N` inside `M ⊗ N`; coordinate `i·dim N + j`
/// holds the coefficient of `m_i ⊗ n_j`.
#[derive(Debug, Clone)]
pub struct CotensorSubspace {
    right_dim: usize,
    left_dim: usize,
    basis: Vec<CVec>,
}

impl CotensorSubspace {
    pub fn basis(&self) -> &[CVec] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `(dim M, dim N)`.
    pub fn factor_dims(&self) -> (usize, usize) {
        (self.right_dim, self.left_dim)
    }

    /// Largest distance of a basis vector of `self` from the span of `other`.
    pub fn containment_residual(&self, other: &CotensorSubspace) -> f64 {
        linalg::containment_residual(&self.basis, &other.basis)
    }

    /// Largest `‖(R_g ⊗ I − I ⊗ L_g) v‖` over basis vectors and group elements.
    pub fn constraint_residual(&self, m: &RightGModule, n: &LeftGModule) -> f64 {
        let mut worst: f64 = 0.0;
        for g in m.group().elements() {
            let c = constraint(m, n, g);
            for v in &self.basis {
                worst = worst.max(linalg::vector_norm(&(&c * v)));
            }
        }
        worst
    }
}

fn constraint(m: &RightGModule, n: &LeftGModule, g: usize) -> CMat {
    let im = CMat::identity(m.dimension(), m.dimension());
    let in_ = CMat::identity(n.dimension(), n.dimension());
    linalg::kron(m.operator(g), &in_) - linalg::kron(&im, n.operator(g))
}

fn cotensor_over(m: &RightGModule, n: &LeftGModule, elements: &[usize], tol: f64) -> Result<CotensorSubspace> {
    same_group(m.group(), n.group())?;
    let cols = m.dimension() * n.dimension();
    let blocks: Vec<CMat> = elements.iter().map(|&g| constraint(m, n, g)).collect();
    let stacked = linalg::vstack(&blocks, cols);
    Ok(CotensorSubspace {
        right_dim: m.dimension(),
        left_dim: n.dimension(),
        basis: linalg::null_space_scaled(&stacked, tol, 1.0),
    })
}

/// `M □_G N` as the joint kernel of `R_g ⊗ Id − Id ⊗ L_g` over all `g ∈ G`.
pub fn cotensor_modules(m: &RightGModule, n: &LeftGModule) -> Result<CotensorSubspace> {
    cotensor_modules_with_tol(m, n, DEFAULT_TOL)
}

pub fn cotensor_modules_with_tol(m: &RightGModule, n: &LeftGModule, tol: f64) -> Result<CotensorSubspace> {
    let all: Vec<usize> = m.group().elements().collect();
    cotensor_over(m, n, &all, tol)
}

/// Same kernel with constraints for the group's generating set only.
pub fn cotensor_from_generators(m: &RightGModule, n: &LeftGModule, tol: f64) -> Result<CotensorSubspace> {
    let gens = m.group().generators().to_vec();
    cotensor_over(m, n, &gens, tol)
}
