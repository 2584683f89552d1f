//! Finite-dimensional *-algebras `M_{n_1}(ℂ) ⊕ … ⊕ M_{n_k}(ℂ)` and their elements.
//!
//! Elements are stored block by block. The linear coordinates of an element
//! are ordered block-major, then row-major inside each block; every dense
//! linear map in this crate is written in that basis.

use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::linalg::{self, CMat, CVec, C64, ONE};

/// A direct sum of full complex matrix blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixAlgebra {
    block_sizes: Vec<usize>,
    label: String,
    offsets: Vec<usize>,
    dimension: usize,
}

impl MatrixAlgebra {
    /// Upper bound on the linear dimension `Σ n_i²`.
    pub const MAX_DIMENSION: usize = 4096;

    pub fn new(block_sizes: Vec<usize>, label: impl Into<String>) -> Result<Self> {
        if block_sizes.is_empty() {
            return invalid("block_sizes must be nonempty");
        }
        if let Some(i) = block_sizes.iter().position(|&n| n == 0) {
            return invalid(format!("block {i} has size 0"));
        }
        let mut offsets = Vec::with_capacity(block_sizes.len());
        let mut dimension = 0usize;
        for &n in &block_sizes {
            offsets.push(dimension);
            dimension = n
                .checked_mul(n)
                .and_then(|sq| dimension.checked_add(sq))
                .filter(|&d| d <= Self::MAX_DIMENSION)
                .ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "algebra dimension exceeds {}",
                        Self::MAX_DIMENSION
                    ))
                })?;
        }
        Ok(Self {
            block_sizes,
            label: label.into(),
            offsets,
            dimension,
        })
    }

    /// `ℂ^k`, functions on `k` points.
    pub fn commutative(k: usize, label: impl Into<String>) -> Result<Self> {
        Self::new(vec![1; k], label)
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Linear dimension `Σ n_i²`.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn num_blocks(&self) -> usize {
        self.block_sizes.len()
    }

    pub fn block_offset(&self, block: usize) -> usize {
        self.offsets[block]
    }

    pub fn is_commutative(&self) -> bool {
        self.block_sizes.iter().all(|&n| n == 1)
    }

    /// Linear coordinate of entry `(row, col)` of `block`.
    pub fn coordinate(&self, block: usize, row: usize, col: usize) -> usize {
        let n = self.block_sizes[block];
        self.offsets[block] + row * n + col
    }

    /// Inverse of [`coordinate`](Self::coordinate).
    pub fn locate(&self, k: usize) -> (usize, usize, usize) {
        let block = match self.offsets.binary_search(&k) {
            Ok(b) => b,
            Err(b) => b - 1,
        };
        let n = self.block_sizes[block];
        let local = k - self.offsets[block];
        (block, local / n, local % n)
    }

    /// Block sizes `n_i · m_j` of the tensor product, ordered `(i, j)` lexicographically.
    pub fn tensor(&self, other: &MatrixAlgebra) -> Result<MatrixAlgebra> {
        let sizes = self
            .block_sizes
            .iter()
            .flat_map(|&n| other.block_sizes.iter().map(move |&m| n * m))
            .collect();
        MatrixAlgebra::new(sizes, format!("{}⊗{}", self.label, other.label))
    }

    /// Maps the Kronecker coordinate `ka · dim(other) + kb` of `self ⊗ other`
    /// to the coordinate of the same matrix unit in [`tensor`](Self::tensor).
    pub fn tensor_coordinate_map(&self, other: &MatrixAlgebra, tensor: &MatrixAlgebra) -> Vec<usize> {
        let mut map = vec![0; self.dimension * other.dimension];
        for ka in 0..self.dimension {
            let (i, r1, c1) = self.locate(ka);
            for kb in 0..other.dimension {
                let (j, r2, c2) = other.locate(kb);
                let m = other.block_sizes[j];
                let block = i * other.num_blocks() + j;
                map[ka * other.dimension + kb] = tensor.coordinate(block, r1 * m + r2, c1 * m + c2);
            }
        }
        map
    }
}

impl fmt::Display for MatrixAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.block_sizes.iter().map(|n| format!("M{n}")).collect();
        write!(f, "{} = {}", self.label, parts.join(" ⊕ "))
    }
}

/// Builds an algebra, shared by reference between its elements.
pub fn make_algebra(block_sizes: &[usize], label: &str) -> Result<Arc<MatrixAlgebra>> {
    MatrixAlgebra::new(block_sizes.to_vec(), label).map(Arc::new)
}

/// A block-diagonal matrix in a [`MatrixAlgebra`].
#[derive(Debug, Clone)]
pub struct AlgebraElement {
    algebra: Arc<MatrixAlgebra>,
    blocks: Vec<CMat>,
}

impl AlgebraElement {
    pub fn from_blocks(algebra: &Arc<MatrixAlgebra>, blocks: Vec<CMat>) -> Result<Self> {
        if blocks.len() != algebra.num_blocks() {
            return invalid(format!(
                "expected {} blocks, got {}",
                algebra.num_blocks(),
                blocks.len()
            ));
        }
        for (i, (b, &n)) in blocks.iter().zip(algebra.block_sizes()).enumerate() {
            if b.nrows() != n || b.ncols() != n {
                return invalid(format!(
                    "block {i} has shape {}x{}, expected {n}x{n}",
                    b.nrows(),
                    b.ncols()
                ));
            }
        }
        Ok(Self {
            algebra: Arc::clone(algebra),
            blocks,
        })
    }

    pub fn zero(algebra: &Arc<MatrixAlgebra>) -> Self {
        let blocks = algebra.block_sizes().iter().map(|&n| CMat::zeros(n, n)).collect();
        Self {
            algebra: Arc::clone(algebra),
            blocks,
        }
    }

    pub fn identity(algebra: &Arc<MatrixAlgebra>) -> Self {
        let blocks = algebra.block_sizes().iter().map(|&n| linalg::identity(n)).collect();
        Self {
            algebra: Arc::clone(algebra),
            blocks,
        }
    }

    /// Diagonal element of a commutative algebra, one value per point.
    pub fn diagonal(algebra: &Arc<MatrixAlgebra>, values: &[C64]) -> Result<Self> {
        if !algebra.is_commutative() {
            return Err(Error::UnsupportedAlgebra(format!(
                "{} is not commutative",
                algebra.label()
            )));
        }
        if values.len() != algebra.num_blocks() {
            return invalid(format!(
                "expected {} values, got {}",
                algebra.num_blocks(),
                values.len()
            ));
        }
        let blocks = values.iter().map(|&v| CMat::from_element(1, 1, v)).collect();
        Self::from_blocks(algebra, blocks)
    }

    /// Element with linear coordinates `v`.
    pub fn from_vector(algebra: &Arc<MatrixAlgebra>, v: &CVec) -> Result<Self> {
        if v.len() != algebra.dimension() {
            return invalid(format!(
                "coordinate vector has length {}, expected {}",
                v.len(),
                algebra.dimension()
            ));
        }
        let blocks = algebra
            .block_sizes()
            .iter()
            .enumerate()
            .map(|(b, &n)| {
                let off = algebra.block_offset(b);
                CMat::from_row_iterator(n, n, v.iter().skip(off).take(n * n).copied())
            })
            .collect();
        Ok(Self {
            algebra: Arc::clone(algebra),
            blocks,
        })
    }

    /// Matrix unit with linear coordinate `k`.
    pub fn basis_element(algebra: &Arc<MatrixAlgebra>, k: usize) -> Self {
        let mut e = Self::zero(algebra);
        let (b, r, c) = algebra.locate(k);
        e.blocks[b][(r, c)] = ONE;
        e
    }

    pub fn to_vector(&self) -> CVec {
        let mut v = CVec::zeros(self.algebra.dimension());
        let mut k = 0;
        for b in &self.blocks {
            for r in 0..b.nrows() {
                for c in 0..b.ncols() {
                    v[k] = b[(r, c)];
                    k += 1;
                }
            }
        }
        v
    }

    pub fn algebra(&self) -> &Arc<MatrixAlgebra> {
        &self.algebra
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &CMat {
        &self.blocks[i]
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra)
            || self.algebra.block_sizes() == other.algebra.block_sizes()
        {
            Ok(())
        } else {
            invalid(format!(
                "algebra mismatch: {} vs {}",
                self.algebra, other.algebra
            ))
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CMat, &CMat) -> CMat) -> Result<Self> {
        self.check_same(other)?;
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect();
        Ok(Self {
            algebra: Arc::clone(&self.algebra),
            blocks,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map_blocks(|b| b * s)
    }

    /// Blockwise conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.map_blocks(|b| b.adjoint())
    }

    pub fn map_blocks(&self, f: impl Fn(&CMat) -> CMat) -> Self {
        Self {
            algebra: Arc::clone(&self.algebra),
            blocks: self.blocks.iter().map(f).collect(),
        }
    }

    /// C*-norm: the largest singular value over all blocks.
    pub fn operator_norm(&self) -> f64 {
        self.blocks.iter().map(linalg::spectral_norm).fold(0.0, f64::max)
    }

    /// `‖self − other‖` in the operator norm.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.operator_norm())
    }

    /// True iff `‖a² − a‖ ≤ tol` and `‖a* − a‖ ≤ tol`.
    pub fn is_projection(&self, tol: f64) -> bool {
        let sq = self.mul(self).expect("same algebra");
        let idem = sq.distance(self).expect("same algebra");
        let herm = self.adjoint().distance(self).expect("same algebra");
        idem <= tol && herm <= tol
    }

    /// Per-block matrix traces, in block order.
    pub fn trace_vector(&self) -> Vec<C64> {
        self.blocks.iter().map(|b| b.trace()).collect()
    }

    /// Hilbert–Schmidt inner product `Σ_i tr(a_i* b_i)`, conjugate-linear in `self`.
    pub fn hs_inner(&self, other: &Self) -> Result<C64> {
        self.check_same(other)?;
        Ok(self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum::<C64>())
            .sum())
    }

    pub fn hs_norm(&self) -> f64 {
        self.blocks.iter().map(linalg::frobenius_norm).map(|n| n * n).sum::<f64>().sqrt()
    }

    /// Dense matrix of `x ↦ self·x`.
    pub fn left_multiplication(&self) -> CMat {
        self.block_operator(|b| linalg::kron(b, &linalg::identity(b.nrows())))
    }

    /// Dense matrix of `x ↦ x·self`.
    pub fn right_multiplication(&self) -> CMat {
        self.block_operator(|b| linalg::kron(&linalg::identity(b.nrows()), &b.transpose()))
    }

    fn block_operator(&self, f: impl Fn(&CMat) -> CMat) -> CMat {
        let d = self.algebra.dimension();
        let mut m = CMat::zeros(d, d);
        for (i, b) in self.blocks.iter().enumerate() {
            let off = self.algebra.block_offset(i);
            let k = b.nrows() * b.nrows();
            m.view_mut((off, off), (k, k)).copy_from(&f(b));
        }
        m
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.operator_norm() <= tol
    }
}

impl PartialEq for AlgebraElement {
    /// Exact blockwise equality.
    fn eq(&self, other: &Self) -> bool {
        self.algebra.block_sizes() == other.algebra.block_sizes() && self.blocks == other.blocks
    }
}

/// Trivial helper for commutative literals: `(1, 0, …)` style vectors.
pub fn real_diagonal(algebra: &Arc<MatrixAlgebra>, values: &[f64]) -> Result<AlgebraElement> {
    let vals: Vec<C64> = values.iter().map(|&x| C64::new(x, 0.0)).collect();
    AlgebraElement::diagonal(algebra, &vals)
}
