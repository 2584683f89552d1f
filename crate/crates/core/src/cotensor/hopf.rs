//! The function Hopf algebra `Map(G, ℂ)` and the comodule description of
//! cotensor products.
//!
//! A right `G`-module `M` is a right `Map(G, ℂ)`-comodule through
//! `ρ(m) = Σ_g (m·g⁻¹) ⊗ δ_g`, a left module is a left comodule through
//! `λ(n) = Σ_g δ_g ⊗ (g⁻¹·n)`, and `M □ N = ker(ρ ⊗ Id − Id ⊗ λ)`.

use super::{same_group, CotensorSubspace, LeftGModule, RightGModule};
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::linalg::{self, CMat};

/// `Δ(δ_g) = Σ_{g1 g2 = g} δ_{g1} ⊗ δ_{g2}` as an integer `|G|² × |G|` matrix;
/// row `g1·|G| + g2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfDelta {
    order: usize,
    entries: Vec<Vec<i64>>,
}

impl HopfDelta {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn to_complex(&self) -> CMat {
        CMat::from_fn(self.entries.len(), self.order, |i, j| (self.entries[i][j] as f64).into())
    }

    /// `(Δ ⊗ Id)Δ` and `(Id ⊗ Δ)Δ`, both `|G|³ × |G|`.
    pub fn coassociativity_sides(&self) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
        let n = self.order;
        let mut left = vec![vec![0i64; n]; n * n * n];
        let mut right = vec![vec![0i64; n]; n * n * n];
        for g in 0..n {
            for ab in 0..n * n {
                let coeff = self.entries[ab][g];
                if coeff == 0 {
                    continue;
                }
                let (a, b) = (ab / n, ab % n);
                // (Δ ⊗ Id): split the first factor a.
                for xy in 0..n * n {
                    left[xy * n + b][g] += coeff * self.entries[xy][a];
                }
                // (Id ⊗ Δ): split the second factor b.
                for xy in 0..n * n {
                    right[a * n * n + xy][g] += coeff * self.entries[xy][b];
                }
            }
        }
        (left, right)
    }

    /// Exact integer comparison of the two sides.
    pub fn is_coassociative(&self) -> bool {
        let (l, r) = self.coassociativity_sides();
        l == r
    }

    /// `ε(δ_g) = [g = e]` and `(ε ⊗ Id)Δ = Id = (Id ⊗ ε)Δ`, checked exactly.
    pub fn is_counital(&self, identity: usize) -> bool {
        let n = self.order;
        (0..n).all(|g| {
            (0..n).all(|h| {
                let expect = i64::from(g == h);
                self.entries[identity * n + h][g] == expect && self.entries[h * n + identity][g] == expect
            })
        })
    }
}

pub fn hopf_comultiplication(group: &FiniteGroup) -> HopfDelta {
    let n = group.order();
    let mut entries = vec![vec![0i64; n]; n * n];
    for g1 in group.elements() {
        for g2 in group.elements() {
            entries[g1 * n + g2][group.mul(g1, g2)] = 1;
        }
    }
    HopfDelta { order: n, entries }
}

/// `ρ : M → M ⊗ Map(G, ℂ)`, rows indexed by `i·|G| + g`.
pub fn right_coaction(m: &RightGModule) -> CMat {
    let group = m.group();
    let (d, n) = (m.dimension(), group.order());
    let mut rho = CMat::zeros(d * n, d);
    for g in group.elements() {
        let op = m.operator(group.inverse(g));
        for i in 0..d {
            for j in 0..d {
                rho[(i * n + g, j)] = op[(i, j)];
            }
        }
    }
    rho
}

/// `λ : N → Map(G, ℂ) ⊗ N`, rows indexed by `g·dim N + i`.
pub fn left_coaction(n: &LeftGModule) -> CMat {
    let group = n.group();
    let d = n.dimension();
    let blocks: Vec<CMat> = group.elements().map(|g| n.operator(group.inverse(g)).clone()).collect();
    linalg::vstack(&blocks, d)
}

/// Residual of `(ρ ⊗ Id)ρ = (Id ⊗ Δ)ρ` for the right coaction.
pub fn right_coaction_residual(m: &RightGModule, delta: &HopfDelta) -> f64 {
    let rho = right_coaction(m);
    let d = m.dimension();
    let n = delta.order();
    let lhs = linalg::kron(&rho, &CMat::identity(n, n)) * &rho;
    let rhs = linalg::kron(&CMat::identity(d, d), &delta.to_complex()) * &rho;
    linalg::frobenius_norm(&(lhs - rhs))
}

/// Residual of `(Id ⊗ λ)λ = (Δ ⊗ Id)λ` for the left coaction.
pub fn left_coaction_residual(module: &LeftGModule, delta: &HopfDelta) -> f64 {
    let lambda = left_coaction(module);
    let d = module.dimension();
    let n = delta.order();
    let lhs = linalg::kron(&CMat::identity(n, n), &lambda) * &lambda;
    let rhs = linalg::kron(&delta.to_complex(), &CMat::identity(d, d)) * &lambda;
    linalg::frobenius_norm(&(lhs - rhs))
}

/// `M □ N` as `ker(ρ ⊗ Id_N − Id_M ⊗ λ)`.
pub fn hopf_cotensor(m: &RightGModule, n: &LeftGModule, tol: f64) -> Result<CotensorSubspace> {
    same_group(m.group(), n.group())?;
    let (dm, dn) = (m.dimension(), n.dimension());
    let lhs = linalg::kron(&right_coaction(m), &CMat::identity(dn, dn));
    let rhs = linalg::kron(&CMat::identity(dm, dm), &left_coaction(n));
    Ok(CotensorSubspace {
        right_dim: dm,
        left_dim: dn,
        basis: linalg::null_space_scaled(&(lhs - rhs), tol, 1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cotensor::cotensor_modules;
    use crate::linalg::DEFAULT_TOL;

    fn s3() -> FiniteGroup {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        FiniteGroup::from_table(table, "S3").unwrap()
    }

    #[test]
    fn comultiplication_is_coassociative_and_counital() {
        for k in 1..=8 {
            let g = FiniteGroup::cyclic(k).unwrap();
            let d = hopf_comultiplication(&g);
            assert!(d.is_coassociative());
            assert!(d.is_counital(g.identity()));
        }
        let g = s3();
        assert!(hopf_comultiplication(&g).is_coassociative());
    }

    #[test]
    fn each_column_sums_to_order() {
        let g = s3();
        let d = hopf_comultiplication(&g);
        for col in g.elements() {
            let s: i64 = d.entries().iter().map(|r| r[col]).sum();
            assert_eq!(s, 6);
        }
    }

    #[test]
    fn broken_table_is_not_coassociative() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let mut d = hopf_comultiplication(&g);
        d.entries[1 * 3 + 1][2] = 0;
        d.entries[1 * 3 + 1][0] = 1;
        assert!(!d.is_coassociative());
    }

    #[test]
    fn coactions_are_coassociative() {
        let g = s3();
        let delta = hopf_comultiplication(&g);
        let m = RightGModule::regular(&g);
        let n = LeftGModule::regular(&g);
        assert!(right_coaction_residual(&m, &delta) < 1e-12);
        assert!(left_coaction_residual(&n, &delta) < 1e-12);
    }

    #[test]
    fn hopf_route_agrees_with_group_route_nonabelian() {
        let g = s3();
        let m = RightGModule::regular(&g).direct_sum(&RightGModule::trivial(&g, 2)).unwrap();
        let n = LeftGModule::regular(&g);
        let a = cotensor_modules(&m, &n).unwrap();
        let b = hopf_cotensor(&m, &n, DEFAULT_TOL).unwrap();
        assert_eq!(a.dimension(), b.dimension());
        assert!(a.containment_residual(&b) < 1e-9);
        assert!(b.containment_residual(&a) < 1e-9);
    }
}
