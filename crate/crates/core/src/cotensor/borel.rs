//! Borel construction `Ã □_G B` for two `G`-algebras.

use std::sync::Arc;

use super::same_group;
use crate::action::GroupAction;
use crate::algebra::{AlgebraElement, MatrixAlgebra};
use crate::error::Result;
use crate::linalg::{self, CMat, CVec};

/// The cotensor subspace `C ⊂ Ã ⊗ B` and the *-subalgebra it generates.
#[derive(Debug, Clone)]
pub struct BorelConstruction {
    tensor: Arc<MatrixAlgebra>,
    linear: Vec<AlgebraElement>,
    generated: Vec<AlgebraElement>,
}

impl BorelConstruction {
    /// The ambient algebra `Ã ⊗ B` with blocks ordered `(i, j)`.
    pub fn tensor_algebra(&self) -> &Arc<MatrixAlgebra> {
        &self.tensor
    }

    /// Orthonormal basis of `C` itself.
    pub fn linear_basis(&self) -> &[AlgebraElement] {
        &self.linear
    }

    /// Orthonormal basis of the *-subalgebra generated by `C`.
    pub fn algebra_basis(&self) -> &[AlgebraElement] {
        &self.generated
    }

    pub fn linear_dimension(&self) -> usize {
        self.linear.len()
    }

    pub fn algebra_dimension(&self) -> usize {
        self.generated.len()
    }

    /// Whether `C` was already closed under products and adjoints.
    pub fn is_closed(&self) -> bool {
        self.linear.len() == self.generated.len()
    }

    /// Largest distance of a product or adjoint of generated basis elements
    /// from the generated span.
    pub fn closure_residual(&self) -> f64 {
        let vecs: Vec<CVec> = self.generated.iter().map(AlgebraElement::to_vector).collect();
        let mut worst: f64 = 0.0;
        for x in &self.generated {
            worst = worst.max(linalg::span_residual(&vecs, &x.adjoint().to_vector()));
            for y in &self.generated {
                let p = x.mul(y).expect("same algebra");
                worst = worst.max(linalg::span_residual(&vecs, &p.to_vector()));
            }
        }
        worst
    }
}

/// `C = {x ∈ Ã ⊗ B : (α_{g⁻¹} ⊗ Id)x = (Id ⊗ β_g)x for all g}`, where `Ã`
/// is made a right module by `a·g = α_{g⁻¹}(a)`.
pub fn borel_construction(right: &GroupAction, left: &GroupAction, tol: f64) -> Result<BorelConstruction> {
    same_group(right.group(), left.group())?;
    let (a, b) = (right.algebra(), left.algebra());
    let tensor = Arc::new(a.tensor(b)?);
    let (da, db) = (a.dimension(), b.dimension());
    let group = right.group();
    let ia = CMat::identity(da, da);
    let ib = CMat::identity(db, db);
    let blocks: Vec<CMat> = group
        .elements()
        .map(|g| linalg::kron(&right.matrix(group.inverse(g)), &ib) - linalg::kron(&ia, &left.matrix(g)))
        .collect();
    let kernel = linalg::null_space_scaled(&linalg::vstack(&blocks, da * db), tol, 1.0);

    let map = a.tensor_coordinate_map(b, &tensor);
    let dim = tensor.dimension();
    let to_tensor = |v: &CVec| {
        let mut w = CVec::zeros(dim);
        for (k, &t) in map.iter().enumerate() {
            w[t] = v[k];
        }
        w
    };
    let linear_vecs: Vec<CVec> = linalg::canonical_basis(&kernel.iter().map(to_tensor).collect::<Vec<_>>(), dim);
    let generated_vecs = generate_subalgebra(&tensor, &linear_vecs, tol);
    let elements = |vs: &[CVec]| -> Vec<AlgebraElement> {
        vs.iter()
            .map(|v| AlgebraElement::from_vector(&tensor, v).expect("dimension matches"))
            .collect()
    };
    Ok(BorelConstruction {
        linear: elements(&linear_vecs),
        generated: elements(&generated_vecs),
        tensor: Arc::clone(&tensor),
    })
}

/// Span closure under products and adjoints, starting from an orthonormal set.
fn generate_subalgebra(algebra: &Arc<MatrixAlgebra>, start: &[CVec], tol: f64) -> Vec<CVec> {
    let mut vecs: Vec<CVec> = start.to_vec();
    let mut elems: Vec<AlgebraElement> = vecs
        .iter()
        .map(|v| AlgebraElement::from_vector(algebra, v).expect("dimension matches"))
        .collect();
    let push = |candidate: AlgebraElement, vecs: &mut Vec<CVec>, elems: &mut Vec<AlgebraElement>| {
        let mut v = candidate.to_vector();
        let scale = linalg::vector_norm(&v);
        if scale == 0.0 {
            return;
        }
        for _ in 0..2 {
            for b in vecs.iter() {
                let coeff = b.dotc(&v);
                v -= b * coeff;
            }
        }
        let r = linalg::vector_norm(&v);
        if r > tol * scale.max(1.0) {
            v /= crate::linalg::C64::from(r);
            elems.push(AlgebraElement::from_vector(algebra, &v).expect("dimension matches"));
            vecs.push(v);
        }
    };
    let mut i = 0;
    while i < elems.len() && vecs.len() < algebra.dimension() {
        let xi = elems[i].clone();
        push(xi.adjoint(), &mut vecs, &mut elems);
        for j in 0..=i {
            let xj = elems[j].clone();
            push(xi.mul(&xj).expect("same algebra"), &mut vecs, &mut elems);
            push(xj.mul(&xi).expect("same algebra"), &mut vecs, &mut elems);
        }
        i += 1;
    }
    linalg::canonical_basis(&vecs, algebra.dimension())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cotensor::{commutative_oracle, GSet, Side};
    use crate::group::FiniteGroup;
    use crate::linalg::DEFAULT_TOL;

    #[test]
    fn regular_sets_give_y() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let x = GSet::regular(&g, Side::Right);
        let y = GSet::regular(&g, Side::Left).disjoint_union(&GSet::trivial(&g, Side::Left, 2).unwrap()).unwrap();
        let b = borel_construction(&x.function_action(), &y.function_action(), DEFAULT_TOL).unwrap();
        assert_eq!(b.linear_dimension(), 5);
        assert_eq!(b.algebra_dimension(), 5);
        assert!(b.is_closed());
        assert!(b.closure_residual() < 1e-9);
        assert_eq!(commutative_oracle(&x, &y).unwrap().count, 5);
    }

    #[test]
    fn klein_group_sets_match_orbit_count() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let g = FiniteGroup::product(&z2, &z2).unwrap();
        // X = G/⟨(1,0)⟩ ⊔ pt on the right, Y = G on the left
        let quotient: Vec<Vec<usize>> = g.elements().map(|h| (0..2).map(|c| c ^ (h & 1)).collect()).collect();
        let x = GSet::new(g.clone(), Side::Right, quotient)
            .unwrap()
            .disjoint_union(&GSet::trivial(&g, Side::Right, 1).unwrap())
            .unwrap();
        let y = GSet::regular(&g, Side::Left);
        let b = borel_construction(&x.function_action(), &y.function_action(), DEFAULT_TOL).unwrap();
        let q = commutative_oracle(&x, &y).unwrap();
        assert_eq!(b.algebra_dimension(), q.count);
        assert_eq!(q.count, 3);
    }

    #[test]
    fn matrix_algebra_fixed_points() {
        // Ã = M2 with the ℤ2 action by diag(1,-1), B = ℂ: C = diagonal matrices.
        let g = FiniteGroup::cyclic(2).unwrap();
        let m2 = Arc::new(MatrixAlgebra::new(vec![2], "M2").unwrap());
        let w = CMat::from_diagonal(&CVec::from_vec(vec![1.0.into(), (-1.0).into()]));
        let a = GroupAction::by_conjugation(g.clone(), m2, vec![CMat::identity(2, 2), w]).unwrap();
        let c1 = Arc::new(MatrixAlgebra::commutative(1, "C").unwrap());
        let b = borel_construction(&a, &GroupAction::trivial(g, c1), DEFAULT_TOL).unwrap();
        assert_eq!(b.linear_dimension(), 2);
        assert_eq!(b.algebra_dimension(), 2);
    }
}
