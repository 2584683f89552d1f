//! `Ã` as a Hilbert module over its fixed-point algebra `A = Ã^G`, with the
//! inner product `⟨x, y⟩ = (1/|G|) Σ_g α_g(x*y)`, rank-one operators, and the
//! verifier for the four frame conditions of a `G`-Galois Hilbert module.
//!
//! The bimodule of a general Galois quadruple is specialized to `X = Ã`,
//! which is the finite-group case. The `1/|G|` normalization is used
//! throughout, so frames are scaled accordingly: the `ℤ₂` cover of `ℂ` by
//! `ℂ²` has frame vector `ξ = (√2, 0)`, not `(1, 0)`.

use std::fmt;

use crate::action::{FixedSubalgebra, GroupAction};
use crate::algebra::AlgebraElement;
use crate::error::{invalid, Error, Result};
use crate::linalg::{self, CMat, CVec, C64};

/// `Ã` viewed as a right Hilbert module over `Ã^G`.
#[derive(Debug, Clone)]
pub struct HilbertModule {
    action: GroupAction,
    base: FixedSubalgebra,
}

impl HilbertModule {
    pub fn new(action: GroupAction, tol: f64) -> Self {
        let base = action.fixed_subalgebra(tol);
        Self { action, base }
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn base(&self) -> &FixedSubalgebra {
        &self.base
    }

    /// `⟨x, y⟩ = (1/|G|) Σ_g α_g(x*y)`; conjugate-linear in `x`.
    pub fn inner_product(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        let xy = x.adjoint().mul(y)?;
        Ok(self.action.conditional_expectation(&xy))
    }

    /// `‖x‖ = ‖⟨x, x⟩‖^{1/2}`.
    pub fn norm(&self, x: &AlgebraElement) -> Result<f64> {
        Ok(self.inner_product(x, x)?.operator_norm().sqrt())
    }

    /// Dense matrix of `θ_{ξ,ζ}: η ↦ ζ·⟨ξ, η⟩`.
    pub fn rank_one_operator(&self, xi: &AlgebraElement, zeta: &AlgebraElement) -> Result<CMat> {
        let left_xi_star = xi.adjoint().left_multiplication();
        let avg = self.action.averaging_matrix();
        self.rank_one_with(&avg, &left_xi_star, zeta)
    }

    fn rank_one_with(&self, avg: &CMat, left_xi_star: &CMat, zeta: &AlgebraElement) -> Result<CMat> {
        if zeta.algebra().block_sizes() != self.action.algebra().block_sizes() {
            return invalid("ζ is not an element of the module algebra");
        }
        Ok(zeta.left_multiplication() * avg * left_xi_star)
    }
}

/// Frame data `{e_i}`, `{ξ_i}` for the Galois conditions. The `e_i` are
/// elements of the base, given in `Ã` through its embedding.
#[derive(Debug, Clone)]
pub struct GaloisCandidate {
    module: HilbertModule,
    frame_e: Vec<AlgebraElement>,
    frame_xi: Vec<AlgebraElement>,
}

impl GaloisCandidate {
    pub fn new(module: HilbertModule, frame_e: Vec<AlgebraElement>, frame_xi: Vec<AlgebraElement>) -> Result<Self> {
        if frame_e.is_empty() {
            return invalid("frame must be nonempty");
        }
        if frame_e.len() != frame_xi.len() {
            return invalid(format!(
                "frame lengths differ: {} e_i vs {} ξ_i",
                frame_e.len(),
                frame_xi.len()
            ));
        }
        let sizes = module.action.algebra().block_sizes();
        if frame_e.iter().chain(&frame_xi).any(|x| x.algebra().block_sizes() != sizes) {
            return invalid("frame elements must lie in the module algebra");
        }
        Ok(Self {
            module,
            frame_e,
            frame_xi,
        })
    }

    /// Canonical frame of a free commutative action: for every orbit with
    /// smallest point `x`, `ξ = √|G|·δ_x` and `e` = indicator of the orbit.
    pub fn free_commutative(module: HilbertModule) -> Result<Self> {
        let action = module.action();
        if !action.is_free_on_spectrum()? {
            return Err(Error::InvalidArgument(
                "canonical frames need a free commutative action".into(),
            ));
        }
        let algebra = action.algebra();
        let scale = (action.group().order() as f64).sqrt();
        let mut es = Vec::new();
        let mut xis = Vec::new();
        for orbit in action.block_orbits() {
            let mut e = vec![C64::from(0.0); algebra.num_blocks()];
            for &x in &orbit {
                e[x] = C64::from(1.0);
            }
            let mut xi = vec![C64::from(0.0); algebra.num_blocks()];
            xi[orbit[0]] = C64::from(scale);
            es.push(AlgebraElement::diagonal(algebra, &e)?);
            xis.push(AlgebraElement::diagonal(algebra, &xi)?);
        }
        Self::new(module, es, xis)
    }

    pub fn module(&self) -> &HilbertModule {
        &self.module
    }

    pub fn frame_e(&self) -> &[AlgebraElement] {
        &self.frame_e
    }

    pub fn frame_xi(&self) -> &[AlgebraElement] {
        &self.frame_xi
    }
}

/// Residuals of the four frame conditions, in order:
/// `Σ e_i*e_i = 1`, `Σ_{g,i} θ_{gξ_i,gξ_i} = Id`, `⟨ξ_i, ξ_i⟩ = e_i*e_i`,
/// `⟨gξ_i, ξ_i⟩ = 0` for `g ≠ e`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaloisReport {
    pub residuals: [f64; 4],
    pub tolerance: f64,
    pub verdict: bool,
    pub details: [String; 4],
}

impl GaloisReport {
    pub const CONDITION_NAMES: [&'static str; 4] = [
        "sum of e_i* e_i equals 1",
        "sum over g, i of rank-one operators of g xi_i equals Id",
        "<xi_i, xi_i> equals e_i* e_i",
        "<g xi_i, xi_i> vanishes for nontrivial g",
    ];

    pub fn passed(&self, condition: usize) -> bool {
        self.residuals[condition] <= self.tolerance
    }
}

impl fmt::Display for GaloisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.details.iter().enumerate() {
            let mark = if self.passed(i) { "ok" } else { "FAIL" };
            writeln!(f, "  [{mark}] condition {}: {d}", i + 1)?;
        }
        write!(f, "  verdict: {}", self.verdict)
    }
}

/// Evaluates the four frame conditions.
pub fn verify_galois_conditions(candidate: &GaloisCandidate, tol: f64) -> GaloisReport {
    let module = &candidate.module;
    let action = module.action();
    let group = action.group();
    let algebra = action.algebra();
    let one = AlgebraElement::identity(algebra);

    let mut sum_ee = AlgebraElement::zero(algebra);
    for e in &candidate.frame_e {
        sum_ee = sum_ee.add(&e.adjoint().mul(e).expect("checked")).expect("checked");
    }
    let r1 = sum_ee.distance(&one).expect("checked");

    let avg = action.averaging_matrix();
    let d = algebra.dimension();
    let mut frame_op = CMat::zeros(d, d);
    for xi in &candidate.frame_xi {
        for g in group.elements() {
            let gxi = action.apply(g, xi);
            let left_star = gxi.adjoint().left_multiplication();
            frame_op += module.rank_one_with(&avg, &left_star, &gxi).expect("checked");
        }
    }
    let r2 = linalg::spectral_norm(&(frame_op - CMat::identity(d, d)));

    let mut r3: f64 = 0.0;
    let mut r4: f64 = 0.0;
    for (e, xi) in candidate.frame_e.iter().zip(&candidate.frame_xi) {
        let ip = module.inner_product(xi, xi).expect("checked");
        let ee = e.adjoint().mul(e).expect("checked");
        r3 = r3.max(ip.distance(&ee).expect("checked"));
        for g in group.nontrivial() {
            let gxi = action.apply(g, xi);
            r4 = r4.max(module.inner_product(&gxi, xi).expect("checked").operator_norm());
        }
    }

    let residuals = [r1, r2, r3, r4];
    let details = [
        format!("‖Σ e_i*e_i − 1‖ = {r1:.3e}"),
        format!("‖Σ_g Σ_i θ(gξ_i, gξ_i) − Id‖ = {r2:.3e}"),
        format!("max_i ‖⟨ξ_i, ξ_i⟩ − e_i*e_i‖ = {r3:.3e}"),
        if group.order() == 1 {
            "vacuous: the group has no nontrivial element".to_string()
        } else {
            format!("max_(g≠e, i) ‖⟨gξ_i, ξ_i⟩‖ = {r4:.3e}")
        },
    ];
    GaloisReport {
        residuals,
        tolerance: tol,
        verdict: residuals.iter().all(|&r| r <= tol),
        details,
    }
}

/// True iff the translates `α_g(w)` of the basis vectors of `W` are linearly
/// independent and span `Ã`, i.e. `Ã = ⊕_g α_g(W)`.
pub fn verify_g_decomposition(action: &GroupAction, subspace_basis: &[AlgebraElement], tol: f64) -> bool {
    let d = action.algebra().dimension();
    let translates: Vec<CVec> = action
        .group()
        .elements()
        .flat_map(|g| subspace_basis.iter().map(move |w| action.apply(g, w).to_vector()))
        .collect();
    if translates.len() != d {
        return false;
    }
    linalg::rank(&linalg::columns_to_matrix(&translates, d), tol) == d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_algebra, real_diagonal};
    use crate::group::FiniteGroup;
    use crate::linalg::DEFAULT_TOL;
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn swap_module() -> HilbertModule {
        let c2 = make_algebra(&[1, 1], "C2").unwrap();
        let act = GroupAction::by_permutations(FiniteGroup::cyclic(2).unwrap(), c2, vec![vec![0, 1], vec![1, 0]])
            .unwrap();
        HilbertModule::new(act, DEFAULT_TOL)
    }

    #[test]
    fn inner_product_examples() {
        let m = swap_module();
        let alg = Arc::clone(m.action().algebra());
        let one = AlgebraElement::identity(&alg);
        assert!(m.inner_product(&one, &one).unwrap().distance(&one).unwrap() < 1e-15);
        let x = real_diagonal(&alg, &[2f64.sqrt(), 0.0]).unwrap();
        assert!(m.inner_product(&x, &x).unwrap().distance(&one).unwrap() < 1e-12);

        let triv = HilbertModule::new(GroupAction::trivial(FiniteGroup::trivial(), make_algebra(&[2], "M2").unwrap()), DEFAULT_TOL);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random::element(triv.action().algebra(), &mut rng);
        let b = random::element(triv.action().algebra(), &mut rng);
        let direct = a.adjoint().mul(&b).unwrap();
        assert!(triv.inner_product(&a, &b).unwrap().distance(&direct).unwrap() < 1e-12);
    }

    #[test]
    fn rank_one_examples() {
        let m = swap_module();
        let alg = Arc::clone(m.action().algebra());
        let zero = AlgebraElement::zero(&alg);
        let z = real_diagonal(&alg, &[0.3, -1.0]).unwrap();
        assert_eq!(m.rank_one_operator(&zero, &z).unwrap().norm(), 0.0);

        let xi = real_diagonal(&alg, &[2f64.sqrt(), 0.0]).unwrap();
        let theta = m.rank_one_operator(&xi, &xi).unwrap();
        let mut expected = CMat::zeros(2, 2);
        expected[(0, 0)] = C64::from(1.0);
        assert!((theta - expected).norm() < 1e-12);

        let triv = HilbertModule::new(GroupAction::trivial(FiniteGroup::trivial(), make_algebra(&[2, 1], "A").unwrap()), DEFAULT_TOL);
        let one = AlgebraElement::identity(triv.action().algebra());
        let theta = triv.rank_one_operator(&one, &one).unwrap();
        assert!((theta - CMat::identity(5, 5)).norm() < 1e-12);
    }

    #[test]
    fn galois_z2_cover_passes() {
        let m = swap_module();
        let alg = Arc::clone(m.action().algebra());
        let e = AlgebraElement::identity(&alg);
        let xi = real_diagonal(&alg, &[2f64.sqrt(), 0.0]).unwrap();
        let cand = GaloisCandidate::new(m, vec![e], vec![xi]).unwrap();
        let report = verify_galois_conditions(&cand, DEFAULT_TOL);
        assert!(report.verdict, "{report}");
        assert!(report.residuals.iter().all(|&r| r <= 1e-12));
    }

    #[test]
    fn galois_unnormalized_frame_fails_conditions_two_and_three() {
        let m = swap_module();
        let alg = Arc::clone(m.action().algebra());
        let e = AlgebraElement::identity(&alg);
        let xi = real_diagonal(&alg, &[1.0, 0.0]).unwrap();
        let cand = GaloisCandidate::new(m, vec![e], vec![xi]).unwrap();
        let report = verify_galois_conditions(&cand, DEFAULT_TOL);
        assert!(!report.verdict);
        assert!(report.passed(0) && report.passed(3));
        assert!((report.residuals[1] - 0.5).abs() < 1e-12);
        assert!((report.residuals[2] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn galois_trivial_group() {
        let alg = make_algebra(&[2, 1], "A").unwrap();
        let m = HilbertModule::new(GroupAction::trivial(FiniteGroup::trivial(), Arc::clone(&alg)), DEFAULT_TOL);
        let one = AlgebraElement::identity(&alg);
        let cand = GaloisCandidate::new(m, vec![one.clone()], vec![one]).unwrap();
        let report = verify_galois_conditions(&cand, DEFAULT_TOL);
        assert!(report.verdict);
        assert_eq!(report.residuals[3], 0.0);
        assert!(report.details[3].contains("vacuous"));
    }

    #[test]
    fn candidate_validation() {
        let m = swap_module();
        let alg = Arc::clone(m.action().algebra());
        let one = AlgebraElement::identity(&alg);
        assert!(GaloisCandidate::new(m.clone(), vec![], vec![]).is_err());
        assert!(GaloisCandidate::new(m.clone(), vec![one.clone()], vec![]).is_err());
        let other = AlgebraElement::identity(&make_algebra(&[2], "M2").unwrap());
        assert!(GaloisCandidate::new(m, vec![one], vec![other]).is_err());
    }

    #[test]
    fn g_decomposition_examples() {
        let m = swap_module();
        let alg = Arc::clone(m.action().algebra());
        let w1 = real_diagonal(&alg, &[1.0, 0.0]).unwrap();
        assert!(verify_g_decomposition(m.action(), &[w1], DEFAULT_TOL));
        let w2 = real_diagonal(&alg, &[1.0, 1.0]).unwrap();
        assert!(!verify_g_decomposition(m.action(), &[w2], DEFAULT_TOL));

        for k in 2..=6 {
            let act = GroupAction::regular(FiniteGroup::cyclic(k).unwrap(), 1).unwrap();
            let w = AlgebraElement::basis_element(act.algebra(), 0);
            assert!(verify_g_decomposition(&act, &[w], DEFAULT_TOL), "k={k}");
        }
    }

    #[test]
    fn canonical_free_frame_passes() {
        let act = GroupAction::regular(FiniteGroup::cyclic(3).unwrap(), 2).unwrap();
        let cand = GaloisCandidate::free_commutative(HilbertModule::new(act, DEFAULT_TOL)).unwrap();
        assert_eq!(cand.frame_xi().len(), 2);
        assert!(verify_galois_conditions(&cand, DEFAULT_TOL).verdict);

        let c2 = make_algebra(&[1, 1], "C2").unwrap();
        let fixed_points = GroupAction::trivial(FiniteGroup::cyclic(2).unwrap(), c2);
        assert!(GaloisCandidate::free_commutative(HilbertModule::new(fixed_points, DEFAULT_TOL)).is_err());
    }
}
