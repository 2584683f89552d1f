//! Fuzzy (clock/shift) torus `M_q(ℂ)` generated by `U, V` with `VU = ζUV`,
//! its `ℤ_m × ℤ_n` covers, constant connections, lift and twisted descent.
//!
//! The cover action is by conjugation, hence inner: see
//! [`crate::OUTERNESS_DISCLAIMER`].

use std::sync::Arc;

use crate::action::{Automorphism, FixedSubalgebra, GroupAction};
use crate::algebra::MatrixAlgebra;
use crate::error::{invalid, Error, Result};
use crate::flat_bundle::{averaging_projection, flat_bundle_module, LocalSystem};
use crate::group::FiniteGroup;
use crate::linalg::{self, CMat, CVec, C64};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn matrix_power(m: &CMat, k: usize) -> CMat {
    let mut out = CMat::identity(m.nrows(), m.ncols());
    for _ in 0..k {
        out = &out * m;
    }
    out
}

/// Row-major flattening of a square matrix; matches algebra coordinates of `M_q`.
fn flatten(m: &CMat) -> CVec {
    let q = m.nrows();
    CVec::from_fn(q * q, |k, _| m[(k / q, k % q)])
}

#[derive(Debug, Clone)]
pub struct FuzzyTorus {
    q: usize,
    p: i64,
    zeta: C64,
    u: CMat,
    v: CMat,
    algebra: Arc<MatrixAlgebra>,
}

impl FuzzyTorus {
    pub const MAX_Q: usize = 64;

    /// `U = diag(1, ζ, …, ζ^{q−1})`, `V e_{k+1} = e_k` cyclically, `ζ = e^{2πip/q}`.
    pub fn new(q: usize, p: i64) -> Result<Self> {
        if !(2..=Self::MAX_Q).contains(&q) {
            return invalid(format!("q must satisfy 2 <= q <= {}, got {q}", Self::MAX_Q));
        }
        if gcd(p, q as i64) != 1 {
            return invalid(format!("gcd(p, q) must be 1, got p={p}, q={q}"));
        }
        let zeta = linalg::root_of_unity(p, q);
        let u = CMat::from_diagonal(&CVec::from_fn(q, |k, _| linalg::root_of_unity(p * k as i64, q)));
        let mut v = CMat::zeros(q, q);
        for i in 0..q {
            v[(i, (i + 1) % q)] = linalg::ONE;
        }
        Ok(Self {
            q,
            p,
            zeta,
            u,
            v,
            algebra: Arc::new(MatrixAlgebra::new(vec![q], format!("M{q}"))?),
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn zeta(&self) -> C64 {
        self.zeta
    }

    pub fn clock(&self) -> &CMat {
        &self.u
    }

    pub fn shift(&self) -> &CMat {
        &self.v
    }

    pub fn algebra(&self) -> &Arc<MatrixAlgebra> {
        &self.algebra
    }

    /// `U^a V^b`.
    pub fn monomial(&self, a: usize, b: usize) -> CMat {
        matrix_power(&self.u, a % self.q) * matrix_power(&self.v, b % self.q)
    }

    /// `‖VU − ζUV‖`.
    pub fn relation_residual(&self) -> f64 {
        linalg::frobenius_norm(&(&self.v * &self.u - &self.u * &self.v * self.zeta))
    }

    /// `max(‖U^q − I‖, ‖V^q − I‖)`.
    pub fn order_residual(&self) -> f64 {
        let id = CMat::identity(self.q, self.q);
        let ru = linalg::frobenius_norm(&(matrix_power(&self.u, self.q) - &id));
        let rv = linalg::frobenius_norm(&(matrix_power(&self.v, self.q) - &id));
        ru.max(rv)
    }

    /// Rank of the `q²` flattened monomials `U^a V^b`.
    pub fn span_dimension(&self) -> usize {
        let cols: Vec<CVec> = (0..self.q)
            .flat_map(|a| (0..self.q).map(move |b| (a, b)))
            .map(|(a, b)| flatten(&self.monomial(a, b)))
            .collect();
        linalg::rank(&linalg::columns_to_matrix(&cols, self.q * self.q), 1e-9)
    }
}

/// Exponents `(c, d)` of a conjugator `W = U^c V^d`.
pub type Monomial = (usize, usize);

/// `ℤ_m × ℤ_n` acting on `M_q` with `(1,0): U ↦ ζ_m U, V ↦ V` and
/// `(0,1): U ↦ U, V ↦ ζ_n V`. Element `(a, b)` has index `a·n + b`.
#[derive(Debug, Clone)]
pub struct TorusCover {
    torus: FuzzyTorus,
    m: usize,
    n: usize,
    conjugators: [Monomial; 2],
    action: GroupAction,
    fixed: FixedSubalgebra,
    base_span_residual: f64,
}

impl TorusCover {
    pub const MAX_GROUP_ORDER: usize = 16;

    pub fn new(q: usize, p: i64, m: usize, n: usize) -> Result<Self> {
        let torus = FuzzyTorus::new(q, p)?;
        if m == 0 || n == 0 {
            return invalid("m and n must be positive");
        }
        if m * n > Self::MAX_GROUP_ORDER {
            return invalid(format!("m*n must be at most {}, got {}", Self::MAX_GROUP_ORDER, m * n));
        }
        let w1 = Self::find_conjugator(&torus, linalg::root_of_unity(1, m), linalg::ONE).ok_or_else(|| {
            Error::UnsupportedParameters(format!(
                "no monomial U^c V^d multiplies U by exp(2 pi i/{m}) and fixes V for q={q}, p={p}; m must divide q"
            ))
        })?;
        let w2 = Self::find_conjugator(&torus, linalg::ONE, linalg::root_of_unity(1, n)).ok_or_else(|| {
            Error::UnsupportedParameters(format!(
                "no monomial U^c V^d fixes U and multiplies V by exp(2 pi i/{n}) for q={q}, p={p}; n must divide q"
            ))
        })?;
        let group = FiniteGroup::product(&FiniteGroup::cyclic(m)?, &FiniteGroup::cyclic(n)?)?;
        let alg = Arc::clone(torus.algebra());
        let (m1, m2) = (torus.monomial(w1.0, w1.1), torus.monomial(w2.0, w2.1));
        let autos = group
            .elements()
            .map(|g| {
                let w = matrix_power(&m1, g / n) * matrix_power(&m2, g % n);
                Automorphism::new(&alg, vec![0], vec![w])
            })
            .collect::<Result<Vec<_>>>()?;
        let action = GroupAction::new(group, alg, autos)?;
        let fixed = action.fixed_subalgebra(linalg::DEFAULT_TOL);

        let expected: Vec<CVec> = (0..q / m.min(q))
            .flat_map(|j| (0..q / n.min(q)).map(move |k| (j, k)))
            .map(|(j, k)| {
                let v = flatten(&torus.monomial(m * j, n * k));
                let norm = linalg::vector_norm(&v);
                v / C64::from(norm)
            })
            .collect();
        let base_span_residual = linalg::containment_residual(&expected, fixed.vectors());
        if expected.len() != fixed.dimension() || base_span_residual > 1e-9 {
            return Err(Error::InternalInconsistency(format!(
                "fixed subalgebra has dimension {} but span{{U^(mj) V^(nk)}} has dimension {} (residual {base_span_residual:.3e})",
                fixed.dimension(),
                expected.len()
            )));
        }
        Ok(Self {
            torus,
            m,
            n,
            conjugators: [w1, w2],
            action,
            fixed,
            base_span_residual,
        })
    }

    /// First `(c, d)` in lexicographic order with `W U W* = su·U` and `W V W* = sv·V`.
    fn find_conjugator(torus: &FuzzyTorus, su: C64, sv: C64) -> Option<Monomial> {
        let (u, v) = (torus.clock(), torus.shift());
        for c in 0..torus.q() {
            for d in 0..torus.q() {
                let w = torus.monomial(c, d);
                let wa = w.adjoint();
                let ru = linalg::frobenius_norm(&(&w * u * &wa - u * su));
                let rv = linalg::frobenius_norm(&(&w * v * &wa - v * sv));
                if ru <= 1e-12 && rv <= 1e-12 {
                    return Some((c, d));
                }
            }
        }
        None
    }

    pub fn torus(&self) -> &FuzzyTorus {
        &self.torus
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Exponents of the conjugators implementing the two generators.
    pub fn conjugators(&self) -> [Monomial; 2] {
        self.conjugators
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }

    pub fn fixed_subalgebra(&self) -> &FixedSubalgebra {
        &self.fixed
    }

    /// Distance of the normalized monomials `U^{mj} V^{nk}` from the computed `A^G`.
    pub fn base_span_residual(&self) -> f64 {
        self.base_span_residual
    }
}

/// Constant connection `∇e_k = Σ_i (A_u)_{ik} e_i ⊗ du + (A_v)_{ik} e_i ⊗ dv`
/// on a free module of rank `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionForm {
    pub coeff_u: CMat,
    pub coeff_v: CMat,
}

impl ConnectionForm {
    pub fn new(coeff_u: CMat, coeff_v: CMat) -> Result<Self> {
        let r = coeff_u.nrows();
        if coeff_u.ncols() != r || coeff_v.nrows() != r || coeff_v.ncols() != r {
            return invalid("connection coefficients must be square matrices of the same size");
        }
        Ok(Self { coeff_u, coeff_v })
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            coeff_u: CMat::zeros(rank, rank),
            coeff_v: CMat::zeros(rank, rank),
        }
    }

    /// Rank 4: `A_u = c_u(E₂₁ − E₁₂)` on `e₁, e₂` and `A_v = c_v(E₄₃ − E₃₄)` on `e₃, e₄`.
    pub fn standard(c_u: f64, c_v: f64) -> Self {
        let mut conn = Self::zero(4);
        conn.coeff_u[(1, 0)] = C64::from(c_u);
        conn.coeff_u[(0, 1)] = C64::from(-c_u);
        conn.coeff_v[(3, 2)] = C64::from(c_v);
        conn.coeff_v[(2, 3)] = C64::from(-c_v);
        conn
    }

    pub fn rank(&self) -> usize {
        self.coeff_u.nrows()
    }

    /// Coefficient of `du ∧ dv`. For constant coefficients the exterior
    /// derivative term vanishes and only `[A_u, A_v]` remains.
    pub fn curvature(&self) -> CMat {
        linalg::commutator(&self.coeff_u, &self.coeff_v)
    }

    pub fn curvature_norm(&self) -> f64 {
        linalg::frobenius_norm(&self.curvature())
    }
}

/// A connection carried to `E = F ⊗_B Ã ≅ Ã^r` with coordinates `a·r + x`.
#[derive(Debug, Clone)]
pub struct LiftedConnection {
    form: ConnectionForm,
    ambient_dim: usize,
}

impl LiftedConnection {
    pub fn form(&self) -> &ConnectionForm {
        &self.form
    }

    pub fn ambient_dimension(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    /// `Id_Ã ⊗ A_u`.
    pub fn operator_u(&self) -> CMat {
        linalg::kron(&CMat::identity(self.ambient_dim, self.ambient_dim), &self.form.coeff_u)
    }

    pub fn operator_v(&self) -> CMat {
        linalg::kron(&CMat::identity(self.ambient_dim, self.ambient_dim), &self.form.coeff_v)
    }

    /// `[K_u, K_v]` on `Ã ⊗ ℂ^r`.
    pub fn curvature_operator(&self) -> CMat {
        linalg::commutator(&self.operator_u(), &self.operator_v())
    }

    /// `‖curvature(lift) − lift(curvature)‖`.
    pub fn lift_residual(&self) -> f64 {
        let lifted = linalg::kron(&CMat::identity(self.ambient_dim, self.ambient_dim), &self.form.curvature());
        linalg::frobenius_norm(&(self.curvature_operator() - lifted))
    }
}

pub fn lift_connection(conn: &ConnectionForm, cover: &TorusCover) -> LiftedConnection {
    LiftedConnection {
        form: conn.clone(),
        ambient_dim: cover.torus().algebra().dimension(),
    }
}

/// Result of descending a lifted connection along a local system.
#[derive(Debug, Clone)]
pub struct Descent {
    /// Orthonormal basis of `F′ = image(p′)` in `Ã ⊗ ℂ^r`.
    pub basis: Vec<CVec>,
    pub base_dimension: usize,
    /// `dim F′ / dim A^G`.
    pub base_rank: f64,
    pub rank_data: Vec<i64>,
    /// `max ‖p′ K (1 − p′)‖ / max(‖K‖, 1)` over the two directions.
    pub well_definedness_residual: f64,
    /// Compressions `Q* K Q` to the orthonormal basis of `F′`.
    pub descended_u: CMat,
    pub descended_v: CMat,
    pub curvature: CMat,
    /// When every `1 ⊗ e_k` lies in `F′`: coefficient matrices of the
    /// descended connection on those generators, and the largest residual of
    /// that expansion.
    pub generator_coefficients: Option<(ConnectionForm, f64)>,
}

impl Descent {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn curvature_norm(&self) -> f64 {
        linalg::frobenius_norm(&self.curvature)
    }
}

fn check_descent_inputs(cover: &TorusCover, system: &LocalSystem, lifted: &LiftedConnection) -> Result<()> {
    crate::cotensor::same_group(cover.group(), system.group())?;
    let r = lifted.rank();
    if system.dimension() != r {
        return invalid(format!(
            "local system has dimension {} but the connection has rank {r}",
            system.dimension()
        ));
    }
    let total = lifted.ambient_dimension() * r;
    if total > MatrixAlgebra::MAX_DIMENSION {
        return Err(Error::UnsupportedParameters(format!(
            "dim(A) * r = {total} exceeds {}",
            MatrixAlgebra::MAX_DIMENSION
        )));
    }
    Ok(())
}

/// `max ‖p′K(1 − p′)‖` over both directions, relative to `max(‖K‖, 1)`:
/// zero exactly when the lifted connection maps `ker p′` into `ker p′`.
pub fn descent_well_definedness(cover: &TorusCover, system: &LocalSystem, lifted: &LiftedConnection) -> Result<f64> {
    check_descent_inputs(cover, system, lifted)?;
    let p = averaging_projection(cover.action(), system)?;
    Ok(well_definedness(&p, lifted))
}

fn well_definedness(p: &CMat, lifted: &LiftedConnection) -> f64 {
    let complement = CMat::identity(p.nrows(), p.ncols()) - p;
    let (ku, kv) = (lifted.operator_u(), lifted.operator_v());
    let scale = linalg::frobenius_norm(&ku).max(linalg::frobenius_norm(&kv)).max(1.0);
    let ru = linalg::frobenius_norm(&(p * &ku * &complement));
    let rv = linalg::frobenius_norm(&(p * &kv * &complement));
    ru.max(rv) / scale
}

/// Descends `lifted` to `F′ = (Ã ⊗ ℂ^r)^G` for the twisted action
/// `g(a ⊗ x) = α_g(a) ⊗ ρ(g)x`. Fails if `p′K` does not factor through `p′`.
pub fn twisted_descent(cover: &TorusCover, system: &LocalSystem, lifted: &LiftedConnection, tol: f64) -> Result<Descent> {
    check_descent_inputs(cover, system, lifted)?;
    let r = lifted.rank();
    let total = lifted.ambient_dimension() * r;
    let action = cover.action();
    let p = averaging_projection(action, system)?;
    let (ku, kv) = (lifted.operator_u(), lifted.operator_v());
    let well = well_definedness(&p, lifted);
    if well > tol {
        return Err(Error::InternalInconsistency(format!(
            "descended connection is not well defined: |p' K (1 - p')| / |K| = {well:.3e}; \
the local system must commute with the connection coefficients"
        )));
    }
    let module = flat_bundle_module(action, system, tol)?;
    let q = linalg::columns_to_matrix(module.basis(), total);
    let descended_u = q.adjoint() * &ku * &q;
    let descended_v = q.adjoint() * &kv * &q;
    let curvature = linalg::commutator(&descended_u, &descended_v);
    let base_dimension = cover.fixed_subalgebra().dimension();

    let alg = action.algebra();
    let one = crate::AlgebraElement::identity(alg).to_vector();
    let generators: Vec<CVec> = (0..r).map(|k| linalg::kron_vec(&one, &linalg::unit(r, k))).collect();
    let one_norm_sq = linalg::vector_norm(&one).powi(2);
    let generator_coefficients = if generators.iter().all(|g| linalg::span_residual(module.basis(), g) <= tol * one_norm_sq.sqrt()) {
        let mut worst: f64 = 0.0;
        let mut coeffs = [CMat::zeros(r, r), CMat::zeros(r, r)];
        for (dir, k_op) in [&ku, &kv].into_iter().enumerate() {
            for k in 0..r {
                let image = &p * (k_op * &generators[k]);
                let mut rest = image.clone();
                for i in 0..r {
                    let c = generators[i].dotc(&image) / C64::from(one_norm_sq);
                    coeffs[dir][(i, k)] = c;
                    rest -= &generators[i] * c;
                }
                worst = worst.max(linalg::vector_norm(&rest));
            }
        }
        let [cu, cv] = coeffs;
        Some((ConnectionForm::new(cu, cv)?, worst))
    } else {
        None
    };

    Ok(Descent {
        basis: module.basis().to_vec(),
        base_dimension,
        base_rank: module.dimension() as f64 / base_dimension as f64,
        rank_data: module.rank_data().to_vec(),
        well_definedness_residual: well,
        descended_u,
        descended_v,
        curvature,
        generator_coefficients,
    })
}

/// Largest distance between `F′` and `A^G ⊗ ℂ^r` in either direction; zero
/// exactly when the twisted module is the untwisted one.
pub fn untwisted_residual(cover: &TorusCover, descent: &Descent, r: usize) -> f64 {
    let fixed = cover.fixed_subalgebra();
    let untwisted: Vec<CVec> = fixed
        .vectors()
        .iter()
        .flat_map(|b| (0..r).map(move |k| linalg::kron_vec(b, &linalg::unit(r, k))))
        .collect();
    linalg::containment_residual(&untwisted, &descent.basis).max(linalg::containment_residual(&descent.basis, &untwisted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DEFAULT_TOL;

    #[test]
    fn pauli_pair() {
        let t = FuzzyTorus::new(2, 1).unwrap();
        let u = CMat::from_diagonal(&CVec::from_vec(vec![C64::from(1.0), C64::from(-1.0)]));
        assert!(linalg::frobenius_norm(&(t.clock() - u)) < 1e-15);
        let v = t.shift();
        assert_eq!(v[(0, 1)], linalg::ONE);
        assert_eq!(v[(1, 0)], linalg::ONE);
        assert!(linalg::frobenius_norm(&(v * t.clock() + t.clock() * v)) < 1e-15);
    }

    #[test]
    fn relations_hold() {
        for (q, p) in [(3, 1), (4, 1), (5, 2), (6, 5), (8, 3)] {
            let t = FuzzyTorus::new(q, p).unwrap();
            assert!(t.relation_residual() <= 1e-12);
            assert!(t.order_residual() <= 1e-12);
        }
        assert_eq!(FuzzyTorus::new(4, 1).unwrap().span_dimension(), 16);
    }

    #[test]
    fn invalid_tori_rejected() {
        assert!(matches!(FuzzyTorus::new(4, 2), Err(Error::InvalidArgument(_))));
        assert!(FuzzyTorus::new(1, 1).is_err());
        assert!(FuzzyTorus::new(65, 1).is_err());
    }

    #[test]
    fn cover_dimensions() {
        for (q, m, n, dim) in [(4, 1, 1, 16), (4, 2, 1, 8), (4, 2, 2, 4), (6, 2, 3, 6)] {
            let cover = TorusCover::new(q, 1, m, n).unwrap();
            assert!(cover.action().check(1e-12).is_valid());
            assert_eq!(cover.fixed_subalgebra().dimension(), dim);
            assert_eq!(dim * m * n, q * q);
        }
    }

    #[test]
    fn non_dividing_cover_unsupported() {
        assert!(matches!(TorusCover::new(4, 1, 3, 1), Err(Error::UnsupportedParameters(_))));
        assert!(matches!(TorusCover::new(4, 1, 4, 8), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn connection_curvatures() {
        assert!(ConnectionForm::standard(1.0, 1.0).curvature_norm() <= 1e-12);
        assert!(ConnectionForm::standard(0.0, 0.0).coeff_u.iter().all(|z| *z == linalg::ZERO));
        let mut e12 = CMat::zeros(2, 2);
        e12[(0, 1)] = linalg::ONE;
        let e21 = e12.transpose();
        let f = ConnectionForm::new(e12, e21).unwrap().curvature();
        let expected = CMat::from_diagonal(&CVec::from_vec(vec![C64::from(1.0), C64::from(-1.0)]));
        assert!(linalg::frobenius_norm(&(f - expected)) < 1e-15);
    }

    #[test]
    fn trivial_descent_reproduces_connection() {
        let cover = TorusCover::new(4, 1, 2, 1).unwrap();
        let conn = ConnectionForm::standard(0.7, -1.3);
        let lifted = lift_connection(&conn, &cover);
        assert!(lifted.lift_residual() <= 1e-12);
        let triv = LocalSystem::trivial(cover.group(), 4).unwrap();
        let d = twisted_descent(&cover, &triv, &lifted, DEFAULT_TOL).unwrap();
        assert_eq!(d.dimension(), 8 * 4);
        assert!((d.base_rank - 4.0).abs() < 1e-12);
        assert!(untwisted_residual(&cover, &d, 4) <= 1e-9);
        let (form, residual) = d.generator_coefficients.clone().unwrap();
        assert!(residual <= 1e-9);
        assert!(linalg::frobenius_norm(&(form.coeff_u - &conn.coeff_u)) <= 1e-9);
        assert!(linalg::frobenius_norm(&(form.coeff_v - &conn.coeff_v)) <= 1e-9);
    }

    #[test]
    fn character_twisted_descent_is_flat() {
        let cover = TorusCover::new(4, 1, 2, 2).unwrap();
        let chi = crate::flat_bundle::characters(cover.group()).unwrap()[1].clone();
        let rho = LocalSystem::new(
            cover.group().clone(),
            cover
                .group()
                .elements()
                .map(|g| if g == 0 { CMat::identity(4, 4) } else { CMat::identity(4, 4) * chi[g] })
                .collect(),
            DEFAULT_TOL,
        )
        .unwrap();
        let lifted = lift_connection(&ConnectionForm::standard(1.0, 2.0), &cover);
        let d = twisted_descent(&cover, &rho, &lifted, DEFAULT_TOL).unwrap();
        assert!((d.base_rank - 4.0).abs() < 1e-12);
        assert!(d.curvature_norm() <= 1e-9);
    }

    #[test]
    fn noncommuting_system_is_rejected() {
        let cover = TorusCover::new(2, 1, 2, 1).unwrap();
        let flip = CMat::from_diagonal(&CVec::from_vec([1.0, -1.0, 1.0, 1.0].map(C64::from).to_vec()));
        let rho = LocalSystem::new(cover.group().clone(), vec![CMat::identity(4, 4), flip], DEFAULT_TOL).unwrap();
        let lifted = lift_connection(&ConnectionForm::standard(1.0, 1.0), &cover);
        assert!(matches!(
            twisted_descent(&cover, &rho, &lifted, DEFAULT_TOL),
            Err(Error::InternalInconsistency(_))
        ));
    }
}
