//! Evaluation of a parsed scenario into a [`Report`].

use nccover::cotensor::{
    cotensor_from_generators, cotensor_modules_with_tol, hopf_cotensor, left_coaction_residual,
    right_coaction_residual,
};
use nccover::linalg::{self, CMat};
use nccover::torus::untwisted_residual;
use nccover::{
    borel_construction, commutative_oracle, descent_well_definedness, flat_bundle_module, hopf_comultiplication,
    k_class, lift_connection, oracle_borel_orbits, oracle_cotensor_dim, oracle_inner_product, twisted_descent,
    verify_galois_conditions, AlgebraElement, Error, GaloisCandidate, GaloisReport, GroupAction, HilbertModule,
    LeftGModule, LocalSystem, RightGModule, Side, TorusCover, DEFAULT_TOL, OUTERNESS_DISCLAIMER,
};

use crate::report::Report;
use crate::scenario::{
    build_action, build_connection, build_elements, build_group, build_gset, build_left_module, build_right_module,
    build_system, check_tolerance, BorelPayload, BundlePayload, ConnectionPayload, CotensorPayload, DescentPayload,
    FrameSpec, GaloisPayload, InputError, ModuleSpec, Payload, Scenario, TorusParams,
};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunOptions {
    /// Overrides the scenario's tolerance.
    pub tolerance: Option<f64>,
    pub with_oracle: bool,
}

const RIGHT_ACTION_NOTE: &str =
    "a left action alpha on the algebra is used as the right action a.g = alpha_{g^-1}(a)";

enum Failure {
    Input(InputError),
    Internal(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalInconsistency(m) => Failure::Internal(m),
            other => Failure::Input(InputError::new(other.to_string())),
        }
    }
}

type Step = std::result::Result<(), Failure>;

/// Runs a scenario. Input problems (including parameters the library rejects)
/// are errors; everything else, including failed checks and internal
/// cross-check mismatches, ends up in the report.
pub fn run_scenario(scenario: &Scenario, options: &RunOptions) -> Result<Report, InputError> {
    let tol = options.tolerance.or(scenario.tolerance).unwrap_or(DEFAULT_TOL);
    check_tolerance(tol).map_err(|e| InputError::new(format!("invalid value at `tolerance`: {e}")))?;
    let mut report = Report::new(scenario.kind, tol, scenario.raw.clone());
    let oracle = options.with_oracle;
    let step = match &scenario.payload {
        Payload::Galois(p) => galois(p, tol, oracle, &mut report),
        Payload::Cotensor(p) => cotensor(p, tol, oracle, &mut report),
        Payload::Borel(p) => borel(p, tol, oracle, &mut report),
        Payload::FlatBundle(p) => flat_bundle(p, tol, oracle, &mut report),
        Payload::KClass(p) => kclass(p, tol, oracle, &mut report),
        Payload::TorusCover(p) => torus_cover(p, tol, oracle, &mut report),
        Payload::TorusConnection(p) => torus_connection(p, tol, &mut report),
        Payload::Descent(p) => descent(p, tol, &mut report),
    };
    match step {
        Ok(()) => Ok(report),
        Err(Failure::Input(e)) => Err(e),
        Err(Failure::Internal(m)) => {
            report.exact("internal cross-checks agree", false);
            report.note(format!("internal inconsistency: {m}"));
            Ok(report)
        }
    }
}

fn check_action(action: &GroupAction, tol: f64, report: &mut Report) {
    let laws = action.check(tol);
    report.check("action laws", laws.max_residual(), tol);
    for v in laws.violations.iter().take(8) {
        report.note(format!("action law violated: {v}"));
    }
}

fn disclaim_if_noncommutative(action: &GroupAction, report: &mut Report) {
    if !action.algebra().is_commutative() {
        report.warn(OUTERNESS_DISCLAIMER);
    }
}

fn record_oracle_error(report: &mut Report, quantity: &str, e: Error) {
    report.warn(format!("oracle for {quantity} skipped: {e}"));
}

// ---------------------------------------------------------------------------

fn galois(p: &GaloisPayload, tol: f64, with_oracle: bool, report: &mut Report) -> Step {
    let action = build_action(&p.action, "payload.action")?;
    check_action(&action, tol, report);
    let module = HilbertModule::new(action.clone(), tol);
    let algebra = action.algebra();
    let candidate = match &p.frame {
        FrameSpec::Canonical => GaloisCandidate::free_commutative(module.clone()),
        FrameSpec::Explicit { e, xi } => {
            let e = build_elements(e, algebra, "payload.frame.explicit.e")?;
            let xi = build_elements(xi, algebra, "payload.frame.explicit.xi")?;
            GaloisCandidate::new(module.clone(), e, xi)
        }
    }
    .map_err(|e| InputError::new(format!("invalid value at `payload.frame`: {e}")))?;
    let probes = build_elements(&p.probes, algebra, "payload.probes")?;

    let galois = verify_galois_conditions(&candidate, tol);
    for (i, name) in GaloisReport::CONDITION_NAMES.iter().enumerate() {
        report.check(&format!("condition {}: {name}", i + 1), galois.residuals[i], tol);
    }
    let base = module.base().dimension();
    report.dimension("algebra", algebra.dimension());
    report.dimension("base", base);
    report.dimension("group_order", action.group().order());
    report.dimension("frame_size", candidate.frame_xi().len());
    if algebra.is_commutative() {
        let free = action.is_free_on_spectrum()?;
        report.note(format!("commutative action; free on the spectrum: {free}"));
        if free {
            report.equal("dim algebra = |G| dim base", algebra.dimension(), action.group().order() * base);
        }
    }
    report.note("inner product <x, y> = (1/|G|) sum_g alpha_g(x* y), conjugate-linear in x");
    disclaim_if_noncommutative(&action, report);

    if with_oracle {
        let elements: Vec<&AlgebraElement> = candidate.frame_xi().iter().chain(&probes).collect();
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for x in &elements {
            for y in &elements {
                let main = module.inner_product(x, y)?;
                let brute = oracle_inner_product(&action, x, y)?;
                worst = worst.max(main.distance(&brute)?);
                scale = scale.max(brute.operator_norm());
            }
        }
        report.compare_distance(
            "inner products of frame and probe elements",
            worst,
            tol * scale.max(1.0),
            "explicit sum over group elements and matrix entries",
        );
    }
    Ok(())
}

fn cotensor(p: &CotensorPayload, tol: f64, with_oracle: bool, report: &mut Report) -> Step {
    let group = build_group(&p.group, "payload.group")?;
    let m = build_right_module(&p.right, &group, tol, "payload.right")?;
    let n = build_left_module(&p.left, &group, tol, "payload.left")?;
    let main = cotensor_modules_with_tol(&m, &n, tol)?;
    let generators = cotensor_from_generators(&m, &n, tol)?;
    let hopf = hopf_cotensor(&m, &n, tol)?;
    let delta = hopf_comultiplication(&group);

    report.dimension("group_order", group.order());
    report.dimension("right", m.dimension());
    report.dimension("left", n.dimension());
    report.dimension("cotensor", main.dimension());
    report.dimension("cotensor_generators", generators.dimension());
    report.dimension("cotensor_hopf", hopf.dimension());

    report.check("kernel constraints hold on the basis", main.constraint_residual(&m, &n), tol);
    report.equal("generator-only route has the same dimension", generators.dimension(), main.dimension());
    report.check(
        "generator-only route spans the same subspace",
        main.containment_residual(&generators).max(generators.containment_residual(&main)),
        tol,
    );
    report.exact("comultiplication is coassociative", delta.is_coassociative());
    report.exact("comultiplication is counital", delta.is_counital(group.identity()));
    report.check("right coaction is coassociative", right_coaction_residual(&m, &delta), tol);
    report.check("left coaction is coassociative", left_coaction_residual(&n, &delta), tol);
    report.equal("Hopf route has the same dimension", hopf.dimension(), main.dimension());
    report.check(
        "Hopf route spans the same subspace",
        main.containment_residual(&hopf).max(hopf.containment_residual(&main)),
        tol,
    );
    if matches!(p.right, ModuleSpec::Regular) {
        report.equal("dim(C[G] cotensor N) = dim N", main.dimension(), n.dimension());
    }
    if matches!(p.left, ModuleSpec::Regular) {
        report.equal("dim(M cotensor C[G]) = dim M", main.dimension(), m.dimension());
    }
    if matches!(p.right, ModuleSpec::Action(_)) {
        report.note(RIGHT_ACTION_NOTE);
    }

    if with_oracle {
        match oracle_cotensor_dim(&m, &n) {
            Ok(o) => report.compare("cotensor dimension", main.dimension() as f64, o.value, 0.0, &o.method),
            Err(e) => record_oracle_error(report, "cotensor dimension", e),
        }
    }
    Ok(())
}

fn borel(p: &BorelPayload, tol: f64, with_oracle: bool, report: &mut Report) -> Step {
    report.note("tensor products of finite-dimensional C*-algebras carry a unique C*-norm; min and max agree");
    match p {
        BorelPayload::Gsets { group, right, left } => {
            let group = build_group(group, "payload.gsets.group")?;
            let x = build_gset(right, &group, Side::Right, "payload.gsets.right")?;
            let y = build_gset(left, &group, Side::Left, "payload.gsets.left")?;
            let bc = borel_construction(&x.function_action(), &y.function_action(), tol)?;
            let quotient = commutative_oracle(&x, &y)?;
            report.dimension("right_set", x.size());
            report.dimension("left_set", y.size());
            report.dimension("orbits", quotient.count);
            record_borel(&bc, tol, report);
            report.equal(
                "generated subalgebra dimension = orbit count",
                bc.algebra_dimension(),
                quotient.count,
            );
            report.note("functions on X act on the right by (f.g)(x) = f(x g^-1) converted as for algebras");
            if with_oracle {
                match oracle_borel_orbits(&x, &y) {
                    Ok(o) => report.compare("orbit count", bc.algebra_dimension() as f64, o.value, 0.0, &o.method),
                    Err(e) => record_oracle_error(report, "orbit count", e),
                }
            }
        }
        BorelPayload::Actions { right, left } => {
            let right = build_action(right, "payload.actions.right")?;
            let left = build_action(left, "payload.actions.left")?;
            check_action(&right, tol, report);
            let laws = left.check(tol);
            report.check("left action laws", laws.max_residual(), tol);
            let bc = borel_construction(&right, &left, tol)?;
            record_borel(&bc, tol, report);
            report.note(RIGHT_ACTION_NOTE);
            disclaim_if_noncommutative(&right, report);
            disclaim_if_noncommutative(&left, report);
            if with_oracle {
                let m = RightGModule::from_action(&right);
                let n = LeftGModule::from_action(&left);
                match oracle_cotensor_dim(&m, &n) {
                    Ok(o) => {
                        report.compare("linear dimension", bc.linear_dimension() as f64, o.value, 0.0, &o.method)
                    }
                    Err(e) => record_oracle_error(report, "linear dimension", e),
                }
            }
        }
    }
    Ok(())
}

fn record_borel(bc: &nccover::BorelConstruction, tol: f64, report: &mut Report) {
    report.dimension("tensor_algebra", bc.tensor_algebra().dimension());
    report.dimension("linear", bc.linear_dimension());
    report.dimension("generated", bc.algebra_dimension());
    report.check("generated span is a *-subalgebra", bc.closure_residual(), tol);
    report.note(format!(
        "the cotensor subspace is {}closed under products and adjoints",
        if bc.is_closed() { "" } else { "not " }
    ));
}

fn build_bundle(p: &BundlePayload, tol: f64) -> std::result::Result<(GroupAction, LocalSystem), Failure> {
    let action = build_action(&p.action, "payload.action")?;
    let system = build_system(&p.system, action.group(), tol, "payload.system")?;
    Ok((action, system))
}

fn is_free_commutative(action: &GroupAction) -> bool {
    action.algebra().is_commutative() && action.is_free_on_spectrum().unwrap_or(false)
}

fn bundle_oracle(action: &GroupAction, system: &LocalSystem, main: usize, report: &mut Report) {
    let m = RightGModule::from_action(action);
    match oracle_cotensor_dim(&m, &system.to_left_module()) {
        Ok(o) => report.compare("module dimension", main as f64, o.value, 0.0, &o.method),
        Err(e) => record_oracle_error(report, "module dimension", e),
    }
}

fn flat_bundle(p: &BundlePayload, tol: f64, with_oracle: bool, report: &mut Report) -> Step {
    let (action, system) = build_bundle(p, tol)?;
    check_action(&action, tol, report);
    let fb = flat_bundle_module(&action, &system, tol)?;
    report.dimension("algebra", action.algebra().dimension());
    report.dimension("system", system.dimension());
    report.dimension("module", fb.dimension());
    report.dimension("cotensor", fb.cotensor_dimension());
    report.check("projection is idempotent", fb.idempotent_residual(), tol);
    report.check("projection is self-adjoint", fb.self_adjoint_residual(), tol);
    report.equal("projection image dimension = cotensor dimension", fb.dimension(), fb.cotensor_dimension());
    report.check("module is closed under the left base action", fb.left_closure_residual(tol), tol);
    report.check("module is closed under the right base action", fb.right_closure_residual(tol), tol);
    report.rank_data.insert("module".into(), fb.rank_data().to_vec());
    report
        .rank_data
        .insert("base_block_sizes".into(), fb.base_block_sizes().iter().map(|&k| k as i64).collect());
    if is_free_commutative(&action) {
        let n = system.dimension() as i64;
        report.exact("rank is dim of the system on every base block", fb.rank_data().iter().all(|&r| r == n));
    }
    report.note(RIGHT_ACTION_NOTE);
    report.note("rank data: multiplicity of each simple base block M_k in the module, tr((R_z x I) p) / k");
    disclaim_if_noncommutative(&action, report);
    if with_oracle {
        bundle_oracle(&action, &system, fb.dimension(), report);
    }
    Ok(())
}

fn kclass(p: &BundlePayload, tol: f64, with_oracle: bool, report: &mut Report) -> Step {
    let (action, system) = build_bundle(p, tol)?;
    check_action(&action, tol, report);
    let class = k_class(&action, &system, tol)?;
    report.dimension("system", system.dimension());
    report.rank_data.insert("plus".into(), class.plus.clone());
    report.rank_data.insert("minus".into(), class.minus.clone());
    report.rank_data.insert("difference".into(), class.difference());
    report.note(format!("class: {class}"));
    report.note(format!("the class is {}zero", if class.is_zero() { "" } else { "not " }));
    disclaim_if_noncommutative(&action, report);
    if with_oracle {
        let fb = flat_bundle_module(&action, &system, tol)?;
        bundle_oracle(&action, &system, fb.dimension(), report);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Torus

fn build_cover(q: usize, p: i64, m: usize, n: usize, report: &mut Report) -> std::result::Result<TorusCover, Failure> {
    let cover = TorusCover::new(q, p, m, n)?;
    let [(c1, d1), (c2, d2)] = cover.conjugators();
    report.note(format!(
        "covering group Z{m} x Z{n} acts by conjugation with U^{c1} V^{d1} and U^{c2} V^{d2}"
    ));
    report.warn(OUTERNESS_DISCLAIMER);
    Ok(cover)
}

fn torus_cover(p: &TorusParams, tol: f64, with_oracle: bool, report: &mut Report) -> Step {
    let cover = build_cover(p.q, p.p, p.m, p.n, report)?;
    let torus = cover.torus();
    let fixed = cover.fixed_subalgebra();
    report.check("VU = zeta UV", torus.relation_residual(), tol);
    report.check("U^q = V^q = 1", torus.order_residual(), tol);
    check_action(cover.action(), tol, report);
    report.equal("dim(A^G) mn = q^2", fixed.dimension() * p.m * p.n, p.q * p.q);
    report.check("A^G is a *-subalgebra", fixed.closure_residual(), tol);
    report.check("A^G is spanned by the invariant monomials", cover.base_span_residual(), tol);
    report.dimension("q", p.q);
    report.dimension("algebra", p.q * p.q);
    report.dimension("monomial_span", torus.span_dimension());
    report.dimension("group_order", cover.group().order());
    report.dimension("fixed_subalgebra", fixed.dimension());
    let blocks = fixed.central_decomposition(tol)?;
    report.rank_data.insert("base_block_sizes".into(), blocks.iter().map(|b| b.size as i64).collect());
    if with_oracle {
        let m = RightGModule::from_action(cover.action());
        let n = LeftGModule::trivial(cover.group(), 1);
        match oracle_cotensor_dim(&m, &n) {
            Ok(o) => report.compare("fixed subalgebra dimension", fixed.dimension() as f64, o.value, 0.0, &o.method),
            Err(e) => record_oracle_error(report, "fixed subalgebra dimension", e),
        }
    }
    Ok(())
}

fn torus_connection(p: &ConnectionPayload, tol: f64, report: &mut Report) -> Step {
    let cover = build_cover(p.q, p.p, p.m, p.n, report)?;
    let conn = build_connection(&p.connection, "payload.connection")?;
    let lifted = lift_connection(&conn, &cover);
    report.dimension("rank", conn.rank());
    report.dimension("ambient", lifted.ambient_dimension());
    report.check("connection is flat", conn.curvature_norm(), tol);
    report.check("lift of the curvature is the curvature of the lift", lifted.lift_residual(), tol);
    report.check("lifted connection is flat", linalg::frobenius_norm(&lifted.curvature_operator()), tol);
    report.value("curvature_norm", conn.curvature_norm());
    report.matrix("curvature", &conn.curvature());
    report.note("constant coefficients: curvature = [A_u, A_v] on the free module");
    Ok(())
}

fn descent(p: &DescentPayload, tol: f64, report: &mut Report) -> Step {
    let cover = build_cover(p.q, p.p, p.m, p.n, report)?;
    let conn = build_connection(&p.connection, "payload.connection")?;
    let system = build_system(&p.system, cover.group(), tol, "payload.system")?;
    let lifted = lift_connection(&conn, &cover);
    let well = descent_well_definedness(&cover, &system, &lifted)?;
    report.dimension("rank", conn.rank());
    report.dimension("system", system.dimension());
    report.value("input_curvature_norm", conn.curvature_norm());
    if !report.check("descended connection is well defined", well, tol) {
        report.note("the local system does not commute with the connection coefficients");
        return Ok(());
    }
    let d = twisted_descent(&cover, &system, &lifted, tol)?;
    report.dimension("module", d.dimension());
    report.dimension("base", d.base_dimension);
    report.value("base_rank", d.base_rank);
    report.value("descended_curvature_norm", d.curvature_norm());
    report.rank_data.insert("module".into(), d.rank_data.clone());
    if conn.curvature_norm() <= tol {
        report.check("descended connection is flat", d.curvature_norm(), tol);
    }
    let trivial = system.matrices().iter().all(|m| *m == CMat::identity(m.nrows(), m.ncols()));
    match &d.generator_coefficients {
        Some((form, residual)) => {
            report.check("descended connection is determined by its generator coefficients", *residual, tol);
            report.matrix("descended_u", &form.coeff_u);
            report.matrix("descended_v", &form.coeff_v);
            if trivial {
                let err = linalg::frobenius_norm(&(&form.coeff_u - &conn.coeff_u))
                    .max(linalg::frobenius_norm(&(&form.coeff_v - &conn.coeff_v)));
                report.check("descent reproduces the input connection", err, tol);
            }
        }
        None => report.note("the generators 1 x e_k do not lie in the twisted module; coefficients not reported"),
    }
    if trivial {
        report.check(
            "twisted module equals the untwisted one",
            untwisted_residual(&cover, &d, system.dimension()),
            tol,
        );
    }
    Ok(())
}
