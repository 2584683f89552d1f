//! Acceptance suite: one PASS/FAIL line per criterion, each timed against its
//! runtime budget. Exits nonzero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nccover::cotensor::hopf_cotensor;
use nccover::linalg::{self, CMat, C64};
use nccover::{
    borel_construction, commutative_oracle, cotensor_modules, flat_bundle_module, hopf_comultiplication, k_class,
    lift_connection, oracle_borel_orbits, oracle_cotensor_dim, random, twisted_descent, verify_galois_conditions,
    AlgebraElement, Automorphism, ConnectionForm, FiniteGroup, GaloisCandidate, GroupAction, HilbertModule,
    LeftGModule, LocalSystem, MatrixAlgebra, RightGModule, Side, TorusCover,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

// ---------------------------------------------------------------------------

fn z2_cover(xi0: f64) -> Result<nccover::GaloisReport, String> {
    let action = ok(GroupAction::regular(ok(FiniteGroup::cyclic(2), "group")?, 1), "action")?;
    let alg = action.algebra().clone();
    let module = HilbertModule::new(action, 1e-9);
    let e = AlgebraElement::identity(&alg);
    let xi = ok(AlgebraElement::diagonal(&alg, &[C64::from(xi0), C64::from(0.0)]), "xi")?;
    let candidate = ok(GaloisCandidate::new(module, vec![e], vec![xi]), "frame")?;
    Ok(verify_galois_conditions(&candidate, 1e-12))
}

fn criterion_1() -> Outcome {
    let pass = z2_cover(2f64.sqrt())?;
    ensure!(pass.residuals.iter().all(|&r| r <= 1e-12), "xi = (sqrt 2, 0) residuals {:?}", pass.residuals);
    let fail = z2_cover(1.0)?;
    let r = fail.residuals;
    ensure!(r[0] <= 1e-12 && r[3] <= 1e-12, "xi = (1, 0) should pass conditions 1 and 4: {r:?}");
    ensure!(
        (r[1] - 0.5).abs() <= 1e-12 && (r[2] - 0.5).abs() <= 1e-12,
        "xi = (1, 0) should fail conditions 2 and 3 with residual 0.5: {r:?}"
    );
    ensure!(!fail.verdict, "xi = (1, 0) verdict should be false");
    Ok(format!("pass max residual {:.1e}; fail residuals {:?}", pass.residuals.iter().fold(0f64, |a, &b| a.max(b)), r))
}

fn criterion_2() -> Outcome {
    let z2 = ok(FiniteGroup::cyclic(2), "Z2")?;
    let groups: Vec<FiniteGroup> = vec![
        z2.clone(),
        ok(FiniteGroup::cyclic(3), "Z3")?,
        ok(FiniteGroup::cyclic(4), "Z4")?,
        ok(FiniteGroup::product(&z2, &z2), "Z2xZ2")?,
        ok(FiniteGroup::cyclic(6), "Z6")?,
        ok(FiniteGroup::symmetric(3), "S3")?,
    ];
    let mut count = 0;
    for g in &groups {
        for base in 1..=3 {
            let action = ok(GroupAction::regular(g.clone(), base), "action")?;
            ensure!(ok(action.is_free_on_spectrum(), "freeness")?, "{} x {base} not free", g.label());
            let module = HilbertModule::new(action.clone(), 1e-9);
            let dim_base = module.base().dimension();
            ensure!(dim_base == base, "{}: dim A^G = {dim_base}, expected {base}", g.label());
            ensure!(
                action.algebra().dimension() == g.order() * dim_base,
                "{}: dim = {} but |G| dim A^G = {}",
                g.label(),
                action.algebra().dimension(),
                g.order() * dim_base
            );
            let candidate = ok(GaloisCandidate::free_commutative(module), "frame")?;
            let report = verify_galois_conditions(&candidate, 1e-12);
            ensure!(report.verdict, "{} x {base}: {report}", g.label());
            count += 1;
        }
    }
    Ok(format!("{count} covers (|G| in 2,3,4,6 including Z2xZ2 and S3; base dims 1..3)"))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let z2 = ok(FiniteGroup::cyclic(2), "Z2")?;
    let groups = [z2.clone(), ok(FiniteGroup::cyclic(3), "Z3")?, ok(FiniteGroup::product(&z2, &z2), "Z2xZ2")?];
    let mut regular_cases = 0;
    for i in 0..50 {
        let g = &groups[i % 3];
        let regular = i % 5 == 0;
        let m = if regular {
            RightGModule::regular(g)
        } else {
            ok(random::right_module(g, 8, &mut rng), "right module")?
        };
        let n = ok(random::left_module(g, 8, &mut rng), "left module")?;
        ensure!(m.dimension() <= 8 && n.dimension() <= 8, "scenario {i}: dims exceed 8");
        let main = ok(cotensor_modules(&m, &n), "cotensor")?.dimension();
        let oracle = ok(oracle_cotensor_dim(&m, &n), "oracle")?.value;
        ensure!(main as f64 == oracle, "scenario {i} ({}): main {main} vs oracle {oracle}", g.label());
        if regular {
            ensure!(main == n.dimension(), "scenario {i}: dim(C[G] cotensor N) = {main} but dim N = {}", n.dimension());
            regular_cases += 1;
        }
    }
    Ok(format!("50 scenarios agree, {regular_cases} of them checking the regular-module law"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let z2 = ok(FiniteGroup::cyclic(2), "Z2")?;
    let groups = [
        z2.clone(),
        ok(FiniteGroup::cyclic(3), "Z3")?,
        ok(FiniteGroup::cyclic(4), "Z4")?,
        ok(FiniteGroup::product(&z2, &z2), "Z2xZ2")?,
        ok(FiniteGroup::symmetric(3), "S3")?,
    ];
    let mut total_orbits = 0;
    for i in 0..20 {
        let g = &groups[i % groups.len()];
        let x = ok(random::gset(g, Side::Right, 7, &mut rng), "right G-set")?;
        let y = ok(random::gset(g, Side::Left, 7, &mut rng), "left G-set")?;
        let bc = ok(borel_construction(&x.function_action(), &y.function_action(), 1e-9), "borel")?;
        let uf = ok(commutative_oracle(&x, &y), "commutative oracle")?.count;
        let bfs = ok(oracle_borel_orbits(&x, &y), "orbit oracle")?.value;
        ensure!(
            bc.algebra_dimension() == uf && uf as f64 == bfs,
            "scenario {i} ({}, |X|={}, |Y|={}): generated {} vs union-find {uf} vs BFS {bfs}",
            g.label(),
            x.size(),
            y.size(),
            bc.algebra_dimension()
        );
        total_orbits += uf;
    }
    Ok(format!("20 scenarios agree ({total_orbits} orbits in total)"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let z2 = ok(FiniteGroup::cyclic(2), "Z2")?;
    let groups = [z2.clone(), ok(FiniteGroup::cyclic(3), "Z3")?, ok(FiniteGroup::product(&z2, &z2), "Z2xZ2")?];
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let g = &groups[i % 3];
        let action = ok(GroupAction::regular(g.clone(), rng.random_range(1..=3)), "action")?;
        let n = rng.random_range(1..=3);
        let system = ok(LocalSystem::random(g, n, &mut rng), "local system")?;
        let fb = ok(flat_bundle_module(&action, &system, 1e-9), "flat bundle")?;
        let cot = ok(
            cotensor_modules(&RightGModule::from_action(&action), &system.to_left_module()),
            "cotensor",
        )?
        .dimension();
        ensure!(fb.dimension() == cot, "scenario {i}: image dim {} vs cotensor dim {cot}", fb.dimension());
        let (idem, adj) = (fb.idempotent_residual(), fb.self_adjoint_residual());
        ensure!(idem <= 1e-9 && adj <= 1e-9, "scenario {i}: p^2 - p = {idem:.2e}, p* - p = {adj:.2e}");
        worst = worst.max(idem).max(adj);
        let expected = n as i64;
        ensure!(
            fb.rank_data().iter().all(|&r| r == expected),
            "scenario {i}: rank data {:?}, expected {n} per block",
            fb.rank_data()
        );
    }
    Ok(format!("20 scenarios; worst projection residual {worst:.1e}"))
}

fn swapped_blocks(n: usize, rng: &mut ChaCha8Rng) -> Result<GroupAction, String> {
    let alg = Arc::new(ok(MatrixAlgebra::new(vec![n, n], "Mn+Mn"), "algebra")?);
    let w = random::unitary(n, rng);
    let autos = vec![
        Automorphism::identity(&alg),
        ok(Automorphism::new(&alg, vec![1, 0], vec![w.clone(), w.adjoint()]), "automorphism")?,
    ];
    ok(GroupAction::new(ok(FiniteGroup::cyclic(2), "Z2")?, alg, autos), "action")
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let z2 = ok(FiniteGroup::cyclic(2), "Z2")?;
    let z3 = ok(FiniteGroup::cyclic(3), "Z3")?;
    let z22 = ok(FiniteGroup::product(&z2, &z2), "Z2xZ2")?;
    let actions = vec![
        ok(GroupAction::regular(z2.clone(), 2), "action")?,
        ok(GroupAction::regular(z3.clone(), 1), "action")?,
        ok(GroupAction::regular(z22.clone(), 2), "action")?,
        swapped_blocks(2, &mut rng)?,
    ];
    for action in &actions {
        for n in 1..=3 {
            let triv = ok(LocalSystem::trivial(action.group(), n), "trivial system")?;
            let class = ok(k_class(action, &triv, 1e-9), "k class")?;
            ensure!(class.is_zero(), "k_class(triv_{n}) over {} is {class}", action.algebra());
        }
    }
    for i in 0..10 {
        let action = &actions[i % actions.len()];
        let g = action.group();
        let r1 = ok(LocalSystem::random(g, rng.random_range(1..=2), &mut rng), "system")?;
        let r2 = ok(LocalSystem::random(g, rng.random_range(1..=2), &mut rng), "system")?;
        let sum = ok(r1.direct_sum(&r2), "direct sum")?;
        let (k1, k2, ks) = (
            ok(k_class(action, &r1, 1e-9), "k class")?,
            ok(k_class(action, &r2, 1e-9), "k class")?,
            ok(k_class(action, &sum, 1e-9), "k class")?,
        );
        let added: Vec<i64> = k1.plus.iter().zip(&k2.plus).map(|(a, b)| a + b).collect();
        ensure!(ks.plus == added, "pair {i}: plus(r1 + r2) = {:?} but plus(r1) + plus(r2) = {added:?}", ks.plus);
    }
    Ok("triv_n is zero on 4 covers for n = 1..3; additivity on 10 random pairs".into())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let (cu, cv) = (rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
        let norm = ConnectionForm::standard(cu, cv).curvature_norm();
        ensure!(norm <= 1e-12, "curvature norm {norm:.2e} for c_u = {cu}, c_v = {cv}");
        worst = worst.max(norm);
    }
    let mut e12 = CMat::zeros(2, 2);
    e12[(0, 1)] = C64::from(1.0);
    let perturbed = ok(ConnectionForm::new(e12.clone(), e12.transpose()), "connection")?;
    let mut expected = CMat::identity(2, 2);
    expected[(1, 1)] = C64::from(-1.0);
    let err = linalg::frobenius_norm(&(perturbed.curvature() - expected));
    ensure!(err <= 1e-15, "perturbed curvature differs from diag(1, -1) by {err:.2e}");
    ensure!(perturbed.curvature_norm() > 1.0, "perturbed curvature should be nonzero");
    Ok(format!("20 flat pairs (worst {worst:.1e}); perturbed curvature = diag(1, -1)"))
}

fn criterion_8() -> Outcome {
    let mut lines = Vec::new();
    for (q, p, m, n) in [(4usize, 1i64, 2usize, 1usize), (4, 1, 2, 2), (6, 1, 2, 3)] {
        let cover = ok(TorusCover::new(q, p, m, n), "cover")?;
        let laws = cover.action().check(1e-9);
        ensure!(laws.is_valid(), "({q},{p},{m},{n}): action laws fail, residual {:.2e}", laws.max_residual());
        let dim = cover.fixed_subalgebra().dimension();
        ensure!(dim * m * n == q * q, "({q},{p},{m},{n}): dim A^G = {dim}");
        let conn = ConnectionForm::standard(0.8, -1.7);
        let lifted = lift_connection(&conn, &cover);
        let flat = linalg::frobenius_norm(&lifted.curvature_operator());
        ensure!(flat <= 1e-12 && lifted.lift_residual() <= 1e-12, "({q},{p},{m},{n}): lifted curvature {flat:.2e}");
        let triv = ok(LocalSystem::trivial(cover.group(), conn.rank()), "trivial system")?;
        let d = ok(twisted_descent(&cover, &triv, &lifted, 1e-9), "descent")?;
        let (form, residual) = d
            .generator_coefficients
            .clone()
            .ok_or_else(|| format!("({q},{p},{m},{n}): generators not in the descended module"))?;
        let err = linalg::frobenius_norm(&(&form.coeff_u - &conn.coeff_u))
            .max(linalg::frobenius_norm(&(&form.coeff_v - &conn.coeff_v)))
            .max(residual);
        ensure!(err <= 1e-9, "({q},{p},{m},{n}): descent differs from the input connection by {err:.2e}");
        lines.push(format!("({q},{p},{m},{n}) dim A^G={dim}"));
    }
    Ok(lines.join("; "))
}

fn groups_up_to_order_8() -> Result<Vec<FiniteGroup>, String> {
    let c = |k| ok(FiniteGroup::cyclic(k), "cyclic");
    let mut out = Vec::new();
    for k in 1..=8 {
        out.push(c(k)?);
    }
    out.push(ok(FiniteGroup::product(&c(2)?, &c(2)?), "Z2xZ2")?);
    out.push(ok(FiniteGroup::product(&c(2)?, &c(4)?), "Z2xZ4")?);
    let z22 = ok(FiniteGroup::product(&c(2)?, &c(2)?), "Z2xZ2")?;
    out.push(ok(FiniteGroup::product(&z22, &c(2)?), "Z2^3")?);
    out.push(ok(FiniteGroup::symmetric(3), "S3")?);
    out.push(ok(FiniteGroup::dihedral(4), "D4")?);
    out.push(FiniteGroup::quaternion());
    Ok(out)
}

fn criterion_9() -> Outcome {
    let groups = groups_up_to_order_8()?;
    for g in &groups {
        let delta = hopf_comultiplication(g);
        ensure!(delta.is_coassociative(), "Delta is not coassociative for {}", g.label());
        ensure!(delta.is_counital(g.identity()), "Delta is not counital for {}", g.label());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let g = &groups[1 + i % (groups.len() - 1)];
        let (m, n) = if g.is_abelian() {
            (
                ok(random::right_module(g, 8, &mut rng), "right module")?,
                ok(random::left_module(g, 8, &mut rng), "left module")?,
            )
        } else {
            let x = ok(random::gset(g, Side::Left, 10, &mut rng), "G-set")?;
            let y = ok(random::gset(g, Side::Left, 10, &mut rng), "G-set")?;
            (RightGModule::from_action(&x.function_action()), LeftGModule::from_action(&y.function_action()))
        };
        let group_route = ok(cotensor_modules(&m, &n), "cotensor")?;
        let hopf_route = ok(hopf_cotensor(&m, &n, 1e-9), "Hopf cotensor")?;
        ensure!(
            group_route.dimension() == hopf_route.dimension(),
            "scenario {i} ({}): dims {} vs {}",
            g.label(),
            group_route.dimension(),
            hopf_route.dimension()
        );
        let c = group_route.containment_residual(&hopf_route).max(hopf_route.containment_residual(&group_route));
        ensure!(c <= 1e-9, "scenario {i} ({}): containment residual {c:.2e}", g.label());
        worst = worst.max(c);
    }
    Ok(format!("Delta exact on {} groups; 20 scenarios, worst containment {worst:.1e}", groups.len()))
}

fn examples_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples")
}

fn run_cli(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = ok(Command::new(env!("CARGO_BIN_EXE_nccover")).args(args).output(), "spawn")?;
    let code = out.status.code().ok_or("terminated by a signal")?;
    Ok((code, out.stdout))
}

fn criterion_10() -> Outcome {
    let tmp = ok(tempfile::tempdir(), "tempdir")?;
    let dir = examples_dir();
    let mut files: Vec<PathBuf> = ok(std::fs::read_dir(&dir), "examples")?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    ensure!(!files.is_empty(), "no example scenarios in {}", dir.display());
    for f in &files {
        let name = f.file_stem().unwrap_or_default().to_string_lossy().into_owned();
        let mut reports = Vec::new();
        for run in 0..2 {
            let out = tmp.path().join(format!("{name}.{run}.json"));
            let (code, stdout) = run_cli(&[
                "run",
                "--with-oracle",
                "--quiet",
                "--report",
                &out.to_string_lossy(),
                &f.to_string_lossy(),
            ])?;
            ensure!(code == 0 || code == 1, "{name}: exit {code}");
            let file = ok(std::fs::read(&out), "report")?;
            ensure!(file == stdout, "{name}: report file differs from stdout");
            reports.push(file);
        }
        ensure!(reports[0] == reports[1], "{name}: reports differ between runs");
    }

    let batch: Vec<Vec<u8>> = (0..2)
        .map(|run| {
            let out = tmp.path().join(format!("batch{run}"));
            let (_, stdout) = run_cli(&["run", "--quiet", "--batch", &dir.to_string_lossy(), "--report", &out.to_string_lossy()])?;
            let mut all = stdout;
            for f in &files {
                let stem = f.file_stem().unwrap_or_default().to_string_lossy().into_owned();
                all.extend(ok(std::fs::read(out.join(format!("{stem}.report.json"))), "batch report")?);
            }
            Ok(all)
        })
        .collect::<Result<_, String>>()?;
    ensure!(batch[0] == batch[1], "batch reports differ between runs");

    let pass = dir.join("galois-z2-pass.json");
    let fail = dir.join("galois-z2-fail.json");
    let (c0, _) = run_cli(&["check-galois", "--quiet", &pass.to_string_lossy()])?;
    let (c1, stdout) = run_cli(&["check-galois", "--quiet", &fail.to_string_lossy()])?;
    let report: nccover_cli::Report = ok(serde_json::from_slice(&stdout), "fail report")?;
    let residual = |k: usize| report.checks.iter().find(|c| c.name.starts_with(&format!("condition {k}:"))).map(|c| c.residual);
    ensure!(
        residual(2).is_some_and(|r| (r - 0.5).abs() <= 1e-12) && residual(3).is_some_and(|r| (r - 0.5).abs() <= 1e-12),
        "failing report residuals {:?} {:?}",
        residual(2),
        residual(3)
    );
    let malformed = tmp.path().join("malformed.json");
    ok(std::fs::write(&malformed, "{\"format_version\": 1, \"kind\": "), "write")?;
    let (c2, _) = run_cli(&["run", "--quiet", &malformed.to_string_lossy()])?;
    ensure!((c0, c1, c2) == (0, 1, 2), "exit codes pass/fail/malformed = {c0}/{c1}/{c2}");
    Ok(format!("{} scenarios byte-identical across runs and in batch mode; exit codes 0/1/2", files.len()))
}

// ---------------------------------------------------------------------------

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "Galois verifier soundness", budget: Duration::from_millis(100), run: criterion_1 },
        Criterion { id: 2, name: "free commutative covers", budget: Duration::from_secs(1), run: criterion_2 },
        Criterion { id: 3, name: "cotensor/oracle agreement", budget: Duration::from_secs(5), run: criterion_3 },
        Criterion { id: 4, name: "Borel commutative cross-check", budget: Duration::from_secs(5), run: criterion_4 },
        Criterion { id: 5, name: "flat-bundle double construction", budget: Duration::from_secs(5), run: criterion_5 },
        Criterion { id: 6, name: "K-class laws", budget: Duration::from_secs(1), run: criterion_6 },
        Criterion { id: 7, name: "torus flatness", budget: Duration::from_millis(100), run: criterion_7 },
        Criterion { id: 8, name: "torus cover pipeline", budget: Duration::from_secs(10), run: criterion_8 },
        Criterion { id: 9, name: "Hopf layer", budget: Duration::from_secs(5), run: criterion_9 },
        Criterion { id: 10, name: "CLI determinism and exit codes", budget: Duration::from_secs(120), run: criterion_10 },
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failures = 0;
    for c in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let result = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (verdict, detail) = match result {
            Ok(_) if elapsed > c.budget => ("FAIL", format!("took {elapsed:.3?}, over the {:?} budget", c.budget)),
            Ok(d) => ("PASS", d),
            Err(e) => ("FAIL", e),
        };
        if verdict == "FAIL" {
            failures += 1;
        }
        println!("criterion {:>2} {:<32} {verdict}  [{elapsed:.3?} / {:?}]  {detail}", c.id, c.name, c.budget);
    }
    if failures > 0 {
        println!("{failures} criterion(s) failed");
        std::process::exit(1);
    }
}
