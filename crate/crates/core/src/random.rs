//! Seeded random inputs for property tests, benchmarks and randomized
//! acceptance scenarios.

use std::sync::Arc;

use rand::Rng;

use crate::action::GroupAction;
use crate::algebra::{AlgebraElement, MatrixAlgebra};
use crate::cotensor::{GSet, LeftGModule, RightGModule, Side};
use crate::error::Result;
use crate::flat_bundle::LocalSystem;
use crate::group::FiniteGroup;
use crate::linalg::{self, CMat, CVec, C64};

/// Standard complex Gaussian entry (Box–Muller).
pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    let r = (-2.0 * u1.ln()).sqrt();
    let t = 2.0 * std::f64::consts::PI * u2;
    C64::new(r * t.cos(), r * t.sin()) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMat {
    CMat::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-ish unitary: QR of a Gaussian matrix with the phases of `R` divided out.
pub fn unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    let qr = matrix(n, n, rng).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / C64::from(d.norm());
            let mut col = q.column_mut(j);
            col *= phase;
        }
    }
    q
}

pub fn element<R: Rng + ?Sized>(algebra: &Arc<MatrixAlgebra>, rng: &mut R) -> AlgebraElement {
    let blocks = algebra.block_sizes().iter().map(|&n| matrix(n, n, rng)).collect();
    AlgebraElement::from_blocks(algebra, blocks).expect("shapes match")
}

/// `ℤ_k` acting on `M_n` by conjugation with powers of a random unitary `W`
/// whose eigenvalues are `k`-th roots of unity.
pub fn cyclic_conjugation<R: Rng + ?Sized>(k: usize, n: usize, rng: &mut R) -> Result<GroupAction> {
    let group = FiniteGroup::cyclic(k)?;
    let algebra = Arc::new(MatrixAlgebra::new(vec![n], format!("M{n}"))?);
    let r = unitary(n, rng);
    let exps: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
    let unitaries = group
        .elements()
        .map(|j| {
            if j == 0 {
                return CMat::identity(n, n);
            }
            let d = CVec::from_iterator(n, exps.iter().map(|&e| linalg::root_of_unity((e * j) as i64, k)));
            &r * CMat::from_diagonal(&d) * r.adjoint()
        })
        .collect();
    GroupAction::by_conjugation(group, algebra, unitaries)
}

/// A random `G`-set: a disjoint union of coset spaces of randomly generated
/// subgroups, at most `max_size` points unless the first orbit alone is larger.
pub fn gset<R: Rng + ?Sized>(group: &FiniteGroup, side: Side, max_size: usize, rng: &mut R) -> Result<GSet> {
    let mut out: Option<GSet> = None;
    loop {
        let gens: Vec<usize> = (0..rng.random_range(0..=2)).map(|_| rng.random_range(0..group.order())).collect();
        let orbit = coset_space(group, &gens, side)?;
        let size = out.as_ref().map_or(0, GSet::size);
        if size > 0 && size + orbit.size() > max_size {
            break;
        }
        out = Some(match out {
            None => orbit,
            Some(x) => x.disjoint_union(&orbit)?,
        });
        if rng.random_bool(0.4) {
            break;
        }
    }
    Ok(out.expect("at least one orbit"))
}

/// `H\G` with `(Hx)·g = H(xg)` on the right, or `G/H` with `g·(xH) = (gx)H` on the left.
pub fn coset_space(group: &FiniteGroup, subgroup_gens: &[usize], side: Side) -> Result<GSet> {
    let member = group.generated_by(subgroup_gens);
    let h: Vec<usize> = group.elements().filter(|&x| member[x]).collect();
    let coset_of = |x: usize| -> Vec<usize> {
        let mut c: Vec<usize> = h
            .iter()
            .map(|&s| match side {
                Side::Right => group.mul(s, x),
                Side::Left => group.mul(x, s),
            })
            .collect();
        c.sort_unstable();
        c
    };
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    let mut label = vec![0; group.order()];
    for x in group.elements() {
        let c = coset_of(x);
        let idx = match cosets.iter().position(|d| *d == c) {
            Some(i) => i,
            None => {
                cosets.push(c);
                cosets.len() - 1
            }
        };
        label[x] = idx;
    }
    let perms = group
        .elements()
        .map(|g| {
            cosets
                .iter()
                .map(|c| {
                    let x = c[0];
                    match side {
                        Side::Right => label[group.mul(x, g)],
                        Side::Left => label[group.mul(g, x)],
                    }
                })
                .collect()
        })
        .collect();
    GSet::new(group.clone(), side, perms)
}

/// A random left module of an abelian group: a random unitary representation,
/// optionally with a copy of the regular module added.
pub fn left_module<R: Rng + ?Sized>(group: &FiniteGroup, max_dim: usize, rng: &mut R) -> Result<LeftGModule> {
    let with_regular = group.order() < max_dim && rng.random_bool(0.5);
    let budget = if with_regular { max_dim - group.order() } else { max_dim };
    let rho = LocalSystem::random(group, rng.random_range(1..=budget), rng)?.to_left_module();
    if with_regular {
        LeftGModule::regular(group).direct_sum(&rho)
    } else {
        Ok(rho)
    }
}

/// Right counterpart of [`left_module`], via `R_g = L_{g⁻¹}`.
pub fn right_module<R: Rng + ?Sized>(group: &FiniteGroup, max_dim: usize, rng: &mut R) -> Result<RightGModule> {
    let left = left_module(group, max_dim, rng)?;
    let ops = group.elements().map(|g| left.operator(group.inverse(g)).clone()).collect();
    RightGModule::new(group.clone(), ops, f64::INFINITY)
}
