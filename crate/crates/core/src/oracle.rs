//! Brute-force cross-checks. Nothing here calls the SVD-based kernel code,
//! the union-find quotient or the averaging-based inner product used by the
//! main modules.

use std::collections::VecDeque;

use crate::action::GroupAction;
use crate::algebra::AlgebraElement;
use crate::cotensor::{GSet, LeftGModule, RightGModule, Side};
use crate::error::{invalid, Result};
use crate::linalg::C64;

/// A value computed by an oracle, with a description of how.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub quantity: String,
    pub value: f64,
    pub method: String,
}

impl OracleResult {
    fn new(quantity: &str, value: f64, method: &str) -> Self {
        debug_assert!(!method.is_empty());
        Self {
            quantity: quantity.into(),
            value,
            method: method.into(),
        }
    }
}

const ELIMINATION_THRESHOLD: f64 = 1e-7;

/// Rank by Gaussian elimination with partial pivoting on a row list.
fn eliminate_rank(mut rows: Vec<Vec<C64>>, cols: usize) -> usize {
    let scale = rows.iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
    let threshold = ELIMINATION_THRESHOLD * scale;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let (pivot, best) = (rank..rows.len())
            .map(|r| (r, rows[r][col].norm()))
            .fold((rank, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= threshold {
            continue;
        }
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for r in rank + 1..rows.len() {
            let factor = rows[r][col] / pivot_row[col];
            if factor.norm() == 0.0 {
                continue;
            }
            for c in col..cols {
                let delta = factor * pivot_row[c];
                rows[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

/// `dim M □_G N` as `dim M · dim N` minus the rank of the stacked system
/// `Σ_i (m_i·g) ⊗ n_i − m_i ⊗ (g·n_i) = 0`, written out entry by entry.
pub fn oracle_cotensor_dim(m: &RightGModule, n: &LeftGModule) -> Result<OracleResult> {
    let (dm, dn) = (m.dimension(), n.dimension());
    if dm > 64 || dn > 64 {
        return invalid("oracle cotensor dimension needs both modules of dimension at most 64");
    }
    if m.group().table() != n.group().table() {
        return invalid("modules are over different groups");
    }
    let cols = dm * dn;
    let mut rows = Vec::with_capacity(m.group().order() * cols);
    for g in m.group().elements() {
        let (r, l) = (m.operator(g), n.operator(g));
        // row (i, j) of R_g ⊗ Id − Id ⊗ L_g
        for i in 0..dm {
            for j in 0..dn {
                let mut row = vec![C64::new(0.0, 0.0); cols];
                for k in 0..dm {
                    row[k * dn + j] += r[(i, k)];
                }
                for k in 0..dn {
                    row[i * dn + k] -= l[(j, k)];
                }
                rows.push(row);
            }
        }
    }
    let rank = eliminate_rank(rows, cols);
    Ok(OracleResult::new(
        "cotensor dimension",
        (cols - rank) as f64,
        "Gaussian elimination with partial pivoting over the constraints for every group element (threshold 1e-7)",
    ))
}

/// `|X ×_G Y|` by breadth-first search over `(x, y) → (x·g, g⁻¹·y)` for all `g`,
/// a set of moves closed under inversion.
pub fn oracle_borel_orbits(x: &GSet, y: &GSet) -> Result<OracleResult> {
    if x.side() != Side::Right || y.side() != Side::Left {
        return invalid("expected a right G-set followed by a left G-set");
    }
    if x.group().table() != y.group().table() {
        return invalid("G-sets are over different groups");
    }
    let (nx, ny) = (x.size(), y.size());
    if nx * ny > 10_000 {
        return invalid("oracle Borel orbit count needs |X|·|Y| <= 10000");
    }
    let group = x.group();
    let mut visited = vec![false; nx * ny];
    let mut orbits = 0;
    for start in 0..nx * ny {
        if visited[start] {
            continue;
        }
        orbits += 1;
        visited[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(pair) = queue.pop_front() {
            let (a, b) = (pair / ny, pair % ny);
            for g in group.elements() {
                let next = x.act(g, a) * ny + y.act(group.inverse(g), b);
                if !visited[next] {
                    visited[next] = true;
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(OracleResult::new(
        "Borel orbit count",
        orbits as f64,
        "breadth-first closure of (x, y) ~ (x g, g^-1 y) over X x Y",
    ))
}

/// `⟨x, y⟩ = (1/|G|) Σ_g α_g(x*y)` summed entry by entry in each block,
/// returned as an element of `Ã`.
pub fn oracle_inner_product(action: &GroupAction, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    if x.algebra() != action.algebra() || y.algebra() != action.algebra() {
        return invalid("elements must belong to the acted-on algebra");
    }
    let sizes = action.algebra().block_sizes().to_vec();
    // x*y, blockwise with explicit loops
    let mut prod: Vec<Vec<Vec<C64>>> = Vec::with_capacity(sizes.len());
    for (b, &s) in sizes.iter().enumerate() {
        let (xb, yb) = (x.block(b), y.block(b));
        let mut out = vec![vec![C64::new(0.0, 0.0); s]; s];
        for i in 0..s {
            for j in 0..s {
                for k in 0..s {
                    out[i][j] += xb[(k, i)].conj() * yb[(k, j)];
                }
            }
        }
        prod.push(out);
    }
    let mut sum: Vec<Vec<Vec<C64>>> = sizes.iter().map(|&s| vec![vec![C64::new(0.0, 0.0); s]; s]).collect();
    let order = action.group().order();
    for g in action.group().elements() {
        let auto = action.automorphism(g);
        for (src, &s) in sizes.iter().enumerate() {
            let target = auto.permutation()[src];
            let u = &auto.unitaries()[target];
            // U a U*
            for i in 0..s {
                for j in 0..s {
                    let mut acc = C64::new(0.0, 0.0);
                    for k in 0..s {
                        for l in 0..s {
                            acc += u[(i, k)] * prod[src][k][l] * u[(j, l)].conj();
                        }
                    }
                    sum[target][i][j] += acc / order as f64;
                }
            }
        }
    }
    let blocks = sum
        .iter()
        .zip(&sizes)
        .map(|(b, &s)| crate::CMat::from_fn(s, s, |i, j| b[i][j]))
        .collect();
    AlgebraElement::from_blocks(action.algebra(), blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cotensor::{commutative_oracle, cotensor_modules};
    use crate::group::FiniteGroup;
    use crate::hilbert::HilbertModule;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trivial_group_cotensor_is_full() {
        let t = FiniteGroup::trivial();
        let r = oracle_cotensor_dim(&RightGModule::trivial(&t, 3), &LeftGModule::trivial(&t, 4)).unwrap();
        assert_eq!(r.value, 12.0);
        assert!(!r.method.is_empty());
    }

    #[test]
    fn regular_cotensor_is_dim_n() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let n = LeftGModule::regular(&g).direct_sum(&LeftGModule::trivial(&g, 3)).unwrap();
        let r = oracle_cotensor_dim(&RightGModule::regular(&g), &n).unwrap();
        assert_eq!(r.value, 7.0);
        assert_eq!(cotensor_modules(&RightGModule::regular(&g), &n).unwrap().dimension(), 7);
    }

    #[test]
    fn borel_orbit_examples() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let x = GSet::regular(&g, Side::Right);
        let y = GSet::regular(&g, Side::Left).disjoint_union(&GSet::trivial(&g, Side::Left, 2).unwrap()).unwrap();
        assert_eq!(oracle_borel_orbits(&x, &y).unwrap().value, 5.0);
        assert_eq!(commutative_oracle(&x, &y).unwrap().count, 5);
        let t = FiniteGroup::trivial();
        let xt = GSet::trivial(&t, Side::Right, 4).unwrap();
        let yt = GSet::trivial(&t, Side::Left, 3).unwrap();
        assert_eq!(oracle_borel_orbits(&xt, &yt).unwrap().value, 12.0);
    }

    #[test]
    fn inner_product_matches_main_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = FiniteGroup::cyclic(2).unwrap();
        let alg = crate::make_algebra(&[2, 2], "M2+M2").unwrap();
        let w = crate::random::unitary(2, &mut rng);
        let autos = vec![
            crate::Automorphism::identity(&alg),
            crate::Automorphism::new(&alg, vec![1, 0], vec![w.clone(), w.adjoint()]).unwrap(),
        ];
        let action = GroupAction::new(g, alg.clone(), autos).unwrap();
        let x = crate::random::element(&alg, &mut rng);
        let y = crate::random::element(&alg, &mut rng);
        let main = HilbertModule::new(action.clone(), 1e-9).inner_product(&x, &y).unwrap();
        let brute = oracle_inner_product(&action, &x, &y).unwrap();
        assert!(main.distance(&brute).unwrap() < 1e-12);
    }
}
