//! Seeded fixtures shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nccover::{random, FiniteGroup, GroupAction, LeftGModule, LocalSystem, RightGModule};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `ℤ_k` permuting `copies` copies of `ℂ^k`.
pub fn free_cover(k: usize, copies: usize) -> GroupAction {
    GroupAction::regular(FiniteGroup::cyclic(k).expect("k > 0"), copies).expect("valid sizes")
}

/// A random right/left module pair over `ℤ_2 × ℤ_2`, each of dimension at most `max_dim`.
pub fn module_pair(max_dim: usize, seed: u64) -> (RightGModule, LeftGModule) {
    let z2 = FiniteGroup::cyclic(2).expect("order 2");
    let g = FiniteGroup::product(&z2, &z2).expect("order 4");
    let mut r = rng(seed);
    let m = random::right_module(&g, max_dim, &mut r).expect("abelian group");
    let n = random::left_module(&g, max_dim, &mut r).expect("abelian group");
    (m, n)
}

pub fn random_system(group: &FiniteGroup, n: usize, seed: u64) -> LocalSystem {
    LocalSystem::random(group, n, &mut rng(seed)).expect("abelian group")
}
