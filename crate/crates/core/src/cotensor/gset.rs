//! Finite `G`-sets and the commutative side of the Borel construction.

use std::sync::Arc;

use crate::action::GroupAction;
use crate::algebra::MatrixAlgebra;
use crate::error::{invalid, Result};
use crate::group::FiniteGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A finite set with a left or right `G`-action. `perms[g][x]` is `x·g`
/// (right) or `g·x` (left).
#[derive(Debug, Clone)]
pub struct GSet {
    group: FiniteGroup,
    side: Side,
    perms: Vec<Vec<usize>>,
}

impl GSet {
    pub fn new(group: FiniteGroup, side: Side, perms: Vec<Vec<usize>>) -> Result<Self> {
        if perms.len() != group.order() {
            return invalid(format!("expected {} permutations, got {}", group.order(), perms.len()));
        }
        let size = perms[0].len();
        if size == 0 {
            return invalid("G-set must be nonempty");
        }
        for (g, p) in perms.iter().enumerate() {
            if p.len() != size {
                return invalid(format!("permutation {g} has length {}, expected {size}", p.len()));
            }
            let mut seen = vec![false; size];
            for &x in p {
                if x >= size || std::mem::replace(&mut seen[x], true) {
                    return invalid(format!("entry {g} is not a permutation of 0..{size}"));
                }
            }
        }
        if perms[group.identity()].iter().enumerate().any(|(x, &y)| x != y) {
            return invalid("the identity must act trivially");
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                for x in 0..size {
                    let (lhs, name) = match side {
                        Side::Right => (perms[h][perms[g][x]], "(x·g)·h = x·(gh)"),
                        Side::Left => (perms[g][perms[h][x]], "g·(h·x) = (gh)·x"),
                    };
                    if lhs != perms[gh][x] {
                        return invalid(format!("{name} fails for g={g}, h={h}, x={x}"));
                    }
                }
            }
        }
        Ok(Self { group, side, perms })
    }

    /// `G` acting on itself by multiplication on the given side.
    pub fn regular(group: &FiniteGroup, side: Side) -> Self {
        let perms = group
            .elements()
            .map(|g| {
                group
                    .elements()
                    .map(|x| match side {
                        Side::Right => group.mul(x, g),
                        Side::Left => group.mul(g, x),
                    })
                    .collect()
            })
            .collect();
        Self {
            group: group.clone(),
            side,
            perms,
        }
    }

    pub fn trivial(group: &FiniteGroup, side: Side, size: usize) -> Result<Self> {
        if size == 0 {
            return invalid("G-set must be nonempty");
        }
        Ok(Self {
            group: group.clone(),
            side,
            perms: vec![(0..size).collect(); group.order()],
        })
    }

    /// Disjoint union; points of `other` are shifted by `self.size()`.
    pub fn disjoint_union(&self, other: &GSet) -> Result<Self> {
        super::same_group(&self.group, &other.group)?;
        if self.side != other.side {
            return invalid("cannot join G-sets acted on from different sides");
        }
        let shift = self.size();
        let perms = self
            .perms
            .iter()
            .zip(&other.perms)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&y| y + shift)).collect())
            .collect();
        Ok(Self {
            group: self.group.clone(),
            side: self.side,
            perms,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn size(&self) -> usize {
        self.perms[0].len()
    }

    pub fn permutations(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// Image of `x` under `g`.
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.perms[g][x]
    }

    /// The induced action on `ℂ^X`. For a right set the right action of the
    /// result is `δ_x·g = δ_{xg}`; for a left set `α_g(δ_y) = δ_{gy}`.
    pub fn function_action(&self) -> GroupAction {
        let algebra = Arc::new(
            MatrixAlgebra::commutative(self.size(), format!("C^{}", self.size())).expect("size is in range"),
        );
        let perms = self
            .group
            .elements()
            .map(|g| match self.side {
                Side::Right => self.perms[self.group.inverse(g)].clone(),
                Side::Left => self.perms[g].clone(),
            })
            .collect();
        GroupAction::by_permutations(self.group.clone(), algebra, perms).expect("validated permutations")
    }
}

/// `X ×_G Y`: the quotient of `X × Y` by `(x·g, y) ~ (x, g·y)`.
#[derive(Debug, Clone)]
pub struct OrbitQuotient {
    /// Class of the pair `(x, y)` at index `x·|Y| + y`; classes are numbered
    /// in order of first appearance.
    pub labels: Vec<usize>,
    pub count: usize,
    pub algebra: MatrixAlgebra,
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Commutative Borel construction: the orbit set `X ×_G Y` of
/// `(x, y) ≈ (x·g, g⁻¹·y)` and `ℂ^{X ×_G Y}`.
pub fn commutative_oracle(x: &GSet, y: &GSet) -> Result<OrbitQuotient> {
    super::same_group(&x.group, &y.group)?;
    if x.side != Side::Right || y.side != Side::Left {
        return invalid("expected a right G-set followed by a left G-set");
    }
    let (nx, ny) = (x.size(), y.size());
    let group = &x.group;
    let mut uf = UnionFind::new(nx * ny);
    for g in group.elements() {
        let g_inv = group.inverse(g);
        for a in 0..nx {
            for b in 0..ny {
                uf.union(a * ny + b, x.act(g, a) * ny + y.act(g_inv, b));
            }
        }
    }
    let mut class_of_root = vec![usize::MAX; nx * ny];
    let mut labels = Vec::with_capacity(nx * ny);
    let mut count = 0;
    for i in 0..nx * ny {
        let r = uf.find(i);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = count;
            count += 1;
        }
        labels.push(class_of_root[r]);
    }
    Ok(OrbitQuotient {
        labels,
        count,
        algebra: MatrixAlgebra::commutative(count, format!("C^{count}"))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: usize) -> FiniteGroup {
        FiniteGroup::cyclic(k).unwrap()
    }

    #[test]
    fn regular_sets_satisfy_their_laws() {
        let g = FiniteGroup::product(&z(2), &z(3)).unwrap();
        for side in [Side::Left, Side::Right] {
            let s = GSet::regular(&g, side);
            GSet::new(g.clone(), side, s.perms.clone()).unwrap();
        }
    }

    #[test]
    fn wrong_side_law_rejected_for_nonabelian() {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        let s3 = FiniteGroup::from_table(table, "S3").unwrap();
        // permutation action on {0,1,2} is a left action
        let left: Vec<Vec<usize>> = perms.iter().map(|p| p.to_vec()).collect();
        assert!(GSet::new(s3.clone(), Side::Left, left.clone()).is_ok());
        assert!(GSet::new(s3, Side::Right, left).is_err());
    }

    #[test]
    fn regular_times_anything() {
        // G ×_G Y ≅ Y
        let g = z(4);
        let y = GSet::regular(&g, Side::Left).disjoint_union(&GSet::trivial(&g, Side::Left, 3).unwrap()).unwrap();
        let q = commutative_oracle(&GSet::regular(&g, Side::Right), &y).unwrap();
        assert_eq!(q.count, y.size());
        assert_eq!(q.algebra.dimension(), y.size());
    }

    #[test]
    fn trivial_sets_give_product() {
        let g = z(3);
        let x = GSet::trivial(&g, Side::Right, 2).unwrap();
        let y = GSet::trivial(&g, Side::Left, 5).unwrap();
        assert_eq!(commutative_oracle(&x, &y).unwrap().count, 10);
    }

    #[test]
    fn sides_are_checked() {
        let g = z(2);
        let x = GSet::regular(&g, Side::Left);
        assert!(commutative_oracle(&x, &x).is_err());
    }

    #[test]
    fn function_action_right_convention() {
        let g = z(3);
        let x = GSet::regular(&g, Side::Right);
        let action = x.function_action();
        assert!(action.check(1e-12).is_valid());
        // δ_x · g = δ_{x+g}
        let alg = action.algebra().clone();
        let d0 = crate::AlgebraElement::basis_element(&alg, 0);
        let moved = action.apply_right(&d0, 1);
        assert_eq!(moved, crate::AlgebraElement::basis_element(&alg, 1));
    }

    #[test]
    fn regular_times_anything_nonabelian() {
        // Each class of (x, y) ≈ (x·g, g⁻¹·y) meets {e} × Y exactly once.
        let g = FiniteGroup::symmetric(3).unwrap();
        let x = GSet::regular(&g, Side::Right);
        let y = crate::random::coset_space(&g, &[1], Side::Left).unwrap();
        let y = y.disjoint_union(&GSet::regular(&g, Side::Left)).unwrap();
        assert_eq!(commutative_oracle(&x, &y).unwrap().count, y.size());
    }
}
