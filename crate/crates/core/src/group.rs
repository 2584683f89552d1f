//! Finite groups given by multiplication tables.

use std::fmt;

use crate::error::{invalid, Result};

/// A finite group of order at most [`FiniteGroup::MAX_ORDER`], elements `0..order`.
///
/// `table[g][h]` is the index of `gh`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    label: String,
}

impl FiniteGroup {
    pub const MAX_ORDER: usize = 64;

    /// Validates a multiplication table exhaustively: closure, identity,
    /// inverses and associativity.
    pub fn from_table(table: Vec<Vec<usize>>, label: impl Into<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return invalid("group table is empty");
        }
        if n > Self::MAX_ORDER {
            return invalid(format!("group order {n} exceeds {}", Self::MAX_ORDER));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return invalid(format!("table row {g} has length {}, expected {n}", row.len()));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return invalid(format!("table row {g} contains out-of-range index {x}"));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| crate::Error::InvalidArgument("table has no identity".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity) {
                Some(h) => inverses.push(h),
                None => return invalid(format!("element {g} has no inverse")),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return invalid(format!("table is not associative at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        let mut group = Self {
            table,
            identity,
            inverses,
            generators: Vec::new(),
            label: label.into(),
        };
        group.generators = group.greedy_generators();
        Ok(group)
    }

    /// Cyclic group `ℤ_k`; element `j` is `j mod k` and `1` generates.
    pub fn cyclic(k: usize) -> Result<Self> {
        if k == 0 {
            return invalid("cyclic group order must be positive");
        }
        if k > Self::MAX_ORDER {
            return invalid(format!("group order {k} exceeds {}", Self::MAX_ORDER));
        }
        let table = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
        let generators = if k == 1 { Vec::new() } else { vec![1] };
        Ok(Self {
            table,
            identity: 0,
            inverses: (0..k).map(|a| (k - a) % k).collect(),
            generators,
            label: format!("Z{k}"),
        })
    }

    /// Direct product; `(g1, g2)` has index `g1 · |G2| + g2`.
    pub fn product(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Self> {
        let (n1, n2) = (g1.order(), g2.order());
        let n = n1 * n2;
        if n > Self::MAX_ORDER {
            return invalid(format!("product order {n} exceeds {}", Self::MAX_ORDER));
        }
        let idx = |a: usize, b: usize| a * n2 + b;
        let mut table = vec![vec![0; n]; n];
        for a1 in 0..n1 {
            for b1 in 0..n2 {
                for a2 in 0..n1 {
                    for b2 in 0..n2 {
                        table[idx(a1, b1)][idx(a2, b2)] = idx(g1.mul(a1, a2), g2.mul(b1, b2));
                    }
                }
            }
        }
        let inverses = (0..n).map(|k| idx(g1.inverse(k / n2), g2.inverse(k % n2))).collect();
        let generators = g1
            .generators
            .iter()
            .map(|&a| idx(a, g2.identity))
            .chain(g2.generators.iter().map(|&b| idx(g1.identity, b)))
            .collect();
        Ok(Self {
            table,
            identity: idx(g1.identity, g2.identity),
            inverses,
            generators,
            label: format!("{}x{}", g1.label, g2.label),
        })
    }

    /// Group of the given permutations of `0..n` under composition
    /// `(ab)(x) = a(b(x))`; the list must be closed under composition.
    pub fn from_permutations(perms: &[Vec<usize>], label: impl Into<String>) -> Result<Self> {
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p);
        let mut table = Vec::with_capacity(perms.len());
        for a in perms {
            let mut row = Vec::with_capacity(perms.len());
            for b in perms {
                let ab: Vec<usize> = b.iter().map(|&x| a.get(x).copied().unwrap_or(usize::MAX)).collect();
                match index(&ab) {
                    Some(k) => row.push(k),
                    None => return invalid("permutation list is not closed under composition"),
                }
            }
            table.push(row);
        }
        Self::from_table(table, label)
    }

    /// Dihedral group of order `2n` acting on the vertices of an `n`-gon;
    /// element `a` is the rotation by `a`, element `n + a` the reflection `x ↦ a − x`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 2 || 2 * n > Self::MAX_ORDER {
            return invalid(format!("dihedral group needs 2 <= n <= {}", Self::MAX_ORDER / 2));
        }
        let rotations = (0..n).map(|a| (0..n).map(|x| (x + a) % n).collect());
        let reflections = (0..n).map(|a| (0..n).map(|x| (a + n - x) % n).collect());
        let perms: Vec<Vec<usize>> = rotations.chain(reflections).collect();
        Self::from_permutations(&perms, format!("D{n}"))
    }

    /// Symmetric group on `n <= 4` letters, permutations in lexicographic order.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 4 {
            return invalid("symmetric group needs 1 <= n <= 4");
        }
        let mut perms = vec![Vec::new()];
        for _ in 0..n {
            perms = perms
                .into_iter()
                .flat_map(|p: Vec<usize>| {
                    (0..n)
                        .filter(|x| !p.contains(x))
                        .map(|x| {
                            let mut q = p.clone();
                            q.push(x);
                            q
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        Self::from_permutations(&perms, format!("S{n}"))
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`; element `2u + s` is `(−1)^s·q_u`
    /// with `q = (1, i, j, k)`.
    pub fn quaternion() -> Self {
        // unit products q_a q_b = sign · q_c
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        let table = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (c, s) = UNIT[x / 2][y / 2];
                        2 * c + (s + x % 2 + y % 2) % 2
                    })
                    .collect()
            })
            .collect();
        Self::from_table(table, "Q8").expect("quaternion table is a group")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("order 1 is valid")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Non-identity elements.
    pub fn nontrivial(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements().filter(move |&g| g != self.identity)
    }

    /// A generating set: the canonical generators for cyclic and product
    /// groups, a greedy one for table-declared groups.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|g| self.elements().all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    /// Subgroup generated by `gens`, as a membership mask.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.order()];
        member[self.identity] = true;
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if !member[y] {
                    member[y] = true;
                    frontier.push(y);
                }
            }
        }
        member
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut member = self.generated_by(&gens);
        for g in self.elements() {
            if !member[g] {
                gens.push(g);
                member = self.generated_by(&gens);
            }
        }
        gens
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.label, self.order())
    }
}
