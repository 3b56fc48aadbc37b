//! Abstract finite groups as multiplication tables, the named groups graphs
//! are built over (cyclic, dihedral, direct products, the nonabelian groups
//! of order 3p), regular representations, and the multiplier stabilizer
//! Aut(G,S) for cyclic G.
//!
//! Tables rather than presentations: every group needed here has order in
//! the hundreds, which makes element scans and subgroup checks direct. The
//! identity is always element 0 and the action convention is on the right
//! (`x · g`), matching right cosets and the right regular representation.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::perm::{PermGroup, Permutation};

/// Largest multiplication table we are willing to build.
pub const MAX_TABLE_ORDER: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order {order} exceeds the table limit {max}")]
    TableTooLarge { order: usize, max: usize },
    #[error("dihedral group requires n >= 3, got {n}")]
    DihedralTooSmall { n: usize },
    #[error("cyclic group requires n >= 1")]
    CyclicEmpty,
    #[error("invalid parameters for a nonabelian group of order 3p: p={p}, k={k} ({reason})")]
    InvalidFrobenius { p: usize, k: usize, reason: String },
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("element index {index} out of range for group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
}

/// A finite group as an indexed element set with multiplication and inverse
/// tables. Element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>, // row-major: mul[x * order + y] = x * y
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a multiplication table, deriving inverses and
    /// validating the group axioms (fully for order <= 64, spot-checked
    /// above that).
    pub fn from_table(order: usize, mul: Vec<usize>) -> Result<FiniteGroup, GroupError> {
        if order == 0 || mul.len() != order * order {
            return Err(GroupError::NotAGroup("table has wrong shape".into()));
        }
        if order > MAX_TABLE_ORDER {
            return Err(GroupError::TableTooLarge {
                order,
                max: MAX_TABLE_ORDER,
            });
        }
        let mut inv = vec![usize::MAX; order];
        for x in 0..order {
            for y in 0..order {
                if mul[x * order + y] == 0 {
                    inv[x] = y;
                }
            }
        }
        let g = FiniteGroup { order, mul, inv };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<(), GroupError> {
        let n = self.order;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(GroupError::NotAGroup(format!(
                    "element 0 is not the identity at {x}"
                )));
            }
        }
        // Latin square
        for x in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for y in 0..n {
                let r = self.mul(x, y);
                let c = self.mul(y, x);
                if r >= n || c >= n || row[r] || col[c] {
                    return Err(GroupError::NotAGroup(format!(
                        "row or column {x} is not a permutation"
                    )));
                }
                row[r] = true;
                col[c] = true;
            }
        }
        for x in 0..n {
            if self.inv[x] == usize::MAX || self.mul(x, self.inv[x]) != 0 {
                return Err(GroupError::NotAGroup(format!("element {x} has no inverse")));
            }
        }
        // associativity: all triples up to order 64, a deterministic sample above
        if n <= 64 {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                            return Err(GroupError::NotAGroup(format!(
                                "associativity fails at ({x},{y},{z})"
                            )));
                        }
                    }
                }
            }
        } else {
            let step = n / 61 + 1;
            for x in (0..n).step_by(step) {
                for y in (0..n).step_by(step) {
                    for z in (0..n).step_by(step) {
                        if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                            return Err(GroupError::NotAGroup(format!(
                                "associativity fails at ({x},{y},{z})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut ord = 1;
        while acc != 0 {
            acc = self.mul(acc, x);
            ord += 1;
        }
        ord
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (x..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&x| (0..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
            .collect()
    }

    /// A small generating set found greedily: repeatedly adjoin the smallest
    /// element outside the closure so far. Deterministic.
    pub fn small_generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut closed = vec![false; self.order];
        closed[0] = true;
        let mut closure_size = 1;
        for x in 1..self.order {
            if closure_size == self.order {
                break;
            }
            if closed[x] {
                continue;
            }
            gens.push(x);
            // close under multiplication by the new generator set
            let mut frontier: Vec<usize> = (0..self.order).filter(|&e| closed[e]).collect();
            closed[x] = true;
            closure_size += 1;
            frontier.push(x);
            while let Some(e) = frontier.pop() {
                for &g in &gens {
                    let p = self.mul(e, g);
                    if !closed[p] {
                        closed[p] = true;
                        closure_size += 1;
                        frontier.push(p);
                    }
                }
            }
        }
        gens
    }
}

/// A subset of a group's element indices, range-checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset {
    members: BTreeSet<usize>,
}

impl Subset {
    pub fn of(
        group: &FiniteGroup,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Subset, GroupError> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        for &x in &members {
            if x >= group.order() {
                return Err(GroupError::ElementOutOfRange {
                    index: x,
                    order: group.order(),
                });
            }
        }
        Ok(Subset { members })
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(&x)
    }

    pub fn contains_identity(&self) -> bool {
        self.members.contains(&0)
    }

    pub fn is_inverse_closed(&self, group: &FiniteGroup) -> bool {
        self.members.iter().all(|&x| self.members.contains(&group.inv(x)))
    }
}

/// Z_n with elements 0..n-1 under addition mod n.
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::CyclicEmpty);
    }
    if n > MAX_TABLE_ORDER {
        return Err(GroupError::TableTooLarge {
            order: n,
            max: MAX_TABLE_ORDER,
        });
    }
    let mut mul = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            mul[x * n + y] = (x + y) % n;
        }
    }
    FiniteGroup::from_table(n, mul)
}

/// The dihedral group of order 2n (n >= 3). Element `i < n` is the rotation
/// r^i, element `n + i` is the reflection f·r^i, with f·r·f = r^{-1}.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n < 3 {
        return Err(GroupError::DihedralTooSmall { n });
    }
    let order = 2 * n;
    if order > MAX_TABLE_ORDER {
        return Err(GroupError::TableTooLarge {
            order,
            max: MAX_TABLE_ORDER,
        });
    }
    let idx = |flip: usize, rot: usize| flip * n + rot;
    let mut mul = vec![0; order * order];
    for f1 in 0..2 {
        for r1 in 0..n {
            for f2 in 0..2 {
                for r2 in 0..n {
                    // (f1, r1) * (f2, r2): rotate r1, flip f1, rotate r2, flip f2
                    // f^{f2} r^{r1 * (-1)^{f2} + r2} f^{f1} combined:
                    let rot = if f2 == 0 { (r1 + r2) % n } else { (n - r1 + r2) % n };
                    let flip = (f1 + f2) % 2;
                    mul[idx(f1, r1) * order + idx(f2, r2)] = idx(flip, rot);
                }
            }
        }
    }
    FiniteGroup::from_table(order, mul)
}

/// Componentwise product of two groups; element (a, b) has index a·|B| + b.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let order = a.order() * b.order();
    if order > MAX_TABLE_ORDER {
        return Err(GroupError::TableTooLarge {
            order,
            max: MAX_TABLE_ORDER,
        });
    }
    let nb = b.order();
    let mut mul = vec![0; order * order];
    for a1 in 0..a.order() {
        for b1 in 0..nb {
            for a2 in 0..a.order() {
                for b2 in 0..nb {
                    let x = a1 * nb + b1;
                    let y = a2 * nb + b2;
                    mul[x * order + y] = a.mul(a1, a2) * nb + b.mul(b1, b2);
                }
            }
        }
    }
    FiniteGroup::from_table(order, mul)
}

/// The nonabelian group of order 3p: Z_p ⋊ Z_3 with the order-3 part acting
/// by x ↦ kx. Requires p prime, p ≡ 1 (mod 3) and k a nontrivial cube root
/// of unity mod p. Element (i, j) = x^i y^j has index j·p + i.
pub fn frobenius_3p(p: usize, k: usize) -> Result<FiniteGroup, GroupError> {
    let fail = |reason: &str| GroupError::InvalidFrobenius {
        p,
        k,
        reason: reason.to_string(),
    };
    if !is_prime(p as u64) {
        return Err(fail("p is not prime"));
    }
    if p % 3 != 1 {
        return Err(fail("p is not 1 mod 3"));
    }
    if k <= 1 || k >= p {
        return Err(fail("k must satisfy 1 < k < p"));
    }
    if (k * k % p) * k % p != 1 {
        return Err(fail("k^3 is not 1 mod p"));
    }
    let order = 3 * p;
    let idx = |i: usize, j: usize| j * p + i;
    // y^j x y^{-j} = x^{k^j}, hence x^{i1} y^{j1} · x^{i2} y^{j2} = x^{i1 + i2·k^{j1}} y^{j1+j2}
    let kpow = [1, k % p, k * k % p];
    let mut mul = vec![0; order * order];
    for i1 in 0..p {
        for j1 in 0..3 {
            for i2 in 0..p {
                for j2 in 0..3 {
                    let i = (i1 + i2 * kpow[j1]) % p;
                    let j = (j1 + j2) % 3;
                    mul[idx(i1, j1) * order + idx(i2, j2)] = idx(i, j);
                }
            }
        }
    }
    FiniteGroup::from_table(order, mul)
}

/// The right regular representation: element g acts as x ↦ xg. The image is
/// a regular permutation group of degree |G|.
pub fn regular_representation(g: &FiniteGroup) -> PermGroup {
    let gens = g
        .small_generating_set()
        .into_iter()
        .map(|gen| {
            Permutation::from_images((0..g.order()).map(|x| g.mul(x, gen)).collect())
                .expect("right translation is a bijection")
        })
        .collect();
    PermGroup::new(g.order(), gens)
}

/// The right translation by a single element as a permutation.
pub fn right_translation(g: &FiniteGroup, by: usize) -> Permutation {
    Permutation::from_images((0..g.order()).map(|x| g.mul(x, by)).collect())
        .expect("right translation is a bijection")
}

/// Multipliers u coprime to n with u·S = S (acting on exponents of the
/// cyclic group Z_n). These are exactly the automorphisms of Z_n fixing S
/// setwise. Always contains 1; contains n-1 whenever S = -S.
pub fn aut_cyclic_stabilizing(n: usize, s: &Subset) -> Vec<usize> {
    assert!(n >= 1);
    let set: BTreeSet<usize> = s.members().collect();
    assert!(
        set.iter().all(|&x| x < n),
        "subset has members outside Z_{n}"
    );
    if n == 1 {
        return vec![1];
    }
    (1..n)
        .filter(|&u| gcd(u as u64, n as u64) == 1)
        .filter(|&u| {
            let image: BTreeSet<usize> = set.iter().map(|&x| x * u % n).collect();
            image == set
        })
        .collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_inverse_law() {
        let g = cyclic(15).unwrap();
        assert_eq!(g.order(), 15);
        for k in 1..15 {
            assert_eq!(g.inv(k), 15 - k);
        }
        assert_eq!(g.inv(0), 0);
    }

    #[test]
    fn coprime_product_is_cyclic() {
        let g = direct_product(&cyclic(3).unwrap(), &cyclic(5).unwrap()).unwrap();
        assert_eq!(g.order(), 15);
        // a group of order n is cyclic iff it has an element of order n
        assert!((0..15).any(|x| g.element_order(x) == 15));
    }

    #[test]
    fn coprime_products_are_cyclic_up_to_50() {
        for m1 in 2..8 {
            for m2 in 2..8 {
                if m1 * m2 > 50 || gcd(m1 as u64, m2 as u64) != 1 {
                    continue;
                }
                let g = direct_product(&cyclic(m1).unwrap(), &cyclic(m2).unwrap()).unwrap();
                assert!(
                    (0..g.order()).any(|x| g.element_order(x) == m1 * m2),
                    "Z_{m1} x Z_{m2} should be cyclic"
                );
            }
        }
    }

    #[test]
    fn dihedral_12_has_seven_involutions() {
        let g = dihedral(6).unwrap();
        assert_eq!(g.order(), 12);
        let involutions = (0..12).filter(|&x| x != 0 && g.element_order(x) == 2).count();
        assert_eq!(involutions, 7);
        assert!(!g.is_abelian());
    }

    #[test]
    fn dihedral_requires_n_at_least_3() {
        assert!(matches!(dihedral(2), Err(GroupError::DihedralTooSmall { n: 2 })));
    }

    #[test]
    fn frobenius_21_element_orders() {
        let g = frobenius_3p(7, 2).unwrap();
        assert_eq!(g.order(), 21);
        assert!(!g.is_abelian());
        assert_eq!(g.center(), vec![0]);
        let mut orders: Vec<usize> = (0..21).map(|x| g.element_order(x)).collect();
        orders.sort_unstable();
        orders.dedup();
        assert_eq!(orders, vec![1, 3, 7]);
    }

    #[test]
    fn frobenius_39_exists() {
        let g = frobenius_3p(13, 3).unwrap();
        assert_eq!(g.order(), 39);
        assert!(!g.is_abelian());
    }

    #[test]
    fn frobenius_rejects_bad_parameters() {
        assert!(frobenius_3p(7, 3).is_err()); // 27 = 6 mod 7
        assert!(frobenius_3p(7, 1).is_err());
        assert!(frobenius_3p(11, 2).is_err()); // 11 not 1 mod 3
        assert!(frobenius_3p(9, 2).is_err()); // not prime
    }

    #[test]
    fn regular_representation_of_cyclic_5() {
        let g = regular_representation(&cyclic(5).unwrap());
        assert_eq!(g.degree(), 5);
        assert_eq!(g.order(), 5);
        assert_eq!(
            g.generators(),
            &[Permutation::from_images(vec![1, 2, 3, 4, 0]).unwrap()]
        );
        assert!(g.is_regular());
    }

    #[test]
    fn regular_representations_are_regular_up_to_24() {
        let mut pool: Vec<FiniteGroup> = Vec::new();
        for n in 1..=24 {
            pool.push(cyclic(n).unwrap());
        }
        for n in 3..=12 {
            pool.push(dihedral(n).unwrap());
        }
        pool.push(frobenius_3p(7, 2).unwrap());
        pool.push(direct_product(&cyclic(2).unwrap(), &cyclic(12).unwrap()).unwrap());
        pool.push(direct_product(&cyclic(4).unwrap(), &cyclic(4).unwrap()).unwrap());
        for g in pool.iter().filter(|g| g.order() <= 24) {
            let rep = regular_representation(g);
            assert_eq!(rep.order(), g.order() as u128);
            assert!(rep.is_transitive());
            // independent element scan: every non-identity translation is fixed-point-free
            for x in 1..g.order() {
                assert!(!right_translation(g, x).has_fixed_point());
            }
            assert!(rep.is_semiregular());
            assert!(rep.is_regular());
        }
    }

    #[test]
    fn dihedral_3_regular_representation_is_nonabelian_s3() {
        let g = regular_representation(&dihedral(3).unwrap());
        assert_eq!(g.degree(), 6);
        assert_eq!(g.order(), 6);
        let a = &g.generators()[0];
        let elems = g.elements(10).unwrap();
        assert!(elems
            .iter()
            .any(|b| a.compose(b) != b.compose(a)));
    }

    #[test]
    fn aut_cyclic_inversion_pair() {
        let g = cyclic(7).unwrap();
        let s = Subset::of(&g, [1, 6]).unwrap();
        assert_eq!(aut_cyclic_stabilizing(7, &s), vec![1, 6]);
    }

    #[test]
    fn aut_cyclic_13_contains_5() {
        let g = cyclic(13).unwrap();
        let s = Subset::of(&g, [1, 12, 5, 8]).unwrap();
        let m = aut_cyclic_stabilizing(13, &s);
        // 5·{1,12,5,8} = {5,8,12,1} mod 13
        assert!(m.contains(&5));
        assert!(m.contains(&1));
        assert!(m.contains(&12)); // S = -S
    }

    #[test]
    fn aut_cyclic_9_contains_inversion() {
        let g = cyclic(9).unwrap();
        let s = Subset::of(&g, [1, 8, 3, 6]).unwrap();
        let m = aut_cyclic_stabilizing(9, &s);
        assert!(m.contains(&1));
        assert!(m.contains(&8));
    }

    #[test]
    fn aut_cyclic_output_is_multiplicatively_closed() {
        for (n, s) in [(12, vec![1, 11]), (15, vec![1, 14, 4, 11]), (16, vec![2, 14])] {
            let g = cyclic(n).unwrap();
            let m = aut_cyclic_stabilizing(n, &Subset::of(&g, s).unwrap());
            for &a in &m {
                for &b in &m {
                    assert!(m.contains(&(a * b % n)), "n={n}: {a}*{b} escapes");
                }
            }
        }
    }

    #[test]
    fn subset_range_check() {
        let g = cyclic(5).unwrap();
        assert!(Subset::of(&g, [0, 6]).is_err());
        let s = Subset::of(&g, [1, 4]).unwrap();
        assert!(s.is_inverse_closed(&g));
        assert!(!s.contains_identity());
    }

    #[test]
    fn table_limit_enforced() {
        assert!(matches!(
            cyclic(MAX_TABLE_ORDER + 1),
            Err(GroupError::TableTooLarge { .. })
        ));
    }
}
