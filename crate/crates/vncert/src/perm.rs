//! Permutations on `{0..n-1}` and permutation groups backed by a stabilizer
//! chain (base + strong generators + transversals).
//!
//! All composition is left-to-right: `compose(p, q)` maps `x` to `q(p(x))`.
//! Groups are immutable after construction; the chain is built once on demand
//! and shared read-only, so values can cross threads freely.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("images of length {len} are not a bijection on 0..{len}")]
    NotABijection { len: usize },
    #[error("group order {order} exceeds element cap {cap}")]
    CapExceeded { order: u128, cap: u64 },
}

/// A permutation of `{0..n-1}`, stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from an image sequence, validating bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotABijection { len: n });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of `degree` points from disjoint cycles.
    /// Points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Self {
        let mut images: Vec<usize> = (0..degree).collect();
        for cyc in cycles {
            for i in 0..cyc.len() {
                images[cyc[i]] = cyc[(i + 1) % cyc.len()];
            }
        }
        Permutation::from_images(images).expect("cycles must be disjoint and in range")
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// Left-to-right composition: the result maps `x` to `q(p(x))`.
    pub fn compose(&self, q: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            q.degree(),
            "cannot compose permutations of different degrees"
        );
        let images = self.images.iter().map(|&x| q.images[x]).collect();
        Permutation::from_images_unchecked(images)
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation::from_images_unchecked(images)
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn has_fixed_point(&self) -> bool {
        self.images.iter().enumerate().any(|(x, &y)| x == y)
    }

    /// Multiplicative order (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| lcm(acc, l as u64))
    }

    /// Lengths of all cycles, including fixed points, sorted ascending.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(x, &y)| *x != y).map(|(x, _)| x)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// A partition of `{0..n-1}` into disjoint cells covering every point.
/// Cells are ordered by their smallest member and sorted internally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    degree: usize,
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl OrbitPartition {
    /// Validates that `cells` are disjoint and cover `{0..degree-1}`.
    pub fn from_cells(degree: usize, cells: Vec<Vec<usize>>) -> Option<OrbitPartition> {
        let mut cell_of = vec![usize::MAX; degree];
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                if v >= degree || cell_of[v] != usize::MAX {
                    return None;
                }
                cell_of[v] = i;
            }
        }
        if cell_of.iter().any(|&c| c == usize::MAX) {
            return None;
        }
        let mut cells = cells;
        for cell in &mut cells {
            cell.sort_unstable();
        }
        let mut order: Vec<usize> = (0..cells.len()).collect();
        order.sort_by_key(|&i| cells[i][0]);
        let cells: Vec<Vec<usize>> = order.into_iter().map(|i| cells[i].clone()).collect();
        let mut cell_of = vec![0; degree];
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        Some(OrbitPartition {
            degree,
            cells,
            cell_of,
        })
    }

    fn from_union_find(degree: usize, parent: &mut [usize]) -> OrbitPartition {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut root_to_group = vec![usize::MAX; degree];
        for v in 0..degree {
            let r = find(parent, v);
            if root_to_group[r] == usize::MAX {
                root_to_group[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[root_to_group[r]].push(v);
        }
        OrbitPartition::from_cells(degree, groups).expect("union-find cells form a partition")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_index_of(&self, v: usize) -> usize {
        self.cell_of[v]
    }
}

fn find(parent: &mut [usize], v: usize) -> usize {
    let mut root = v;
    while parent[root] != root {
        root = parent[root];
    }
    let mut x = v;
    while parent[x] != root {
        let next = parent[x];
        parent[x] = root;
        x = next;
    }
    root
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let ra = find(parent, a);
    let rb = find(parent, b);
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// One level of a stabilizer chain: a base point, the strong generators
/// fixing all earlier base points, and a transversal of coset representatives
/// (`transversal[x]` maps the base point to `x`).
struct ChainLevel {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    transversal: Vec<Option<Permutation>>,
}

impl ChainLevel {
    fn new(degree: usize, base: usize) -> ChainLevel {
        ChainLevel {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
        }
    }
}

pub(crate) struct StabChain {
    degree: usize,
    levels: Vec<ChainLevel>,
}

impl StabChain {
    /// Deterministic Schreier–Sims. New base points are taken from
    /// `base_hint` first (the first hint point moved by the new strong
    /// generator), then the smallest moved point.
    pub(crate) fn build(degree: usize, gens: &[Permutation], base_hint: &[usize]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let seed: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if seed.is_empty() {
            return chain;
        }
        let base = choose_base(&seed, base_hint);
        chain.levels.push(ChainLevel::new(degree, base));
        chain.levels[0].gens = seed;
        chain.complete(0, base_hint);
        chain
    }

    fn recompute_orbit(&mut self, k: usize) {
        let lvl = &mut self.levels[k];
        lvl.orbit.clear();
        lvl.transversal.iter_mut().for_each(|t| *t = None);
        lvl.orbit.push(lvl.base);
        lvl.transversal[lvl.base] = Some(Permutation::identity(self.degree));
        let mut i = 0;
        while i < lvl.orbit.len() {
            let x = lvl.orbit[i];
            for gi in 0..lvl.gens.len() {
                let y = lvl.gens[gi].apply(x);
                if lvl.transversal[y].is_none() {
                    let rep = lvl.transversal[x].as_ref().unwrap().compose(&lvl.gens[gi]);
                    lvl.transversal[y] = Some(rep);
                    lvl.orbit.push(y);
                }
            }
            i += 1;
        }
    }

    /// Sifts `g` through levels `from..`, returning the residue and the level
    /// at which sifting stopped.
    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for i in from..self.levels.len() {
            let x = h.apply(self.levels[i].base);
            match &self.levels[i].transversal[x] {
                None => return (h, i),
                Some(t) => h = h.compose(&t.inverse()),
            }
        }
        (h, self.levels.len())
    }

    /// Verifies level `k` against Schreier's lemma: every Schreier generator
    /// must sift to the identity through deeper levels. Residues become new
    /// strong generators and the affected levels are re-verified.
    fn complete(&mut self, k: usize, base_hint: &[usize]) {
        self.recompute_orbit(k);
        let mut i = 0;
        while i < self.levels[k].orbit.len() {
            let x = self.levels[k].orbit[i];
            let tx = self.levels[k].transversal[x].clone().unwrap();
            let gen_count = self.levels[k].gens.len();
            for gi in 0..gen_count {
                let g = self.levels[k].gens[gi].clone();
                let y = g.apply(x);
                let ty = self.levels[k].transversal[y].clone().unwrap();
                let schreier = tx.compose(&g).compose(&ty.inverse());
                let (residue, stop) = self.strip(&schreier, k + 1);
                if residue.is_identity() {
                    continue;
                }
                for lev in (k + 1)..=stop {
                    if lev == self.levels.len() {
                        let base = choose_base(std::slice::from_ref(&residue), base_hint);
                        self.levels.push(ChainLevel::new(self.degree, base));
                    }
                    self.levels[lev].gens.push(residue.clone());
                }
                for lev in ((k + 1)..=stop).rev() {
                    self.complete(lev, base_hint);
                }
            }
            i += 1;
        }
    }

    fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, lvl| acc.saturating_mul(lvl.orbit.len() as u128))
    }

    fn contains(&self, p: &Permutation) -> bool {
        let (residue, _) = self.strip(p, 0);
        residue.is_identity()
    }

    fn base_sequence(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Generators of the stabilizer of the first base point: the strong
    /// generators attached to level 1 generate it exactly.
    fn first_point_stabilizer_gens(&self) -> Vec<Permutation> {
        if self.levels.len() < 2 {
            Vec::new()
        } else {
            self.levels[1].gens.clone()
        }
    }

    /// Visits every group element exactly once (product of one coset
    /// representative per level), in a deterministic chain order.
    fn for_each_element(&self, f: &mut dyn FnMut(&Permutation)) {
        fn rec(chain: &StabChain, level: usize, acc: &Permutation, f: &mut dyn FnMut(&Permutation)) {
            if level == chain.levels.len() {
                f(acc);
                return;
            }
            for &x in &chain.levels[level].orbit {
                let rep = chain.levels[level].transversal[x].as_ref().unwrap();
                rec(chain, level + 1, &rep.compose(acc), f);
            }
        }
        rec(self, 0, &Permutation::identity(self.degree), f);
    }
}

fn choose_base(gens: &[Permutation], base_hint: &[usize]) -> usize {
    for &b in base_hint {
        if gens.iter().any(|g| g.apply(b) != b) {
            return b;
        }
    }
    gens.iter()
        .filter_map(|g| g.smallest_moved_point())
        .min()
        .expect("choose_base requires a non-identity generator")
}

/// A permutation group given by generators, with a lazily built stabilizer
/// chain answering order, membership and stabilizer queries.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators.len())
            .finish()
    }
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup::new(self.degree, self.generators.clone())
    }
}

impl PermGroup {
    /// Duplicate generators and identities are dropped; an empty or
    /// all-identity generating set yields the trivial group.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> PermGroup {
        let mut kept: Vec<Permutation> = Vec::new();
        let mut seen = BTreeSet::new();
        for g in generators {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            if g.is_identity() || !seen.insert(g.clone()) {
                continue;
            }
            kept.push(g);
        }
        if kept.is_empty() {
            kept.push(Permutation::identity(degree));
        }
        PermGroup {
            degree,
            generators: kept,
            chain: OnceLock::new(),
        }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub(crate) fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators, &[]))
    }

    /// Group order (product of transversal sizes along the chain),
    /// saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    /// Base points of the stabilizer chain, for determinism checks.
    pub fn base(&self) -> Vec<usize> {
        self.chain().base_sequence()
    }

    /// Membership by sifting.
    pub fn contains(&self, p: &Permutation) -> bool {
        assert_eq!(p.degree(), self.degree, "membership degree mismatch");
        self.chain().contains(p)
    }

    /// The full element list when the order is at most `cap`, sorted
    /// lexicographically by image sequence.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>, PermError> {
        let order = self.order();
        if order > cap as u128 {
            return Err(PermError::CapExceeded { order, cap });
        }
        let mut out = Vec::with_capacity(order as usize);
        self.chain().for_each_element(&mut |p| out.push(p.clone()));
        out.sort_unstable();
        Ok(out)
    }

    /// Streams every element without materialising the list. The caller is
    /// responsible for checking `order()` first when the group may be large.
    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        self.chain().for_each_element(&mut f);
    }

    /// Orbits of the group on its point set.
    pub fn orbits(&self) -> OrbitPartition {
        let mut parent: Vec<usize> = (0..self.degree).collect();
        for g in &self.generators {
            for x in 0..self.degree {
                union(&mut parent, x, g.apply(x));
            }
        }
        OrbitPartition::from_union_find(self.degree, &mut parent)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().cell_count() == 1
    }

    /// True iff only the identity fixes a point. By orbit–stabilizer this
    /// holds exactly when every orbit has the full group order.
    pub fn is_semiregular(&self) -> bool {
        let order = self.order();
        self.orbits()
            .cells()
            .iter()
            .all(|cell| cell.len() as u128 == order)
    }

    /// Transitive and semiregular; equivalently transitive with order equal
    /// to the degree. Both routes are evaluated and must agree.
    pub fn is_regular(&self) -> bool {
        let by_order = self.is_transitive() && self.order() == self.degree as u128;
        let by_action = self.is_transitive() && self.is_semiregular();
        assert_eq!(by_order, by_action, "regularity criteria disagree");
        by_order
    }

    /// The stabilizer of `point` as a group in its own right.
    pub fn stabilizer_of(&self, point: usize) -> PermGroup {
        assert!(point < self.degree);
        if self.generators.iter().all(|g| g.apply(point) == point) {
            return self.clone();
        }
        let chain = StabChain::build(self.degree, &self.generators, &[point]);
        debug_assert_eq!(chain.base_sequence().first(), Some(&point));
        PermGroup::new(self.degree, chain.first_point_stabilizer_gens())
    }
}
