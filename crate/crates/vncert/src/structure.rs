//! Structural interrogation: quotient graphs, induced subgraphs,
//! regular-subgroup (Cayley) search, semiregular-two-orbit (bi-Cayley)
//! search, and metacirculant testing.
//!
//! The subgroup searches are exhaustive closure searches restricted to
//! F = {fixed-point-free elements} ∪ {identity}: any regular or semiregular
//! subgroup lies inside F, so a failed search is a proof of absence. They
//! degrade to `Inconclusive` instead of running unbounded when the ambient
//! group is larger than the element cap.

use std::collections::HashSet;

use thiserror::Error;

use crate::aut::automorphism_group;
use crate::graph::Graph;
use crate::perm::{OrbitPartition, PermGroup, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("partition degree {partition} does not match graph order {graph}")]
    PartitionMismatch { partition: usize, graph: usize },
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
}

/// Outcome of a bounded decision: No is only reported after an exhaustive
/// search, Inconclusive when the bound was exceeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
    Inconclusive,
}

/// Verdict of a regular-subgroup (Cayley) search, with the exhaustion
/// parameters needed to audit a `No`.
#[derive(Debug)]
pub struct CayleyVerdict {
    pub status: Decision,
    /// A regular subgroup witnessing `Yes`.
    pub witness: Option<PermGroup>,
    /// The element cap the search ran under.
    pub cap: u64,
    /// Size of the fixed-point-free candidate set, when it was enumerated.
    pub f_size: Option<usize>,
    /// Search tree nodes visited.
    pub nodes: u64,
}

/// Verdict of a semiregular-two-orbit (bi-Cayley) search.
#[derive(Debug)]
pub struct SemiregularVerdict {
    pub status: Decision,
    pub witness: Option<PermGroup>,
    pub cap: u64,
    pub f_size: Option<usize>,
    pub nodes: u64,
}

/// Quotient of a graph by a partition: vertices are the cells, two cells
/// adjacent iff some cross edge exists. Internal edges never become loops.
pub fn quotient_graph(x: &Graph, p: &OrbitPartition) -> Result<Graph, StructureError> {
    if p.degree() != x.n() {
        return Err(StructureError::PartitionMismatch {
            partition: p.degree(),
            graph: x.n(),
        });
    }
    let mut edges = Vec::new();
    for (u, v) in x.edges() {
        let (cu, cv) = (p.cell_index_of(u), p.cell_index_of(v));
        if cu != cv {
            edges.push((cu, cv));
        }
    }
    Ok(Graph::from_edges(p.cell_count(), edges).expect("cell indices are in range"))
}

/// Subgraph induced by a vertex set, relabeled to 0..|B|-1 in sorted order.
pub fn induced_subgraph(x: &Graph, b: &[usize]) -> Result<Graph, StructureError> {
    let mut verts: Vec<usize> = b.to_vec();
    verts.sort_unstable();
    verts.dedup();
    for &v in &verts {
        if v >= x.n() {
            return Err(StructureError::VertexOutOfRange { v, n: x.n() });
        }
    }
    let mut index = vec![usize::MAX; x.n()];
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let mut edges = Vec::new();
    for &u in &verts {
        for &w in x.neighbors(u) {
            if u < w && index[w] != usize::MAX {
                edges.push((index[u], index[w]));
            }
        }
    }
    Ok(Graph::from_edges(verts.len(), edges).expect("relabeled vertices are in range"))
}

/// The exhaustive closure search inside F = fixed-point-free elements ∪
/// identity for a subgroup of exactly `target` elements. Candidates are
/// ordered by element order descending, then lexicographically, so long
/// cycles are tried first and cyclic witnesses are found at depth one.
struct FClosureSearch {
    candidates: Vec<Permutation>,
    membership: HashSet<Permutation>,
    target: usize,
    nodes: u64,
}

enum FSearchOutcome {
    Found(Vec<Permutation>),
    Exhausted,
}

impl FClosureSearch {
    fn new(ambient: &PermGroup, target: usize) -> FClosureSearch {
        let mut with_order: Vec<(u64, Permutation)> = Vec::new();
        ambient.for_each_element(|p| {
            if !p.is_identity() && !p.has_fixed_point() {
                let ord = p.order();
                if target as u64 % ord == 0 {
                    with_order.push((ord, p.clone()));
                }
            }
        });
        with_order.sort_by(|(oa, pa), (ob, pb)| ob.cmp(oa).then_with(|| pa.cmp(pb)));
        let membership = with_order.iter().map(|(_, p)| p.clone()).collect();
        FClosureSearch {
            candidates: with_order.into_iter().map(|(_, p)| p).collect(),
            membership,
            target,
            nodes: 0,
        }
    }

    /// Closure of `base ∪ {g}` where `base` is a subgroup. None when the
    /// closure leaves F, exceeds the target, or cannot divide it.
    fn close_with(&self, base: &[Permutation], g: &Permutation) -> Option<Vec<Permutation>> {
        let mut all: Vec<Permutation> = base.to_vec();
        let mut set: HashSet<Permutation> = base.iter().cloned().collect();
        let mut frontier: Vec<Permutation> = vec![g.clone()];
        while let Some(x) = frontier.pop() {
            if set.contains(&x) {
                continue;
            }
            if !x.is_identity() && !self.membership.contains(&x) {
                return None;
            }
            set.insert(x.clone());
            all.push(x.clone());
            if all.len() > self.target {
                return None;
            }
            for i in 0..all.len() {
                frontier.push(x.compose(&all[i]));
                frontier.push(all[i].compose(&x));
            }
        }
        if self.target % all.len() != 0 {
            return None;
        }
        all.sort_unstable();
        Some(all)
    }

    fn dfs(&mut self, start: usize, closure: &[Permutation], chosen: &mut Vec<usize>) -> Option<Vec<usize>> {
        self.nodes += 1;
        if closure.len() == self.target {
            return Some(chosen.clone());
        }
        for i in start..self.candidates.len() {
            let g = self.candidates[i].clone();
            if closure.binary_search(&g).is_ok() {
                continue;
            }
            if let Some(bigger) = self.close_with(closure, &g) {
                chosen.push(i);
                if let Some(found) = self.dfs(i + 1, &bigger, chosen) {
                    return Some(found);
                }
                chosen.pop();
            }
        }
        None
    }

    fn run(&mut self, degree: usize) -> FSearchOutcome {
        let identity = vec![Permutation::identity(degree)];
        let mut chosen = Vec::new();
        match self.dfs(0, &identity, &mut chosen) {
            Some(indices) => FSearchOutcome::Found(
                indices.into_iter().map(|i| self.candidates[i].clone()).collect(),
            ),
            None => FSearchOutcome::Exhausted,
        }
    }
}

/// Searches A for a subgroup of order `n` acting regularly on the `n`
/// points. `No` is exhaustive: every regular subgroup lies inside F.
pub fn find_regular_subgroup(a: &PermGroup, n: usize, cap: u64) -> CayleyVerdict {
    assert_eq!(a.degree(), n, "regular subgroup search needs degree n");
    if a.order() > cap as u128 {
        return CayleyVerdict {
            status: Decision::Inconclusive,
            witness: None,
            cap,
            f_size: None,
            nodes: 0,
        };
    }
    let mut search = FClosureSearch::new(a, n);
    let f_size = Some(search.candidates.len());
    match search.run(a.degree()) {
        FSearchOutcome::Found(gens) => {
            let witness = PermGroup::new(a.degree(), gens);
            assert!(witness.is_regular(), "search witness must be regular");
            CayleyVerdict {
                status: Decision::Yes,
                witness: Some(witness),
                cap,
                f_size,
                nodes: search.nodes,
            }
        }
        FSearchOutcome::Exhausted => CayleyVerdict {
            status: Decision::No,
            witness: None,
            cap,
            f_size,
            nodes: search.nodes,
        },
    }
}

/// Searches A (of degree 2k) for a semiregular subgroup of order k with two
/// orbits: the bi-Cayley witness. Any such subgroup lies inside F, and every
/// order-k subgroup of F is automatically semiregular with two orbits.
pub fn find_semiregular_two_orbits(a: &PermGroup, k: usize, cap: u64) -> SemiregularVerdict {
    assert_eq!(a.degree(), 2 * k, "two-orbit search needs degree 2k");
    if a.order() > cap as u128 {
        return SemiregularVerdict {
            status: Decision::Inconclusive,
            witness: None,
            cap,
            f_size: None,
            nodes: 0,
        };
    }
    let mut search = FClosureSearch::new(a, k);
    let f_size = Some(search.candidates.len());
    match search.run(a.degree()) {
        FSearchOutcome::Found(gens) => {
            let witness = PermGroup::new(a.degree(), gens);
            assert!(witness.is_semiregular(), "witness must be semiregular");
            assert_eq!(witness.orbits().cell_count(), 2, "witness must have two orbits");
            SemiregularVerdict {
                status: Decision::Yes,
                witness: Some(witness),
                cap,
                f_size,
                nodes: search.nodes,
            }
        }
        FSearchOutcome::Exhausted => SemiregularVerdict {
            status: Decision::No,
            witness: None,
            cap,
            f_size,
            nodes: search.nodes,
        },
    }
}

/// A claimed regular subgroup certifies a graph as Cayley when it is
/// regular and every generator preserves adjacency. Verified directly,
/// independent of any search.
pub fn verify_cayley_witness(x: &Graph, witness: &PermGroup) -> bool {
    if witness.degree() != x.n() || !witness.is_regular() {
        return false;
    }
    witness.generators().iter().all(|p| {
        x.edges()
            .iter()
            .all(|&(u, v)| x.has_edge(p.apply(u), p.apply(v)))
    })
}

/// Cayley test through the automorphism group: a vertex-transitive graph is
/// Cayley iff its automorphism group contains a regular subgroup.
pub fn is_cayley(x: &Graph, cap: u64) -> CayleyVerdict {
    is_cayley_with(x, &automorphism_group(x), cap)
}

/// Cayley test with a precomputed automorphism group.
pub fn is_cayley_with(x: &Graph, aut: &PermGroup, cap: u64) -> CayleyVerdict {
    let verdict = find_regular_subgroup(aut, x.n(), cap);
    if let Some(witness) = &verdict.witness {
        assert!(
            verify_cayley_witness(x, witness),
            "witness from the automorphism group must preserve adjacency"
        );
    }
    verdict
}

/// Metacirculant test: an (m, n)-metacirculant has a semiregular ρ with m
/// orbits of size n and a σ normalizing ⟨ρ⟩, cyclically permuting the m
/// orbits, with σ^m fixing a vertex.
pub fn is_metacirculant(x: &Graph, m: usize, n: usize, cap: u64) -> Decision {
    assert_eq!(x.n(), m * n, "metacirculant test needs |V| = m·n");
    let aut = automorphism_group(x);
    metacirculant_under(&aut, m, n, cap)
}

pub fn metacirculant_under(aut: &PermGroup, m: usize, n: usize, cap: u64) -> Decision {
    let elements = match aut.elements(cap) {
        Ok(e) => e,
        Err(_) => return Decision::Inconclusive,
    };
    let rho_shape = vec![n; m];
    for rho in &elements {
        if rho.cycle_lengths() != rho_shape {
            continue;
        }
        let powers: HashSet<Permutation> = {
            let mut p = Permutation::identity(aut.degree());
            let mut set = HashSet::new();
            for _ in 0..n {
                set.insert(p.clone());
                p = p.compose(rho);
            }
            set
        };
        let orbits = PermGroup::new(aut.degree(), vec![rho.clone()]).orbits();
        debug_assert_eq!(orbits.cell_count(), m);
        for sigma in &elements {
            let conj = sigma.inverse().compose(rho).compose(sigma);
            if !powers.contains(&conj) {
                continue;
            }
            // σ normalizes ⟨ρ⟩, hence permutes its orbits; the induced
            // permutation of cells must be a single m-cycle
            let mut cell_map = vec![0usize; m];
            for c in 0..m {
                let rep = orbits.cells()[c][0];
                cell_map[c] = orbits.cell_index_of(sigma.apply(rep));
            }
            let mut seen = 1;
            let mut at = cell_map[0];
            while at != 0 && seen <= m {
                at = cell_map[at];
                seen += 1;
            }
            if !(seen == m && at == 0) {
                continue;
            }
            if sigma.pow(m).has_fixed_point() {
                return Decision::Yes;
            }
        }
    }
    Decision::No
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{lexicographic, line_graph, named, twisted_bicirculant, Reading};
    use crate::groups::{cyclic, direct_product, regular_representation, Subset};

    #[test]
    fn quotient_of_cycle_by_half_rotation() {
        let c6 = named("cycle(6)").unwrap();
        let half = PermGroup::new(6, vec![Permutation::from_images(vec![3, 4, 5, 0, 1, 2]).unwrap()]);
        let q = quotient_graph(&c6, &half.orbits()).unwrap();
        assert_eq!(q.n(), 3);
        assert!(crate::aut::are_isomorphic(&q, &named("cycle(3)").unwrap()).is_some());
    }

    #[test]
    fn quotient_by_singletons_is_identity() {
        let g = named("petersen").unwrap();
        let singletons = PermGroup::trivial(10).orbits();
        assert_eq!(quotient_graph(&g, &singletons).unwrap(), g);
    }

    #[test]
    fn quotient_drops_internal_edges() {
        let k4 = named("complete(4)").unwrap();
        let p = OrbitPartition::from_cells(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let q = quotient_graph(&k4, &p).unwrap();
        assert_eq!(q.n(), 2);
        assert_eq!(q.edge_count(), 1);
    }

    #[test]
    fn quotient_rejects_mismatched_partition() {
        let g = named("cycle(5)").unwrap();
        let p = OrbitPartition::from_cells(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(quotient_graph(&g, &p).is_err());
    }

    #[test]
    fn family_quotient_by_semiregular_order_5() {
        let (x, lab) = twisted_bicirculant(3, 5, 2, Reading::Corrected).unwrap();
        let h = direct_product(&cyclic(3).unwrap(), &cyclic(5).unwrap()).unwrap();
        // right action of the order-5 element s = (0,1) on both parts
        let s_elem = 1;
        assert_eq!(h.element_order(s_elem), 5);
        let images: Vec<usize> = (0..30)
            .map(|v| lab.vertex(h.mul(lab.element_of(v), s_elem), lab.part_of(v)))
            .collect();
        let sub = PermGroup::new(30, vec![Permutation::from_images(images).unwrap()]);
        assert!(sub.is_semiregular());
        assert_eq!(sub.order(), 5);
        let q = quotient_graph(&x, &sub.orbits()).unwrap();
        assert_eq!(q.n(), 6);
    }

    #[test]
    fn induced_subgraphs() {
        let k5 = named("complete(5)").unwrap();
        let tri = induced_subgraph(&k5, &[0, 2, 4]).unwrap();
        assert_eq!(tri.n(), 3);
        assert_eq!(tri.edge_count(), 3);
        assert!(induced_subgraph(&k5, &[0, 9]).is_err());
    }

    #[test]
    fn induced_doubled_fibres_give_c4() {
        // two adjacent doubled-vertex fibres of C_3[2K_1] induce a 4-cycle
        let doubled = lexicographic(&named("cycle(3)").unwrap(), &named("empty(2)").unwrap());
        let fibre_pair = induced_subgraph(&doubled, &[0, 1, 2, 3]).unwrap();
        assert!(crate::aut::are_isomorphic(&fibre_pair, &named("cycle(4)").unwrap()).is_some());
    }

    #[test]
    fn cycle_is_cayley() {
        let c6 = named("cycle(6)").unwrap();
        let verdict = is_cayley(&c6, 1 << 20);
        assert_eq!(verdict.status, Decision::Yes);
        let witness = verdict.witness.unwrap();
        assert!(witness.is_regular());
        assert!(verify_cayley_witness(&c6, &witness));
    }

    #[test]
    fn petersen_is_not_cayley() {
        let verdict = is_cayley(&named("petersen").unwrap(), 1 << 20);
        assert_eq!(verdict.status, Decision::No);
        assert!(verdict.witness.is_none());
        assert_eq!(verdict.f_size.map(|f| f > 0), Some(true));
        assert!(verdict.nodes > 0);
    }

    #[test]
    fn line_graph_of_petersen_is_not_cayley() {
        let lp = line_graph(&named("petersen").unwrap());
        let verdict = is_cayley(&lp, 1 << 20);
        assert_eq!(verdict.status, Decision::No);
    }

    #[test]
    fn doubled_cycle_cayley_by_witness() {
        // C_9[2K_1] is Cayley via the product of regular representations
        let doubled = lexicographic(&named("cycle(9)").unwrap(), &named("empty(2)").unwrap());
        let product = direct_product(&cyclic(9).unwrap(), &cyclic(2).unwrap()).unwrap();
        let witness = regular_representation(&product);
        assert!(verify_cayley_witness(&doubled, &witness));
    }

    #[test]
    fn inconclusive_above_cap() {
        let aut = automorphism_group(&named("petersen").unwrap());
        let verdict = find_regular_subgroup(&aut, 10, 8);
        assert_eq!(verdict.status, Decision::Inconclusive);
        assert_eq!(verdict.f_size, None);
    }

    #[test]
    fn petersen_has_semiregular_rotation() {
        let aut = automorphism_group(&named("petersen").unwrap());
        let verdict = find_semiregular_two_orbits(&aut, 5, 1 << 20);
        assert_eq!(verdict.status, Decision::Yes);
        let w = verdict.witness.unwrap();
        assert_eq!(w.order(), 5);
        assert!(w.is_semiregular());
        assert_eq!(w.orbits().cell_count(), 2);
    }

    #[test]
    fn star_has_no_semiregular_two_orbit_group() {
        // every automorphism of the star fixes the center
        let star = named("complete_bipartite(1,3)").unwrap();
        let aut = automorphism_group(&star);
        let verdict = find_semiregular_two_orbits(&aut, 2, 1 << 20);
        assert_eq!(verdict.status, Decision::No);
    }

    #[test]
    fn metacirculant_examples() {
        assert_eq!(is_metacirculant(&named("petersen").unwrap(), 2, 5, 1 << 20), Decision::Yes);
        assert_eq!(is_metacirculant(&named("cycle(6)").unwrap(), 2, 3, 1 << 20), Decision::Yes);
        // a 6-vertex caterpillar tree: no semiregular order-3 automorphism
        let tree = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(is_metacirculant(&tree, 2, 3, 1 << 20), Decision::No);
    }

    #[test]
    fn regular_subgroups_live_in_f() {
        for name in ["cycle(8)", "complete(5)", "octahedron"] {
            let g = named(name).unwrap();
            let verdict = is_cayley(&g, 1 << 20);
            assert_eq!(verdict.status, Decision::Yes, "{name}");
            let witness = verdict.witness.unwrap();
            let mut count = 0u32;
            witness.for_each_element(|p| {
                assert!(p.is_identity() || !p.has_fixed_point(), "{name}");
                count += 1;
            });
            assert_eq!(count as usize, g.n());
        }
    }
}
