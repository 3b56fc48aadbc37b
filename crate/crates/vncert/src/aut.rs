//! Graph automorphism groups by equitable-partition refinement with
//! individualization backtracking, plus isomorphism testing and the
//! vertex- / edge- / arc-transitivity decisions built on them.
//!
//! The refinement is plain degree-counting: a partition is stable when every
//! vertex in a cell has the same number of neighbors in every cell. The
//! search individualizes the vertices of the first smallest non-singleton
//! cell, prunes with the hash trace of refinement events against the first
//! root-to-leaf path, and prunes sibling branches lying in one orbit of the
//! automorphisms discovered so far. Search state is confined to one worker;
//! returned groups are immutable.

use crate::graph::Graph;
use crate::perm::{PermGroup, Permutation};

const TRACE_SEED: u64 = 0xcbf29ce484222325;

#[inline]
fn fold(trace: u64, value: u64) -> u64 {
    (trace ^ value).wrapping_mul(0x100000001b3)
}

/// An ordered partition of the vertex set. Cells are kept sorted internally;
/// cell order carries refinement information and is part of the state.
#[derive(Debug, Clone)]
struct OrderedPartition {
    cells: Vec<Vec<usize>>,
}

impl OrderedPartition {
    fn unit(n: usize) -> OrderedPartition {
        if n == 0 {
            return OrderedPartition { cells: Vec::new() };
        }
        OrderedPartition {
            cells: vec![(0..n).collect()],
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    fn labeling(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c[0]).collect()
    }

    /// Index of the first smallest non-singleton cell.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for (i, c) in self.cells.iter().enumerate() {
            if c.len() > 1 && best.map_or(true, |(len, _)| c.len() < len) {
                best = Some((c.len(), i));
            }
        }
        best.map(|(_, i)| i)
    }

    /// Splits `cell` into `[{v}, rest]`, keeping the singleton first.
    fn individualize(&self, cell: usize, v: usize) -> OrderedPartition {
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        for (i, c) in self.cells.iter().enumerate() {
            if i == cell {
                cells.push(vec![v]);
                cells.push(c.iter().copied().filter(|&x| x != v).collect());
            } else {
                cells.push(c.clone());
            }
        }
        OrderedPartition { cells }
    }

    /// Refines to an equitable partition, folding every refinement event
    /// into the trace. The trace only depends on label-free data (cell
    /// positions, counts, sizes), so it is invariant under relabeling.
    fn refine(&mut self, g: &Graph, trace: &mut u64) {
        let n = g.n();
        let mut counts = vec![0usize; n];
        loop {
            let mut changed = false;
            let splitters: Vec<Vec<usize>> = self.cells.clone();
            for (si, splitter) in splitters.iter().enumerate() {
                counts.iter_mut().for_each(|c| *c = 0);
                for &u in splitter {
                    for &w in g.neighbors(u) {
                        counts[w] += 1;
                    }
                }
                let mut new_cells: Vec<Vec<usize>> = Vec::with_capacity(self.cells.len());
                for cell in &self.cells {
                    let first = counts[cell[0]];
                    if cell.len() == 1 || cell.iter().all(|&v| counts[v] == first) {
                        // no split: the common count against this splitter is
                        // still label-free refinement data worth tracing
                        *trace = fold(*trace, first as u64);
                        new_cells.push(cell.clone());
                        continue;
                    }
                    // order subcells by count value ascending
                    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
                    for &v in cell {
                        let c = counts[v];
                        match groups.binary_search_by_key(&c, |(k, _)| *k) {
                            Ok(i) => groups[i].1.push(v),
                            Err(i) => groups.insert(i, (c, vec![v])),
                        }
                    }
                    *trace = fold(*trace, 0x5eed ^ new_cells.len() as u64);
                    *trace = fold(*trace, si as u64);
                    for (c, sub) in groups {
                        *trace = fold(*trace, c as u64);
                        *trace = fold(*trace, sub.len() as u64);
                        new_cells.push(sub);
                    }
                    changed = true;
                }
                self.cells = new_cells;
            }
            if !changed {
                break;
            }
        }
        *trace = fold(*trace, 0xd15c ^ self.cells.len() as u64);
    }
}

enum Signal {
    /// Keep scanning siblings.
    Done,
    /// An automorphism was found at a leaf; unwind to the deepest ancestor
    /// on the first root-to-leaf path.
    UnwindToFirstPath,
}

struct AutSearch<'g> {
    g: &'g Graph,
    reference: Option<Vec<usize>>,
    first_trace: Vec<u64>,
    gens: Vec<Permutation>,
    nodes: u64,
}

impl<'g> AutSearch<'g> {
    fn new(g: &'g Graph) -> Self {
        AutSearch {
            g,
            reference: None,
            first_trace: Vec::new(),
            gens: Vec::new(),
            nodes: 0,
        }
    }

    fn preserves_adjacency(&self, p: &Permutation) -> bool {
        for u in 0..self.g.n() {
            for &v in self.g.neighbors(u) {
                if u < v && !self.g.has_edge(p.apply(u), p.apply(v)) {
                    return false;
                }
            }
        }
        true
    }

    /// Orbit test under the already-known generators that fix every vertex
    /// of `prefix` pointwise: is `v` in the orbit of one of `tried`?
    fn pruned_by_orbit(&self, v: usize, tried: &[usize], prefix: &[usize]) -> bool {
        if tried.is_empty() || self.gens.is_empty() {
            return false;
        }
        let fixing: Vec<&Permutation> = self
            .gens
            .iter()
            .filter(|g| prefix.iter().all(|&p| g.apply(p) == p))
            .collect();
        if fixing.is_empty() {
            return false;
        }
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut x = x;
            while parent[x] != root {
                let next = parent[x];
                parent[x] = root;
                x = next;
            }
            root
        }
        for g in fixing {
            for x in 0..n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, g.apply(x)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == rv)
    }

    fn descend(
        &mut self,
        mut part: OrderedPartition,
        depth: usize,
        prefix: &mut Vec<usize>,
        on_first_path: bool,
        trace_in: u64,
    ) -> Signal {
        self.nodes += 1;
        let mut trace = trace_in;
        part.refine(self.g, &mut trace);
        if on_first_path {
            debug_assert_eq!(self.first_trace.len(), depth);
            self.first_trace.push(trace);
        } else if self.first_trace.get(depth) != Some(&trace) {
            // no leaf below can map to the reference labeling
            return Signal::Done;
        }

        if part.is_discrete() {
            let lab = part.labeling();
            match &self.reference {
                None => {
                    self.reference = Some(lab);
                    Signal::Done
                }
                Some(reference) => {
                    let mut images = vec![0; self.g.n()];
                    for (i, &rv) in reference.iter().enumerate() {
                        images[rv] = lab[i];
                    }
                    let candidate = Permutation::from_images(images)
                        .expect("two labelings induce a bijection");
                    if !candidate.is_identity() && self.preserves_adjacency(&candidate) {
                        self.gens.push(candidate);
                        Signal::UnwindToFirstPath
                    } else {
                        Signal::Done
                    }
                }
            }
        } else {
            let target = part.target_cell().expect("non-discrete partition has a target");
            let candidates = part.cells[target].clone();
            let mut tried: Vec<usize> = Vec::new();
            for (ci, &v) in candidates.iter().enumerate() {
                if self.pruned_by_orbit(v, &tried, prefix) {
                    continue;
                }
                let child = part.individualize(target, v);
                prefix.push(v);
                let signal = self.descend(child, depth + 1, prefix, on_first_path && ci == 0, trace);
                prefix.pop();
                tried.push(v);
                if let Signal::UnwindToFirstPath = signal {
                    if !on_first_path {
                        return Signal::UnwindToFirstPath;
                    }
                    // caught at the fork on the first path: keep scanning,
                    // the new generator strengthens orbit pruning
                }
            }
            Signal::Done
        }
    }
}

/// The full automorphism group of a graph. Deterministic generator set for
/// a fixed graph.
pub fn automorphism_group(g: &Graph) -> PermGroup {
    let n = g.n();
    if n == 0 {
        return PermGroup::trivial(0);
    }
    let mut search = AutSearch::new(g);
    let mut prefix = Vec::new();
    search.descend(OrderedPartition::unit(n), 0, &mut prefix, true, TRACE_SEED);
    for gen in &search.gens {
        debug_assert!(search.preserves_adjacency(gen));
    }
    PermGroup::new(n, search.gens)
}

/// The trace of refining the unit partition: an isomorphism invariant.
/// Different fingerprints imply non-isomorphic graphs.
pub fn refinement_fingerprint(g: &Graph) -> u64 {
    let mut trace = TRACE_SEED;
    let mut part = OrderedPartition::unit(g.n());
    part.refine(g, &mut trace);
    fold(trace, g.n() as u64)
}

struct IsoSearch<'a> {
    x: &'a Graph,
    y: &'a Graph,
}

impl<'a> IsoSearch<'a> {
    /// Bidirectional backtracking: both sides are refined in lockstep, the
    /// traces must match, the branching vertex on the X side is fixed and
    /// all vertices of the corresponding Y cell are tried.
    fn descend(&self, px: &OrderedPartition, py: &OrderedPartition) -> Option<Permutation> {
        let mut px = px.clone();
        let mut py = py.clone();
        let mut tx = TRACE_SEED;
        let mut ty = TRACE_SEED;
        px.refine(self.x, &mut tx);
        py.refine(self.y, &mut ty);
        if tx != ty {
            return None;
        }
        if px.is_discrete() {
            let lx = px.labeling();
            let ly = py.labeling();
            let mut images = vec![0; self.x.n()];
            for (i, &xv) in lx.iter().enumerate() {
                images[xv] = ly[i];
            }
            let candidate = Permutation::from_images(images).ok()?;
            for (u, v) in self.x.edges() {
                if !self.y.has_edge(candidate.apply(u), candidate.apply(v)) {
                    return None;
                }
            }
            return Some(candidate);
        }
        let target = px.target_cell()?;
        debug_assert_eq!(px.cells[target].len(), py.cells[target].len());
        let u = px.cells[target][0];
        let child_x = px.individualize(target, u);
        for &w in &py.cells[target].clone() {
            let child_y = py.individualize(target, w);
            if let Some(found) = self.descend(&child_x, &child_y) {
                return Some(found);
            }
        }
        None
    }
}

/// Searches exhaustively for a vertex bijection mapping edges onto edges.
pub fn are_isomorphic(x: &Graph, y: &Graph) -> Option<Permutation> {
    if x.n() != y.n() || x.edge_count() != y.edge_count() {
        return None;
    }
    let mut dx: Vec<usize> = (0..x.n()).map(|v| x.degree(v)).collect();
    let mut dy: Vec<usize> = (0..y.n()).map(|v| y.degree(v)).collect();
    dx.sort_unstable();
    dy.sort_unstable();
    if dx != dy {
        return None;
    }
    if x.n() == 0 {
        return Some(Permutation::identity(0));
    }
    let search = IsoSearch { x, y };
    search.descend(&OrderedPartition::unit(x.n()), &OrderedPartition::unit(y.n()))
}

pub fn is_vertex_transitive(g: &Graph) -> bool {
    automorphism_group(g).is_transitive()
}

/// One orbit on the edge set under the induced pair action.
pub fn edge_transitive_under(g: &Graph, aut: &PermGroup) -> bool {
    let edges = g.edges();
    if edges.len() <= 1 {
        return true;
    }
    let index = |u: usize, v: usize| -> usize {
        let key = (u.min(v), u.max(v));
        edges.binary_search(&key).expect("image of an edge is an edge")
    };
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut x = x;
        while parent[x] != root {
            let next = parent[x];
            parent[x] = root;
            x = next;
        }
        root
    }
    for p in aut.generators() {
        for (i, &(u, v)) in edges.iter().enumerate() {
            let j = index(p.apply(u), p.apply(v));
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let root = find(&mut parent, 0);
    (1..edges.len()).all(|i| find(&mut parent, i) == root)
}

pub fn is_edge_transitive(g: &Graph) -> bool {
    edge_transitive_under(g, &automorphism_group(g))
}

/// Vertex-transitive with a vertex stabilizer transitive on the neighbors of
/// its fixed vertex; equivalent to transitivity on arcs.
pub fn arc_transitive_under(g: &Graph, aut: &PermGroup) -> bool {
    if !aut.is_transitive() || g.n() == 0 {
        return false;
    }
    let v = 0;
    let neighbors = g.neighbors(v);
    if neighbors.is_empty() {
        return g.edge_count() == 0;
    }
    let stab = aut.stabilizer_of(v);
    let orbits = stab.orbits();
    let cell = orbits.cell_index_of(neighbors[0]);
    neighbors.iter().all(|&w| orbits.cell_index_of(w) == cell)
}

pub fn is_arc_transitive(g: &Graph) -> bool {
    arc_transitive_under(g, &automorphism_group(g))
}
