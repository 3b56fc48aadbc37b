//! Every graph construction the tool certifies: Cayley graphs, bi-Cayley
//! graphs, the tetravalent twisted bicirculant family, coset graphs,
//! lexicographic products, line graphs, generalized Petersen graphs and a
//! small named-graph catalog.

use std::collections::{BTreeMap, HashMap, HashSet};

use thiserror::Error;

use crate::graph::Graph;
use crate::groups::{cyclic, direct_product, FiniteGroup, GroupError, Subset};
use crate::perm::{PermGroup, Permutation};

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("connection set contains the identity")]
    IdentityInConnectionSet,
    #[error("{which} is not closed under inverses")]
    NotInverseClosed { which: &'static str },
    #[error("L contains the identity under this reading")]
    IdentityInL,
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error("H is not a subgroup of G (generator fails membership)")]
    SubgroupNotContained,
    #[error("D is not inverse-closed")]
    DNotInverseClosed,
    #[error("D is not a union of double cosets of H")]
    DNotDoubleCosetUnion,
    #[error("D meets H, which would create loops")]
    DMeetsSubgroup,
    #[error("unknown graph name: {0}")]
    UnknownName(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The fixed vertex numbering of a bi-Cayley graph on 2|G| vertices: the
/// right part `g_0` occupies indices `0..|G|`, the left part `g_1` the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BiCayLabeling {
    group_order: usize,
}

impl BiCayLabeling {
    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// Index of the vertex `g_part`.
    pub fn vertex(&self, g: usize, part: usize) -> usize {
        debug_assert!(g < self.group_order && part < 2);
        part * self.group_order + g
    }

    /// 0 for the right part, 1 for the left part.
    pub fn part_of(&self, v: usize) -> usize {
        v / self.group_order
    }

    pub fn element_of(&self, v: usize) -> usize {
        v % self.group_order
    }
}

/// Cayley graph: vertices are group elements, g ~ sg for each s in S.
/// Requires S identity-free and inverse-closed.
pub fn cayley(g: &FiniteGroup, s: &Subset) -> Result<Graph, ConstructError> {
    if s.contains_identity() {
        return Err(ConstructError::IdentityInConnectionSet);
    }
    if !s.is_inverse_closed(g) {
        return Err(ConstructError::NotInverseClosed { which: "S" });
    }
    let mut edges = Vec::new();
    for x in 0..g.order() {
        for si in s.members() {
            edges.push((x, g.mul(si, x)));
        }
    }
    Ok(Graph::from_edges(g.order(), edges).expect("identity-free S yields no loops"))
}

/// Bi-Cayley graph on two copies of H: right edges h_0 ~ g_0 for gh^{-1} in
/// R, left edges h_1 ~ g_1 for gh^{-1} in L, spokes h_0 ~ g_1 for gh^{-1} in
/// S. R and L must be inverse-closed and identity-free; S may contain the
/// identity.
pub fn bicayley(
    h: &FiniteGroup,
    r: &Subset,
    l: &Subset,
    s: &Subset,
) -> Result<(Graph, BiCayLabeling), ConstructError> {
    if r.contains_identity() || l.contains_identity() {
        return Err(ConstructError::IdentityInConnectionSet);
    }
    if !r.is_inverse_closed(h) {
        return Err(ConstructError::NotInverseClosed { which: "R" });
    }
    if !l.is_inverse_closed(h) {
        return Err(ConstructError::NotInverseClosed { which: "L" });
    }
    let n = h.order();
    let lab = BiCayLabeling { group_order: n };
    let mut edges = Vec::new();
    for hh in 0..n {
        for x in r.members() {
            // g = x·h satisfies gh^{-1} = x
            edges.push((lab.vertex(hh, 0), lab.vertex(h.mul(x, hh), 0)));
        }
        for x in l.members() {
            edges.push((lab.vertex(hh, 1), lab.vertex(h.mul(x, hh), 1)));
        }
        for x in s.members() {
            edges.push((lab.vertex(hh, 0), lab.vertex(h.mul(x, hh), 1)));
        }
    }
    let graph = Graph::from_edges(2 * n, edges).expect("parts are disjoint, no loops arise");
    Ok((graph, lab))
}

/// The right-multiplication action of H on its bi-Cayley graph,
/// (x)_i ↦ (xg)_i. Semiregular with the two parts as orbits.
pub fn bicayley_right_action(h: &FiniteGroup, lab: &BiCayLabeling) -> PermGroup {
    let n = h.order();
    let gens = h
        .small_generating_set()
        .into_iter()
        .map(|g| {
            let images = (0..2 * n)
                .map(|v| lab.vertex(h.mul(lab.element_of(v), g), lab.part_of(v)))
                .collect();
            Permutation::from_images(images).expect("right translation is a bijection")
        })
        .collect();
    PermGroup::new(2 * n, gens)
}

/// Which factor of Z_{m1} x Z_{m2} carries the twist exponent t.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    /// R and L are built on the order-m1 generator r: R = {r, r^{-1}},
    /// L = {r^t, r^{-t}}, S = {1, s}. Fails with IdentityInL when
    /// t ≡ 0 (mod m1).
    Literal,
    /// R and L are built on the order-m2 generator s (the factor t is
    /// reduced against): R = {s, s^{-1}}, L = {s^t, s^{-t}}, S = {1, r}.
    Corrected,
}

impl Reading {
    pub fn as_str(self) -> &'static str {
        match self {
            Reading::Literal => "literal",
            Reading::Corrected => "corrected",
        }
    }
}

/// Tetravalent bi-Cayley graph over Z_{m1} x Z_{m2} whose left cycle is
/// twisted by t: order 2·m1·m2, both parts of degree 2 + 2. Requires m1, m2
/// odd and coprime, both > 1, and t a square root of -1 mod m2.
pub fn twisted_bicirculant(
    m1: usize,
    m2: usize,
    t: usize,
    reading: Reading,
) -> Result<(Graph, BiCayLabeling), ConstructError> {
    let bad = |msg: String| Err(ConstructError::BadParameters(msg));
    if m1 <= 1 || m2 <= 1 || m1 % 2 == 0 || m2 % 2 == 0 {
        return bad(format!("m1={m1}, m2={m2} must both be odd and > 1"));
    }
    if gcd(m1, m2) != 1 {
        return bad(format!("m1={m1} and m2={m2} must be coprime"));
    }
    if t < 1 || t > m2 || gcd(t, m2) != 1 {
        return bad(format!("t={t} must lie in 1..={m2} and be coprime to m2"));
    }
    if (t * t + 1) % m2 != 0 {
        return bad(format!("t={t} does not satisfy t^2 = -1 mod {m2}"));
    }
    let h = direct_product(&cyclic(m1)?, &cyclic(m2)?)?;
    // index of r^a s^b in the product table
    let elem = |a: usize, b: usize| (a % m1) * m2 + (b % m2);
    let r = elem(1, 0);
    let s = elem(0, 1);
    let (rr, ll, ss) = match reading {
        Reading::Literal => (
            vec![elem(1, 0), elem(m1 - 1, 0)],
            vec![elem(t % m1, 0), elem((m1 - t % m1) % m1, 0)],
            vec![0, s],
        ),
        Reading::Corrected => (
            vec![elem(0, 1), elem(0, m2 - 1)],
            vec![elem(0, t), elem(0, m2 - t)],
            vec![0, r],
        ),
    };
    if ll.contains(&0) {
        return Err(ConstructError::IdentityInL);
    }
    let r = Subset::of(&h, rr)?;
    let l = Subset::of(&h, ll)?;
    let s = Subset::of(&h, ss)?;
    bicayley(&h, &r, &l, &s)
}

/// Coset graph cos(G, H, D): vertices are the right cosets of H in G,
/// enumerated breadth-first from H over G's generators; Hg ~ Hdg for d in D.
/// D must be an inverse-closed union of double cosets HdH disjoint from H.
pub fn coset_graph(
    g: &PermGroup,
    h_gens: &[Permutation],
    d: &[Permutation],
) -> Result<Graph, ConstructError> {
    for gen in h_gens {
        if !g.contains(gen) {
            return Err(ConstructError::SubgroupNotContained);
        }
    }
    let h = PermGroup::new(g.degree(), h_gens.to_vec());
    let h_order = h.order();
    if h_order > 1_000_000 {
        return Err(ConstructError::BadParameters(format!(
            "subgroup order {h_order} too large to enumerate"
        )));
    }
    let mut h_elems = Vec::with_capacity(h_order as usize);
    h.for_each_element(|p| h_elems.push(p.clone()));

    let d_set: HashSet<Permutation> = d.iter().cloned().collect();
    for x in &d_set {
        if !g.contains(x) {
            return Err(ConstructError::BadParameters(
                "D contains elements outside G".into(),
            ));
        }
        if !d_set.contains(&x.inverse()) {
            return Err(ConstructError::DNotInverseClosed);
        }
        if h.contains(x) {
            return Err(ConstructError::DMeetsSubgroup);
        }
        // closure under left and right multiplication by H generators
        // implies D is a union of double cosets HdH
        for hg in h.generators() {
            if !d_set.contains(&hg.compose(x)) || !d_set.contains(&x.compose(hg)) {
                return Err(ConstructError::DNotDoubleCosetUnion);
            }
        }
    }

    // canonical key of the coset H·g: the minimal element of the coset
    let coset_key = |gr: &Permutation| -> Permutation {
        h_elems
            .iter()
            .map(|he| he.compose(gr))
            .min()
            .expect("H is non-empty")
    };

    // breadth-first coset enumeration over G's generators
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    let mut reps: Vec<Permutation> = Vec::new();
    let identity = Permutation::identity(g.degree());
    index.insert(coset_key(&identity), 0);
    reps.push(identity);
    let mut next = 0;
    while next < reps.len() {
        let rep = reps[next].clone();
        for gen in g.generators() {
            let moved = rep.compose(gen);
            let key = coset_key(&moved);
            if !index.contains_key(&key) {
                index.insert(key, reps.len());
                reps.push(moved);
            }
        }
        next += 1;
    }

    let mut edges = Vec::new();
    for (i, rep) in reps.iter().enumerate() {
        for x in &d_set {
            // edge {Hg, Hdg}: with left-to-right composition, d·g composes d then g
            let target = index[&coset_key(&x.compose(rep))];
            edges.push((i, target));
        }
    }
    Graph::from_edges(reps.len(), edges).map_err(|e| ConstructError::BadParameters(e.to_string()))
}

/// Lexicographic product X[Y]: (x1, y1) ~ (x2, y2) iff x1 ~ x2 in X, or
/// x1 = x2 and y1 ~ y2 in Y. Vertex (x, y) has index x·|V(Y)| + y.
pub fn lexicographic(x: &Graph, y: &Graph) -> Graph {
    let ny = y.n();
    let n = x.n() * ny;
    let mut edges = Vec::new();
    for (x1, x2) in x.edges() {
        for y1 in 0..ny {
            for y2 in 0..ny {
                edges.push((x1 * ny + y1, x2 * ny + y2));
            }
        }
    }
    for x1 in 0..x.n() {
        for (y1, y2) in y.edges() {
            edges.push((x1 * ny + y1, x1 * ny + y2));
        }
    }
    Graph::from_edges(n, edges).expect("product of simple graphs is simple")
}

/// Line graph: vertices are the edges of X (in lexicographic order), two
/// adjacent iff the underlying edges share an endpoint.
pub fn line_graph(x: &Graph) -> Graph {
    let edges = x.edges();
    let mut by_endpoint: Vec<Vec<usize>> = vec![Vec::new(); x.n()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        by_endpoint[u].push(i);
        by_endpoint[v].push(i);
    }
    let mut out = Vec::new();
    for incident in &by_endpoint {
        for a in 0..incident.len() {
            for b in (a + 1)..incident.len() {
                out.push((incident[a], incident[b]));
            }
        }
    }
    Graph::from_edges(edges.len(), out).expect("distinct edges give no loops")
}

/// Generalized Petersen graph GP(n, k): outer cycle a_i ~ a_{i+1}, spokes
/// a_i ~ b_i, inner edges b_i ~ b_{i+k}. Outer vertices are 0..n, inner
/// vertices n..2n.
pub fn generalized_petersen(n: usize, k: usize) -> Result<Graph, ConstructError> {
    if n < 3 || k < 1 || 2 * k >= n {
        return Err(ConstructError::BadParameters(format!(
            "GP({n},{k}) requires n >= 3 and 1 <= k < n/2"
        )));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((i, n + i));
        edges.push((n + i, n + (i + k) % n));
    }
    Ok(Graph::from_edges(2 * n, edges).expect("GP parameters exclude loops"))
}

/// The Coxeter graph: three heptagons with steps 1, 2 and 4 plus a central
/// 7-set of spoke vertices joined to one vertex of each heptagon. 28
/// vertices, 42 edges; validated 3-regular with girth 7 on construction.
fn coxeter() -> Graph {
    let mut edges = Vec::new();
    for i in 0..7 {
        edges.push((i, (i + 1) % 7)); // heptagon, step 1
        edges.push((7 + i, 7 + (i + 2) % 7)); // heptagon, step 2
        edges.push((14 + i, 14 + (i + 4) % 7)); // heptagon, step 4
        edges.push((21 + i, i));
        edges.push((21 + i, 7 + i));
        edges.push((21 + i, 14 + i));
    }
    let g = Graph::from_edges(28, edges).expect("coxeter edge list is simple");
    assert_eq!(g.regular_degree(), Some(3), "coxeter graph must be cubic");
    assert_eq!(g.girth(), Some(7), "coxeter graph must have girth 7");
    g
}

fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    Graph::from_edges(a + b, edges).unwrap()
}

fn cycle_graph(n: usize) -> Result<Graph, ConstructError> {
    if n < 3 {
        return Err(ConstructError::BadParameters(format!(
            "cycle({n}) requires n >= 3"
        )));
    }
    Ok(Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap())
}

/// A graph by catalog name. Parameterized names use parentheses:
/// `cycle(6)`, `complete(5)`, `complete_bipartite(3,4)`, `matching(4)`,
/// `empty(5)`; plain names are `petersen`, `desargues`, `dodecahedron`,
/// `coxeter`, `octahedron`.
pub fn named(name: &str) -> Result<Graph, ConstructError> {
    let name = name.trim();
    match name {
        "petersen" => return generalized_petersen(5, 2),
        "desargues" => return generalized_petersen(10, 3),
        "dodecahedron" => return generalized_petersen(10, 2),
        "coxeter" => return Ok(coxeter()),
        "octahedron" => {
            // K_6 minus a perfect matching
            let mut edges = Vec::new();
            for u in 0..6 {
                for v in (u + 1)..6 {
                    if v != u + 3 || u >= 3 {
                        edges.push((u, v));
                    }
                }
            }
            return Ok(Graph::from_edges(6, edges).unwrap());
        }
        _ => {}
    }
    let (head, args) = match name.find('(') {
        Some(p) if name.ends_with(')') => {
            let args: Result<Vec<usize>, _> = name[p + 1..name.len() - 1]
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect();
            (
                &name[..p],
                args.map_err(|_| ConstructError::UnknownName(name.to_string()))?,
            )
        }
        _ => return Err(ConstructError::UnknownName(name.to_string())),
    };
    match (head, args.as_slice()) {
        ("cycle", [n]) => cycle_graph(*n),
        ("complete", [n]) => Ok(complete(*n)),
        ("complete_bipartite", [a, b]) => Ok(complete_bipartite(*a, *b)),
        ("matching", [m]) => Ok(Graph::from_edges(2 * m, (0..*m).map(|i| (2 * i, 2 * i + 1))).unwrap()),
        ("empty", [n]) => Ok(Graph::empty(*n)),
        _ => Err(ConstructError::UnknownName(name.to_string())),
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Sanity map of a construction's per-vertex degrees, used in tests.
pub fn degree_histogram(g: &Graph) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for v in 0..g.n() {
        *hist.entry(g.degree(v)).or_insert(0) += 1;
    }
    hist
}
