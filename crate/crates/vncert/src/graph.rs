//! Finite simple undirected graphs: vertex count plus sorted adjacency
//! lists, with a line-oriented text format for interchange.
//!
//! The text format is canonical and round-trips bit-exactly:
//!
//! ```text
//! graph <n> <m>
//! e <u> <v>
//! ...
//! ```
//!
//! with 0-based endpoints, `u < v` on every line, edge lines sorted
//! lexicographically, and a trailing newline.

use std::fs;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("loop at vertex {v}")]
    Loop { v: usize },
}

#[derive(Debug, Error)]
pub enum GraphIoError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
}

/// A finite simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse; loops are
    /// rejected.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Graph, GraphError> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::Loop { v });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    /// All edges as (u, v) with u < v, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Some(k) when every vertex has degree k.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.adj.first().map(|l| l.len())?;
        self.adj.iter().all(|l| l.len() == k).then_some(k)
    }

    pub fn is_connected(&self) -> bool {
        if self.n() <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n()
    }

    /// Length of a shortest cycle, or None for a forest. BFS from every
    /// vertex; adequate at the orders handled here.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for root in 0..self.n() {
            let mut dist = vec![usize::MAX; self.n()];
            let mut parent = vec![usize::MAX; self.n()];
            dist[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        // non-tree edge closes a cycle through the root of length
                        // dist[u] + dist[v] + 1 (an upper bound attained for some root)
                        let len = dist[u] + dist[v] + 1;
                        if best.map_or(true, |b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }

    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut out = format!("graph {} {}\n", self.n(), edges.len());
        for (u, v) in edges {
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Graph, GraphIoError> {
        parse_text(text, "<string>")
    }

    pub fn write_text_file(&self, path: &Path) -> Result<(), GraphIoError> {
        fs::write(path, self.to_text()).map_err(|source| GraphIoError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn read_text_file(path: &Path) -> Result<Graph, GraphIoError> {
        let text = fs::read_to_string(path).map_err(|source| GraphIoError::Io {
            path: path.display().to_string(),
            source,
        })?;
        parse_text(&text, &path.display().to_string())
    }
}

fn parse_text(text: &str, path: &str) -> Result<Graph, GraphIoError> {
    let err = |line: usize, msg: String| GraphIoError::Parse {
        path: path.to_string(),
        line,
        msg,
    };
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| err(1, "empty input".into()))?;
    let mut parts = header.split(' ');
    if parts.next() != Some("graph") {
        return Err(err(1, "expected header `graph <n> <m>`".into()));
    }
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(1, "bad vertex count".into()))?;
    let m: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(1, "bad edge count".into()))?;
    if parts.next().is_some() {
        return Err(err(1, "trailing tokens in header".into()));
    }
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(m);
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let mut parts = line.split(' ');
        if parts.next() != Some("e") {
            return Err(err(lineno, "expected edge line `e <u> <v>`".into()));
        }
        let u: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(lineno, "bad endpoint".into()))?;
        let v: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(lineno, "bad endpoint".into()))?;
        if parts.next().is_some() {
            return Err(err(lineno, "trailing tokens on edge line".into()));
        }
        if u >= v {
            return Err(err(lineno, format!("endpoints must satisfy u < v, got {u} {v}")));
        }
        if v >= n {
            return Err(err(lineno, format!("endpoint {v} out of range (n = {n})")));
        }
        if let Some(&last) = edges.last().as_ref() {
            if last >= &(u, v) {
                return Err(err(lineno, "edge lines must be strictly increasing".into()));
            }
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(err(
            edges.len() + 1,
            format!("header promises {m} edges, found {}", edges.len()),
        ));
    }
    if !text.is_empty() && !text.ends_with('\n') {
        return Err(err(m + 1, "missing trailing newline".into()));
    }
    Graph::from_edges(n, edges).map_err(|e| err(0, e.to_string()))
}
