//! Simple undirected graphs stored as a symmetric adjacency bitset.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("edge ({v}, {v}) is a self-loop")]
    SelfLoop { v: usize },
    #[error("permutation of length {got} does not match vertex count {n}")]
    BadPermutation { got: usize, n: usize },
}

/// Simple graph on vertices `0..n`.
///
/// Rows are packed into `u64` words; row `i` occupies
/// `bits[i * stride..(i + 1) * stride]`. The matrix is kept symmetric with a
/// clear diagonal by every constructor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

/// Vertex degrees, indexed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVector(pub Vec<usize>);

impl DegreeVector {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// The common degree if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = *self.0.first()?;
        self.0.iter().all(|&d| d == first).then_some(first)
    }

    /// Degrees sorted non-increasing.
    pub fn sorted_desc(&self) -> Vec<usize> {
        let mut d = self.0.clone();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

impl std::ops::Index<usize> for DegreeVector {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let stride = n.div_ceil(64);
        Graph {
            n,
            stride,
            bits: vec![0; n * stride],
        }
    }

    /// Builds a graph from an edge list. Duplicate pairs collapse to one edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { v });
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.bits[u * self.stride + v / 64] |= 1 << (v % 64);
        self.bits[v * self.stride + u / 64] |= 1 << (u % 64);
    }

    pub(crate) fn clear_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.stride + v / 64] &= !(1 << (v % 64));
        self.bits[v * self.stride + u / 64] &= !(1 << (u % 64));
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.stride..(u + 1) * self.stride]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> DegreeVector {
        DegreeVector((0..self.n).map(|u| self.degree(u)).collect())
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().total() / 2
    }

    /// Neighbors of `u` in increasing order.
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Edges `(u, v)` with `u < v`, lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each re-indexed `0..k` preserving relative
    /// vertex order, listed by smallest original vertex id.
    pub fn components(&self) -> Vec<Graph> {
        self.component_vertex_sets()
            .iter()
            .map(|vs| self.induced(vs))
            .collect()
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut members = Vec::new();
            while let Some(u) = stack.pop() {
                members.push(u);
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        g
    }

    /// Disjoint union; part `k` occupies a consecutive block after parts `0..k`.
    pub fn disjoint_union(parts: &[Graph]) -> Graph {
        let n = parts.iter().map(Graph::order).sum();
        let mut g = Graph::empty(n);
        let mut offset = 0;
        for p in parts {
            for (u, v) in p.edges() {
                g.set_edge(u + offset, v + offset);
            }
            offset += p.order();
        }
        g
    }

    /// Relabels vertices: old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::BadPermutation {
                got: perm.len(),
                n: self.n,
            });
        }
        let mut hit = vec![false; self.n];
        for &p in perm {
            if p >= self.n || hit[p] {
                return Err(GraphError::BadPermutation {
                    got: perm.len(),
                    n: self.n,
                });
            }
            hit[p] = true;
        }
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        Ok(g)
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            let mut queue = std::collections::VecDeque::from([s]);
            dist[s] = 0;
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Adjacency matrix as dense `f64` rows.
    pub fn adjacency_f64(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|u| {
                (0..self.n)
                    .map(|v| if self.has_edge(u, v) { 1.0 } else { 0.0 })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}
