//! Canonical labeling by equitable partition refinement and an
//! individualize-refine search tree.
//!
//! Every leaf of the search tree is a discrete ordered partition, i.e. a
//! relabeling. The canonical graph is the relabeling whose adjacency rows
//! compare greatest. Automorphisms found when two leaves give the same graph
//! prune sibling branches lying in one orbit of the pointwise stabilizer of
//! the current prefix.

use thiserror::Error;

use crate::graph::Graph;
use crate::graph6;

/// Largest order handled; rows are packed in one `u64`.
pub const MAX_CANON_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("canonical labeling supports at most {MAX_CANON_ORDER} vertices, got {0}")]
    TooLarge(usize),
}

type Cells = Vec<Vec<usize>>;

struct Search {
    adj: Vec<u64>,
    n: usize,
    first: Option<(Vec<u64>, Vec<usize>)>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search {
    fn refine(&self, cells: &mut Cells) {
        'restart: loop {
            for wi in 0..cells.len() {
                let mask = cells[wi].iter().fold(0u64, |m, &v| m | 1 << v);
                for xi in 0..cells.len() {
                    if cells[xi].len() == 1 {
                        continue;
                    }
                    let count = |v: usize| (self.adj[v] & mask).count_ones();
                    let c0 = count(cells[xi][0]);
                    if cells[xi].iter().all(|&v| count(v) == c0) {
                        continue;
                    }
                    let mut keyed: Vec<(u32, usize)> =
                        cells[xi].iter().map(|&v| (count(v), v)).collect();
                    keyed.sort_unstable();
                    let mut parts: Cells = Vec::new();
                    let mut last = None;
                    for (k, v) in keyed {
                        if last != Some(k) {
                            parts.push(Vec::new());
                            last = Some(k);
                        }
                        parts.last_mut().unwrap().push(v);
                    }
                    cells.splice(xi..=xi, parts);
                    continue 'restart;
                }
            }
            return;
        }
    }

    fn leaf_key(&self, lab: &[usize]) -> Vec<u64> {
        let mut rows = vec![0u64; self.n];
        for v in 0..self.n {
            let mut bits = self.adj[v];
            let mut row = 0u64;
            while bits != 0 {
                let u = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                row |= 1 << lab[u];
            }
            rows[lab[v]] = row;
        }
        rows
    }

    fn record_auto(&mut self, from: &[usize], to: &[usize]) {
        // from(g) == to(g) ⇒ v ↦ from⁻¹(to(v)) is an automorphism.
        let mut inv = vec![0; self.n];
        for (v, &l) in from.iter().enumerate() {
            inv[l] = v;
        }
        let gamma: Vec<usize> = (0..self.n).map(|v| inv[to[v]]).collect();
        if gamma.iter().enumerate().any(|(i, &g)| i != g) {
            self.autos.push(gamma);
        }
    }

    fn leaf(&mut self, cells: &Cells) {
        let mut lab = vec![0; self.n];
        for (i, c) in cells.iter().enumerate() {
            lab[c[0]] = i;
        }
        let key = self.leaf_key(&lab);
        match &self.first {
            None => self.first = Some((key.clone(), lab.clone())),
            Some((fk, fl)) if *fk == key => {
                let fl = fl.clone();
                self.record_auto(&fl, &lab);
            }
            _ => {}
        }
        match &self.best {
            Some((bk, bl)) if *bk == key => {
                let bl = bl.clone();
                self.record_auto(&bl, &lab);
            }
            Some((bk, _)) if *bk > key => {}
            _ => self.best = Some((key, lab)),
        }
    }

    /// Orbit representatives under automorphisms fixing `prefix` pointwise.
    fn orbit_roots(&self, prefix: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in &self.autos {
            if prefix.iter().any(|&v| a[v] != v) {
                continue;
            }
            for v in 0..self.n {
                let (r1, r2) = (find(&mut parent, v), find(&mut parent, a[v]));
                if r1 != r2 {
                    parent[r1.max(r2)] = r1.min(r2);
                }
            }
        }
        (0..self.n).map(|v| find(&mut parent, v)).collect()
    }

    fn explore(&mut self, mut cells: Cells, prefix: &mut Vec<usize>) {
        self.refine(&mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();
        let mut explored_roots: Vec<usize> = Vec::new();
        for v in candidates {
            let roots = self.orbit_roots(prefix);
            if explored_roots.iter().any(|&r| roots[r] == roots[v]) {
                continue;
            }
            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&u| u != v).collect();
            child.splice(target..=target, [vec![v], rest]);
            prefix.push(v);
            self.explore(child, prefix);
            prefix.pop();
            explored_roots.push(v);
        }
    }
}

/// Canonical relabeling of `g` as a permutation: vertex `v` maps to `lab[v]`.
pub fn canonical_labeling(g: &Graph) -> Result<Vec<usize>, CanonError> {
    let n = g.order();
    if n > MAX_CANON_ORDER {
        return Err(CanonError::TooLarge(n));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let adj: Vec<u64> = (0..n)
        .map(|u| g.neighbors(u).fold(0u64, |m, v| m | 1 << v))
        .collect();
    let mut s = Search {
        adj,
        n,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    s.explore(vec![(0..n).collect()], &mut Vec::new());
    Ok(s.best.expect("search reaches at least one leaf").1)
}

pub fn canonical_graph(g: &Graph) -> Result<Graph, CanonError> {
    let lab = canonical_labeling(g)?;
    Ok(g.permuted(&lab).expect("labeling is a permutation"))
}

/// graph6 string of the canonical relabeling; equal for isomorphic inputs.
pub fn canonical_form(g: &Graph) -> Result<String, CanonError> {
    let c = canonical_graph(g)?;
    Ok(graph6::encode(&c).expect("order within graph6 limit"))
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool, CanonError> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    if a.degrees().sorted_desc() != b.degrees().sorted_desc() {
        return Ok(false);
    }
    Ok(canonical_graph(a)? == canonical_graph(b)?)
}
