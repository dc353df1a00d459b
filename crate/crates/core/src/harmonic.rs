//! Degree-weighted matrices. The harmonic rule puts `2/(d_i + d_j)` on every
//! edge; other degree-based rules can plug in through [`EdgeWeightRule`].

use num_traits::Zero;

use crate::graph::Graph;
use crate::matrix::SymRatMatrix;
use crate::rational::Rational;

/// Weight assigned to an edge from the degrees of its endpoints.
pub trait EdgeWeightRule: Send + Sync {
    fn name(&self) -> &'static str;
    /// Both degrees are at least one.
    fn weight(&self, du: usize, dv: usize) -> Rational;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Harmonic;

impl EdgeWeightRule for Harmonic {
    fn name(&self) -> &'static str {
        "harmonic"
    }

    fn weight(&self, du: usize, dv: usize) -> Rational {
        Rational::new(2.into(), (du + dv).into())
    }
}

/// Matrix with `rule.weight(d_i, d_j)` at adjacent pairs and zero elsewhere.
/// Isolated vertices give zero rows.
pub fn weighted_matrix(g: &Graph, rule: &dyn EdgeWeightRule) -> SymRatMatrix {
    let deg = g.degrees();
    let mut m = SymRatMatrix::zeros(g.order());
    for (u, v) in g.edges() {
        m.set_sym(u, v, rule.weight(deg[u], deg[v]));
    }
    m
}

pub fn harmonic_matrix(g: &Graph) -> SymRatMatrix {
    weighted_matrix(g, &Harmonic)
}

/// Σ over edges of `2/(d_u + d_v)`, exactly.
pub fn harmonic_index(g: &Graph) -> Rational {
    let deg = g.degrees();
    g.edges()
        .map(|(u, v)| Harmonic.weight(deg[u], deg[v]))
        .fold(Rational::zero(), |acc, w| acc + w)
}

/// Σ over edges of the squared harmonic weight; equals half of Σγ².
pub fn harmonic_weight_square_sum(g: &Graph) -> Rational {
    let deg = g.degrees();
    g.edges()
        .map(|(u, v)| {
            let w = Harmonic.weight(deg[u], deg[v]);
            &w * &w
        })
        .fold(Rational::zero(), |acc, w| acc + w)
}
