//! Numeric eigenvalues of symmetric matrices and harmonic energy.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::graph6;
use crate::harmonic::harmonic_matrix;
use crate::poly::RatPolynomial;
use crate::rational::{to_f64, Rational};

/// Default convergence threshold, relative to the Frobenius norm.
pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})"
    )]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("graph is not regular (degrees {degrees:?})")]
    NotRegular { degrees: Vec<usize> },
    #[error("regular shortcut needs degree at least 1")]
    ZeroDegree,
    #[error("unknown energy method '{name}' (known: {known})")]
    UnknownMethod { name: String, known: String },
}

/// Eigenvalues sorted non-increasing, with solver diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Off-diagonal Frobenius norm when the sweeps stopped.
    pub off_norm: f64,
    pub sweeps: usize,
}

impl Spectrum {
    pub fn energy(&self) -> f64 {
        self.eigenvalues.iter().map(|v| v.abs()).sum()
    }

    pub fn power_sum(&self, k: i32) -> f64 {
        self.eigenvalues.iter().map(|v| v.powi(k)).sum()
    }

    pub fn scaled(&self, factor: f64) -> Spectrum {
        let mut eigenvalues: Vec<f64> = self.eigenvalues.iter().map(|v| v * factor).collect();
        sort_desc(&mut eigenvalues);
        Spectrum {
            eigenvalues,
            off_norm: self.off_norm * factor.abs(),
            sweeps: self.sweeps,
        }
    }
}

fn sort_desc(v: &mut [f64]) {
    v.sort_by(|a, b| b.total_cmp(a));
}

/// Cyclic Jacobi rotations on a private copy of `m`.
///
/// Sweeps visit `(p, q)` with `p < q` in row order, so the result is fully
/// determined by the input. Stops once the off-diagonal norm is at most
/// `tol · ‖m‖_F`.
pub fn eigenvalues_symmetric(m: &[Vec<f64>], tol: f64) -> Result<Spectrum, SpectrumError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SpectrumError::BadTolerance(tol));
    }
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let fro = a.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
    let threshold = tol * fro;
    let off = |a: &[Vec<f64>]| -> f64 {
        let mut s = 0.0;
        for (p, row) in a.iter().enumerate() {
            for (q, v) in row.iter().enumerate() {
                if p != q {
                    s += v * v;
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    let mut residual = off(&a);
    while residual > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(SpectrumError::NoConvergence { sweeps, residual });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
        sweeps += 1;
        residual = off(&a);
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    sort_desc(&mut eigenvalues);
    Ok(Spectrum {
        eigenvalues,
        off_norm: residual,
        sweeps,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyReport {
    pub he: f64,
    pub graph6: String,
    pub method: &'static str,
    pub spectrum: Spectrum,
}

fn fingerprint(g: &Graph) -> String {
    graph6::encode(g).unwrap_or_default()
}

/// Σ|γ| over the harmonic spectrum, solved directly.
pub fn harmonic_energy(g: &Graph, tol: f64) -> Result<EnergyReport, SpectrumError> {
    let spectrum = eigenvalues_symmetric(&harmonic_matrix(g).to_f64_rows(), tol)?;
    Ok(EnergyReport {
        he: spectrum.energy(),
        graph6: fingerprint(g),
        method: "jacobi",
        spectrum,
    })
}

/// Adjacency spectrum.
pub fn adjacency_spectrum(g: &Graph, tol: f64) -> Result<Spectrum, SpectrumError> {
    eigenvalues_symmetric(&g.adjacency_f64(), tol)
}

/// Σ|λ| over the adjacency spectrum.
pub fn adjacency_energy(g: &Graph, tol: f64) -> Result<f64, SpectrumError> {
    Ok(adjacency_spectrum(g, tol)?.energy())
}

/// For `d`-regular graphs the harmonic matrix is `A/d`, so the harmonic
/// spectrum is the adjacency spectrum divided by `d`.
pub fn regular_shortcut_energy(g: &Graph, tol: f64) -> Result<EnergyReport, SpectrumError> {
    let degrees = g.degrees();
    let d = match degrees.regular_degree() {
        Some(0) => return Err(SpectrumError::ZeroDegree),
        Some(d) => d,
        None if g.order() == 0 => return Err(SpectrumError::ZeroDegree),
        None => {
            return Err(SpectrumError::NotRegular {
                degrees: degrees.sorted_desc(),
            })
        }
    };
    let spectrum = adjacency_spectrum(g, tol)?.scaled(1.0 / d as f64);
    Ok(EnergyReport {
        he: spectrum.energy(),
        graph6: fingerprint(g),
        method: "regular-shortcut",
        spectrum,
    })
}

/// A named way of computing harmonic energy.
pub trait EnergyMethod: Send + Sync {
    fn tag(&self) -> &'static str;
    fn energy(&self, g: &Graph, tol: f64) -> Result<EnergyReport, SpectrumError>;
}

pub struct Jacobi;

impl EnergyMethod for Jacobi {
    fn tag(&self) -> &'static str {
        "jacobi"
    }
    fn energy(&self, g: &Graph, tol: f64) -> Result<EnergyReport, SpectrumError> {
        harmonic_energy(g, tol)
    }
}

pub struct RegularShortcut;

impl EnergyMethod for RegularShortcut {
    fn tag(&self) -> &'static str {
        "regular-shortcut"
    }
    fn energy(&self, g: &Graph, tol: f64) -> Result<EnergyReport, SpectrumError> {
        regular_shortcut_energy(g, tol)
    }
}

pub struct EnergyMethods {
    methods: BTreeMap<&'static str, Box<dyn EnergyMethod>>,
}

impl EnergyMethods {
    pub fn standard() -> Self {
        let mut methods: BTreeMap<&'static str, Box<dyn EnergyMethod>> = BTreeMap::new();
        for m in [
            Box::new(Jacobi) as Box<dyn EnergyMethod>,
            Box::new(RegularShortcut),
        ] {
            methods.insert(m.tag(), m);
        }
        EnergyMethods { methods }
    }

    pub fn get(&self, tag: &str) -> Result<&dyn EnergyMethod, SpectrumError> {
        self.methods
            .get(tag)
            .map(|m| m.as_ref())
            .ok_or_else(|| SpectrumError::UnknownMethod {
                name: tag.to_string(),
                known: self.methods.keys().copied().collect::<Vec<_>>().join(", "),
            })
    }
}

/// Agreement between an exact polynomial and a numeric spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NewtonReport {
    /// max over eigenvalues of `|p(γ)| / max|coeff|`.
    pub max_residual: f64,
    /// `|Σγ^k − s_k|` for `k = 1, 2, 3`, with `s_k` from Newton's identities.
    pub power_sum_mismatch: [f64; 3],
}

impl NewtonReport {
    pub fn worst(&self) -> f64 {
        self.power_sum_mismatch
            .iter()
            .copied()
            .fold(self.max_residual, f64::max)
    }

    pub fn within(&self, threshold: f64) -> bool {
        self.worst() < threshold
    }
}

/// Exact power sums `s_1..s_3` of the roots of a monic polynomial.
pub fn newton_power_sums(p: &RatPolynomial) -> [Rational; 3] {
    let n = p.degree().unwrap_or(0);
    let lead = p.leading();
    // e_i = (−1)^i c_{n−i} / c_n
    let e = |i: usize| -> Rational {
        if i > n {
            return Rational::zero();
        }
        let c = p.coeff(n - i) / &lead;
        if i % 2 == 1 {
            -c
        } else {
            c
        }
    };
    let (e1, e2, e3) = (e(1), e(2), e(3));
    let s1 = e1.clone();
    let s2 = &e1 * &s1 - Rational::from_integer(2.into()) * &e2;
    let s3 = &e1 * &s2 - &e2 * &s1 + Rational::from_integer(3.into()) * &e3;
    [s1, s2, s3]
}

pub fn newton_check(p: &RatPolynomial, s: &Spectrum) -> NewtonReport {
    let norm = p.max_abs_coeff().max(f64::MIN_POSITIVE);
    let max_residual = s
        .eigenvalues
        .iter()
        .map(|&g| p.evaluate_f64(g).abs() / norm)
        .fold(0.0, f64::max);
    let exact = newton_power_sums(p);
    let mut power_sum_mismatch = [0.0; 3];
    for (k, m) in power_sum_mismatch.iter_mut().enumerate() {
        *m = (s.power_sum(k as i32 + 1) - to_f64(&exact[k])).abs();
    }
    NewtonReport {
        max_residual,
        power_sum_mismatch,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::char_poly;
    use crate::generators::{generate, FamilySpec};

    fn g(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap()
    }

    #[test]
    fn petersen_spectrum() {
        let s = harmonic_energy(&g(FamilySpec::Petersen), DEFAULT_TOL)
            .unwrap()
            .spectrum;
        let mut want = vec![1.0];
        want.extend([1.0 / 3.0; 5]);
        want.extend([-2.0 / 3.0; 4]);
        for (a, b) in s.eigenvalues.iter().zip(&want) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
        assert!((s.energy() - 16.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn zero_matrix_and_single_edge() {
        let s = eigenvalues_symmetric(&vec![vec![0.0; 3]; 3], DEFAULT_TOL).unwrap();
        assert_eq!(s.eigenvalues, vec![0.0; 3]);
        assert_eq!(s.sweeps, 0);
        let s = harmonic_energy(&g(FamilySpec::Path(2)), DEFAULT_TOL)
            .unwrap()
            .spectrum;
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn empty_matrix() {
        let s = eigenvalues_symmetric(&[], DEFAULT_TOL).unwrap();
        assert!(s.eigenvalues.is_empty());
    }

    #[test]
    fn bad_tolerance() {
        assert_eq!(
            eigenvalues_symmetric(&[vec![1.0]], 0.0),
            Err(SpectrumError::BadTolerance(0.0))
        );
        assert!(eigenvalues_symmetric(&[vec![1.0]], f64::NAN).is_err());
    }

    #[test]
    fn diagonal_and_dense_inputs() {
        let s = eigenvalues_symmetric(&[vec![2.0, 0.0], vec![0.0, -5.0]], DEFAULT_TOL).unwrap();
        assert_eq!(s.eigenvalues, vec![2.0, -5.0]);
        // [[2,1],[1,2]] has eigenvalues 3 and 1.
        let s = eigenvalues_symmetric(&[vec![2.0, 1.0], vec![1.0, 2.0]], DEFAULT_TOL).unwrap();
        assert!((s.eigenvalues[0] - 3.0).abs() < 1e-14 && (s.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complete_graph_energy_is_two() {
        for n in 2..10 {
            let he = harmonic_energy(&g(FamilySpec::Complete(n)), DEFAULT_TOL)
                .unwrap()
                .he;
            assert!((he - 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn shortcut_on_regular_graphs() {
        let union = Graph::disjoint_union(&[
            g(FamilySpec::Complete(4)),
            g(FamilySpec::CompleteBipartite { m: 3, n: 3 }),
        ]);
        let r = regular_shortcut_energy(&union, DEFAULT_TOL).unwrap();
        assert!((r.he - 4.0).abs() < 1e-9);
        assert_eq!(r.method, "regular-shortcut");
        for n in 3..12 {
            let c = g(FamilySpec::Cycle(n));
            let a = regular_shortcut_energy(&c, DEFAULT_TOL).unwrap().he;
            let b = harmonic_energy(&c, DEFAULT_TOL).unwrap().he;
            assert!((a - b).abs() < 1e-9);
            let e = adjacency_energy(&c, DEFAULT_TOL).unwrap();
            assert!((a - e / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn shortcut_rejects_irregular() {
        let err = regular_shortcut_energy(&g(FamilySpec::Path(3)), DEFAULT_TOL).unwrap_err();
        assert_eq!(
            err,
            SpectrumError::NotRegular {
                degrees: vec![2, 1, 1]
            }
        );
        assert_eq!(
            regular_shortcut_energy(&Graph::empty(3), DEFAULT_TOL),
            Err(SpectrumError::ZeroDegree)
        );
    }

    #[test]
    fn method_registry() {
        let methods = EnergyMethods::standard();
        let pet = g(FamilySpec::Petersen);
        let a = methods
            .get("jacobi")
            .unwrap()
            .energy(&pet, DEFAULT_TOL)
            .unwrap();
        let b = methods
            .get("regular-shortcut")
            .unwrap()
            .energy(&pet, DEFAULT_TOL)
            .unwrap();
        assert!((a.he - b.he).abs() < 1e-9);
        assert!(methods.get("qr").is_err());
    }

    #[test]
    fn newton_consistency() {
        let pet = g(FamilySpec::Petersen);
        let p = char_poly(&harmonic_matrix(&pet));
        let s = harmonic_energy(&pet, DEFAULT_TOL).unwrap().spectrum;
        assert!(newton_check(&p, &s).within(1e-9));

        let sq = RatPolynomial::x().pow(2);
        let zeros = Spectrum {
            eigenvalues: vec![0.0, 0.0],
            off_norm: 0.0,
            sweeps: 0,
        };
        assert_eq!(newton_check(&sq, &zeros).worst(), 0.0);

        let mut bad = s.clone();
        bad.eigenvalues[0] += 1e-3;
        assert!(!newton_check(&p, &bad).within(1e-9));
    }

    #[test]
    fn energy_zero_iff_edgeless() {
        assert_eq!(
            harmonic_energy(&Graph::empty(4), DEFAULT_TOL).unwrap().he,
            0.0
        );
        assert!(
            harmonic_energy(&g(FamilySpec::Path(2)), DEFAULT_TOL)
                .unwrap()
                .he
                > 0.0
        );
    }
}
