//! Claim auditor.
//!
//! Each published result is a [`Claim`] registered under a stable id. A claim
//! evaluates itself at concrete parameters against the exact charpoly oracle
//! or the numeric eigensolver and returns an [`AuditResult`] that always
//! carries its evidence. Verdicts are frozen in a baseline file; later runs
//! report drift against it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::census::{self, Census, CensusError, REFERENCE_CUBIC10_HE};
use crate::charpoly::{char_poly, ClosedForm, ClosedFormError};
use crate::generators::{generate, FamilySpec, GenError};
use crate::graph::Graph;
use crate::harmonic::harmonic_matrix;
use crate::poly::RatPolynomial;
use crate::spectrum::{harmonic_energy, SpectrumError, DEFAULT_TOL};

/// Tolerance for numeric energy claims.
pub const NUMERIC_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum AuditError {
    #[error("unknown claim id '{id}'")]
    UnknownClaim { id: String },
    #[error("claim {id} needs parameter --{param}")]
    MissingParam {
        id: &'static str,
        param: &'static str,
    },
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error("baseline: {0}")]
    Baseline(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimKind {
    ExactPolynomial,
    NumericEnergy,
    Inequality,
    CensusStructure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "EXACT-MATCH")]
    ExactMatch,
    #[serde(rename = "NUMERIC-MATCH")]
    NumericMatch,
    #[serde(rename = "MISMATCH")]
    Mismatch,
}

impl Verdict {
    pub fn is_match(self) -> bool {
        self != Verdict::Mismatch
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ExactMatch => "EXACT-MATCH",
            Verdict::NumericMatch => "NUMERIC-MATCH",
            Verdict::Mismatch => "MISMATCH",
        })
    }
}

/// Family parameters a claim is evaluated at.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
}

impl Params {
    pub fn n(n: usize) -> Self {
        Params {
            m: None,
            n: Some(n),
        }
    }

    pub fn mn(m: usize, n: usize) -> Self {
        Params {
            m: Some(m),
            n: Some(n),
        }
    }

    fn need_n(&self, id: &'static str) -> Result<usize, AuditError> {
        self.n.ok_or(AuditError::MissingParam { id, param: "n" })
    }

    fn need_m(&self, id: &'static str) -> Result<usize, AuditError> {
        self.m.ok_or(AuditError::MissingParam { id, param: "m" })
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.m, self.n) {
            (Some(m), Some(n)) => write!(f, "m={m},n={n}"),
            (None, Some(n)) => write!(f, "n={n}"),
            (Some(m), None) => write!(f, "m={m}"),
            (None, None) => write!(f, "-"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Evidence {
    /// `claimed − oracle`, exactly.
    Residual {
        residual: String,
        oracle: String,
    },
    Delta {
        claimed: f64,
        observed: f64,
        delta: f64,
        tolerance: f64,
    },
    /// `observed − bound`; the claim holds when this is ≥ −tolerance.
    Margin {
        bound: f64,
        observed: f64,
        margin: f64,
        tolerance: f64,
    },
    Census {
        expected: String,
        observed: String,
    },
}

impl Evidence {
    /// Short human summary.
    pub fn summary(&self) -> String {
        match self {
            Evidence::Residual { residual, .. } => format!("residual {residual}"),
            Evidence::Delta {
                claimed,
                observed,
                delta,
                ..
            } => {
                format!("claimed {claimed:.10} observed {observed:.10} |Δ| {delta:.3e}")
            }
            Evidence::Margin {
                bound,
                observed,
                margin,
                ..
            } => {
                format!("bound {bound:.10} observed {observed:.10} margin {margin:.3e}")
            }
            Evidence::Census { expected, observed } => {
                format!("expected {expected}; observed {observed}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditResult {
    pub claim: String,
    pub kind: ClaimKind,
    pub params: Params,
    pub verdict: Verdict,
    pub evidence: Evidence,
}

/// Shared, lazily computed inputs.
pub struct AuditContext {
    pub tol: f64,
    cubic10: OnceLock<Result<Census, String>>,
}

impl Default for AuditContext {
    fn default() -> Self {
        AuditContext {
            tol: DEFAULT_TOL,
            cubic10: OnceLock::new(),
        }
    }
}

impl AuditContext {
    pub fn with_tol(tol: f64) -> Self {
        AuditContext {
            tol,
            ..Default::default()
        }
    }

    pub fn cubic10(&self) -> Result<&Census, AuditError> {
        self.cubic10
            .get_or_init(|| census::census(10, 3, self.tol).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| AuditError::Baseline(format!("census(10, 3) failed: {e}")))
    }
}

/// A checkable published statement.
pub trait Claim: Send + Sync {
    fn id(&self) -> &'static str;
    fn kind(&self) -> ClaimKind;
    /// The statement being checked, as a formula.
    fn statement(&self) -> &'static str;
    fn default_grid(&self) -> Vec<Params>;
    /// Smallest `n` the claim accepts; `None` for parameterless claims.
    fn min_n(&self) -> Option<usize>;
    fn check(&self, params: &Params, ctx: &AuditContext) -> Result<AuditResult, AuditError>;
    /// Whether `check` reads the order-10 cubic census.
    fn needs_census(&self) -> bool {
        false
    }
}

fn n_grid(range: RangeInclusive<usize>) -> Vec<Params> {
    range.map(Params::n).collect()
}

fn exact_result(
    id: &str,
    params: Params,
    claimed: &RatPolynomial,
    oracle: &RatPolynomial,
) -> AuditResult {
    let residual = claimed - oracle;
    AuditResult {
        claim: id.to_string(),
        kind: ClaimKind::ExactPolynomial,
        params,
        verdict: if residual.is_zero() {
            Verdict::ExactMatch
        } else {
            Verdict::Mismatch
        },
        evidence: Evidence::Residual {
            residual: residual.to_string(),
            oracle: oracle.to_string(),
        },
    }
}

fn numeric_result(id: &str, params: Params, claimed: f64, observed: f64) -> AuditResult {
    let delta = (claimed - observed).abs();
    AuditResult {
        claim: id.to_string(),
        kind: ClaimKind::NumericEnergy,
        params,
        verdict: if delta < NUMERIC_TOL {
            Verdict::NumericMatch
        } else {
            Verdict::Mismatch
        },
        evidence: Evidence::Delta {
            claimed,
            observed,
            delta,
            tolerance: NUMERIC_TOL,
        },
    }
}

fn census_result(id: &str, ok: bool, expected: String, observed: String) -> AuditResult {
    AuditResult {
        claim: id.to_string(),
        kind: ClaimKind::CensusStructure,
        params: Params::default(),
        verdict: if ok {
            Verdict::NumericMatch
        } else {
            Verdict::Mismatch
        },
        evidence: Evidence::Census { expected, observed },
    }
}

fn oracle_poly(spec: &FamilySpec) -> Result<RatPolynomial, AuditError> {
    Ok(char_poly(&harmonic_matrix(&generate(spec)?)))
}

/// Closed-form polynomial vs. the exact charpoly of the generated graph.
struct PolynomialClaim {
    id: &'static str,
    statement: &'static str,
    form: fn(&Params) -> Result<ClosedForm, AuditError>,
    grid: fn() -> Vec<Params>,
    min_n: Option<usize>,
}

impl Claim for PolynomialClaim {
    fn id(&self) -> &'static str {
        self.id
    }
    fn kind(&self) -> ClaimKind {
        ClaimKind::ExactPolynomial
    }
    fn statement(&self) -> &'static str {
        self.statement
    }
    fn default_grid(&self) -> Vec<Params> {
        (self.grid)()
    }
    fn min_n(&self) -> Option<usize> {
        self.min_n
    }
    fn check(&self, params: &Params, _: &AuditContext) -> Result<AuditResult, AuditError> {
        let form = (self.form)(params)?;
        let claimed = form.polynomial()?;
        let oracle = oracle_poly(&form.graph_spec())?;
        Ok(exact_result(self.id, *params, &claimed, &oracle))
    }
}

/// Closed-form energy vs. the Jacobi harmonic energy.
struct EnergyClaim {
    id: &'static str,
    statement: &'static str,
    graph: fn(&Params) -> Result<FamilySpec, AuditError>,
    formula: fn(&Params) -> f64,
    grid: fn() -> Vec<Params>,
    min_n: Option<usize>,
}

impl Claim for EnergyClaim {
    fn id(&self) -> &'static str {
        self.id
    }
    fn kind(&self) -> ClaimKind {
        ClaimKind::NumericEnergy
    }
    fn statement(&self) -> &'static str {
        self.statement
    }
    fn default_grid(&self) -> Vec<Params> {
        (self.grid)()
    }
    fn min_n(&self) -> Option<usize> {
        self.min_n
    }
    fn check(&self, params: &Params, ctx: &AuditContext) -> Result<AuditResult, AuditError> {
        let spec = (self.graph)(params)?;
        let observed = harmonic_energy(&generate(&spec)?, ctx.tol)?.he;
        Ok(numeric_result(
            self.id,
            *params,
            (self.formula)(params),
            observed,
        ))
    }
}

/// `HE(D_5^n) ≥ 1 + n√5`.
struct Windmill5EnergyBound;

impl Claim for Windmill5EnergyBound {
    fn id(&self) -> &'static str {
        "thm-windmill5-energy"
    }
    fn kind(&self) -> ClaimKind {
        ClaimKind::Inequality
    }
    fn statement(&self) -> &'static str {
        "HE(D_5^n) >= 1 + n*sqrt(5)"
    }
    fn default_grid(&self) -> Vec<Params> {
        n_grid(1..=6)
    }
    fn min_n(&self) -> Option<usize> {
        Some(1)
    }
    fn check(&self, params: &Params, ctx: &AuditContext) -> Result<AuditResult, AuditError> {
        let n = params.need_n(self.id())?;
        let g = generate(&FamilySpec::DutchWindmill { m: 5, n })?;
        let observed = harmonic_energy(&g, ctx.tol)?.he;
        let bound = 1.0 + n as f64 * 5f64.sqrt();
        let margin = observed - bound;
        Ok(AuditResult {
            claim: self.id().to_string(),
            kind: ClaimKind::Inequality,
            params: *params,
            verdict: if margin >= -NUMERIC_TOL {
                Verdict::NumericMatch
            } else {
                Verdict::Mismatch
            },
            evidence: Evidence::Margin {
                bound,
                observed,
                margin,
                tolerance: NUMERIC_TOL,
            },
        })
    }
}

/// φ and HE of a disjoint union against the parts.
struct UnionClaim {
    energy: bool,
}

fn union_parts(n: usize) -> Result<Vec<Graph>, AuditError> {
    Ok(vec![
        generate(&FamilySpec::Cycle(n))?,
        generate(&FamilySpec::Star(n))?,
    ])
}

impl Claim for UnionClaim {
    fn id(&self) -> &'static str {
        if self.energy {
            "lem-union-energy"
        } else {
            "lem-union-charpoly"
        }
    }
    fn kind(&self) -> ClaimKind {
        if self.energy {
            ClaimKind::NumericEnergy
        } else {
            ClaimKind::ExactPolynomial
        }
    }
    fn statement(&self) -> &'static str {
        if self.energy {
            "HE(C_n ∪ S_n) = HE(C_n) + HE(S_n)"
        } else {
            "φ(C_n ∪ S_n) = φ(C_n)·φ(S_n)"
        }
    }
    fn default_grid(&self) -> Vec<Params> {
        n_grid(3..=8)
    }
    fn min_n(&self) -> Option<usize> {
        Some(3)
    }
    fn check(&self, params: &Params, ctx: &AuditContext) -> Result<AuditResult, AuditError> {
        let n = params.need_n(self.id())?;
        let parts = union_parts(n)?;
        let union = Graph::disjoint_union(&parts);
        if self.energy {
            let claimed = parts
                .iter()
                .map(|p| harmonic_energy(p, ctx.tol).map(|r| r.he))
                .sum::<Result<f64, _>>()?;
            let observed = harmonic_energy(&union, ctx.tol)?.he;
            Ok(numeric_result(self.id(), *params, claimed, observed))
        } else {
            let claimed = parts
                .iter()
                .map(|p| char_poly(&harmonic_matrix(p)))
                .fold(RatPolynomial::one(), |acc, p| &acc * &p);
            let oracle = char_poly(&harmonic_matrix(&union));
            Ok(exact_result(self.id(), *params, &claimed, &oracle))
        }
    }
}

#[derive(Clone, Copy)]
enum CensusCheck {
    Classes,
    SpectralDifference,
    ReferenceValues,
    PetersenNotUnique,
    PetersenMaximum,
}

struct CensusClaim {
    id: &'static str,
    statement: &'static str,
    check: CensusCheck,
}

fn petersen_index(c: &Census) -> Result<Option<usize>, AuditError> {
    Ok(c.find_isomorphic(&generate(&FamilySpec::Petersen)?)?)
}

impl Claim for CensusClaim {
    fn id(&self) -> &'static str {
        self.id
    }
    fn kind(&self) -> ClaimKind {
        ClaimKind::CensusStructure
    }
    fn statement(&self) -> &'static str {
        self.statement
    }
    fn default_grid(&self) -> Vec<Params> {
        vec![Params::default()]
    }
    fn min_n(&self) -> Option<usize> {
        None
    }
    fn needs_census(&self) -> bool {
        true
    }
    fn check(&self, _: &Params, ctx: &AuditContext) -> Result<AuditResult, AuditError> {
        let c = ctx.cubic10()?;
        let r = match self.check {
            CensusCheck::Classes => {
                let shared = c.shared_class_sizes();
                let singles = c.singleton_count();
                census_result(
                    self.id,
                    shared == [2, 2, 2] && singles == 15,
                    "shared classes [2, 2, 2], 15 singletons".into(),
                    format!(
                        "shared classes {shared:?}, {singles} singletons, {} graphs",
                        c.records.len()
                    ),
                )
            }
            CensusCheck::SpectralDifference => {
                let pairs: Vec<_> = c.classes.iter().flat_map(|cl| cl.pairs.iter()).collect();
                let ok = !pairs.is_empty()
                    && pairs
                        .iter()
                        .all(|p| p.unmatched_a == 3 && p.unmatched_b == 3);
                let observed = pairs
                    .iter()
                    .map(|p| format!("G{}/G{}: {}+{}", p.a, p.b, p.unmatched_a, p.unmatched_b))
                    .collect::<Vec<_>>()
                    .join(", ");
                census_result(
                    self.id,
                    ok,
                    "every equal-energy pair differs in 3 eigenvalues on each side".into(),
                    format!("unmatched per side: {observed}"),
                )
            }
            CensusCheck::ReferenceValues => {
                let cmp = census::reference_compare(&c.records, &REFERENCE_CUBIC10_HE)?;
                let misses: Vec<String> = cmp
                    .rows
                    .iter()
                    .filter(|r| r.rule == census::MatchRule::None)
                    .map(|r| format!("{:.3}", r.reference))
                    .collect();
                census_result(
                    self.id,
                    cmp.matched + 1 >= cmp.total,
                    format!(
                        "at least {} of {} published values",
                        cmp.total - 1,
                        cmp.total
                    ),
                    format!("{} matched; unmatched {:?}", cmp.matched, misses),
                )
            }
            CensusCheck::PetersenNotUnique | CensusCheck::PetersenMaximum => {
                let idx = petersen_index(c)?;
                let class = idx.and_then(|i| c.classes.iter().find(|cl| cl.members.contains(&i)));
                let max = c.max_class();
                let (ok, observed) = match (idx, class) {
                    (Some(i), Some(cl)) => {
                        let is_max = max.is_some_and(|m| std::ptr::eq(m, cl));
                        let ok = match self.check {
                            CensusCheck::PetersenNotUnique => cl.members.len() >= 2,
                            _ => is_max,
                        };
                        (
                            ok,
                            format!(
                                "Petersen is G{i}; class {:?} at HE {:.10}; maximal class HE {:.10}",
                                cl.members,
                                cl.he,
                                max.map_or(f64::NAN, |m| m.he)
                            ),
                        )
                    }
                    _ => (false, "Petersen graph not found in census".to_string()),
                };
                let expected = match self.check {
                    CensusCheck::PetersenNotUnique => "Petersen shares its energy class",
                    _ => "Petersen lies in the maximal energy class",
                };
                census_result(self.id, ok, expected.into(), observed)
            }
        };
        Ok(r)
    }
}

macro_rules! poly_claim {
    ($id:expr, $stmt:expr, $min:expr, $grid:expr, |$p:ident| $form:expr) => {
        Box::new(PolynomialClaim {
            id: $id,
            statement: $stmt,
            form: |$p: &Params| -> Result<ClosedForm, AuditError> { Ok($form) },
            grid: $grid,
            min_n: $min,
        }) as Box<dyn Claim>
    };
}

macro_rules! energy_claim {
    ($id:expr, $stmt:expr, $min:expr, $grid:expr, |$p:ident| $spec:expr, |$q:ident| $formula:expr) => {
        Box::new(EnergyClaim {
            id: $id,
            statement: $stmt,
            graph: |$p: &Params| -> Result<FamilySpec, AuditError> { Ok($spec) },
            formula: |$q: &Params| -> f64 { $formula },
            grid: $grid,
            min_n: $min,
        }) as Box<dyn Claim>
    };
}

fn bipartite_grid() -> Vec<Params> {
    let mut v = Vec::new();
    for m in 1..=6 {
        for n in m..=12 - m {
            v.push(Params::mn(m, n));
        }
    }
    v
}

fn windmill_grid() -> Vec<Params> {
    (3..=6)
        .flat_map(|m| (1..=6).map(move |n| Params::mn(m, n)))
        .collect()
}

fn nf(p: &Params) -> f64 {
    p.n.unwrap_or(0) as f64
}

/// Friendship eigenvalues as listed: 1/2 (n−1 times), −1/2 (n times),
/// 1/4 ± √((n+1)² + 32n) / (4(n+1)).
fn friendship_listed_energy(n: f64) -> f64 {
    let r = ((n + 1.0).powi(2) + 32.0 * n).sqrt() / (4.0 * (n + 1.0));
    0.5 * (n - 1.0) + 0.5 * n + (0.25 + r).abs() + (0.25 - r).abs()
}

/// Claims looked up by id.
pub struct ClaimRegistry {
    claims: Vec<Box<dyn Claim>>,
}

impl ClaimRegistry {
    pub fn standard() -> Self {
        let claims: Vec<Box<dyn Claim>> = vec![
            poly_claim!(
                "thm-path-statement",
                "φ(P_n) = λΛ_{n-2} − (8/9)λΛ_{n-3} + (16/81)Λ_{n-4}",
                Some(4),
                || n_grid(4..=12),
                |p| ClosedForm::PathStatement(p.need_n("thm-path-statement")?)
            ),
            poly_claim!(
                "thm-path-proof",
                "φ(P_n) = λ²Λ_{n-2} − (8/9)λΛ_{n-3} + (16/81)Λ_{n-4}",
                Some(4),
                || n_grid(4..=12),
                |p| ClosedForm::PathProof(p.need_n("thm-path-proof")?)
            ),
            poly_claim!(
                "thm-cycle-charpoly",
                "φ(C_n) = λΛ_{n-1} − (1/2)Λ_{n-2} − (1/2)^{n-1}",
                Some(3),
                || n_grid(3..=12),
                |p| ClosedForm::Cycle(p.need_n("thm-cycle-charpoly")?)
            ),
            poly_claim!(
                "thm-star-charpoly",
                "φ(S_n) = λ^{n-2}(λ² − 4(n−1)/n²)",
                Some(2),
                || n_grid(2..=12),
                |p| ClosedForm::Star(p.need_n("thm-star-charpoly")?)
            ),
            energy_claim!(
                "thm-star-energy",
                "HE(S_n) = 4√(n−1)/n",
                Some(2),
                || n_grid(2..=12),
                |p| FamilySpec::Star(p.need_n("thm-star-energy")?),
                |p| 4.0 * (nf(p) - 1.0).sqrt() / nf(p)
            ),
            poly_claim!(
                "thm-complete-charpoly",
                "φ(K_n) = (λ − 1)(λ + 1/(n−1))^{n-1}",
                Some(2),
                || n_grid(2..=12),
                |p| ClosedForm::Complete(p.need_n("thm-complete-charpoly")?)
            ),
            energy_claim!(
                "thm-complete-energy",
                "HE(K_n) = 2",
                Some(2),
                || n_grid(2..=12),
                |p| FamilySpec::Complete(p.need_n("thm-complete-energy")?),
                |_p| 2.0
            ),
            poly_claim!(
                "thm-bipartite-charpoly",
                "φ(K_{m,n}) = λ^{m+n-2}(λ² − 4mn/(m+n)²)",
                Some(1),
                bipartite_grid,
                |p| ClosedForm::CompleteBipartite {
                    m: p.need_m("thm-bipartite-charpoly")?,
                    n: p.need_n("thm-bipartite-charpoly")?
                }
            ),
            energy_claim!(
                "thm-bipartite-energy",
                "HE(K_{m,n}) = 2√(4mn/(m+n)²)",
                Some(1),
                bipartite_grid,
                |p| FamilySpec::CompleteBipartite {
                    m: p.need_m("thm-bipartite-energy")?,
                    n: p.need_n("thm-bipartite-energy")?
                },
                |p| {
                    let (m, n) = (p.m.unwrap_or(0) as f64, nf(p));
                    2.0 * (4.0 * m * n / ((m + n) * (m + n))).sqrt()
                }
            ),
            poly_claim!(
                "thm-friendship-charpoly",
                "φ(F_n) = (λ − 1/2)^{n-1}(λ + 1/2)^n(λ² − λ/2 − 2n/(n+1)²)",
                Some(1),
                || n_grid(1..=6),
                |p| ClosedForm::Friendship(p.need_n("thm-friendship-charpoly")?)
            ),
            energy_claim!(
                "thm-friendship-energy",
                "HE(F_n) = n",
                Some(1),
                || n_grid(1..=6),
                |p| FamilySpec::Friendship(p.need_n("thm-friendship-energy")?),
                |p| nf(p)
            ),
            energy_claim!(
                "thm-friendship-spectrum",
                "eigenvalues of F_n: 1/2 (n−1×), −1/2 (n×), 1/4 ± √((n+1)²+32n)/(4(n+1))",
                Some(1),
                || n_grid(1..=6),
                |p| FamilySpec::Friendship(p.need_n("thm-friendship-spectrum")?),
                |p| friendship_listed_energy(nf(p))
            ),
            poly_claim!(
                "thm-windmill-charpoly",
                "φ(D_m^n) = Λ_{m-1}^{n-1}·φ(C_m)",
                Some(1),
                windmill_grid,
                |p| ClosedForm::Windmill {
                    m: p.need_m("thm-windmill-charpoly")?,
                    n: p.need_n("thm-windmill-charpoly")?
                }
            ),
            poly_claim!(
                "thm-windmill4-charpoly",
                "φ(D_4^n) = λ^{n+1}(λ² − 1/2)^{n-1}(λ² − (4n+(n+1)²)/(2(n+1)²))",
                Some(1),
                || n_grid(1..=6),
                |p| ClosedForm::Windmill4(p.need_n("thm-windmill4-charpoly")?)
            ),
            energy_claim!(
                "thm-windmill4-energy",
                "HE(D_4^n) = √(8(n−1)²)/2 + √(8n+2(n+1)²)/(n+1)",
                Some(1),
                || n_grid(1..=6),
                |p| FamilySpec::DutchWindmill { m: 4, n: p.need_n("thm-windmill4-energy")? },
                |p| {
                    let n = nf(p);
                    (8.0 * (n - 1.0).powi(2)).sqrt() / 2.0
                        + (8.0 * n + 2.0 * (n + 1.0).powi(2)).sqrt() / (n + 1.0)
                }
            ),
            poly_claim!(
                "thm-windmill5-charpoly",
                "φ(D_5^n) = (λ²−λ/2−1/4)^{n-1}(λ²+λ/2−1/4)^n(λ³ − λ/2 − ((8n+(n+1)²)/(4(n+1)²))λ − n/(n+1)²)",
                Some(1),
                || n_grid(1..=6),
                |p| ClosedForm::Windmill5(p.need_n("thm-windmill5-charpoly")?)
            ),
            Box::new(Windmill5EnergyBound),
            poly_claim!(
                "thm-book-charpoly",
                "φ(B_n) = (λ²−1/2)^{n-1}(λ² + (n+3)/(2(n+1))λ + q)(λ² − (n+3)/(2(n+1))λ + q), q = (7n²+2n−9)/(2(n+1)(n+3)²)",
                Some(1),
                || n_grid(1..=6),
                |p| ClosedForm::Book(p.need_n("thm-book-charpoly")?)
            ),
            energy_claim!(
                "thm-book-energy",
                "HE(B_n) = (n²+n+2)/(n+1)",
                Some(1),
                || n_grid(1..=6),
                |p| FamilySpec::Book(p.need_n("thm-book-energy")?),
                |p| {
                    let n = nf(p);
                    (n * n + n + 2.0) / (n + 1.0)
                }
            ),
            Box::new(UnionClaim { energy: false }),
            Box::new(UnionClaim { energy: true }),
            Box::new(CensusClaim {
                id: "thm-cubic10-classes",
                statement: "cubic graphs of order 10: three equal-energy pairs, fifteen HE-unique graphs",
                check: CensusCheck::Classes,
            }),
            Box::new(CensusClaim {
                id: "thm-cubic10-spectral-difference",
                statement: "graphs sharing harmonic energy differ in exactly three eigenvalues",
                check: CensusCheck::SpectralDifference,
            }),
            Box::new(CensusClaim {
                id: "tbl-cubic10-energies",
                statement: "published three-decimal HE values of the 21 cubic graphs of order 10",
                check: CensusCheck::ReferenceValues,
            }),
            poly_claim!(
                "thm-petersen-charpoly",
                "φ(P) = (λ − 1)(λ + 2/3)^4(λ − 1/3)^5",
                None,
                || vec![Params::default()],
                |_p| ClosedForm::Petersen
            ),
            energy_claim!(
                "thm-petersen-energy",
                "HE(P) = 16/3",
                None,
                || vec![Params::default()],
                |_p| FamilySpec::Petersen,
                |_p| 16.0 / 3.0
            ),
            Box::new(CensusClaim {
                id: "thm-petersen-not-unique",
                statement: "the Petersen graph is not HE-unique among cubic graphs of order 10",
                check: CensusCheck::PetersenNotUnique,
            }),
            Box::new(CensusClaim {
                id: "thm-petersen-maximum",
                statement: "the Petersen graph has maximum HE among cubic graphs of order 10",
                check: CensusCheck::PetersenMaximum,
            }),
        ];
        ClaimRegistry { claims }
    }

    pub fn get(&self, id: &str) -> Result<&dyn Claim, AuditError> {
        self.claims
            .iter()
            .find(|c| c.id() == id)
            .map(|c| c.as_ref())
            .ok_or_else(|| AuditError::UnknownClaim { id: id.to_string() })
    }

    pub fn claims(&self) -> impl Iterator<Item = &dyn Claim> {
        self.claims.iter().map(|c| c.as_ref())
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.claims.iter().map(|c| c.id()).collect()
    }
}

/// Which (claim, params) pairs to run.
#[derive(Debug, Clone, Default)]
pub struct AuditPlan {
    /// Restrict to these ids; empty means every registered claim.
    pub claims: Vec<String>,
    /// Replace each parameterized claim's `n` values with this range (clamped
    /// to the claim's minimum). Parameterless claims are skipped when set.
    pub n_range: Option<RangeInclusive<usize>>,
    /// Explicit parameters, overriding the grid.
    pub params: Option<Params>,
}

fn plan_rows<'a>(
    reg: &'a ClaimRegistry,
    plan: &AuditPlan,
) -> Result<Vec<(&'a dyn Claim, Params)>, AuditError> {
    let selected: Vec<&dyn Claim> = if plan.claims.is_empty() {
        reg.claims().collect()
    } else {
        plan.claims
            .iter()
            .map(|id| reg.get(id))
            .collect::<Result<_, _>>()?
    };
    let mut rows = Vec::new();
    for c in selected {
        if let Some(p) = plan.params {
            rows.push((c, p));
            continue;
        }
        match (&plan.n_range, c.min_n()) {
            (None, _) => rows.extend(c.default_grid().into_iter().map(|p| (c, p))),
            (Some(_), None) => {}
            (Some(range), Some(min)) => {
                let defaults = c.default_grid();
                let ms: Vec<Option<usize>> = {
                    let mut ms: Vec<_> = defaults.iter().map(|p| p.m).collect();
                    ms.dedup();
                    ms
                };
                for m in ms {
                    for n in range.clone().filter(|&n| n >= min) {
                        rows.push((c, Params { m, n: Some(n) }));
                    }
                }
            }
        }
    }
    Ok(rows)
}

/// Runs the plan; rows come back sorted by claim id, then parameters.
pub fn audit_all(
    reg: &ClaimRegistry,
    ctx: &AuditContext,
    plan: &AuditPlan,
) -> Result<Vec<AuditResult>, AuditError> {
    let rows = plan_rows(reg, plan)?;
    // The census is itself parallel; build it before fanning out.
    if rows.iter().any(|(c, _)| c.needs_census()) {
        ctx.cubic10()?;
    }
    let mut results: Vec<AuditResult> = rows
        .par_iter()
        .map(|(c, p)| c.check(p, ctx))
        .collect::<Result<_, _>>()?;
    results.sort_by(|a, b| a.claim.cmp(&b.claim).then(a.params.cmp(&b.params)));
    Ok(results)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ClaimSummary {
    pub claim: String,
    pub exact_match: usize,
    pub numeric_match: usize,
    pub mismatch: usize,
}

pub fn summarize(results: &[AuditResult]) -> Vec<ClaimSummary> {
    let mut map: BTreeMap<&str, ClaimSummary> = BTreeMap::new();
    for r in results {
        let s = map.entry(&r.claim).or_insert_with(|| ClaimSummary {
            claim: r.claim.clone(),
            ..Default::default()
        });
        match r.verdict {
            Verdict::ExactMatch => s.exact_match += 1,
            Verdict::NumericMatch => s.numeric_match += 1,
            Verdict::Mismatch => s.mismatch += 1,
        }
    }
    map.into_values().collect()
}

/// Frozen verdicts. Exact claims also freeze their residual text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Baseline {
    pub version: u32,
    pub entries: Vec<BaselineEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineEntry {
    pub claim: String,
    pub params: Params,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<String>,
}

impl Baseline {
    pub fn from_results(results: &[AuditResult]) -> Self {
        Baseline {
            version: 1,
            entries: results
                .iter()
                .map(|r| BaselineEntry {
                    claim: r.claim.clone(),
                    params: r.params,
                    verdict: r.verdict,
                    residual: match &r.evidence {
                        Evidence::Residual { residual, .. } => Some(residual.clone()),
                        _ => None,
                    },
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("baseline serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, AuditError> {
        serde_json::from_str(text).map_err(|e| AuditError::Baseline(e.to_string()))
    }

    /// Differences between this baseline and a run; rows absent from the run
    /// are not compared.
    pub fn drift(&self, results: &[AuditResult]) -> Vec<String> {
        let frozen: BTreeMap<(&str, Params), &BaselineEntry> = self
            .entries
            .iter()
            .map(|e| ((e.claim.as_str(), e.params), e))
            .collect();
        let current = Baseline::from_results(results);
        let mut out = Vec::new();
        for e in &current.entries {
            match frozen.get(&(e.claim.as_str(), e.params)) {
                None => out.push(format!("{} [{}]: not in baseline", e.claim, e.params)),
                Some(b) if b.verdict != e.verdict => out.push(format!(
                    "{} [{}]: verdict {} -> {}",
                    e.claim, e.params, b.verdict, e.verdict
                )),
                Some(b) if b.residual != e.residual => {
                    out.push(format!("{} [{}]: residual changed", e.claim, e.params))
                }
                Some(_) => {}
            }
        }
        out
    }
}
