//! Harmonic matrices of simple graphs: exact characteristic polynomials over
//! the rationals, harmonic energy, regular-graph censuses, and a claim
//! auditor that checks closed forms against independent oracles.

pub mod audit;
pub mod canon;
pub mod census;
pub mod charpoly;
pub mod cli;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod harmonic;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod spectrum;

pub use charpoly::{char_poly, lambda_k, ClosedForm};
pub use generators::{generate, FamilySpec};
pub use graph::{DegreeVector, Graph};
pub use harmonic::{harmonic_index, harmonic_matrix};
pub use matrix::SymRatMatrix;
pub use poly::RatPolynomial;
pub use rational::Rational;
pub use spectrum::{harmonic_energy, EnergyReport, Spectrum};
