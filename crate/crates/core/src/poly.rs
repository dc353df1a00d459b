//! Dense univariate polynomials over the rationals, in the variable λ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{fmt_rational, to_f64, Rational, RationalJson};

/// Coefficients indexed by power; the highest stored coefficient is nonzero
/// unless the polynomial is zero (then the vector is empty).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPolynomial {
    coeffs: Vec<Rational>,
}

impl RatPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RatPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable λ.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Self::from_coeffs(coeffs)
    }

    /// `λ - r`
    pub fn linear_root(r: &Rational) -> Self {
        Self::from_coeffs(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of λ^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact Horner evaluation.
    pub fn evaluate(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn evaluate_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    /// Largest absolute coefficient, as `f64`.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| to_f64(c).abs())
            .fold(0.0, f64::max)
    }

    /// Division with remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &RatPolynomial) -> (RatPolynomial, RatPolynomial) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / &lead;
            if !q.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &q * d;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Scales to a primitive integer polynomial with positive leading
    /// coefficient. Returns the integer coefficients, low to high.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        for c in ints.iter_mut() {
            *c = &*c / &content * &sign;
        }
        ints
    }

    /// Human-readable text in λ, highest power first.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, c: &Rational, power: usize, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    let mag = c.abs();
    if first {
        if neg {
            write!(f, "−")?;
        }
    } else {
        write!(f, " {} ", if neg { '−' } else { '+' })?;
    }
    let var = match power {
        0 => String::new(),
        1 => "λ".to_string(),
        p => format!("λ^{p}"),
    };
    if power == 0 {
        write!(f, "{}", fmt_rational(&mag))
    } else if mag.is_one() {
        write!(f, "{var}")
    } else if mag.is_integer() {
        write!(f, "{}{var}", mag.numer())
    } else {
        write!(f, "({}){var}", fmt_rational(&mag))
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            fmt_term(f, c, power, first)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPolynomial({self})")
    }
}

impl<'a> Add<&'a RatPolynomial> for &'a RatPolynomial {
    type Output = RatPolynomial;
    fn add(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a RatPolynomial> for &'a RatPolynomial {
    type Output = RatPolynomial;
    fn sub(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a RatPolynomial> for &'a RatPolynomial {
    type Output = RatPolynomial;
    fn mul(self, rhs: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RatPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPolynomial::from_coeffs(out)
    }
}

impl Neg for &RatPolynomial {
    type Output = RatPolynomial;
    fn neg(self) -> RatPolynomial {
        RatPolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatPolynomial> for RatPolynomial {
            type Output = RatPolynomial;
            fn $m(self, rhs: RatPolynomial) -> RatPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Ordered coefficient list, lowest power first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub coefficients: Vec<RationalJson>,
    pub text: String,
}

impl From<&RatPolynomial> for PolynomialJson {
    fn from(p: &RatPolynomial) -> Self {
        PolynomialJson {
            coefficients: p.coeffs.iter().map(RationalJson::from).collect(),
            text: p.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn p(cs: &[(i64, i64)]) -> RatPolynomial {
        RatPolynomial::from_coeffs(cs.iter().map(|&(a, b)| rat(a, b)).collect())
    }

    #[test]
    fn recurrence_step() {
        // (λ² − 1/4)·λ + (−1/4)·λ = λ³ − (1/2)λ
        let l2 = p(&[(-1, 4), (0, 1), (1, 1)]);
        let x = RatPolynomial::x();
        let got = &(&l2 * &x) + &x.scale(&rat(-1, 4));
        assert_eq!(got, p(&[(0, 1), (-1, 2), (0, 1), (1, 1)]));
        assert_eq!(got.to_string(), "λ^3 − (1/2)λ");
    }

    #[test]
    fn evaluate_and_pow() {
        let q = p(&[(-1, 1), (0, 1), (1, 1)]);
        assert_eq!(q.evaluate(&int(1)), int(0));
        let sq = p(&[(1, 2), (1, 1)]).pow(2);
        assert_eq!(sq, p(&[(1, 4), (1, 1), (1, 1)]));
        assert_eq!(RatPolynomial::x().pow(0), RatPolynomial::one());
    }

    #[test]
    fn canonical_zero_and_degree() {
        let z = p(&[(0, 1), (0, 3)]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(z.to_string(), "0");
        let a = p(&[(1, 1), (2, 1)]);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn division() {
        // (λ³ − 3/4 λ − 1/4) / (λ − 1) = λ² + λ + 1/4
        let f = p(&[(-1, 4), (-3, 4), (0, 1), (1, 1)]);
        let (q, r) = f.div_rem(&RatPolynomial::linear_root(&int(1)));
        assert!(r.is_zero());
        assert_eq!(q, p(&[(1, 4), (1, 1), (1, 1)]));
    }

    #[test]
    fn primitive_integer_form() {
        let f = p(&[(-1, 4), (-3, 4), (0, 1), (1, 1)]);
        let ints: Vec<i64> = f
            .primitive_integer_coeffs()
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(ints, vec![-1, -3, 0, 4]);
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[(-2, 1), (0, 1), (1, 1)]).to_string(), "λ^2 − 2");
        assert_eq!(p(&[(0, 1), (-3, 1), (2, 1)]).to_string(), "2λ^2 − 3λ");
        assert_eq!(p(&[(-1, 1)]).to_string(), "−1");
    }
}
