//! Exact characteristic polynomials, the tridiagonal `Λ_k` sequence, and the
//! closed-form polynomials stated for each named family.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::generators::FamilySpec;
use crate::matrix::SymRatMatrix;
use crate::poly::RatPolynomial;
use crate::rational::{fmt_rational, int, rat, Rational};

/// `det(λI − m)` by the Faddeev–LeVerrier trace recursion.
///
/// The matrix is first scaled to integers by the lcm `L` of its entry
/// denominators, so every intermediate product stays integral and the
/// division by `k` in each step is exact. Coefficient `c_k` of the scaled
/// matrix maps back as `c_k · L^(k−n)`.
pub fn char_poly(m: &SymRatMatrix) -> RatPolynomial {
    let n = m.order();
    let scale = m
        .rows()
        .flatten()
        .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let b: Vec<Vec<BigInt>> = m
        .rows()
        .map(|r| {
            r.iter()
                .map(|e| (e * Rational::from_integer(scale.clone())).to_integer())
                .collect()
        })
        .collect();
    // Sparse row view: B is mostly zero for graph matrices.
    let nz: Vec<Vec<(usize, &BigInt)>> = b
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
        .collect();

    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    // acc = M_k; starts as M_1 = I.
    let mut acc: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    for k in 1..=n {
        // prod = B · M_k
        let prod: Vec<Vec<BigInt>> = nz
            .iter()
            .map(|row| {
                (0..n)
                    .map(|j| {
                        row.iter()
                            .fold(BigInt::zero(), |s, &(l, v)| s + v * &acc[l][j])
                    })
                    .collect()
            })
            .collect();
        let tr: BigInt = (0..n).map(|i| &prod[i][i]).sum();
        let (q, r) = (-tr).div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero(), "Faddeev–LeVerrier division must be exact");
        c[n - k] = q;
        if k < n {
            acc = prod;
            for (i, row) in acc.iter_mut().enumerate() {
                row[i] += &c[n - k];
            }
        }
    }
    let scale = Rational::from_integer(scale);
    let mut factor = Rational::one();
    let mut coeffs = vec![Rational::zero(); n + 1];
    for k in (0..=n).rev() {
        coeffs[k] = Rational::from_integer(c[k].clone()) / &factor;
        factor *= &scale;
    }
    RatPolynomial::from_coeffs(coeffs)
}

/// `Λ_k`: determinant of the `k×k` tridiagonal matrix with `λ` on the
/// diagonal and `−1/2` beside it, with `Λ_0 = 1` and `Λ_{−1} = 0`.
pub fn lambda_k(k: usize) -> RatPolynomial {
    lambda_seq(k).pop().expect("sequence is nonempty")
}

/// `[Λ_0, …, Λ_k]`.
pub fn lambda_seq(k: usize) -> Vec<RatPolynomial> {
    let x = RatPolynomial::x();
    let quarter = rat(-1, 4);
    let mut out = vec![RatPolynomial::one()];
    let mut prev = RatPolynomial::zero();
    for _ in 0..k {
        let cur = out.last().unwrap();
        let next = &(&x * cur) + &prev.scale(&quarter);
        prev = cur.clone();
        out.push(next);
    }
    out
}

/// `Λ_k` for signed `k`; `Λ_{−1} = 0`.
fn lambda_signed(k: isize) -> RatPolynomial {
    match k {
        k if k < -1 => panic!("Λ_k undefined for k < −1"),
        -1 => RatPolynomial::zero(),
        k => lambda_k(k as usize),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("{form}: parameter {param} = {got} is outside the formula's range (minimum {min})")]
    OutOfRange {
        form: &'static str,
        param: &'static str,
        min: usize,
        got: usize,
    },
}

/// A published closed-form polynomial for a graph family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedForm {
    /// `λΛ_{n−2} − (8/9)λΛ_{n−3} + (16/81)Λ_{n−4}` (as stated).
    PathStatement(usize),
    /// `λ²Λ_{n−2} − (8/9)λΛ_{n−3} + (16/81)Λ_{n−4}` (proof conclusion).
    PathProof(usize),
    Cycle(usize),
    Star(usize),
    Complete(usize),
    CompleteBipartite {
        m: usize,
        n: usize,
    },
    Friendship(usize),
    /// `Λ_{m−1}^{n−1} · φ(C_m)`.
    Windmill {
        m: usize,
        n: usize,
    },
    Windmill4(usize),
    Windmill5(usize),
    Book(usize),
    Petersen,
}

impl ClosedForm {
    pub fn name(&self) -> &'static str {
        match self {
            ClosedForm::PathStatement(_) => "path-statement",
            ClosedForm::PathProof(_) => "path-proof",
            ClosedForm::Cycle(_) => "cycle",
            ClosedForm::Star(_) => "star",
            ClosedForm::Complete(_) => "complete",
            ClosedForm::CompleteBipartite { .. } => "bipartite",
            ClosedForm::Friendship(_) => "friendship",
            ClosedForm::Windmill { .. } => "windmill",
            ClosedForm::Windmill4(_) => "windmill4",
            ClosedForm::Windmill5(_) => "windmill5",
            ClosedForm::Book(_) => "book",
            ClosedForm::Petersen => "petersen",
        }
    }

    /// The graph this formula describes.
    pub fn graph_spec(&self) -> FamilySpec {
        match *self {
            ClosedForm::PathStatement(n) | ClosedForm::PathProof(n) => FamilySpec::Path(n),
            ClosedForm::Cycle(n) => FamilySpec::Cycle(n),
            ClosedForm::Star(n) => FamilySpec::Star(n),
            ClosedForm::Complete(n) => FamilySpec::Complete(n),
            ClosedForm::CompleteBipartite { m, n } => FamilySpec::CompleteBipartite { m, n },
            ClosedForm::Friendship(n) => FamilySpec::Friendship(n),
            ClosedForm::Windmill { m, n } => FamilySpec::DutchWindmill { m, n },
            ClosedForm::Windmill4(n) => FamilySpec::DutchWindmill { m: 4, n },
            ClosedForm::Windmill5(n) => FamilySpec::DutchWindmill { m: 5, n },
            ClosedForm::Book(n) => FamilySpec::Book(n),
            ClosedForm::Petersen => FamilySpec::Petersen,
        }
    }

    /// Every formula that applies to a generated family member.
    pub fn for_family(spec: &FamilySpec) -> Vec<ClosedForm> {
        match *spec {
            FamilySpec::Path(n) if n >= 4 => {
                vec![ClosedForm::PathStatement(n), ClosedForm::PathProof(n)]
            }
            FamilySpec::Path(_) => vec![],
            FamilySpec::Cycle(n) => vec![ClosedForm::Cycle(n)],
            FamilySpec::Complete(n) if n >= 2 => vec![ClosedForm::Complete(n)],
            FamilySpec::Complete(_) => vec![],
            FamilySpec::Star(n) => vec![ClosedForm::Star(n)],
            FamilySpec::CompleteBipartite { m, n } => vec![ClosedForm::CompleteBipartite { m, n }],
            FamilySpec::Friendship(n) => {
                vec![ClosedForm::Friendship(n), ClosedForm::Windmill { m: 3, n }]
            }
            FamilySpec::DutchWindmill { m, n } => {
                let mut v = vec![ClosedForm::Windmill { m, n }];
                match m {
                    3 => v.push(ClosedForm::Friendship(n)),
                    4 => v.push(ClosedForm::Windmill4(n)),
                    5 => v.push(ClosedForm::Windmill5(n)),
                    _ => {}
                }
                v
            }
            FamilySpec::Book(n) => vec![ClosedForm::Book(n)],
            FamilySpec::Petersen => vec![ClosedForm::Petersen],
        }
    }

    fn check(&self) -> Result<(), ClosedFormError> {
        let form = self.name();
        let need = |param, min, got| {
            if got < min {
                Err(ClosedFormError::OutOfRange {
                    form,
                    param,
                    min,
                    got,
                })
            } else {
                Ok(())
            }
        };
        match *self {
            ClosedForm::PathStatement(n) | ClosedForm::PathProof(n) => need("n", 4, n),
            ClosedForm::Cycle(n) => need("n", 3, n),
            ClosedForm::Star(n) | ClosedForm::Complete(n) => need("n", 2, n),
            ClosedForm::CompleteBipartite { m, n } => {
                need("m", 1, m)?;
                need("n", 1, n)
            }
            ClosedForm::Windmill { m, n } => {
                need("m", 3, m)?;
                need("n", 1, n)
            }
            ClosedForm::Friendship(n)
            | ClosedForm::Windmill4(n)
            | ClosedForm::Windmill5(n)
            | ClosedForm::Book(n) => need("n", 1, n),
            ClosedForm::Petersen => Ok(()),
        }
    }

    /// The formula expanded to canonical coefficients.
    pub fn polynomial(&self) -> Result<RatPolynomial, ClosedFormError> {
        self.check()?;
        let x = RatPolynomial::x();
        let lin = |r: Rational| RatPolynomial::linear_root(&r);
        // λ² + bλ + a
        let quad = |b: Rational, a: Rational| RatPolynomial::from_coeffs(vec![a, b, int(1)]);
        let p = match *self {
            ClosedForm::PathStatement(n) | ClosedForm::PathProof(n) => {
                let n = n as isize;
                let lead = if matches!(self, ClosedForm::PathProof(_)) {
                    x.pow(2)
                } else {
                    x.clone()
                };
                &(&(&lead * &lambda_signed(n - 2))
                    - &(&x * &lambda_signed(n - 3)).scale(&rat(8, 9)))
                    + &lambda_signed(n - 4).scale(&rat(16, 81))
            }
            ClosedForm::Cycle(n) => cycle_form(n),
            ClosedForm::Star(n) => {
                let n = n as i64;
                &x.pow(n as u32 - 2) * &quad(int(0), -rat(4 * (n - 1), n * n))
            }
            ClosedForm::Complete(n) => {
                let n = n as i64;
                &lin(int(1)) * &lin(-rat(1, n - 1)).pow(n as u32 - 1)
            }
            ClosedForm::CompleteBipartite { m, n } => {
                let (m, n) = (m as i64, n as i64);
                &x.pow((m + n - 2) as u32) * &quad(int(0), -rat(4 * m * n, (m + n) * (m + n)))
            }
            ClosedForm::Friendship(n) => {
                let k = n as i64;
                let head = &lin(rat(1, 2)).pow(n as u32 - 1) * &lin(rat(-1, 2)).pow(n as u32);
                &head * &quad(rat(-1, 2), -rat(2 * k, (k + 1) * (k + 1)))
            }
            ClosedForm::Windmill { m, n } => &lambda_k(m - 1).pow(n as u32 - 1) * &cycle_form(m),
            ClosedForm::Windmill4(n) => {
                let k = n as i64;
                let tail = quad(
                    int(0),
                    -rat(4 * k + (k + 1) * (k + 1), 2 * (k + 1) * (k + 1)),
                );
                &(&x.pow(n as u32 + 1) * &quad(int(0), rat(-1, 2)).pow(n as u32 - 1)) * &tail
            }
            ClosedForm::Windmill5(n) => {
                let k = n as i64;
                let q = rat(8 * k + (k + 1) * (k + 1), 4 * (k + 1) * (k + 1));
                let cubic = RatPolynomial::from_coeffs(vec![
                    -rat(k, (k + 1) * (k + 1)),
                    rat(-1, 2) - q,
                    int(0),
                    int(1),
                ]);
                let a = quad(rat(-1, 2), rat(-1, 4)).pow(n as u32 - 1);
                let b = quad(rat(1, 2), rat(-1, 4)).pow(n as u32);
                &(&a * &b) * &cubic
            }
            ClosedForm::Book(n) => {
                let k = n as i64;
                let q = rat(7 * k * k + 2 * k - 9, 2 * (k + 1) * (k + 3) * (k + 3));
                let r = rat(k + 3, 2 * (k + 1));
                let pages = quad(int(0), rat(-1, 2)).pow(n as u32 - 1);
                &(&pages * &quad(r.clone(), q.clone())) * &quad(-r, q)
            }
            ClosedForm::Petersen => {
                &(&lin(int(1)) * &lin(rat(-2, 3)).pow(4)) * &lin(rat(1, 3)).pow(5)
            }
        };
        Ok(p)
    }
}

/// `λΛ_{n−1} − (1/2)Λ_{n−2} − (1/2)^{n−1}`.
fn cycle_form(n: usize) -> RatPolynomial {
    let seq = lambda_seq(n - 1);
    let half_pow = Rational::new(BigInt::one(), BigInt::from(2).pow(n as u32 - 1));
    &(&(&RatPolynomial::x() * &seq[n - 1]) - &seq[n - 2].scale(&rat(1, 2)))
        - &RatPolynomial::constant(half_pow)
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ClosedForm::CompleteBipartite { m, n } | ClosedForm::Windmill { m, n } => {
                write!(f, "{}(m={m}, n={n})", self.name())
            }
            ClosedForm::Petersen => write!(f, "petersen"),
            ClosedForm::PathStatement(n)
            | ClosedForm::PathProof(n)
            | ClosedForm::Cycle(n)
            | ClosedForm::Star(n)
            | ClosedForm::Complete(n)
            | ClosedForm::Friendship(n)
            | ClosedForm::Windmill4(n)
            | ClosedForm::Windmill5(n)
            | ClosedForm::Book(n) => write!(f, "{}(n={n})", self.name()),
        }
    }
}

/// Prime factorization by trial division up to 2^20; an unfactored cofactor
/// is kept as a single atom.
fn factor(mut v: BigInt) -> Vec<(BigInt, u32)> {
    v = v.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p < (1 << 20) {
        let bp = BigInt::from(p);
        if &bp * &bp > v {
            break;
        }
        let mut e = 0;
        while (&v % &bp).is_zero() {
            v /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if v > BigInt::one() {
        out.push((v, 1));
    }
    out
}

fn divisors(v: &BigInt) -> Vec<BigInt> {
    let mut ds = vec![BigInt::one()];
    for (p, e) in factor(v.clone()) {
        let mut next = Vec::with_capacity(ds.len() * (e as usize + 1));
        for d in &ds {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        ds = next;
    }
    ds
}

/// Rational roots with multiplicity, sorted descending.
pub fn rational_roots(p: &RatPolynomial) -> Vec<(Rational, usize)> {
    let mut rest = p.clone();
    let mut out = Vec::new();
    if rest.degree().unwrap_or(0) == 0 {
        return out;
    }
    let zero_mult = rest.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        rest = RatPolynomial::from_coeffs(rest.coeffs()[zero_mult..].to_vec());
        out.push((Rational::zero(), zero_mult));
    }
    if rest.degree().unwrap_or(0) > 0 {
        let ints = rest.primitive_integer_coeffs();
        let a0 = ints.first().unwrap().clone();
        let an = ints.last().unwrap().clone();
        let bound = 1.0
            + ints
                .iter()
                .map(|c| c.to_f64().unwrap_or(f64::INFINITY).abs())
                .fold(0.0, f64::max)
                / an.to_f64().unwrap_or(f64::INFINITY).abs();
        let dens = divisors(&an);
        let nums = divisors(&a0);
        let mut cands: Vec<Rational> = Vec::new();
        for q in &dens {
            for pnum in &nums {
                if !pnum.gcd(q).is_one() {
                    continue;
                }
                let r = Rational::new(pnum.clone(), q.clone());
                if r.to_f64().is_some_and(|v| v > bound) {
                    continue;
                }
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        for r in cands.into_iter().rev() {
            let mut mult = 0;
            let lin = RatPolynomial::linear_root(&r);
            while rest.degree().unwrap_or(0) > 0 && rest.evaluate(&r).is_zero() {
                rest = rest.div_rem(&lin).0;
                mult += 1;
            }
            if mult > 0 {
                out.push((r, mult));
            }
        }
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    out
}

/// Product of `(λ − r)^m` over rational roots times the remaining factor,
/// e.g. `(λ − 1)(λ + 1/2)^2`.
pub fn factored_display(p: &RatPolynomial) -> String {
    if p.degree().unwrap_or(0) == 0 {
        return fmt_rational(&p.leading());
    }
    let roots = rational_roots(p);
    let mut rest = p.clone();
    let mut parts = Vec::new();
    let pow = |m: usize| {
        if m == 1 {
            String::new()
        } else {
            format!("^{m}")
        }
    };
    let mut ordered: Vec<&(Rational, usize)> = roots.iter().filter(|(r, _)| r.is_zero()).collect();
    ordered.extend(roots.iter().filter(|(r, _)| !r.is_zero()));
    for (r, m) in ordered {
        let lin = RatPolynomial::linear_root(r);
        for _ in 0..*m {
            rest = rest.div_rem(&lin).0;
        }
        if r.is_zero() {
            parts.push(format!("λ{}", pow(*m)));
        } else {
            let sign = if r.is_negative() { '+' } else { '−' };
            parts.push(format!("(λ {sign} {}){}", fmt_rational(&r.abs()), pow(*m)));
        }
    }
    let lead = rest.leading();
    let mut out = String::new();
    if !lead.is_one() {
        if lead == -Rational::one() {
            out.push('−');
        } else {
            out.push_str(&fmt_rational(&lead));
            out.push('·');
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        let monic = rest.scale(&(Rational::one() / &lead));
        if parts.is_empty() {
            parts.push(monic.to_string());
        } else {
            parts.push(format!("({monic})"));
        }
    }
    out.push_str(&parts.concat());
    out
}
