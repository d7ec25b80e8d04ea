//! Sparse multivariate Laurent polynomials with exact rational coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Parses `p`, `-p` or `p/q` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational '{s}'"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in '{s}'")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical `p/q` (or `p` when integral) text of a rational.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `μ! = ∏ μ_j!` for a nonnegative exponent vector.
pub fn exponent_factorial(mu: &[i64]) -> BigInt {
    mu.iter().fold(BigInt::one(), |acc, &e| acc * factorial(e.max(0) as u64))
}

/// Arithmetic selector for [`poly_arith`].
#[derive(Debug, Clone)]
pub enum ArithOp {
    Add,
    Mul,
    Scale(Rational),
}

/// Finite sum of rational multiples of Laurent monomials `x^μ`, `μ ∈ Z^m`.
///
/// Terms live in a `BTreeMap`, so iteration is lexicographic in the exponent
/// and zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SparsePoly {
    num_vars: usize,
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl SparsePoly {
    pub fn zero(num_vars: usize) -> Self {
        SparsePoly { num_vars, terms: BTreeMap::new() }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::monomial(vec![0; num_vars], Rational::one())
    }

    pub fn monomial(exp: Vec<i64>, coeff: Rational) -> Self {
        let mut p = Self::zero(exp.len());
        if !coeff.is_zero() {
            p.terms.insert(exp, coeff);
        }
        p
    }

    pub fn variable(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    /// Sums duplicate exponents and drops zeros.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, Rational)>,
    {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::DimensionMismatch { expected: num_vars, got: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Adds `c·x^e` in place. The exponent length must already match.
    pub fn add_term(&mut self, e: Vec<i64>, c: Rational) {
        debug_assert_eq!(e.len(), self.num_vars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i64]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff_ref(&self, exp: &[i64]) -> Option<&Rational> {
        self.terms.get(exp)
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::VarCountMismatch { left: self.num_vars, right: other.num_vars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.num_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut out = Self::one(self.num_vars);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        SparsePoly { num_vars: self.num_vars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        SparsePoly { num_vars: self.num_vars, terms: self.terms.iter().map(|(e, v)| (e.clone(), -v)).collect() }
    }

    /// Multiplies by the Laurent monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Result<Self> {
        if shift.len() != self.num_vars {
            return Err(Error::DimensionMismatch { expected: self.num_vars, got: shift.len() });
        }
        Ok(SparsePoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone())).collect(),
        })
    }

    /// The normalization operator `N`: drop terms with a negative exponent,
    /// divide the rest by `μ!`.
    pub fn normalize(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().all(|&x| x >= 0))
            .map(|(e, c)| (e.clone(), c / Rational::from_integer(exponent_factorial(e))))
            .collect();
        SparsePoly { num_vars: self.num_vars, terms }
    }

    /// Formal partial derivative `∂^β`; `x^μ ↦ (μ!/(μ−β)!)·x^{μ−β}`, zero when `μ ≱ β`.
    pub fn derivative(&self, beta: &[i64]) -> Result<Self> {
        if beta.len() != self.num_vars {
            return Err(Error::DimensionMismatch { expected: self.num_vars, got: beta.len() });
        }
        if let Some((index, &value)) = beta.iter().enumerate().find(|(_, &b)| b < 0) {
            return Err(Error::NegativeExponent { index, value });
        }
        let mut out = Self::zero(self.num_vars);
        for (mu, c) in &self.terms {
            if mu.iter().zip(beta).any(|(m, b)| m < b) {
                continue;
            }
            // Laurent terms with a negative exponent only appear when β_j = 0
            // in that slot, so the falling factorial stays well-defined.
            let mut f = BigInt::one();
            for (&m, &b) in mu.iter().zip(beta) {
                for k in 0..b {
                    f *= BigInt::from(m - k);
                }
            }
            let e = mu.iter().zip(beta).map(|(m, b)| m - b).collect();
            out.add_term(e, c * Rational::from_integer(f));
        }
        Ok(out)
    }

    pub fn support(&self) -> BTreeSet<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    pub fn degree_info(&self) -> DegreeInfo {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<i64>());
        match degrees.next() {
            None => DegreeInfo { homogeneous: true, degree: None },
            Some(d) => {
                let homogeneous = degrees.all(|x| x == d);
                DegreeInfo { homogeneous, degree: homogeneous.then_some(d) }
            }
        }
    }

    pub fn has_nonnegative_exponents(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// First term with a negative coefficient, if any.
    pub fn first_negative_coeff(&self) -> Option<(&Vec<i64>, &Rational)> {
        self.terms.iter().find(|(_, c)| c.is_negative())
    }

    /// Evaluates at a point with all coordinates nonzero (zero is fine for
    /// coordinates whose exponents are all nonnegative).
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.num_vars {
            return Err(Error::DimensionMismatch { expected: self.num_vars, got: point.len() });
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k >= 0 {
                    term *= num_traits::pow(x.clone(), k as usize);
                } else {
                    if x.is_zero() {
                        return Err(Error::Invalid("negative power of zero".into()));
                    }
                    term /= num_traits::pow(x.clone(), (-k) as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Reindexes into `total` variables, placing variable `i` at `offset + i`.
    pub fn embed(&self, total: usize, offset: usize) -> Result<Self> {
        if offset + self.num_vars > total {
            return Err(Error::DimensionMismatch { expected: total, got: offset + self.num_vars });
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0; total];
                f[offset..offset + e.len()].copy_from_slice(e);
                (f, c.clone())
            })
            .collect();
        Ok(SparsePoly { num_vars: total, terms })
    }

    /// Substitutes a rational value for one variable, keeping the variable
    /// slot (its exponent becomes 0).
    pub fn specialize(&self, var: usize, value: &Rational) -> Result<Self> {
        if var >= self.num_vars {
            return Err(Error::InvalidNode(format!("variable {} of {}", var + 1, self.num_vars)));
        }
        let mut out = Self::zero(self.num_vars);
        for (e, c) in &self.terms {
            let k = e[var];
            if k < 0 && value.is_zero() {
                return Err(Error::Invalid("negative power of zero".into()));
            }
            let f = if k >= 0 {
                num_traits::pow(value.clone(), k as usize)
            } else {
                num_traits::pow(value.clone(), (-k) as usize).recip()
            };
            let mut e2 = e.clone();
            e2[var] = 0;
            out.add_term(e2, c * f);
        }
        Ok(out)
    }

    /// Line-per-term text: `<p>/<q> x1^e1 x2^e2 ...`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (e, c) in &self.terms {
            s.push_str(&fmt_rational(c));
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    s.push_str(&format!(" x{}^{}", i + 1, k));
                }
            }
            s.push('\n');
        }
        s
    }

    /// Parses the line-per-term text form. `#` starts a comment. When
    /// `num_vars` is `None` the largest variable index seen is used.
    pub fn parse_text(text: &str, num_vars: Option<usize>) -> Result<Self> {
        let mut raw = Vec::new();
        let mut max_var = 0usize;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |msg: String| Error::Parse(format!("line {}: {msg}", lineno + 1));
            let mut tokens = line.split_whitespace();
            let coeff = parse_rational(tokens.next().unwrap_or("")).map_err(|e| at(e.to_string()))?;
            let mut exps: BTreeMap<usize, i64> = BTreeMap::new();
            for tok in tokens {
                let (var, pow) = match tok.split_once('^') {
                    Some((v, p)) => (v, p.parse::<i64>().map_err(|_| at(format!("bad exponent in '{tok}'")))?),
                    None => (tok, 1),
                };
                let idx: usize = var
                    .strip_prefix('x')
                    .and_then(|d| d.parse().ok())
                    .filter(|&i: &usize| i >= 1)
                    .ok_or_else(|| at(format!("bad variable '{var}'")))?;
                max_var = max_var.max(idx);
                *exps.entry(idx - 1).or_insert(0) += pow;
            }
            raw.push((exps, coeff));
        }
        let m = match num_vars {
            Some(m) if m < max_var => {
                return Err(Error::DimensionMismatch { expected: m, got: max_var });
            }
            Some(m) => m,
            None => max_var.max(1),
        };
        let terms = raw.into_iter().map(|(exps, c)| {
            let mut e = vec![0; m];
            for (i, k) in exps {
                e[i] = k;
            }
            (e, c)
        });
        Self::from_terms(m, terms)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| TermJson { coeff: fmt_rational(c), exp: e.clone() }).collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        if j.num_vars == 0 {
            return Err(Error::Parse("num_vars must be positive".into()));
        }
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            terms.push((t.exp.clone(), parse_rational(&t.coeff)?));
        }
        Self::from_terms(j.num_vars, terms)
    }

    /// Accepts either the JSON form (leading `{`) or the text form.
    pub fn parse_any(input: &str) -> Result<Self> {
        if input.trim_start().starts_with('{') {
            let j: PolyJson = serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))?;
            Self::from_json(&j)
        } else {
            Self::parse_text(input, None)
        }
    }
}

/// `poly_arith(p, q, op)`; for `Scale` the second argument is ignored.
pub fn poly_arith(p: &SparsePoly, q: &SparsePoly, op: ArithOp) -> Result<SparsePoly> {
    match op {
        ArithOp::Add => p.add(q),
        ArithOp::Mul => p.mul(q),
        ArithOp::Scale(c) => Ok(p.scale(&c)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeInfo {
    pub homogeneous: bool,
    pub degree: Option<i64>,
}

pub fn support_and_degree(p: &SparsePoly) -> (BTreeSet<Vec<i64>>, DegreeInfo) {
    (p.support(), p.degree_info())
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub coeff: String,
    pub exp: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyJson {
    pub num_vars: usize,
    pub terms: Vec<TermJson>,
}

impl fmt::Display for SparsePoly {
    /// Human-readable `c*x1^2*x2 + ...`, highest exponent first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let a = c.abs();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&a), mono.join("*"))?;
            }
        }
        Ok(())
    }
}
