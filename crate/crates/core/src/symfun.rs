//! Two-variable Schur, Hall–Littlewood, Jack and Macdonald polynomials.
//!
//! `P_{(a,b)}` is stored as a [`SparsePoly`] in `(x, y) = (x1, x2)`. The
//! coefficient list `c_0, ..., c_{a−b}` always refers to `x^{b+i} y^{a−i}`.

use num_traits::{Signed, Zero};

use crate::cert::{three_term_ok, CertificationReport, Witness};
use crate::error::{Error, Result};
use crate::poly::{fmt_rational, rat, Rational, SparsePoly};

fn check_partition(a: i64, b: i64) -> Result<()> {
    if b < 0 || a < b {
        return Err(Error::Invalid(format!("({a}, {b}) is not a partition")));
    }
    Ok(())
}

fn from_line(a: i64, b: i64, coeffs: Vec<Rational>) -> Result<SparsePoly> {
    SparsePoly::from_terms(2, coeffs.into_iter().enumerate().map(|(i, c)| (vec![b + i as i64, a - i as i64], c)))
}

/// `s_{(a,b)}(x, y) = Σ_{i=b}^{a} x^i y^{a+b−i}`.
pub fn schur(a: i64, b: i64) -> Result<SparsePoly> {
    check_partition(a, b)?;
    from_line(a, b, vec![rat(1); (a - b + 1) as usize])
}

/// `m_{(a,b)} = x^a y^b + x^b y^a` (one term when `a = b`).
pub fn monomial_symmetric(a: i64, b: i64) -> Result<SparsePoly> {
    check_partition(a, b)?;
    let k = (a - b) as usize;
    let mut c = vec![Rational::zero(); k + 1];
    c[0] = rat(1);
    c[k] = rat(1);
    from_line(a, b, c)
}

/// `s_{(a,b)}` when `a ≤ b+1`, else `s_{(a,b)} − t·s_{(a−1,b+1)}`.
pub fn hall_littlewood(a: i64, b: i64, t: &Rational) -> Result<SparsePoly> {
    check_partition(a, b)?;
    let s = schur(a, b)?;
    if a <= b + 1 {
        return Ok(s);
    }
    s.sub(&schur(a - 1, b + 1)?.scale(t))
}

/// `(τ)_k = τ(τ+1)⋯(τ+k−1)`.
pub fn rising(tau: &Rational, k: i64) -> Rational {
    (0..k).map(|j| tau + rat(j)).product()
}

fn factorial_rat(k: i64) -> Rational {
    (1..=k).map(rat).product()
}

/// Jack coefficients `c_i = k!/(τ)_k · (τ)_i (τ)_{k−i} / (i!(k−i)!)`, `k = a − b`.
pub fn jack_coefficients(a: i64, b: i64, tau: &Rational) -> Result<Vec<Rational>> {
    check_partition(a, b)?;
    let k = a - b;
    let den = rising(tau, k);
    if den.is_zero() {
        return Err(Error::DegenerateParameter(format!("(τ)_{k} vanishes at τ = {}", fmt_rational(tau))));
    }
    let lead = factorial_rat(k) / den;
    Ok((0..=k).map(|i| &lead * rising(tau, i) * rising(tau, k - i) / (factorial_rat(i) * factorial_rat(k - i))).collect())
}

pub fn jack(a: i64, b: i64, tau: &Rational) -> Result<SparsePoly> {
    from_line(a, b, jack_coefficients(a, b, tau)?)
}

/// Gaussian binomial `[k choose i]_q`, a polynomial in `q` evaluated exactly.
fn q_binomial(k: i64, i: i64, q: &Rational) -> Rational {
    let mut row = vec![rat(1)];
    for n in 1..=k {
        let mut next = vec![rat(1); n as usize + 1];
        let mut qp = q.clone();
        for j in 1..n as usize {
            next[j] = &row[j - 1] + &qp * &row[j];
            qp *= q;
        }
        row = next;
    }
    row[i as usize].clone()
}

/// `∏_{j=1}^{m−1} (1 − t q^j)`, which is `(t;q)_m / (1−t)` for `m ≥ 1`.
fn reduced_pochhammer(t: &Rational, q: &Rational, m: i64) -> Rational {
    let mut acc = rat(1);
    let mut qp = q.clone();
    for _ in 1..m {
        acc *= rat(1) - t * &qp;
        qp *= q;
    }
    acc
}

/// Macdonald coefficients
/// `c_i = [k choose i]_q · (t;q)_i (t;q)_{k−i} / (t;q)_k`, with the common
/// factor `1 − t` cancelled so that `t = 1` is allowed.
pub fn macdonald_coefficients(a: i64, b: i64, q: &Rational, t: &Rational) -> Result<Vec<Rational>> {
    check_partition(a, b)?;
    let k = a - b;
    let den = reduced_pochhammer(t, q, k);
    if den.is_zero() {
        return Err(Error::DegenerateParameter(format!(
            "t·q^j = 1 for some 1 ≤ j < {k} at q = {}, t = {}",
            fmt_rational(q),
            fmt_rational(t)
        )));
    }
    Ok((0..=k)
        .map(|i| {
            let ratio = if i == 0 || i == k {
                rat(1)
            } else {
                (rat(1) - t) * reduced_pochhammer(t, q, i) * reduced_pochhammer(t, q, k - i) / &den
            };
            q_binomial(k, i, q) * ratio
        })
        .collect())
}

pub fn macdonald(a: i64, b: i64, q: &Rational, t: &Rational) -> Result<SparsePoly> {
    from_line(a, b, macdonald_coefficients(a, b, q, t)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Schur,
    HallLittlewood { t: Rational },
    Jack { tau: Rational },
    Macdonald { q: Rational, t: Rational },
}

impl Family {
    pub fn eval(&self, a: i64, b: i64) -> Result<SparsePoly> {
        match self {
            Family::Schur => schur(a, b),
            Family::HallLittlewood { t } => hall_littlewood(a, b, t),
            Family::Jack { tau } => jack(a, b, tau),
            Family::Macdonald { q, t } => macdonald(a, b, q, t),
        }
    }
}

fn mismatch(identity: &str, params: &[&Rational], left: &SparsePoly, right: &SparsePoly) -> CertificationReport {
    CertificationReport::fail(Witness::Mismatch {
        identity: identity.into(),
        params: params.iter().map(|p| fmt_rational(p)).collect(),
        left: left.to_string(),
        right: right.to_string(),
    })
}

/// Checks `P(q=t) = s`, `P(q=0) = P_HL(t)`, `P(t=1) = m`, and `P^{(1)} = s`
/// at every sampled `(q, t)`. Samples where a side is undefined are skipped.
pub fn specialization_check(a: i64, b: i64, samples: &[(Rational, Rational)]) -> Result<CertificationReport> {
    let s = schur(a, b)?;
    let m = monomial_symmetric(a, b)?;
    let j = jack(a, b, &rat(1))?;
    if j != s {
        return Ok(mismatch("jack(τ=1) = schur", &[], &j, &s));
    }
    let mut checked = 0usize;
    for (q, t) in samples {
        if let Ok(p) = macdonald(a, b, q, q) {
            checked += 1;
            if p != s {
                return Ok(mismatch("macdonald(q=t) = schur", &[q], &p, &s));
            }
        }
        if let Ok(p) = macdonald(a, b, &Rational::zero(), t) {
            checked += 1;
            let hl = hall_littlewood(a, b, t)?;
            if p != hl {
                return Ok(mismatch("macdonald(q=0) = hall_littlewood", &[t], &p, &hl));
            }
        }
        if let Ok(p) = macdonald(a, b, q, &rat(1)) {
            checked += 1;
            if p != m {
                return Ok(mismatch("macdonald(t=1) = monomial", &[q], &p, &m));
            }
        }
    }
    Ok(CertificationReport::pass().with_note(format!("{} specializations checked", checked + 1)))
}

/// `c_i² ≥ c_{i−1} c_{i+1}` along the single line of a homogeneous
/// two-variable polynomial, indexed by the exponent of `x`.
pub fn coeff_log_concavity(p: &SparsePoly) -> Result<CertificationReport> {
    if p.num_vars() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: p.num_vars() });
    }
    let info = p.degree_info();
    if !info.homogeneous {
        return Err(Error::NonHomogeneous);
    }
    let Some(d) = info.degree else {
        return Ok(CertificationReport::pass());
    };
    let c = |i: i64| p.coeff(&[i, d - i]);
    for i in 1..d {
        let (center, fw, bw) = (c(i), c(i + 1), c(i - 1));
        if !three_term_ok(&center, &fw, &bw) {
            return Ok(CertificationReport::fail(Witness::ThreeTerm {
                at: vec![i, d - i],
                direction: vec![1, -1],
                center: fmt_rational(&center),
                forward: fmt_rational(&fw),
                backward: fmt_rational(&bw),
            }));
        }
    }
    Ok(CertificationReport::pass())
}

/// `P_ν² − P_λ P_μ` for partitions with `λ + μ = 2ν`.
pub fn okounkov_difference(family: &Family, lambda: (i64, i64), mu: (i64, i64), nu: (i64, i64)) -> Result<SparsePoly> {
    if lambda.0 + mu.0 != 2 * nu.0 || lambda.1 + mu.1 != 2 * nu.1 {
        return Err(Error::Precondition("λ + μ must equal 2ν".into()));
    }
    let pn = family.eval(nu.0, nu.1)?;
    let pl = family.eval(lambda.0, lambda.1)?;
    let pm = family.eval(mu.0, mu.1)?;
    pn.mul(&pn)?.sub(&pl.mul(&pm)?)
}

/// Nonnegativity of `diff` at each supplied point.
pub fn evaluation_report(diff: &SparsePoly, points: &[Vec<Rational>]) -> Result<CertificationReport> {
    for pt in points {
        let v = diff.evaluate(pt)?;
        if v.is_negative() {
            return Ok(CertificationReport::fail(Witness::NegativeValue {
                point: pt.iter().map(fmt_rational).collect(),
                value: fmt_rational(&v),
            }));
        }
    }
    Ok(CertificationReport::pass())
}

/// Dense univariate polynomial over the rationals, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    c: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn constant(x: Rational) -> Self {
        Self::new(vec![x])
    }

    /// The indeterminate.
    pub fn var() -> Self {
        Self::new(vec![rat(0), rat(1)])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.c.get(i).cloned().unwrap_or_default() + o.c.get(i).cloned().unwrap_or_default()).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.c.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(vec![]);
        }
        let mut c = vec![Rational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.c.iter().rev().fold(Rational::zero(), |acc, a| acc * x + a)
    }
}

/// Quotient of two [`UniPoly`]s; not reduced, compared by cross-multiplication.
#[derive(Debug, Clone)]
pub struct RatFunc {
    pub num: UniPoly,
    pub den: UniPoly,
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DegenerateParameter("zero denominator".into()));
        }
        Ok(RatFunc { num, den })
    }

    pub fn poly(p: UniPoly) -> Self {
        RatFunc { num: p, den: UniPoly::constant(rat(1)) }
    }

    pub fn constant(x: Rational) -> Self {
        Self::poly(UniPoly::constant(x))
    }

    pub fn add(&self, o: &Self) -> Self {
        RatFunc { num: self.num.mul(&o.den).add(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        RatFunc { num: self.num.mul(&o.den).sub(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        RatFunc { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DegenerateParameter(format!("pole at {}", fmt_rational(x))));
        }
        Ok(self.num.eval(x) / d)
    }
}

fn rising_sym(k: i64) -> UniPoly {
    (0..k).fold(UniPoly::constant(rat(1)), |acc, j| acc.mul(&UniPoly::new(vec![rat(j), rat(1)])))
}

/// Jack coefficients as rational functions of `τ`.
pub fn jack_symbolic(a: i64, b: i64) -> Result<Vec<RatFunc>> {
    check_partition(a, b)?;
    let k = a - b;
    let den = rising_sym(k);
    (0..=k)
        .map(|i| {
            let num = rising_sym(i)
                .mul(&rising_sym(k - i))
                .mul(&UniPoly::constant(factorial_rat(k) / (factorial_rat(i) * factorial_rat(k - i))));
            RatFunc::new(num, den.clone())
        })
        .collect()
}

/// Hall–Littlewood coefficients as polynomials in `t`.
pub fn hall_littlewood_symbolic(a: i64, b: i64) -> Result<Vec<UniPoly>> {
    check_partition(a, b)?;
    let k = (a - b) as usize;
    let mut c = vec![UniPoly::constant(rat(1)); k + 1];
    if a > b + 1 {
        for x in c.iter_mut().take(k).skip(1) {
            *x = UniPoly::new(vec![rat(1), rat(-1)]);
        }
    }
    Ok(c)
}

/// A homogeneous two-variable polynomial of degree `d` with coefficients in
/// `R`, indexed by the exponent of `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymLine {
    pub coeffs: Vec<RatFunc>,
}

impl SymLine {
    /// From the `c_i` of `P_{(a,b)}`.
    pub fn from_partition(a: i64, b: i64, c: Vec<RatFunc>) -> Self {
        let mut coeffs = vec![RatFunc::constant(Rational::zero()); (a + b + 1) as usize];
        for (i, x) in c.into_iter().enumerate() {
            coeffs[b as usize + i] = x;
        }
        SymLine { coeffs }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut coeffs = vec![RatFunc::constant(Rational::zero()); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        SymLine { coeffs }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        if self.coeffs.len() != o.coeffs.len() {
            return Err(Error::Invalid("degrees differ".into()));
        }
        Ok(SymLine { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect() })
    }
}

/// `P^{(τ)}_ν² − P^{(τ)}_λ P^{(τ)}_μ` with coefficients in `τ`.
pub fn jack_okounkov_symbolic(lambda: (i64, i64), mu: (i64, i64), nu: (i64, i64)) -> Result<SymLine> {
    if lambda.0 + mu.0 != 2 * nu.0 || lambda.1 + mu.1 != 2 * nu.1 {
        return Err(Error::Precondition("λ + μ must equal 2ν".into()));
    }
    let line = |p: (i64, i64)| -> Result<SymLine> { Ok(SymLine::from_partition(p.0, p.1, jack_symbolic(p.0, p.1)?)) };
    let n = line(nu)?;
    n.mul(&n).sub(&line(lambda)?.mul(&line(mu)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;
    use proptest::prelude::*;

    fn poly(text: &str) -> SparsePoly {
        SparsePoly::parse_text(text, Some(2)).unwrap()
    }

    fn line(a: i64, b: i64, c: &[Rational]) -> SparsePoly {
        from_line(a, b, c.to_vec()).unwrap()
    }

    #[test]
    fn hall_littlewood_examples() {
        let t = ratio(1, 3);
        assert_eq!(hall_littlewood(2, 0, &t).unwrap(), line(2, 0, &[rat(1), ratio(2, 3), rat(1)]));
        assert_eq!(hall_littlewood(1, 0, &t).unwrap(), poly("1 x1\n1 x2"));
        assert_eq!(hall_littlewood(3, 1, &rat(0)).unwrap(), schur(3, 1).unwrap());
        assert_eq!(schur(3, 1).unwrap(), poly("1 x1^3 x2\n1 x1^2 x2^2\n1 x1 x2^3"));
        assert_eq!(hall_littlewood(4, 0, &rat(1)).unwrap(), monomial_symmetric(4, 0).unwrap());
        assert!(hall_littlewood(1, 2, &t).is_err());
    }

    #[test]
    fn jack_examples() {
        let tau = ratio(1, 2);
        assert_eq!(jack(2, 0, &tau).unwrap(), line(2, 0, &[rat(1), ratio(2, 3), rat(1)]));
        let c = jack_coefficients(3, 0, &tau).unwrap();
        assert_eq!(c, vec![rat(1), ratio(3, 5), ratio(3, 5), rat(1)]);
        for (a, b) in [(2, 0), (3, 1), (5, 0), (4, 4)] {
            assert_eq!(jack(a, b, &rat(1)).unwrap(), schur(a, b).unwrap());
        }
        assert!(matches!(jack(3, 0, &rat(-1)), Err(Error::DegenerateParameter(_))));
        assert!(matches!(jack(2, 0, &rat(0)), Err(Error::DegenerateParameter(_))));
    }

    #[test]
    fn macdonald_examples() {
        let (q, t) = (ratio(1, 2), ratio(1, 3));
        let mid = (rat(1) - &t) * (rat(1) + &q) / (rat(1) - &t * &q);
        assert_eq!(macdonald(2, 0, &q, &t).unwrap(), line(2, 0, &[rat(1), mid, rat(1)]));
        let mid3 = (rat(1) - &t) * (rat(1) + &q + &q * &q) / (rat(1) - &t * &q * &q);
        assert_eq!(macdonald(3, 0, &q, &t).unwrap(), line(3, 0, &[rat(1), mid3.clone(), mid3, rat(1)]));
        for (a, b) in [(2, 0), (3, 1), (5, 2)] {
            assert_eq!(macdonald(a, b, &q, &q).unwrap(), schur(a, b).unwrap());
        }
        assert!(matches!(macdonald(2, 0, &rat(2), &ratio(1, 2)), Err(Error::DegenerateParameter(_))));
    }

    #[test]
    fn specialization_examples() {
        let third = ratio(1, 3);
        assert_eq!(macdonald(2, 0, &third, &third).unwrap(), poly("1 x1^2\n1 x1 x2\n1 x2^2"));
        assert_eq!(macdonald(3, 1, &rat(0), &ratio(1, 2)).unwrap(), hall_littlewood(3, 1, &ratio(1, 2)).unwrap());
        assert_eq!(macdonald(2, 0, &ratio(2, 7), &rat(1)).unwrap(), poly("1 x1^2\n1 x2^2"));
        let samples: Vec<(Rational, Rational)> =
            vec![(ratio(1, 3), ratio(1, 2)), (ratio(3, 4), ratio(1, 5)), (rat(2), ratio(5, 3))];
        for (a, b) in [(2, 0), (3, 0), (3, 1), (5, 1), (6, 0)] {
            assert!(specialization_check(a, b, &samples).unwrap().verdict, "({a}, {b})");
        }
    }

    #[test]
    fn log_concavity_examples() {
        assert!(coeff_log_concavity(&macdonald(2, 0, &ratio(1, 2), &ratio(1, 4)).unwrap()).unwrap().verdict);
        let hl = coeff_log_concavity(&hall_littlewood(2, 0, &ratio(1, 2)).unwrap()).unwrap();
        assert!(!hl.verdict);
        match hl.witness.unwrap() {
            Witness::ThreeTerm { center, forward, backward, .. } => {
                assert_eq!((center.as_str(), forward.as_str(), backward.as_str()), ("1/2", "1", "1"));
            }
            w => panic!("unexpected {w:?}"),
        }
        assert!(!coeff_log_concavity(&jack(5, 0, &ratio(1, 2)).unwrap()).unwrap().verdict);
        assert!(matches!(coeff_log_concavity(&poly("1 x1^2\n1 x2")), Err(Error::NonHomogeneous)));
    }

    #[test]
    fn jack_boundary() {
        for a in [3, 4, 5] {
            for (tau, lc) in [
                (ratio(1, 4), false),
                (ratio(1, 2), false),
                (ratio(9, 10), false),
                (rat(1), true),
                (rat(2), true),
                (rat(10), true),
            ] {
                assert_eq!(coeff_log_concavity(&jack(a, 0, &tau).unwrap()).unwrap().verdict, lc, "a={a} τ={tau}");
            }
        }
    }

    #[test]
    fn jack_ratio_identity() {
        // c1² − c0 c2 has the sign of (τ−1)(a²−2a−1+τ(a+1)).
        for a in 3..=7 {
            let c = jack_symbolic(a, 0).unwrap();
            let lhs = c[1].mul(&c[1]).sub(&c[0].mul(&c[2]));
            for tau in [ratio(1, 5), ratio(1, 2), rat(1), ratio(3, 2), rat(4)] {
                let v = lhs.eval(&tau).unwrap();
                let sign = (&tau - rat(1)) * (rat(a * a - 2 * a - 1) + &tau * rat(a + 1));
                assert_eq!(v.signum(), sign.signum(), "a={a} τ={tau}");
            }
        }
    }

    #[test]
    fn okounkov_examples() {
        let d = okounkov_difference(&Family::Schur, (3, 0), (1, 0), (2, 0)).unwrap();
        assert!(d.terms().all(|(_, c)| !c.is_negative()));
        let d = okounkov_difference(&Family::Jack { tau: ratio(1, 2) }, (3, 0), (1, 0), (2, 0)).unwrap();
        assert_eq!(d.coeff(&[3, 1]), ratio(-4, 15));
        assert_eq!(d.coeff(&[1, 3]), ratio(-4, 15));
        let t = ratio(1, 2);
        let d = okounkov_difference(&Family::HallLittlewood { t: t.clone() }, (3, 0), (1, 0), (2, 0)).unwrap();
        let rep = evaluation_report(&d, &[vec![rat(1), ratio(2, 5)]]).unwrap();
        assert!(!rep.verdict);
        assert!(rep.witness.unwrap().recheck(&d));
        // At q = 0 the Macdonald difference is −xy(tx−y)(x−ty).
        let d = okounkov_difference(&Family::Macdonald { q: rat(0), t: t.clone() }, (3, 0), (1, 0), (2, 0)).unwrap();
        let x = SparsePoly::variable(2, 0);
        let y = SparsePoly::variable(2, 1);
        let want =
            x.mul(&y).unwrap().mul(&x.scale(&t).sub(&y).unwrap()).unwrap().mul(&x.sub(&y.scale(&t)).unwrap()).unwrap().neg();
        assert_eq!(d, want);
        assert!(okounkov_difference(&Family::Schur, (3, 0), (2, 0), (2, 0)).is_err());
    }

    #[test]
    fn jack_okounkov_symbolic_coefficient() {
        let s = jack_okounkov_symbolic((3, 0), (1, 0), (2, 0)).unwrap();
        let tau = UniPoly::var();
        let one = UniPoly::constant(rat(1));
        let want =
            RatFunc::new(tau.sub(&one).mul(&UniPoly::constant(rat(2))), tau.add(&one).mul(&tau.add(&UniPoly::constant(rat(2)))))
                .unwrap();
        assert_eq!(s.coeffs[1], want);
        assert_eq!(s.coeffs[3], want);
        let mid = RatFunc::new(
            UniPoly::new(vec![rat(4), rat(4), rat(4)]),
            tau.add(&one).mul(&tau.add(&one)).mul(&tau.add(&UniPoly::constant(rat(2)))),
        )
        .unwrap();
        assert_eq!(s.coeffs[2], mid);
        assert_eq!(s.coeffs[0], RatFunc::constant(rat(0)));
    }

    #[test]
    fn hall_littlewood_symbolic_matches() {
        let c = hall_littlewood_symbolic(2, 0).unwrap();
        assert_eq!(c[1], UniPoly::new(vec![rat(1), rat(-1)]));
        for (a, b) in [(2, 0), (4, 1), (3, 2)] {
            let c = hall_littlewood_symbolic(a, b).unwrap();
            let t = ratio(2, 7);
            let vals: Vec<Rational> = c.iter().map(|p| p.eval(&t)).collect();
            assert_eq!(line(a, b, &vals), hall_littlewood(a, b, &t).unwrap());
        }
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (1i64..40, 1i64..40).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn mac20_matches_sign_condition(qn in 1i64..100, tn in 1i64..100) {
            let q = ratio(qn, 100);
            let t = ratio(tn, 100);
            let lc = coeff_log_concavity(&macdonald(2, 0, &q, &t).unwrap()).unwrap().verdict;
            let sign = (&q - &t) * (&q - &t + rat(2) - rat(2) * &q * &t);
            prop_assert_eq!(lc, !sign.is_negative());
        }

        #[test]
        fn families_symmetric_with_unit_ends(a in 0i64..6, drop in 0i64..6, p in small_rat(), r in small_rat()) {
            let b = drop.min(a);
            for f in [Family::Schur, Family::HallLittlewood { t: p.clone() }, Family::Jack { tau: p.clone() }, Family::Macdonald { q: p.clone(), t: r.clone() }] {
                let Ok(poly) = f.eval(a, b) else { continue };
                prop_assert_eq!(poly.coeff(&[a, b]), rat(1));
                prop_assert_eq!(poly.coeff(&[b, a]), rat(1));
                for (e, c) in poly.terms() {
                    prop_assert_eq!(&poly.coeff(&[e[1], e[0]]), c);
                }
            }
        }

        #[test]
        fn macdonald_inversion_symmetry(a in 0i64..6, drop in 0i64..6, q in small_rat(), t in small_rat()) {
            let b = drop.min(a);
            let qi = rat(1) / &q;
            let ti = rat(1) / &t;
            if let (Ok(x), Ok(y)) = (macdonald(a, b, &q, &t), macdonald(a, b, &qi, &ti)) {
                prop_assert_eq!(x, y);
            }
        }
    }
}
