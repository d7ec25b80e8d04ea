//! Certificates for M-convexity, Lorentzian and log-concave polynomials.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::poly::{exponent_factorial, fmt_rational, Rational, SparsePoly};

/// Evidence attached to a negative verdict. Indices are 0-based in memory and
/// serialized as they are stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `alpha_i > beta_i`, and no `j` with `alpha_j < beta_j` keeps
    /// `alpha − e_i + e_j` inside the set.
    Exchange {
        alpha: Vec<i64>,
        beta: Vec<i64>,
        i: usize,
    },
    NegativeCoefficient {
        exponent: Vec<i64>,
        coeff: String,
    },
    NegativeExponent {
        exponent: Vec<i64>,
    },
    NonHomogeneous {
        first: Vec<i64>,
        second: Vec<i64>,
    },
    /// The quadratic `∂^derivative h` has `positive` > 1 positive eigenvalues.
    Eigenvalue {
        derivative: Vec<i64>,
        hessian: Vec<Vec<String>>,
        positive: usize,
    },
    /// `center² < forward·backward` for values at `at`, `at + direction`, `at − direction`.
    ThreeTerm {
        at: Vec<i64>,
        direction: Vec<i64>,
        center: String,
        forward: String,
        backward: String,
    },
    /// `h·∇²h − ∇h∇hᵀ` at `point` has `positive` positive eigenvalues.
    ContinuousHessian {
        point: Vec<String>,
        matrix: Vec<Vec<String>>,
        positive: usize,
    },
    /// `h(point) = value < 0`.
    NegativeValue {
        point: Vec<String>,
        value: String,
    },
    /// Two computations that should agree do not; not a property of `h`.
    Mismatch {
        identity: String,
        params: Vec<String>,
        left: String,
        right: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificationReport {
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CertificationReport {
    pub fn pass() -> Self {
        CertificationReport { verdict: true, witness: None, note: None }
    }

    pub fn fail(w: Witness) -> Self {
        CertificationReport { verdict: false, witness: Some(w), note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Root directions `ε_i − ε_j` as ordered pairs of variable indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionSet {
    pairs: Vec<(usize, usize)>,
}

impl DirectionSet {
    pub fn new(num_vars: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        for &(i, j) in &pairs {
            if i == j {
                return Err(Error::Invalid(format!("direction ({}, {}) is not a root", i + 1, j + 1)));
            }
            if i >= num_vars || j >= num_vars {
                return Err(Error::InvalidNode(format!("direction ({}, {}) with {num_vars} variables", i + 1, j + 1)));
            }
        }
        Ok(DirectionSet { pairs })
    }

    /// All ordered pairs `i < j`; the inequality is symmetric in `(i, j)`.
    pub fn all(num_vars: usize) -> Self {
        let pairs = (0..num_vars).flat_map(|i| (i + 1..num_vars).map(move |j| (i, j))).collect();
        DirectionSet { pairs }
    }

    /// Pairs inside consecutive variable blocks of the given sizes.
    pub fn within_blocks(block_sizes: &[usize]) -> Self {
        let mut pairs = Vec::new();
        let mut off = 0;
        for &s in block_sizes {
            for i in off..off + s {
                for j in i + 1..off + s {
                    pairs.push((i, j));
                }
            }
            off += s;
        }
        DirectionSet { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

fn check_support(support: &BTreeSet<Vec<i64>>) -> Result<()> {
    let mut len = None;
    for e in support {
        if let Some(l) = len {
            if l != e.len() {
                return Err(Error::DimensionMismatch { expected: l, got: e.len() });
            }
        }
        len = Some(e.len());
        if let Some((index, &value)) = e.iter().enumerate().find(|(_, &x)| x < 0) {
            return Err(Error::NegativeExponent { index, value });
        }
    }
    Ok(())
}

/// M-convexity by direct enumeration of the exchange axiom.
pub fn is_mconvex(support: &BTreeSet<Vec<i64>>) -> Result<CertificationReport> {
    check_support(support)?;
    Ok(match exchange_failure(support) {
        None => CertificationReport::pass(),
        Some(w) => CertificationReport::fail(w),
    })
}

/// Scans `alpha` from the lexicographically largest point down.
fn exchange_failure(support: &BTreeSet<Vec<i64>>) -> Option<Witness> {
    for alpha in support.iter().rev() {
        for beta in support {
            for i in 0..alpha.len() {
                if alpha[i] <= beta[i] {
                    continue;
                }
                let ok = (0..alpha.len()).any(|j| {
                    if alpha[j] >= beta[j] {
                        return false;
                    }
                    let mut g = alpha.clone();
                    g[i] -= 1;
                    g[j] += 1;
                    support.contains(&g)
                });
                if !ok {
                    return Some(Witness::Exchange { alpha: alpha.clone(), beta: beta.clone(), i });
                }
            }
        }
    }
    None
}

/// Largest box (product of coordinate ranges) the polymatroid route will scan.
const POLYMATROID_BOX_LIMIT: u128 = 200_000;
const POLYMATROID_MAX_VARS: usize = 12;

/// M-convexity through the rank function `f(S) = max_{x∈B} x(S)`: `B` is
/// M-convex iff `f` is submodular and `B` is every lattice point of the base
/// polytope of `f`. Returns `None` when the instance is too large for it.
pub fn is_mconvex_polymatroid(support: &BTreeSet<Vec<i64>>) -> Option<bool> {
    let m = support.first()?.len();
    if m == 0 {
        return Some(true);
    }
    if m > POLYMATROID_MAX_VARS {
        return None;
    }
    let d: i64 = support.first()?.iter().sum();
    if support.iter().any(|e| e.iter().sum::<i64>() != d) {
        return Some(false);
    }
    let full = (1usize << m) - 1;
    let mut f = vec![i64::MIN; 1 << m];
    f[0] = 0;
    for x in support {
        for (s, slot) in f.iter_mut().enumerate().skip(1) {
            let v: i64 = (0..m).filter(|k| s >> k & 1 == 1).map(|k| x[k]).sum();
            if v > *slot {
                *slot = v;
            }
        }
    }
    // Local submodularity: f(S+i) + f(S+j) ≥ f(S+i+j) + f(S).
    for s in 0..=full {
        for i in 0..m {
            if s >> i & 1 == 1 {
                continue;
            }
            for j in i + 1..m {
                if s >> j & 1 == 1 {
                    continue;
                }
                if f[s | 1 << i] + f[s | 1 << j] < f[s | 1 << i | 1 << j] + f[s] {
                    return Some(false);
                }
            }
        }
    }
    let lo: Vec<i64> = (0..m).map(|k| d - f[full & !(1 << k)]).collect();
    let hi: Vec<i64> = (0..m).map(|k| f[1 << k]).collect();
    let volume = lo.iter().zip(&hi).try_fold(1u128, |acc, (l, h)| acc.checked_mul((h - l + 1).max(1) as u128))?;
    if volume > POLYMATROID_BOX_LIMIT {
        return None;
    }
    let mut x = vec![0i64; m];
    Some(polymatroid_points_in(support, &f, &lo, &hi, d, 0, &mut x))
}

fn polymatroid_points_in(
    support: &BTreeSet<Vec<i64>>,
    f: &[i64],
    lo: &[i64],
    hi: &[i64],
    d: i64,
    k: usize,
    x: &mut Vec<i64>,
) -> bool {
    let m = x.len();
    let used: i64 = x[..k].iter().sum();
    if k == m - 1 {
        let last = d - used;
        if last < lo[k] || last > hi[k] {
            return true;
        }
        x[k] = last;
        let in_base = (1..f.len()).all(|s| (0..m).filter(|b| s >> b & 1 == 1).map(|b| x[b]).sum::<i64>() <= f[s]);
        return !in_base || support.contains(x.as_slice());
    }
    for v in lo[k]..=hi[k] {
        if used + v > d {
            break;
        }
        x[k] = v;
        if !polymatroid_points_in(support, f, lo, hi, d, k + 1, x) {
            return false;
        }
    }
    true
}

pub fn positive_eigenvalue_count(q: &[Vec<Rational>]) -> Result<usize> {
    crate::matrix::positive_eigenvalue_count(q)
}

fn strings(rows: &[Vec<Rational>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(fmt_rational).collect()).collect()
}

/// Nonnegativity, homogeneity and nonnegative-exponent screening shared by
/// the Lorentzian checks. `Ok(None)` means all screens passed.
fn screen(h: &SparsePoly) -> Option<Witness> {
    if let Some((e, c)) = h.first_negative_coeff() {
        return Some(Witness::NegativeCoefficient { exponent: e.clone(), coeff: fmt_rational(c) });
    }
    if let Some(e) = h.terms().map(|(e, _)| e).find(|e| e.iter().any(|&x| x < 0)) {
        return Some(Witness::NegativeExponent { exponent: e.clone() });
    }
    let mut it = h.terms().map(|(e, _)| e);
    if let Some(first) = it.next() {
        let d: i64 = first.iter().sum();
        if let Some(second) = it.find(|e| e.iter().sum::<i64>() != d) {
            return Some(Witness::NonHomogeneous { first: first.clone(), second: second.clone() });
        }
    }
    None
}

/// Lorentzian test: nonnegative coefficients, homogeneous, M-convex support,
/// and every `(d−2)`-nd derivative quadratic has at most one positive eigenvalue.
/// The zero polynomial counts as Lorentzian.
pub fn is_lorentzian(h: &SparsePoly) -> CertificationReport {
    if h.is_zero() {
        return CertificationReport::pass().with_note("zero polynomial");
    }
    if let Some(w) = screen(h) {
        return CertificationReport::fail(w);
    }
    let support = h.support();
    let mconvex = match is_mconvex_polymatroid(&support) {
        Some(true) => true,
        Some(false) | None => exchange_failure(&support).is_none(),
    };
    if !mconvex {
        let w = exchange_failure(&support).expect("polymatroid and exchange routes disagree");
        return CertificationReport::fail(w);
    }
    let m = h.num_vars();
    let d: i64 = support.first().map(|e| e.iter().sum()).unwrap_or(0);
    if d <= 1 {
        return CertificationReport::pass();
    }
    // (β+e_i+e_j)!·c_{β+e_i+e_j} is the Hessian entry of ∂^β h.
    let weighted: HashMap<&Vec<i64>, Rational> =
        h.terms().map(|(e, c)| (e, c * Rational::from_integer(exponent_factorial(e)))).collect();
    // Only β = γ − e_i − e_j for γ in the support give a nonzero quadratic.
    let mut betas: BTreeSet<Vec<i64>> = BTreeSet::new();
    for g in &support {
        for i in 0..m {
            for j in i..m {
                let mut b = g.clone();
                b[i] -= 1;
                b[j] -= 1;
                if b[i] >= 0 && b[j] >= 0 {
                    betas.insert(b);
                }
            }
        }
    }
    let mut gamma = vec![0i64; m];
    for beta in &betas {
        // Restrict to variables that appear; the other rows are zero.
        let mut rows = vec![vec![Rational::zero(); m]; m];
        for i in 0..m {
            for j in i..m {
                gamma.copy_from_slice(beta);
                gamma[i] += 1;
                gamma[j] += 1;
                if let Some(v) = weighted.get(&gamma) {
                    rows[i][j] = v.clone();
                    rows[j][i] = v.clone();
                }
            }
        }
        let live: Vec<usize> = (0..m).filter(|&i| rows[i].iter().any(|x| !x.is_zero())).collect();
        if live.len() < 2 {
            continue;
        }
        let sub: Vec<Vec<Rational>> = live.iter().map(|&i| live.iter().map(|&j| rows[i][j].clone()).collect()).collect();
        let q = SymMatrix::new(sub).expect("Hessian is symmetric by construction");
        let positive = q.positive_eigenvalue_count();
        if positive > 1 {
            return CertificationReport::fail(Witness::Eigenvalue {
                derivative: beta.clone(),
                hessian: strings(&rows),
                positive,
            });
        }
    }
    CertificationReport::pass()
}

/// `N(h)` is Lorentzian.
pub fn is_denormalized_lorentzian(h: &SparsePoly) -> CertificationReport {
    is_lorentzian(&h.normalize())
}

/// Exact three-term log-concavity along the given directions, over the
/// support and its one-step halo.
pub fn is_discretely_log_concave(h: &SparsePoly, dirs: &DirectionSet) -> Result<CertificationReport> {
    if let Some((e, c)) = h.first_negative_coeff() {
        return Err(Error::NegativeCoefficient { exponent: e.clone(), coeff: fmt_rational(c) });
    }
    if !h.degree_info().homogeneous {
        return Err(Error::NonHomogeneous);
    }
    if let Some(&(i, j)) = dirs.pairs().iter().find(|&&(i, j)| i.max(j) >= h.num_vars()) {
        return Err(Error::InvalidNode(format!("direction ({}, {}) with {} variables", i + 1, j + 1, h.num_vars())));
    }
    let mut candidates: BTreeSet<Vec<i64>> = BTreeSet::new();
    for (e, _) in h.terms() {
        candidates.insert(e.clone());
        for &(i, j) in dirs.pairs() {
            for s in [1i64, -1] {
                let mut g = e.clone();
                g[i] += s;
                g[j] -= s;
                candidates.insert(g);
            }
        }
    }
    let m = h.num_vars();
    for mu in &candidates {
        for &(i, j) in dirs.pairs() {
            let mut dir = vec![0i64; m];
            dir[i] = 1;
            dir[j] = -1;
            let fwd: Vec<i64> = mu.iter().zip(&dir).map(|(a, b)| a + b).collect();
            let bwd: Vec<i64> = mu.iter().zip(&dir).map(|(a, b)| a - b).collect();
            let (Some(f), Some(b)) = (h.coeff_ref(&fwd), h.coeff_ref(&bwd)) else { continue };
            let c = h.coeff(mu);
            if &c * &c < f * b {
                return Ok(CertificationReport::fail(Witness::ThreeTerm {
                    at: mu.clone(),
                    direction: dir,
                    center: fmt_rational(&c),
                    forward: fmt_rational(f),
                    backward: fmt_rational(b),
                }));
            }
        }
    }
    Ok(CertificationReport::pass())
}

/// Pointwise test of `log h` concavity: `h·∇²h − ∇h∇hᵀ` has no positive
/// eigenvalue at `point`.
pub fn continuous_lc_spot_check(h: &SparsePoly, point: &[Rational]) -> Result<CertificationReport> {
    let m = h.num_vars();
    if point.len() != m {
        return Err(Error::DimensionMismatch { expected: m, got: point.len() });
    }
    if let Some(k) = point.iter().position(|x| !x.is_positive()) {
        return Err(Error::Invalid(format!("point coordinate {} is not positive", k + 1)));
    }
    if !h.has_nonnegative_exponents() {
        return Err(Error::Invalid("polynomial has negative exponents".into()));
    }
    let value = h.evaluate(point)?;
    if value.is_zero() {
        return Ok(CertificationReport::pass().with_note("h vanishes at the point"));
    }
    let unit = |i: usize, k: i64| {
        let mut e = vec![0i64; m];
        e[i] += k;
        e
    };
    let grad: Vec<Rational> = (0..m).map(|i| h.derivative(&unit(i, 1))?.evaluate(point)).collect::<Result<_>>()?;
    let mut rows = vec![vec![Rational::zero(); m]; m];
    for i in 0..m {
        for j in i..m {
            let mut b = unit(i, 1);
            b[j] += 1;
            let hij = h.derivative(&b)?.evaluate(point)?;
            let v = &value * hij - &grad[i] * &grad[j];
            rows[i][j] = v.clone();
            rows[j][i] = v;
        }
    }
    let positive = SymMatrix::new(rows.clone())?.positive_eigenvalue_count();
    if positive == 0 {
        Ok(CertificationReport::pass())
    } else {
        Ok(CertificationReport::fail(Witness::ContinuousHessian {
            point: point.iter().map(fmt_rational).collect(),
            matrix: strings(&rows),
            positive,
        }))
    }
}

impl Witness {
    /// Re-derives the violation from `h` without trusting the stored values.
    pub fn recheck(&self, h: &SparsePoly) -> bool {
        match self {
            Witness::Exchange { alpha, beta, i } => {
                let s = h.support();
                s.contains(alpha)
                    && s.contains(beta)
                    && alpha[*i] > beta[*i]
                    && !(0..alpha.len()).any(|j| {
                        let mut g = alpha.clone();
                        g[*i] -= 1;
                        g[j] += 1;
                        alpha[j] < beta[j] && s.contains(&g)
                    })
            }
            Witness::NegativeCoefficient { exponent, .. } => h.coeff(exponent).is_negative(),
            Witness::NegativeExponent { exponent } => h.coeff_ref(exponent).is_some() && exponent.iter().any(|&x| x < 0),
            Witness::NonHomogeneous { first, second } => {
                h.coeff_ref(first).is_some()
                    && h.coeff_ref(second).is_some()
                    && first.iter().sum::<i64>() != second.iter().sum::<i64>()
            }
            Witness::Eigenvalue { derivative, .. } => {
                let Ok(q) = h.derivative(derivative) else { return false };
                let m = h.num_vars();
                let mut rows = vec![vec![Rational::zero(); m]; m];
                for i in 0..m {
                    for j in 0..m {
                        let mut b = vec![0i64; m];
                        b[i] += 1;
                        b[j] += 1;
                        rows[i][j] = q.derivative(&b).map(|p| p.coeff(&vec![0; m])).unwrap_or_default();
                    }
                }
                SymMatrix::new(rows).map(|s| s.positive_eigenvalue_count() > 1).unwrap_or(false)
            }
            Witness::ThreeTerm { at, direction, .. } => {
                let f: Vec<i64> = at.iter().zip(direction).map(|(a, b)| a + b).collect();
                let b: Vec<i64> = at.iter().zip(direction).map(|(a, b)| a - b).collect();
                let c = h.coeff(at);
                &c * &c < h.coeff(&f) * h.coeff(&b)
            }
            Witness::ContinuousHessian { point, .. } => {
                let Ok(pt) = point.iter().map(|s| crate::poly::parse_rational(s)).collect::<Result<Vec<_>>>() else {
                    return false;
                };
                continuous_lc_spot_check(h, &pt).map(|r| !r.verdict).unwrap_or(false)
            }
            Witness::NegativeValue { point, .. } => {
                let Ok(pt) = point.iter().map(|s| crate::poly::parse_rational(s)).collect::<Result<Vec<_>>>() else {
                    return false;
                };
                h.evaluate(&pt).map(|v| v.is_negative()).unwrap_or(false)
            }
            Witness::Mismatch { .. } => false,
        }
    }
}

/// Convenience: `c² ≥ a·b` for exact rationals.
pub fn three_term_ok(center: &Rational, forward: &Rational, backward: &Rational) -> bool {
    center * center >= forward * backward
}

/// Lines `μ + Z(e_i − e_j)` meet an M-convex set in an interval; returns the
/// first gap found, used as a sanity property.
pub fn line_gap(support: &BTreeSet<Vec<i64>>) -> Option<(Vec<i64>, usize, usize)> {
    let set: HashSet<&Vec<i64>> = support.iter().collect();
    let m = support.first()?.len();
    for mu in support {
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                // Walk forward from μ until leaving, then look for a return.
                let mut g = mu.clone();
                let mut left = false;
                for _ in 0..64 {
                    g[i] += 1;
                    g[j] -= 1;
                    if g[j] < 0 {
                        break;
                    }
                    let inside = set.contains(&g);
                    if !inside {
                        left = true;
                    } else if left {
                        return Some((mu.clone(), i, j));
                    }
                }
            }
        }
    }
    None
}
