//! Exact inertia and rank for small rational matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Rational;

/// A dense symmetric matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    a: Vec<Rational>,
}

/// Counts of positive, negative and zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl SymMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NonSquare);
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NonSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SymMatrix { n, a: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.a[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.a.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    /// Integer matrix `L·A` with `L` the lcm of all denominators; same inertia.
    fn scaled_integer(&self) -> Vec<BigInt> {
        let l = self.a.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        self.a.iter().map(|x| x.numer() * (&l / x.denom())).collect()
    }

    /// Coefficients `[1, c_1, ..., c_n]` of `det(tI − A)`, by Berkowitz's
    /// division-free algorithm on the integer-scaled matrix. The scale factor
    /// is positive, so sign patterns are those of `A` up to `c_k·L^k`.
    pub fn scaled_char_poly(&self) -> Vec<BigInt> {
        let m = self.scaled_integer();
        if let Some(small) = m.iter().map(|x| x.to_i128()).collect::<Option<Vec<i128>>>() {
            if let Some(c) = berkowitz_i128(self.n, &small) {
                return c.into_iter().map(BigInt::from).collect();
            }
        }
        berkowitz_big(self.n, &m)
    }

    /// Positive-eigenvalue count via Descartes' rule on the characteristic
    /// polynomial; exact because a symmetric matrix has a real spectrum.
    pub fn positive_eigenvalue_count(&self) -> usize {
        let c = self.scaled_char_poly();
        // det(tI − A) = Σ c_k t^{n−k}; positive roots = sign changes of c.
        let mut changes = 0;
        let mut last: Option<bool> = None;
        for x in &c {
            if x.is_zero() {
                continue;
            }
            let pos = x.is_positive();
            if let Some(l) = last {
                if l != pos {
                    changes += 1;
                }
            }
            last = Some(pos);
        }
        changes
    }

    /// Inertia by congruence diagonalization `A = P D Pᵀ` (Sylvester's law).
    pub fn inertia_by_congruence(&self) -> Inertia {
        let n = self.n;
        let mut m: Vec<Vec<Rational>> = self.rows();
        let mut active: Vec<usize> = (0..n).collect();
        let mut inertia = Inertia { positive: 0, negative: 0, zero: 0 };
        while !active.is_empty() {
            let pivot = active.iter().copied().find(|&i| !m[i][i].is_zero());
            let p = match pivot {
                Some(p) => p,
                None => {
                    let pair = active
                        .iter()
                        .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                        .find(|&(i, j)| i != j && !m[i][j].is_zero());
                    match pair {
                        None => {
                            inertia.zero += active.len();
                            break;
                        }
                        Some((i, j)) => {
                            // Row/column j added to i gives diagonal 2·a_ij ≠ 0.
                            for k in 0..n {
                                let v = m[j][k].clone();
                                m[i][k] += v;
                            }
                            for k in 0..n {
                                let v = m[k][j].clone();
                                m[k][i] += v;
                            }
                            i
                        }
                    }
                }
            };
            let d = m[p][p].clone();
            if d.is_positive() {
                inertia.positive += 1;
            } else {
                inertia.negative += 1;
            }
            active.retain(|&x| x != p);
            for &i in &active {
                if m[i][p].is_zero() {
                    continue;
                }
                let f = &m[i][p] / &d;
                for &j in &active {
                    let v = &f * &m[p][j];
                    m[i][j] -= v;
                }
            }
            for &i in &active {
                m[i][p] = Rational::zero();
                m[p][i] = Rational::zero();
            }
        }
        inertia
    }
}

fn berkowitz_i128(n: usize, a: &[i128]) -> Option<Vec<i128>> {
    let at = |i: usize, j: usize| a[i * n + j];
    // c holds the char poly of the leading k×k block, highest degree first.
    let mut c: Vec<i128> = vec![1];
    for k in 0..n {
        // Toeplitz column for the (k+1)-th step: [1, -a_kk, -R C, -R A C, ...].
        let r: Vec<i128> = (0..k).map(|j| at(k, j)).collect();
        let col: Vec<i128> = (0..k).map(|i| at(i, k)).collect();
        let mut t = vec![1i128, at(k, k).checked_neg()?];
        let mut v = col.clone();
        for _ in 0..k {
            let rv = r.iter().zip(&v).try_fold(0i128, |s, (x, y)| s.checked_add(x.checked_mul(*y)?))?;
            t.push(rv.checked_neg()?);
            let mut nv = vec![0i128; k];
            for (i, slot) in nv.iter_mut().enumerate() {
                *slot = (0..k).try_fold(0i128, |s, j| s.checked_add(at(i, j).checked_mul(v[j])?))?;
            }
            v = nv;
        }
        let mut next = vec![0i128; k + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut s = 0i128;
            for j in 0..=i.min(k) {
                if i - j < t.len() {
                    s = s.checked_add(t[i - j].checked_mul(c[j])?)?;
                }
            }
            *slot = s;
        }
        c = next;
    }
    Some(c)
}

fn berkowitz_big(n: usize, a: &[BigInt]) -> Vec<BigInt> {
    let at = |i: usize, j: usize| &a[i * n + j];
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for k in 0..n {
        let mut t = vec![BigInt::one(), -at(k, k).clone()];
        let mut v: Vec<BigInt> = (0..k).map(|i| at(i, k).clone()).collect();
        for _ in 0..k {
            let rv: BigInt = (0..k).map(|j| at(k, j) * &v[j]).sum();
            t.push(-rv);
            v = (0..k).map(|i| (0..k).map(|j| at(i, j) * &v[j]).sum()).collect();
        }
        c = (0..k + 2).map(|i| (0..=i.min(k)).filter(|&j| i - j < t.len()).map(|j| &t[i - j] * &c[j]).sum()).collect();
    }
    c
}

pub fn positive_eigenvalue_count(q: &[Vec<Rational>]) -> Result<usize> {
    Ok(SymMatrix::new(q.to_vec())?.positive_eigenvalue_count())
}

/// Rank of an arbitrary rational matrix by fraction-based Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = &m[i][col] / &m[r][col];
                for j in col..ncols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}
