//! Kostant partition functions: restricted (graph) and generic root lists.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Rational, SparsePoly};

pub type Count = u128;

fn add(a: Count, b: Count) -> Result<Count> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn mul(a: Count, b: Count) -> Result<Count> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// `C(n, k)` with overflow detection.
pub fn binomial(n: u64, k: u64) -> Result<Count> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: Count = 1;
    for i in 0..k {
        // acc·(n−i)/(i+1) stays integral at every step.
        acc = mul(acc, (n - i) as Count)? / (i + 1) as Count;
    }
    Ok(acc)
}

/// Weight of sending `f` units along `m` parallel copies of an edge.
fn parallel_weight(f: i64, m: u32) -> Result<Count> {
    binomial((f + m as i64 - 1) as u64, (m - 1) as u64)
}

/// Loopless directed multigraph on vertices `0..n_plus_1`, edges `i → j`
/// only for `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectedMultigraph {
    n_plus_1: usize,
    mult: BTreeMap<(usize, usize), u32>,
}

impl DirectedMultigraph {
    pub fn empty(n_plus_1: usize) -> Self {
        DirectedMultigraph { n_plus_1, mult: BTreeMap::new() }
    }

    pub fn complete(n_plus_1: usize) -> Self {
        let mut g = Self::empty(n_plus_1);
        for i in 0..n_plus_1 {
            for j in i + 1..n_plus_1 {
                g.mult.insert((i, j), 1);
            }
        }
        g
    }

    /// `0 → 1 → ... → n`.
    pub fn path(n_plus_1: usize) -> Self {
        let mut g = Self::empty(n_plus_1);
        for i in 0..n_plus_1.saturating_sub(1) {
            g.mult.insert((i, i + 1), 1);
        }
        g
    }

    /// Builds from 0-based `(i, j, m)` triples; repeated pairs accumulate.
    pub fn from_edges(n_plus_1: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let mut g = Self::empty(n_plus_1);
        for &(i, j, m) in edges {
            g.add_edge(i, j, m)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, i: usize, j: usize, m: u32) -> Result<()> {
        if i >= j {
            return Err(Error::InvalidNode(format!("edge ({}, {}) must satisfy i < j", i + 1, j + 1)));
        }
        if j >= self.n_plus_1 {
            return Err(Error::InvalidNode(format!("edge ({}, {}) outside [{}]", i + 1, j + 1, self.n_plus_1)));
        }
        if m > 0 {
            *self.mult.entry((i, j)).or_insert(0) += m;
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.n_plus_1
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.mult.iter().map(|(&e, &m)| (e, m))
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        self.mult.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.mult.values().map(|&m| m as usize).sum()
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.mult.range((i, 0)..(i + 1, 0)).map(|(_, &m)| m as usize).sum()
    }

    fn out_lists(&self) -> Vec<Vec<(usize, u32)>> {
        let mut out = vec![Vec::new(); self.n_plus_1];
        for (&(i, j), &m) in &self.mult {
            out[i].push((j, m));
        }
        out
    }

    /// One root `e_i − e_j` per parallel copy.
    pub fn to_root_list(&self) -> PosRootList {
        let mut roots = Vec::new();
        for (&(i, j), &m) in &self.mult {
            let mut r = vec![0i64; self.n_plus_1];
            r[i] = 1;
            r[j] = -1;
            for _ in 0..m {
                roots.push(r.clone());
            }
        }
        PosRootList::with_grading(roots, (0..self.n_plus_1).rev().map(|k| k as i64).collect())
            .expect("type-A grading is positive on every edge")
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n_plus_1: self.n_plus_1,
            edges: self.mult.iter().map(|(&(i, j), &m)| [i as i64 + 1, j as i64 + 1, m as i64]).collect(),
        }
    }

    /// Reads the 1-based JSON form.
    pub fn from_json(j: &GraphJson) -> Result<Self> {
        let mut g = Self::empty(j.n_plus_1);
        for (k, e) in j.edges.iter().enumerate() {
            let [i, jj, m] = *e;
            if i < 1 || jj < 1 || m < 0 || m > u32::MAX as i64 {
                return Err(Error::Parse(format!("edge #{}: invalid triple {:?}", k + 1, e)));
            }
            g.add_edge(i as usize - 1, jj as usize - 1, m as u32)
                .map_err(|err| Error::Parse(format!("edge #{}: {err}", k + 1)))?;
        }
        Ok(g)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub n_plus_1: usize,
    pub edges: Vec<[i64; 3]>,
}

/// `v` is reachable by forward flows only if it sums to zero and every
/// prefix sum is nonnegative.
pub fn prefix_dominates(v: &[i64]) -> bool {
    let mut s = 0i64;
    for &x in v {
        s += x;
        if s < 0 {
            return false;
        }
    }
    s == 0
}

/// Memoized restricted KPF `K_G` by eliminating vertices in order: vertex `k`
/// pushes its whole residual along its out-edges.
#[derive(Debug, Clone)]
pub struct KpfCounter {
    graph: DirectedMultigraph,
    out: Vec<Vec<(usize, u32)>>,
    memo: HashMap<Vec<i64>, Count>,
}

impl KpfCounter {
    pub fn new(graph: DirectedMultigraph) -> Self {
        let out = graph.out_lists();
        KpfCounter { graph, out, memo: HashMap::new() }
    }

    pub fn graph(&self) -> &DirectedMultigraph {
        &self.graph
    }

    pub fn count(&mut self, v: &[i64]) -> Result<Count> {
        let n = self.graph.n_plus_1;
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
        if n == 0 {
            return Ok(1);
        }
        self.rec(v)
    }

    fn rec(&mut self, residual: &[i64]) -> Result<Count> {
        if !prefix_dominates(residual) {
            return Ok(0);
        }
        if residual.len() == 1 {
            return Ok(1);
        }
        if let Some(&c) = self.memo.get(residual) {
            return Ok(c);
        }
        let k = self.graph.n_plus_1 - residual.len();
        let outs = self.out[k].clone();
        let r = residual[0];
        let mut rest = residual[1..].to_vec();
        let total = if r == 0 {
            self.rec(&rest)?
        } else if outs.is_empty() {
            0
        } else {
            let mut total = 0;
            self.distribute(k, &outs, 0, r, &mut rest, 1, &mut total)?;
            total
        };
        self.memo.insert(residual.to_vec(), total);
        Ok(total)
    }

    #[allow(clippy::too_many_arguments)]
    fn distribute(
        &mut self,
        k: usize,
        outs: &[(usize, u32)],
        idx: usize,
        remaining: i64,
        rest: &mut Vec<i64>,
        weight: Count,
        total: &mut Count,
    ) -> Result<()> {
        let (j, m) = outs[idx];
        let slot = j - k - 1;
        if idx + 1 == outs.len() {
            let w = mul(weight, parallel_weight(remaining, m)?)?;
            rest[slot] += remaining;
            let sub = self.rec(rest);
            rest[slot] -= remaining;
            *total = add(*total, mul(w, sub?)?)?;
            return Ok(());
        }
        for f in 0..=remaining {
            let w = mul(weight, parallel_weight(f, m)?)?;
            rest[slot] += f;
            let res = self.distribute(k, outs, idx + 1, remaining - f, rest, w, total);
            rest[slot] -= f;
            res?;
        }
        Ok(())
    }
}

/// `K_G(v)` for a directed multigraph.
pub fn kpf_count_graph(g: &DirectedMultigraph, v: &[i64]) -> Result<Count> {
    KpfCounter::new(g.clone()).count(v)
}

/// A finite list of nonzero vectors, with a grading functional positive on
/// each of them so that every partition is bounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosRootList {
    roots: Vec<Vec<i64>>,
    grading: Vec<i64>,
    degrees: Vec<i64>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl PosRootList {
    /// Tries the all-ones grading, then `(d−1, ..., 1, 0)` (positive on type-A
    /// roots `e_i − e_j`, `i < j`).
    pub fn new(roots: Vec<Vec<i64>>) -> Result<Self> {
        let dim = roots.first().map_or(0, |r| r.len());
        let ones = vec![1i64; dim];
        let desc: Vec<i64> = (0..dim).rev().map(|k| k as i64).collect();
        for g in [ones, desc] {
            if let Ok(list) = Self::with_grading(roots.clone(), g) {
                return Ok(list);
            }
        }
        Err(Error::Unsupported("no grading found that is positive on every root; supply one".into()))
    }

    pub fn with_grading(roots: Vec<Vec<i64>>, grading: Vec<i64>) -> Result<Self> {
        let dim = grading.len();
        let mut degrees = Vec::with_capacity(roots.len());
        for r in &roots {
            if r.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: r.len() });
            }
            if r.iter().all(|&x| x == 0) {
                return Err(Error::Invalid("zero root".into()));
            }
            let d = dot(r, &grading);
            if d <= 0 {
                return Err(Error::Invalid(format!("grading is not positive on root {r:?}")));
            }
            degrees.push(d);
        }
        Ok(PosRootList { roots, grading, degrees })
    }

    /// The six positive roots of G2 in the simple-root basis `(α, β)`, `α` short.
    pub fn g2() -> Self {
        let roots = vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1], vec![3, 2]];
        Self::with_grading(roots, vec![1, 1]).expect("G2 roots are nonnegative")
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn dim(&self) -> usize {
        self.grading.len()
    }

    fn check(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        Ok(())
    }
}

/// Generic partition count by DP over the root list; root `k` is used at most
/// `⌊g(v)/g(β_k)⌋` times for the grading `g`.
pub fn kpf_count(roots: &PosRootList, v: &[i64]) -> Result<Count> {
    roots.check(v)?;
    let mut memo = HashMap::new();
    count_rec(roots, 0, v.to_vec(), &mut memo)
}

fn count_rec(roots: &PosRootList, idx: usize, residual: Vec<i64>, memo: &mut HashMap<(usize, Vec<i64>), Count>) -> Result<Count> {
    let g = dot(&residual, &roots.grading);
    if g < 0 {
        return Ok(0);
    }
    if idx == roots.roots.len() || g == 0 {
        return Ok(residual.iter().all(|&x| x == 0) as Count);
    }
    let key = (idx, residual);
    if let Some(&c) = memo.get(&key) {
        return Ok(c);
    }
    let (idx, residual) = key;
    let root = &roots.roots[idx];
    let bound = g / roots.degrees[idx];
    let mut total = 0;
    let mut r = residual.clone();
    for u in 0..=bound {
        if u > 0 {
            for (x, y) in r.iter_mut().zip(root) {
                *x -= y;
            }
        }
        total = add(total, count_rec(roots, idx + 1, r.clone(), memo)?)?;
    }
    memo.insert((idx, residual), total);
    Ok(total)
}

/// `kpf_count` over the G2 positive roots at `aα + bβ`.
pub fn kpf_g2(a: i64, b: i64) -> Result<Count> {
    if a < 0 || b < 0 {
        return Err(Error::Invalid("G2 target must be nonnegative".into()));
    }
    kpf_count(&PosRootList::g2(), &[a, b])
}

/// All usage vectors `n` with `Σ n_k β_k = v`, lexicographically ordered.
/// Errors when more than `limit` solutions exist.
pub fn kpf_enumerate(roots: &PosRootList, v: &[i64], limit: usize) -> Result<Vec<Vec<u64>>> {
    roots.check(v)?;
    let mut out = Vec::new();
    let mut cur = vec![0u64; roots.roots.len()];
    let mut memo = HashMap::new();
    enum_rec(roots, 0, v.to_vec(), &mut cur, &mut out, limit, &mut memo)?;
    Ok(out)
}

/// Only descends into branches the counting DP says are nonempty, so the
/// work is proportional to the output.
fn enum_rec(
    roots: &PosRootList,
    idx: usize,
    residual: Vec<i64>,
    cur: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
    limit: usize,
    memo: &mut HashMap<(usize, Vec<i64>), Count>,
) -> Result<()> {
    if count_rec(roots, idx, residual.clone(), memo)? == 0 {
        return Ok(());
    }
    if idx == roots.roots.len() || residual.iter().all(|&x| x == 0) {
        if out.len() >= limit {
            return Err(Error::BudgetExceeded { what: "partition enumeration", limit });
        }
        out.push(cur.clone());
        return Ok(());
    }
    let root = &roots.roots[idx];
    let bound = dot(&residual, &roots.grading) / roots.degrees[idx];
    for u in 0..=bound {
        cur[idx] = u as u64;
        let r: Vec<i64> = residual.iter().zip(root).map(|(x, y)| x - u * y).collect();
        enum_rec(roots, idx + 1, r, cur, out, limit, memo)?;
    }
    cur[idx] = 0;
    Ok(())
}

/// Default cap on intermediate states in [`shifted_char_polynomial`].
pub const DEFAULT_TERM_CAP: usize = 2_000_000;

/// `Σ_κ K_G(κ)·x^{base−κ}` over `κ` in the edge cone with `base − κ ≥ 0`.
///
/// Vertices are processed in order; vertex `k` forwards at most its current
/// exponent, so every state is final once its vertex has been handled.
pub fn shifted_char_polynomial(g: &DirectedMultigraph, base: &[i64]) -> Result<SparsePoly> {
    shifted_char_polynomial_capped(g, base, DEFAULT_TERM_CAP)
}

pub fn shifted_char_polynomial_capped(g: &DirectedMultigraph, base: &[i64], cap: usize) -> Result<SparsePoly> {
    let n = g.num_vertices();
    if base.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: base.len() });
    }
    let out = g.out_lists();
    let mut states: HashMap<Vec<i64>, Count> = HashMap::new();
    states.insert(base.to_vec(), 1);
    for (k, outs) in out.iter().enumerate() {
        let mut next: HashMap<Vec<i64>, Count> = HashMap::new();
        for (e, c) in states {
            let avail = e[k];
            if avail < 0 {
                continue;
            }
            if outs.is_empty() {
                let slot = next.entry(e).or_insert(0);
                *slot = add(*slot, c)?;
                continue;
            }
            for total in 0..=avail {
                spread(outs, 0, total, &mut e.clone(), k, c, &mut next)?;
            }
            if next.len() > cap {
                return Err(Error::BudgetExceeded { what: "character polynomial terms", limit: cap });
            }
        }
        states = next;
    }
    let terms =
        states.into_iter().filter(|(e, _)| e.iter().all(|&x| x >= 0)).map(|(e, c)| (e, Rational::from_integer(BigInt::from(c))));
    SparsePoly::from_terms(n, terms)
}

fn spread(
    outs: &[(usize, u32)],
    idx: usize,
    remaining: i64,
    e: &mut Vec<i64>,
    k: usize,
    weight: Count,
    next: &mut HashMap<Vec<i64>, Count>,
) -> Result<()> {
    let (j, m) = outs[idx];
    let range = if idx + 1 == outs.len() { remaining..=remaining } else { 0..=remaining };
    for f in range {
        let w = mul(weight, parallel_weight(f, m)?)?;
        e[k] -= f;
        e[j] += f;
        let r = if idx + 1 == outs.len() {
            let slot = next.entry(e.clone()).or_insert(0);
            add(*slot, w).map(|v| *slot = v)
        } else {
            spread(outs, idx + 1, remaining - f, e, k, w, next)
        };
        e[k] += f;
        e[j] -= f;
        r?;
    }
    Ok(())
}
