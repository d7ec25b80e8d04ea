//! Flow polytopes `F_G(a)`: lattice points, Lidskii volumes, mixed volumes
//! and the Alexandrov–Fenchel inequalities between them.
//!
//! Volumes are normalized: the Lidskii polynomial as stated, whose value at
//! an integral `a` equals `(k−n)!` times the Euclidean volume in the flow
//! coordinates.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cert::{three_term_ok, CertificationReport, Witness};
use crate::error::{Error, Result};
use crate::kpf::{kpf_count_graph, Count, DirectedMultigraph, KpfCounter};
use crate::poly::{factorial, Rational, SparsePoly};

/// A graph on `[n+1]` with netflow `a_1, ..., a_n`; vertex `n+1` absorbs `−Σ a_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowInstance {
    pub graph: DirectedMultigraph,
    pub netflow: Vec<Rational>,
}

impl FlowInstance {
    pub fn new(graph: DirectedMultigraph, netflow: Vec<Rational>) -> Result<Self> {
        let n = graph.num_vertices().saturating_sub(1);
        if netflow.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: netflow.len() });
        }
        Ok(FlowInstance { graph, netflow })
    }

    pub fn from_ints(graph: DirectedMultigraph, netflow: &[i64]) -> Result<Self> {
        Self::new(graph, netflow.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    /// `(a_1, ..., a_n, −Σ a_i)` when every `a_i` is an integer.
    pub fn integral_netflow(&self) -> Result<Vec<i64>> {
        let mut v = self
            .netflow
            .iter()
            .map(|x| {
                if x.is_integer() {
                    x.to_integer().to_i64().ok_or(Error::Overflow)
                } else {
                    Err(Error::NonIntegral(format!("netflow entry {x} is not an integer")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let s: i64 = v.iter().sum();
        v.push(-s);
        Ok(v)
    }
}

/// Number of integer `a`-flows, `K_G(a, −Σa)`.
pub fn lattice_point_count(inst: &FlowInstance) -> Result<Count> {
    kpf_count_graph(&inst.graph, &inst.integral_netflow()?)
}

/// `o^G_i = outdeg(i) − 1` for `i ∈ [n]`.
pub fn out_degrees_shifted(g: &DirectedMultigraph) -> Result<Vec<i64>> {
    let n = g.num_vertices().saturating_sub(1);
    (0..n)
        .map(|i| match g.out_degree(i) {
            0 => Err(Error::Precondition(format!("vertex {} has no outgoing edge", i + 1))),
            d => Ok(d as i64 - 1),
        })
        .collect()
}

fn weak_compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    fn rec(left: i64, parts: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in (0..=left).rev() {
            cur.push(x);
            rec(left - x, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

/// Degree `k − n` of the volume polynomial.
fn volume_degree(g: &DirectedMultigraph) -> Result<i64> {
    let n = g.num_vertices().saturating_sub(1);
    let d = g.edge_count() as i64 - n as i64;
    if d < 0 {
        return Err(Error::Precondition("fewer edges than non-sink vertices".into()));
    }
    Ok(d)
}

/// `Vol F_G(a) = Σ_r (k−n)! K_G(r − o^G, 0) a^r / r!` over weak compositions
/// `r` of `k − n`, as a polynomial in `a_1, ..., a_n`.
pub fn lidskii_volume(g: &DirectedMultigraph) -> Result<SparsePoly> {
    let o = out_degrees_shifted(g)?;
    let d = volume_degree(g)?;
    let n = o.len();
    let top = factorial(d as u64);
    let mut counter = KpfCounter::new(g.clone());
    let mut terms = Vec::new();
    for r in weak_compositions(d, n) {
        let mut v: Vec<i64> = r.iter().zip(&o).map(|(a, b)| a - b).collect();
        v.push(0);
        let k = counter.count(&v)?;
        if k == 0 {
            continue;
        }
        let denom: BigInt = r.iter().map(|&x| factorial(x as u64)).product();
        terms.push((r, Rational::new(BigInt::from(k) * &top, denom)));
    }
    SparsePoly::from_terms(n, terms)
}

/// `V(F_G(ε_1)^{r_1}, ..., F_G(ε_n)^{r_n}) = K_G(r − o^G, 0)`.
pub fn mixed_volume(g: &DirectedMultigraph, r: &[i64]) -> Result<Count> {
    let o = out_degrees_shifted(g)?;
    if r.len() != o.len() {
        return Err(Error::DimensionMismatch { expected: o.len(), got: r.len() });
    }
    if r.iter().any(|&x| x < 0) {
        return Err(Error::Precondition("composition entries must be nonnegative".into()));
    }
    let d = volume_degree(g)?;
    if r.iter().sum::<i64>() != d {
        return Err(Error::Precondition(format!("composition must sum to k − n = {d}")));
    }
    let mut v: Vec<i64> = r.iter().zip(&o).map(|(a, b)| a - b).collect();
    v.push(0);
    kpf_count_graph(g, &v)
}

/// Normalized volume from lattice-point counts of `t·F_G(a)`, `t = 0..=dilations`.
/// The `(k−n)`-th forward difference at 0 is returned; every higher
/// difference must vanish.
pub fn ehrhart_volume_oracle(inst: &FlowInstance, dilations: usize) -> Result<Rational> {
    let a = inst.integral_netflow()?;
    if a.iter().take(a.len() - 1).any(|&x| x < 0) {
        return Err(Error::Precondition("netflow must be nonnegative".into()));
    }
    let d = volume_degree(&inst.graph)? as usize;
    if dilations < d + 2 {
        return Err(Error::Precondition(format!("need at least {} dilations", d + 2)));
    }
    let mut counter = KpfCounter::new(inst.graph.clone());
    let mut row: Vec<BigInt> = (0..=dilations as i64)
        .map(|t| {
            let v: Vec<i64> = a.iter().map(|x| x * t).collect();
            counter.count(&v).map(BigInt::from)
        })
        .collect::<Result<Vec<_>>>()?;
    for _ in 0..d {
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let lead = row[0].clone();
    if row.iter().any(|x| *x != lead) {
        return Err(Error::Internal(format!("lattice counts are not a polynomial of degree {d}")));
    }
    Ok(Rational::from_integer(lead))
}

/// Alexandrov–Fenchel at `r` for the pair `(i, j)` (0-based):
/// `V(r)² ≥ V(r + e_i − e_j)·V(r − e_i + e_j)`.
pub fn af_check(g: &DirectedMultigraph, r: &[i64], i: usize, j: usize) -> Result<CertificationReport> {
    if i == j || i >= r.len() || j >= r.len() {
        return Err(Error::Invalid(format!("indices ({i}, {j}) must be distinct and below {}", r.len())));
    }
    if r[i] < 1 || r[j] < 1 {
        return Err(Error::Precondition("r_i and r_j must be at least 1".into()));
    }
    let mut fw = r.to_vec();
    fw[i] += 1;
    fw[j] -= 1;
    let mut bw = r.to_vec();
    bw[i] -= 1;
    bw[j] += 1;
    let c = Rational::from_integer(mixed_volume(g, r)?.into());
    let f = Rational::from_integer(mixed_volume(g, &fw)?.into());
    let b = Rational::from_integer(mixed_volume(g, &bw)?.into());
    let note = format!("V(r) = {c}, V(r+e_i−e_j) = {f}, V(r−e_i+e_j) = {b}");
    if three_term_ok(&c, &f, &b) {
        return Ok(CertificationReport::pass().with_note(note));
    }
    let mut direction = vec![0i64; r.len()];
    direction[i] = 1;
    direction[j] = -1;
    Ok(CertificationReport::fail(Witness::ThreeTerm {
        at: r.to_vec(),
        direction,
        center: c.to_string(),
        forward: f.to_string(),
        backward: b.to_string(),
    })
    .with_note(note))
}

/// `G` extended to `[B+1]` with every new vertex joined to all smaller ones,
/// together with `ṽ` (v padded by zeros) and `r_b = ṽ_b + o^H_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Padding {
    pub graph: DirectedMultigraph,
    pub vtilde: Vec<i64>,
    pub r: Vec<i64>,
}

/// Padding with the smallest `B > Σ|v_i| + n + 1`.
pub fn pad_for_af(g: &DirectedMultigraph, v: &[i64]) -> Result<Padding> {
    let n1 = g.num_vertices();
    if v.len() != n1 {
        return Err(Error::DimensionMismatch { expected: n1, got: v.len() });
    }
    if v.iter().sum::<i64>() != 0 {
        return Err(Error::Precondition("v must sum to zero".into()));
    }
    let b = v.iter().map(|x| x.unsigned_abs() as usize).sum::<usize>() + n1 + 1;
    let mut h = DirectedMultigraph::empty(b + 1);
    for ((i, j), m) in g.edges() {
        h.add_edge(i, j, m)?;
    }
    for new in n1..=b {
        for i in 0..new {
            h.add_edge(i, new, 1)?;
        }
    }
    let mut vtilde = v.to_vec();
    vtilde.resize(b + 1, 0);
    let o = out_degrees_shifted(&h)?;
    let r = o.iter().zip(&vtilde).map(|(a, b)| a + b).collect();
    Ok(Padding { graph: h, vtilde, r })
}

/// The three-term inequality for `K_G` at `v` along `ε_i − ε_j`, decided
/// through Alexandrov–Fenchel on the padded graph.
pub fn kpf_dlc_via_af(g: &DirectedMultigraph, v: &[i64], i: usize, j: usize) -> Result<CertificationReport> {
    let p = pad_for_af(g, v)?;
    af_check(&p.graph, &p.r, i, j)
}

/// `Vol F_G(a)` at a nonnegative point.
pub fn volume_at(g: &DirectedMultigraph, a: &[Rational]) -> Result<Rational> {
    if a.iter().any(|x| x.is_negative()) {
        return Err(Error::Precondition("the volume formula needs a ≥ 0".into()));
    }
    let p = lidskii_volume(g)?;
    if p.is_zero() {
        return Ok(Rational::zero());
    }
    p.evaluate(a)
}
