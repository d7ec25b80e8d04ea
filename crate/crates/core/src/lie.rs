//! Roots, weights and simplicity criteria for `⊕_t sl_{n_t+1}`.
//!
//! Nodes and roots are 0-based in memory; the JSON forms are 1-based.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kpf::DirectedMultigraph;
use crate::matrix::rank;
use crate::poly::{fmt_rational, parse_rational, rat, Rational};

/// Block sizes `(n_1, ..., n_T)` of `⊕_t sl_{n_t+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemisimpleSpec {
    block_sizes: Vec<usize>,
    offsets: Vec<usize>,
}

/// Simple root `α_{index}` of block `block`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node {
    pub block: usize,
    pub index: usize,
}

impl Node {
    pub fn new(block: usize, index: usize) -> Self {
        Node { block, index }
    }
}

pub type NodeSet = BTreeSet<Node>;

/// `ε_i − ε_j` in block `block`; positive iff `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    pub block: usize,
    pub i: usize,
    pub j: usize,
}

impl SemisimpleSpec {
    pub fn new(block_sizes: Vec<usize>) -> Result<Self> {
        if block_sizes.is_empty() {
            return Err(Error::Invalid("at least one block is required".into()));
        }
        if block_sizes.contains(&0) {
            return Err(Error::Invalid("block sizes must be positive".into()));
        }
        let offsets = block_sizes
            .iter()
            .scan(0usize, |acc, &n| {
                let o = *acc;
                *acc += n;
                Some(o)
            })
            .collect();
        Ok(SemisimpleSpec { block_sizes, offsets })
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn num_blocks(&self) -> usize {
        self.block_sizes.len()
    }

    /// Total number of nodes.
    pub fn rank(&self) -> usize {
        self.block_sizes.iter().sum()
    }

    pub fn node_offset(&self, block: usize) -> usize {
        self.offsets[block]
    }

    pub fn nodes(&self) -> Vec<Node> {
        self.block_sizes.iter().enumerate().flat_map(|(t, &n)| (0..n).map(move |i| Node::new(t, i))).collect()
    }

    pub fn check_node(&self, node: Node) -> Result<()> {
        match self.block_sizes.get(node.block) {
            Some(&n) if node.index < n => Ok(()),
            _ => Err(Error::InvalidNode(format!("node ({}, {})", node.block + 1, node.index + 1))),
        }
    }

    /// Position of `node` among all nodes, blocks concatenated.
    pub fn global_index(&self, node: Node) -> usize {
        self.offsets[node.block] + node.index
    }

    pub fn node_at(&self, global: usize) -> Node {
        let t = self.offsets.iter().rposition(|&o| o <= global).expect("offsets start at 0");
        Node::new(t, global - self.offsets[t])
    }

    pub fn adjacent(&self, a: Node, b: Node) -> bool {
        a.block == b.block && a.index.abs_diff(b.index) == 1
    }

    pub fn is_independent(&self, set: &NodeSet) -> bool {
        set.iter().all(|&a| set.iter().all(|&b| !self.adjacent(a, b)))
    }

    /// Total number of ε-coordinates, `Σ (n_t + 1)`.
    pub fn num_eps_vars(&self) -> usize {
        self.rank() + self.num_blocks()
    }

    pub fn eps_offset(&self, block: usize) -> usize {
        self.offsets[block] + block
    }

    pub fn positive_roots(&self) -> Vec<Root> {
        let mut out = Vec::new();
        for (t, &n) in self.block_sizes.iter().enumerate() {
            for i in 0..=n {
                for j in i + 1..=n {
                    out.push(Root { block: t, i, j });
                }
            }
        }
        out
    }

    /// Positive roots followed by their negatives.
    pub fn roots(&self) -> Vec<Root> {
        let pos = self.positive_roots();
        let neg: Vec<Root> = pos.iter().map(|r| r.negate()).collect();
        pos.into_iter().chain(neg).collect()
    }
}

pub fn positive_roots(spec: &SemisimpleSpec) -> Vec<Root> {
    spec.positive_roots()
}

impl Root {
    pub fn new(block: usize, i: usize, j: usize) -> Self {
        Root { block, i, j }
    }

    pub fn is_positive(&self) -> bool {
        self.i < self.j
    }

    pub fn negate(&self) -> Root {
        Root { block: self.block, i: self.j, j: self.i }
    }

    /// Block-local node indices `min(i,j) .. max(i,j)` whose simple roots sum to `±self`.
    pub fn chain(&self) -> std::ops::Range<usize> {
        self.i.min(self.j)..self.i.max(self.j)
    }

    /// Coordinates in the simple-root basis over all nodes.
    pub fn simple_coords(&self, spec: &SemisimpleSpec) -> Vec<i64> {
        let mut v = vec![0i64; spec.rank()];
        let s = if self.is_positive() { 1 } else { -1 };
        for k in self.chain() {
            v[spec.node_offset(self.block) + k] = s;
        }
        v
    }

    /// `s_self(γ)`: transposes the ε-indices `i, j` inside this block.
    pub fn reflect(&self, gamma: &Root) -> Root {
        if gamma.block != self.block {
            return *gamma;
        }
        let swap = |x: usize| {
            if x == self.i {
                self.j
            } else if x == self.j {
                self.i
            } else {
                x
            }
        };
        Root { block: gamma.block, i: swap(gamma.i), j: swap(gamma.j) }
    }
}

/// Per-block rational values `λ(h_{t,i})`, optionally with ε-coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    h: Vec<Vec<Rational>>,
    eps: Option<Vec<Vec<Rational>>>,
}

fn eps_to_h(eps: &[Rational]) -> Vec<Rational> {
    eps.windows(2).map(|w| &w[0] - &w[1]).collect()
}

fn h_to_canonical_eps(h: &[Rational]) -> Vec<Rational> {
    let mut eps = vec![Rational::zero(); h.len() + 1];
    for i in (0..h.len()).rev() {
        eps[i] = &eps[i + 1] + &h[i];
    }
    eps
}

impl Weight {
    pub fn from_h(spec: &SemisimpleSpec, h: Vec<Vec<Rational>>) -> Result<Self> {
        if h.len() != spec.num_blocks() {
            return Err(Error::DimensionMismatch { expected: spec.num_blocks(), got: h.len() });
        }
        for (block, &n) in h.iter().zip(spec.block_sizes()) {
            if block.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: block.len() });
            }
        }
        Ok(Weight { h, eps: None })
    }

    pub fn from_h_ints(spec: &SemisimpleSpec, h: &[Vec<i64>]) -> Result<Self> {
        Self::from_h(spec, h.iter().map(|b| b.iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn from_eps(spec: &SemisimpleSpec, eps: Vec<Vec<Rational>>) -> Result<Self> {
        if eps.len() != spec.num_blocks() {
            return Err(Error::DimensionMismatch { expected: spec.num_blocks(), got: eps.len() });
        }
        for (block, &n) in eps.iter().zip(spec.block_sizes()) {
            if block.len() != n + 1 {
                return Err(Error::DimensionMismatch { expected: n + 1, got: block.len() });
            }
        }
        let h = eps.iter().map(|e| eps_to_h(e)).collect();
        Ok(Weight { h, eps: Some(eps) })
    }

    pub fn from_eps_ints(spec: &SemisimpleSpec, eps: &[Vec<i64>]) -> Result<Self> {
        Self::from_eps(spec, eps.iter().map(|b| b.iter().map(|&x| rat(x)).collect()).collect())
    }

    /// Both forms given; they must agree.
    pub fn from_h_and_eps(spec: &SemisimpleSpec, h: Vec<Vec<Rational>>, eps: Vec<Vec<Rational>>) -> Result<Self> {
        let w = Self::from_eps(spec, eps)?;
        let hw = Self::from_h(spec, h)?;
        if w.h != hw.h {
            return Err(Error::Invalid("epsilon coordinates disagree with h-values".into()));
        }
        Ok(w)
    }

    pub fn zero(spec: &SemisimpleSpec) -> Self {
        Weight { h: spec.block_sizes().iter().map(|&n| vec![Rational::zero(); n]).collect(), eps: None }
    }

    pub fn h(&self, node: Node) -> &Rational {
        &self.h[node.block][node.index]
    }

    pub fn h_block(&self, block: usize) -> &[Rational] {
        &self.h[block]
    }

    pub fn h_values(&self) -> &[Vec<Rational>] {
        &self.h
    }

    pub fn has_eps(&self) -> bool {
        self.eps.is_some()
    }

    /// Stored ε-coordinates, or the representative with last entry 0.
    pub fn eps_block(&self, block: usize) -> Vec<Rational> {
        match &self.eps {
            Some(e) => e[block].clone(),
            None => h_to_canonical_eps(&self.h[block]),
        }
    }

    /// Integer ε-coordinates when the weight is integral.
    pub fn integral_eps(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.h.len())
            .map(|t| {
                self.eps_block(t)
                    .iter()
                    .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
                    .collect::<Option<Vec<i64>>>()
            })
            .collect()
    }

    /// `λ(h_γ)` for any root `γ`.
    pub fn root_value(&self, root: &Root) -> Rational {
        let h = &self.h[root.block];
        let s: Rational = root.chain().map(|k| h[k].clone()).sum();
        if root.is_positive() {
            s
        } else {
            -s
        }
    }

    /// `(λ+ρ)(h_γ) = λ(h_γ) + (j − i)`.
    pub fn rho_shifted_value(&self, root: &Root) -> Rational {
        self.root_value(root) + rat(root.j as i64 - root.i as i64)
    }

    /// `λ − Σ k_i α_i` with `k` indexed by global node.
    pub fn sub_depth(&self, spec: &SemisimpleSpec, k: &[i64]) -> Weight {
        let mut h = self.h.clone();
        let mut eps = self.eps.clone();
        for (t, &n) in spec.block_sizes().iter().enumerate() {
            let off = spec.node_offset(t);
            for i in 0..n {
                let ki = k[off + i];
                if ki == 0 {
                    continue;
                }
                h[t][i] -= rat(2 * ki);
                if i > 0 {
                    h[t][i - 1] += rat(ki);
                }
                if i + 1 < n {
                    h[t][i + 1] += rat(ki);
                }
                if let Some(e) = eps.as_mut() {
                    e[t][i] -= rat(ki);
                    e[t][i + 1] += rat(ki);
                }
            }
        }
        Weight { h, eps }
    }

    /// `k` with `mu = self − Σ k_i α_i`, or `None` when `self − mu` is not in
    /// the root lattice.
    pub fn depth_of(&self, spec: &SemisimpleSpec, mu: &Weight) -> Option<Vec<i64>> {
        let mut k = Vec::with_capacity(spec.rank());
        for (t, &n) in spec.block_sizes().iter().enumerate() {
            let a = h_to_canonical_eps(&self.h[t]);
            let b = h_to_canonical_eps(&mu.h[t]);
            let d: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
            let c = d.iter().cloned().sum::<Rational>() / rat(n as i64 + 1);
            let mut prefix = Rational::zero();
            for (i, di) in d.iter().take(n).enumerate() {
                prefix += di;
                let ki = &prefix - &c * rat(i as i64 + 1);
                if !ki.is_integer() {
                    return None;
                }
                k.push(ki.to_integer().to_i64()?);
            }
        }
        Some(k)
    }

    /// `λ(h_i) ∈ N` for every `i ∈ J`.
    pub fn is_dominant_integral_on(&self, set: &NodeSet) -> bool {
        set.iter().all(|&n| is_nat(self.h(n)))
    }

    pub fn to_json(&self, spec: &SemisimpleSpec) -> WeightJson {
        WeightJson {
            blocks: spec
                .block_sizes()
                .iter()
                .zip(&self.h)
                .map(|(&n, h)| BlockJson { n, h: Some(h.iter().map(fmt_rational).collect()) })
                .collect(),
            eps: self.eps.as_ref().map(|e| e.iter().map(|b| b.iter().map(|x| RatJson::Str(fmt_rational(x))).collect()).collect()),
        }
    }

    /// Parses the JSON form and returns the algebra implied by its blocks.
    pub fn from_json(j: &WeightJson) -> Result<(SemisimpleSpec, Weight)> {
        let spec = SemisimpleSpec::new(j.blocks.iter().map(|b| b.n).collect())?;
        let eps = match &j.eps {
            None => None,
            Some(e) => Some(
                e.iter().map(|b| b.iter().map(RatJson::to_rational).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?,
            ),
        };
        let h = if j.blocks.iter().all(|b| b.h.is_some()) {
            Some(
                j.blocks
                    .iter()
                    .map(|b| b.h.as_ref().unwrap().iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?,
            )
        } else if j.blocks.iter().any(|b| b.h.is_some()) {
            return Err(Error::Parse("either every block or no block gives h-values".into()));
        } else {
            None
        };
        let w = match (h, eps) {
            (Some(h), Some(e)) => Weight::from_h_and_eps(&spec, h, e)?,
            (Some(h), None) => Weight::from_h(&spec, h)?,
            (None, Some(e)) => Weight::from_eps(&spec, e)?,
            (None, None) => return Err(Error::Parse("weight needs h-values or eps coordinates".into())),
        };
        Ok((spec, w))
    }
}

fn is_nat(x: &Rational) -> bool {
    x.is_integer() && !x.is_negative()
}

fn is_positive_integer(x: &Rational) -> bool {
    x.is_integer() && x.is_positive()
}

/// JSON scalar that may be written as a number or a rational string.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum RatJson {
    Int(i64),
    Str(String),
}

impl RatJson {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            RatJson::Int(n) => Ok(Rational::from_integer(BigInt::from(*n))),
            RatJson::Str(s) => parse_rational(s),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct BlockJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct WeightJson {
    pub blocks: Vec<BlockJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<Vec<Vec<RatJson>>>,
}

/// `ρ`, with ε-form `½(n, n−2, ..., −n)` per block.
pub fn rho(spec: &SemisimpleSpec) -> Weight {
    let eps = spec
        .block_sizes()
        .iter()
        .map(|&n| (0..=n).map(|k| Rational::new(BigInt::from(n as i64 - 2 * k as i64), BigInt::from(2))).collect())
        .collect();
    Weight::from_eps(spec, eps).expect("block lengths match")
}

/// Maximal runs `[a, b]` (inclusive, block-local) of consecutive indices in `set`.
pub fn components(set: &BTreeSet<usize>) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &i in set {
        match out.last_mut() {
            Some((_, b)) if *b + 1 == i => *b = i,
            _ => out.push((i, i)),
        }
    }
    out
}

/// Block-local indices of the nodes of `set` lying in `block`.
pub fn block_part(set: &NodeSet, block: usize) -> BTreeSet<usize> {
    set.iter().filter(|n| n.block == block).map(|n| n.index).collect()
}

/// `G_J` on `[n+1]`: edge `i → j` iff `{i, ..., j−1} ⊄ J`.
pub fn graph_gj(n: usize, j: &BTreeSet<usize>) -> Result<DirectedMultigraph> {
    if let Some(&bad) = j.iter().find(|&&x| x >= n) {
        return Err(Error::InvalidNode(format!("node {} outside [{n}]", bad + 1)));
    }
    let mut g = DirectedMultigraph::empty(n + 1);
    for a in 0..=n {
        for b in a + 1..=n {
            if !(a..b).all(|k| j.contains(&k)) {
                g.add_edge(a, b, 1)?;
            }
        }
    }
    Ok(g)
}

/// `J_λ`: nodes with `λ(h_i) ∈ N`.
pub fn j_lambda(spec: &SemisimpleSpec, lambda: &Weight) -> NodeSet {
    spec.nodes().into_iter().filter(|&n| is_nat(lambda.h(n))).collect()
}

/// `(λ+ρ)(h_α)` is not a positive integer for any positive root `α`.
pub fn is_antidominant(spec: &SemisimpleSpec, lambda: &Weight) -> bool {
    spec.positive_roots().iter().all(|r| !is_positive_integer(&lambda.rho_shifted_value(r)))
}

fn in_phi_j(root: &Root, set: &NodeSet) -> bool {
    root.chain().all(|k| set.contains(&Node::new(root.block, k)))
}

/// Jantzen's criterion for simplicity of `M(λ, J)`.
pub fn jantzen_simple(spec: &SemisimpleSpec, lambda: &Weight, j: &NodeSet) -> Result<bool> {
    for &n in j {
        spec.check_node(n)?;
    }
    if !lambda.is_dominant_integral_on(j) {
        return Err(Error::Precondition("λ is not J-dominant integral".into()));
    }
    let jl = j_lambda(spec, lambda);
    if *j != jl {
        return Ok(false);
    }
    let rank_n = spec.rank();
    let unit = |n: &Node| {
        let mut v = vec![Rational::zero(); rank_n];
        v[spec.global_index(*n)] = rat(1);
        v
    };
    let to_rat = |v: Vec<i64>| v.into_iter().map(rat).collect::<Vec<_>>();
    let all_roots = spec.roots();
    for beta in spec.positive_roots() {
        if in_phi_j(&beta, &jl) || !is_positive_integer(&lambda.rho_shifted_value(&beta)) {
            continue;
        }
        let mut basis: Vec<Vec<Rational>> = jl.iter().map(unit).collect();
        basis.push(to_rat(beta.simple_coords(spec)));
        let base_rank = rank(&basis);
        let found = all_roots.iter().any(|gamma| {
            if !lambda.rho_shifted_value(gamma).is_zero() || !in_phi_j(&beta.reflect(gamma), &jl) {
                return false;
            }
            let mut ext = basis.clone();
            ext.push(to_rat(gamma.simple_coords(spec)));
            rank(&ext) == base_rank
        });
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The block-product log-concavity criterion for a single hole `H`: `H` is a
/// singleton, or each block meets `H` in nothing or in its only node.
pub fn hovm_dlc_predicted(spec: &SemisimpleSpec, hole: &NodeSet) -> Result<bool> {
    for &n in hole {
        spec.check_node(n)?;
    }
    if !spec.is_independent(hole) {
        return Err(Error::Precondition("hole is not independent".into()));
    }
    if hole.len() == 1 {
        return Ok(true);
    }
    Ok((0..spec.num_blocks()).all(|t| {
        let part = block_part(hole, t);
        part.is_empty() || (part.len() == 1 && spec.block_sizes()[t] == 1)
    }))
}

/// Parses 1-based `[block, index]` pairs.
pub fn nodes_from_json(spec: &SemisimpleSpec, pairs: &[[usize; 2]]) -> Result<NodeSet> {
    let mut out = NodeSet::new();
    for &[b, i] in pairs {
        if b == 0 || i == 0 {
            return Err(Error::InvalidNode(format!("node ({b}, {i}) is not 1-based")));
        }
        let n = Node::new(b - 1, i - 1);
        spec.check_node(n)?;
        out.insert(n);
    }
    Ok(out)
}

pub fn nodes_to_json(set: &NodeSet) -> Vec<[usize; 2]> {
    set.iter().map(|n| [n.block + 1, n.index + 1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    fn spec(b: &[usize]) -> SemisimpleSpec {
        SemisimpleSpec::new(b.to_vec()).unwrap()
    }

    fn w(s: &SemisimpleSpec, h: &[&[Rational]]) -> Weight {
        Weight::from_h(s, h.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn nodes(v: &[(usize, usize)]) -> NodeSet {
        v.iter().map(|&(b, i)| Node::new(b, i)).collect()
    }

    #[test]
    fn root_counts() {
        assert_eq!(positive_roots(&spec(&[2])).len(), 3);
        assert_eq!(positive_roots(&spec(&[1, 1])).len(), 2);
        assert_eq!(positive_roots(&spec(&[3])).len(), 6);
        assert!(SemisimpleSpec::new(vec![]).is_err());
        assert!(SemisimpleSpec::new(vec![2, 0]).is_err());
    }

    #[test]
    fn rho_forms() {
        let s = spec(&[2, 1]);
        let r = rho(&s);
        assert!(r.h_values().iter().flatten().all(|x| *x == rat(1)));
        assert_eq!(r.eps_block(0), vec![rat(1), rat(0), rat(-1)]);
        assert_eq!(r.eps_block(1), vec![ratio(1, 2), ratio(-1, 2)]);
    }

    #[test]
    fn gj_examples() {
        assert_eq!(graph_gj(2, &BTreeSet::new()).unwrap().edge_count(), 3);
        assert_eq!(graph_gj(2, &[0, 1].into_iter().collect()).unwrap().edge_count(), 0);
        let g = graph_gj(3, &[0, 2].into_iter().collect()).unwrap();
        let edges: Vec<(usize, usize)> = g.edges().map(|(e, _)| e).collect();
        assert_eq!(edges, vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert!(graph_gj(2, &[2].into_iter().collect()).is_err());
    }

    #[test]
    fn gj_edge_count_matches_root_complement() {
        for n in 1..=5usize {
            for mask in 0..(1u32 << n) {
                let j: BTreeSet<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
                let delta_j: usize = components(&j).iter().map(|&(a, b)| (b - a + 1) * (b - a + 2) / 2).sum();
                assert_eq!(graph_gj(n, &j).unwrap().edge_count(), n * (n + 1) / 2 - delta_j);
            }
        }
    }

    #[test]
    fn j_lambda_examples() {
        let s = spec(&[2]);
        assert_eq!(j_lambda(&s, &w(&s, &[&[rat(2), rat(0)]])), nodes(&[(0, 0), (0, 1)]));
        assert_eq!(j_lambda(&s, &w(&s, &[&[rat(1), ratio(-1, 2)]])), nodes(&[(0, 0)]));
        let s2 = spec(&[1, 1]);
        assert_eq!(j_lambda(&s2, &w(&s2, &[&[rat(0)], &[rat(-3)]])), nodes(&[(0, 0)]));
    }

    #[test]
    fn antidominance_examples() {
        let s = spec(&[1]);
        assert!(is_antidominant(&s, &w(&s, &[&[rat(-1)]])));
        assert!(!is_antidominant(&s, &w(&s, &[&[rat(0)]])));
        let s3 = spec(&[2]);
        // (λ+ρ)(h_{α1+α2}) = −1/2 − 1/2 + 2 = 1.
        assert!(!is_antidominant(&s3, &w(&s3, &[&[ratio(-1, 2), ratio(-1, 2)]])));
    }

    #[test]
    fn jantzen_examples() {
        let s = spec(&[2]);
        assert!(jantzen_simple(&s, &w(&s, &[&[rat(2), rat(0)]]), &nodes(&[(0, 0), (0, 1)])).unwrap());
        assert!(jantzen_simple(&s, &w(&s, &[&[rat(1), ratio(-1, 2)]]), &nodes(&[(0, 0)])).unwrap());
        assert!(!jantzen_simple(&s, &w(&s, &[&[rat(1), rat(-2)]]), &nodes(&[(0, 0)])).unwrap());
        assert!(!jantzen_simple(&s, &w(&s, &[&[rat(2), rat(0)]]), &nodes(&[(0, 0)])).unwrap());
        assert!(matches!(jantzen_simple(&s, &w(&s, &[&[rat(-1), rat(0)]]), &nodes(&[(0, 0)])), Err(Error::Precondition(_))));
    }

    /// Condition (M+) for `sl_3`, `λ(h) = (1, −2)`, `J = {1}` by hand: the only
    /// `β` is `α_13`; the roots `γ` with `s_β γ ∈ {±α_12}` are `±α_23`.
    #[test]
    fn jantzen_near_miss_by_hand() {
        let s = spec(&[2]);
        let l = w(&s, &[&[rat(1), rat(-2)]]);
        let beta = Root::new(0, 0, 2);
        assert_eq!(l.rho_shifted_value(&beta), rat(1));
        let jl = j_lambda(&s, &l);
        let hits: Vec<Root> = s.roots().into_iter().filter(|g| in_phi_j(&beta.reflect(g), &jl)).collect();
        assert_eq!(hits, vec![Root::new(0, 1, 2), Root::new(0, 2, 1)]);
        assert_eq!(l.rho_shifted_value(&hits[0]), rat(-1));
        assert_eq!(l.rho_shifted_value(&hits[1]), rat(1));
    }

    #[test]
    fn jantzen_general_properties() {
        for b in [vec![1], vec![2], vec![3], vec![1, 2]] {
            let s = spec(&b);
            let all: NodeSet = s.nodes().into_iter().collect();
            for v in 0..3i64 {
                let h: Vec<Vec<i64>> = b.iter().map(|&n| (0..n as i64).map(|i| (v + i) % 3).collect()).collect();
                let l = Weight::from_h_ints(&s, &h).unwrap();
                assert!(jantzen_simple(&s, &l, &all).unwrap());
            }
            for v in [-1i64, -2, -3] {
                let h: Vec<Vec<i64>> = b.iter().map(|&n| vec![v; n]).collect();
                let l = Weight::from_h_ints(&s, &h).unwrap();
                if is_antidominant(&s, &l) {
                    assert!(j_lambda(&s, &l).is_empty());
                    assert!(jantzen_simple(&s, &l, &NodeSet::new()).unwrap());
                }
            }
        }
    }

    #[test]
    fn reflections_are_involutions() {
        let s = spec(&[3, 1]);
        for b in s.roots() {
            for g in s.roots() {
                assert_eq!(b.reflect(&b.reflect(&g)), g);
            }
            assert_eq!(b.reflect(&b), b.negate());
        }
    }

    #[test]
    fn dlc_prediction_examples() {
        let s = spec(&[1, 1]);
        assert!(hovm_dlc_predicted(&s, &nodes(&[(0, 0), (1, 0)])).unwrap());
        let s4 = spec(&[3]);
        assert!(!hovm_dlc_predicted(&s4, &nodes(&[(0, 0), (0, 2)])).unwrap());
        assert!(hovm_dlc_predicted(&s4, &nodes(&[(0, 1)])).unwrap());
        assert!(hovm_dlc_predicted(&s4, &nodes(&[(0, 0), (0, 1)])).is_err());
    }

    #[test]
    fn depth_round_trip() {
        let s = spec(&[3, 1]);
        let l = Weight::from_h(&s, vec![vec![ratio(1, 2), rat(0), rat(-2)], vec![rat(3)]]).unwrap();
        let k = vec![1, 3, 2, 4];
        let mu = l.sub_depth(&s, &k);
        assert_eq!(l.depth_of(&s, &mu), Some(k));
        let off = Weight::from_h(&s, vec![vec![ratio(1, 3), rat(0), rat(0)], vec![rat(0)]]).unwrap();
        assert_eq!(l.depth_of(&s, &off), None);
    }

    #[test]
    fn weight_json_forms() {
        let j: WeightJson = serde_json::from_str(r#"{"blocks": [{"n": 2, "h": ["1", "-1/2"]}]}"#).unwrap();
        let (s, l) = Weight::from_json(&j).unwrap();
        assert_eq!(s.block_sizes(), &[2]);
        assert_eq!(l.h(Node::new(0, 1)), &ratio(-1, 2));
        let ok: WeightJson = serde_json::from_str(r#"{"blocks": [{"n": 2, "h": ["1", "1"]}], "eps": [[2,1,0]]}"#).unwrap();
        assert!(Weight::from_json(&ok).is_ok());
        let bad: WeightJson = serde_json::from_str(r#"{"blocks": [{"n": 2, "h": ["1", "0"]}], "eps": [[2,1,0]]}"#).unwrap();
        assert!(Weight::from_json(&bad).is_err());
        let eps_only: WeightJson = serde_json::from_str(r#"{"blocks": [{"n": 2}], "eps": [[3,"1/2",0]]}"#).unwrap();
        let (_, l) = Weight::from_json(&eps_only).unwrap();
        assert_eq!(l.h(Node::new(0, 0)), &ratio(5, 2));
    }
}
