//! Weight multiplicities of highest-weight modules over `⊕_t sl_{n_t+1}`.
//!
//! A weight `μ` is located by its depth `k`, meaning `λ − μ = Σ_i k_i α_i`.
//! Per block the depth is turned into the ε-difference vector consumed by
//! [`KpfCounter`].

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::cert::{three_term_ok, CertificationReport, DirectionSet, Witness};
use crate::error::{Error, Result};
use crate::kpf::{shifted_char_polynomial, Count, DirectedMultigraph, KpfCounter};
use crate::lie::{
    block_part, components, graph_gj, nodes_from_json, nodes_to_json, Node, NodeSet, Root, SemisimpleSpec, Weight, WeightJson,
};
use crate::poly::{rat, Rational, SparsePoly};

/// Block-local depth to ε-difference: `v_0 = k_0`, `v_i = k_i − k_{i−1}`, `v_n = −k_{n−1}`.
pub fn depth_to_eps(k: &[i64]) -> Vec<i64> {
    let n = k.len();
    (0..=n)
        .map(|i| {
            let cur = if i < n { k[i] } else { 0 };
            let prev = if i > 0 { k[i - 1] } else { 0 };
            cur - prev
        })
        .collect()
}

/// Inverse of [`depth_to_eps`]; `None` unless `v` sums to zero.
pub fn eps_to_depth(v: &[i64]) -> Option<Vec<i64>> {
    if v.is_empty() || v.iter().sum::<i64>() != 0 {
        return None;
    }
    Some(
        v[..v.len() - 1]
            .iter()
            .scan(0i64, |s, &x| {
                *s += x;
                Some(*s)
            })
            .collect(),
    )
}

fn split_depth(spec: &SemisimpleSpec, k: &[i64]) -> Result<Vec<Vec<i64>>> {
    if k.len() != spec.rank() {
        return Err(Error::DimensionMismatch { expected: spec.rank(), got: k.len() });
    }
    Ok(spec
        .block_sizes()
        .iter()
        .enumerate()
        .map(|(t, &n)| {
            let off = spec.node_offset(t);
            depth_to_eps(&k[off..off + n])
        })
        .collect())
}

fn nat_h(lambda: &Weight, node: Node) -> Result<i64> {
    let x = lambda.h(node);
    if !x.is_integer() || x.is_negative() {
        return Err(Error::Precondition(format!(
            "λ(h) at node ({}, {}) is not a nonnegative integer",
            node.block + 1,
            node.index + 1
        )));
    }
    x.to_integer().to_i64().ok_or(Error::Overflow)
}

fn to_signed(c: Count) -> Result<i128> {
    i128::try_from(c).map_err(|_| Error::Overflow)
}

fn from_signed(x: i128, what: &str) -> Result<Count> {
    Count::try_from(x).map_err(|_| Error::Internal(format!("{what} is negative ({x})")))
}

fn checked_mul(a: Count, b: Count) -> Result<Count> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn inversion_sign(p: &[usize]) -> i64 {
    let inv = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `λ+ρ'` on the ε-indices `a..=b+1` of a run `[a, b]` of nodes, normalized
/// to end in 0. Entries are strictly decreasing.
fn rho_shifted_run(hs: &[i64]) -> Vec<i64> {
    let m = hs.len();
    let mut c = vec![0i64; m + 1];
    for i in (0..m).rev() {
        c[i] = c[i + 1] + hs[i] + 1;
    }
    c
}

/// `(sign(w), c − w(c))` for every permutation `w` of the entries of `c`.
fn weyl_shifts(c: &[i64]) -> Vec<(i64, Vec<i64>)> {
    (0..c.len()).permutations(c.len()).map(|p| (inversion_sign(&p), (0..c.len()).map(|i| c[i] - c[p[i]]).collect())).collect()
}

/// Weights of the simple `sl_{m+1}`-module with highest weight `hs`, as
/// ε-differences from the highest weight, with multiplicities from the Weyl
/// alternating sum.
fn findim_run_weights(hs: &[i64]) -> Result<Vec<(Vec<i64>, Count)>> {
    let m = hs.len();
    let mut top = vec![0i64; m + 1];
    for i in (0..m).rev() {
        top[i] = top[i + 1] + hs[i];
    }
    let bottom: Vec<i64> = top.iter().rev().copied().collect();
    let span: Vec<i64> = top.iter().zip(&bottom).map(|(a, b)| a - b).collect();
    let dmax = eps_to_depth(&span).expect("span sums to zero");
    let shifts = weyl_shifts(&rho_shifted_run(hs));
    let mut counter = KpfCounter::new(DirectedMultigraph::complete(m + 1));
    let mut out = Vec::new();
    for k in dmax.iter().map(|&d| 0..=d).multi_cartesian_product() {
        let d = depth_to_eps(&k);
        let nu: Vec<i64> = top.iter().zip(&d).map(|(a, b)| a - b).collect();
        if !majorized(&nu, &top) {
            continue;
        }
        let mut acc = 0i128;
        for (s, sh) in &shifts {
            let v: Vec<i64> = d.iter().zip(sh).map(|(a, b)| a - b).collect();
            let c = to_signed(counter.count(&v)?)?;
            acc = if *s > 0 { acc.checked_add(c) } else { acc.checked_sub(c) }.ok_or(Error::Overflow)?;
        }
        let mult = from_signed(acc, "Weyl alternating sum")?;
        if mult > 0 {
            out.push((d, mult));
        }
    }
    Ok(out)
}

/// Sorted-decreasing partial sums of `nu` never exceed those of `top`.
fn majorized(nu: &[i64], top: &[i64]) -> bool {
    let mut s: Vec<i64> = nu.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    let (mut x, mut y) = (0i64, 0i64);
    for (a, b) in s.iter().zip(top) {
        x += a;
        y += b;
        if x > y {
            return false;
        }
    }
    true
}

/// Parabolic data for one block: the `W_J` shifts for the alternating sum and
/// the `V_J` weights for the factorized sum.
#[derive(Debug, Clone)]
struct BlockParabolic {
    shifts: Vec<(i64, Vec<i64>)>,
    vj: Vec<(Vec<i64>, Count)>,
    full: KpfCounter,
    gj: KpfCounter,
}

impl BlockParabolic {
    fn new(spec: &SemisimpleSpec, lambda: &Weight, block: usize, j: &BTreeSet<usize>) -> Result<Self> {
        let n = spec.block_sizes()[block];
        let mut shifts = vec![(1i64, vec![0i64; n + 1])];
        let mut vj = vec![(vec![0i64; n + 1], 1 as Count)];
        for (a, b) in components(j) {
            let hs = (a..=b).map(|i| nat_h(lambda, Node::new(block, i))).collect::<Result<Vec<_>>>()?;
            let run_shifts = weyl_shifts(&rho_shifted_run(&hs));
            shifts = shifts
                .iter()
                .cartesian_product(&run_shifts)
                .map(|((s0, v0), (s1, v1))| {
                    let mut v = v0.clone();
                    for (i, x) in v1.iter().enumerate() {
                        v[a + i] += x;
                    }
                    (s0 * s1, v)
                })
                .collect();
            let run_weights = findim_run_weights(&hs)?;
            let mut next = Vec::with_capacity(vj.len() * run_weights.len());
            for ((v0, m0), (v1, m1)) in vj.iter().cartesian_product(&run_weights) {
                let mut v = v0.clone();
                for (i, x) in v1.iter().enumerate() {
                    v[a + i] += x;
                }
                next.push((v, checked_mul(*m0, *m1)?));
            }
            vj = next;
        }
        Ok(BlockParabolic {
            shifts,
            vj,
            full: KpfCounter::new(DirectedMultigraph::complete(n + 1)),
            gj: KpfCounter::new(graph_gj(n, j)?),
        })
    }

    fn alternating(&mut self, v: &[i64]) -> Result<Count> {
        let mut acc = 0i128;
        for (s, sh) in &self.shifts {
            let w: Vec<i64> = v.iter().zip(sh).map(|(a, b)| a - b).collect();
            let c = to_signed(self.full.count(&w)?)?;
            acc = if *s > 0 { acc.checked_add(c) } else { acc.checked_sub(c) }.ok_or(Error::Overflow)?;
        }
        from_signed(acc, "W_J alternating sum")
    }

    fn factorized(&mut self, v: &[i64]) -> Result<Count> {
        let mut acc: Count = 0;
        for (d, m) in &self.vj {
            let w: Vec<i64> = v.iter().zip(d).map(|(a, b)| a - b).collect();
            let c = self.gj.count(&w)?;
            acc = acc.checked_add(checked_mul(*m, c)?).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }
}

/// Verma multiplicities: the product of per-block KPFs.
#[derive(Debug, Clone)]
pub struct VermaCharacter {
    spec: SemisimpleSpec,
    counters: Vec<KpfCounter>,
}

impl VermaCharacter {
    pub fn new(spec: &SemisimpleSpec) -> Self {
        let counters = spec.block_sizes().iter().map(|&n| KpfCounter::new(DirectedMultigraph::complete(n + 1))).collect();
        VermaCharacter { spec: spec.clone(), counters }
    }

    pub fn mult_depth(&mut self, k: &[i64]) -> Result<Count> {
        let parts = split_depth(&self.spec, k)?;
        let mut acc: Count = 1;
        for (c, v) in self.counters.iter_mut().zip(&parts) {
            let x = c.count(v)?;
            if x == 0 {
                return Ok(0);
            }
            acc = checked_mul(acc, x)?;
        }
        Ok(acc)
    }
}

/// Multiplicities of `M(λ, J)`, computed both by factorization through `V_J`
/// and by the `W_J` alternating sum.
#[derive(Debug, Clone)]
pub struct ParabolicCharacter {
    spec: SemisimpleSpec,
    j: NodeSet,
    blocks: Vec<BlockParabolic>,
}

impl ParabolicCharacter {
    pub fn new(spec: &SemisimpleSpec, lambda: &Weight, j: &NodeSet) -> Result<Self> {
        for &n in j {
            spec.check_node(n)?;
        }
        if !lambda.is_dominant_integral_on(j) {
            return Err(Error::Precondition("λ is not J-dominant integral".into()));
        }
        let blocks = (0..spec.num_blocks())
            .map(|t| BlockParabolic::new(spec, lambda, t, &block_part(j, t)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ParabolicCharacter { spec: spec.clone(), j: j.clone(), blocks })
    }

    pub fn j(&self) -> &NodeSet {
        &self.j
    }

    fn product(&mut self, k: &[i64], factorized: bool) -> Result<Count> {
        let parts = split_depth(&self.spec, k)?;
        let mut acc: Count = 1;
        for (b, v) in self.blocks.iter_mut().zip(&parts) {
            let x = if factorized { b.factorized(v)? } else { b.alternating(v)? };
            if x == 0 {
                return Ok(0);
            }
            acc = checked_mul(acc, x)?;
        }
        Ok(acc)
    }

    pub fn mult_alternating(&mut self, k: &[i64]) -> Result<Count> {
        self.product(k, false)
    }

    pub fn mult_factorized(&mut self, k: &[i64]) -> Result<Count> {
        self.product(k, true)
    }

    /// Both routes; an `Internal` error if they disagree.
    pub fn mult_depth(&mut self, k: &[i64]) -> Result<Count> {
        let a = self.mult_factorized(k)?;
        let b = self.mult_alternating(k)?;
        if a != b {
            return Err(Error::Internal(format!("parabolic routes disagree at depth {k:?}: {a} vs {b}")));
        }
        Ok(a)
    }

    /// `V_J` weights of one block as (ε-difference, multiplicity).
    pub fn vj_weights(&self, block: usize) -> &[(Vec<i64>, Count)] {
        &self.blocks[block].vj
    }
}

/// A family of holes, reduced to its minimal members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoleFamily {
    holes: Vec<NodeSet>,
}

impl HoleFamily {
    pub fn new(spec: &SemisimpleSpec, holes: Vec<NodeSet>) -> Result<Self> {
        if holes.is_empty() {
            return Err(Error::Invalid("a hole family needs at least one hole".into()));
        }
        for h in &holes {
            for &n in h {
                spec.check_node(n)?;
            }
            if !spec.is_independent(h) {
                return Err(Error::Precondition("hole is not independent".into()));
            }
        }
        let mut uniq: Vec<NodeSet> = holes.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        uniq.sort_by_key(|h| h.len());
        let mut minimal: Vec<NodeSet> = Vec::new();
        for h in uniq {
            if !minimal.iter().any(|m| m.is_subset(&h)) {
                minimal.push(h);
            }
        }
        minimal.sort();
        Ok(HoleFamily { holes: minimal })
    }

    pub fn holes(&self) -> &[NodeSet] {
        &self.holes
    }

    /// `max |H|`.
    pub fn order(&self) -> usize {
        self.holes.iter().map(|h| h.len()).max().unwrap_or(0)
    }
}

/// Shift `Σ_{i∈H} (λ(h_i)+1) α_i` as a global depth vector.
fn hole_shift(spec: &SemisimpleSpec, lambda: &Weight, hole: &NodeSet) -> Result<Vec<i64>> {
    let mut s = vec![0i64; spec.rank()];
    for &n in hole {
        s[spec.global_index(n)] = nat_h(lambda, n)? + 1;
    }
    Ok(s)
}

/// Higher-order Verma multiplicities wherever they follow from support:
/// singleton holes form the parabolic base, and a larger hole only matters at
/// depths dominating its shift.
#[derive(Debug, Clone)]
pub struct HigherOrderCharacter {
    zero: bool,
    base: ParabolicCharacter,
    verma: VermaCharacter,
    big: Vec<(NodeSet, Vec<i64>)>,
}

impl HigherOrderCharacter {
    pub fn new(spec: &SemisimpleSpec, lambda: &Weight, family: &HoleFamily) -> Result<Self> {
        let zero = family.holes().iter().any(|h| h.is_empty());
        let j: NodeSet = family.holes().iter().filter(|h| h.len() == 1).flatten().copied().collect();
        let big = family
            .holes()
            .iter()
            .filter(|h| h.len() >= 2)
            .map(|h| Ok((h.clone(), hole_shift(spec, lambda, h)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(HigherOrderCharacter { zero, base: ParabolicCharacter::new(spec, lambda, &j)?, verma: VermaCharacter::new(spec), big })
    }

    pub fn mult_depth(&mut self, k: &[i64]) -> Result<Count> {
        if self.zero {
            return Ok(0);
        }
        let active: Vec<&(NodeSet, Vec<i64>)> = self.big.iter().filter(|(_, s)| k.iter().zip(s).all(|(a, b)| a >= b)).collect();
        match active.as_slice() {
            [] => self.base.mult_depth(k),
            [(_, s)] if self.base.j().is_empty() => {
                let shifted: Vec<i64> = k.iter().zip(s).map(|(a, b)| a - b).collect();
                let s = s.clone();
                let top = self.verma.mult_depth(k)?;
                let sub = self.verma.mult_depth(&shifted)?;
                top.checked_sub(sub)
                    .ok_or_else(|| Error::Internal(format!("submodule larger than Verma at depth {k:?} (shift {s:?})")))
            }
            _ => Err(Error::Unsupported(format!(
                "multiplicity at depth {k:?} needs more than one hole relation; only support-determined weights are computed"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleKind {
    Verma,
    FinDim,
    Parabolic(NodeSet),
    HigherOrder(HoleFamily),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleSpec {
    pub algebra: SemisimpleSpec,
    pub lambda: Weight,
    pub kind: ModuleKind,
}

impl ModuleSpec {
    /// Checks the admissibility of `λ` for the kind.
    pub fn new(algebra: SemisimpleSpec, lambda: Weight, kind: ModuleKind) -> Result<Self> {
        if lambda.h_values().len() != algebra.num_blocks()
            || lambda.h_values().iter().zip(algebra.block_sizes()).any(|(h, &n)| h.len() != n)
        {
            return Err(Error::Invalid("λ does not match the algebra".into()));
        }
        let need: NodeSet = match &kind {
            ModuleKind::Verma => NodeSet::new(),
            ModuleKind::FinDim => algebra.nodes().into_iter().collect(),
            ModuleKind::Parabolic(j) => {
                for &n in j {
                    algebra.check_node(n)?;
                }
                j.clone()
            }
            ModuleKind::HigherOrder(f) => f.holes().iter().flatten().copied().collect(),
        };
        if !lambda.is_dominant_integral_on(&need) {
            return Err(Error::Precondition("λ is not dominant integral on the required nodes".into()));
        }
        Ok(ModuleSpec { algebra, lambda, kind })
    }

    pub fn character(&self) -> Result<ModuleCharacter> {
        let engine = match &self.kind {
            ModuleKind::Verma => Engine::Verma(VermaCharacter::new(&self.algebra)),
            ModuleKind::FinDim => {
                let all: NodeSet = self.algebra.nodes().into_iter().collect();
                Engine::Parabolic(ParabolicCharacter::new(&self.algebra, &self.lambda, &all)?)
            }
            ModuleKind::Parabolic(j) => Engine::Parabolic(ParabolicCharacter::new(&self.algebra, &self.lambda, j)?),
            ModuleKind::HigherOrder(f) => Engine::HigherOrder(HigherOrderCharacter::new(&self.algebra, &self.lambda, f)?),
        };
        Ok(ModuleCharacter { spec: self.algebra.clone(), lambda: self.lambda.clone(), engine })
    }

    pub fn from_json(j: &ModuleJson) -> Result<Self> {
        let (spec, lambda) = Weight::from_json(&j.lambda)?;
        if spec.block_sizes() != j.algebra.as_slice() {
            return Err(Error::Parse(format!(
                "algebra {:?} disagrees with the blocks of lambda {:?}",
                j.algebra,
                spec.block_sizes()
            )));
        }
        let kind = match &j.kind {
            KindJson::Verma => ModuleKind::Verma,
            KindJson::Findim => ModuleKind::FinDim,
            KindJson::Parabolic { j: nodes } => ModuleKind::Parabolic(nodes_from_json(&spec, nodes)?),
            KindJson::HigherOrder { holes } => {
                let hs = holes.iter().map(|h| nodes_from_json(&spec, h)).collect::<Result<Vec<_>>>()?;
                ModuleKind::HigherOrder(HoleFamily::new(&spec, hs)?)
            }
        };
        ModuleSpec::new(spec, lambda, kind)
    }

    pub fn to_json(&self) -> ModuleJson {
        let kind = match &self.kind {
            ModuleKind::Verma => KindJson::Verma,
            ModuleKind::FinDim => KindJson::Findim,
            ModuleKind::Parabolic(j) => KindJson::Parabolic { j: nodes_to_json(j) },
            ModuleKind::HigherOrder(f) => KindJson::HigherOrder { holes: f.holes().iter().map(nodes_to_json).collect() },
        };
        ModuleJson { algebra: self.algebra.block_sizes().to_vec(), lambda: self.lambda.to_json(&self.algebra), kind }
    }
}

/// `{"algebra": [3], "lambda": {...}, "kind": {"type": "parabolic", "J": [[1, 1]]}}`.
/// Nodes are 1-based `[block, index]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModuleJson {
    pub algebra: Vec<usize>,
    pub lambda: WeightJson,
    pub kind: KindJson,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum KindJson {
    Verma,
    Findim,
    Parabolic {
        #[serde(rename = "J")]
        j: Vec<[usize; 2]>,
    },
    HigherOrder {
        holes: Vec<Vec<[usize; 2]>>,
    },
}

#[derive(Debug, Clone)]
enum Engine {
    Verma(VermaCharacter),
    Parabolic(ParabolicCharacter),
    HigherOrder(HigherOrderCharacter),
}

/// Memoizing multiplicity oracle for one module.
#[derive(Debug, Clone)]
pub struct ModuleCharacter {
    spec: SemisimpleSpec,
    lambda: Weight,
    engine: Engine,
}

impl ModuleCharacter {
    pub fn spec(&self) -> &SemisimpleSpec {
        &self.spec
    }

    pub fn mult_depth(&mut self, k: &[i64]) -> Result<Count> {
        match &mut self.engine {
            Engine::Verma(v) => v.mult_depth(k),
            Engine::Parabolic(p) => p.mult_depth(k),
            Engine::HigherOrder(h) => h.mult_depth(k),
        }
    }

    /// `dim M_μ`; zero when `λ − μ` is not in the root lattice.
    pub fn mult(&mut self, mu: &Weight) -> Result<Count> {
        match self.lambda.depth_of(&self.spec, mu) {
            Some(k) => self.mult_depth(&k),
            None => Ok(0),
        }
    }
}

fn depth_or_none(spec: &SemisimpleSpec, lambda: &Weight, mu: &Weight) -> Result<Option<Vec<i64>>> {
    if mu.h_values().len() != spec.num_blocks() || mu.h_values().iter().zip(spec.block_sizes()).any(|(h, &n)| h.len() != n) {
        return Err(Error::Invalid("μ does not match the algebra".into()));
    }
    Ok(lambda.depth_of(spec, mu))
}

/// `dim M(λ)_μ = K(λ − μ)`.
pub fn verma_mult(spec: &SemisimpleSpec, lambda: &Weight, mu: &Weight) -> Result<Count> {
    match depth_or_none(spec, lambda, mu)? {
        Some(k) => VermaCharacter::new(spec).mult_depth(&k),
        None => Ok(0),
    }
}

/// `dim V(λ)_μ` by the Weyl alternating sum.
pub fn findim_mult(spec: &SemisimpleSpec, lambda: &Weight, mu: &Weight) -> Result<Count> {
    let all: NodeSet = spec.nodes().into_iter().collect();
    if !lambda.is_dominant_integral_on(&all) {
        return Err(Error::Precondition("λ is not dominant integral".into()));
    }
    match depth_or_none(spec, lambda, mu)? {
        Some(k) => ParabolicCharacter::new(spec, lambda, &all)?.mult_alternating(&k),
        None => Ok(0),
    }
}

/// `dim M(λ, J)_μ`, checked by both routes.
pub fn parabolic_mult(spec: &SemisimpleSpec, lambda: &Weight, j: &NodeSet, mu: &Weight) -> Result<Count> {
    let mut p = ParabolicCharacter::new(spec, lambda, j)?;
    match depth_or_none(spec, lambda, mu)? {
        Some(k) => p.mult_depth(&k),
        None => Ok(0),
    }
}

/// `dim M(λ)_μ − dim M(λ − Σ_{i∈H}(λ(h_i)+1)α_i)_μ`.
pub fn hovm_single_hole_mult(spec: &SemisimpleSpec, lambda: &Weight, hole: &NodeSet, mu: &Weight) -> Result<Count> {
    for &n in hole {
        spec.check_node(n)?;
    }
    if !spec.is_independent(hole) {
        return Err(Error::Precondition("hole is not independent".into()));
    }
    let s = hole_shift(spec, lambda, hole)?;
    let Some(k) = depth_or_none(spec, lambda, mu)? else {
        return Ok(0);
    };
    let mut v = VermaCharacter::new(spec);
    let top = v.mult_depth(&k)?;
    let shifted: Vec<i64> = k.iter().zip(&s).map(|(a, b)| a - b).collect();
    let sub = v.mult_depth(&shifted)?;
    top.checked_sub(sub).ok_or_else(|| Error::Internal("submodule larger than Verma".into()))
}

/// Single-hole multiplicity when every hole node is the only node of an
/// `sl_2` block: `(∏[k_t ≥ 0] − ∏[k_t ≥ λ(h_t)+1])` over the touched blocks,
/// times Verma multiplicities of the other blocks.
pub fn hovm_sl2_blocks_mult(spec: &SemisimpleSpec, lambda: &Weight, hole: &NodeSet, mu: &Weight) -> Result<Count> {
    for &n in hole {
        spec.check_node(n)?;
        if spec.block_sizes()[n.block] != 1 {
            return Err(Error::Precondition(format!("block {} is not sl2", n.block + 1)));
        }
    }
    let Some(k) = depth_or_none(spec, lambda, mu)? else {
        return Ok(0);
    };
    let mut inside = true;
    let mut beyond = true;
    for &n in hole {
        let kt = k[spec.global_index(n)];
        inside &= kt >= 0;
        beyond &= kt > nat_h(lambda, n)?;
    }
    let touched = Count::from(inside) - Count::from(inside && beyond);
    if touched == 0 {
        return Ok(0);
    }
    let blocks: BTreeSet<usize> = hole.iter().map(|n| n.block).collect();
    let mut acc = touched;
    for (t, &n) in spec.block_sizes().iter().enumerate() {
        if blocks.contains(&t) {
            continue;
        }
        let off = spec.node_offset(t);
        let x = KpfCounter::new(DirectedMultigraph::complete(n + 1)).count(&depth_to_eps(&k[off..off + n]))?;
        acc = checked_mul(acc, x)?;
    }
    Ok(acc)
}

fn integral_block_eps(spec: &SemisimpleSpec, lambda: &Weight, delta: &[i64]) -> Result<Vec<Vec<i64>>> {
    if delta.len() != spec.num_eps_vars() {
        return Err(Error::DimensionMismatch { expected: spec.num_eps_vars(), got: delta.len() });
    }
    if delta.iter().any(|&d| d < 0) {
        return Err(Error::Precondition("δ must be nonnegative".into()));
    }
    let eps = lambda.integral_eps().ok_or_else(|| Error::NonIntegral("λ has non-integral epsilon coordinates".into()))?;
    Ok(eps
        .into_iter()
        .enumerate()
        .map(|(t, e)| {
            let off = spec.eps_offset(t);
            e.iter().enumerate().map(|(i, x)| x + delta[off + i]).collect()
        })
        .collect())
}

fn product_across_blocks(spec: &SemisimpleSpec, parts: Vec<SparsePoly>) -> Result<SparsePoly> {
    let total = spec.num_eps_vars();
    let mut acc = SparsePoly::one(total);
    for (t, p) in parts.into_iter().enumerate() {
        acc = acc.mul(&p.embed(total, spec.eps_offset(t))?)?;
    }
    Ok(acc)
}

/// The monomials of `x^{λ+δ}·char M(λ, J)` with nonnegative exponents, built
/// per block as `Σ_ν dim V_J(λ)_ν · Σ_κ K_{G_J}(κ) x^{ν+δ−κ}`.
pub fn parabolic_char_polynomial(spec: &SemisimpleSpec, lambda: &Weight, j: &NodeSet, delta: &[i64]) -> Result<SparsePoly> {
    let tops = integral_block_eps(spec, lambda, delta)?;
    let p = ParabolicCharacter::new(spec, lambda, j)?;
    let mut parts = Vec::with_capacity(spec.num_blocks());
    for (t, top) in tops.iter().enumerate() {
        let g = graph_gj(spec.block_sizes()[t], &block_part(j, t))?;
        let mut acc = SparsePoly::zero(top.len());
        for (d, m) in p.vj_weights(t) {
            let base: Vec<i64> = top.iter().zip(d).map(|(a, b)| a - b).collect();
            let piece = shifted_char_polynomial(&g, &base)?;
            acc = acc.add(&piece.scale(&Rational::from_integer((*m).into())))?;
        }
        parts.push(acc);
    }
    product_across_blocks(spec, parts)
}

/// Same polynomial from the `W_J` alternating sum of shifted Verma characters.
pub fn parabolic_char_polynomial_alternating(
    spec: &SemisimpleSpec,
    lambda: &Weight,
    j: &NodeSet,
    delta: &[i64],
) -> Result<SparsePoly> {
    let tops = integral_block_eps(spec, lambda, delta)?;
    let p = ParabolicCharacter::new(spec, lambda, j)?;
    let mut parts = Vec::with_capacity(spec.num_blocks());
    for (t, top) in tops.iter().enumerate() {
        let g = DirectedMultigraph::complete(top.len());
        let mut acc = SparsePoly::zero(top.len());
        for (s, sh) in &p.blocks[t].shifts {
            let base: Vec<i64> = top.iter().zip(sh).map(|(a, b)| a - b).collect();
            let piece = shifted_char_polynomial(&g, &base)?;
            acc = acc.add(&piece.scale(&rat(*s)))?;
        }
        parts.push(acc);
    }
    product_across_blocks(spec, parts)
}

/// Axis-aligned box of depth vectors `lo ≤ k ≤ hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl WeightBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), got: hi.len() });
        }
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::Invalid("empty weight box".into()));
        }
        Ok(WeightBox { lo, hi })
    }

    /// Depths `0..=r` in every coordinate.
    pub fn radius(rank: usize, r: i64) -> Result<Self> {
        Self::new(vec![0; rank], vec![r; rank])
    }

    /// `center ± r` in every coordinate.
    pub fn around(center: &[i64], r: i64) -> Result<Self> {
        Self::new(center.iter().map(|c| c - r).collect(), center.iter().map(|c| c + r).collect())
    }

    pub fn size(&self) -> u128 {
        self.lo.iter().zip(&self.hi).map(|(a, b)| (b - a + 1) as u128).product()
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        self.lo.iter().zip(&self.hi).map(|(&a, &b)| a..=b).multi_cartesian_product()
    }
}

/// Checks `f(p)² ≥ f(p−d)·f(p+d)` at every point and direction, in order;
/// the first failure is returned as a [`Witness::ThreeTerm`] with
/// `forward = f(p−d)` and `backward = f(p+d)`.
pub fn scan_log_concavity<I, F>(points: I, directions: &[Vec<i64>], mut f: F) -> Result<CertificationReport>
where
    I: IntoIterator<Item = Vec<i64>>,
    F: FnMut(&[i64]) -> Result<Count>,
{
    let mut memo: HashMap<Vec<i64>, Count> = HashMap::new();
    let mut value = |p: Vec<i64>, f: &mut F| -> Result<Count> {
        if let Some(&v) = memo.get(&p) {
            return Ok(v);
        }
        let v = f(&p)?;
        memo.insert(p, v);
        Ok(v)
    };
    for p in points {
        let c = value(p.clone(), &mut f)?;
        for d in directions {
            let fw = value(p.iter().zip(d).map(|(a, b)| a - b).collect(), &mut f)?;
            let bw = value(p.iter().zip(d).map(|(a, b)| a + b).collect(), &mut f)?;
            let (c, fw, bw) =
                (Rational::from_integer(c.into()), Rational::from_integer(fw.into()), Rational::from_integer(bw.into()));
            if !three_term_ok(&c, &fw, &bw) {
                return Ok(CertificationReport::fail(Witness::ThreeTerm {
                    at: p.clone(),
                    direction: d.clone(),
                    center: c.to_string(),
                    forward: fw.to_string(),
                    backward: bw.to_string(),
                }));
            }
        }
    }
    Ok(CertificationReport::pass())
}

/// All root directions inside blocks, as global ε-index pairs.
pub fn root_directions(spec: &SemisimpleSpec) -> DirectionSet {
    DirectionSet::within_blocks(&spec.block_sizes().iter().map(|n| n + 1).collect::<Vec<_>>())
}

/// Depth coordinates of the roots named by ε-index pairs; pairs must stay
/// inside one block.
pub fn direction_depths(spec: &SemisimpleSpec, dirs: &DirectionSet) -> Result<Vec<Vec<i64>>> {
    dirs.pairs()
        .iter()
        .map(|&(a, b)| {
            let block = (0..spec.num_blocks())
                .find(|&t| {
                    let off = spec.eps_offset(t);
                    (off..=off + spec.block_sizes()[t]).contains(&a)
                })
                .ok_or_else(|| Error::Invalid(format!("direction index {a} out of range")))?;
            let off = spec.eps_offset(block);
            if !(off..=off + spec.block_sizes()[block]).contains(&b) {
                return Err(Error::Invalid(format!("direction ({a}, {b}) crosses blocks")));
            }
            Ok(Root::new(block, a - off, b - off).simple_coords(spec))
        })
        .collect()
}

/// Discrete log-concavity of `μ ↦ dim M_μ` over a box of depths.
/// The witness `at` and `direction` are depth vectors.
pub fn dlc_scan(module: &ModuleSpec, bx: &WeightBox, dirs: &DirectionSet, limit: usize) -> Result<CertificationReport> {
    if bx.lo.len() != module.algebra.rank() {
        return Err(Error::DimensionMismatch { expected: module.algebra.rank(), got: bx.lo.len() });
    }
    if bx.size() > limit as u128 {
        return Err(Error::BudgetExceeded { what: "weight box points", limit });
    }
    let directions = direction_depths(&module.algebra, dirs)?;
    let mut ch = module.character()?;
    scan_log_concavity(bx.points(), &directions, |k| ch.mult_depth(k))
}

/// The weights `λ+μ+β, λ+μ, λ+μ−β` singled out for a family of holes of size
/// at least 2 in one block, with the computed and predicted multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainViolation {
    pub block: usize,
    pub i1: usize,
    pub i2: usize,
    pub hole: Vec<[usize; 2]>,
    pub depths: [Vec<i64>; 3],
    pub mults: [Count; 3],
    pub expected: [Count; 3],
}

impl ChainViolation {
    pub fn violates(&self) -> bool {
        let [a, b, c] = self.mults;
        b * b < a * c
    }
}

/// Picks `i1` as the largest first node over the holes, then `i2` as the
/// smallest second node among holes starting at `i1`, and evaluates the
/// module along `α_{i2}` at the depths that break log-concavity.
pub fn chain_violation(spec: &SemisimpleSpec, lambda: &Weight, family: &HoleFamily) -> Result<ChainViolation> {
    let holes = family.holes();
    if holes.iter().any(|h| h.len() < 2) {
        return Err(Error::Precondition("every hole must have at least two nodes".into()));
    }
    let block = holes[0].iter().next().map(|n| n.block).unwrap_or(0);
    if holes.iter().flatten().any(|n| n.block != block) {
        return Err(Error::Precondition("all holes must lie in one block".into()));
    }
    let first = |h: &NodeSet| h.iter().next().unwrap().index;
    let second = |h: &NodeSet| h.iter().nth(1).unwrap().index;
    let i1 = holes.iter().map(first).max().unwrap();
    let (i2, j0) = holes.iter().filter(|h| first(h) == i1).map(|h| (second(h), h)).min_by_key(|(s, _)| *s).unwrap();
    let at = |i: usize| spec.global_index(Node::new(block, i));
    let mut k = vec![0i64; spec.rank()];
    for i in i1 + 1..i2 {
        k[at(i)] += 1;
    }
    k[at(i2)] += 1;
    for &n in j0 {
        k[spec.global_index(n)] += nat_h(lambda, n)? + 1;
    }
    let mut lo = k.clone();
    lo[at(i2)] -= 1;
    let mut hi = k.clone();
    hi[at(i2)] += 1;
    let mut ch = HigherOrderCharacter::new(spec, lambda, family)?;
    let mults = [ch.mult_depth(&lo)?, ch.mult_depth(&k)?, ch.mult_depth(&hi)?];
    let scale: Count = 1 << (i2 - i1 - 2);
    Ok(ChainViolation {
        block,
        i1,
        i2,
        hole: nodes_to_json(j0),
        depths: [lo, k, hi],
        mults,
        expected: [3 * scale, 2 * scale, 2 * scale],
    })
}
