use clap::{Args, Subcommand, ValueEnum};
use itertools::Itertools;
use serde_json::{json, Value};

use verma_lc::cert::{
    continuous_lc_spot_check, is_discretely_log_concave, is_lorentzian, is_mconvex, CertificationReport, DirectionSet,
};
use verma_lc::characters::{
    chain_violation, dlc_scan, parabolic_char_polynomial, root_directions, scan_log_concavity, ModuleKind, WeightBox,
};
use verma_lc::flow::{af_check, ehrhart_volume_oracle, kpf_dlc_via_af, lattice_point_count, lidskii_volume, FlowInstance};
use verma_lc::kpf::{kpf_enumerate, kpf_g2, shifted_char_polynomial_capped, KpfCounter, PosRootList};
use verma_lc::lie::{
    hovm_dlc_predicted, is_antidominant, j_lambda, jantzen_simple, nodes_from_json, nodes_to_json, NodeSet, SemisimpleSpec,
};
use verma_lc::poly::fmt_rational;
use verma_lc::symfun::{coeff_log_concavity, evaluation_report, okounkov_difference, specialization_check, Family};
use verma_lc::{Error, SparsePoly};

use crate::input::{self, CliError, CliResult};
use crate::output::Report;

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Graph JSON file with 1-based edges `[i, j, multiplicity]`.
    #[arg(long, conflicts_with = "complete")]
    graph: Option<String>,
    /// Use the complete graph on N vertices.
    #[arg(long)]
    complete: Option<usize>,
}

impl GraphArgs {
    fn load(&self) -> CliResult<verma_lc::kpf::DirectedMultigraph> {
        input::graph(self.graph.as_deref(), self.complete)
    }
}

#[derive(Subcommand, Debug)]
pub enum KpfCmd {
    /// K_G(v) for a netflow vector v summing to zero.
    Count {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// The G2 partition function at a·α1 + b·α2.
    G2 { a: i64, b: i64 },
    /// List the G2 decompositions, up to --limit of them.
    G2List { a: i64, b: i64 },
    /// Shifted characteristic polynomial of a graph.
    Poly {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        /// Also certify the normalization as Lorentzian.
        #[arg(long)]
        certify: bool,
    },
    /// Log-concavity of K_G over |v_i| ≤ radius along every e_i − e_j.
    Scan {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long)]
        radius: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum CharCmd {
    /// Weight multiplicity at depth k (λ − μ = Σ k_i α_i).
    Mult {
        #[arg(long)]
        module: String,
        #[arg(long, allow_hyphen_values = true)]
        depth: String,
    },
    /// Log-concavity scan of the character over a box of depths.
    Scan {
        #[arg(long)]
        module: String,
        #[arg(long)]
        radius: i64,
        /// Scan center ± radius instead of [0, radius].
        #[arg(long, allow_hyphen_values = true)]
        center: Option<String>,
        /// 1-based ε-index pairs such as `2-3`; default all in-block roots.
        #[arg(long)]
        dirs: Option<String>,
    },
    /// Finite polynomial x^{λ+δ}·char, for Verma, findim and parabolic modules.
    Poly {
        #[arg(long)]
        module: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        certify: bool,
    },
    /// The predicted log-concavity violation of a higher-order Verma module.
    Chain {
        #[arg(long)]
        module: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum CertCmd {
    Lorentzian {
        file: String,
    },
    Mconvex {
        file: String,
    },
    Dlc {
        file: String,
        /// 1-based variable pairs such as `1-2,2-3`; default all pairs.
        #[arg(long)]
        dirs: Option<String>,
    },
    Normalize {
        file: String,
    },
    /// Pointwise continuous log-concavity.
    Spot {
        file: String,
        #[arg(long)]
        point: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum FlowCmd {
    /// Lidskii volume polynomial in a1..an.
    Volume {
        #[command(flatten)]
        g: GraphArgs,
    },
    /// Lattice points of the flow polytope.
    Count {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long, allow_hyphen_values = true)]
        netflow: String,
    },
    /// Volume from lattice-point counts of dilations, compared with Lidskii.
    Oracle {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long, allow_hyphen_values = true)]
        netflow: String,
    },
    /// Alexandrov–Fenchel at a weak composition r, 1-based i < j.
    Af {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long)]
        r: String,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// K_G log-concavity at v along e_i − e_j through mixed volumes.
    Pad {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum FamilyName {
    Schur,
    Hl,
    Jack,
    Mac,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
}

impl FamilyArgs {
    fn family(&self) -> CliResult<Family> {
        let need = |x: &Option<String>, name: &str| match x {
            Some(s) => input::rational(s),
            None => Err(CliError::Input(format!("--{name} is required for this family"))),
        };
        Ok(match self.family {
            FamilyName::Schur => Family::Schur,
            FamilyName::Hl => Family::HallLittlewood { t: need(&self.t, "t")? },
            FamilyName::Jack => Family::Jack { tau: need(&self.tau, "tau")? },
            FamilyName::Mac => Family::Macdonald { q: need(&self.q, "q")?, t: need(&self.t, "t")? },
        })
    }
}

#[derive(Subcommand, Debug)]
pub enum SymCmd {
    /// The two-variable polynomial P_λ(x, y).
    Poly {
        #[command(flatten)]
        f: FamilyArgs,
        #[arg(long)]
        partition: String,
    },
    /// Coefficient log-concavity of P_λ(x, y).
    Lc {
        #[command(flatten)]
        f: FamilyArgs,
        #[arg(long)]
        partition: String,
    },
    /// P_ν² − P_λ P_μ for λ + μ = 2ν, optionally evaluated at points `x,y;x,y`.
    Okounkov {
        #[command(flatten)]
        f: FamilyArgs,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        points: Option<String>,
    },
    /// Macdonald specializations at sample points `q,t;q,t`.
    Specialize {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        samples: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum LieCmd {
    /// Simplicity of the parabolic Verma module M(λ, J).
    Jantzen {
        #[arg(long)]
        weight: String,
        /// 1-based `block:index` nodes.
        #[arg(long, default_value = "")]
        j: String,
    },
    Antidominant {
        #[arg(long)]
        weight: String,
    },
    /// The largest J with λ dominant integral on J.
    Jlambda {
        #[arg(long)]
        weight: String,
    },
    /// Predicted log-concavity of the higher-order Verma module for one hole.
    Predict {
        /// Block ranks, e.g. `1,2` for sl2 × sl3.
        #[arg(long)]
        blocks: String,
        #[arg(long)]
        hole: String,
    },
}

fn report_value(r: &CertificationReport) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

fn cert_report(r: CertificationReport) -> Report {
    Report::new().set("report", report_value(&r)).verdict(r.verdict)
}

fn poly_value(p: &SparsePoly) -> Value {
    Value::from(p.to_text().trim_end())
}

fn check_len(v: &[i64], n: usize) -> CliResult<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: v.len() }.into());
    }
    Ok(())
}

pub fn kpf(cmd: &KpfCmd, limit: usize) -> CliResult<Report> {
    match cmd {
        KpfCmd::Count { g, vector } => {
            let g = g.load()?;
            let v = input::int_list(vector)?;
            check_len(&v, g.num_vertices())?;
            let n = KpfCounter::new(g).count(&v)?;
            Ok(Report::new().set("vector", json!(v)).set("count", n.to_string()))
        }
        KpfCmd::G2 { a, b } => Ok(Report::new().set("a", *a).set("b", *b).set("count", kpf_g2(*a, *b)?.to_string())),
        KpfCmd::G2List { a, b } => {
            let roots = PosRootList::g2();
            let list = kpf_enumerate(&roots, &[*a, *b], limit)?;
            Ok(Report::new()
                .set("roots", json!(roots.roots()))
                .set("count", list.len().to_string())
                .set("decompositions", json!(list)))
        }
        KpfCmd::Poly { g, base, certify } => {
            let g = g.load()?;
            let base = input::int_list(base)?;
            let p = shifted_char_polynomial_capped(&g, &base, limit)?;
            let mut r = Report::new().set("terms", p.len()).set("polynomial", poly_value(&p));
            if *certify {
                let c = is_lorentzian(&p.normalize());
                r = r.set("lorentzian", report_value(&c)).verdict(c.verdict);
            }
            Ok(r)
        }
        KpfCmd::Scan { g, radius } => {
            let g = g.load()?;
            let n1 = g.num_vertices();
            let side = (2 * radius + 1).max(0) as u128;
            if n1 >= 2 && side.checked_pow(n1 as u32 - 1).is_none_or(|s| s > limit as u128) {
                return Err(Error::BudgetExceeded { what: "scan box points", limit }.into());
            }
            let points: Vec<Vec<i64>> = if n1 < 2 {
                vec![vec![0; n1]]
            } else {
                (0..n1 - 1)
                    .map(|_| -radius..=*radius)
                    .multi_cartesian_product()
                    .map(|mut v| {
                        let s: i64 = v.iter().sum();
                        v.push(-s);
                        v
                    })
                    .filter(|v| v[n1 - 1].abs() <= *radius)
                    .collect()
            };
            let mut dirs = Vec::new();
            for i in 0..n1 {
                for j in i + 1..n1 {
                    let mut d = vec![0i64; n1];
                    d[i] = 1;
                    d[j] = -1;
                    dirs.push(d);
                }
            }
            let mut counter = KpfCounter::new(g);
            let n = points.len();
            let rep = scan_log_concavity(points, &dirs, |v| counter.count(v))?;
            Ok(Report::new().set("points", n).set("report", report_value(&rep)).verdict(rep.verdict))
        }
    }
}

pub fn character(cmd: &CharCmd, limit: usize) -> CliResult<Report> {
    match cmd {
        CharCmd::Mult { module, depth } => {
            let m = input::module(module)?;
            let k = input::int_list(depth)?;
            check_len(&k, m.algebra.rank())?;
            let mult = m.character()?.mult_depth(&k)?;
            Ok(Report::new().set("depth", json!(k)).set("multiplicity", mult.to_string()))
        }
        CharCmd::Scan { module, radius, center, dirs } => {
            let m = input::module(module)?;
            let bx = match center {
                Some(c) => WeightBox::around(&input::int_list(c)?, *radius)?,
                None => WeightBox::radius(m.algebra.rank(), *radius)?,
            };
            let dirs = match dirs {
                Some(d) => DirectionSet::new(m.algebra.num_eps_vars(), input::index_pairs(d)?)?,
                None => root_directions(&m.algebra),
            };
            let rep = dlc_scan(&m, &bx, &dirs, limit)?;
            Ok(Report::new().set("box", json!({"lo": bx.lo, "hi": bx.hi})).set("report", report_value(&rep)).verdict(rep.verdict))
        }
        CharCmd::Poly { module, delta, certify } => {
            let m = input::module(module)?;
            let j: NodeSet = match &m.kind {
                ModuleKind::Verma => NodeSet::new(),
                ModuleKind::FinDim => m.algebra.nodes().into_iter().collect(),
                ModuleKind::Parabolic(j) => j.clone(),
                ModuleKind::HigherOrder(_) => {
                    return Err(Error::Unsupported("character polynomials of higher-order Verma modules".into()).into())
                }
            };
            let p = parabolic_char_polynomial(&m.algebra, &m.lambda, &j, &input::int_list(delta)?)?;
            let mut r = Report::new().set("terms", p.len()).set("polynomial", poly_value(&p));
            if *certify {
                let c = is_lorentzian(&p.normalize());
                r = r.set("lorentzian", report_value(&c)).verdict(c.verdict);
            }
            Ok(r)
        }
        CharCmd::Chain { module } => {
            let m = input::module(module)?;
            let ModuleKind::HigherOrder(f) = &m.kind else {
                return Err(Error::Invalid("chain needs a higher_order module".into()).into());
            };
            let c = chain_violation(&m.algebra, &m.lambda, f)?;
            if c.mults != c.expected {
                return Err(
                    Error::Internal(format!("multiplicities {:?} differ from the predicted {:?}", c.mults, c.expected)).into()
                );
            }
            let violates = c.violates();
            Ok(Report::new()
                .set("chain", serde_json::to_value(&c).expect("serializes"))
                .set("violation", violates)
                .verdict(!violates))
        }
    }
}

pub fn cert(cmd: &CertCmd) -> CliResult<Report> {
    Ok(match cmd {
        CertCmd::Lorentzian { file } => cert_report(is_lorentzian(&input::poly(file)?)),
        CertCmd::Mconvex { file } => cert_report(is_mconvex(&input::poly(file)?.support())?),
        CertCmd::Dlc { file, dirs } => {
            let p = input::poly(file)?;
            let dirs = match dirs {
                Some(d) => DirectionSet::new(p.num_vars(), input::index_pairs(d)?)?,
                None => DirectionSet::all(p.num_vars()),
            };
            cert_report(is_discretely_log_concave(&p, &dirs)?)
        }
        CertCmd::Normalize { file } => Report::new().set("polynomial", poly_value(&input::poly(file)?.normalize())),
        CertCmd::Spot { file, point } => cert_report(continuous_lc_spot_check(&input::poly(file)?, &input::rat_list(point)?)?),
    })
}

pub fn flow(cmd: &FlowCmd) -> CliResult<Report> {
    match cmd {
        FlowCmd::Volume { g } => {
            let p = lidskii_volume(&g.load()?)?;
            Ok(Report::new().set("volume", poly_value(&p)))
        }
        FlowCmd::Count { g, netflow } => {
            let inst = FlowInstance::from_ints(g.load()?, &input::int_list(netflow)?)?;
            Ok(Report::new().set("lattice_points", lattice_point_count(&inst)?.to_string()))
        }
        FlowCmd::Oracle { g, netflow } => {
            let g = g.load()?;
            let a = input::int_list(netflow)?;
            let n = g.num_vertices().saturating_sub(1);
            let d = g.edge_count().saturating_sub(n);
            let inst = FlowInstance::from_ints(g.clone(), &a)?;
            let oracle = ehrhart_volume_oracle(&inst, d + 2)?;
            let vol = lidskii_volume(&g)?;
            let lidskii = if vol.is_zero() { verma_lc::poly::rat(0) } else { vol.evaluate(&inst.netflow)? };
            let agree = lidskii == oracle;
            Ok(Report::new()
                .set("oracle", fmt_rational(&oracle))
                .set("lidskii", fmt_rational(&lidskii))
                .set("agree", agree)
                .verdict(agree))
        }
        FlowCmd::Af { g, r, i, j } => {
            let rep = af_check(&g.load()?, &input::int_list(r)?, input::one_based(*i, "i")?, input::one_based(*j, "j")?)?;
            Ok(cert_report(rep))
        }
        FlowCmd::Pad { g, vector, i, j } => {
            let rep =
                kpf_dlc_via_af(&g.load()?, &input::int_list(vector)?, input::one_based(*i, "i")?, input::one_based(*j, "j")?)?;
            Ok(cert_report(rep))
        }
    }
}

fn points(s: &str) -> CliResult<Vec<Vec<verma_lc::Rational>>> {
    s.split(';').map(input::rat_list).collect()
}

pub fn sym(cmd: &SymCmd) -> CliResult<Report> {
    match cmd {
        SymCmd::Poly { f, partition } => {
            let (a, b) = input::partition(partition)?;
            Ok(Report::new().set("polynomial", poly_value(&f.family()?.eval(a, b)?)))
        }
        SymCmd::Lc { f, partition } => {
            let (a, b) = input::partition(partition)?;
            let p = f.family()?.eval(a, b)?;
            let rep = coeff_log_concavity(&p)?;
            Ok(cert_report(rep).set("polynomial", poly_value(&p)))
        }
        SymCmd::Okounkov { f, lambda, mu, nu, points: pts } => {
            let d = okounkov_difference(&f.family()?, input::partition(lambda)?, input::partition(mu)?, input::partition(nu)?)?;
            let monomial_positive = d.terms().all(|(_, c)| *c >= verma_lc::Rational::from_integer(0.into()));
            let mut r = Report::new().set("difference", poly_value(&d)).set("monomial_positive", monomial_positive);
            r = match pts {
                Some(p) => {
                    let rep = evaluation_report(&d, &points(p)?)?;
                    r.set("evaluation", report_value(&rep)).verdict(rep.verdict)
                }
                None => r.verdict(monomial_positive),
            };
            Ok(r)
        }
        SymCmd::Specialize { partition, samples } => {
            let (a, b) = input::partition(partition)?;
            let samples: Vec<(verma_lc::Rational, verma_lc::Rational)> = points(samples)?
                .into_iter()
                .map(|p| match p.as_slice() {
                    [q, t] => Ok((q.clone(), t.clone())),
                    _ => Err(CliError::Core(Error::DimensionMismatch { expected: 2, got: p.len() })),
                })
                .collect::<CliResult<_>>()?;
            Ok(cert_report(specialization_check(a, b, &samples)?))
        }
    }
}

fn spec_from_blocks(s: &str) -> CliResult<SemisimpleSpec> {
    let b = input::int_list(s)?;
    if b.iter().any(|&x| x < 1) {
        return Err(Error::Invalid(format!("block ranks must be positive: '{s}'")).into());
    }
    Ok(SemisimpleSpec::new(b.into_iter().map(|x| x as usize).collect())?)
}

pub fn lie(cmd: &LieCmd) -> CliResult<Report> {
    match cmd {
        LieCmd::Jantzen { weight, j } => {
            let (s, l) = input::weight(weight)?;
            let j = nodes_from_json(&s, &input::node_pairs(j)?)?;
            let simple = jantzen_simple(&s, &l, &j)?;
            Ok(Report::new().set("J", json!(nodes_to_json(&j))).set("simple", simple).verdict(simple))
        }
        LieCmd::Antidominant { weight } => {
            let (s, l) = input::weight(weight)?;
            let a = is_antidominant(&s, &l);
            Ok(Report::new().set("antidominant", a).verdict(a))
        }
        LieCmd::Jlambda { weight } => {
            let (s, l) = input::weight(weight)?;
            Ok(Report::new().set("J", json!(nodes_to_json(&j_lambda(&s, &l)))))
        }
        LieCmd::Predict { blocks, hole } => {
            let s = spec_from_blocks(blocks)?;
            let h = nodes_from_json(&s, &input::node_pairs(hole)?)?;
            let p = hovm_dlc_predicted(&s, &h)?;
            Ok(Report::new().set("log_concave", p).verdict(p))
        }
    }
}
