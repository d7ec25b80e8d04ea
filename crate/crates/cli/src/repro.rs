//! Regenerates the worked examples and diffs them against a fixture file.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::json;

use verma_lc::cert::{is_discretely_log_concave, DirectionSet, Witness};
use verma_lc::characters::{
    chain_violation, dlc_scan, hovm_single_hole_mult, hovm_sl2_blocks_mult, verma_mult, HoleFamily, ModuleKind, ModuleSpec,
    WeightBox,
};
use verma_lc::flow::{ehrhart_volume_oracle, lidskii_volume, FlowInstance};
use verma_lc::kpf::{kpf_g2, DirectedMultigraph};
use verma_lc::lie::{hovm_dlc_predicted, jantzen_simple, Node, NodeSet, SemisimpleSpec, Weight};
use verma_lc::poly::{fmt_rational, parse_rational};
use verma_lc::symfun::{
    coeff_log_concavity, hall_littlewood, jack, jack_okounkov_symbolic, macdonald, okounkov_difference, Family,
};
use verma_lc::{Error, Rational, SparsePoly};

use crate::input::{CliError, CliResult};
use crate::output::Report;

pub const CASE_IDS: [&str; 14] = [
    "g2",
    "table1",
    "huh-product",
    "adlc-qs",
    "adlc-pbt",
    "jack-lc",
    "mac-lc",
    "hl-lc",
    "okounkov-jack",
    "okounkov-mac",
    "hovm-sl4",
    "lidskii-k3",
    "jantzen-sl3",
    "sl2-blocks",
];

pub const DEFAULT_FIXTURES: &str = include_str!("../fixtures/repro.json");

#[derive(Debug, Deserialize)]
struct Fixtures {
    cases: Vec<Case>,
}

#[derive(Debug, Deserialize)]
struct Case {
    id: String,
    title: String,
    expected: Vec<Expected>,
}

#[derive(Debug, Deserialize)]
struct Expected {
    key: String,
    value: String,
    provenance: String,
}

type Values = Vec<(String, String)>;

fn entry(k: impl Into<String>, v: impl ToString) -> (String, String) {
    (k.into(), v.to_string())
}

fn r(s: &str) -> Rational {
    parse_rational(s).expect("literal rationals parse")
}

fn spec(b: &[usize]) -> CliResult<SemisimpleSpec> {
    Ok(SemisimpleSpec::new(b.to_vec())?)
}

fn nodes(v: &[(usize, usize)]) -> NodeSet {
    v.iter().map(|&(b, i)| Node::new(b, i)).collect()
}

fn poly(text: &str, m: usize) -> CliResult<SparsePoly> {
    Ok(SparsePoly::parse_text(text, Some(m))?)
}

fn three_term(w: Option<Witness>) -> CliResult<(String, String, String)> {
    match w {
        Some(Witness::ThreeTerm { center, forward, backward, .. }) => Ok((forward, center, backward)),
        other => Err(Error::Internal(format!("expected a three-term witness, got {other:?}")).into()),
    }
}

fn g2() -> CliResult<Values> {
    let v = [kpf_g2(4, 4)?, kpf_g2(5, 5)?, kpf_g2(6, 6)?];
    let cmp = if v[1] * v[1] < v[0] * v[2] { "<" } else { ">=" };
    Ok(vec![
        entry("K(4,4)", v[0]),
        entry("K(5,5)", v[1]),
        entry("K(6,6)", v[2]),
        entry("K(5,5)^2 vs K(4,4)K(6,6)", format!("{} {cmp} {}", v[1] * v[1], v[0] * v[2])),
    ])
}

fn table1() -> CliResult<Values> {
    let s = spec(&[3])?;
    let zero = Weight::zero(&s);
    let inner = zero.sub_depth(&s, &[1, 0, 1]);
    let h = nodes(&[(0, 0), (0, 2)]);
    let mut out = Vec::new();
    for p in 1..=3 {
        let mu = zero.sub_depth(&s, &[1, 1, p]);
        let row = [verma_mult(&s, &zero, &mu)?, verma_mult(&s, &inner, &mu)?, hovm_single_hole_mult(&s, &zero, &h, &mu)?];
        out.push(entry(format!("row p={p}"), format!("{};{};{}", row[0], row[1], row[2])));
    }
    let m = ModuleSpec::new(s.clone(), zero, ModuleKind::HigherOrder(HoleFamily::new(&s, vec![h])?))?;
    let rep = dlc_scan(&m, &WeightBox::around(&[1, 1, 2], 1)?, &DirectionSet::new(4, vec![(2, 3)])?, 1000)?;
    let (f, c, b) = three_term(rep.witness)?;
    out.push(entry("violation along alpha3", format!("{c}^2 < {f}*{b}")));
    Ok(out)
}

fn huh_product() -> CliResult<Values> {
    let p = poly("1 x1^2\n100 x2^2\n1 x3^2\n10 x1 x2\n10 x2 x3\n10 x1 x3", 3)?;
    let h = p.mul(&poly("1 x1\n1 x2\n1 x3", 3)?)?;
    let rep = is_discretely_log_concave(&h, &DirectionSet::new(3, vec![(1, 2)])?)?;
    let at = match &rep.witness {
        Some(Witness::ThreeTerm { at, .. }) => at.clone(),
        _ => Vec::new(),
    };
    let verdict = rep.verdict;
    let (f, c, b) = three_term(rep.witness)?;
    let (f, c, b) = (r(&f), r(&c), r(&b));
    Ok(vec![
        entry("adlc", verdict),
        entry("witness exponent", format!("{at:?}")),
        entry("center^2 vs forward*backward", format!("{} < {}", fmt_rational(&(&c * &c)), fmt_rational(&(&f * &b)))),
    ])
}

fn adlc_verdict(p: &SparsePoly) -> CliResult<bool> {
    Ok(is_discretely_log_concave(p, &DirectionSet::all(p.num_vars()))?.verdict)
}

fn adlc_qs() -> CliResult<Values> {
    let b = r("13/2");
    let (bs, b2) = (fmt_rational(&b), fmt_rational(&(&b * &b)));
    let p = poly(&format!("{b2} x1^2\n1 x2^2\n1 x3^2\n{bs} x1 x2\n{bs} x1 x3\n{bs} x2 x3"), 3)?;
    let q = poly("1 x1^2\n1 x2^2\n1 x3^2\n1 x1 x2\n1 x1 x3\n1 x2 x3", 3)?;
    let pq = p.mul(&q)?;
    Ok(vec![
        entry("x0^2 x1^2", fmt_rational(&pq.coeff(&[2, 2, 0]))),
        entry("x0 x1^2 x2", fmt_rational(&pq.coeff(&[1, 2, 1]))),
        entry("x1^2 x2^2", fmt_rational(&pq.coeff(&[0, 2, 2]))),
        entry("p adlc", adlc_verdict(&p)?),
        entry("q_S adlc", adlc_verdict(&q)?),
        entry("p*q_S adlc", adlc_verdict(&pq)?),
    ])
}

fn adlc_pbt() -> CliResult<Values> {
    // b = 1, t = 5, q = x^2 + 2xy + y^2 (a = 2, c = 1).
    let p = poly("1 x1^2 x2^2\n1 x1^2 x2 x3\n1 x1^2 x3^2\n1 x1 x2^2 x3\n1 x2^2 x3^2\n5 x1 x2 x3^2", 3)?;
    let q = poly("1 x1^2\n2 x1 x2\n1 x2^2", 3)?;
    let pq = p.mul(&q)?;
    Ok(vec![
        entry("x^4 y^2", fmt_rational(&pq.coeff(&[4, 2, 0]))),
        entry("x^3 y^2 z", fmt_rational(&pq.coeff(&[3, 2, 1]))),
        entry("x^2 y^2 z^2", fmt_rational(&pq.coeff(&[2, 2, 2]))),
        entry("p adlc", adlc_verdict(&p)?),
        entry("p*q adlc", adlc_verdict(&pq)?),
    ])
}

fn jack_lc() -> CliResult<Values> {
    let mut out = Vec::new();
    for a in [3, 4, 5] {
        for tau in ["1/4", "1/2", "9/10", "1", "2", "10"] {
            out.push(entry(format!("a={a} tau={tau}"), coeff_log_concavity(&jack(a, 0, &r(tau))?)?.verdict));
        }
    }
    Ok(out)
}

fn mac_lc() -> CliResult<Values> {
    let mut out = Vec::new();
    for (q, t) in [("1/2", "1/3"), ("1/3", "1/2"), ("1/2", "1/2"), ("9/10", "1/10"), ("1/10", "9/10"), ("3", "2")] {
        out.push(entry(format!("q={q} t={t}"), coeff_log_concavity(&macdonald(2, 0, &r(q), &r(t))?)?.verdict));
    }
    Ok(out)
}

fn hl_lc() -> CliResult<Values> {
    let p = hall_littlewood(2, 0, &r("1/2"))?;
    let coeffs: Vec<String> = (0..=2).rev().map(|i| fmt_rational(&p.coeff(&[i, 2 - i]))).collect();
    Ok(vec![
        entry("coefficients", coeffs.join(", ")),
        entry("log-concave t=1/2", coeff_log_concavity(&p)?.verdict),
        entry("log-concave t=0", coeff_log_concavity(&hall_littlewood(2, 0, &r("0"))?)?.verdict),
    ])
}

fn okounkov_jack() -> CliResult<Values> {
    let s = jack_okounkov_symbolic((3, 0), (1, 0), (2, 0))?;
    let mut out = Vec::new();
    for tau in ["1/2", "1", "2"] {
        let t = r(tau);
        let formula = Rational::from_integer(2.into()) * (&t - Rational::from_integer(1.into()))
            / ((&t + Rational::from_integer(1.into())) * (&t + Rational::from_integer(2.into())));
        let symbolic = s.coeffs[3].eval(&t)?;
        let direct = okounkov_difference(&Family::Jack { tau: t.clone() }, (3, 0), (1, 0), (2, 0))?.coeff(&[3, 1]);
        if symbolic != direct || symbolic != formula {
            return Err(Error::Internal(format!("Jack coefficient at τ={tau}: {symbolic} vs {direct} vs {formula}")).into());
        }
        out.push(entry(format!("x^3 y coefficient tau={tau}"), fmt_rational(&direct)));
    }
    Ok(out)
}

fn okounkov_mac() -> CliResult<Values> {
    let d = okounkov_difference(&Family::Macdonald { q: r("0"), t: r("1/2") }, (3, 0), (1, 0), (2, 0))?;
    let mut out = Vec::new();
    for i in (0..=4).rev() {
        out.push(entry(format!("x^{i} y^{}", 4 - i), fmt_rational(&d.coeff(&[i, 4 - i]))));
    }
    Ok(out)
}

fn hovm_sl4() -> CliResult<Values> {
    let s = spec(&[3])?;
    let mut out = Vec::new();
    for h in [vec![(0, 0)], vec![(0, 1)], vec![(0, 2)], vec![(0, 0), (0, 2)]] {
        let name: Vec<String> = h.iter().map(|(_, i)| (i + 1).to_string()).collect();
        out.push(entry(format!("predicted log-concave H={{{}}}", name.join(",")), hovm_dlc_predicted(&s, &nodes(&h))?));
    }
    let f = HoleFamily::new(&s, vec![nodes(&[(0, 0), (0, 2)])])?;
    let c = chain_violation(&s, &Weight::zero(&s), &f)?;
    let fmt = |v: [u128; 3]| format!("{}, {}, {}", v[0], v[1], v[2]);
    out.push(entry("chain multiplicities", fmt(c.mults)));
    out.push(entry("chain predicted", fmt(c.expected)));
    Ok(out)
}

fn lidskii_k3() -> CliResult<Values> {
    let g = DirectedMultigraph::complete(3);
    let vol = lidskii_volume(&g)?;
    let inst = FlowInstance::from_ints(g, &[2, 1])?;
    Ok(vec![
        entry("volume", vol.to_string().replace('x', "a")),
        entry("lidskii at (2,1)", fmt_rational(&vol.evaluate(&inst.netflow)?)),
        entry("oracle at (2,1)", fmt_rational(&ehrhart_volume_oracle(&inst, 3)?)),
    ])
}

fn jantzen_sl3() -> CliResult<Values> {
    let s = spec(&[2])?;
    let j = nodes(&[(0, 0)]);
    let word = |b: bool| if b { "simple" } else { "not simple" };
    let half = Weight::from_h(&s, vec![vec![r("1"), r("-1/2")]])?;
    let two = Weight::from_h_ints(&s, &[vec![1, -2]])?;
    let dom = Weight::from_h_ints(&s, &[vec![1, 1]])?;
    let all: NodeSet = s.nodes().into_iter().collect();
    Ok(vec![
        entry("lambda=(1,-1/2) J={1}", word(jantzen_simple(&s, &half, &j)?)),
        entry("lambda=(1,-2) J={1}", word(jantzen_simple(&s, &two, &j)?)),
        entry("lambda=(1,1) J={1,2}", word(jantzen_simple(&s, &dom, &all)?)),
    ])
}

fn sl2_blocks() -> CliResult<Values> {
    let s = spec(&[1, 1])?;
    let zero = Weight::zero(&s);
    let h = nodes(&[(0, 0), (1, 0)]);
    let mut out = Vec::new();
    for k in [[0, 0], [1, 0], [2, 0], [3, 0], [0, 2], [1, 1]] {
        let mu = zero.sub_depth(&s, &k);
        let a = hovm_sl2_blocks_mult(&s, &zero, &h, &mu)?;
        let b = hovm_single_hole_mult(&s, &zero, &h, &mu)?;
        if a != b {
            return Err(Error::Internal(format!("sl2 blocks at depth {k:?}: {a} vs {b}")).into());
        }
        out.push(entry(format!("depth ({},{})", k[0], k[1]), a));
    }
    Ok(out)
}

fn compute(id: &str) -> CliResult<Values> {
    match id {
        "g2" => g2(),
        "table1" => table1(),
        "huh-product" => huh_product(),
        "adlc-qs" => adlc_qs(),
        "adlc-pbt" => adlc_pbt(),
        "jack-lc" => jack_lc(),
        "mac-lc" => mac_lc(),
        "hl-lc" => hl_lc(),
        "okounkov-jack" => okounkov_jack(),
        "okounkov-mac" => okounkov_mac(),
        "hovm-sl4" => hovm_sl4(),
        "lidskii-k3" => lidskii_k3(),
        "jantzen-sl3" => jantzen_sl3(),
        "sl2-blocks" => sl2_blocks(),
        _ => Err(CliError::Input(format!("unknown repro case '{id}'; known cases: {}", CASE_IDS.join(", ")))),
    }
}

fn load(text: &str) -> CliResult<Vec<Case>> {
    let f: Fixtures = serde_json::from_str(text).map_err(|e| CliError::Core(Error::Parse(format!("fixtures: {e}"))))?;
    for c in &f.cases {
        if !CASE_IDS.contains(&c.id.as_str()) {
            return Err(CliError::Input(format!("fixture case '{}' is not a known case", c.id)));
        }
        if let Some(e) = c.expected.iter().find(|e| !["literature", "computed", "trivial"].contains(&e.provenance.as_str())) {
            return Err(CliError::Input(format!("fixture {}/{}: bad provenance '{}'", c.id, e.key, e.provenance)));
        }
    }
    Ok(f.cases)
}

/// Runs the named cases (all fixture cases when `ids` is empty). Returns the
/// report and whether every value matched; `detailed` keeps every value row
/// instead of a one-line summary per case.
pub fn run(fixtures: &str, ids: &[String], detailed: bool) -> CliResult<(Report, bool)> {
    let cases = load(fixtures)?;
    let selected: Vec<&Case> = if ids.is_empty() {
        cases.iter().collect()
    } else {
        ids.iter()
            .map(|id| {
                if !CASE_IDS.contains(&id.as_str()) {
                    return Err(CliError::Input(format!("unknown repro case '{id}'; known cases: {}", CASE_IDS.join(", "))));
                }
                cases.iter().find(|c| &c.id == id).ok_or_else(|| CliError::Input(format!("no fixture for case '{id}'")))
            })
            .collect::<CliResult<_>>()?
    };
    let mut all_ok = true;
    let mut results = serde_json::Map::new();
    for case in selected {
        let actual: BTreeMap<String, String> = compute(&case.id)?.into_iter().collect();
        let mut rows = Vec::new();
        let mut ok = true;
        for e in &case.expected {
            let got = actual.get(&e.key).cloned();
            let matched = got.as_deref() == Some(e.value.as_str());
            ok &= matched;
            rows.push(json!({
                "key": e.key,
                "expected": e.value,
                "actual": got.unwrap_or_else(|| "<missing>".into()),
                "provenance": e.provenance,
                "match": matched,
            }));
        }
        for k in actual.keys().filter(|k| !case.expected.iter().any(|e| &e.key == *k)) {
            ok = false;
            rows.push(json!({"key": k, "expected": "<absent>", "actual": actual[k], "provenance": "", "match": false}));
        }
        all_ok &= ok;
        let entry = if detailed {
            json!({"title": case.title, "pass": ok, "values": rows})
        } else if ok {
            json!(format!("PASS ({} values)", rows.len()))
        } else {
            let bad: Vec<String> = rows
                .iter()
                .filter(|r| r["match"] == false)
                .map(|r| format!("{}: expected {}, got {}", r["key"].as_str().unwrap_or(""), r["expected"], r["actual"]))
                .collect();
            json!(format!("FAIL {}", bad.join("; ")))
        };
        results.insert(case.id.clone(), entry);
    }
    let report = Report::new().set("cases", serde_json::Value::Object(results)).verdict(all_ok);
    Ok((report, all_ok))
}
