use std::fs;
use std::io::Read;

use verma_lc::characters::{ModuleJson, ModuleSpec};
use verma_lc::kpf::{DirectedMultigraph, GraphJson};
use verma_lc::lie::{SemisimpleSpec, Weight, WeightJson};
use verma_lc::poly::parse_rational;
use verma_lc::{Error, Rational, SparsePoly};

/// Failure classes, each mapped to a fixed exit code.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(Error),
    Mismatch(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Core(Error::Internal(_)) => 3,
            CliError::Input(_) | CliError::Core(_) => 2,
        }
    }

    pub fn class(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Mismatch(_) => "mismatch",
            CliError::Core(e) => match e {
                Error::VarCountMismatch { .. } | Error::DimensionMismatch { .. } => "dimension-mismatch",
                Error::NegativeExponent { .. } | Error::NegativeCoefficient { .. } | Error::NonHomogeneous => {
                    "invalid-polynomial"
                }
                Error::NonSymmetric { .. } | Error::NonSquare => "invalid-matrix",
                Error::InvalidNode(_) => "invalid-node",
                Error::Invalid(_) => "invalid-input",
                Error::Precondition(_) => "precondition",
                Error::NonIntegral(_) => "non-integral",
                Error::DegenerateParameter(_) => "degenerate-parameter",
                Error::BudgetExceeded { .. } => "budget",
                Error::Overflow => "overflow",
                Error::Unsupported(_) => "unsupported",
                Error::Parse(_) => "parse",
                Error::Internal(_) => "internal",
            },
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Input(m) | CliError::Mismatch(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Reads a file, or stdin for `-`.
pub fn read_input(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
    }
}

fn json<T: serde::de::DeserializeOwned>(path: &str) -> CliResult<T> {
    let text = read_input(path)?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Core(Error::Parse(format!("{path}: line {} column {}: {e}", e.line(), e.column()))))
}

pub fn int_list(s: &str) -> CliResult<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .enumerate()
        .map(|(k, t)| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Core(Error::Parse(format!("entry {} of '{s}': '{}' is not an integer", k + 1, t.trim()))))
        })
        .collect()
}

pub fn rat_list(s: &str) -> CliResult<Vec<Rational>> {
    s.split(',').map(|t| rational(t.trim())).collect()
}

pub fn rational(s: &str) -> CliResult<Rational> {
    Ok(parse_rational(s)?)
}

pub fn partition(s: &str) -> CliResult<(i64, i64)> {
    match *int_list(s)?.as_slice() {
        [a, b] if a >= b && b >= 0 => Ok((a, b)),
        [a] if a >= 0 => Ok((a, 0)),
        _ => Err(CliError::Core(Error::Invalid(format!("'{s}' is not a partition with at most two parts")))),
    }
}

/// `"1:1,2:1"` as 1-based `[block, index]` pairs.
pub fn node_pairs(s: &str) -> CliResult<Vec<[usize; 2]>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let (b, i) =
                t.trim().split_once(':').ok_or_else(|| CliError::Core(Error::Parse(format!("node '{t}' is not block:index"))))?;
            let p = |x: &str| {
                x.trim().parse::<usize>().map_err(|_| CliError::Core(Error::Parse(format!("node '{t}' is not block:index"))))
            };
            Ok([p(b)?, p(i)?])
        })
        .collect()
}

/// `"1-2,3-4"` as 0-based pairs from 1-based input.
pub fn index_pairs(s: &str) -> CliResult<Vec<(usize, usize)>> {
    s.split(',')
        .map(|t| {
            let bad = || CliError::Core(Error::Parse(format!("direction '{t}' is not i-j with 1-based indices")));
            let (a, b) = t.trim().split_once('-').ok_or_else(bad)?;
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            if a == 0 || b == 0 {
                return Err(bad());
            }
            Ok((a - 1, b - 1))
        })
        .collect()
}

pub fn one_based(i: usize, what: &str) -> CliResult<usize> {
    i.checked_sub(1).ok_or_else(|| CliError::Core(Error::InvalidNode(format!("{what} index 0; indices are 1-based"))))
}

pub fn graph(path: Option<&str>, complete: Option<usize>) -> CliResult<DirectedMultigraph> {
    match (path, complete) {
        (Some(p), None) => Ok(DirectedMultigraph::from_json(&json::<GraphJson>(p)?)?),
        (None, Some(n)) => Ok(DirectedMultigraph::complete(n)),
        _ => Err(CliError::Input("give exactly one of --graph FILE or --complete N".into())),
    }
}

pub fn poly(path: &str) -> CliResult<SparsePoly> {
    Ok(SparsePoly::parse_any(&read_input(path)?)?)
}

pub fn module(path: &str) -> CliResult<ModuleSpec> {
    Ok(ModuleSpec::from_json(&json::<ModuleJson>(path)?)?)
}

pub fn weight(path: &str) -> CliResult<(SemisimpleSpec, Weight)> {
    Ok(Weight::from_json(&json::<WeightJson>(path)?)?)
}
