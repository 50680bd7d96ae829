//! Flags and config files, merged into a single job description.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qes_core::poly::parse_rational;
use qes_core::{BranchA, BranchB, CouplingParams, Error, ExponentParams, Result};

use num_rational::BigRational;

#[derive(Debug, Parser)]
#[command(
    name = "qes",
    version,
    about = "Exact QES computations for the BC2 Inozemtsev model"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Check that H and P2 map every basis element of V_d into V_d.
    CheckInvariance,
    /// Emit the commutator [H, P2] on V_d.
    Commutator,
    /// Characteristic polynomial, discriminant and numeric roots at given e-values.
    Spectrum,
    /// Fit the algebraic relation between H and P2 on V_d.
    Relation,
    /// Recompute the two worked examples and compare with stored values.
    ReproduceExamples,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    H,
    P2,
}

/// Value flags are kept as strings so that flags and config-file entries
/// go through the same parser.
#[derive(Debug, Default, Args)]
pub struct Flags {
    /// Read key=value settings from a file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Gauge exponent a (rational, p/q).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b0: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b1: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b2: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b3: Option<String>,

    /// Coupling l (alternative to the exponents).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub l: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub l0: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub l1: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub l2: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub l3: Option<String>,
    /// minus-l (a = -l) or l-plus-one (a = l + 1).
    #[arg(long, global = true)]
    pub branch_a: Option<String>,
    /// minus-half-l (b_i = -l_i/2) or half-l-plus-one (b_i = (l_i + 1)/2).
    #[arg(long, global = true)]
    pub branch_b0: Option<String>,
    #[arg(long, global = true)]
    pub branch_b1: Option<String>,
    #[arg(long, global = true)]
    pub branch_b2: Option<String>,
    #[arg(long, global = true)]
    pub branch_b3: Option<String>,

    /// Basis degree; defaults to d = -(a + b0 + b1 + b2 + b3).
    #[arg(long, global = true)]
    pub d: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub e2: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub e3: Option<String>,
    /// Work on the line e1 = 0, e2 = -e3.
    #[arg(long, global = true)]
    pub example2_constraint: bool,
    /// Backward-error target for numeric roots.
    #[arg(long, global = true)]
    pub precision: Option<String>,
    /// Which operator `spectrum` uses: h or p2.
    #[arg(long, global = true)]
    pub operator: Option<String>,
    /// Search bound "I,J" for `relation`; without it the fixed d=1/d=2 shape is fitted.
    #[arg(long, global = true)]
    pub max_bidegree: Option<String>,
    /// Worker threads for the library (default 1).
    #[arg(long, global = true)]
    pub threads: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

const KEYS: &[&str] = &[
    "a",
    "b0",
    "b1",
    "b2",
    "b3",
    "l",
    "l0",
    "l1",
    "l2",
    "l3",
    "branch-a",
    "branch-b0",
    "branch-b1",
    "branch-b2",
    "branch-b3",
    "d",
    "e2",
    "e3",
    "example2-constraint",
    "precision",
    "operator",
    "max-bidegree",
    "threads",
    "out",
    "format",
];

impl Flags {
    fn entries(&self) -> BTreeMap<&'static str, String> {
        let values: [(&str, Option<String>); 25] = [
            ("a", self.a.clone()),
            ("b0", self.b0.clone()),
            ("b1", self.b1.clone()),
            ("b2", self.b2.clone()),
            ("b3", self.b3.clone()),
            ("l", self.l.clone()),
            ("l0", self.l0.clone()),
            ("l1", self.l1.clone()),
            ("l2", self.l2.clone()),
            ("l3", self.l3.clone()),
            ("branch-a", self.branch_a.clone()),
            ("branch-b0", self.branch_b0.clone()),
            ("branch-b1", self.branch_b1.clone()),
            ("branch-b2", self.branch_b2.clone()),
            ("branch-b3", self.branch_b3.clone()),
            ("d", self.d.clone()),
            ("e2", self.e2.clone()),
            ("e3", self.e3.clone()),
            (
                "example2-constraint",
                self.example2_constraint.then(|| "true".to_string()),
            ),
            ("precision", self.precision.clone()),
            ("operator", self.operator.clone()),
            ("max-bidegree", self.max_bidegree.clone()),
            ("threads", self.threads.clone()),
            ("out", self.out.as_ref().map(|p| p.display().to_string())),
            (
                "format",
                self.format.map(|f| match f {
                    Format::Json => "json".to_string(),
                    Format::Csv => "csv".to_string(),
                }),
            ),
        ];
        values
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| (KEYS[KEYS.iter().position(|x| *x == k).unwrap()], v)))
            .collect()
    }
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<&'static str, String>> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", n + 1)))?;
        let k = k.trim().trim_start_matches("--").replace('_', "-");
        let key = KEYS
            .iter()
            .find(|x| **x == k)
            .ok_or_else(|| Error::Parse(format!("config line {}: unknown key {k:?}", n + 1)))?;
        out.insert(*key, v.trim().to_string());
    }
    Ok(out)
}

/// Where the e-values live.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EValues {
    Symbolic,
    Point {
        e2: BigRational,
        e3: BigRational,
    },
    /// `e1 = 0`, `e2 = -e3`, with `e3` optionally fixed.
    Line {
        e3: Option<BigRational>,
    },
}

#[derive(Debug, Clone)]
pub struct JobConfig {
    pub params: Option<ExponentParams>,
    pub d: Option<u32>,
    pub e_values: EValues,
    pub precision_target: f64,
    pub operator: Operator,
    pub max_bidegree: Option<(usize, usize)>,
    pub threads: usize,
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

impl JobConfig {
    /// The basis degree: the override, else `d` when it is a nonnegative
    /// integer, else `ceil(|d|)`.
    pub fn basis_degree(&self, params: &ExponentParams) -> Result<u32> {
        if let Some(d) = self.d {
            return Ok(d);
        }
        if let Some(d) = params.integral_d() {
            return Ok(d);
        }
        use num_traits::{Signed, ToPrimitive};
        params
            .d()
            .abs()
            .ceil()
            .to_integer()
            .to_u32()
            .ok_or_else(|| Error::InvalidArgument("d is too large".into()))
    }

    pub fn require_params(&self) -> Result<&ExponentParams> {
        self.params.as_ref().ok_or_else(|| {
            Error::InvalidArgument(
                "parameters required: --a --b0 --b1 --b2 --b3, or --l --l0 --l1 --l2 --l3".into(),
            )
        })
    }
}

pub fn resolve(flags: &Flags) -> Result<JobConfig> {
    let mut merged = match &flags.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))
            })?;
            parse_config_file(&text)?
        }
        None => BTreeMap::new(),
    };
    merged.extend(flags.entries());
    from_map(&merged)
}

fn rational(map: &BTreeMap<&str, String>, key: &str) -> Result<Option<BigRational>> {
    map.get(key)
        .map(|s| parse_rational(s).map_err(|e| Error::Parse(format!("--{key}: {e}"))))
        .transpose()
}

fn required(map: &BTreeMap<&str, String>, key: &str) -> Result<BigRational> {
    rational(map, key)?.ok_or_else(|| Error::InvalidArgument(format!("--{key} is required")))
}

fn parsed<T: std::str::FromStr>(map: &BTreeMap<&str, String>, key: &str) -> Result<Option<T>> {
    map.get(key)
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("--{key}: invalid value {s:?}")))
        })
        .transpose()
}

fn params(map: &BTreeMap<&str, String>) -> Result<Option<ExponentParams>> {
    let exps = ["a", "b0", "b1", "b2", "b3"];
    let couplings = ["l", "l0", "l1", "l2", "l3"];
    let has_exps = exps.iter().any(|k| map.contains_key(k));
    let has_couplings = couplings.iter().any(|k| map.contains_key(k));
    match (has_exps, has_couplings) {
        (false, false) => Ok(None),
        (true, true) => Err(Error::InvalidArgument(
            "give either the exponents a, b0..b3 or the couplings l, l0..l3, not both".into(),
        )),
        (true, false) => Ok(Some(ExponentParams::new(
            required(map, "a")?,
            required(map, "b0")?,
            required(map, "b1")?,
            required(map, "b2")?,
            required(map, "b3")?,
        ))),
        (false, true) => {
            let branch_a = match map.get("branch-a").map(String::as_str) {
                None | Some("minus-l") => BranchA::MinusL,
                Some("l-plus-one") => BranchA::LPlusOne,
                Some(other) => {
                    return Err(Error::Parse(format!(
                        "--branch-a: unknown branch {other:?}"
                    )))
                }
            };
            let mut branch_b = [BranchB::MinusHalfL; 4];
            for (i, b) in branch_b.iter_mut().enumerate() {
                let key = format!("branch-b{i}");
                *b = match map.get(key.as_str()).map(String::as_str) {
                    None | Some("minus-half-l") => BranchB::MinusHalfL,
                    Some("half-l-plus-one") => BranchB::HalfLPlusOne,
                    Some(other) => {
                        return Err(Error::Parse(format!("--{key}: unknown branch {other:?}")))
                    }
                };
            }
            let cp = CouplingParams {
                l: required(map, "l")?,
                li: [
                    required(map, "l0")?,
                    required(map, "l1")?,
                    required(map, "l2")?,
                    required(map, "l3")?,
                ],
                branch_a,
                branch_b,
            };
            Ok(Some(cp.to_exponents()))
        }
    }
}

pub fn from_map(map: &BTreeMap<&str, String>) -> Result<JobConfig> {
    let line = match map.get("example2-constraint").map(|s| s.trim()) {
        None | Some("false") => false,
        Some("true") => true,
        Some(other) => {
            return Err(Error::Parse(format!(
                "--example2-constraint: expected true or false, got {other:?}"
            )))
        }
    };
    let e2 = rational(map, "e2")?;
    let e3 = rational(map, "e3")?;
    let e_values = match (line, e2, e3) {
        (true, Some(e2), Some(e3)) if e2 != -e3.clone() => {
            return Err(Error::InvalidArgument(
                "--example2-constraint requires e2 = -e3".into(),
            ))
        }
        (true, _, e3) => EValues::Line { e3 },
        (false, Some(e2), Some(e3)) => EValues::Point { e2, e3 },
        (false, None, None) => EValues::Symbolic,
        (false, _, _) => {
            return Err(Error::InvalidArgument(
                "--e2 and --e3 must be given together".into(),
            ))
        }
    };
    let operator = match map.get("operator").map(String::as_str) {
        None | Some("h") => Operator::H,
        Some("p2") => Operator::P2,
        Some(other) => {
            return Err(Error::Parse(format!(
                "--operator: expected h or p2, got {other:?}"
            )))
        }
    };
    let max_bidegree = match map.get("max-bidegree") {
        None => None,
        Some(s) => {
            let bad = || Error::Parse(format!("--max-bidegree: expected I,J, got {s:?}"));
            let (i, j) = s.split_once(',').ok_or_else(bad)?;
            Some((
                i.trim().parse().map_err(|_| bad())?,
                j.trim().parse().map_err(|_| bad())?,
            ))
        }
    };
    let format = match map.get("format").map(String::as_str) {
        None | Some("json") => Format::Json,
        Some("csv") => Format::Csv,
        Some(other) => {
            return Err(Error::Parse(format!(
                "--format: expected json or csv, got {other:?}"
            )))
        }
    };
    let precision_target = parsed::<f64>(map, "precision")?.unwrap_or(1e-12);
    if precision_target.is_nan() || precision_target <= 0.0 {
        return Err(Error::InvalidArgument(
            "--precision must be positive".into(),
        ));
    }
    let threads = parsed::<usize>(map, "threads")?.unwrap_or(1).max(1);
    Ok(JobConfig {
        params: params(map)?,
        d: parsed(map, "d")?,
        e_values,
        precision_target,
        operator,
        max_bidegree,
        threads,
        output_path: map.get("out").map(PathBuf::from),
        format,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qes_core::poly::{int, rat};

    fn map(pairs: &[(&'static str, &str)]) -> BTreeMap<&'static str, String> {
        pairs.iter().map(|(k, v)| (*k, v.to_string())).collect()
    }

    #[test]
    fn exponents_and_defaults() {
        let cfg = from_map(&map(&[
            ("a", "2"),
            ("b0", "1"),
            ("b1", "-1"),
            ("b2", "-3"),
            ("b3", "0"),
        ]))
        .unwrap();
        let p = cfg.params.as_ref().unwrap();
        assert_eq!(cfg.basis_degree(p).unwrap(), 1);
        assert_eq!(cfg.e_values, EValues::Symbolic);
        assert_eq!(cfg.format, Format::Json);
        assert_eq!(cfg.threads, 1);
    }

    #[test]
    fn non_integral_d_rounds_up() {
        let cfg = from_map(&map(&[
            ("a", "2"),
            ("b0", "1"),
            ("b1", "-1"),
            ("b2", "-3"),
            ("b3", "1/7"),
        ]))
        .unwrap();
        // d = 6/7
        assert_eq!(cfg.basis_degree(cfg.params.as_ref().unwrap()).unwrap(), 1);
    }

    #[test]
    fn couplings_with_branches() {
        let cfg = from_map(&map(&[
            ("l", "3"),
            ("l0", "2"),
            ("l1", "1"),
            ("l2", "0"),
            ("l3", "4"),
            ("branch-a", "l-plus-one"),
            ("branch-b3", "half-l-plus-one"),
        ]))
        .unwrap();
        let p = cfg.params.unwrap();
        assert_eq!(p.a, int(4));
        assert_eq!(p.b, [int(-1), rat(-1, 2), int(0), rat(5, 2)]);
    }

    #[test]
    fn rejects_floats_and_mixed_inputs() {
        assert!(from_map(&map(&[("a", "0.5")])).is_err());
        assert!(from_map(&map(&[("a", "1"), ("l", "1")])).is_err());
        assert!(from_map(&map(&[("e2", "1")])).is_err());
        assert!(from_map(&map(&[
            ("example2-constraint", "true"),
            ("e2", "1"),
            ("e3", "1")
        ]))
        .is_err());
    }

    #[test]
    fn config_file_syntax() {
        let m =
            parse_config_file("# sweep\na = 2\n--b0=1 # trailing\nexample2_constraint = true\n")
                .unwrap();
        assert_eq!(m["a"], "2");
        assert_eq!(m["b0"], "1");
        assert_eq!(m["example2-constraint"], "true");
        assert!(parse_config_file("bogus = 1").is_err());
        assert!(parse_config_file("a").is_err());
    }
}
