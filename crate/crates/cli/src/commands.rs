//! The subcommands. Each returns the rendered output and the exit code.

use qes_core::poly::fmt_rational;
use qes_core::{
    build_h_hat, build_p2_hat, commutator, find_minimal_relation, fit_relation, matrix_of,
    spectrum, BasisVd, DiffOperator, EDomain, Error, ExponentParams, OpMatrix, Poly,
    RelationCoefficients, Result,
};
use serde_json::{json, Value};

use crate::config::{Command, EValues, Format, JobConfig, Operator};
use crate::golden::EXAMPLES;
use crate::report::{csv_text, error_json, to_json_text, EXIT_INVARIANCE, EXIT_OK, EXIT_RELATION};

pub struct Output {
    pub text: String,
    pub exit_code: i32,
    /// One-line human summary, printed to stderr.
    pub summary: Option<String>,
}

pub fn run(command: Command, cfg: &JobConfig) -> Result<Output> {
    match command {
        Command::CheckInvariance => check_invariance(cfg),
        Command::Commutator => commutator_cmd(cfg),
        Command::Spectrum => spectrum_cmd(cfg),
        Command::Relation => relation_cmd(cfg),
        Command::ReproduceExamples => reproduce_examples(cfg),
    }
}

fn params_json(p: &ExponentParams) -> Value {
    json!({
        "a": fmt_rational(&p.a),
        "b0": fmt_rational(&p.b[0]),
        "b1": fmt_rational(&p.b[1]),
        "b2": fmt_rational(&p.b[2]),
        "b3": fmt_rational(&p.b[3]),
        "d": fmt_rational(&p.d()),
    })
}

fn render(cfg: &JobConfig, json: Value, header: &[&str], rows: Vec<Vec<String>>) -> String {
    match cfg.format {
        Format::Json => to_json_text(&json),
        Format::Csv => csv_text(header, &rows),
    }
}

fn matrices(p: &ExponentParams, basis: &BasisVd) -> Result<(OpMatrix, OpMatrix)> {
    Ok((
        matrix_of(&build_h_hat(p), basis)?,
        matrix_of(&build_p2_hat(p), basis)?,
    ))
}

fn check_element(op: &DiffOperator, basis: &BasisVd, j: usize) -> Result<()> {
    op.apply(&basis.element_poly(j))
        .and_then(|img| basis.to_coordinates(&img))
        .map(|_| ())
        .map_err(|e| Error::BasisElement {
            element: basis.elements[j],
            source: Box::new(e),
        })
}

fn check_invariance(cfg: &JobConfig) -> Result<Output> {
    let p = cfg.require_params()?;
    let d = cfg.basis_degree(p)?;
    let basis = BasisVd::new(d);
    let ops = [("H", build_h_hat(p)), ("P2", build_p2_hat(p))];
    let mut elements = Vec::new();
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    let mut invariant = [true, true];
    for (j, &(m1, m2)) in basis.elements.iter().enumerate() {
        let mut entry = json!({ "element": [m1, m2] });
        let mut row = vec![format!("m_({m1},{m2})")];
        for (k, (name, op)) in ops.iter().enumerate() {
            let status = match check_element(op, &basis, j) {
                Ok(()) => "ok".to_string(),
                Err(e) => {
                    invariant[k] = false;
                    let mut v = error_json(&e);
                    v["operator"] = json!(name);
                    violations.push(v);
                    e.root_cause().to_string()
                }
            };
            entry[name.to_lowercase()] = json!(status);
            row.push(status);
        }
        elements.push(entry);
        rows.push(row);
    }
    let all_ok = invariant.iter().all(|x| *x);
    let summary = if all_ok {
        format!("d={d}, V_{d} invariant under H and P2: OK")
    } else {
        let failing: Vec<_> = ops
            .iter()
            .zip(invariant)
            .filter(|(_, ok)| !ok)
            .map(|((n, _), _)| *n)
            .collect();
        format!(
            "d={d}, V_{d} not invariant under {}: VIOLATION",
            failing.join(" and ")
        )
    };
    let out = json!({
        "params": params_json(p),
        "d": d,
        "dimension": basis.len(),
        "invariant": { "h": invariant[0], "p2": invariant[1] },
        "elements": elements,
        "violations": violations,
        "message": summary,
    });
    Ok(Output {
        text: render(cfg, out, &["element", "h", "p2"], rows),
        exit_code: if all_ok { EXIT_OK } else { EXIT_INVARIANCE },
        summary: Some(summary),
    })
}

/// Restricts or specializes symbolic entries as the e-values request.
fn apply_e_values(m: &OpMatrix, e: &EValues) -> OpMatrix {
    match e {
        EValues::Symbolic => m.clone(),
        EValues::Line { e3: None } => m.restrict_to_line(),
        EValues::Line { e3: Some(e3) } => specialized(m, &-e3.clone(), e3),
        EValues::Point { e2, e3 } => specialized(m, e2, e3),
    }
}

fn specialized(
    m: &OpMatrix,
    e2: &num_rational::BigRational,
    e3: &num_rational::BigRational,
) -> OpMatrix {
    let mut out = m.clone();
    for x in out.entries.iter_mut().flatten() {
        *x = x.specialize(e2, e3);
    }
    out
}

fn matrix_rows(m: &OpMatrix) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for (r, row) in m.entries.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            let (n1, n2) = m.basis.elements[r];
            let (m1, m2) = m.basis.elements[c];
            rows.push(vec![
                format!("m_({n1},{n2})"),
                format!("m_({m1},{m2})"),
                x.to_string(),
            ]);
        }
    }
    rows
}

fn commutator_cmd(cfg: &JobConfig) -> Result<Output> {
    let p = cfg.require_params()?;
    let d = cfg.basis_degree(p)?;
    let (h, p2) = matrices(p, &BasisVd::new(d))?;
    let c = apply_e_values(&commutator(&h, &p2)?, &cfg.e_values);
    let mut out = c.to_json();
    out["params"] = params_json(p);
    out["is_zero"] = json!(c.is_zero());
    let summary = format!(
        "d={d}, [H, P2] {}",
        if c.is_zero() { "= 0" } else { "is nonzero" }
    );
    Ok(Output {
        text: render(cfg, out, &["row", "column", "entry"], matrix_rows(&c)),
        exit_code: EXIT_OK,
        summary: Some(summary),
    })
}

fn spectrum_cmd(cfg: &JobConfig) -> Result<Output> {
    let p = cfg.require_params()?;
    let d = cfg.basis_degree(p)?;
    let (e2, e3) = match &cfg.e_values {
        EValues::Point { e2, e3 } => (e2.clone(), e3.clone()),
        EValues::Line { e3: Some(e3) } => (-e3.clone(), e3.clone()),
        _ => return Err(Error::InvalidArgument(
            "spectrum needs numeric e-values: --e2 and --e3, or --example2-constraint with --e3"
                .into(),
        )),
    };
    let (name, op) = match cfg.operator {
        Operator::H => ("h", build_h_hat(p)),
        Operator::P2 => ("p2", build_p2_hat(p)),
    };
    let m = matrix_of(&op, &BasisVd::new(d))?;
    let report = spectrum(&m, &e2, &e3, cfg.precision_target)?;
    let cp = qes_core::UPoly::new(
        report
            .charpoly
            .iter()
            .map(|s| qes_core::poly::parse_rational(s))
            .collect::<Result<Vec<_>>>()?,
    );
    let text = match cfg.format {
        Format::Csv => report.to_csv(),
        Format::Json => to_json_text(&json!({
            "params": params_json(p),
            "operator": name,
            "d": d,
            "e2": fmt_rational(&e2),
            "e3": fmt_rational(&e3),
            "charpoly": cp.to_string_in("x"),
            "charpoly_coefficients": report.charpoly,
            "discriminant": report.discriminant,
            "discriminant_nonzero": report.discriminant_nonzero,
            "precision_target": cfg.precision_target,
            "roots": report.roots,
        })),
    };
    Ok(Output {
        text,
        exit_code: EXIT_OK,
        summary: Some(format!("d={d}, det(x - {name}) = {}", cp.to_string_in("x"))),
    })
}

fn relation_json(rel: &RelationCoefficients, d: u32, verified: bool) -> Value {
    let mut v = rel.to_json();
    v["d"] = json!(d);
    v["verified"] = json!(verified);
    v["weight_homogeneous"] = json!(rel.is_weight_homogeneous());
    v
}

fn relation_cmd(cfg: &JobConfig) -> Result<Output> {
    let p = cfg.require_params()?;
    let d = cfg.basis_degree(p)?;
    let domain = match cfg.e_values {
        EValues::Line { .. } => EDomain::Line,
        _ => EDomain::Plane,
    };
    let (h, p2) = matrices(p, &BasisVd::new(d))?;
    let rel = match cfg.max_bidegree {
        Some(bound) => find_minimal_relation(&h, &p2, bound, domain)?,
        None => fit_relation(&h, &p2, d, domain)?,
    };
    let verified = rel.holds_for(&h, &p2)?;
    let rows = rel
        .terms()
        .into_iter()
        .map(|((i, j), c)| vec![i.to_string(), j.to_string(), c.to_string()])
        .collect();
    let mut out = relation_json(&rel, d, verified);
    out["params"] = params_json(p);
    Ok(Output {
        text: render(cfg, out, &["h_power", "p2_power", "coefficient"], rows),
        exit_code: if verified { EXIT_OK } else { EXIT_RELATION },
        summary: Some(format!(
            "d={d}, relation of shape (H^{}, P2^{}) {}",
            rel.shape.h_degree,
            rel.shape.p_degree,
            if verified {
                "verified"
            } else {
                "FAILED verification"
            }
        )),
    })
}

fn reproduce_examples(cfg: &JobConfig) -> Result<Output> {
    let mut all_ok = true;
    let mut reports = Vec::new();
    let mut rows = Vec::new();
    for ex in &EXAMPLES {
        let [a, b0, b1, b2, b3] = ex.params;
        let p = ExponentParams::from_ints(a, b0, b1, b2, b3);
        let domain = if ex.on_line {
            EDomain::Line
        } else {
            EDomain::Plane
        };
        let mut checks: Vec<(String, String, String)> = Vec::new();
        match matrices(&p, &BasisVd::new(ex.d)) {
            Err(e) => checks.push(("invariance".into(), "ok".into(), e.to_string())),
            Ok((h, p2)) => {
                checks.push(("invariance".into(), "ok".into(), "ok".into()));
                let zero = commutator(&h, &p2)?.is_zero();
                checks.push((
                    "commutator".into(),
                    "0".into(),
                    if zero { "0".into() } else { "nonzero".into() },
                ));
                match fit_relation(&h, &p2, ex.d, domain) {
                    Err(e) => checks.push(("relation".into(), "ok".into(), e.to_string())),
                    Ok(rel) => {
                        if let Some(d0) = ex.d0 {
                            let got = rel.d0().map(Poly::to_string).unwrap_or_default();
                            checks.push(("d0".into(), d0.into(), got));
                        }
                        for (k, expected) in ex.c.iter().enumerate().rev() {
                            let got = rel.h_coeffs.get(k).map(Poly::to_string).unwrap_or_default();
                            checks.push((format!("c{k}"), expected.to_string(), got));
                        }
                    }
                }
            }
        }
        let checks_json: Vec<Value> = checks
            .iter()
            .map(|(name, expected, actual)| {
                let pass = expected == actual;
                all_ok &= pass;
                rows.push(vec![
                    ex.name.to_string(),
                    name.clone(),
                    expected.clone(),
                    actual.clone(),
                    pass.to_string(),
                ]);
                json!({ "check": name, "expected": expected, "actual": actual, "ok": pass })
            })
            .collect();
        reports.push(json!({
            "name": ex.name,
            "params": params_json(&p),
            "d": ex.d,
            "domain": domain,
            "checks": checks_json,
        }));
    }
    let summary = format!(
        "examples (i) and (ii): {}",
        if all_ok {
            "all values match"
        } else {
            "MISMATCH"
        }
    );
    let out = json!({ "examples": reports, "ok": all_ok });
    Ok(Output {
        text: render(
            cfg,
            out,
            &["example", "check", "expected", "actual", "ok"],
            rows,
        ),
        exit_code: if all_ok { EXIT_OK } else { EXIT_RELATION },
        summary: Some(summary),
    })
}
