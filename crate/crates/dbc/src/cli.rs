//! JSON command surface behind the `dbc` binary: factorization, bracket
//! evaluation, groupoid operations, leaf classification, and the
//! verification engine. All verbs take and return JSON; matrices use the
//! {"n", "re", "im"} encoding.
//!
//! Exit-code contract: 0 success / all checks pass, 1 verification
//! failures, 2 malformed input, 3 mathematical domain errors.

use crate::cells::{bruhat_cell_of, CellPoint};
use crate::error::{DbcError, Result};
use crate::groupoid::{gpd_mul, twist, GroupoidElement};
use crate::leaves::{
    chi_rep, fixed_simples_pair, kernel_characters, leaf_rank, tuv_dim, LeafCensus,
};
use crate::num::{cr, CMat, Jet, Mat, Tolerance, C64};
use crate::poisson::{bracket_eval, bracket_eval_direct, check_entry_bounds, RMatrix};
use crate::verify::{run_verification, Report, RunConfig};
use crate::weyl::{WeylElement, WeylRep};
use serde_json::{json, Value};

fn schema_err(msg: impl Into<String>) -> DbcError {
    DbcError::Schema(msg.into())
}

fn parse_matrix(v: &Value, field: &str) -> Result<CMat> {
    let m = v
        .get(field)
        .ok_or_else(|| schema_err(format!("missing field '{}'", field)))?;
    serde_json::from_value(m.clone()).map_err(|e| schema_err(format!("bad matrix '{}': {}", field, e)))
}

fn parse_weyl(v: &Value, field: &str, n: usize) -> Result<Option<WeylElement>> {
    match v.get(field) {
        None | Some(Value::Null) => Ok(None),
        Some(x) => {
            let oneline: Vec<usize> = serde_json::from_value(x.clone())
                .map_err(|e| schema_err(format!("bad one-line notation '{}': {}", field, e)))?;
            if oneline.len() != n {
                return Err(schema_err(format!(
                    "'{}' has length {} but n = {}",
                    field,
                    oneline.len(),
                    n
                )));
            }
            let mut seen = vec![false; n];
            for &p in &oneline {
                if p < 1 || p > n || seen[p - 1] {
                    return Err(schema_err(format!("'{}' is not a permutation", field)));
                }
                seen[p - 1] = true;
            }
            Ok(Some(WeylElement::from_oneline(&oneline)))
        }
    }
}

fn rep_seed(v: &Value, field: &str) -> u64 {
    v.get(field).and_then(|x| x.as_u64()).unwrap_or(0)
}

fn complex_json(z: C64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn cell_point_from_payload(payload: &Value, tol: &Tolerance) -> Result<CellPoint> {
    let g = parse_matrix(payload, "matrix")?;
    let n = g.n();
    let u = parse_weyl(payload, "u", n)?;
    let v = parse_weyl(payload, "v", n)?;
    let (u, v) = match (u, v) {
        (Some(u), Some(v)) => (u, v),
        _ => bruhat_cell_of(&g, tol)?,
    };
    let urep = WeylRep::with_seed(&u, rep_seed(payload, "useed"));
    let vrep = WeylRep::with_seed(&v, rep_seed(payload, "vseed"));
    CellPoint::with_reps(g, u, v, urep, vrep, tol)
}

/// `factor`: detect the cell (or trust provided labels) and return both
/// slice factorizations with reassembly residuals.
pub fn cmd_factor(payload: &Value, tol: &Tolerance) -> Result<Value> {
    let p = cell_point_from_payload(payload, tol)?;
    let res_left = p.c.mul(&p.b).dist(&p.g) / p.g.max_abs().max(1.0);
    let res_right = p.b_minus.mul(&p.c_prime).dist(&p.g) / p.g.max_abs().max(1.0);
    Ok(json!({
        "input": {"matrix": p.g, "u": p.u.oneline(), "v": p.v.oneline()},
        "u": p.u.oneline(),
        "v": p.v.oneline(),
        "u_word": p.u.reduced_word(),
        "v_word": p.v.reduced_word(),
        "c": p.c,
        "b": p.b,
        "b_minus": p.b_minus,
        "c_prime": p.c_prime,
        "residual_left": res_left,
        "residual_right": res_right,
    }))
}

/// Observable syntax: "g{i}{j}" for a matrix entry (1-based) or "minor{k}"
/// for a leading principal minor.
fn parse_observable(
    v: &Value,
    field: &str,
    n: usize,
) -> Result<(String, Box<dyn Fn(&Mat<Jet>) -> Result<Jet>>)> {
    let s = v
        .get(field)
        .and_then(|x| x.as_str())
        .ok_or_else(|| schema_err(format!("missing observable '{}'", field)))?;
    if let Some(rest) = s.strip_prefix("minor") {
        let k: usize = rest
            .parse()
            .map_err(|_| schema_err(format!("bad minor index in '{}'", s)))?;
        if k == 0 || k > n {
            return Err(schema_err(format!("minor index {} out of range", k)));
        }
        let name = s.to_string();
        return Ok((name, Box::new(move |m: &Mat<Jet>| Ok(m.leading_minor(k)))));
    }
    if let Some(rest) = s.strip_prefix('g') {
        let digits: Vec<u32> = rest.chars().filter_map(|c| c.to_digit(10)).collect();
        if digits.len() == 2 {
            let (i, j) = (digits[0] as usize - 1, digits[1] as usize - 1);
            check_entry_bounds(n, i, j)?;
            let name = s.to_string();
            return Ok((name, Box::new(move |m: &Mat<Jet>| Ok(m[(i, j)].clone()))));
        }
    }
    Err(schema_err(format!(
        "observable '{}' not recognized (use g{{i}}{{j}} or minor{{k}})",
        s
    )))
}

/// `bracket`: evaluate the Poisson bracket of two observables at a point,
/// through both computation routes.
pub fn cmd_bracket(payload: &Value, _tol: &Tolerance) -> Result<Value> {
    let g = parse_matrix(payload, "matrix")?;
    let n = g.n();
    let det = g.det();
    if (det - cr(1.0)).norm() > 1e-6 {
        return Err(DbcError::Factorization(format!(
            "matrix determinant {} is not 1",
            det
        )));
    }
    let (name1, f1) = parse_observable(payload, "f1", n)?;
    let (name2, f2) = parse_observable(payload, "f2", n)?;
    let r = RMatrix::standard(n);
    let value = bracket_eval(&*f1, &*f2, &g, &r)?;
    let direct = bracket_eval_direct(&*f1, &*f2, &g, &r)?;
    Ok(json!({
        "input": {"matrix": g, "f1": name1, "f2": name2},
        "value": complex_json(value),
        "value_direct_route": complex_json(direct),
        "route_residual": (value - direct).norm(),
    }))
}

/// `mul`: groupoid product of two points of G^{v,v}.
pub fn cmd_mul(payload: &Value, tol: &Tolerance) -> Result<Value> {
    let gm = parse_matrix(payload, "g")?;
    let hm = parse_matrix(payload, "h")?;
    let n = gm.n();
    let v = match parse_weyl(payload, "v", n)? {
        Some(v) => v,
        None => {
            let (u, v) = bruhat_cell_of(&gm, tol)?;
            if u != v {
                return Err(DbcError::Factorization(
                    "groupoid multiplication needs a point of a diagonal cell G^{v,v}".into(),
                ));
            }
            v
        }
    };
    let rep = WeylRep::with_seed(&v, rep_seed(payload, "vseed"));
    let g = GroupoidElement::from_matrix(gm, &v, &rep, tol)?;
    let h = GroupoidElement::from_matrix(hm, &v, &rep, tol)?;
    let m = gpd_mul(&g, &h, tol)?;
    Ok(json!({
        "input": {"g": g.pt.g, "h": h.pt.g, "v": v.oneline()},
        "product": m.pt.g,
        "source": m.theta().coords.iter().map(|z| complex_json(*z)).collect::<Vec<_>>(),
        "target": m.tau().coords.iter().map(|z| complex_json(*z)).collect::<Vec<_>>(),
        "composability_residual": g.tau().dist(h.theta()),
    }))
}

/// `twist`: the anti-Poisson involution G^{u,v} → G^{v,u}.
pub fn cmd_twist(payload: &Value, tol: &Tolerance) -> Result<Value> {
    let p = cell_point_from_payload(payload, tol)?;
    let q = twist(&p, tol)?;
    let back = twist(&q, tol)?;
    Ok(json!({
        "input": {"matrix": p.g, "u": p.u.oneline(), "v": p.v.oneline()},
        "twisted": q.g,
        "twisted_u": q.u.oneline(),
        "twisted_v": q.v.oneline(),
        "involution_residual": back.g.dist(&p.g) / p.g.max_abs().max(1.0),
    }))
}

/// `leaf`: symplectic-leaf invariants of a cell point.
pub fn cmd_leaf(payload: &Value, tol: &Tolerance) -> Result<Value> {
    let p = cell_point_from_payload(payload, tol)?;
    let r = RMatrix::standard(p.n());
    let chi = chi_rep(&p, tol)?;
    let census = LeafCensus::new(&p.u, &p.v);
    let stab_order2 = crate::weyl::enumerate_order2(p.n())
        .iter()
        .filter(|t| census.stab_test(t, tol))
        .count();
    let fixed = fixed_simples_pair(&p.u, &p.v);
    let minors: Vec<Value> = fixed
        .iter()
        .map(|&k| json!({"index": k, "value": complex_json(p.g.leading_minor(k))}))
        .collect();
    Ok(json!({
        "input": {"matrix": p.g, "u": p.u.oneline(), "v": p.v.oneline()},
        "chi_representative": chi.diag.iter().map(|z| complex_json(*z)).collect::<Vec<_>>(),
        "fixed_simples": fixed,
        "minors": minors,
        "kernel_characters": kernel_characters(&p.u, &p.v).iter().map(|c| c.exps.clone()).collect::<Vec<_>>(),
        "torus_quotient_dim": tuv_dim(&p.u, &p.v),
        "leaf_rank": leaf_rank(&p, &r, tol)?,
        "leaves_per_level": census.count_per_level,
        "stabilizer_order2": stab_order2,
    }))
}

/// `verify`: run the selected suites; the boolean is the overall verdict.
pub fn cmd_verify(cfg: &RunConfig) -> (Report, bool) {
    let report = run_verification(cfg);
    let pass = report.pass;
    (report, pass)
}

/// Dispatch a compute verb on a parsed payload.
pub fn dispatch(verb: &str, payload: &Value, tol: &Tolerance) -> Result<Value> {
    match verb {
        "factor" => cmd_factor(payload, tol),
        "bracket" => cmd_bracket(payload, tol),
        "mul" => cmd_mul(payload, tol),
        "twist" => cmd_twist(payload, tol),
        "leaf" => cmd_leaf(payload, tol),
        other => Err(schema_err(format!("unknown verb '{}'", other))),
    }
}

/// Exit code for an error per the CLI contract.
pub fn exit_code_for(err: &DbcError) -> i32 {
    match err {
        DbcError::Schema(_) => 2,
        _ => 3,
    }
}

/// Tolerance from an optional override and the DBC_TOL environment
/// variable: all three thresholds scale with tol_eq.
pub fn resolve_tolerance(cli_tol: Option<f64>) -> std::result::Result<Tolerance, String> {
    let from_env = std::env::var("DBC_TOL").ok().map(|s| {
        s.parse::<f64>()
            .map_err(|_| format!("DBC_TOL value '{}' is not a number", s))
    });
    let chosen = match (cli_tol, from_env) {
        (Some(t), _) => Some(t),
        (None, Some(Ok(t))) => Some(t),
        (None, Some(Err(e))) => return Err(e),
        (None, None) => None,
    };
    match chosen {
        None => Ok(Tolerance::default()),
        Some(t) if t > 0.0 && t < 1.0 => {
            let base = Tolerance::default();
            let k = t / base.tol_eq;
            Ok(Tolerance::new(t, base.tol_rank * k, base.tol_det * k))
        }
        Some(t) => Err(format!("tolerance {} out of range (0, 1)", t)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2_payload() -> Value {
        // the (z, a, b) = (0.5, 2, 1) chart point
        let g = crate::golden::sl2_cell_matrix(cr(0.5), cr(2.0), cr(0.6));
        json!({"matrix": g})
    }

    #[test]
    fn factor_identity_trivial() {
        let tol = Tolerance::default();
        let out = cmd_factor(&json!({"matrix": CMat::identity(2)}), &tol).unwrap();
        assert_eq!(out["u"], json!([1, 2]));
        assert!(out["residual_left"].as_f64().unwrap() < 1e-12);
    }

    #[test]
    fn bracket_verb_matches_table() {
        let tol = Tolerance::default();
        let payload = {
            let mut p = sl2_payload();
            p["f1"] = json!("g11");
            p["f2"] = json!("g12");
            p
        };
        let out = cmd_bracket(&payload, &tol).unwrap();
        let g = crate::golden::sl2_cell_matrix(cr(0.5), cr(2.0), cr(0.6));
        let expect = g[(0, 0)] * g[(0, 1)];
        assert!((out["value"]["re"].as_f64().unwrap() - expect.re).abs() < 1e-10);
        assert!(out["route_residual"].as_f64().unwrap() < 1e-10);
    }

    #[test]
    fn twist_verb_roundtrips() {
        let tol = Tolerance::default();
        let out = cmd_twist(&sl2_payload(), &tol).unwrap();
        assert!(out["involution_residual"].as_f64().unwrap() < 1e-9);
        assert_eq!(out["twisted_u"], json!([2, 1]));
    }

    #[test]
    fn leaf_verb_reports_chi() {
        let tol = Tolerance::default();
        let out = cmd_leaf(&sl2_payload(), &tol).unwrap();
        // χ = a²(1−abz)⁻¹ with (z, a, b) = (0.5, 2, 0.6): 4 / 0.4 = 10
        let re = out["chi_representative"][0]["re"].as_f64().unwrap();
        assert!((re - 10.0).abs() < 1e-9);
        assert_eq!(out["leaf_rank"], json!(2));
    }

    #[test]
    fn schema_errors_are_schema() {
        let tol = Tolerance::default();
        let err = dispatch("bracket", &json!({"matrix": CMat::identity(2), "f1": "g99", "f2": "g11"}), &tol)
            .unwrap_err();
        assert_eq!(exit_code_for(&err), 2);
        let err = dispatch("nonsense", &json!({}), &tol).unwrap_err();
        assert_eq!(exit_code_for(&err), 2);
    }

    #[test]
    fn math_errors_are_domain() {
        let tol = Tolerance::default();
        // twist of a non-unimodular matrix fails as a domain error
        let bad = CMat::from_fn(2, 2, |i, j| if i == j { cr(2.0) } else { cr(0.0) });
        let err = dispatch("twist", &json!({ "matrix": bad }), &tol).unwrap_err();
        assert_eq!(exit_code_for(&err), 3);
    }
}
