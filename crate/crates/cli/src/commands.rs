use std::path::Path;

use serde_json::{json, Map, Value};

use ncpainleve::darboux::{run_config, DarbouxConfig};
use ncpainleve::laxderive::{derive_qpii, riccati_derive, verify_symmetric_relations};
use ncpainleve::quasidet::{
    all_quasideterminants, commutative_reduction_check, complex_matrix_json, parse_matrix_json,
    BlockMatrix, CarrierKind, ComplexMatrices, DivisionCarrier, ExactField, Method, ParsedMatrix,
    Position, QuasidetError,
};
use ncpainleve::selftest;

use crate::{Carrier, DeriveTarget, Failure, Outcome};

fn ok(report: Value) -> Result<Outcome, Failure> {
    Ok(Outcome { report, ok: true })
}

pub fn derive(target: DeriveTarget) -> Result<Outcome, Failure> {
    match target {
        DeriveTarget::Qpii => {
            let sys = derive_qpii().map_err(|e| Failure::new("laxderive", e))?;
            ok(sys.to_json())
        }
        DeriveTarget::Riccati => {
            let r = riccati_derive().map_err(|e| Failure::new("laxderive", e))?;
            ok(json!({
                "equation": r.equation.to_text(),
                "report": r.report.to_json(),
            }))
        }
        DeriveTarget::Symmetric => {
            let r = verify_symmetric_relations();
            ok(json!({
                "commutator": r.value.to_text(),
                "report": r.report.to_json(),
            }))
        }
    }
}

fn position_errors<E>(p: &Position<E>) -> Option<String> {
    p.value.as_ref().err().map(QuasidetError::to_string)
}

/// Common per-position fields; `value` renders a carrier element.
fn position_entries<C: DivisionCarrier>(
    carrier: &C,
    m: &BlockMatrix<C::Elem>,
    value: impl Fn(&C::Elem) -> Value,
) -> (Vec<Map<String, Value>>, f64) {
    let expand = all_quasideterminants(carrier, m, Method::Expand);
    let via = all_quasideterminants(carrier, m, Method::ViaInverse);
    let mut max_dev = 0.0f64;
    let rows = expand
        .iter()
        .zip(&via)
        .map(|(e, v)| {
            let mut o = Map::new();
            o.insert("row".into(), json!(e.row + 1));
            o.insert("col".into(), json!(e.col + 1));
            match (&e.value, &v.value) {
                (Ok(a), Ok(b)) => {
                    let d = carrier.distance(a, b);
                    max_dev = max_dev.max(d);
                    o.insert("value".into(), value(a));
                    o.insert("via_inverse_deviation".into(), json!(d));
                    o.insert("methods_agree".into(), json!(carrier.approx_eq(a, b)));
                }
                _ => {
                    o.insert("value".into(), Value::Null);
                    if let Some(msg) = position_errors(e) {
                        o.insert("expand_error".into(), json!(msg));
                    }
                    if let Some(msg) = position_errors(v) {
                        o.insert("via_inverse_error".into(), json!(msg));
                    }
                }
            }
            o
        })
        .collect();
    (rows, max_dev)
}

pub fn quasidet(input: &Path, carrier: Carrier, tolerance: f64) -> Result<Outcome, Failure> {
    let text = std::fs::read_to_string(input).map_err(|e| {
        Failure::new("quasidet", QuasidetError::Input(format!("{}: {e}", input.display())))
    })?;
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(Failure::new(
            "quasidet",
            QuasidetError::Input(format!("tolerance must be positive, got {tolerance}")),
        ));
    }
    let kind = match carrier {
        Carrier::Auto => CarrierKind::Auto,
        Carrier::Exact => CarrierKind::Exact,
        Carrier::Matrix => CarrierKind::Matrix,
    };
    let parsed = parse_matrix_json(&text, kind).map_err(|e| Failure::new("quasidet", e))?;
    let mut report = Map::new();
    let (positions, max_dev) = match parsed {
        ParsedMatrix::Exact(m) => {
            report.insert("carrier".into(), json!("exact"));
            report.insert("n".into(), json!(m.n()));
            let (mut rows, dev) = position_entries(&ExactField, &m, |x| json!(x.to_string()));
            for o in &mut rows {
                let i = o["row"].as_u64().unwrap_or(1) as usize - 1;
                let j = o["col"].as_u64().unwrap_or(1) as usize - 1;
                let check = commutative_reduction_check(&m, i, j)
                    .map_err(|e| Failure::new("quasidet", e))?;
                o.insert(
                    "commutative_check".into(),
                    serde_json::to_value(check).expect("outcome serializes"),
                );
            }
            (rows, dev)
        }
        ParsedMatrix::Blocks { dim, matrix } => {
            report.insert("carrier".into(), json!("matrix"));
            report.insert("n".into(), json!(matrix.n()));
            report.insert("block_dim".into(), json!(dim));
            report.insert("tolerance".into(), json!(tolerance));
            let c = ComplexMatrices::new(dim).with_tolerance(tolerance);
            position_entries(&c, &matrix, complex_matrix_json)
        }
    };
    let evaluated = positions.iter().filter(|o| !o["value"].is_null()).count();
    report.insert(
        "summary".into(),
        json!({
            "positions": positions.len(),
            "evaluated": evaluated,
            "singular": positions.len() - evaluated,
            "max_method_deviation": max_dev,
        }),
    );
    report.insert(
        "positions".into(),
        Value::Array(positions.into_iter().map(Value::Object).collect()),
    );
    ok(Value::Object(report))
}

pub fn darboux(
    config: &Path,
    threads: usize,
    consistency_tol: Option<f64>,
    riccati_tol: Option<f64>,
) -> Result<Outcome, Failure> {
    let mut cfg = DarbouxConfig::load(config).map_err(|e| Failure::new("darboux", e))?;
    if let Some(t) = consistency_tol {
        cfg.tolerances.consistency = t;
    }
    if let Some(t) = riccati_tol {
        cfg.tolerances.riccati = t;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::new("cli", e))?;
    let report = pool
        .install(|| run_config(&cfg))
        .map_err(|e| Failure::new("darboux", e))?;
    ok(report.to_json())
}

pub fn selftest(seed: u64) -> Result<Outcome, Failure> {
    let report = selftest::run_all(seed);
    for c in &report.criteria {
        eprintln!("{}", c.line());
    }
    Ok(Outcome {
        ok: report.all_passed(),
        report: report.to_json(),
    })
}
