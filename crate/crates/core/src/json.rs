//! Canonical JSON forms of algebras, reports and bivectors used by the
//! command line. Objects are `serde_json::Value` maps, whose keys serialize
//! sorted, so output is byte-stable.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraError, BasisElem, GradedAlgebra, Parity, Simplicity, StructureReport, Terms, Window};
use crate::axioms::{AxiomReport, IdentityResult, SuperReport};
use crate::extensions::CocycleSpace;
use crate::geometry::{LinearBivector, PolyVector};
use crate::linalg::QMatrix;
use crate::reps::{RepReport, Representation};
use crate::scalar::{Field, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Parse(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl JsonError {
    /// Short machine-readable tag for error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            JsonError::Parse(_) => "parse",
            JsonError::Schema(_) | JsonError::Scalar(_) => "schema",
            JsonError::Algebra(_) => "algebra",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": self.kind(), "message": self.to_string()})
    }
}

fn schema(msg: impl Into<String>) -> JsonError {
    JsonError::Schema(msg.into())
}

pub fn scalar(c: &Scalar) -> Value {
    Value::String(c.to_string())
}

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn vectors(vs: &[Vec<Scalar>]) -> Value {
    Value::Array(vs.iter().map(|v| vector(v)).collect())
}

pub fn matrix(m: &QMatrix) -> Value {
    Value::Array((0..m.rows).map(|i| vector(m.row(i))).collect())
}

fn parity_bit(p: Parity) -> u8 {
    p.bit()
}

fn field_json(f: Field) -> Value {
    match f {
        Field::Q => json!({"kind": "Q"}),
        Field::Sqrt(d) => json!({"kind": "Qsqrt", "d": d}),
    }
}

fn terms_json(t: &Terms) -> Value {
    Value::Array(t.iter().map(|(k, c)| json!({"k": k, "c": scalar(c)})).collect())
}

/// Algebra in the interchange format; only pairs `i ≤ j` are stored.
pub fn algebra_to_json(a: &GradedAlgebra) -> Value {
    let basis: Vec<Value> = a.basis.iter().map(|b| json!({"label": b.label, "parity": parity_bit(b.parity)})).collect();
    let mut products = Vec::new();
    for i in 0..a.dim() {
        for j in i..a.dim() {
            if let Some(t) = a.mul_basis(i, j) {
                if !t.is_empty() || a.window.is_some() {
                    products.push(json!({"i": i, "j": j, "terms": terms_json(t)}));
                }
            }
        }
    }
    let window = match a.window {
        None => Value::Null,
        Some(w) => json!({"kind": w.kind(), "N": w.size()}),
    };
    let mut out = json!({"name": a.name, "field": field_json(a.field), "basis": basis, "products": products, "window": window});
    if a.bracket {
        out["bracket"] = Value::Bool(true);
    }
    out
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value, JsonError> {
    v.get(key).ok_or_else(|| schema(format!("missing key {key}")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize, JsonError> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| schema(format!("{what} must be a nonnegative integer")))
}

fn parse_scalar(v: &Value) -> Result<Scalar, JsonError> {
    match v {
        Value::String(s) => Ok(Scalar::from_str(s)?),
        Value::Number(n) => n.as_i64().map(Scalar::from_int).ok_or_else(|| schema("non-integer number used as scalar")),
        _ => Err(schema("scalar must be a string \"n/d\"")),
    }
}

pub fn parse_json(text: &str) -> Result<Value, JsonError> {
    serde_json::from_str(text).map_err(|e| JsonError::Parse(e.to_string()))
}

/// Reads the interchange format.
pub fn algebra_from_json(v: &Value) -> Result<GradedAlgebra, JsonError> {
    let name = get(v, "name")?.as_str().ok_or_else(|| schema("name must be a string"))?.to_string();
    let f = get(v, "field")?;
    let field = match get(f, "kind")?.as_str() {
        Some("Q") => Field::Q,
        Some("Qsqrt") => Field::sqrt(get(f, "d")?.as_i64().ok_or_else(|| schema("field d must be an integer"))?)?,
        _ => return Err(schema("field kind must be Q or Qsqrt")),
    };
    let mut basis = Vec::new();
    for b in get(v, "basis")?.as_array().ok_or_else(|| schema("basis must be an array"))? {
        let label = get(b, "label")?.as_str().ok_or_else(|| schema("label must be a string"))?;
        let parity = match get(b, "parity")?.as_u64() {
            Some(0) => Parity::Even,
            Some(1) => Parity::Odd,
            _ => return Err(schema("parity must be 0 or 1")),
        };
        basis.push(BasisElem::new(label, parity));
    }
    let mut upper: BTreeMap<(usize, usize), Terms> = BTreeMap::new();
    for p in get(v, "products")?.as_array().ok_or_else(|| schema("products must be an array"))? {
        let (i, j) = (as_usize(get(p, "i")?, "i")?, as_usize(get(p, "j")?, "j")?);
        if i > j {
            return Err(schema(format!("product ({i},{j}) must have i ≤ j")));
        }
        let mut terms = Vec::new();
        for t in get(p, "terms")?.as_array().ok_or_else(|| schema("terms must be an array"))? {
            terms.push((as_usize(get(t, "k")?, "k")?, parse_scalar(get(t, "c")?)?));
        }
        if upper.insert((i, j), terms).is_some() {
            return Err(schema(format!("product ({i},{j}) given twice")));
        }
    }
    let window = match v.get("window") {
        None | Some(Value::Null) => None,
        Some(w) => {
            let n = get(w, "N")?.as_i64().ok_or_else(|| schema("window N must be an integer"))?;
            Some(match get(w, "kind")?.as_str() {
                Some("ak1") => Window::Ak1 { n },
                Some("ak1-pos") => Window::Ak1Positive { n },
                Some("k1") => Window::K1 { n },
                _ => return Err(schema("unknown window kind")),
            })
        }
    };
    let bracket = v.get("bracket").and_then(Value::as_bool).unwrap_or(false);
    Ok(GradedAlgebra::from_upper(name, field, basis, upper, bracket, window)?)
}

fn identity_json(r: &IdentityResult) -> Value {
    let witness = r.witness.as_ref().map_or(Value::Null, |w| json!(w.triple));
    json!({"identity": r.identity.name(), "status": r.status().as_str(), "checked": r.checked, "skipped": r.skipped, "witness": witness})
}

pub fn axiom_report_json(r: &AxiomReport) -> Value {
    json!({"overall": r.overall().as_str(), "identities": r.results.iter().map(identity_json).collect::<Vec<_>>()})
}

pub fn super_report_json(r: &SuperReport) -> Value {
    json!({"antisymmetric": r.antisymmetric, "jacobi": identity_json(&r.jacobi), "clean": r.clean()})
}

pub fn structure_report_json(r: &StructureReport) -> Value {
    let pencil: Vec<Value> = r.pencil.iter().map(|p| json!({"even_index": p.even_index, "rank": p.rank, "matrix": matrix(&p.matrix)})).collect();
    let unital = r.unital.as_ref().map_or(Value::Null, |u| {
        json!({"unit": vector(&u.unit), "half": vectors(&u.half), "zero": vectors(&u.zero), "half_projector": u.half_projector})
    });
    let fp = &r.fingerprint;
    json!({
        "rank": r.rank,
        "pencil": pencil,
        "kernel_ideal": vectors(&r.kernel_ideal),
        "center": vectors(&r.center),
        "ample": r.ample,
        "unital": unital,
        "fingerprint": {
            "dims": [fp.dims.0, fp.dims.1],
            "pencil_ranks": fp.pencil_ranks,
            "center_dims": [fp.center_dims.0, fp.center_dims.1],
            "ample": fp.ample,
            "nilpotent_even": fp.nilpotent_even,
        },
    })
}

pub fn simplicity_json(s: &Simplicity) -> Value {
    match s {
        Simplicity::Simple { prime } => json!({"verdict": "simple", "prime": prime}),
        Simplicity::NotSimple { ideal, reason } => json!({"verdict": "not_simple", "ideal": vectors(ideal), "reason": reason}),
        Simplicity::Unknown => json!({"verdict": "unknown"}),
    }
}

pub fn cocycle_space_json(c: &CocycleSpace) -> Value {
    json!({
        "type": c.kind.as_str(),
        "dimZ": c.dim_z(),
        "dimB": c.dim_b(),
        "dimH": c.dim_h(),
        "pairs": c.pairs.iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>(),
        "Z_basis": vectors(&c.z),
    })
}

pub fn rep_report_json(r: &RepReport) -> Value {
    let witness = r.witness.as_ref().map_or(Value::Null, |w| {
        json!({"relation": w.relation, "pair": [w.pair.0, w.pair.1], "vector": w.vector, "lhs": vector(&w.lhs), "rhs": vector(&w.rhs)})
    });
    json!({"passed": r.passed(), "checked": r.checked, "skipped": r.skipped, "witness": witness})
}

/// Reads `{"carrier": {"dims": [p, q]}, "operators": [{"basis": label, "matrix": rows}]}`;
/// basis elements without an operator act by zero.
pub fn representation_from_json(v: &Value, alg: &GradedAlgebra) -> Result<Representation, JsonError> {
    let dims = get(get(v, "carrier")?, "dims")?.as_array().ok_or_else(|| schema("carrier dims must be [p, q]"))?;
    if dims.len() != 2 {
        return Err(schema("carrier dims must be [p, q]"));
    }
    let (p, q) = (as_usize(&dims[0], "dims")?, as_usize(&dims[1], "dims")?);
    let n = p + q;
    let carrier: Vec<Parity> = (0..n).map(|k| if k < p { Parity::Even } else { Parity::Odd }).collect();
    let mut mats = vec![QMatrix::zeros(n, n); alg.dim()];
    for op in get(v, "operators")?.as_array().ok_or_else(|| schema("operators must be an array"))? {
        let label = get(op, "basis")?.as_str().ok_or_else(|| schema("operator basis must be a label"))?;
        let i = alg.index_of(label)?;
        let rows = get(op, "matrix")?.as_array().ok_or_else(|| schema("matrix must be an array of rows"))?;
        if rows.len() != n {
            return Err(schema(format!("operator {label} must have {n} rows")));
        }
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_array().filter(|x| x.len() == n).ok_or_else(|| schema(format!("operator {label} rows must have {n} entries")))?;
            for (c, x) in row.iter().enumerate() {
                mats[i].set(r, c, parse_scalar(x)?);
            }
        }
    }
    Ok(Representation::from_matrices(alg, carrier, &mats))
}

fn wedge_terms(pv: &PolyVector) -> Vec<Value> {
    let sp = &pv.space;
    pv.terms()
        .iter()
        .map(|t| {
            json!({
                "coeff": scalar(&t.coeff),
                "monomial": {"even": t.even, "odd": t.odd},
                "wedge": t.wedge.iter().map(|u| format!("d/d{}", sp.name(*u))).collect::<Vec<_>>(),
            })
        })
        .collect()
}

pub fn bivector_json(lb: &LinearBivector) -> Value {
    let sp = &lb.bivector.space;
    json!({
        "provenance": lb.provenance,
        "space": {"even": sp.even, "odd": sp.odd},
        "terms": wedge_terms(&lb.bivector),
    })
}

fn latex_name(s: &str) -> String {
    match s.split_once('_') {
        Some((h, t)) => format!("{h}_{{\\mathrm{{{}}}}}", t.replace('_', "\\_")),
        None => s.to_string(),
    }
}

fn latex_scalar(c: &Scalar) -> String {
    let r = c.re();
    let mut s = if r.denom() == &1.into() { r.numer().to_string() } else { format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom()) };
    if let Some(d) = c.tag() {
        s = format!("({s} + {}\\sqrt{{{d}}})", c.im());
    }
    s
}

/// LaTeX rendering, e.g. `\tau\,\frac{\partial}{\partial p}\wedge\frac{\partial}{\partial q}`.
pub fn polyvector_latex(pv: &PolyVector) -> String {
    let sp = &pv.space;
    if pv.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = pv
        .terms()
        .iter()
        .map(|t| {
            let mut s = String::new();
            if !t.coeff.is_one() {
                s.push_str(&latex_scalar(&t.coeff));
                s.push_str("\\,");
            }
            for (i, e) in t.even.iter().enumerate() {
                match e {
                    0 => {}
                    1 => s.push_str(&format!("{} ", latex_name(&sp.even[i]))),
                    _ => s.push_str(&format!("{}^{{{e}}} ", latex_name(&sp.even[i]))),
                }
            }
            for k in &t.odd {
                s.push_str(&format!("{} ", latex_name(&sp.odd[*k])));
            }
            let w: Vec<String> = t.wedge.iter().map(|u| format!("\\frac{{\\partial}}{{\\partial {}}}", latex_name(sp.name(*u)))).collect();
            s.push_str(&w.join("\\wedge"));
            s.trim().to_string()
        })
        .collect();
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{ak1, k3, total_antialgebras};
    use crate::geometry::lambda_of_algebra;

    #[test]
    fn algebra_round_trip() {
        let mut all = total_antialgebras();
        all.push(ak1(1));
        for a in all {
            let v = algebra_to_json(&a);
            let text = serde_json::to_string(&v).unwrap();
            let b = algebra_from_json(&parse_json(&text).unwrap()).unwrap();
            assert_eq!(a, b, "{}", a.name);
            assert_eq!(serde_json::to_string(&algebra_to_json(&b)).unwrap(), text);
        }
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(parse_json("{not json").unwrap_err().kind(), "parse");
        let mut v = algebra_to_json(&k3());
        v["basis"][0]["parity"] = json!(3);
        assert_eq!(algebra_from_json(&v).unwrap_err().kind(), "schema");
        let mut v = algebra_to_json(&k3());
        v["products"][0]["terms"][0]["c"] = json!("1/0");
        assert_eq!(algebra_from_json(&v).unwrap_err().kind(), "schema");
        let mut v = algebra_to_json(&k3());
        v["products"][1]["terms"][0]["k"] = json!(0);
        assert_eq!(algebra_from_json(&v).unwrap_err().kind(), "algebra");
    }

    #[test]
    fn k3_bivector_forms() {
        let lb = lambda_of_algebra(&k3()).unwrap();
        let v = bivector_json(&lb);
        assert_eq!(v["terms"].as_array().unwrap().len(), 4);
        assert_eq!(v["terms"][0]["wedge"], json!(["d/dx_a", "d/dx_b"]));
        assert_eq!(v["terms"][0]["monomial"]["odd"], json!([0]));
        let tex = polyvector_latex(&lb.bivector);
        assert!(tex.starts_with("t_{\\mathrm{eps}} \\frac{\\partial}{\\partial x_{\\mathrm{a}}}"), "{tex}");
    }
}
