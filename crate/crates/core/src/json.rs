//! JSON interchange formats.
//!
//! Scalars travel as canonical grammar strings, elements as arrays of eight
//! of them in standard basis order, lattices and maps as 8x8 arrays of
//! columns under a field descriptor. Parsing needs the field, so documents
//! carry it at the top level; bare element arrays take it from context.
//! serde_json maps are ordered, which keeps every emission byte-stable.

use crate::building::{GradedChain, Verdict, VertexCertificate, VertexType};
use crate::error::JsonError;
use crate::field::BaseField;
use crate::groups::AlgebraMap;
use crate::lattice::{Lattice, OModule, OrderWitness};
use crate::matrix::Mat;
use crate::octonion::Octonion;
use crate::reduction::{Reduction, Refutation, VerifyReport};
use crate::scalars::{parse_scalar, RationalScalar};
use serde_json::{json, Map, Value};

pub fn field_to_json(field: BaseField) -> Value {
    match field {
        BaseField::Prime(p) => json!({"kind": "prime", "p": p}),
        BaseField::Rationals => json!({"kind": "rationals"}),
    }
}

pub fn field_from_json(v: &Value) -> Result<BaseField, JsonError> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| JsonError::Malformed("field.kind missing".into()))?;
    match kind {
        "rationals" => Ok(BaseField::Rationals),
        "prime" => {
            let p = v
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| JsonError::Malformed("field.p missing".into()))?;
            BaseField::prime(p).map_err(JsonError::Scalar)
        }
        other => Err(JsonError::Malformed(format!(
            "unknown field kind `{other}`"
        ))),
    }
}

pub fn element_to_json(x: &Octonion) -> Value {
    Value::Array(
        x.coords()
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

pub fn element_from_json(v: &Value, field: BaseField) -> Result<Octonion, JsonError> {
    let arr = v
        .as_array()
        .ok_or_else(|| JsonError::Malformed("element must be an array".into()))?;
    if arr.len() != 8 {
        return Err(JsonError::Malformed(format!(
            "element has {} coordinates, expected 8",
            arr.len()
        )));
    }
    let mut coords = Vec::with_capacity(8);
    for c in arr {
        let s = c
            .as_str()
            .ok_or_else(|| JsonError::Malformed("coordinate must be a string".into()))?;
        coords.push(parse_scalar(s, field)?);
    }
    Ok(Octonion::new(field, coords.try_into().unwrap()))
}

fn columns_to_json(cols: &[Octonion]) -> Value {
    Value::Array(cols.iter().map(element_to_json).collect())
}

pub fn lattice_to_json(l: &Lattice) -> Value {
    json!({
        "field": field_to_json(l.field()),
        "basis": columns_to_json(&l.basis()),
    })
}

pub fn lattice_from_json(v: &Value) -> Result<Lattice, JsonError> {
    let field = field_from_json(
        v.get("field")
            .ok_or_else(|| JsonError::Malformed("lattice.field missing".into()))?,
    )?;
    let basis = v
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| JsonError::Malformed("lattice.basis missing".into()))?;
    if basis.len() != 8 {
        return Err(JsonError::Malformed(format!(
            "lattice basis has {} columns, expected 8",
            basis.len()
        )));
    }
    let cols: Vec<Octonion> = basis
        .iter()
        .map(|c| element_from_json(c, field))
        .collect::<Result<_, _>>()?;
    Lattice::from_generators(field, &cols)
        .map_err(|e| JsonError::Malformed(format!("basis is not full rank: {e}")))
}

pub fn module_to_json(m: &OModule) -> Value {
    json!({
        "field": field_to_json(m.field()),
        "rank": m.rank(),
        "basis": columns_to_json(&m.basis()),
    })
}

pub fn map_to_json(g: &AlgebraMap) -> Value {
    let cols: Vec<Octonion> = (0..8)
        .map(|j| Octonion::new(g.field(), g.matrix().col(j).try_into().unwrap()))
        .collect();
    json!({
        "field": field_to_json(g.field()),
        "matrix": columns_to_json(&cols),
    })
}

pub fn map_from_json(v: &Value) -> Result<AlgebraMap, JsonError> {
    let field = field_from_json(
        v.get("field")
            .ok_or_else(|| JsonError::Malformed("map.field missing".into()))?,
    )?;
    let cols = v
        .get("matrix")
        .and_then(Value::as_array)
        .ok_or_else(|| JsonError::Malformed("map.matrix missing".into()))?;
    if cols.len() != 8 {
        return Err(JsonError::Malformed("matrix must have 8 columns".into()));
    }
    let columns: Vec<Vec<RationalScalar>> = cols
        .iter()
        .map(|c| element_from_json(c, field).map(|x| x.coords().to_vec()))
        .collect::<Result<_, _>>()?;
    Ok(AlgebraMap::from_matrix(Mat::from_cols(field, &columns)))
}

pub fn chain_to_json(chain: &GradedChain) -> Value {
    Value::Array(
        chain
            .entries
            .iter()
            .map(|(l, c)| {
                json!({
                    "grading": c.to_string(),
                    "lattice": lattice_to_json(l),
                })
            })
            .collect(),
    )
}

fn order_witness_to_json(w: &OrderWitness) -> Value {
    match w {
        OrderWitness::ParaUnitMissing => json!({"kind": "para_unit_missing"}),
        OrderWitness::ProductOutside {
            left,
            right,
            product,
            indices,
        } => json!({
            "kind": "product_outside",
            "left": element_to_json(left),
            "right": element_to_json(right),
            "product": element_to_json(product),
            "indices": [indices.0, indices.1],
        }),
    }
}

pub fn certificate_to_json(cert: &VertexCertificate, chain: Option<&GradedChain>) -> Value {
    let mut obj = Map::new();
    match &cert.verdict {
        Verdict::Vertex(t) => {
            obj.insert("verdict".into(), Value::String(t.to_string()));
        }
        Verdict::NotVertex { reason, witness } => {
            obj.insert("verdict".into(), Value::String("NotVertex".into()));
            obj.insert("reason".into(), Value::String(reason.clone()));
            if let Some(w) = witness {
                obj.insert("witness".into(), order_witness_to_json(w));
            }
        }
    }
    if cert.impossible_length_two {
        obj.insert("impossible_length_two".into(), Value::Bool(true));
    }
    if let Some(g) = &cert.transformer {
        obj.insert("transformer".into(), map_to_json(g));
    }
    if let Some(c) = chain {
        obj.insert("chain".into(), chain_to_json(c));
    }
    Value::Object(obj)
}

pub fn refutation_to_json(r: &Refutation) -> Value {
    json!({
        "kind": "NonIntegralStructureConstant",
        "left": element_to_json(&r.left),
        "right": element_to_json(&r.right),
        "product": element_to_json(&r.product),
        "coefficient": r.coefficient.to_string(),
        "valuation": r.valuation,
    })
}

pub fn reduction_to_json(r: &Reduction) -> Value {
    json!({
        "vertex_type": r.vertex_type.to_string(),
        "tuple": columns_to_json(&r.tuple),
        "transformer": map_to_json(&r.transformer),
        "trace": Value::Array(
            r.trace
                .steps
                .iter()
                .map(|(name, detail)| json!({"step": name, "detail": detail}))
                .collect(),
        ),
    })
}

pub fn verify_report_to_json(rep: &VerifyReport) -> Value {
    json!({
        "automorphism": rep.automorphism,
        "special": rep.special,
        "lattice_match": rep.lattice_match,
        "margin_ok": rep.margin_ok,
        "passed": rep.passed(),
    })
}

pub fn vertex_type_from_str(s: &str) -> Option<VertexType> {
    match s {
        "Type1" | "1" => Some(VertexType::Type1),
        "Type2" | "2" => Some(VertexType::Type2),
        "Type3" | "3" => Some(VertexType::Type3),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::standard_lattice;
    use crate::groups::random_automorphism;

    const F5: BaseField = BaseField::Prime(5);

    #[test]
    fn lattice_roundtrip() {
        for t in [VertexType::Type1, VertexType::Type2, VertexType::Type3] {
            let l = standard_lattice(F5, t);
            let v = lattice_to_json(&l);
            let back = lattice_from_json(&v).unwrap();
            assert_eq!(l, back);
        }
        let g = random_automorphism(F5, 4, 3);
        let l = g.apply_lattice(&standard_lattice(F5, VertexType::Type2));
        assert_eq!(lattice_from_json(&lattice_to_json(&l)).unwrap(), l);
    }

    #[test]
    fn map_roundtrip() {
        let g = random_automorphism(F5, 12, 4);
        let v = map_to_json(&g);
        let back = map_from_json(&v).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn field_descriptors() {
        for f in [F5, BaseField::Rationals] {
            assert_eq!(field_from_json(&field_to_json(f)).unwrap(), f);
        }
        assert!(field_from_json(&json!({"kind": "prime", "p": 4})).is_err());
        assert!(field_from_json(&json!({"kind": "real"})).is_err());
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(lattice_from_json(&json!({"basis": []})).is_err());
        let field = field_to_json(F5);
        assert!(lattice_from_json(&json!({"field": field, "basis": [["1"]]})).is_err());
        assert!(element_from_json(&json!(["1", "2"]), F5).is_err());
        assert!(
            element_from_json(&json!(["1", "2", "$", "0", "0", "0", "0", "0"]), F5).is_err()
        );
    }

    #[test]
    fn emission_is_deterministic() {
        let l = standard_lattice(F5, VertexType::Type3);
        let a = serde_json::to_string(&lattice_to_json(&l)).unwrap();
        let b = serde_json::to_string(&lattice_to_json(&l)).unwrap();
        assert_eq!(a, b);
    }
}
