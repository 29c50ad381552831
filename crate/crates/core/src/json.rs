//! JSON wire forms.
//!
//! Rationals are always strings (`"num/den"`) so nothing is ever rounded.
//! A polynomial is an array of `{"monomial": {name: exponent, ...},
//! "value": "num/den"}` in canonical term order. A univariate series is
//! `{"var": "t", "order": N, "coeffs": [...]}` with a dense coefficient
//! list; a bivariate series is `{"vars": ["x","y"], "order": N,
//! "coeffs": [[i, j, element], ...]}` sorted by `(i+j, i)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::bivariate::BivariateSeries;
use crate::error::{Error, Result};
use crate::fgl::FormalGroupLaw;
use crate::poly::{GeneratorTable, GradedPolynomial, Monomial};
use crate::rational::Rational;
use crate::ring::Ring;
use crate::series::TruncatedSeries;

pub fn poly_to_json(p: &GradedPolynomial) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| {
            let mut mono = serde_json::Map::new();
            for (index, exp) in m.exponents() {
                mono.insert(p.table().name(*index).to_string(), json!(exp));
            }
            json!({ "monomial": Value::Object(mono), "value": c.to_string() })
        })
        .collect();
    Value::Array(terms)
}

pub fn poly_from_json(table: &Arc<GeneratorTable>, v: &Value) -> Result<GradedPolynomial> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("polynomial must be a JSON array of terms".into()))?;
    let mut terms = Vec::with_capacity(arr.len());
    for item in arr {
        let obj = item
            .as_object()
            .ok_or_else(|| Error::Parse("polynomial term must be an object".into()))?;
        let mono = obj
            .get("monomial")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("term is missing \"monomial\"".into()))?;
        let value = obj
            .get("value")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("term is missing string \"value\"".into()))?;
        let mut pairs = Vec::with_capacity(mono.len());
        for (name, exp) in mono {
            let index = table
                .index_of(name)
                .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            let e = exp
                .as_u64()
                .ok_or_else(|| Error::Parse(format!("exponent of `{name}` must be a positive integer")))?;
            pairs.push((index, e));
        }
        terms.push((Monomial::from_pairs(pairs), value.parse::<Rational>()?));
    }
    Ok(GradedPolynomial::from_terms(table.clone(), terms))
}

pub fn series_to_json<R: Ring>(s: &TruncatedSeries<R>) -> Value {
    let coeffs: Vec<Value> = s.coeffs().iter().map(|c| s.ring().elem_to_json(c)).collect();
    json!({ "var": s.var(), "order": s.order(), "coeffs": coeffs })
}

pub fn series_from_json<R: Ring>(ring: &R, v: &Value) -> Result<TruncatedSeries<R>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("series must be a JSON object".into()))?;
    let var = obj
        .get("var")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("series is missing \"var\"".into()))?;
    let order = obj
        .get("order")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("series is missing \"order\"".into()))? as usize;
    let coeffs = obj
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("series is missing \"coeffs\"".into()))?;
    if coeffs.len() != order + 1 {
        return Err(Error::Parse(format!(
            "series of order {order} must list {} coefficients, found {}",
            order + 1,
            coeffs.len()
        )));
    }
    let elems = coeffs
        .iter()
        .map(|c| ring.elem_from_json(c))
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries::from_coeffs(ring, var, elems))
}

pub fn bivariate_to_json<R: Ring>(s: &BivariateSeries<R>) -> Value {
    let mut entries: Vec<(usize, usize, Value)> = s
        .terms()
        .map(|((i, j), c)| (i, j, s.ring().elem_to_json(c)))
        .collect();
    entries.sort_by_key(|&(i, j, _)| (i + j, i));
    let coeffs: Vec<Value> = entries
        .into_iter()
        .map(|(i, j, c)| json!([i, j, c]))
        .collect();
    json!({
        "vars": [s.vars().0, s.vars().1],
        "order": s.order(),
        "coeffs": coeffs,
    })
}

pub fn bivariate_from_json<R: Ring>(ring: &R, v: &Value) -> Result<BivariateSeries<R>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("bivariate series must be a JSON object".into()))?;
    let vars = obj
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("bivariate series is missing \"vars\"".into()))?;
    if vars.len() != 2 {
        return Err(Error::Parse("\"vars\" must list two variables".into()));
    }
    let vx = vars[0].as_str().ok_or_else(|| Error::Parse("variable must be a string".into()))?;
    let vy = vars[1].as_str().ok_or_else(|| Error::Parse("variable must be a string".into()))?;
    let order = obj
        .get("order")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("bivariate series is missing \"order\"".into()))? as usize;
    let coeffs = obj
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("bivariate series is missing \"coeffs\"".into()))?;
    let mut terms = BTreeMap::new();
    for entry in coeffs {
        let triple = entry
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| Error::Parse("bivariate coefficient must be [i, j, element]".into()))?;
        let i = triple[0].as_u64().ok_or_else(|| Error::Parse("bad exponent".into()))? as usize;
        let j = triple[1].as_u64().ok_or_else(|| Error::Parse("bad exponent".into()))? as usize;
        if i + j > order {
            return Err(Error::Parse(format!(
                "term ({i},{j}) exceeds the total-degree bound {order}"
            )));
        }
        terms.insert((i, j), ring.elem_from_json(&triple[2])?);
    }
    Ok(BivariateSeries::from_terms(ring, (vx, vy), order, terms))
}

pub fn fgl_to_json<R: Ring>(f: &FormalGroupLaw<R>) -> Value {
    json!({
        "exp": series_to_json(f.exponential()),
        "log": series_to_json(f.logarithm()),
        "law": bivariate_to_json(f.law()),
        "order": f.order(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use crate::ring::{power_sum_table, PolyRing, Rationals};

    #[test]
    fn poly_json_round_trip() {
        let table = power_sum_table(3);
        let ring = PolyRing::new(table.clone());
        let p1 = ring.generator("p_1").unwrap();
        let p2 = ring.generator("p_2").unwrap();
        let p = p2.sub(&p1.mul(&p1).unwrap()).unwrap().scale(&ratio(1, 2));
        let v = poly_to_json(&p);
        assert_eq!(
            v,
            serde_json::json!([
                {"monomial": {"p_2": 1}, "value": "1/2"},
                {"monomial": {"p_1": 2}, "value": "-1/2"},
            ])
        );
        let back = poly_from_json(&table, &v).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn series_json_round_trip() {
        let s = TruncatedSeries::from_rationals(&Rationals, "t", &[rat(0), rat(1), ratio(-1, 2)]);
        let v = series_to_json(&s);
        assert_eq!(
            v,
            serde_json::json!({"var": "t", "order": 2, "coeffs": ["0", "1", "-1/2"]})
        );
        let back = series_from_json(&Rationals, &v).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn series_json_rejects_wrong_length() {
        let v = serde_json::json!({"var": "t", "order": 3, "coeffs": ["0", "1"]});
        assert!(series_from_json(&Rationals, &v).is_err());
    }

    #[test]
    fn symbolic_series_round_trip() {
        let ring = PolyRing::new(power_sum_table(2));
        let p1 = ring.generator("p_1").unwrap();
        let s = TruncatedSeries::from_coeffs(&Rationals, "x", vec![rat(1)]);
        drop(s);
        let sym = TruncatedSeries::from_coeffs(&ring, "x", vec![ring.zero(), p1]);
        let v = series_to_json(&sym);
        let back = series_from_json(&ring, &v).unwrap();
        assert_eq!(back, sym);
    }

    #[test]
    fn bivariate_json_is_sorted_by_total_degree() {
        let ring = Rationals;
        let mut terms = BTreeMap::new();
        terms.insert((1, 1), rat(-1));
        terms.insert((0, 1), rat(1));
        terms.insert((1, 0), rat(1));
        let law = BivariateSeries::from_terms(&ring, ("x", "y"), 4, terms);
        let v = bivariate_to_json(&law);
        assert_eq!(
            v,
            serde_json::json!({
                "vars": ["x", "y"], "order": 4,
                "coeffs": [[0, 1, "1"], [1, 0, "1"], [1, 1, "-1"]],
            })
        );
        let back = bivariate_from_json(&ring, &v).unwrap();
        assert_eq!(back, law);
    }
}
