//! JSON form of points, conditions and derivation bases.
//!
//! ```text
//! {"type": "chardiff", "alpha": [1, 0], "beta": ["1/2", 3], "c": 1}
//! {"type": "derivation", "point": [0, 1],
//!  "terms": [{"coeff": 1, "partials": [1, 2]},
//!            {"coeff": "-3", "partials": [2], "point": [1, 1]}]}
//! ```
//!
//! Rationals are integers or strings `p/q`; partials list 1-based variable
//! indices with repetition. A term without `point` sits at the condition's
//! point.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::functional::{Condition, ConditionKind, DerivativeAtom, LinearFunctional};
use crate::poly::{PartialMultiset, Point};
use crate::scalar::Field;

fn bad(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

pub fn scalar_to_json<F: Field>(c: &F) -> Value {
    Value::String(c.to_string())
}

pub fn scalar_from_json<F: Field>(v: &Value) -> Result<F> {
    match v {
        Value::Number(x) => {
            let i = x.as_i64().ok_or_else(|| bad(format!("not an integer: {x}; write fractions as strings")))?;
            Ok(F::from_int(i))
        }
        Value::String(s) => s.trim().parse::<F>().map_err(|_| bad(format!("not a rational: {s:?}"))),
        other => Err(bad(format!("expected a rational, found {other}"))),
    }
}

pub fn point_to_json<F: Field>(p: &Point<F>) -> Value {
    Value::Array(p.coords().iter().map(scalar_to_json).collect())
}

pub fn point_from_json<F: Field>(v: &Value, n: usize) -> Result<Point<F>> {
    let items = v.as_array().ok_or_else(|| bad(format!("expected a point, found {v}")))?;
    if items.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: items.len() });
    }
    Ok(Point::new(items.iter().map(scalar_from_json).collect::<Result<_>>()?))
}

/// Parses `"1,2;0,-1/2"` into points.
pub fn points_from_text<F: Field>(text: &str) -> Result<Vec<Point<F>>> {
    text.split(';')
        .map(|p| {
            let coords = p
                .split(',')
                .map(|c| c.trim().parse::<F>().map_err(|_| bad(format!("not a rational: {c:?}"))))
                .collect::<Result<Vec<F>>>()?;
            Ok(Point::new(coords))
        })
        .collect()
}

/// A functional as a list of terms; the point is omitted on terms at `home`.
pub fn terms_to_json<F: Field>(l: &LinearFunctional<F>, home: &Point<F>) -> Value {
    let terms: Vec<Value> = l
        .atoms()
        .iter()
        .map(|a| {
            let partials: Vec<usize> = a.partials.indices().into_iter().map(|i| i + 1).collect();
            let mut t = json!({"coeff": scalar_to_json(&a.coeff), "partials": partials});
            if &a.point != home {
                t["point"] = point_to_json(&a.point);
            }
            t
        })
        .collect();
    Value::Array(terms)
}

pub fn condition_to_json<F: Field>(c: &Condition<F>) -> Value {
    match &c.kind {
        ConditionKind::CharacterDifference { alpha, beta } => {
            let scale = c.functional.atoms().iter().find(|a| &a.point == alpha).map(|a| a.coeff.clone()).unwrap();
            json!({
                "type": "chardiff",
                "alpha": point_to_json(alpha),
                "beta": point_to_json(beta),
                "c": scalar_to_json(&scale),
            })
        }
        ConditionKind::Derivation { point } => json!({
            "type": "derivation",
            "point": point_to_json(point),
            "terms": terms_to_json(&c.functional, point),
        }),
    }
}

pub fn functional_from_terms<F: Field>(terms: &Value, home: &Point<F>, n: usize) -> Result<LinearFunctional<F>> {
    let terms = terms.as_array().ok_or_else(|| bad("\"terms\" must be a list"))?;
    let mut atoms = Vec::with_capacity(terms.len());
    for t in terms {
        let coeff = scalar_from_json(t.get("coeff").ok_or_else(|| bad("term without \"coeff\""))?)?;
        let idx = t.get("partials").and_then(Value::as_array).ok_or_else(|| bad("term without \"partials\" list"))?;
        let mut indices = Vec::with_capacity(idx.len());
        for i in idx {
            let i = i.as_u64().filter(|&i| i >= 1 && i as usize <= n).ok_or_else(|| {
                bad(format!("partial index {i} out of range 1..={n}"))
            })?;
            indices.push(i as usize - 1);
        }
        let point = match t.get("point") {
            Some(p) => point_from_json(p, n)?,
            None => home.clone(),
        };
        atoms.push(DerivativeAtom { coeff, point, partials: PartialMultiset::from_indices(n, &indices) });
    }
    LinearFunctional::new(n, atoms)
}

pub fn condition_from_json<F: Field>(v: &Value, n: usize) -> Result<Condition<F>> {
    let kind = v.get("type").and_then(Value::as_str).ok_or_else(|| bad("condition without \"type\""))?;
    let field = |k: &str| v.get(k).ok_or_else(|| bad(format!("{kind} condition without {k:?}")));
    match kind {
        "chardiff" => {
            let alpha = point_from_json(field("alpha")?, n)?;
            let beta = point_from_json(field("beta")?, n)?;
            let c = match v.get("c") {
                Some(c) => scalar_from_json(c)?,
                None => F::one(),
            };
            Condition::character_difference(&alpha, &beta, c)
        }
        "derivation" => {
            let point = point_from_json(field("point")?, n)?;
            let l = functional_from_terms(field("terms")?, &point, n)?;
            Condition::derivation(&point, l)
        }
        other => Err(bad(format!("unknown condition type {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type Q = Rational;

    #[test]
    fn round_trips() {
        let a = Point::<Q>::from_ints(&[3, 2, 5]);
        let b = Point::<Q>::from_ints(&[1, -3, 2]);
        let l = LinearFunctional::new(
            3,
            [
                DerivativeAtom { coeff: Q::from_int(1), point: a.clone(), partials: PartialMultiset::from_indices(3, &[0]) },
                DerivativeAtom { coeff: Q::from_int(-3), point: b.clone(), partials: PartialMultiset::from_indices(3, &[1]) },
            ],
        )
        .unwrap();
        let d = Condition::derivation(&a, l).unwrap();
        let v = condition_to_json(&d);
        assert_eq!(v["terms"][0]["point"], json!(["1", "-3", "2"]));
        assert!(v["terms"][1].get("point").is_none());
        assert_eq!(condition_from_json::<Q>(&v, 3).unwrap(), d);
        let c = Condition::character_difference(&a, &b, Q::new(2.into(), 3.into())).unwrap();
        assert_eq!(condition_from_json::<Q>(&condition_to_json(&c), 3).unwrap(), c);
    }

    #[test]
    fn accepts_integers_and_rejects_junk() {
        let v = json!({"type": "chardiff", "alpha": [1], "beta": ["-1"]});
        let c = condition_from_json::<Q>(&v, 1).unwrap();
        assert_eq!(c.functional.apply(&crate::poly::parse_polynomial("x", 1).unwrap()).unwrap(), Q::from_int(2));
        assert!(condition_from_json::<Q>(&json!({"type": "chardiff", "alpha": [1, 2], "beta": [0]}), 1).is_err());
        assert!(condition_from_json::<Q>(&json!({"type": "other"}), 1).is_err());
        let bad_index = json!({"type": "derivation", "point": [0], "terms": [{"coeff": 1, "partials": [2]}]});
        assert!(condition_from_json::<Q>(&bad_index, 1).is_err());
        assert_eq!(points_from_text::<Q>("0,0; 1/2,-1").unwrap()[1], Point::new(vec![Q::new(1.into(), 2.into()), Q::from_int(-1)]));
        assert!(points_from_text::<Q>("0,a").is_err());
    }
}
