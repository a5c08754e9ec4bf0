//! JSON forms of lattices and points; rationals are strings `"p/q"` or `"p"`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ambient::AmbientDescriptor;
use crate::error::{Error, Result};
use crate::lattice::TraceLattice;
use crate::linalg::{parse_rational, Matrix, Rational};

pub fn rat(r: &Rational) -> String {
    r.to_string()
}

pub fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(rat).collect()
}

pub fn ints(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

pub fn matrix(m: &Matrix) -> Vec<Vec<String>> {
    m.to_string_rows()
}

pub fn parse_rat_str(s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| Error::Expression(e.to_string()))
}

/// A JSON scalar that is an integer or a rational string.
pub fn parse_rat_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rat_str(s),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(BigInt::from(i)))
            .ok_or_else(|| Error::Expression(format!("{n} is not an integer"))),
        other => Err(Error::Expression(format!("expected a rational, found {other}"))),
    }
}

/// A square array of arrays of rationals.
pub fn parse_matrix_value(v: &Value) -> Result<Matrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Expression("expected an array of rows".into()))?;
    let rows: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Expression("expected a row array".into()))?
                .iter()
                .map(parse_rat_value)
                .collect()
        })
        .collect::<Result<_>>()?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: rows.first().map_or(0, Vec::len),
        });
    }
    Ok(Matrix::from_rows(rows))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub ambient: AmbientDescriptor,
    pub basis: Vec<Vec<String>>,
    pub gram: Vec<Vec<String>>,
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub root_type: Option<String>,
}

impl LatticeJson {
    pub fn new(l: &TraceLattice, root_type: Option<String>) -> Self {
        Self {
            ambient: l.ambient().descriptor(),
            basis: matrix(l.basis()),
            gram: matrix(l.gram()),
            root_type,
        }
    }

    /// Rebuild the lattice; the recorded Gram must match the recomputed one.
    pub fn to_lattice(&self) -> Result<TraceLattice> {
        let ambient = self.ambient.build()?;
        let parse = |rows: &[Vec<String>]| -> Result<Vec<Vec<Rational>>> {
            rows.iter()
                .map(|r| r.iter().map(|s| parse_rat_str(s)).collect())
                .collect()
        };
        let l = TraceLattice::from_rows(ambient, parse(&self.basis)?)?;
        if matrix(l.gram()) != self.gram {
            let recorded = Matrix::from_rows(parse(&self.gram)?);
            if &recorded != l.gram() {
                return Err(Error::Invariant("recorded Gram does not match the basis".into()));
            }
        }
        Ok(l)
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::Ambient;
    use crate::linalg::frac;
    use crate::quadratic::QuadAmbient;
    use serde_json::json;

    #[test]
    fn lattice_round_trip() {
        let amb = Ambient::Quadratic(QuadAmbient::new(3, 1).unwrap());
        let h = frac(1, 2);
        let l = TraceLattice::from_rows(amb, vec![vec![h.clone(), h.clone()], vec![h.clone(), -h]])
            .unwrap();
        let j = LatticeJson::new(&l, Some("A2".into()));
        let v = j.to_value();
        assert_eq!(v["ambient"], json!({"kind": "quadratic", "d": 3, "sign": 1}));
        assert_eq!(v["basis"][1], json!(["1/2", "-1/2"]));
        assert_eq!(v["type"], json!("A2"));
        let back: LatticeJson = serde_json::from_value(v).unwrap();
        assert!(back.to_lattice().unwrap().lattice_equal(&l).unwrap());
    }

    #[test]
    fn matrices_from_json() {
        let m = parse_matrix_value(&json!([[2, "1/2"], ["1/2", 2]])).unwrap();
        assert_eq!(m[(0, 1)], frac(1, 2));
        assert!(parse_matrix_value(&json!([[1, 2]])).is_err());
        assert!(parse_matrix_value(&json!([[1, "x"], [0, 1]])).is_err());
    }
}
