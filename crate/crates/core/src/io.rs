//! JSON interchange. Vertices are 1-based on the wire; integers that fit in
//! `i64` are JSON numbers and larger ones are decimal strings.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::polynomial::IntPolynomial;
use crate::quiver::Quiver;
use crate::scalar::Scalar;
use crate::seed::{Seed, VertexColor};

/// An integer as it appears in JSON: a number or a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WireInt {
    Num(i64),
    Text(String),
}

impl WireInt {
    pub fn parse<T: Scalar>(&self) -> Result<T> {
        match self {
            WireInt::Num(x) => Ok(T::from_i64_exact(*x)),
            WireInt::Text(s) => {
                let t = s.trim();
                let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::Parse(format!("{s:?} is not a decimal integer")));
                }
                T::from_str_radix(t.strip_prefix('+').unwrap_or(t), 10)
                    .map_err(|_| Error::Parse(format!("{s:?} does not fit the scalar type")))
            }
        }
    }
}

/// The file and payload format for quivers, seeds and COQs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub n: usize,
    #[serde(default)]
    pub frozen: Vec<usize>,
    #[serde(default)]
    pub arrows: Vec<(usize, usize, WireInt)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
}

/// A parsed document with 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document<T> {
    pub quiver: Quiver<T>,
    pub path: Option<Vec<usize>>,
    pub order: Option<Vec<usize>>,
}

pub fn parse_document<T: Scalar>(text: &str) -> Result<Document<T>> {
    let doc: QuiverDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_document()
}

pub fn document_from_value<T: Scalar>(v: Value) -> Result<Document<T>> {
    let doc: QuiverDoc = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_document()
}

/// 1-based indices in `1..=n` to 0-based.
pub fn zero_based(vs: &[usize], n: usize, what: &str) -> Result<Vec<usize>> {
    vs.iter()
        .map(|&v| {
            if v == 0 || v > n {
                Err(Error::Parse(format!("{what}: vertex {v} outside 1..={n}")))
            } else {
                Ok(v - 1)
            }
        })
        .collect()
}

impl QuiverDoc {
    pub fn to_document<T: Scalar>(&self) -> Result<Document<T>> {
        let n = self.n;
        let frozen = zero_based(&self.frozen, n, "frozen")?;
        let mut arrows = Vec::with_capacity(self.arrows.len());
        for (u, v, m) in &self.arrows {
            let uv = zero_based(&[*u, *v], n, "arrows")?;
            arrows.push((uv[0], uv[1], m.parse::<T>()?));
        }
        let mut quiver = Quiver::from_arrows(n, &frozen, &arrows)?;
        if let Some(labels) = &self.labels {
            quiver = quiver
                .with_labels(labels.clone())
                .map_err(|e| Error::Parse(e.to_string()))?;
        }
        let path = self.path.as_ref().map(|p| zero_based(p, n, "path")).transpose()?;
        let order = self.order.as_ref().map(|o| zero_based(o, n, "order")).transpose()?;
        Ok(Document { quiver, path, order })
    }

    pub fn from_quiver<T: Scalar>(q: &Quiver<T>) -> Self {
        let default_labels = (0..q.n()).all(|v| q.label(v) == format!("v{}", v + 1));
        QuiverDoc {
            n: q.n(),
            frozen: q.frozen_vertices().iter().map(|v| v + 1).collect(),
            arrows: q
                .arrows()
                .into_iter()
                .map(|(u, v, m)| (u + 1, v + 1, wire_int(&m)))
                .collect(),
            labels: (!default_labels).then(|| q.labels().to_vec()),
            path: None,
            order: None,
        }
    }
}

pub fn wire_int<T: Scalar>(x: &T) -> WireInt {
    match x.to_i64() {
        Some(v) => WireInt::Num(v),
        None => WireInt::Text(x.to_string()),
    }
}

pub fn int_json<T: Scalar>(x: &T) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn ints_json<T: Scalar>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(int_json).collect())
}

pub fn vertices_json(vs: &[usize]) -> Value {
    json!(vs.iter().map(|v| v + 1).collect::<Vec<_>>())
}

pub fn matrix_json<T: Scalar>(m: &Matrix<T>) -> Value {
    Value::Array((0..m.rows()).map(|i| ints_json(m.row(i))).collect())
}

/// Coefficients in ascending degree.
pub fn polynomial_json<T: Scalar>(p: &IntPolynomial<T>) -> Value {
    ints_json(p.coeffs())
}

pub fn quiver_json<T: Scalar>(q: &Quiver<T>) -> Value {
    serde_json::to_value(QuiverDoc::from_quiver(q)).expect("quiver documents serialize")
}

pub fn colors_json(colors: &[VertexColor]) -> Value {
    json!(colors
        .iter()
        .map(|c| match c {
            VertexColor::Green => "green",
            VertexColor::Red => "red",
        })
        .collect::<Vec<_>>())
}

/// Seed document plus the tracked matrices.
pub fn seed_json<T: Scalar>(s: &Seed<T>) -> Result<Value> {
    let mut doc = QuiverDoc::from_quiver(s.initial_quiver());
    doc.path = Some(s.path().iter().map(|v| v + 1).collect());
    Ok(json!({
        "seed": doc,
        "quiver": quiver_json(s.quiver()),
        "B": matrix_json(s.b()),
        "C": matrix_json(s.c()),
        "A": matrix_json(s.a()),
        "U": matrix_json(s.u()),
        "colors": colors_json(&s.colors()?),
    }))
}

pub fn error_json(e: &Error) -> Value {
    let mut v = json!({"error": e.kind(), "message": e.to_string()});
    if let Error::NotProper { vertex, violations } = e {
        v["vertex"] = json!(vertex + 1);
        v["violations"] = json!(violations
            .iter()
            .map(|&(a, b, c)| [a + 1, b + 1, c + 1])
            .collect::<Vec<_>>());
    }
    v
}
