//! Stanley–Reisner presentations of smooth projective toric surfaces.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::algebra::{int, Polynomial, VariableTable};
use crate::error::{Error, Result};
use crate::groebner::GradedPresentation;

const POLYGONS: &str = include_str!("../../data/polygons.json");

/// A polygon with one characteristic vector per edge, edges listed in cyclic
/// order.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
pub struct Polygon {
    pub description: String,
    pub characteristic: Vec<[i64; 2]>,
}

fn catalog() -> &'static BTreeMap<String, Polygon> {
    static CATALOG: OnceLock<BTreeMap<String, Polygon>> = OnceLock::new();
    CATALOG.get_or_init(|| serde_json::from_str(POLYGONS).expect("bundled polygon data"))
}

pub fn polygon_names() -> Vec<&'static str> {
    catalog().keys().map(|k| k.as_str()).collect()
}

pub fn polygon(name: &str) -> Result<&'static Polygon> {
    catalog()
        .get(name)
        .ok_or_else(|| Error::Range(format!("unknown polygon `{name}`; known: {}", polygon_names().join(", "))))
}

/// `Q[v_1..v_k] / (SR + J)` where the Stanley–Reisner ideal kills products of
/// non-adjacent edges (and `v1 v2 v3` for a triangle) and `J` is spanned by
/// `Σ_i λ_i[c] v_i` for both coordinates `c`.
///
/// Adjacent characteristic vectors must form a lattice basis.
pub fn toric_sr(label: &str, characteristic: &[[i64; 2]]) -> Result<GradedPresentation> {
    let k = characteristic.len();
    if k < 3 {
        return Err(Error::Validity(format!("a polygon needs at least 3 edges, got {k}")));
    }
    for i in 0..k {
        let (a, b) = (characteristic[i], characteristic[(i + 1) % k]);
        let det = a[0] * b[1] - a[1] * b[0];
        if det.abs() != 1 {
            return Err(Error::Validity(format!(
                "edges {} and {} meet in a singular vertex (determinant {det})",
                i + 1,
                (i + 1) % k + 1
            )));
        }
    }
    let table = VariableTable::uniform((1..=k).map(|i| format!("v{i}")))?;
    let v = |i: usize| Polynomial::var(&table, i);
    let mut relations = Vec::new();
    for c in 0..2 {
        let mut form = Polynomial::zero(&table);
        for (i, lambda) in characteristic.iter().enumerate() {
            form = &form + &v(i).scale(&int(lambda[c]));
        }
        relations.push(form);
    }
    if k == 3 {
        relations.push(&(&v(0) * &v(1)) * &v(2));
    } else {
        for i in 0..k {
            for j in i + 2..k {
                if !(i == 0 && j == k - 1) {
                    relations.push(&v(i) * &v(j));
                }
            }
        }
    }
    GradedPresentation::new(label, table, relations)
}
