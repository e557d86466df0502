//! Exact rational characters of `A_Γ` and `BB_Γ`.
//!
//! A character of `A_Γ` is determined by its values on the vertex
//! generators. Since `[A_Γ, A_Γ] = [BB_Γ, BB_Γ]` for connected Γ, a character
//! of `BB_Γ` is a vertex-weight vector modulo adding a constant (the
//! direction of the map sending every generator to 1). [`BbCharacter`]
//! stores the representative whose first vertex has weight 0.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

pub type Rational = BigRational;

/// Parses `"p/q"` or `"p"` (optionally signed) into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::InvalidCharacter(format!("{text:?} is not a rational number"));
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p).map_err(|_| bad())?;
            let q = BigInt::from_str(q).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::InvalidCharacter(format!("{text:?} has zero denominator")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

/// Canonical `"p/q"` with `q > 0` and `gcd(p, q) = 1`; integers keep `/1`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses a character document: a JSON object mapping vertex ids to
/// rational strings (JSON integers are accepted as well).
pub fn parse_weight_document(text: &str) -> Result<BTreeMap<String, Rational>> {
    let doc: BTreeMap<String, serde_json::Value> = serde_json::from_str(text)
        .map_err(|e| Error::InvalidCharacter(format!("malformed character document: {e}")))?;
    doc.into_iter()
        .map(|(k, v)| {
            let q = match &v {
                serde_json::Value::String(s) => parse_rational(s)?,
                serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string())?,
                other => {
                    return Err(Error::InvalidCharacter(format!(
                        "weight of {k:?} must be a rational string, got {other}"
                    )))
                }
            };
            Ok((k, q))
        })
        .collect()
}

fn weights_from_map(g: &Graph, map: &BTreeMap<String, Rational>) -> Result<Vec<Rational>> {
    if let Some(extra) = map.keys().find(|k| g.index_of(k).is_none()) {
        return Err(Error::UnknownVertex(extra.clone()));
    }
    g.names()
        .iter()
        .map(|name| {
            map.get(name)
                .cloned()
                .ok_or_else(|| Error::InvalidCharacter(format!("no weight for vertex {name:?}")))
        })
        .collect()
}

fn weights_to_json(g: &Graph, weights: &[Rational]) -> serde_json::Value {
    let map: serde_json::Map<String, serde_json::Value> = g
        .names()
        .iter()
        .zip(weights)
        .map(|(n, w)| (n.clone(), serde_json::Value::from(format_rational(w))))
        .collect();
    serde_json::Value::Object(map)
}

/// A nonzero character `μ : A_Γ → ℚ`, one weight per vertex in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RaagCharacter {
    weights: Vec<Rational>,
}

impl RaagCharacter {
    pub fn new(g: &Graph, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != g.vertex_count() {
            return Err(Error::InvalidCharacter(format!(
                "expected {} weights, got {}",
                g.vertex_count(),
                weights.len()
            )));
        }
        if weights.iter().all(Zero::is_zero) {
            return Err(Error::InvalidCharacter("the zero map is not a character".into()));
        }
        Ok(RaagCharacter { weights })
    }

    pub fn from_integers(g: &Graph, weights: &[i64]) -> Result<Self> {
        Self::new(g, weights.iter().map(|&w| Rational::from_integer(w.into())).collect())
    }

    pub fn from_map(g: &Graph, map: &BTreeMap<String, Rational>) -> Result<Self> {
        Self::new(g, weights_from_map(g, map)?)
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Vertices with nonzero weight.
    pub fn living(&self) -> VertexSet {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(v, _)| v)
            .collect()
    }

    /// Vertices with zero weight.
    pub fn dead(&self) -> VertexSet {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| w.is_zero())
            .map(|(v, _)| v)
            .collect()
    }

    /// `λ · μ`; `λ` must be nonzero.
    pub fn scaled(&self, lambda: &Rational) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidArgument("scaling by zero".into()));
        }
        Ok(RaagCharacter {
            weights: self.weights.iter().map(|w| w * lambda).collect(),
        })
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        weights_to_json(g, &self.weights)
    }
}

/// A character of `BB_Γ`: vertex weights modulo a common shift, stored with
/// the first vertex at weight 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BbCharacter {
    weights: Vec<Rational>,
}

impl BbCharacter {
    /// Canonicalizes `weights`; rejects constant weight vectors, which vanish
    /// on `BB_Γ`.
    pub fn new(g: &Graph, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != g.vertex_count() {
            return Err(Error::InvalidCharacter(format!(
                "expected {} weights, got {}",
                g.vertex_count(),
                weights.len()
            )));
        }
        let Some(anchor) = weights.first().cloned() else {
            return Err(Error::InvalidCharacter("graph has no vertices".into()));
        };
        if weights.iter().all(|w| *w == anchor) {
            return Err(Error::InvalidCharacter(
                "constant weights restrict to the zero map on BB_Γ".into(),
            ));
        }
        Ok(BbCharacter {
            weights: weights.into_iter().map(|w| w - &anchor).collect(),
        })
    }

    pub fn from_integers(g: &Graph, weights: &[i64]) -> Result<Self> {
        Self::new(g, weights.iter().map(|&w| Rational::from_integer(w.into())).collect())
    }

    pub fn from_map(g: &Graph, map: &BTreeMap<String, Rational>) -> Result<Self> {
        Self::new(g, weights_from_map(g, map)?)
    }

    /// Canonical weights `c(v)`, with `c(first vertex) = 0`.
    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Sorted distinct `t` for which `c + t` vanishes somewhere.
    pub fn critical_values(&self) -> Vec<Rational> {
        let mut ts: Vec<Rational> = self.weights.iter().map(|w| -w).collect();
        ts.sort();
        ts.dedup();
        ts
    }

    /// The extension `μ_t = c + t` of χ to `A_Γ`; never the zero map since
    /// `c` is not constant.
    pub fn extension_at(&self, t: &Rational) -> RaagCharacter {
        RaagCharacter {
            weights: self.weights.iter().map(|w| w + t).collect(),
        }
    }

    /// Partition of the vertices into equal-weight classes, ordered by weight.
    pub fn level_sets(&self) -> Vec<VertexSet> {
        let mut classes: BTreeMap<&Rational, VertexSet> = BTreeMap::new();
        for (v, w) in self.weights.iter().enumerate() {
            classes.entry(w).or_default().insert(v);
        }
        classes.into_values().collect()
    }

    /// Positive multiples give the same point of the character sphere.
    pub fn scaled(&self, lambda: &Rational) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::InvalidArgument("scaling factor must be positive".into()));
        }
        Ok(BbCharacter {
            weights: self.weights.iter().map(|w| w * lambda).collect(),
        })
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        weights_to_json(g, &self.weights)
    }
}
