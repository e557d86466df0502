//! Σⁿ membership for right-angled Artin groups.
//!
//! A vertex is *living* when its weight is nonzero. A *dead simplex* is a
//! clique of dead vertices, including the empty simplex. The class `[μ]` lies
//! in `Σⁿ(A_Γ)` iff, for every dead simplex σ, the living part of `lk(σ)` is
//! `(n − dim σ − 2)`-acyclic (homological) or satisfies the homotopical
//! [`LevelCondition`]. For σ = ∅ that is the living subcomplex itself, so at
//! `n = 1` this reads "connected and every dead vertex has a living
//! neighbour".

use std::sync::Arc;

use serde_json::json;

use crate::character::{format_rational, Rational, RaagCharacter};
use crate::complex::{common_neighbors, flag_complex, full_subcomplex, link, FlagComplex, Simplex};
use crate::connectivity::Answer;
use crate::graph::Graph;
use crate::homology::{reduced_homology, HomologyGroup};
use crate::variant::{LevelCheck, LevelCondition, Variant};
use crate::{Error, Limits, Result};

/// Why one dead simplex violates the criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeadSimplexFailure {
    pub sigma: Simplex,
    /// `n − dim σ − 2`.
    pub required_level: i64,
    /// Degree of the first nonvanishing reduced homology group.
    pub failing_index: i64,
    pub homology: HomologyGroup,
}

impl DeadSimplexFailure {
    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        json!({
            "sigma": self.sigma.names(g),
            "required_level": self.required_level,
            "failing_index": self.failing_index,
            "homology": self.homology,
        })
    }
}

/// Replayable evidence for a `No`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// The extension parameter `t` when the verdict concerns `BB_Γ`.
    pub critical_value: Option<Rational>,
    pub failure: DeadSimplexFailure,
}

impl Witness {
    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        let mut value = self.failure.to_json(g);
        if let Some(t) = &self.critical_value {
            value["t"] = json!(format_rational(t));
        }
        value
    }
}

/// A tri-state membership answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub value: Answer,
    pub level: usize,
    pub variant: Variant,
    /// Present exactly when `value` is `No`.
    pub witness: Option<Witness>,
    /// Present exactly when `value` is `Unknown`.
    pub reason: Option<String>,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        self.value == Answer::Yes
    }

    pub fn is_no(&self) -> bool {
        self.value == Answer::No
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        let mut value = json!({
            "verdict": self.value,
            "n": self.level,
            "variant": self.variant,
        });
        if let Some(w) = &self.witness {
            value["witness"] = w.to_json(g);
        }
        if let Some(r) = &self.reason {
            value["reason"] = json!(r);
        }
        if !self.notes.is_empty() {
            value["notes"] = json!(self.notes);
        }
        value
    }
}

/// The full subcomplex of Δ on the living vertices.
pub fn living_subcomplex(delta: &FlagComplex, mu: &RaagCharacter, limits: &Limits) -> Result<FlagComplex> {
    check_character(delta.graph(), mu)?;
    let living = mu.living().intersection(delta.vertex_set());
    full_subcomplex(delta, &living, limits)
}

fn check_character(g: &Graph, mu: &RaagCharacter) -> Result<()> {
    if mu.weights().len() != g.vertex_count() {
        return Err(Error::InvalidCharacter(format!(
            "character has {} weights for {} vertices",
            mu.weights().len(),
            g.vertex_count()
        )));
    }
    Ok(())
}

fn check_level(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument("n must be ≥ 1".into()))
    } else {
        Ok(())
    }
}

/// The empty simplex followed by every dead clique of dimension ≤ n − 1,
/// by dimension then lexicographically. Larger dead simplices only impose
/// vacuous conditions.
pub fn dead_simplices(delta: &FlagComplex, mu: &RaagCharacter, n: usize, limits: &Limits) -> Result<Vec<Simplex>> {
    check_level(n)?;
    check_character(delta.graph(), mu)?;
    let dead = mu.dead().intersection(delta.vertex_set());
    let dead_complex = FlagComplex::build(delta.graph().clone(), dead, n as i64 - 1, limits)?;
    let mut out = vec![Simplex::EMPTY];
    for d in 0..n as i64 {
        out.extend(dead_complex.simplices(d)?.iter().cloned());
    }
    Ok(out)
}

/// Evaluates the condition attached to one dead simplex.
pub fn check_dead_simplex(
    g: &Arc<Graph>,
    mu: &RaagCharacter,
    sigma: &Simplex,
    n: usize,
    condition: &dyn LevelCondition,
    limits: &Limits,
) -> Result<LevelCheck> {
    let level = n as i64 - sigma.dim() - 2;
    if level <= -2 {
        return Ok(LevelCheck::Pass);
    }
    let whole = sigma.is_empty();
    let vertices = common_neighbors(g, sigma, &mu.living());
    let complex = FlagComplex::build(g.clone(), vertices, condition.required_dim(level, whole), limits)?;
    condition.check(&complex, level, whole, limits)
}

/// Decides `[μ] ∈ Σⁿ(A_Γ)` (homological: `Σⁿ(A_Γ, ℤ)`) under `condition`.
pub fn raag_sigma(
    g: &Arc<Graph>,
    mu: &RaagCharacter,
    n: usize,
    condition: &dyn LevelCondition,
    limits: &Limits,
) -> Result<Verdict> {
    check_level(n)?;
    check_character(g, mu)?;
    let mut notes: Vec<String> = condition.note(n).into_iter().collect();
    if !g.is_connected() {
        notes.push("defining graph is disconnected".to_string());
    }
    let delta = FlagComplex::build(g.clone(), g.all_vertices(), -1, limits)?;
    let mut first_unknown: Option<String> = None;
    for sigma in dead_simplices(&delta, mu, n, limits)? {
        match check_dead_simplex(g, mu, &sigma, n, condition, limits)? {
            LevelCheck::Pass => {}
            LevelCheck::Fail {
                failing_index,
                homology,
            } => {
                return Ok(Verdict {
                    value: Answer::No,
                    level: n,
                    variant: condition.variant(),
                    witness: Some(Witness {
                        critical_value: None,
                        failure: DeadSimplexFailure {
                            required_level: n as i64 - sigma.dim() - 2,
                            sigma,
                            failing_index,
                            homology,
                        },
                    }),
                    reason: None,
                    notes,
                });
            }
            LevelCheck::Undetermined(reason) => {
                if first_unknown.is_none() {
                    first_unknown = Some(format!("dead simplex {:?}: {reason}", sigma.names(g)));
                }
            }
        }
    }
    Ok(Verdict {
        value: if first_unknown.is_some() { Answer::Unknown } else { Answer::Yes },
        level: n,
        variant: condition.variant(),
        witness: None,
        reason: first_unknown,
        notes,
    })
}

/// [`raag_sigma`] with a built-in variant.
pub fn raag_sigma_variant(
    g: &Arc<Graph>,
    mu: &RaagCharacter,
    n: usize,
    variant: Variant,
    limits: &Limits,
) -> Result<Verdict> {
    raag_sigma(g, mu, n, variant.condition(), limits)
}

/// Rebuilds the living link of the witnessed dead simplex as
/// `full_subcomplex(lk(Δ, σ), living)` and checks that its homology at the
/// recorded degree is the recorded nonzero group, with all lower degrees
/// vanishing.
pub fn replay_failure(g: &Arc<Graph>, mu: &RaagCharacter, failure: &DeadSimplexFailure, limits: &Limits) -> Result<bool> {
    let f = failure;
    if f.homology.is_trivial() || f.failing_index > f.required_level {
        return Ok(false);
    }
    let dead = mu.dead();
    if f.sigma.vertices().iter().any(|&v| !dead.contains(v)) {
        return Ok(false);
    }
    let delta = flag_complex(g, f.sigma.dim() + f.failing_index + 2, limits)?;
    if !delta.contains(&f.sigma) {
        return Ok(false);
    }
    let lk = link(&delta, &f.sigma, limits)?;
    let living = mu.living().intersection(lk.vertex_set());
    let living_link = full_subcomplex(&lk, &living, limits)?;
    for i in -1..f.failing_index {
        if !reduced_homology(&living_link, i)?.is_trivial() {
            return Ok(false);
        }
    }
    Ok(reduced_homology(&living_link, f.failing_index)? == f.homology)
}

/// `[χ] ∈ Σⁿ(F₂^m)` for a character nonzero on exactly `nonzero_parts`
/// factors: membership holds iff at least `n + 1` factors are hit.
pub fn multipartite_oracle(m: usize, nonzero_parts: usize, n: usize) -> Result<bool> {
    check_level(n)?;
    if nonzero_parts == 0 {
        return Err(Error::InvalidCharacter("zero character".into()));
    }
    if nonzero_parts > m {
        return Err(Error::InvalidArgument(format!("{nonzero_parts} nonzero parts out of {m}")));
    }
    Ok(nonzero_parts > n)
}
