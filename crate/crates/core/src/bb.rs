//! Σⁿ membership for Bestvina-Brady groups, and the structure of the
//! complement of `Σ¹(BB_Γ)`.
//!
//! `[χ] ∈ Σⁿ(BB_Γ)` iff every extension `μ_t = c + t` of χ to `A_Γ` lies in
//! `Σⁿ(A_Γ)`. For `t` outside the critical values `−c(v)` the extension has
//! no dead vertex, and its condition is exactly the finiteness hypothesis
//! (`Δ` is `(n−1)`-acyclic, resp. connected), so only the finitely many
//! critical `t` need checking.
//!
//! At `n = 1` a critical extension fails exactly when its dead set, a level
//! set of `c`, is *bad*: its complement is disconnected or some member has
//! no neighbour outside it. Badness is inherited by supersets, so
//! `Σ¹(BB_Γ)ᶜ` is the union, over inclusion-minimal bad sets `D`, of the
//! subspheres `{c(u) = c(v) : u, v ∈ D}`.

use std::sync::Arc;

use serde_json::json;

use crate::character::{format_rational, BbCharacter};
use crate::complex::flag_complex;
use crate::connectivity::{subscript, Answer, TriState};
use crate::graph::{Graph, VertexSet};
use crate::raag::{raag_sigma, Verdict, Witness};
use crate::variant::{LevelCheck, LevelCondition, Variant};
use crate::{Error, Limits, Result};

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Precondition(
            "defining graph must be connected (otherwise BB_Γ is not finitely generated)".into(),
        ))
    }
}

/// Whether `BB_Γ` is of type `FP_n` (homological) or `F_n` (homotopical):
/// the flag complex must be `(n−1)`-acyclic, resp. `(n−1)`-connected.
pub fn bb_finiteness(g: &Arc<Graph>, n: usize, condition: &dyn LevelCondition, limits: &Limits) -> Result<TriState> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be ≥ 1".into()));
    }
    require_connected(g)?;
    let level = n as i64 - 1;
    let delta = flag_complex(g, condition.required_dim(level, true), limits)?;
    Ok(match condition.check(&delta, level, true, limits)? {
        LevelCheck::Pass => TriState::yes(format!("flag complex is {level}-acyclic")),
        LevelCheck::Fail {
            failing_index,
            homology,
        } => TriState::no(format!("H̃{}(Δ) = {homology}", subscript(failing_index))),
        LevelCheck::Undetermined(reason) => TriState::unknown(reason),
    })
}

/// Decides `[χ] ∈ Σⁿ(BB_Γ)` by checking every critical extension.
///
/// Fails with a precondition error when `BB_Γ` is not of the finiteness type
/// the invariant requires. When that type cannot be certified (homotopical
/// variant, π₁ left open) the verdict is `Unknown`.
pub fn bb_sigma(
    g: &Arc<Graph>,
    chi: &BbCharacter,
    n: usize,
    condition: &dyn LevelCondition,
    limits: &Limits,
) -> Result<Verdict> {
    if chi.weights().len() != g.vertex_count() {
        return Err(Error::InvalidCharacter("character does not match the graph".into()));
    }
    let finiteness = bb_finiteness(g, n, condition, limits)?;
    let type_name = match condition.variant() {
        Variant::Homological => "FP",
        Variant::Homotopical => "F",
    };
    match finiteness.value {
        Answer::No => {
            return Err(Error::Precondition(format!(
                "BB_Γ is not of type {type_name}_{n} ({}); Σ^{n} is undefined",
                finiteness.reason
            )))
        }
        Answer::Unknown => {
            return Ok(Verdict {
                value: Answer::Unknown,
                level: n,
                variant: condition.variant(),
                witness: None,
                reason: Some(format!("finiteness type {type_name}_{n} undetermined: {}", finiteness.reason)),
                notes: Vec::new(),
            })
        }
        Answer::Yes => {}
    }
    bb_sweep(g, chi, n, condition, limits)
}

/// The critical-value sweep without the finiteness precondition.
pub(crate) fn bb_sweep(
    g: &Arc<Graph>,
    chi: &BbCharacter,
    n: usize,
    condition: &dyn LevelCondition,
    limits: &Limits,
) -> Result<Verdict> {
    let mut first_unknown = None;
    for t in chi.critical_values() {
        let verdict = raag_sigma(g, &chi.extension_at(&t), n, condition, limits)?;
        match verdict.value {
            Answer::Yes => {}
            Answer::No => {
                let failure = verdict.witness.expect("No verdicts carry a witness").failure;
                return Ok(Verdict {
                    witness: Some(Witness {
                        critical_value: Some(t),
                        failure,
                    }),
                    ..verdict
                });
            }
            Answer::Unknown => {
                if first_unknown.is_none() {
                    first_unknown = Some(format!(
                        "t = {}: {}",
                        format_rational(&t),
                        verdict.reason.unwrap_or_default()
                    ));
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
        notes: condition.note(n).into_iter().collect(),
    })
}

/// [`bb_sigma`] with a built-in variant.
pub fn bb_sigma_variant(g: &Arc<Graph>, chi: &BbCharacter, n: usize, variant: Variant, limits: &Limits) -> Result<Verdict> {
    bb_sigma(g, chi, n, variant.condition(), limits)
}

/// Adjacency as bitmasks, for graphs with at most 64 vertices.
fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, w| m | 1 << w))
        .collect()
}

fn is_bad_mask(adj: &[u64], all: u64, dead: u64) -> bool {
    let rest = all & !dead;
    if rest == 0 {
        return true;
    }
    // Some dead vertex without a living neighbour.
    let mut d = dead;
    while d != 0 {
        let v = d.trailing_zeros() as usize;
        d &= d - 1;
        if adj[v] & rest == 0 {
            return true;
        }
    }
    // Living part disconnected.
    let mut reached = rest & rest.wrapping_neg();
    let mut frontier = reached;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & rest & !reached;
        reached |= new;
        frontier |= new;
    }
    reached != rest
}

/// `D` is bad iff the subgraph induced on `V ∖ D` is empty or disconnected,
/// or some vertex of `D` has no neighbour in `V ∖ D`.
pub fn is_bad(g: &Graph, dead: &VertexSet) -> bool {
    let rest = g.all_vertices().difference(dead);
    rest.is_empty()
        || dead.iter().any(|v| g.neighbors(v).intersection(&rest).is_empty())
        || !g.is_connected_within(&rest)
}

/// Every inclusion-minimal bad proper subset of V, ordered by size and then
/// lexicographically.
pub fn minimal_bad_sets(g: &Graph, limits: &Limits) -> Result<Vec<VertexSet>> {
    require_connected(g)?;
    let n = g.vertex_count();
    let cap = limits.max_bad_set_vertices.min(63);
    if n > cap {
        return Err(Error::ResourceCap(format!(
            "minimal bad set enumeration is limited to {cap} vertices, graph has {n}"
        )));
    }
    let adj = adjacency_masks(g);
    let all: u64 = (1u64 << n) - 1;
    let mut found: Vec<u64> = Vec::new();
    for size in 1..n {
        let mut level = Vec::new();
        // Gosper's hack over the subsets of the given size.
        let mut mask: u64 = (1u64 << size) - 1;
        while mask < 1u64 << n {
            if !found.iter().any(|&b| b & !mask == 0) && is_bad_mask(&adj, all, mask) {
                level.push(mask);
            }
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
        found.extend(level);
    }
    let mut sets: Vec<Vec<usize>> = found
        .into_iter()
        .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(sets.into_iter().map(|s| s.into_iter().collect()).collect())
}

/// A finite union of rational subspheres of the character sphere of `BB_Γ`,
/// each cut out by equations `c(u) = c(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpherePolyhedron {
    vertex_names: Vec<String>,
    /// The vertex sets whose weights are forced equal, one per system.
    classes: Vec<Vec<usize>>,
}

impl SpherePolyhedron {
    pub fn new(g: &Graph, classes: Vec<Vec<usize>>) -> Self {
        SpherePolyhedron {
            vertex_names: g.names().to_vec(),
            classes,
        }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Each system as its transitively closed list of equations `(u, v)`,
    /// `u < v`.
    pub fn systems(&self) -> Vec<Vec<(usize, usize)>> {
        self.classes
            .iter()
            .map(|d| {
                d.iter()
                    .enumerate()
                    .flat_map(|(i, &u)| d[i + 1..].iter().map(move |&v| (u, v)))
                    .collect()
            })
            .collect()
    }

    /// True iff the union is the empty set.
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// True iff some system has no equations, i.e. the union is the sphere.
    pub fn is_whole_sphere(&self) -> bool {
        self.classes.iter().any(|d| d.len() <= 1)
    }

    /// `{"systems": [[["u","v"], ...], ...]}` plus the defining vertex sets.
    pub fn to_json(&self) -> serde_json::Value {
        let name = |v: usize| self.vertex_names[v].clone();
        let systems: Vec<Vec<[String; 2]>> = self
            .systems()
            .into_iter()
            .map(|eqs| eqs.into_iter().map(|(u, v)| [name(u), name(v)]).collect())
            .collect();
        let bad_sets: Vec<Vec<String>> = self
            .classes
            .iter()
            .map(|d| d.iter().map(|&v| name(v)).collect())
            .collect();
        json!({ "systems": systems, "bad_sets": bad_sets })
    }
}

/// `Σ¹(BB_Γ)ᶜ` as one equality system per minimal bad set.
pub fn sigma1_complement(g: &Graph, limits: &Limits) -> Result<SpherePolyhedron> {
    let classes = minimal_bad_sets(g, limits)?.iter().map(VertexSet::to_vec).collect();
    Ok(SpherePolyhedron::new(g, classes))
}

/// Whether `[χ]` satisfies every equation of at least one system.
pub fn polyhedron_contains(p: &SpherePolyhedron, g: &Graph, chi: &BbCharacter) -> Result<bool> {
    if g.names() != p.vertex_names.as_slice() || chi.weights().len() != p.vertex_names.len() {
        return Err(Error::InvalidArgument(
            "character and polyhedron are defined over different vertex sets".into(),
        ));
    }
    let c = chi.weights();
    Ok(p
        .systems()
        .iter()
        .any(|eqs| eqs.iter().all(|&(u, v)| c[u] == c[v])))
}

/// Sufficient test for `[χ] ∈ Σⁿ(H ≀_X G, ℤ)`: at least `n + 1` coordinates
/// of the base carry a nonzero restriction. `false` is inconclusive.
pub fn wreath_sufficient(n: usize, support_count: usize) -> bool {
    support_count > n
}

/// What is known about the restriction of a product character to a factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorLevel {
    /// The restriction is the zero map.
    Zero,
    /// Largest `p` with the restriction in `Σᵖ` (`Σ⁰` is the whole sphere).
    Level(usize),
}

/// Membership of a character of `G₁ × G₂` in `Σⁿ(G₁ × G₂, ℤ)` as predicted
/// by the direct product formula from its restrictions.
pub fn product_formula_predict(k1: FactorLevel, k2: FactorLevel, n: usize) -> Result<bool> {
    match (k1, k2) {
        (FactorLevel::Zero, FactorLevel::Zero) => Err(Error::InvalidCharacter("both restrictions are zero".into())),
        (FactorLevel::Zero, FactorLevel::Level(k)) | (FactorLevel::Level(k), FactorLevel::Zero) => Ok(k >= n),
        (FactorLevel::Level(a), FactorLevel::Level(b)) => Ok(!(0..=n).any(|p| p > a && n - p > b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::Rational;
    use crate::corpus;

    fn limits() -> Limits {
        Limits::default()
    }

    fn names(sets: &[VertexSet], g: &Graph) -> Vec<Vec<String>> {
        sets.iter()
            .map(|s| s.iter().map(|v| g.name(v).to_string()).collect())
            .collect()
    }

    #[test]
    fn finiteness_of_bieri_stallings_groups() {
        let h = Variant::Homological.condition();
        for m in 2..=3 {
            let g = Arc::new(corpus::bieri_stallings(m));
            assert_eq!(bb_finiteness(&g, m - 1, h, &limits()).unwrap().value, Answer::Yes);
            assert_eq!(bb_finiteness(&g, m, h, &limits()).unwrap().value, Answer::No);
        }
        let p3 = Arc::new(corpus::path(3));
        for n in 1..=4 {
            assert_eq!(bb_finiteness(&p3, n, h, &limits()).unwrap().value, Answer::Yes);
        }
        let disconnected = Arc::new(corpus::discrete(2));
        assert!(matches!(bb_finiteness(&disconnected, 1, h, &limits()), Err(Error::Precondition(_))));
    }

    #[test]
    fn bb_sigma_on_g2() {
        let g = Arc::new(corpus::bieri_stallings(2));
        let chi = BbCharacter::from_integers(&g, &[0, 1, 0, 1]).unwrap();
        assert!(bb_sigma_variant(&g, &chi, 1, Variant::Homological, &limits()).unwrap().is_yes());

        let chi = BbCharacter::from_integers(&g, &[0, 0, 1, 2]).unwrap();
        let v = bb_sigma_variant(&g, &chi, 1, Variant::Homological, &limits()).unwrap();
        assert!(v.is_no());
        let w = v.witness.unwrap();
        assert_eq!(w.critical_value, Some(Rational::from_integer(0.into())));

        assert!(matches!(
            bb_sigma_variant(&g, &chi, 2, Variant::Homological, &limits()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn bb_sigma_on_g3() {
        let g = Arc::new(corpus::bieri_stallings(3));
        let chi = BbCharacter::from_integers(&g, &[0, 1, 0, 2, 3, 1]).unwrap();
        for v in [Variant::Homological, Variant::Homotopical] {
            assert!(bb_sigma_variant(&g, &chi, 2, v, &limits()).unwrap().is_yes());
        }
    }

    #[test]
    fn minimal_bad_set_examples() {
        let p3 = corpus::path(3);
        assert_eq!(names(&minimal_bad_sets(&p3, &limits()).unwrap(), &p3), vec![vec!["v1"]]);
        let k22 = corpus::bieri_stallings(2);
        assert_eq!(
            names(&minimal_bad_sets(&k22, &limits()).unwrap(), &k22),
            vec![vec!["x1", "y1"], vec!["x2", "y2"]]
        );
        assert!(minimal_bad_sets(&corpus::complete(3), &limits()).unwrap().is_empty());
        let tight = Limits {
            max_bad_set_vertices: 3,
            ..Limits::default()
        };
        assert!(matches!(minimal_bad_sets(&k22, &tight), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn mask_and_set_badness_agree() {
        for g in corpus::connected_graphs(5) {
            let adj = adjacency_masks(&g);
            let all = (1u64 << 5) - 1;
            for mask in 1..all {
                let set: VertexSet = (0..5).filter(|v| mask >> v & 1 == 1).collect();
                assert_eq!(is_bad(&g, &set), is_bad_mask(&adj, all, mask));
            }
        }
    }

    #[test]
    fn complement_examples() {
        let p3 = corpus::path(3);
        let p = sigma1_complement(&p3, &limits()).unwrap();
        assert_eq!(p.to_json()["systems"], json!([[]]));
        assert!(p.is_whole_sphere());

        let k22 = corpus::bieri_stallings(2);
        let p = sigma1_complement(&k22, &limits()).unwrap();
        assert_eq!(p.to_json()["systems"], json!([[["x1", "y1"]], [["x2", "y2"]]]));

        let k3 = corpus::complete(3);
        let p = sigma1_complement(&k3, &limits()).unwrap();
        assert!(p.is_empty());
        assert_eq!(p.to_json()["systems"], json!([]));
    }

    #[test]
    fn containment_examples() {
        let k22 = corpus::bieri_stallings(2);
        let p = sigma1_complement(&k22, &limits()).unwrap();
        let chi = BbCharacter::from_integers(&k22, &[0, 0, 1, 2]).unwrap();
        assert!(polyhedron_contains(&p, &k22, &chi).unwrap());
        let chi = BbCharacter::from_integers(&k22, &[0, 1, 0, 1]).unwrap();
        assert!(!polyhedron_contains(&p, &k22, &chi).unwrap());

        let p3 = corpus::path(3);
        let whole = sigma1_complement(&p3, &limits()).unwrap();
        let chi = BbCharacter::from_integers(&p3, &[0, 5, 9]).unwrap();
        assert!(polyhedron_contains(&whole, &p3, &chi).unwrap());
        assert!(polyhedron_contains(&whole, &k22, &chi).is_err());
    }

    #[test]
    fn wreath_examples() {
        assert!(wreath_sufficient(1, 2));
        assert!(!wreath_sufficient(2, 2));
        assert!(!wreath_sufficient(3, 0));
    }

    #[test]
    fn product_formula_examples() {
        use FactorLevel::*;
        assert!(product_formula_predict(Level(0), Level(0), 1).unwrap());
        assert!(!product_formula_predict(Level(0), Level(0), 2).unwrap());
        assert!(!product_formula_predict(Zero, Level(1), 2).unwrap());
        assert!(product_formula_predict(Zero, Level(2), 2).unwrap());
        assert!(product_formula_predict(Zero, Zero, 1).is_err());
    }
}
