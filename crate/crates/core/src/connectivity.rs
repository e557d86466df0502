//! Homotopical connectivity: edge-path presentations of `π₁` and a bounded
//! Tietze simplifier that can certify triviality.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{connected_components, FlagComplex};
use crate::homology::acyclicity_failure;
use crate::{Error, Limits, Result};

/// Three-valued answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl Answer {
    /// Aggregation order used when combining independent conditions:
    /// `No` dominates `Unknown`, which dominates `Yes`.
    pub fn severity(self) -> u8 {
        match self {
            Answer::Yes => 0,
            Answer::Unknown => 1,
            Answer::No => 2,
        }
    }

    pub fn from_bool(b: bool) -> Answer {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        })
    }
}

/// An answer with a justification; `Unknown` always carries a reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriState {
    pub value: Answer,
    pub reason: String,
}

impl TriState {
    pub fn yes(reason: impl Into<String>) -> Self {
        TriState {
            value: Answer::Yes,
            reason: reason.into(),
        }
    }

    pub fn no(reason: impl Into<String>) -> Self {
        TriState {
            value: Answer::No,
            reason: reason.into(),
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        TriState {
            value: Answer::Unknown,
            reason: reason.into(),
        }
    }
}

/// A letter is a generator index `g` encoded as `g + 1` or `-(g + 1)`.
pub type Word = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    /// Validates that every letter names a declared generator.
    pub fn new(generators: usize, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            if let Some(&bad) = r.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > generators) {
                return Err(Error::InvalidArgument(format!("letter {bad} outside 1..={generators}")));
            }
        }
        Ok(GroupPresentation { generators, relators })
    }
}

/// Edge-path presentation of `π₁` of a connected complex: one generator per
/// edge outside a BFS spanning tree, one relator per 2-simplex.
pub fn edge_path_presentation(k: &FlagComplex) -> Result<GroupPresentation> {
    let vertices = k.simplices(0)?;
    let edges = k.simplices(1)?;
    let triangles = k.simplices(2)?;
    let graph = k.graph();

    let mut in_tree = HashMap::new();
    if let Some(root) = vertices.first() {
        let root = root.vertices()[0];
        let mut seen = crate::graph::VertexSet::new();
        seen.insert(root);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in graph.neighbors(v).intersection(k.vertex_set()).iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    in_tree.insert((v.min(w), v.max(w)), ());
                    queue.push_back(w);
                }
            }
        }
    }

    let mut letter = HashMap::new();
    let mut generators = 0usize;
    for e in edges {
        let (u, v) = (e.vertices()[0], e.vertices()[1]);
        if !in_tree.contains_key(&(u, v)) {
            generators += 1;
            letter.insert((u, v), generators as i32);
        }
    }
    let edge_letter = |u: usize, v: usize| letter.get(&(u, v)).copied();
    let relators = triangles
        .iter()
        .map(|t| {
            let (a, b, c) = (t.vertices()[0], t.vertices()[1], t.vertices()[2]);
            // Loop a → b → c → a.
            [edge_letter(a, b), edge_letter(b, c), edge_letter(a, c).map(|l| -l)]
                .into_iter()
                .flatten()
                .collect()
        })
        .collect();
    GroupPresentation::new(generators, relators)
}

fn reduce_cyclically(word: &mut Word) {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word.iter() {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    let mut start = 0;
    let mut end = out.len();
    while end - start >= 2 && out[start] == -out[end - 1] {
        start += 1;
        end -= 1;
    }
    *word = out[start..end].to_vec();
}

fn invert(word: &[i32]) -> Word {
    word.iter().rev().map(|&l| -l).collect()
}

/// Outcome of [`simplify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplified {
    pub presentation: GroupPresentation,
    /// Generators still present (1-based letters).
    pub remaining: Vec<i32>,
    pub steps: usize,
    pub exhausted: bool,
}

impl Simplified {
    pub fn is_trivial(&self) -> bool {
        self.remaining.is_empty()
    }
}

/// Eliminates generators that occur exactly once in some relator, preferring
/// the shortest such relator, until none remain or the budget runs out.
pub fn simplify(p: &GroupPresentation, budget: usize) -> Simplified {
    let mut relators: Vec<Word> = p.relators.clone();
    let mut alive: Vec<bool> = vec![true; p.generators + 1];
    alive[0] = false;
    let mut steps = 0;
    loop {
        for r in relators.iter_mut() {
            reduce_cyclically(r);
        }
        relators.retain(|r| !r.is_empty());
        relators.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        relators.dedup();

        let remaining: Vec<i32> = (1..=p.generators as i32).filter(|&g| alive[g as usize]).collect();
        if remaining.is_empty() {
            return Simplified {
                presentation: GroupPresentation {
                    generators: 0,
                    relators,
                },
                remaining,
                steps,
                exhausted: false,
            };
        }
        let choice = relators.iter().enumerate().find_map(|(ri, r)| {
            let mut count: HashMap<i32, usize> = HashMap::new();
            for &l in r {
                *count.entry(l.abs()).or_default() += 1;
            }
            r.iter()
                .position(|&l| count[&l.abs()] == 1)
                .map(|pos| (ri, pos))
        });
        let Some((ri, pos)) = choice else {
            return Simplified {
                presentation: GroupPresentation {
                    generators: remaining.len(),
                    relators,
                },
                remaining,
                steps,
                exhausted: false,
            };
        };
        if steps >= budget {
            return Simplified {
                presentation: GroupPresentation {
                    generators: remaining.len(),
                    relators,
                },
                remaining,
                steps,
                exhausted: true,
            };
        }
        steps += 1;

        // r = u · g^ε · v  ⇒  g^ε = u⁻¹ v⁻¹ (cyclically: g^ε = (v u)⁻¹).
        let r = relators.swap_remove(ri);
        let l = r[pos];
        let mut rest: Word = r[pos + 1..].to_vec();
        rest.extend_from_slice(&r[..pos]);
        let value_pos = invert(&rest); // value of the letter l
        let value_neg = rest; // value of -l
        let g = l.abs();
        let (for_g, for_inv) = if l > 0 { (value_pos, value_neg) } else { (value_neg, value_pos) };
        for rel in relators.iter_mut() {
            if rel.iter().any(|&x| x.abs() == g) {
                let mut out = Vec::with_capacity(rel.len());
                for &x in rel.iter() {
                    if x == g {
                        out.extend_from_slice(&for_g);
                    } else if x == -g {
                        out.extend_from_slice(&for_inv);
                    } else {
                        out.push(x);
                    }
                }
                *rel = out;
            }
        }
        alive[g as usize] = false;
    }
}

/// Semi-decides whether `π₁(K)` is trivial for a connected, nonempty K
/// materialized to dimension ≥ 2.
pub fn pi1_trivial(k: &FlagComplex, budget: usize) -> Result<TriState> {
    if k.is_empty() {
        return Err(Error::Precondition("fundamental group of the empty complex".into()));
    }
    if connected_components(k).len() > 1 {
        return Err(Error::Precondition("fundamental group of a disconnected complex".into()));
    }
    if k.max_dim() < 2 {
        return Err(Error::DimensionNotMaterialized {
            requested: 2,
            available: k.max_dim(),
        });
    }
    let presentation = edge_path_presentation(k)?;
    let outcome = simplify(&presentation, budget);
    if outcome.is_trivial() {
        return Ok(TriState::yes(format!(
            "presentation with {} generators simplified to the trivial group in {} steps",
            presentation.generators, outcome.steps
        )));
    }
    if let Some((1, group)) = acyclicity_failure(k, 1)? {
        return Ok(TriState::no(format!("H̃₁ = {group} ≠ 0")));
    }
    Ok(TriState::unknown(if outcome.exhausted {
        format!("budget exhausted after {} Tietze steps", outcome.steps)
    } else {
        format!(
            "presentation stalled with {} generators and {} relators",
            outcome.remaining.len(),
            outcome.presentation.relators.len()
        )
    }))
}

/// Whether K is k-connected: nonempty, connected, and `πᵢ(K) = 0` for
/// `i ≤ k`. For `k ≥ 1` this is decided as k-acyclic plus simply connected
/// (Hurewicz), so `No` is always backed by nonvanishing homology.
pub fn is_k_connected(k: &FlagComplex, level: i64, limits: &Limits) -> Result<TriState> {
    if level <= -2 {
        return Ok(TriState::yes("vacuous"));
    }
    if let Some((i, group)) = acyclicity_failure(k, level)? {
        return Ok(TriState::no(match i {
            -1 => "empty".to_string(),
            0 => format!("{} components", group.free_rank + 1),
            _ => format!("H̃{} = {group} ≠ 0", subscript(i)),
        }));
    }
    if level <= 0 {
        return Ok(TriState::yes(if level == -1 { "nonempty" } else { "connected" }));
    }
    let skeleton;
    let k2 = if k.max_dim() >= 2 {
        k
    } else {
        skeleton = k.with_max_dim(2, limits)?;
        &skeleton
    };
    let pi1 = pi1_trivial(k2, limits.tietze_budget)?;
    Ok(match pi1.value {
        Answer::Yes => TriState::yes(format!("{level}-acyclic and simply connected")),
        Answer::No => pi1,
        Answer::Unknown => TriState::unknown(format!("{level}-acyclic; π₁ undetermined: {}", pi1.reason)),
    })
}

pub(crate) fn subscript(i: i64) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    let mut s = String::new();
    if i < 0 {
        s.push('₋');
    }
    for c in i.unsigned_abs().to_string().chars() {
        s.push(DIGITS[c.to_digit(10).unwrap() as usize]);
    }
    s
}
