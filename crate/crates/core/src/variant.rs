//! Homological and homotopical variants as interchangeable strategies.
//!
//! Both criteria walk the same dead simplices; they differ only in the
//! condition imposed on each living link. A [`LevelCondition`] encapsulates
//! that condition, and the [`VariantRegistry`] maps names (`"homological"`,
//! `"homotopical"`) to implementations so callers can select one at runtime.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::complex::FlagComplex;
use crate::connectivity::{pi1_trivial, Answer};
use crate::homology::{acyclicity_failure, HomologyGroup};
use crate::{Error, Limits, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Homological,
    Homotopical,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Homological => "homological",
            Variant::Homotopical => "homotopical",
        }
    }

    pub fn condition(self) -> &'static dyn LevelCondition {
        registry().get(self.name()).expect("built-in variants are registered")
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "homological" => Ok(Variant::Homological),
            "homotopical" => Ok(Variant::Homotopical),
            other => Err(Error::InvalidArgument(format!("unknown variant {other:?}"))),
        }
    }
}

/// Result of testing one complex against one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelCheck {
    Pass,
    /// `H̃_{failing_index}` is nonzero (index −1 means the complex is empty).
    Fail {
        failing_index: i64,
        homology: HomologyGroup,
    },
    Undetermined(String),
}

/// The condition a criterion imposes on a complex at a given level.
///
/// `whole` is set when the complex is the full living subcomplex (the link
/// of the empty dead simplex) rather than the living link of a dead vertex
/// or higher simplex.
pub trait LevelCondition: Send + Sync {
    fn variant(&self) -> Variant;

    fn name(&self) -> &'static str {
        self.variant().name()
    }

    /// Dimension up to which the complex must be materialized.
    fn required_dim(&self, level: i64, whole: bool) -> i64;

    fn check(&self, complex: &FlagComplex, level: i64, whole: bool, limits: &Limits) -> Result<LevelCheck>;

    /// Annotation attached to verdicts at level `n`.
    fn note(&self, _n: usize) -> Option<String> {
        None
    }
}

fn homology_check(complex: &FlagComplex, level: i64) -> Result<LevelCheck> {
    Ok(match acyclicity_failure(complex, level)? {
        Some((failing_index, homology)) => LevelCheck::Fail {
            failing_index,
            homology,
        },
        None => LevelCheck::Pass,
    })
}

/// Every condition is `level`-acyclicity over ℤ.
#[derive(Debug, Default)]
pub struct Homological;

impl LevelCondition for Homological {
    fn variant(&self) -> Variant {
        Variant::Homological
    }

    fn required_dim(&self, level: i64, _whole: bool) -> i64 {
        (level + 1).max(0)
    }

    fn check(&self, complex: &FlagComplex, level: i64, _whole: bool, _limits: &Limits) -> Result<LevelCheck> {
        homology_check(complex, level)
    }
}

/// The living subcomplex must be `level`-connected; living links of
/// nonempty dead simplices must be `level`-acyclic. This is the homological
/// criterion intersected with the level-2 homotopical one.
#[derive(Debug, Default)]
pub struct Homotopical;

impl LevelCondition for Homotopical {
    fn variant(&self) -> Variant {
        Variant::Homotopical
    }

    fn required_dim(&self, level: i64, whole: bool) -> i64 {
        if whole && level >= 1 {
            (level + 1).max(2)
        } else {
            (level + 1).max(0)
        }
    }

    fn check(&self, complex: &FlagComplex, level: i64, whole: bool, limits: &Limits) -> Result<LevelCheck> {
        let homological = homology_check(complex, level)?;
        if !whole || level < 1 || homological != LevelCheck::Pass {
            return Ok(homological);
        }
        let pi1 = pi1_trivial(complex, limits.tietze_budget)?;
        Ok(match pi1.value {
            Answer::Yes => LevelCheck::Pass,
            // H̃₁ = 0 here, so π₁ can only be certified trivial or left open.
            Answer::No | Answer::Unknown => LevelCheck::Undetermined(format!("π₁ of the living subcomplex: {}", pi1.reason)),
        })
    }

    fn note(&self, n: usize) -> Option<String> {
        (n >= 2).then(|| "homotopical criterion evaluated as Σ²(G) ∩ Σⁿ(G, ℤ) = Σⁿ(G)".to_string())
    }
}

/// Named [`LevelCondition`] implementations.
pub struct VariantRegistry {
    entries: Vec<Box<dyn LevelCondition>>,
}

impl VariantRegistry {
    pub fn empty() -> Self {
        VariantRegistry { entries: Vec::new() }
    }

    /// The two built-in variants.
    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Homological));
        r.register(Box::new(Homotopical));
        r
    }

    /// Panics if the name is already taken.
    pub fn register(&mut self, condition: Box<dyn LevelCondition>) {
        assert!(
            self.get(condition.name()).is_none(),
            "variant {} already registered",
            condition.name()
        );
        self.entries.push(condition);
    }

    pub fn get(&self, name: &str) -> Option<&dyn LevelCondition> {
        self.entries.iter().find(|c| c.name() == name).map(Box::as_ref)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|c| c.name()).collect()
    }
}

/// The process-wide registry of built-in variants.
pub fn registry() -> &'static VariantRegistry {
    static REGISTRY: OnceLock<VariantRegistry> = OnceLock::new();
    REGISTRY.get_or_init(VariantRegistry::with_builtins)
}
