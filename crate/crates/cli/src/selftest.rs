//! The consistency suites run by `bnsr selftest`.
//!
//! Suites implement [`Suite`] and are registered by name in a
//! [`SuiteRegistry`]. Every suite draws from its own ChaCha stream derived
//! from the global seed and its name, so results do not depend on the order
//! in which suites run.

use std::collections::HashSet;
use std::sync::Arc;

use bnsr_core::bb::{
    bb_finiteness, bb_sigma, is_bad, polyhedron_contains, product_formula_predict, sigma1_complement, FactorLevel,
};
use bnsr_core::character::{RaagCharacter, Rational};
use bnsr_core::connectivity::Answer;
use bnsr_core::corpus;
use bnsr_core::graph::{Graph, VertexSet};
use bnsr_core::raag::{multipartite_oracle, raag_sigma_variant, replay_failure};
use bnsr_core::sample;
use bnsr_core::variant::Variant;
use bnsr_core::{Error, Limits, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Default,
    Quick,
}

impl Scale {
    fn name(self) -> &'static str {
        match self {
            Scale::Default => "default",
            Scale::Quick => "quick",
        }
    }
}

pub struct SuiteContext {
    pub seed: u64,
    pub scale: Scale,
    /// Test mode: corrupts one oracle so the harness must report a failure.
    pub inject_fault: bool,
    pub limits: Limits,
}

impl SuiteContext {
    fn rng(&self, suite: &str) -> ChaCha8Rng {
        // FNV-1a of the suite name, mixed into the global seed.
        let h = suite
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
        ChaCha8Rng::seed_from_u64(self.seed ^ h)
    }

    fn pick(&self, default: usize, quick: usize) -> usize {
        match self.scale {
            Scale::Default => default,
            Scale::Quick => quick,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteOutcome {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }
}

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome>;
}

pub struct SuiteRegistry {
    suites: Vec<Box<dyn Suite>>,
}

impl SuiteRegistry {
    pub fn empty() -> Self {
        SuiteRegistry { suites: Vec::new() }
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(BadnessMonotonicity));
        r.register(Box::new(MultipartiteOracle));
        r.register(Box::new(JoinFormula));
        r.register(Box::new(PolyhedronAgreement));
        r.register(Box::new(FinitenessCorpus));
        r.register(Box::new(BieriStallingsOracle));
        r.register(Box::new(WitnessReplay));
        r
    }

    /// Panics if the name is already taken.
    pub fn register(&mut self, suite: Box<dyn Suite>) {
        assert!(self.get(suite.name()).is_none(), "suite {} already registered", suite.name());
        self.suites.push(suite);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Suite> {
        self.suites.iter().find(|s| s.name() == name).map(Box::as_ref)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct SelftestOptions {
    pub seed: u64,
    pub scale: Scale,
    pub inject_fault: bool,
    /// Empty means every registered suite.
    pub suites: Vec<String>,
    pub limits: Limits,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            seed: 20_240_601,
            scale: Scale::Default,
            inject_fault: false,
            suites: Vec::new(),
            limits: Limits::default(),
        }
    }
}

/// Runs the selected suites; the flag is true when every check passed.
pub fn cmd_selftest(opts: &SelftestOptions) -> Result<(Value, bool)> {
    let registry = SuiteRegistry::with_builtins();
    let selected: Vec<&dyn Suite> = if opts.suites.is_empty() {
        registry.suites.iter().map(Box::as_ref).collect()
    } else {
        opts.suites
            .iter()
            .map(|name| {
                registry.get(name).ok_or_else(|| {
                    Error::InvalidArgument(format!("unknown suite {name:?}; known: {}", registry.names().join(", ")))
                })
            })
            .collect::<Result<_>>()?
    };
    let ctx = SuiteContext {
        seed: opts.seed,
        scale: opts.scale,
        inject_fault: opts.inject_fault,
        limits: opts.limits,
    };
    let outcomes: Vec<SuiteOutcome> = selected.par_iter().map(|s| s.run(&ctx)).collect::<Result<_>>()?;

    let mut total_cases = 0;
    let mut total_failures = 0;
    let suites: Vec<Value> = selected
        .iter()
        .zip(&outcomes)
        .map(|(s, o)| {
            total_cases += o.cases;
            total_failures += o.failures;
            let mut v = json!({
                "name": s.name(),
                "description": s.description(),
                "cases": o.cases,
                "failures": o.failures,
                "passed": o.failures == 0,
            });
            if let Some(f) = &o.first_failure {
                v["first_failure"] = json!(f);
            }
            v
        })
        .collect();
    let passed = total_failures == 0;
    let report = json!({
        "command": "selftest",
        "seed": opts.seed,
        "scale": opts.scale.name(),
        "inject_fault": opts.inject_fault,
        "suites": suites,
        "total_cases": total_cases,
        "total_failures": total_failures,
        "passed": passed,
    });
    Ok((report, passed))
}

fn subset_of_mask(mask: u32, n: usize) -> VertexSet {
    (0..n).filter(|v| mask >> v & 1 == 1).collect()
}

fn check_monotone(g: &Graph, out: &mut SuiteOutcome) {
    let n = g.vertex_count();
    let full = (1u32 << n) - 1;
    let bad: Vec<bool> = (0..=full).map(|d| is_bad(g, &subset_of_mask(d, n))).collect();
    for big in 0..full {
        let mut small = big;
        loop {
            out.check(!bad[small as usize] || bad[big as usize], || {
                format!("{g:?}: bad {small:#b} inside good {big:#b}")
            });
            if small == 0 {
                break;
            }
            small = (small - 1) & big;
        }
    }
}

/// Badness of a dead set is inherited by its supersets.
struct BadnessMonotonicity;

impl Suite for BadnessMonotonicity {
    fn name(&self) -> &'static str {
        "badness-monotonicity"
    }

    fn description(&self) -> &'static str {
        "bad(D) implies bad(D') for D ⊆ D' ⊊ V on small connected graphs"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::default();
        for n in 1..=ctx.pick(6, 5) {
            for g in corpus::connected_graphs(n) {
                check_monotone(&g, &mut out);
            }
        }
        let mut rng = ctx.rng(self.name());
        let mut seen = HashSet::new();
        while seen.len() < ctx.pick(500, 50) {
            let g = sample::connected_graph(&mut rng, 7);
            if seen.insert(g.edges().to_vec()) {
                check_monotone(&g, &mut out);
            }
        }
        Ok(out)
    }
}

/// The RAAG criterion on `K_{2,…,2}` against the product-of-free-groups formula.
struct MultipartiteOracle;

impl Suite for MultipartiteOracle {
    fn name(&self) -> &'static str {
        "multipartite-oracle"
    }

    fn description(&self) -> &'static str {
        "RAAG verdicts on K_{2,...,2} agree with the product-of-free-groups oracle"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::default();
        for m in 1..=ctx.pick(4, 3) {
            let g = Arc::new(corpus::bieri_stallings(m));
            for pattern in 1u32..1 << (2 * m) {
                let weights: Vec<i64> = (0..2 * m).map(|v| i64::from(pattern >> v & 1)).collect();
                let mu = RaagCharacter::from_integers(&g, &weights)?;
                let parts = (0..m).filter(|i| pattern >> (2 * i) & 3 != 0).count();
                for n in 1..=4 {
                    let expected = if ctx.inject_fault {
                        parts >= n
                    } else {
                        multipartite_oracle(m, parts, n)?
                    };
                    for variant in [Variant::Homotopical, Variant::Homological] {
                        let v = raag_sigma_variant(&g, &mu, n, variant, &ctx.limits)?;
                        let ok = v.value != Answer::Unknown && v.is_yes() == expected;
                        out.check(ok, || {
                            format!("m={m} support={pattern:#b} n={n} {variant}: {} vs oracle {expected}", v.value)
                        });
                    }
                }
            }
        }
        Ok(out)
    }
}

fn renamed(g: &Graph, prefix: &str) -> Graph {
    let names = g.names().iter().map(|n| format!("{prefix}{n}")).collect();
    Graph::from_index_edges(names, g.edges().iter().copied()).expect("renaming keeps names distinct")
}

/// Largest level `p ≤ cap` with the restriction in `Σᵖ(·, ℤ)`.
fn factor_level(g: &Arc<Graph>, weights: &[Rational], cap: usize, limits: &Limits) -> Result<FactorLevel> {
    let Ok(mu) = RaagCharacter::new(g, weights.to_vec()) else {
        return Ok(FactorLevel::Zero);
    };
    let mut level = 0;
    for p in 1..=cap {
        if !raag_sigma_variant(g, &mu, p, Variant::Homological, limits)?.is_yes() {
            break;
        }
        level = p;
    }
    Ok(FactorLevel::Level(level))
}

/// Verdicts on graph joins against the direct product formula.
struct JoinFormula;

impl Suite for JoinFormula {
    fn name(&self) -> &'static str {
        "join-formula"
    }

    fn description(&self) -> &'static str {
        "homological verdicts on joins follow the product formula (equality for n ≤ 2, inclusion at n = 3)"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::default();
        let mut rng = ctx.rng(self.name());
        for _ in 0..ctx.pick(100, 20) {
            let (n1, n2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
            let g1 = Arc::new(renamed(&sample::graph(&mut rng, n1, 0.5), "a"));
            let g2 = Arc::new(renamed(&sample::graph(&mut rng, n2, 0.5), "b"));
            let joined = Arc::new(g1.join(&g2)?);
            for _ in 0..5 {
                let mu = sample::raag_character(&mut rng, &joined);
                let (w1, w2) = mu.weights().split_at(n1);
                let k1 = factor_level(&g1, w1, 3, &ctx.limits)?;
                let k2 = factor_level(&g2, w2, 3, &ctx.limits)?;
                for n in 1..=3 {
                    let predicted = product_formula_predict(k1, k2, n)?;
                    let computed = raag_sigma_variant(&joined, &mu, n, Variant::Homological, &ctx.limits)?;
                    let ok = if n <= 2 {
                        computed.is_yes() == predicted
                    } else {
                        predicted || computed.is_no()
                    };
                    out.check(ok, || {
                        format!(
                            "{joined:?} weights {:?} n={n}: predicted {predicted}, computed {}",
                            mu.to_json(&joined),
                            computed.value
                        )
                    });
                }
            }
        }
        Ok(out)
    }
}

/// The Σ¹ complement polyhedron against the extension sweep at level 1.
struct PolyhedronAgreement;

impl Suite for PolyhedronAgreement {
    fn name(&self) -> &'static str {
        "polyhedron-agreement"
    }

    fn description(&self) -> &'static str {
        "membership in the Σ¹ complement polyhedron equals a No from the level-1 BB sweep"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::default();
        let mut rng = ctx.rng(self.name());
        let mut graphs: Vec<(Graph, usize)> = [
            corpus::path(3),
            corpus::path(5),
            corpus::cycle(4),
            corpus::cycle(6),
            corpus::complete(4),
            corpus::bieri_stallings(2),
            corpus::bieri_stallings(3),
            corpus::bieri_stallings(4),
        ]
        .into_iter()
        .map(|g| (g, ctx.pick(1000, 100)))
        .collect();
        for _ in 0..ctx.pick(200, 20) {
            let n = rng.gen_range(2..=8);
            graphs.push((sample::connected_graph(&mut rng, n), 10));
        }
        let condition = Variant::Homological.condition();
        for (g, trials) in graphs {
            let g = Arc::new(g);
            let p = sigma1_complement(&g, &ctx.limits)?;
            for _ in 0..trials {
                let chi = sample::bb_character(&mut rng, &g);
                let inside = polyhedron_contains(&p, &g, &chi)?;
                let v = bb_sigma(&g, &chi, 1, condition, &ctx.limits)?;
                out.check(inside == v.is_no(), || {
                    format!("{g:?} {:?}: polyhedron {inside}, sweep {}", chi.to_json(&g), v.value)
                });
            }
        }
        Ok(out)
    }
}

/// `K_{2,…,2}` with m parts is of type `FP_{m−1}` and not `FP_m`.
struct FinitenessCorpus;

impl Suite for FinitenessCorpus {
    fn name(&self) -> &'static str {
        "finiteness-corpus"
    }

    fn description(&self) -> &'static str {
        "the Bestvina-Brady group of K_{2,...,2} with m parts is FP_{m-1} (and F_{m-1}) but not FP_m"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::default();
        for m in 2..=4 {
            let g = Arc::new(corpus::bieri_stallings(m));
            for variant in [Variant::Homological, Variant::Homotopical] {
                let below = bb_finiteness(&g, m - 1, variant.condition(), &ctx.limits)?;
                let at = bb_finiteness(&g, m, variant.condition(), &ctx.limits)?;
                out.check(below.value == Answer::Yes, || format!("m={m} {variant}: level m-1 gave {}", below.value));
                out.check(at.value == Answer::No, || format!("m={m} {variant}: level m gave {}", at.value));
            }
        }
        Ok(out)
    }
}

/// At each critical value, the number of parts with both vertices dead must
/// stay below `m − n`.
fn bieri_stallings_prediction(m: usize, weights: &[Rational], n: usize) -> bool {
    let worst = weights
        .iter()
        .map(|w| (0..m).filter(|&i| weights[2 * i] == *w && weights[2 * i + 1] == *w).count())
        .max()
        .unwrap_or(0);
    worst + n < m
}

/// BB verdicts on `K_{2,…,2}` against the part-counting prediction.
struct BieriStallingsOracle;

impl Suite for BieriStallingsOracle {
    fn name(&self) -> &'static str {
        "gm-oracle"
    }

    fn description(&self) -> &'static str {
        "BB verdicts on K_{2,...,2} agree with the count of fully dead parts per critical value"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::default();
        let mut rng = ctx.rng(self.name());
        for m in 2..=4 {
            let g = Arc::new(corpus::bieri_stallings(m));
            for _ in 0..ctx.pick(300, 50) {
                let chi = sample::bb_character(&mut rng, &g);
                for n in 1..m {
                    let expected = bieri_stallings_prediction(m, chi.weights(), n);
                    for variant in [Variant::Homological, Variant::Homotopical] {
                        let v = bb_sigma(&g, &chi, n, variant.condition(), &ctx.limits)?;
                        out.check(v.value != Answer::Unknown && v.is_yes() == expected, || {
                            format!("m={m} n={n} {variant} {:?}: {} vs {expected}", chi.to_json(&g), v.value)
                        });
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Every `No` witness replays through the complex and homology modules.
struct WitnessReplay;

impl Suite for WitnessReplay {
    fn name(&self) -> &'static str {
        "witness-replay"
    }

    fn description(&self) -> &'static str {
        "witnesses of No verdicts reproduce their failing homology"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::default();
        let mut rng = ctx.rng(self.name());
        for _ in 0..ctx.pick(500, 100) {
            let n_vertices = rng.gen_range(1..=8);
            let g = Arc::new(sample::graph(&mut rng, n_vertices, 0.6));
            let mu = sample::raag_character(&mut rng, &g);
            let n = rng.gen_range(1..=3);
            let v = raag_sigma_variant(&g, &mu, n, Variant::Homological, &ctx.limits)?;
            if let Some(w) = &v.witness {
                let ok = replay_failure(&g, &mu, &w.failure, &ctx.limits)?;
                out.check(ok, || format!("{g:?} {:?} n={n}", mu.to_json(&g)));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names() {
        let r = SuiteRegistry::with_builtins();
        assert_eq!(
            r.names(),
            vec![
                "badness-monotonicity",
                "multipartite-oracle",
                "join-formula",
                "polyhedron-agreement",
                "finiteness-corpus",
                "gm-oracle",
                "witness-replay"
            ]
        );
    }

    #[test]
    #[should_panic(expected = "already registered")]
    fn duplicate_suite_panics() {
        SuiteRegistry::with_builtins().register(Box::new(JoinFormula));
    }

    #[test]
    fn fault_injection_is_detected() {
        let opts = SelftestOptions {
            inject_fault: true,
            scale: Scale::Quick,
            suites: vec!["multipartite-oracle".into()],
            ..SelftestOptions::default()
        };
        let (report, passed) = cmd_selftest(&opts).unwrap();
        assert!(!passed);
        assert!(report["total_failures"].as_u64().unwrap() > 0);
    }

    #[test]
    fn unknown_suite_is_rejected() {
        let opts = SelftestOptions {
            suites: vec!["nope".into()],
            ..SelftestOptions::default()
        };
        assert_eq!(cmd_selftest(&opts).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn quick_run_passes_and_is_reproducible() {
        let opts = SelftestOptions {
            scale: Scale::Quick,
            ..SelftestOptions::default()
        };
        let (a, passed) = cmd_selftest(&opts).unwrap();
        assert!(passed, "{a}");
        let (b, _) = cmd_selftest(&opts).unwrap();
        assert_eq!(a.to_string(), b.to_string());
    }
}
