use std::sync::Arc;

use bnsr_core::bb::{product_formula_predict, FactorLevel};
use bnsr_core::character::{RaagCharacter, Rational};
use bnsr_core::complex::flag_complex;
use bnsr_core::connectivity::Answer;
use bnsr_core::corpus;
use bnsr_core::graph::Graph;
use bnsr_core::homology::is_k_acyclic;
use bnsr_core::raag::{multipartite_oracle, raag_sigma_variant, replay_failure, Verdict};
use bnsr_core::sample;
use bnsr_core::variant::Variant;
use bnsr_core::Limits;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn limits() -> Limits {
    Limits::default()
}

fn same_outcome(a: &Verdict, b: &Verdict) -> bool {
    a.value == b.value && a.witness == b.witness
}

fn check_replay(g: &Arc<Graph>, mu: &RaagCharacter, v: &Verdict) {
    if let Some(w) = &v.witness {
        assert!(replay_failure(g, mu, &w.failure, &limits()).unwrap(), "witness does not replay: {w:?}");
    }
}

#[test]
fn multipartite_oracle_equivalence() {
    for m in 1..=4usize {
        let g = Arc::new(corpus::bieri_stallings(m));
        for pattern in 1u32..1 << (2 * m) {
            let weights: Vec<i64> = (0..2 * m).map(|v| i64::from(pattern >> v & 1)).collect();
            let mu = RaagCharacter::from_integers(&g, &weights).unwrap();
            let parts = (0..m).filter(|i| pattern >> (2 * i) & 3 != 0).count();
            for n in 1..=4 {
                let expected = multipartite_oracle(m, parts, n).unwrap();
                for variant in [Variant::Homotopical, Variant::Homological] {
                    let v = raag_sigma_variant(&g, &mu, n, variant, &limits()).unwrap();
                    assert_ne!(v.value, Answer::Unknown, "m={m} pattern={pattern:b} n={n}");
                    assert_eq!(v.is_yes(), expected, "m={m} pattern={pattern:b} n={n} {variant}");
                    check_replay(&g, &mu, &v);
                }
            }
        }
    }
}

/// Replaces every nonzero weight by a random nonzero rational.
fn perturb(rng: &mut ChaCha8Rng, g: &Graph, mu: &RaagCharacter) -> RaagCharacter {
    let weights = mu
        .weights()
        .iter()
        .map(|w| if w.is_zero() { w.clone() } else { sample::nonzero(rng) })
        .collect();
    RaagCharacter::new(g, weights).unwrap()
}

#[test]
fn verdicts_depend_only_on_the_zero_pattern() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for trial in 0..1000 {
        let n_vertices = rng.gen_range(1..=7);
        let p = rng.gen_range(0.2..0.9);
        let g = Arc::new(sample::graph(&mut rng, n_vertices, p));
        let mu = sample::raag_character(&mut rng, &g);
        let nu = perturb(&mut rng, &g, &mu);
        let n = rng.gen_range(1..=3);
        let variant = if trial % 2 == 0 { Variant::Homological } else { Variant::Homotopical };
        let a = raag_sigma_variant(&g, &mu, n, variant, &limits()).unwrap();
        let b = raag_sigma_variant(&g, &nu, n, variant, &limits()).unwrap();
        assert!(same_outcome(&a, &b), "{g:?} {mu:?} vs {nu:?}");
        check_replay(&g, &mu, &a);
    }
}

#[test]
fn sign_perturbations_on_named_graphs() {
    let graphs = [corpus::cycle(4), corpus::cycle(5), corpus::path(4), corpus::bieri_stallings(3)];
    for g in graphs {
        let g = Arc::new(g);
        let nv = g.vertex_count();
        for support in 1u32..1 << nv {
            let base: Vec<i64> = (0..nv).map(|v| i64::from(support >> v & 1)).collect();
            let reference = RaagCharacter::from_integers(&g, &base).unwrap();
            let expected: Vec<Verdict> = (1..=3)
                .map(|n| raag_sigma_variant(&g, &reference, n, Variant::Homological, &limits()).unwrap())
                .collect();
            for signs in 0u32..1 << nv {
                let w: Vec<i64> = (0..nv).map(|v| if signs >> v & 1 == 1 { -3 * base[v] } else { base[v] }).collect();
                let mu = RaagCharacter::from_integers(&g, &w).unwrap();
                for (i, e) in expected.iter().enumerate() {
                    let v = raag_sigma_variant(&g, &mu, i + 1, Variant::Homological, &limits()).unwrap();
                    assert!(same_outcome(&v, e));
                }
            }
        }
    }
}

#[test]
fn positive_scaling_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        let n_vertices = rng.gen_range(1..=7);
        let g = Arc::new(sample::graph(&mut rng, n_vertices, 0.6));
        let mu = sample::raag_character(&mut rng, &g);
        let lambda = loop {
            let q = sample::rational(&mut rng, 9);
            if q > Rational::zero() {
                break q;
            }
        };
        let n = rng.gen_range(1..=3);
        let a = raag_sigma_variant(&g, &mu, n, Variant::Homological, &limits()).unwrap();
        let b = raag_sigma_variant(&g, &mu.scaled(&lambda).unwrap(), n, Variant::Homological, &limits()).unwrap();
        assert!(same_outcome(&a, &b));
    }
}

#[test]
fn membership_is_monotone_in_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..1000 {
        let n_vertices = rng.gen_range(1..=7);
        let p = rng.gen_range(0.3..1.0);
        let g = Arc::new(sample::graph(&mut rng, n_vertices, p));
        let mu = sample::raag_character(&mut rng, &g);
        let variant = if trial % 2 == 0 { Variant::Homological } else { Variant::Homotopical };
        let answers: Vec<Answer> = (1..=4)
            .map(|n| raag_sigma_variant(&g, &mu, n, variant, &limits()).unwrap().value)
            .collect();
        for n in 1..answers.len() {
            if answers[n] == Answer::Yes {
                assert_eq!(answers[n - 1], Answer::Yes, "{g:?} {mu:?} {answers:?}");
            }
            if answers[n - 1] == Answer::No {
                assert_eq!(answers[n], Answer::No);
            }
        }
    }
}

#[test]
fn variants_agree_at_level_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..500 {
        let n_vertices = rng.gen_range(1..=7);
        let g = Arc::new(sample::graph(&mut rng, n_vertices, 0.5));
        let mu = sample::raag_character(&mut rng, &g);
        let a = raag_sigma_variant(&g, &mu, 1, Variant::Homological, &limits()).unwrap();
        let b = raag_sigma_variant(&g, &mu, 1, Variant::Homotopical, &limits()).unwrap();
        assert!(same_outcome(&a, &b));
    }
}

#[test]
fn full_support_reduces_to_acyclicity() {
    for nv in 1..=5 {
        for g in corpus::all_graphs(nv) {
            let g = Arc::new(g);
            let mu = RaagCharacter::from_integers(&g, &vec![1; nv]).unwrap();
            let delta = flag_complex(&g, 4, &limits()).unwrap();
            for n in 1..=3 {
                let v = raag_sigma_variant(&g, &mu, n, Variant::Homological, &limits()).unwrap();
                assert_eq!(v.is_yes(), is_k_acyclic(&delta, n as i64 - 1).unwrap());
            }
        }
    }
}

/// The same graph with vertex names prefixed, so it can be joined to a copy.
fn renamed(g: &Graph, prefix: &str) -> Graph {
    let names = g.names().iter().map(|n| format!("{prefix}{n}")).collect();
    Graph::from_index_edges(names, g.edges().iter().copied()).unwrap()
}

fn factor_level(g: &Arc<Graph>, weights: &[Rational], cap: usize) -> FactorLevel {
    match RaagCharacter::new(g, weights.to_vec()) {
        Err(_) => FactorLevel::Zero,
        Ok(mu) => {
            let level = (1..=cap)
                .take_while(|&p| raag_sigma_variant(g, &mu, p, Variant::Homological, &limits()).unwrap().is_yes())
                .last()
                .unwrap_or(0);
            FactorLevel::Level(level)
        }
    }
}

#[test]
fn join_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut joins = 0;
    while joins < 100 {
        let (n1, n2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let g1 = Arc::new(renamed(&sample::graph(&mut rng, n1, 0.5), "a"));
        let g2 = Arc::new(renamed(&sample::graph(&mut rng, n2, 0.5), "b"));
        let joined = Arc::new(g1.join(&g2).unwrap());
        for _ in 0..5 {
            let mu = sample::raag_character(&mut rng, &joined);
            let (w1, w2) = mu.weights().split_at(n1);
            let (k1, k2) = (factor_level(&g1, w1, 3), factor_level(&g2, w2, 3));
            for n in 1..=3 {
                let predicted = product_formula_predict(k1, k2, n).unwrap();
                let computed = raag_sigma_variant(&joined, &mu, n, Variant::Homological, &limits()).unwrap();
                if n <= 2 {
                    assert_eq!(computed.is_yes(), predicted, "{joined:?} {mu:?} n={n} {k1:?} {k2:?}");
                } else if !predicted {
                    assert!(computed.is_no(), "{joined:?} {mu:?} n={n}");
                }
            }
        }
        joins += 1;
    }
}
