//! Random graphs and characters for the consistency suites.
//!
//! Weights are drawn from a small pool of rationals so that ties and zeros,
//! the cases the criteria are sensitive to, occur often.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::character::{BbCharacter, RaagCharacter, Rational};
use crate::corpus;
use crate::graph::Graph;

/// A rational `p/q` with `|p| ≤ spread` and `1 ≤ q ≤ 3`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R, spread: i64) -> Rational {
    Rational::new(BigInt::from(rng.gen_range(-spread..=spread)), BigInt::from(rng.gen_range(1..=3)))
}

/// A labelled graph on `n` vertices with independent edges of probability `p`.
pub fn graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Graph {
    let pairs = n * n.saturating_sub(1) / 2;
    let mask = (0..pairs).fold(0u64, |m, i| if rng.gen_bool(p) { m | 1 << i } else { m });
    corpus::from_edge_mask(n, mask)
}

/// A connected random graph on `n ≥ 1` vertices, by rejection.
pub fn connected_graph<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Graph {
    loop {
        let p = rng.gen_range(0.3..0.9);
        let g = graph(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

/// A nonzero character of `A_Γ`; roughly a third of the vertices are dead.
pub fn raag_character<R: Rng + ?Sized>(rng: &mut R, g: &Graph) -> RaagCharacter {
    loop {
        let weights: Vec<Rational> = (0..g.vertex_count())
            .map(|_| {
                if rng.gen_bool(1.0 / 3.0) {
                    Rational::from_integer(0.into())
                } else {
                    nonzero(rng)
                }
            })
            .collect();
        if let Ok(mu) = RaagCharacter::new(g, weights) {
            return mu;
        }
    }
}

/// A nonzero rational from the sampling pool.
pub fn nonzero<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    loop {
        let q = rational(rng, 4);
        if q != Rational::from_integer(0.into()) {
            return q;
        }
    }
}

/// A character of `BB_Γ` (`Γ` with at least two vertices). Values are drawn
/// from a pool of `1..=|V|` distinct rationals so level sets of every size
/// occur.
pub fn bb_character<R: Rng + ?Sized>(rng: &mut R, g: &Graph) -> BbCharacter {
    let n = g.vertex_count();
    assert!(n >= 2, "BB characters need two vertices");
    loop {
        let pool_size = rng.gen_range(2..=n.max(2));
        let mut pool: Vec<Rational> = Vec::with_capacity(pool_size);
        while pool.len() < pool_size {
            let q = rational(rng, 6);
            if !pool.contains(&q) {
                pool.push(q);
            }
        }
        let weights = (0..n).map(|_| pool.choose(rng).expect("nonempty").clone()).collect();
        if let Ok(chi) = BbCharacter::new(g, weights) {
            return chi;
        }
    }
}
