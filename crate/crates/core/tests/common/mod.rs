//! Shared helpers for the integration suites.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use twinchain::Poset;

/// A random poset on `[d]`: random covers respecting the index order,
/// transitively closed, then hidden behind a random relabeling so the
/// samples are not all naturally labeled.
#[allow(dead_code)]
pub fn random_poset(rng: &mut ChaCha8Rng, d: usize, edge_prob: f64) -> Poset {
    let mut covers = Vec::new();
    for i in 1..=d {
        for j in i + 1..=d {
            if rng.random_bool(edge_prob) {
                covers.push((i, j));
            }
        }
    }
    let natural = Poset::from_covers(d, &covers).expect("acyclic by construction");
    let mut perm: Vec<usize> = (1..=d).collect();
    perm.shuffle(rng);
    natural.relabel(&perm).expect("valid permutation")
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("fixture {path}: {e}"))
}

#[allow(dead_code)]
pub fn fixture_pair(name: &str) -> (Poset, Poset) {
    twinchain::io::parse_pair(&fixture(name)).expect("fixture parses")
}
