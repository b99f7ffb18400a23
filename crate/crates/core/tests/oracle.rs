//! Master cross-check of the combinatorial facet description against the
//! exact-arithmetic hull oracle, exhaustively over every census pair up to
//! dimension 4, plus the bit-exact golden geometry of the three
//! two-dimensional polytopes.

mod common;

use rayon::prelude::*;

use twinchain::census::enumerate_posets;
use twinchain::hull::{
    brute_force_facets, hrep_from_chains, is_reflexive, point_cloud, validate_hrep, vertices,
    ValidationRequest,
};
use twinchain::twinned::{facet_chains, facet_count};
use twinchain::Poset;

/// All labeled posets on `[d]`, as class representatives times every
/// permutation — a superset of the quotiented census pair range.
fn all_labeled(d: usize) -> Vec<Poset> {
    fn perms(d: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..d {
            let mut next = Vec::new();
            for p in &out {
                for v in 1..=d {
                    if !p.contains(&v) {
                        let mut q = p.clone();
                        q.push(v);
                        next.push(q);
                    }
                }
            }
            out = next;
        }
        out
    }
    let mut labeled = Vec::new();
    for rep in enumerate_posets(d).unwrap() {
        for perm in perms(d) {
            let r = rep.relabel(&perm).unwrap();
            if !labeled.contains(&r) {
                labeled.push(r);
            }
        }
    }
    labeled
}

fn check_pair(p: &Poset, q: &Poset) {
    let family = facet_chains(p, q).unwrap();
    let chain_hrep = hrep_from_chains(&family);
    let cloud = point_cloud(p, q).unwrap();
    let brute = brute_force_facets(&cloud).unwrap();
    assert_eq!(
        brute.len(),
        family.len(),
        "facet counts differ for {:?} vs {:?}",
        p,
        q
    );
    assert_eq!(
        brute, chain_hrep,
        "half-space sets differ for {:?} vs {:?}",
        p, q
    );
    let report = validate_hrep(&cloud, &chain_hrep, ValidationRequest::facets()).unwrap();
    assert!(report.all_passed(), "{:?} vs {:?}: {report:?}", p, q);
    assert!(is_reflexive(&chain_hrep, &report).unwrap());
}

#[test]
fn hull_agrees_exhaustively_up_to_dimension_three() {
    for d in 1..=3 {
        let reps: Vec<Poset> = enumerate_posets(d).unwrap();
        let labeled = all_labeled(d);
        for p in &reps {
            for q in &labeled {
                check_pair(p, q);
            }
        }
    }
}

#[test]
fn hull_agrees_exhaustively_at_dimension_four() {
    let reps = enumerate_posets(4).unwrap();
    let labeled = all_labeled(4);
    let pairs: Vec<(usize, usize)> = (0..reps.len())
        .flat_map(|i| (0..labeled.len()).map(move |j| (i, j)))
        .collect();
    pairs.par_iter().for_each(|&(i, j)| {
        let p = &reps[i];
        let q = &labeled[j];
        let n = facet_count(p, q).unwrap();
        let cloud = point_cloud(p, q).unwrap();
        let brute = brute_force_facets(&cloud).unwrap();
        assert_eq!(
            brute.len() as u64,
            n,
            "counts differ for {:?} vs {:?}",
            p,
            q
        );
        let chain_hrep = hrep_from_chains(&facet_chains(p, q).unwrap());
        assert_eq!(
            brute, chain_hrep,
            "half-space sets differ for {:?} vs {:?}",
            p, q
        );
    });
}

#[test]
fn golden_two_dimensional_geometry_is_bit_exact() {
    for name in ["c2-c2", "i2-c2", "i2-i2"] {
        let (p, q) = common::fixture_pair(&format!("{name}.pair"));
        let cloud = point_cloud(&p, &q).unwrap();
        let vrep = vertices(&cloud).unwrap();
        let hrep = hrep_from_chains(&facet_chains(&p, &q).unwrap());
        let golden_dir = format!("{}/tests/golden", env!("CARGO_MANIFEST_DIR"));
        let want_v = std::fs::read_to_string(format!("{golden_dir}/{name}.vrep")).unwrap();
        let want_h = std::fs::read_to_string(format!("{golden_dir}/{name}.hrep")).unwrap();
        assert_eq!(vrep.to_text(), want_v, "{name} vertex dump");
        assert_eq!(hrep.to_text(), want_h, "{name} half-space dump");
        // and the brute-force H-representation prints identically
        assert_eq!(brute_force_facets(&cloud).unwrap().to_text(), want_h);
    }
}
