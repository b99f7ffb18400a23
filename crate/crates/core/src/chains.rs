//! Antichains, chains, and maximal chains of a poset.
//!
//! Maximal chains are enumerated as maximal cliques of the comparability
//! graph (a pivoting Bron–Kerbosch on bitmasks); [`maximal_chains_plain`] is
//! the reference enumerator the fast path is tested against.

use crate::error::{Error, Result};
use crate::poset::{indices_from_mask, Poset};

/// A family of subsets of `[d]`, materialized and deterministically ordered:
/// each member ascending, members sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFamily {
    d: usize,
    members: Vec<Vec<usize>>,
}

impl SubsetFamily {
    pub(crate) fn from_masks(d: usize, mut masks: Vec<u64>) -> SubsetFamily {
        masks.sort_unstable();
        masks.dedup();
        let mut members: Vec<Vec<usize>> = masks.into_iter().map(indices_from_mask).collect();
        members.sort();
        SubsetFamily { d, members }
    }

    pub fn ground_size(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn contains(&self, subset: &[usize]) -> bool {
        let mut s = subset.to_vec();
        s.sort_unstable();
        self.members.binary_search(&s).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.members.iter()
    }
}

/// All antichains of `P`, including the empty set and all singletons.
pub fn antichains(p: &Poset) -> SubsetFamily {
    let d = p.len();
    let mut masks = Vec::new();
    collect_antichains(p, d, 0, 0, &mut masks);
    SubsetFamily::from_masks(d, masks)
}

fn collect_antichains(p: &Poset, d: usize, start: usize, current: u64, out: &mut Vec<u64>) {
    out.push(current);
    for v in start..d {
        if p.comp_mask(v) & current == 0 {
            collect_antichains(p, d, v + 1, current | 1 << v, out);
        }
    }
}

pub(crate) fn antichain_masks(p: &Poset) -> Vec<u64> {
    let mut masks = Vec::new();
    collect_antichains(p, p.len(), 0, 0, &mut masks);
    masks.sort_unstable();
    masks
}

/// All inclusion-maximal chains of `P`. For `d = 0` the family is `{∅}`.
pub fn maximal_chains(p: &Poset) -> SubsetFamily {
    let adj: Vec<u64> = (0..p.len()).map(|i| p.comp_mask(i)).collect();
    let universe = if p.len() == 64 {
        !0
    } else {
        (1u64 << p.len()) - 1
    };
    SubsetFamily::from_masks(p.len(), max_cliques_in(&adj, universe))
}

/// Reference enumerator: filter all subsets for "chain, not extendable".
/// Kept alongside the clique-based path as its independent cross-check.
pub fn maximal_chains_plain(p: &Poset) -> SubsetFamily {
    let d = p.len();
    assert!(d <= 24, "plain enumerator is exponential in d");
    let mut masks = Vec::new();
    'subsets: for s in 0..(1u64 << d) {
        let mut m = s;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            // every other member must be comparable with v
            if s & !(1 << v) & !p.comp_mask(v) != 0 {
                continue 'subsets;
            }
        }
        for v in 0..d {
            if s >> v & 1 == 0 && s & !p.comp_mask(v) == 0 {
                continue 'subsets; // extendable by v
            }
        }
        masks.push(s);
    }
    SubsetFamily::from_masks(d, masks)
}

/// The number of chains of `P`, the empty chain included.
pub fn chain_count(p: &Poset) -> u64 {
    let adj: Vec<u64> = (0..p.len()).map(|i| p.comp_mask(i)).collect();
    let universe = if p.len() == 64 {
        !0
    } else {
        (1u64 << p.len()) - 1
    };
    count_cliques(&adj, universe)
}

/// All chains of `P` that contain element `i`.
pub fn chains_through(p: &Poset, i: usize) -> Result<SubsetFamily> {
    if i == 0 || i > p.len() {
        return Err(Error::Index {
            index: i,
            d: p.len(),
        });
    }
    let mut masks = Vec::new();
    let seed = 1u64 << (i - 1);
    collect_cliques_from(p, seed, p.comp_mask(i - 1), &mut masks);
    Ok(SubsetFamily::from_masks(p.len(), masks))
}

fn collect_cliques_from(p: &Poset, current: u64, cand: u64, out: &mut Vec<u64>) {
    out.push(current);
    let mut m = cand;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        // only extend upward in index order to visit each clique once
        collect_cliques_from(p, current | 1 << v, m & p.comp_mask(v), out);
    }
}

/// The cap on the number of maximal chains of a d-element poset:
/// `floor(3^(d/3))`, computed exactly as the integer cube root of `3^d`.
pub fn max_chain_cap(d: usize) -> u64 {
    assert!(d <= 26, "3^d must fit in u128");
    let n = 3u128.pow(d as u32);
    let mut lo: u128 = 0;
    let mut hi: u128 = 1 << 43;
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if mid * mid * mid <= n {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo as u64
}

// ---------------------------------------------------------------------------
// Clique primitives on adjacency masks (shared with the facet engine).
// ---------------------------------------------------------------------------

/// Maximal cliques of the graph restricted to `universe`, as masks.
/// For `universe == 0` the result is `[0]` (the empty clique), which is the
/// convention the ordinal-sum decomposition of facet chains relies on.
pub(crate) fn max_cliques_in(adj: &[u64], universe: u64) -> Vec<u64> {
    let mut out = Vec::new();
    bron_kerbosch(adj, 0, universe, 0, &mut out);
    out
}

fn bron_kerbosch(adj: &[u64], r: u64, p: u64, x: u64, out: &mut Vec<u64>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    // pivot: vertex of p|x with the most candidate neighbours
    let mut pivot = usize::MAX;
    let mut best = u32::MAX;
    let mut scan = p | x;
    while scan != 0 {
        let u = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let missing = (p & !adj[u]).count_ones();
        if missing < best {
            best = missing;
            pivot = u;
        }
    }
    let mut cand = p & !adj[pivot];
    let mut p = p;
    let mut x = x;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let bit = 1u64 << v;
        cand &= cand - 1;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

fn count_cliques(adj: &[u64], cand: u64) -> u64 {
    let mut total = 1; // the empty clique
    let mut m = cand;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        total += count_cliques(adj, m & adj[v]);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(members: &[&[usize]]) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = members.iter().map(|m| m.to_vec()).collect();
        v.sort();
        v
    }

    #[test]
    fn antichains_of_small_posets() {
        assert_eq!(
            antichains(&Poset::antichain(2)).members(),
            family(&[&[], &[1], &[2], &[1, 2]]).as_slice()
        );
        assert_eq!(
            antichains(&Poset::chain(2)).members(),
            family(&[&[], &[1], &[2]]).as_slice()
        );
        let stacked = Poset::antichain(2).ordinal_sum(&Poset::antichain(2));
        assert_eq!(antichains(&stacked).len(), 7);
    }

    #[test]
    fn antichains_of_empty_poset() {
        let f = antichains(&Poset::empty());
        assert_eq!(f.members(), &[Vec::<usize>::new()]);
    }

    #[test]
    fn maximal_chains_of_small_posets() {
        assert_eq!(
            maximal_chains(&Poset::chain(3)).members(),
            family(&[&[1, 2, 3]]).as_slice()
        );
        assert_eq!(
            maximal_chains(&Poset::antichain(3)).members(),
            family(&[&[1], &[2], &[3]]).as_slice()
        );
        // isolated element plus a 2-chain
        let p = Poset::from_covers(3, &[(2, 3)]).unwrap();
        assert_eq!(
            maximal_chains(&p).members(),
            family(&[&[1], &[2, 3]]).as_slice()
        );
    }

    #[test]
    fn maximal_chains_of_empty_poset_is_empty_set_family() {
        let f = maximal_chains(&Poset::empty());
        assert_eq!(f.members(), &[Vec::<usize>::new()]);
    }

    #[test]
    fn plain_enumerator_agrees_with_clique_path() {
        let samples = [
            Poset::empty(),
            Poset::singleton(),
            Poset::chain(5),
            Poset::antichain(5),
            Poset::from_covers(5, &[(1, 3), (2, 3), (3, 4), (3, 5)]).unwrap(),
            Poset::from_covers(6, &[(1, 2), (3, 4), (5, 6), (1, 4)]).unwrap(),
            Poset::antichain(3).ordinal_sum(&Poset::antichain(3)),
        ];
        for p in &samples {
            assert_eq!(maximal_chains(p), maximal_chains_plain(p));
        }
    }

    #[test]
    fn chain_counts() {
        assert_eq!(chain_count(&Poset::antichain(2)), 3);
        assert_eq!(chain_count(&Poset::chain(2)), 4);
        for d in 0..=10 {
            assert_eq!(chain_count(&Poset::chain(d)), 1 << d);
        }
        assert_eq!(chain_count(&Poset::empty()), 1);
    }

    #[test]
    fn chains_through_examples() {
        assert_eq!(
            chains_through(&Poset::chain(2), 1).unwrap().members(),
            family(&[&[1], &[1, 2]]).as_slice()
        );
        assert_eq!(
            chains_through(&Poset::antichain(2), 1).unwrap().members(),
            family(&[&[1]]).as_slice()
        );
        let p = Poset::antichain(2).ordinal_sum(&Poset::singleton());
        assert_eq!(
            chains_through(&p, 3).unwrap().members(),
            family(&[&[3], &[1, 3], &[2, 3]]).as_slice()
        );
        assert!(matches!(
            chains_through(&p, 4),
            Err(Error::Index { index: 4, d: 3 })
        ));
    }

    #[test]
    fn moon_moser_cap_values() {
        let expected = [1u64, 1, 2, 3, 4, 6, 9, 12, 18, 27];
        for (d, &e) in expected.iter().enumerate() {
            assert_eq!(max_chain_cap(d), e, "d = {d}");
        }
    }

    #[test]
    fn moon_moser_tightness_witness() {
        let p = Poset::antichain(3).ordinal_sum(&Poset::antichain(3));
        assert_eq!(maximal_chains(&p).len(), 9);
        assert_eq!(max_chain_cap(6), 9);
    }

    #[test]
    fn every_chain_extends_to_a_maximal_chain() {
        let samples = [
            Poset::chain(4),
            Poset::antichain(4),
            Poset::from_covers(5, &[(1, 3), (2, 3), (3, 4), (3, 5)]).unwrap(),
            Poset::from_covers(6, &[(1, 2), (3, 4), (5, 6), (1, 4)]).unwrap(),
        ];
        for p in &samples {
            let maxima = maximal_chains(p);
            let d = p.len();
            for s in 0u64..(1 << d) {
                let idx = indices_from_mask(s);
                let is_chain = idx
                    .iter()
                    .all(|&i| idx.iter().all(|&j| i == j || p.comparable(i, j)));
                if !is_chain {
                    continue;
                }
                assert!(
                    maxima.iter().any(|m| idx.iter().all(|i| m.contains(i))),
                    "chain {idx:?} has no maximal extension"
                );
            }
        }
    }

    #[test]
    fn chain_count_equals_clique_count_of_comparability_graph() {
        let samples = [
            Poset::from_covers(5, &[(1, 3), (2, 3), (3, 4), (3, 5)]).unwrap(),
            Poset::from_covers(6, &[(1, 2), (3, 4), (5, 6), (1, 4)]).unwrap(),
        ];
        for p in &samples {
            let g = p.comparability_graph();
            let d = p.len();
            let mut cliques = 0u64;
            's: for s in 0u64..(1 << d) {
                for i in 1..=d {
                    if s >> (i - 1) & 1 == 1 {
                        for j in 1..=d {
                            if i != j && s >> (j - 1) & 1 == 1 && !g.has_edge(i, j) {
                                continue 's;
                            }
                        }
                    }
                }
                cliques += 1;
            }
            assert_eq!(chain_count(p), cliques);
        }
    }
}
