//! Facet counting for twinned chain polytopes.
//!
//! The facet set of the twinned chain polytope of a pair `(P, Q)` is the
//! deduplicated union, over all `W ⊆ [d]`, of the maximal chains of the
//! ordinal sum `P_W ⊕ Q_{complement(W)}`. Every maximal chain of that sum
//! splits into a maximal chain inside `P_W` and one inside the complement
//! part of `Q`, so each facet is labeled by a [`SignedChain`]: a chain of `P`
//! together with a disjoint chain of `Q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::chains::{chain_count, max_cliques_in};
use crate::error::{Error, Result};
use crate::poset::{indices_from_mask, labeled_graph_iso_by_identity, Poset};

/// Practical cap for the `2^d` subset loop.
pub const MAX_FACET_DIM: usize = 24;

/// Which side of the pair an element of a delta poset came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    P,
    Q,
}

/// The ordinal sum `P_W ⊕ Q_{complement(W)}` with each element tagged by its
/// side and original 1-based index.
#[derive(Clone, Debug)]
pub struct DeltaPoset {
    pub poset: Poset,
    pub tags: Vec<(Side, usize)>,
}

/// Build the tagged ordinal sum for a subset `W` of `[d]` (1-based indices).
pub fn delta_poset(p: &Poset, q: &Poset, w: &[usize]) -> Result<DeltaPoset> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let d = p.len();
    let mut w_sorted = w.to_vec();
    w_sorted.sort_unstable();
    w_sorted.dedup();
    for &i in &w_sorted {
        if i == 0 || i > d {
            return Err(Error::Index { index: i, d });
        }
    }
    let complement: Vec<usize> = (1..=d).filter(|i| !w_sorted.contains(i)).collect();
    let (p_part, p_map) = p.induced(&w_sorted)?;
    let (q_part, q_map) = q.induced(&complement)?;
    let mut tags: Vec<(Side, usize)> = p_map.into_iter().map(|i| (Side::P, i)).collect();
    tags.extend(q_map.into_iter().map(|i| (Side::Q, i)));
    Ok(DeltaPoset {
        poset: p_part.ordinal_sum(&q_part),
        tags,
    })
}

/// A facet label: a chain `p` of `P` and a disjoint chain `q` of `Q`,
/// both as ascending 1-based index lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedChain {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
}

impl SignedChain {
    pub fn new(mut p: Vec<usize>, mut q: Vec<usize>) -> SignedChain {
        p.sort_unstable();
        q.sort_unstable();
        SignedChain { p, q }
    }

    fn sort_key(&self) -> (usize, &[usize], &[usize]) {
        (self.p.len() + self.q.len(), &self.p, &self.q)
    }
}

impl PartialOrd for SignedChain {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignedChain {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl std::fmt::Display for SignedChain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "P: {:?} Q: {:?}", self.p, self.q)
    }
}

/// The deduplicated facet labels of a pair, in the deterministic output
/// order (size, then `p` lexicographic, then `q` lexicographic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetFamily {
    d: usize,
    chains: Vec<SignedChain>,
}

impl FacetFamily {
    pub fn ground_size(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn chains(&self) -> &[SignedChain] {
        &self.chains
    }

    pub fn contains(&self, chain: &SignedChain) -> bool {
        self.chains.iter().any(|c| c == chain)
    }

    /// One line per chain, in family order.
    pub fn to_lines(&self) -> String {
        let mut s = String::new();
        for c in &self.chains {
            s.push_str(&c.to_string());
            s.push('\n');
        }
        s
    }
}

fn adj_masks(p: &Poset) -> Vec<u64> {
    (0..p.len()).map(|i| p.comp_mask(i)).collect()
}

fn check_pair(p: &Poset, q: &Poset) -> Result<usize> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let d = p.len();
    if d > MAX_FACET_DIM {
        return Err(Error::Size {
            what: "facet enumeration",
            d,
            min: 0,
            max: MAX_FACET_DIM,
        });
    }
    Ok(d)
}

/// Raw facet label masks `(p_mask, q_mask)` packed into `u128`s, sorted.
pub(crate) fn facet_pairs_masks(gp: &[u64], gq: &[u64], d: usize) -> Vec<u128> {
    let full: u64 = if d == 0 { 0 } else { (1u64 << d) - 1 };
    let mut pairs: Vec<u128> = Vec::new();
    for w in 0..=full {
        let p_cliques = max_cliques_in(gp, w);
        let q_cliques = max_cliques_in(gq, full & !w);
        for &a in &p_cliques {
            for &b in &q_cliques {
                pairs.push((a as u128) << 64 | b as u128);
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

/// Enumerate the facet labels of the pair `(P, Q)`.
pub fn facet_chains(p: &Poset, q: &Poset) -> Result<FacetFamily> {
    let d = check_pair(p, q)?;
    let pairs = facet_pairs_masks(&adj_masks(p), &adj_masks(q), d);
    let mut chains: Vec<SignedChain> = pairs
        .into_iter()
        .map(|key| {
            SignedChain::new(
                indices_from_mask((key >> 64) as u64),
                indices_from_mask(key as u64),
            )
        })
        .collect();
    chains.sort();
    Ok(FacetFamily { d, chains })
}

/// The number of facets of the twinned chain polytope of `(P, Q)`.
/// For `d = 0` this is 1 (the single empty label).
pub fn facet_count(p: &Poset, q: &Poset) -> Result<u64> {
    let d = check_pair(p, q)?;
    Ok(facet_pairs_masks(&adj_masks(p), &adj_masks(q), d).len() as u64)
}

/// Facet count when the first poset is a d-chain: the sum over all subsets
/// `W` of the number of maximal chains of `Q_W`. Must agree with
/// `facet_count(chain(d), Q)`.
pub fn facet_count_chain_p(q: &Poset) -> u64 {
    let d = q.len();
    assert!(d <= MAX_FACET_DIM, "2^d subset loop");
    let gq = adj_masks(q);
    let full: u64 = if d == 0 { 0 } else { (1u64 << d) - 1 };
    (0..=full)
        .map(|w| max_cliques_in(&gq, w).len() as u64)
        .sum()
}

/// The three closed-form pair families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedFormKind {
    /// Both posets are d-chains.
    ChainChain,
    /// Both posets are d-antichains.
    AntichainAntichain,
    /// First an antichain, second a chain.
    AntichainChain,
}

/// Closed-form facet counts: `2^d`, `d^2 + d`, and `d * 2^(d-1) + 1`.
pub fn closed_form(kind: ClosedFormKind, d: usize) -> u64 {
    assert!((1..=62).contains(&d));
    let d64 = d as u64;
    match kind {
        ClosedFormKind::ChainChain => 1u64 << d,
        ClosedFormKind::AntichainAntichain => d64 * d64 + d64,
        ClosedFormKind::AntichainChain => d64 * (1u64 << (d - 1)) + 1,
    }
}

/// The dimension-d facet bound, exact: `6^(d/2)` for even d and
/// `14 * 6^((d-3)/2)` for odd d (so `7/3` at d = 1).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoundValue(BigRational);

impl BoundValue {
    pub fn value(&self) -> &BigRational {
        &self.0
    }

    /// Does `n` respect the bound?
    pub fn admits(&self, n: u64) -> bool {
        BigRational::from_integer(BigInt::from(n)) <= self.0
    }

    pub fn attained_by(&self, n: u64) -> bool {
        BigRational::from_integer(BigInt::from(n)) == self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.denom().is_one()
    }
}

impl std::fmt::Display for BoundValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn bound(d: usize) -> BoundValue {
    assert!(d >= 1, "bound is defined for d >= 1");
    let six = BigRational::from_integer(BigInt::from(6));
    let value = if d.is_multiple_of(2) {
        six.pow((d / 2) as i32)
    } else {
        let exp = (d as i32 - 3) / 2; // -1 at d = 1
        BigRational::from_integer(BigInt::from(14)) * six.pow(exp)
    };
    BoundValue(value)
}

/// The equality characterization for even d: both posets are isomorphic to a
/// free stack of 2-antichains and the index-preserving map is a comparability
/// graph isomorphism.
pub fn is_equality_case(p: &Poset, q: &Poset) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let d = p.len();
    if !d.is_multiple_of(2) {
        return Err(Error::OddDimension { d });
    }
    let reference = stacked_antichain_pairs(d / 2);
    let ref_code = reference.canonical_code()?;
    Ok(p.canonical_code()? == ref_code
        && q.canonical_code()? == ref_code
        && labeled_graph_iso_by_identity(p, q)?)
}

/// `I_2 ⊕ I_2 ⊕ ... ⊕ I_2` with `blocks` summands.
pub fn stacked_antichain_pairs(blocks: usize) -> Poset {
    let mut p = Poset::empty();
    for _ in 0..blocks {
        p = p.ordinal_sum(&Poset::antichain(2));
    }
    p
}

/// Align two pairs into `(P1 ⊕ P2, Q1 ⊕ Q2)`; facet counts multiply.
pub fn direct_sum_pair(p1: &Poset, q1: &Poset, p2: &Poset, q2: &Poset) -> Result<(Poset, Poset)> {
    if p1.len() != q1.len() {
        return Err(Error::DimensionMismatch {
            left: p1.len(),
            right: q1.len(),
        });
    }
    if p2.len() != q2.len() {
        return Err(Error::DimensionMismatch {
            left: p2.len(),
            right: q2.len(),
        });
    }
    Ok((p1.ordinal_sum(p2), q1.ordinal_sum(q2)))
}

/// Which counting inequality a report verifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InequalityKind {
    /// The facet labels through a fixed P-element are at most
    /// `c(Q_inc) * N(sub-pair)` where `inc` is the element's incomparable set.
    ThroughElement,
    /// Deleting one element bounds the count by a three-term sum of
    /// sub-pair counts.
    Deletion,
}

/// Both sides of a counting inequality, with the individual right-hand terms.
#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub kind: InequalityKind,
    pub element: usize,
    pub lhs: u64,
    pub rhs: u64,
    pub rhs_terms: Vec<u64>,
    pub holds: bool,
}

/// Evaluate one of the counting inequalities at element `k`.
pub fn counting_inequality(
    p: &Poset,
    q: &Poset,
    kind: InequalityKind,
    k: usize,
) -> Result<InequalityReport> {
    let d = check_pair(p, q)?;
    if k == 0 || k > d {
        return Err(Error::Index { index: k, d });
    }
    let ground: Vec<usize> = (1..=d).collect();
    let without = |skip: &[usize]| -> Vec<usize> {
        ground
            .iter()
            .copied()
            .filter(|i| !skip.contains(i))
            .collect()
    };
    let sub_count = |keep: &[usize]| -> Result<u64> {
        let (ps, _) = p.induced(keep)?;
        let (qs, _) = q.induced(keep)?;
        facet_count(&ps, &qs)
    };
    match kind {
        InequalityKind::ThroughElement => {
            let inc = p.incomparables(k)?;
            let family = facet_chains(p, q)?;
            let lhs = family.chains().iter().filter(|c| c.p.contains(&k)).count() as u64;
            let mut skip = vec![k];
            skip.extend_from_slice(&inc);
            let (q_inc, _) = q.induced(&inc)?;
            let factor = chain_count(&q_inc);
            let sub = sub_count(&without(&skip))?;
            let rhs = factor * sub;
            Ok(InequalityReport {
                kind,
                element: k,
                lhs,
                rhs,
                rhs_terms: vec![factor, sub],
                holds: lhs <= rhs,
            })
        }
        InequalityKind::Deletion => {
            let inc_p = p.incomparables(k)?;
            let inc_q = q.incomparables(k)?;
            let lhs = facet_count(p, q)?;
            let t1 = sub_count(&without(&[k]))?;
            let mut skip_p = vec![k];
            skip_p.extend_from_slice(&inc_p);
            let (q_inc, _) = q.induced(&inc_p)?;
            let t2 = chain_count(&q_inc) * sub_count(&without(&skip_p))?;
            let mut skip_q = vec![k];
            skip_q.extend_from_slice(&inc_q);
            let (p_inc, _) = p.induced(&inc_q)?;
            let t3 = chain_count(&p_inc) * sub_count(&without(&skip_q))?;
            let rhs = t1 + t2 + t3;
            Ok(InequalityReport {
                kind,
                element: k,
                lhs,
                rhs,
                rhs_terms: vec![t1, t2, t3],
                holds: lhs <= rhs,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Precomputed per-subset clique lists, used by the census hot loop.
// ---------------------------------------------------------------------------

pub(crate) struct CliqueTable {
    pub d: usize,
    lists: Vec<Vec<u64>>,
}

impl CliqueTable {
    pub(crate) fn build(adj: &[u64], d: usize) -> CliqueTable {
        assert!(d <= 16);
        let lists = (0u64..1 << d).map(|w| max_cliques_in(adj, w)).collect();
        CliqueTable { d, lists }
    }

    pub(crate) fn cliques(&self, w: u64) -> &[u64] {
        &self.lists[w as usize]
    }
}

/// Facet count from two precomputed tables; `scratch` is reused across calls.
pub(crate) fn facet_count_tables(
    pt: &CliqueTable,
    qt: &CliqueTable,
    scratch: &mut Vec<u128>,
) -> u64 {
    debug_assert_eq!(pt.d, qt.d);
    let full: u64 = (1u64 << pt.d) - 1;
    scratch.clear();
    for w in 0..=full {
        for &a in pt.cliques(w) {
            for &b in qt.cliques(full & !w) {
                scratch.push((a as u128) << 64 | b as u128);
            }
        }
    }
    scratch.sort_unstable();
    scratch.dedup();
    scratch.len() as u64
}
