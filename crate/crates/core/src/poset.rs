//! Finite posets on the ground set `[d] = {1, ..., d}`, their comparability
//! graphs, and isomorphism machinery (canonical codes and automorphisms).
//!
//! Relations are stored transitively closed. Indices are 1-based at the API
//! surface, matching the `p_1, ..., p_d` convention; the internal bitmask
//! representation is 0-based.

use crate::error::{Error, Result};

/// Hard cap from the `u64` mask representation.
pub const MAX_GROUND: usize = 64;
/// Canonicalization is exhaustive-with-pruning; this is the guaranteed range.
pub const MAX_CANON: usize = 8;

/// A finite strict partial order on `[d]`, stored as a transitively closed
/// relation. `above[i]` holds bit `j` iff `p_{i+1} <_P p_{j+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    d: usize,
    above: Vec<u64>,
    below: Vec<u64>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poset(d={}, rel={:?})", self.d, self.relation())
    }
}

fn full_mask(d: usize) -> u64 {
    if d == 64 {
        !0
    } else {
        (1u64 << d) - 1
    }
}

pub(crate) fn indices_from_mask(mut m: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        let b = m.trailing_zeros() as usize;
        out.push(b + 1);
        m &= m - 1;
    }
    out
}

impl Poset {
    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.d {
            Err(Error::Index {
                index: i,
                d: self.d,
            })
        } else {
            Ok(())
        }
    }

    /// Build a poset as the transitive closure of the given cover (or any
    /// relation) pairs, `(i, j)` meaning `p_i <_P p_j`, 1-based.
    pub fn from_covers(d: usize, covers: &[(usize, usize)]) -> Result<Poset> {
        if d > MAX_GROUND {
            return Err(Error::Size {
                what: "poset ground set",
                d,
                min: 0,
                max: MAX_GROUND,
            });
        }
        let mut above = vec![0u64; d];
        for &(i, j) in covers {
            if i == 0 || i > d {
                return Err(Error::Index { index: i, d });
            }
            if j == 0 || j > d {
                return Err(Error::Index { index: j, d });
            }
            if i == j {
                return Err(Error::Cycle { element: i });
            }
            above[i - 1] |= 1 << (j - 1);
        }
        // Warshall closure on the mask rows.
        for k in 0..d {
            for i in 0..d {
                if above[i] >> k & 1 == 1 {
                    above[i] |= above[k];
                }
            }
        }
        for i in 0..d {
            if above[i] >> i & 1 == 1 {
                return Err(Error::Cycle { element: i + 1 });
            }
        }
        Ok(Self::from_closed_rows(d, above))
    }

    pub(crate) fn from_closed_rows(d: usize, above: Vec<u64>) -> Poset {
        let mut below = vec![0u64; d];
        for i in 0..d {
            let mut m = above[i];
            while m != 0 {
                let j = m.trailing_zeros() as usize;
                below[j] |= 1 << i;
                m &= m - 1;
            }
        }
        Poset { d, above, below }
    }

    /// The empty poset; identity for both ordinal sum and disjoint union.
    pub fn empty() -> Poset {
        Poset {
            d: 0,
            above: vec![],
            below: vec![],
        }
    }

    /// The d-element antichain.
    pub fn antichain(d: usize) -> Poset {
        Poset::from_covers(d, &[]).expect("antichain within size cap")
    }

    /// The d-element chain `p_1 < p_2 < ... < p_d`.
    pub fn chain(d: usize) -> Poset {
        let covers: Vec<_> = (1..d).map(|i| (i, i + 1)).collect();
        Poset::from_covers(d, &covers).expect("chain within size cap")
    }

    /// The singleton poset.
    pub fn singleton() -> Poset {
        Poset::antichain(1)
    }

    pub fn len(&self) -> usize {
        self.d
    }

    pub fn is_empty(&self) -> bool {
        self.d == 0
    }

    /// `p_i <_P p_j`?
    pub fn lt(&self, i: usize, j: usize) -> bool {
        assert!(i >= 1 && i <= self.d && j >= 1 && j <= self.d);
        self.above[i - 1] >> (j - 1) & 1 == 1
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        i != j && (self.lt(i, j) || self.lt(j, i))
    }

    /// All related pairs `(i, j)` with `p_i <_P p_j`, sorted, 1-based.
    pub fn relation(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.d {
            for j in indices_from_mask(self.above[i]) {
                out.push((i + 1, j));
            }
        }
        out.sort_unstable();
        out
    }

    /// The cover pairs of the relation: `(i, j)` with `i < j` and no element
    /// strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.d {
            let mut m = self.above[i];
            while m != 0 {
                let j = m.trailing_zeros() as usize;
                m &= m - 1;
                if self.above[i] & self.below[j] == 0 {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub(crate) fn above_mask(&self, i0: usize) -> u64 {
        self.above[i0]
    }

    pub(crate) fn comp_mask(&self, i0: usize) -> u64 {
        self.above[i0] | self.below[i0]
    }

    /// Elements of `[d] \ {i}` incomparable with `p_i`, sorted, 1-based.
    pub fn incomparables(&self, i: usize) -> Result<Vec<usize>> {
        self.check_index(i)?;
        let m = full_mask(self.d) & !self.comp_mask(i - 1) & !(1 << (i - 1));
        Ok(indices_from_mask(m))
    }

    /// The induced subposet on `w` together with the map from new 1-based
    /// indices to the original ones (increasing original order).
    pub fn induced(&self, w: &[usize]) -> Result<(Poset, Vec<usize>)> {
        let mut sorted: Vec<usize> = w.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &i in &sorted {
            self.check_index(i)?;
        }
        let mut above = vec![0u64; sorted.len()];
        for (a, &i) in sorted.iter().enumerate() {
            for (b, &j) in sorted.iter().enumerate() {
                if a != b && self.lt(i, j) {
                    above[a] |= 1 << b;
                }
            }
        }
        Ok((Poset::from_closed_rows(sorted.len(), above), sorted))
    }

    /// Ordinal sum: everything in `self` below everything in `other`
    /// (`other`'s indices are shifted by `self.len()`).
    pub fn ordinal_sum(&self, other: &Poset) -> Poset {
        let d = self.d + other.d;
        assert!(d <= MAX_GROUND, "ordinal sum exceeds ground cap");
        let upper: u64 = full_mask(d) & !full_mask(self.d);
        let mut above = vec![0u64; d];
        for i in 0..self.d {
            above[i] = self.above[i] | upper;
        }
        for i in 0..other.d {
            above[self.d + i] = other.above[i] << self.d;
        }
        Poset::from_closed_rows(d, above)
    }

    /// Disjoint union: no relations between the two summands.
    pub fn disjoint_union(&self, other: &Poset) -> Poset {
        let d = self.d + other.d;
        assert!(d <= MAX_GROUND, "disjoint union exceeds ground cap");
        let mut above = vec![0u64; d];
        above[..self.d].copy_from_slice(&self.above);
        for i in 0..other.d {
            above[self.d + i] = other.above[i] << self.d;
        }
        Poset::from_closed_rows(d, above)
    }

    /// Order dual (all relations reversed). Shares its comparability graph
    /// with `self`.
    pub fn dual(&self) -> Poset {
        Poset {
            d: self.d,
            above: self.below.clone(),
            below: self.above.clone(),
        }
    }

    /// Relabel by `perm`, where `perm[i - 1]` is the new index of element `i`
    /// (a 1-based permutation of `[d]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Poset> {
        check_permutation(self.d, perm)?;
        let mut above = vec![0u64; self.d];
        for i in 0..self.d {
            let mut m = self.above[i];
            while m != 0 {
                let j = m.trailing_zeros() as usize;
                m &= m - 1;
                above[perm[i] - 1] |= 1 << (perm[j] - 1);
            }
        }
        Ok(Poset::from_closed_rows(self.d, above))
    }

    /// The comparability graph `G_P`.
    pub fn comparability_graph(&self) -> Graph {
        let adj: Vec<u64> = (0..self.d).map(|i| self.comp_mask(i)).collect();
        Graph { d: self.d, adj }
    }

    /// Verify the three order axioms on the stored relation. Constructors
    /// guarantee them; tests call this on every generated poset.
    pub fn check_axioms(&self) -> Result<()> {
        for i in 0..self.d {
            if self.above[i] >> i & 1 == 1 {
                return Err(Error::Cycle { element: i + 1 });
            }
            if self.above[i] & self.below[i] != 0 {
                return Err(Error::Cycle { element: i + 1 });
            }
            let mut m = self.above[i];
            while m != 0 {
                let j = m.trailing_zeros() as usize;
                m &= m - 1;
                if self.above[j] & !self.above[i] != 0 {
                    return Err(Error::Cycle { element: j + 1 });
                }
            }
        }
        Ok(())
    }

    /// Canonical code: equal exactly for order-isomorphic posets.
    pub fn canonical_code(&self) -> Result<CanonicalCode> {
        if self.d > MAX_CANON {
            return Err(Error::Size {
                what: "poset canonicalization",
                d: self.d,
                min: 0,
                max: MAX_CANON,
            });
        }
        Ok(CanonicalCode(min_code(
            b'P',
            self.d,
            &self.above,
            &self.below,
        )))
    }

    /// Order automorphisms, as 1-based permutations.
    pub fn automorphisms(&self) -> Result<Vec<Vec<usize>>> {
        if self.d > MAX_CANON {
            return Err(Error::Size {
                what: "poset automorphisms",
                d: self.d,
                min: 0,
                max: MAX_CANON,
            });
        }
        Ok(automorphisms_of(self.d, &self.above, &self.below))
    }
}

fn check_permutation(d: usize, perm: &[usize]) -> Result<()> {
    if perm.len() != d {
        return Err(Error::DimensionMismatch {
            left: d,
            right: perm.len(),
        });
    }
    let mut seen = 0u64;
    for &v in perm {
        if v == 0 || v > d {
            return Err(Error::Index { index: v, d });
        }
        if seen >> (v - 1) & 1 == 1 {
            return Err(Error::Index { index: v, d });
        }
        seen |= 1 << (v - 1);
    }
    Ok(())
}

/// A finite simple graph on `[d]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    d: usize,
    adj: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(d={}, edges={:?})", self.d, self.edges())
    }
}

impl Graph {
    pub fn from_edges(d: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if d > MAX_GROUND {
            return Err(Error::Size {
                what: "graph vertex set",
                d,
                min: 0,
                max: MAX_GROUND,
            });
        }
        let mut adj = vec![0u64; d];
        for &(i, j) in edges {
            if i == 0 || i > d {
                return Err(Error::Index { index: i, d });
            }
            if j == 0 || j > d {
                return Err(Error::Index { index: j, d });
            }
            if i == j {
                return Err(Error::Index { index: i, d });
            }
            adj[i - 1] |= 1 << (j - 1);
            adj[j - 1] |= 1 << (i - 1);
        }
        Ok(Graph { d, adj })
    }

    pub fn len(&self) -> usize {
        self.d
    }

    pub fn is_empty(&self) -> bool {
        self.d == 0
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        assert!(i >= 1 && i <= self.d && j >= 1 && j <= self.d);
        self.adj[i - 1] >> (j - 1) & 1 == 1
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i - 1].count_ones() as usize
    }

    /// Edges as sorted `(i, j)` pairs with `i < j`, 1-based.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.d {
            let mut m = self.adj[i] & !((1u64 << (i + 1)) - 1);
            while m != 0 {
                let j = m.trailing_zeros() as usize;
                m &= m - 1;
                out.push((i + 1, j + 1));
            }
        }
        out
    }

    pub(crate) fn from_adj(d: usize, adj: Vec<u64>) -> Graph {
        Graph { d, adj }
    }

    pub fn canonical_code(&self) -> Result<CanonicalCode> {
        if self.d > MAX_CANON {
            return Err(Error::Size {
                what: "graph canonicalization",
                d: self.d,
                min: 0,
                max: MAX_CANON,
            });
        }
        Ok(CanonicalCode(min_code(b'G', self.d, &self.adj, &self.adj)))
    }

    /// Graph automorphisms, as 1-based permutations.
    pub fn automorphisms(&self) -> Result<Vec<Vec<usize>>> {
        if self.d > MAX_CANON {
            return Err(Error::Size {
                what: "graph automorphisms",
                d: self.d,
                min: 0,
                max: MAX_CANON,
            });
        }
        Ok(automorphisms_of(self.d, &self.adj, &self.adj))
    }
}

/// `true` iff the index-preserving map `p_i -> q_i` is a graph isomorphism
/// `G_P -> G_Q`, i.e. the two comparability graphs have identical edge sets.
pub fn labeled_graph_iso_by_identity(p: &Poset, q: &Poset) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(p.comparability_graph().adj == q.comparability_graph().adj)
}

/// Isomorphism-invariant identifier for a poset or graph.
///
/// Codes of the two kinds live in disjoint spaces (tagged by a kind byte),
/// so a poset code never equals a graph code.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl std::fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl std::fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_hex())
    }
}

// ---------------------------------------------------------------------------
// Canonicalization: lexicographically minimal relabeled encoding over all
// permutations, pruned by iterated degree-partition refinement and by
// prefix comparison against the best code found so far. The refinement only
// restricts which vertices may share a position; correctness does not depend
// on it because refinement keys are isomorphism-invariant.
// ---------------------------------------------------------------------------

/// Stable isomorphism-invariant vertex classes, identified by ids whose
/// numeric order is itself invariant (ids are ranks of sorted keys).
fn refine_classes(d: usize, out_rows: &[u64], in_rows: &[u64]) -> Vec<usize> {
    let mut class: Vec<usize> = (0..d)
        .map(|i| (out_rows[i].count_ones() as usize) * (d + 1) + in_rows[i].count_ones() as usize)
        .collect();
    normalize_ids(&mut class);
    loop {
        let mut keys: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::with_capacity(d);
        for i in 0..d {
            let mut outs: Vec<usize> = indices_from_mask(out_rows[i])
                .into_iter()
                .map(|j| class[j - 1])
                .collect();
            outs.sort_unstable();
            let mut ins: Vec<usize> = indices_from_mask(in_rows[i])
                .into_iter()
                .map(|j| class[j - 1])
                .collect();
            ins.sort_unstable();
            keys.push((class[i], outs, ins));
        }
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = keys
            .iter()
            .map(|k| sorted.binary_search(k).unwrap())
            .collect();
        if next == class {
            return class;
        }
        class = next;
    }
}

fn normalize_ids(class: &mut [usize]) {
    let mut sorted: Vec<usize> = class.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for c in class.iter_mut() {
        *c = sorted.binary_search(c).unwrap();
    }
}

struct MinCodeSearch<'a> {
    d: usize,
    out_rows: &'a [u64],
    in_rows: &'a [u64],
    directed: bool,
    placed: Vec<usize>,
    used: u64,
    cur: Vec<u8>,
    best: Option<Vec<u8>>,
}

impl MinCodeSearch<'_> {
    fn run(&mut self) {
        self.dfs(0, true);
    }

    fn encode(&self, v: usize) -> [u8; 2] {
        let mut out_byte = 0u8;
        let mut in_byte = 0u8;
        for (j, &u) in self.placed.iter().enumerate() {
            if self.out_rows[v] >> u & 1 == 1 {
                out_byte |= 1 << j;
            }
            if self.in_rows[v] >> u & 1 == 1 {
                in_byte |= 1 << j;
            }
        }
        [out_byte, in_byte]
    }

    /// `tight` means the current prefix equals the best code's prefix, so
    /// byte comparisons are still needed. A strictly smaller byte clears it.
    fn dfs(&mut self, k: usize, tight: bool) {
        if k == self.d {
            // Full comparison: within a freely explored subtree the best code
            // may already have shrunk below the current leaf.
            match &self.best {
                None => self.best = Some(self.cur.clone()),
                Some(b) => {
                    if self.cur.as_slice() < b.as_slice() {
                        self.best = Some(self.cur.clone());
                    }
                }
            }
            return;
        }
        // A minimal code extends the current prefix with the minimal byte
        // pair available, so only candidates attaining it can contribute.
        let mut min_bytes = [u8::MAX; 2];
        for v in 0..self.d {
            if self.used >> v & 1 == 0 {
                let bytes = self.encode(v);
                let key = if self.directed { bytes } else { [bytes[0], 0] };
                if key < min_bytes {
                    min_bytes = key;
                }
            }
        }
        let width = if self.directed { 2 } else { 1 };
        let mut next_tight = tight && self.best.is_some();
        if next_tight {
            let best = self.best.as_ref().unwrap();
            for off in 0..width {
                match min_bytes[off].cmp(&best[self.cur.len() + off]) {
                    std::cmp::Ordering::Greater => return, // whole node dominated
                    std::cmp::Ordering::Less => {
                        next_tight = false;
                        break;
                    }
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        let saved = self.cur.len();
        self.cur.extend_from_slice(&min_bytes[..width]);
        for v in 0..self.d {
            if self.used >> v & 1 == 1 {
                continue;
            }
            let bytes = self.encode(v);
            let key = if self.directed { bytes } else { [bytes[0], 0] };
            if key != min_bytes {
                continue;
            }
            self.placed.push(v);
            self.used |= 1 << v;
            self.dfs(k + 1, next_tight);
            self.used &= !(1 << v);
            self.placed.pop();
        }
        self.cur.truncate(saved);
    }
}

fn min_code(kind: u8, d: usize, out_rows: &[u64], in_rows: &[u64]) -> Vec<u8> {
    let mut search = MinCodeSearch {
        d,
        out_rows,
        in_rows,
        directed: kind == b'P',
        placed: Vec::with_capacity(d),
        used: 0,
        cur: Vec::with_capacity(2 * d),
        best: None,
    };
    search.run();
    let mut code = vec![kind, d as u8];
    code.extend_from_slice(&search.best.unwrap_or_default());
    code
}

/// A fast complete isomorphism invariant for graphs: the minimum, over all
/// relabelings, of the per-position `(refined class id, adjacency byte)`
/// sequence. Class ids are isomorphism-invariant, so including them in the
/// comparison keeps the result canonical while pruning the search far harder
/// than byte comparison alone. Internal to the census; the public
/// [`Graph::canonical_code`] stays the plain minimal-encoding form.
pub(crate) fn fast_graph_key(adj: &[u64], d: usize) -> [u8; 17] {
    debug_assert!(d <= MAX_CANON);
    let class_of = refine_classes(d, adj, adj);
    struct S<'a> {
        d: usize,
        adj: &'a [u64],
        class_of: &'a [usize],
        placed: Vec<usize>,
        used: u64,
        cur: Vec<u8>,
        best: Option<Vec<u8>>,
    }
    impl S<'_> {
        fn dfs(&mut self, k: usize, tight: bool) {
            if k == self.d {
                match &self.best {
                    None => self.best = Some(self.cur.clone()),
                    Some(b) => {
                        if self.cur.as_slice() < b.as_slice() {
                            self.best = Some(self.cur.clone());
                        }
                    }
                }
                return;
            }
            let mut min_pair = [u8::MAX; 2];
            for v in 0..self.d {
                if self.used >> v & 1 == 0 {
                    let pair = self.pair_of(v);
                    if pair < min_pair {
                        min_pair = pair;
                    }
                }
            }
            let mut next_tight = tight && self.best.is_some();
            if next_tight {
                let best = self.best.as_ref().unwrap();
                for off in 0..2 {
                    match min_pair[off].cmp(&best[self.cur.len() + off]) {
                        std::cmp::Ordering::Greater => return,
                        std::cmp::Ordering::Less => {
                            next_tight = false;
                            break;
                        }
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            self.cur.extend_from_slice(&min_pair);
            for v in 0..self.d {
                if self.used >> v & 1 == 0 && self.pair_of(v) == min_pair {
                    self.placed.push(v);
                    self.used |= 1 << v;
                    self.dfs(k + 1, next_tight);
                    self.used &= !(1 << v);
                    self.placed.pop();
                }
            }
            self.cur.truncate(self.cur.len() - 2);
        }

        fn pair_of(&self, v: usize) -> [u8; 2] {
            let mut byte = 0u8;
            for (j, &u) in self.placed.iter().enumerate() {
                if self.adj[v] >> u & 1 == 1 {
                    byte |= 1 << j;
                }
            }
            [self.class_of[v] as u8, byte]
        }
    }
    let mut s = S {
        d,
        adj,
        class_of: &class_of,
        placed: Vec::with_capacity(d),
        used: 0,
        cur: Vec::with_capacity(2 * d),
        best: None,
    };
    s.dfs(0, true);
    let mut out = [0u8; 17];
    out[0] = d as u8;
    for (i, b) in s.best.unwrap_or_default().into_iter().enumerate() {
        out[1 + i] = b;
    }
    out
}

fn automorphisms_of(d: usize, out_rows: &[u64], in_rows: &[u64]) -> Vec<Vec<usize>> {
    let class_of = refine_classes(d, out_rows, in_rows);
    let mut image = vec![0usize; d];
    let mut used = 0u64;
    let mut found: Vec<Vec<usize>> = Vec::new();
    fn dfs(
        k: usize,
        d: usize,
        out_rows: &[u64],
        in_rows: &[u64],
        class_of: &[usize],
        image: &mut [usize],
        used: &mut u64,
        found: &mut Vec<Vec<usize>>,
    ) {
        if k == d {
            found.push(image.iter().map(|&v| v + 1).collect());
            return;
        }
        for v in 0..d {
            if *used >> v & 1 == 1 || class_of[v] != class_of[k] {
                continue;
            }
            let ok = (0..k).all(|j| {
                out_rows[k] >> j & 1 == out_rows[v] >> image[j] & 1
                    && in_rows[k] >> j & 1 == in_rows[v] >> image[j] & 1
            });
            if !ok {
                continue;
            }
            image[k] = v;
            *used |= 1 << v;
            dfs(k + 1, d, out_rows, in_rows, class_of, image, used, found);
            *used &= !(1 << v);
        }
    }
    dfs(
        0, d, out_rows, in_rows, &class_of, &mut image, &mut used, &mut found,
    );
    found.sort_unstable();
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(p: &Poset) -> CanonicalCode {
        p.canonical_code().unwrap()
    }

    #[test]
    fn closure_from_single_cover() {
        let p = Poset::from_covers(2, &[(1, 2)]).unwrap();
        assert_eq!(p.relation(), vec![(1, 2)]);
    }

    #[test]
    fn closure_forces_transitivity() {
        let p = Poset::from_covers(3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(p.relation(), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(p.covers(), vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn two_cycle_rejected() {
        assert!(matches!(
            Poset::from_covers(2, &[(1, 2), (2, 1)]),
            Err(Error::Cycle { .. })
        ));
    }

    #[test]
    fn long_cycle_rejected() {
        assert!(matches!(
            Poset::from_covers(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]),
            Err(Error::Cycle { .. })
        ));
    }

    #[test]
    fn out_of_range_index_rejected() {
        assert!(matches!(
            Poset::from_covers(2, &[(1, 3)]),
            Err(Error::Index { index: 3, d: 2 })
        ));
        assert!(matches!(
            Poset::from_covers(2, &[(0, 1)]),
            Err(Error::Index { index: 0, d: 2 })
        ));
    }

    #[test]
    fn induced_chain_from_chain() {
        let c3 = Poset::chain(3);
        let (sub, map) = c3.induced(&[1, 3]).unwrap();
        assert_eq!(map, vec![1, 3]);
        assert_eq!(code(&sub), code(&Poset::chain(2)));
    }

    #[test]
    fn induced_bottom_layer_of_stacked_antichains() {
        let p = Poset::antichain(2).ordinal_sum(&Poset::antichain(2));
        let (sub, _) = p.induced(&[1, 2]).unwrap();
        assert_eq!(sub.relation(), vec![]);
        assert_eq!(sub.len(), 2);
    }

    #[test]
    fn induced_top_of_fork_is_antichain() {
        // p_3 below p_1 and p_2.
        let p = Poset::from_covers(3, &[(3, 1), (3, 2)]).unwrap();
        let (sub, _) = p.induced(&[1, 2]).unwrap();
        assert_eq!(code(&sub), code(&Poset::antichain(2)));
    }

    #[test]
    fn induced_rejects_out_of_range() {
        let p = Poset::chain(3);
        assert!(matches!(p.induced(&[1, 4]), Err(Error::Index { .. })));
    }

    #[test]
    fn ordinal_sum_of_singletons_is_chain() {
        let s = Poset::singleton();
        assert_eq!(code(&s.ordinal_sum(&s)), code(&Poset::chain(2)));
    }

    #[test]
    fn ordinal_sum_definition() {
        let p = Poset::antichain(2).ordinal_sum(&Poset::antichain(2));
        assert_eq!(p.relation(), vec![(1, 3), (1, 4), (2, 3), (2, 4)]);
    }

    #[test]
    fn disjoint_union_examples() {
        let p = Poset::singleton().disjoint_union(&Poset::chain(2));
        assert_eq!(p.relation(), vec![(2, 3)]);
        let q = Poset::antichain(1).disjoint_union(&Poset::antichain(1));
        assert_eq!(code(&q), code(&Poset::antichain(2)));
        let two_chains = Poset::chain(2).disjoint_union(&Poset::chain(2));
        assert_eq!(two_chains.relation(), vec![(1, 2), (3, 4)]);
    }

    #[test]
    fn empty_poset_is_identity_for_both_sums() {
        let e = Poset::empty();
        let p = Poset::from_covers(3, &[(3, 1), (3, 2)]).unwrap();
        assert_eq!(e.ordinal_sum(&p), p);
        assert_eq!(p.ordinal_sum(&e), p);
        assert_eq!(e.disjoint_union(&p), p);
        assert_eq!(p.disjoint_union(&e), p);
    }

    #[test]
    fn comparability_graph_examples() {
        let k3 = Poset::chain(3).comparability_graph();
        assert_eq!(k3.edges(), vec![(1, 2), (1, 3), (2, 3)]);
        let empty = Poset::antichain(3).comparability_graph();
        assert_eq!(empty.edges(), vec![]);
        // Bottom element below two incomparable tops: a three-vertex path.
        let fork = Poset::singleton().ordinal_sum(&Poset::antichain(2));
        let g = fork.comparability_graph();
        assert_eq!(g.edges(), vec![(1, 2), (1, 3)]);
        assert_eq!(g.degree(1), 2);
    }

    #[test]
    fn codes_equal_up_to_relabeling() {
        let a = Poset::singleton().ordinal_sum(&Poset::antichain(2));
        let b = Poset::from_covers(3, &[(1, 2), (1, 3)]).unwrap();
        assert_eq!(code(&a), code(&b));
    }

    #[test]
    fn fork_and_dual_fork_differ_as_posets_but_not_as_graphs() {
        let fork = Poset::singleton().ordinal_sum(&Poset::antichain(2));
        let dual = Poset::antichain(2).ordinal_sum(&Poset::singleton());
        assert_ne!(code(&fork), code(&dual));
        assert_eq!(
            fork.comparability_graph().canonical_code().unwrap(),
            dual.comparability_graph().canonical_code().unwrap()
        );
    }

    #[test]
    fn poset_code_never_collides_with_graph_code() {
        let p = Poset::antichain(2);
        let g = p.comparability_graph();
        assert_ne!(code(&p), g.canonical_code().unwrap());
    }

    #[test]
    fn identity_graph_iso() {
        let p = Poset::from_covers(2, &[(1, 2)]).unwrap();
        let q = Poset::from_covers(2, &[(2, 1)]).unwrap();
        assert!(labeled_graph_iso_by_identity(&p, &q).unwrap());
        let r = Poset::antichain(2);
        assert!(!labeled_graph_iso_by_identity(&p, &r).unwrap());
        assert!(labeled_graph_iso_by_identity(&p, &p).unwrap());
    }

    #[test]
    fn identity_graph_iso_dimension_mismatch() {
        let p = Poset::antichain(2);
        let q = Poset::antichain(3);
        assert!(matches!(
            labeled_graph_iso_by_identity(&p, &q),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn stacked_antichain_layerings_differ_as_labeled_graphs() {
        let a = Poset::from_covers(4, &[(1, 3), (1, 4), (2, 3), (2, 4)]).unwrap();
        let b = Poset::from_covers(4, &[(1, 2), (1, 4), (3, 2), (3, 4)]).unwrap();
        assert!(!labeled_graph_iso_by_identity(&a, &b).unwrap());
        assert_eq!(code(&a), code(&b));
    }

    #[test]
    fn canonicalization_matches_exhaustive_min_over_permutations() {
        // The partition-refinement pruning must not change the result.
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
        let samples = [
            Poset::from_covers(4, &[(1, 2), (3, 4)]).unwrap(),
            Poset::from_covers(4, &[(2, 1), (2, 3), (2, 4)]).unwrap(),
            Poset::from_covers(4, &[(1, 3), (2, 3), (3, 4)]).unwrap(),
            Poset::antichain(4),
            Poset::chain(4),
        ];
        for p in &samples {
            let brute = perms(p.len())
                .into_iter()
                .map(|perm| {
                    let r = p.relabel(&perm).unwrap();
                    let mut bytes = vec![b'P', p.len() as u8];
                    for k in 0..p.len() {
                        let mut out_b = 0u8;
                        let mut in_b = 0u8;
                        for j in 0..k {
                            if r.lt(k + 1, j + 1) {
                                out_b |= 1 << j;
                            }
                            if r.lt(j + 1, k + 1) {
                                in_b |= 1 << j;
                            }
                        }
                        bytes.push(out_b);
                        bytes.push(in_b);
                    }
                    bytes
                })
                .min()
                .unwrap();
            assert_eq!(code(p).as_bytes(), brute.as_slice());
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(Poset::antichain(4).automorphisms().unwrap().len(), 24);
        assert_eq!(Poset::chain(4).automorphisms().unwrap().len(), 1);
        let fork = Poset::singleton().ordinal_sum(&Poset::antichain(2));
        assert_eq!(fork.automorphisms().unwrap().len(), 2);
        let square = Poset::antichain(2)
            .ordinal_sum(&Poset::antichain(2))
            .comparability_graph();
        assert_eq!(square.automorphisms().unwrap().len(), 8);
    }

    #[test]
    fn canonicalization_size_guard() {
        assert!(matches!(
            Poset::antichain(9).canonical_code(),
            Err(Error::Size { .. })
        ));
    }
}
