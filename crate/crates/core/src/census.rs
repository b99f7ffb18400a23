//! Exhaustive generation of posets and comparability graphs up to
//! isomorphism, and exhaustive verification of the facet bound at small d.
//!
//! The pair iteration quotients exactly as much symmetry as is safe: the
//! first poset ranges over comparability-graph classes (the polytope of one
//! side depends only on that graph), while the second ranges over *all*
//! labeled posets, reduced only by the automorphism group of the first
//! side's graph acting on labelings. Relabeling the second poset alone can
//! change the facet count, so it is never quotiented by its own
//! isomorphisms.
//!
//! Posets are enumerated through their naturally labeled representatives
//! (relations compatible with the index order, built by choosing a
//! downward-closed lower set for each new element), then deduplicated by
//! canonical code.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::pair_text;
use crate::poset::{CanonicalCode, Poset};
use crate::twinned::{bound, facet_count_tables, stacked_antichain_pairs, CliqueTable};

pub mod tables;

/// Exhaustive class enumeration is guaranteed up to this size.
pub const MAX_ENUM: usize = 7;
/// Comparability-graph counting reaches one step further (the long flag).
pub const MAX_GRAPH_COUNT: usize = 8;
/// Theorem verification: default cap and the extended (flagged) cap.
pub const MAX_CENSUS: usize = 5;
pub const MAX_CENSUS_EXTENDED: usize = 6;

// ---------------------------------------------------------------------------
// Packed posets: d <= 8, one byte per element holding its strict up-set.
// ---------------------------------------------------------------------------

pub(crate) fn packed_key(rows: &[u8; 8]) -> u64 {
    u64::from_le_bytes(*rows)
}

fn packed_rows(key: u64) -> [u8; 8] {
    key.to_le_bytes()
}

fn packed_to_poset(key: u64, d: usize) -> Poset {
    let rows = packed_rows(key);
    Poset::from_closed_rows(d, rows[..d].iter().map(|&r| r as u64).collect())
}

fn poset_to_packed(p: &Poset) -> u64 {
    debug_assert!(p.len() <= 8);
    let mut rows = [0u8; 8];
    for i in 0..p.len() {
        rows[i] = p.above_mask(i) as u8;
    }
    packed_key(&rows)
}

/// Relabel a packed poset by a 0-based image permutation.
fn relabel_key(key: u64, d: usize, perm: &[usize]) -> u64 {
    let rows = packed_rows(key);
    let mut out = [0u8; 8];
    for (i, &row) in rows.iter().enumerate().take(d) {
        let mut m = row;
        while m != 0 {
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            out[perm[i]] |= 1 << perm[j];
        }
    }
    packed_key(&out)
}

/// Comparability adjacency masks (and their packed key) of a packed poset.
fn graph_of_key(key: u64, d: usize) -> ([u64; 8], u64) {
    let rows = packed_rows(key);
    let mut adj = [0u64; 8];
    for i in 0..d {
        let mut m = rows[i];
        while m != 0 {
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    let mut gkey = [0u8; 8];
    for i in 0..d {
        gkey[i] = adj[i] as u8;
    }
    (adj, packed_key(&gkey))
}

/// Stream every naturally labeled poset on `[d]`: element k picks a
/// downward-closed lower set among `{1, ..., k-1}`.
fn for_each_natural_poset(d: usize, f: &mut impl FnMut(u64)) {
    fn rec(k: usize, d: usize, above: &mut [u8; 8], below: &mut [u8; 8], f: &mut impl FnMut(u64)) {
        if k == d {
            f(packed_key(above));
            return;
        }
        'sets: for dset in 0u16..(1 << k) {
            let dset = dset as u8;
            let mut m = dset;
            while m != 0 {
                let j = m.trailing_zeros() as usize;
                m &= m - 1;
                if below[j] & !dset != 0 {
                    continue 'sets; // not downward closed
                }
            }
            below[k] = dset;
            let mut m = dset;
            while m != 0 {
                let j = m.trailing_zeros() as usize;
                m &= m - 1;
                above[j] |= 1 << k;
            }
            rec(k + 1, d, above, below, f);
            let mut m = dset;
            while m != 0 {
                let j = m.trailing_zeros() as usize;
                m &= m - 1;
                above[j] &= !(1 << k);
            }
            below[k] = 0;
        }
    }
    let mut above = [0u8; 8];
    let mut below = [0u8; 8];
    rec(0, d, &mut above, &mut below, f);
}

/// One representative per order-isomorphism class, sorted by canonical code.
pub fn enumerate_posets(d: usize) -> Result<Vec<Poset>> {
    if d == 0 || d > MAX_ENUM {
        return Err(Error::Size {
            what: "poset class enumeration",
            d,
            min: 1,
            max: MAX_ENUM,
        });
    }
    let mut classes: HashMap<CanonicalCode, u64> = HashMap::new();
    let mut err = None;
    for_each_natural_poset(d, &mut |key| {
        if err.is_some() {
            return;
        }
        let p = packed_to_poset(key, d);
        match p.canonical_code() {
            Ok(code) => {
                let entry = classes.entry(code).or_insert(key);
                if key < *entry {
                    *entry = key;
                }
            }
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let mut items: Vec<(CanonicalCode, u64)> = classes.into_iter().collect();
    items.sort();
    Ok(items
        .into_iter()
        .map(|(_, key)| packed_to_poset(key, d))
        .collect())
}

/// The number of comparability-graph isomorphism classes on `d` vertices,
/// together with the number of unordered pairs with repetition,
/// `g * (g + 1) / 2`.
pub fn count_comparability_graphs(d: usize) -> Result<(u64, u64)> {
    if !(2..=MAX_GRAPH_COUNT).contains(&d) {
        return Err(Error::Size {
            what: "comparability graph count",
            d,
            min: 2,
            max: MAX_GRAPH_COUNT,
        });
    }
    // Natural labelings are in bijection with the labeled comparability
    // graphs they induce (each edge's orientation is forced), so the keys
    // are already deduplicated.
    let mut labeled: Vec<u64> = Vec::new();
    for_each_natural_poset(d, &mut |key| {
        labeled.push(graph_of_key(key, d).1);
    });
    let codes: HashSet<[u8; 17]> = labeled
        .into_par_iter()
        .map(|gkey| {
            let rows = packed_rows(gkey);
            let adj: Vec<u64> = rows[..d].iter().map(|&r| r as u64).collect();
            crate::poset::fast_graph_key(&adj, d)
        })
        .collect();
    let g = codes.len() as u64;
    Ok((g, g * (g + 1) / 2))
}

// ---------------------------------------------------------------------------
// The theorem census.
// ---------------------------------------------------------------------------

/// One verified pair. `q_relabel_id` is the lexicographic rank of the
/// permutation applied to the canonical representative of `q_code`'s class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub d: usize,
    pub p_code: String,
    pub q_code: String,
    pub q_relabel_id: u32,
    pub n_facets: u64,
    pub bound: String,
    pub is_max: bool,
    pub equality: bool,
}

/// Outcome of the even-d equality cross-check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityCheck {
    /// Pairs attaining the bound.
    pub attainers: u64,
    /// Pairs where "attains the bound" and "is an equality case" disagree.
    pub mismatches: u64,
    pub consistent: bool,
}

#[derive(Clone, Debug)]
pub struct CensusSummary {
    pub d: usize,
    pub graph_classes: usize,
    pub pairs: u64,
    pub max: u64,
    pub bound: String,
    pub maxima: Vec<CensusRecord>,
    /// `Some` exactly when d is even.
    pub equality: Option<EqualityCheck>,
    /// Where the merged record stream was written, if persistence was on.
    pub records_path: Option<PathBuf>,
}

#[derive(Clone, Debug, Default)]
pub struct CensusOptions {
    /// Allow d = 6 (minutes of work and a large record stream).
    pub extended: bool,
    /// Worker cap; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Persist shard and merged record streams here.
    pub out_dir: Option<PathBuf>,
    /// Reuse completed shards found in `out_dir`.
    pub resume: bool,
}

#[derive(Serialize, Deserialize)]
struct Manifest {
    d: usize,
    shards: usize,
    completed: Vec<usize>,
}

struct PClass {
    graph_code: CanonicalCode,
    rep_key: u64,
    adj: Vec<u64>,
    /// 0-based automorphism images of the comparability graph.
    auts: Vec<Vec<usize>>,
    is_stack: bool,
}

struct QCand {
    key: u64,
    class_idx: u32,
    rank: u32,
}

struct QClasses {
    cands: Vec<QCand>,
    codes: Vec<CanonicalCode>,
    is_stack: Vec<bool>,
}

fn lex_permutations(d: usize) -> Vec<Vec<usize>> {
    // 0-based images, lexicographic over the image tuples
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..d {
        let mut next = Vec::new();
        for p in &out {
            for v in 0..d {
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

/// All labeled posets on `[d]`, enumerated as class representative x
/// permutation with stabilizer duplicates removed (keeping the smallest
/// permutation rank).
fn labeled_posets(d: usize) -> Result<QClasses> {
    let class_reps = enumerate_posets(d)?;
    let stack_code = if d.is_multiple_of(2) {
        Some(stacked_antichain_pairs(d / 2).canonical_code()?)
    } else {
        None
    };
    let mut codes = Vec::with_capacity(class_reps.len());
    let mut is_stack = Vec::with_capacity(class_reps.len());
    for rep in &class_reps {
        let code = rep.canonical_code()?;
        is_stack.push(stack_code.as_ref() == Some(&code));
        codes.push(code);
    }
    let perms = lex_permutations(d);
    let mut seen: HashSet<u64> = HashSet::new();
    let mut cands = Vec::new();
    for (ci, rep) in class_reps.iter().enumerate() {
        let rep_key = poset_to_packed(rep);
        for (rank, perm) in perms.iter().enumerate() {
            let key = relabel_key(rep_key, d, perm);
            if seen.insert(key) {
                cands.push(QCand {
                    key,
                    class_idx: ci as u32,
                    rank: rank as u32,
                });
            }
        }
    }
    Ok(QClasses {
        cands,
        codes,
        is_stack,
    })
}

/// Group the poset classes by comparability graph and pick one fixed-label
/// poset representative per graph class, sorted by graph code.
fn graph_classes(d: usize) -> Result<Vec<PClass>> {
    let class_reps = enumerate_posets(d)?;
    let stack_code = if d.is_multiple_of(2) {
        Some(stacked_antichain_pairs(d / 2).canonical_code()?)
    } else {
        None
    };
    let mut by_graph: HashMap<CanonicalCode, u64> = HashMap::new();
    for rep in &class_reps {
        let gcode = rep.comparability_graph().canonical_code()?;
        let key = poset_to_packed(rep);
        let entry = by_graph.entry(gcode).or_insert(key);
        if key < *entry {
            *entry = key;
        }
    }
    let mut items: Vec<(CanonicalCode, u64)> = by_graph.into_iter().collect();
    items.sort_by(|a, b| a.0.cmp(&b.0));
    items
        .into_iter()
        .map(|(gcode, rep_key)| {
            // the equality flag is the predicate on the representative itself
            let is_stack =
                stack_code.as_ref() == Some(&packed_to_poset(rep_key, d).canonical_code()?);
            let (adj8, _) = graph_of_key(rep_key, d);
            let adj = adj8[..d].to_vec();
            let graph = crate::poset::Graph::from_adj(d, adj.clone());
            let auts = graph
                .automorphisms()?
                .into_iter()
                .map(|perm| perm.into_iter().map(|v| v - 1).collect())
                .collect();
            Ok(PClass {
                graph_code: gcode,
                rep_key,
                adj,
                auts,
                is_stack,
            })
        })
        .collect()
}

struct ShardOut {
    pairs: u64,
    max: u64,
    maxima: Vec<CensusRecord>,
    attainers: u64,
    eq_mismatches: u64,
}

fn process_p_class(
    d: usize,
    pc: &PClass,
    qs: &QClasses,
    bound_int: u64,
    bound_str: &str,
    mut sink: Option<&mut dyn Write>,
) -> Result<ShardOut> {
    let p_table = CliqueTable::build(&pc.adj, d);
    let (_, p_graph_key) = graph_of_key(pc.rep_key, d);
    let p_hex = pc.graph_code.to_hex();
    let mut scratch: Vec<u128> = Vec::new();
    let mut out = ShardOut {
        pairs: 0,
        max: 0,
        maxima: Vec::new(),
        attainers: 0,
        eq_mismatches: 0,
    };
    'cands: for cand in &qs.cands {
        // keep only the minimal labeling in the Aut(G_P)-orbit
        for aut in &pc.auts {
            if relabel_key(cand.key, d, aut) < cand.key {
                continue 'cands;
            }
        }
        let (q_adj8, q_graph_key) = graph_of_key(cand.key, d);
        let q_table = CliqueTable::build(&q_adj8[..d], d);
        let n = facet_count_tables(&p_table, &q_table, &mut scratch);
        if n > bound_int {
            return Err(Error::BoundViolation {
                d,
                count: n,
                bound: bound_str.to_string(),
                pair_dump: pair_text(
                    &packed_to_poset(pc.rep_key, d),
                    &packed_to_poset(cand.key, d),
                ),
            });
        }
        let equality = d.is_multiple_of(2)
            && pc.is_stack
            && qs.is_stack[cand.class_idx as usize]
            && p_graph_key == q_graph_key;
        if d.is_multiple_of(2) {
            let attains = n == bound_int;
            if attains {
                out.attainers += 1;
            }
            if attains != equality {
                out.eq_mismatches += 1;
            }
        }
        let record = CensusRecord {
            d,
            p_code: p_hex.clone(),
            q_code: qs.codes[cand.class_idx as usize].to_hex(),
            q_relabel_id: cand.rank,
            n_facets: n,
            bound: bound_str.to_string(),
            is_max: false, // settled at merge time
            equality,
        };
        match n.cmp(&out.max) {
            std::cmp::Ordering::Greater => {
                out.max = n;
                out.maxima.clear();
                out.maxima.push(record.clone());
            }
            std::cmp::Ordering::Equal => out.maxima.push(record.clone()),
            std::cmp::Ordering::Less => {}
        }
        out.pairs += 1;
        if let Some(w) = sink.as_deref_mut() {
            serde_json::to_writer(&mut *w, &record).map_err(std::io::Error::from)?;
            w.write_all(b"\n")?;
        }
    }
    Ok(out)
}

fn shard_path(dir: &Path, shard: usize) -> PathBuf {
    dir.join(format!("records-shard-{shard:03}.jsonl"))
}

fn load_shard(d: usize, dir: &Path, shard: usize, bound_int: u64) -> Result<ShardOut> {
    let file = fs::File::open(shard_path(dir, shard))?;
    let mut out = ShardOut {
        pairs: 0,
        max: 0,
        maxima: Vec::new(),
        attainers: 0,
        eq_mismatches: 0,
    };
    for line in BufReader::new(file).lines() {
        let record: CensusRecord = serde_json::from_str(&line?).map_err(|e| Error::Parse {
            line: 0,
            msg: format!("bad census record in shard {shard}: {e}"),
        })?;
        if record.d != d {
            return Err(Error::Parse {
                line: 0,
                msg: format!("shard {shard} holds records for d = {}", record.d),
            });
        }
        let n = record.n_facets;
        if d.is_multiple_of(2) {
            let attains = n == bound_int;
            if attains {
                out.attainers += 1;
            }
            if attains != record.equality {
                out.eq_mismatches += 1;
            }
        }
        match n.cmp(&out.max) {
            std::cmp::Ordering::Greater => {
                out.max = n;
                out.maxima.clear();
                out.maxima.push(record);
            }
            std::cmp::Ordering::Equal => out.maxima.push(record),
            std::cmp::Ordering::Less => {}
        }
        out.pairs += 1;
    }
    Ok(out)
}

fn run_in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Exhaustively verify the facet bound at dimension `d`: iterate every
/// graph-class representative against every labeled second poset (modulo the
/// first side's graph automorphisms), abort on any bound violation, track
/// the maxima, and for even d cross-check attainment against the equality
/// characterization pair by pair.
pub fn verify_theorem(d: usize, opts: &CensusOptions) -> Result<CensusSummary> {
    let cap = if opts.extended {
        MAX_CENSUS_EXTENDED
    } else {
        MAX_CENSUS
    };
    if d < 2 || d > cap {
        return Err(Error::Size {
            what: "theorem census",
            d,
            min: 2,
            max: cap,
        });
    }
    let bound_value = bound(d);
    debug_assert!(bound_value.is_integer());
    let bound_str = bound_value.to_string();
    let bound_int: u64 = bound_str.parse().expect("integer bound for d >= 2");

    let p_classes = graph_classes(d)?;
    let qs = labeled_posets(d)?;
    let shards = p_classes.len();

    let mut completed: HashSet<usize> = HashSet::new();
    if let Some(dir) = &opts.out_dir {
        fs::create_dir_all(dir)?;
        let manifest_path = dir.join("manifest.json");
        if opts.resume && manifest_path.exists() {
            let manifest: Manifest = serde_json::from_str(&fs::read_to_string(&manifest_path)?)
                .map_err(|e| Error::Parse {
                    line: 0,
                    msg: format!("bad manifest: {e}"),
                })?;
            if manifest.d == d && manifest.shards == shards {
                completed = manifest.completed.into_iter().collect();
                completed.retain(|&s| shard_path(dir, s).exists());
            }
        }
    }

    let manifest_lock = Mutex::new(completed.iter().copied().collect::<Vec<usize>>());
    let shard_results: Result<Vec<ShardOut>> = run_in_pool(opts.jobs, || {
        (0..shards)
            .into_par_iter()
            .map(|s| {
                if completed.contains(&s) {
                    return load_shard(d, opts.out_dir.as_deref().unwrap(), s, bound_int);
                }
                let out = match &opts.out_dir {
                    Some(dir) => {
                        let tmp = dir.join(format!("records-shard-{s:03}.tmp"));
                        let mut file = std::io::BufWriter::new(fs::File::create(&tmp)?);
                        let out = process_p_class(
                            d,
                            &p_classes[s],
                            &qs,
                            bound_int,
                            &bound_str,
                            Some(&mut file),
                        )?;
                        file.flush()?;
                        drop(file);
                        fs::rename(&tmp, shard_path(dir, s))?;
                        let mut done = manifest_lock.lock().unwrap();
                        done.push(s);
                        done.sort_unstable();
                        let manifest = Manifest {
                            d,
                            shards,
                            completed: done.clone(),
                        };
                        fs::write(
                            dir.join("manifest.json"),
                            serde_json::to_string_pretty(&manifest)
                                .map_err(std::io::Error::from)?,
                        )?;
                        out
                    }
                    None => process_p_class(d, &p_classes[s], &qs, bound_int, &bound_str, None)?,
                };
                Ok(out)
            })
            .collect()
    });
    let shard_results = shard_results?;

    let pairs: u64 = shard_results.iter().map(|s| s.pairs).sum();
    let max = shard_results.iter().map(|s| s.max).max().unwrap_or(0);
    let mut maxima: Vec<CensusRecord> = shard_results
        .iter()
        .flat_map(|s| s.maxima.iter().filter(|r| r.n_facets == max).cloned())
        .map(|mut r| {
            r.is_max = true;
            r
        })
        .collect();
    maxima.sort_by(|a, b| {
        (&a.p_code, &a.q_code, a.q_relabel_id).cmp(&(&b.p_code, &b.q_code, b.q_relabel_id))
    });

    let equality = if d.is_multiple_of(2) {
        let attainers: u64 = shard_results.iter().map(|s| s.attainers).sum();
        let mismatches: u64 = shard_results.iter().map(|s| s.eq_mismatches).sum();
        Some(EqualityCheck {
            attainers,
            mismatches,
            consistent: mismatches == 0,
        })
    } else {
        None
    };

    let records_path = match &opts.out_dir {
        Some(dir) => Some(merge_shards(dir, shards, max)?),
        None => None,
    };

    Ok(CensusSummary {
        d,
        graph_classes: shards,
        pairs,
        max,
        bound: bound_str,
        maxima,
        equality,
        records_path,
    })
}

/// Concatenate the shard streams in shard order (which is `(p_code,
/// q_class, q_relabel_id)` order by construction), settling `is_max`.
fn merge_shards(dir: &Path, shards: usize, max: u64) -> Result<PathBuf> {
    let path = dir.join("records.jsonl");
    let tmp = dir.join("records.jsonl.tmp");
    let mut out = std::io::BufWriter::new(fs::File::create(&tmp)?);
    for s in 0..shards {
        let file = fs::File::open(shard_path(dir, s))?;
        for line in BufReader::new(file).lines() {
            let mut record: CensusRecord =
                serde_json::from_str(&line?).map_err(|e| Error::Parse {
                    line: 0,
                    msg: format!("bad census record in shard {s}: {e}"),
                })?;
            record.is_max = record.n_facets == max;
            serde_json::to_writer(&mut out, &record).map_err(std::io::Error::from)?;
            out.write_all(b"\n")?;
        }
    }
    out.flush()?;
    drop(out);
    fs::rename(&tmp, &path)?;
    Ok(path)
}
