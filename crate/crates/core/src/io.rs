//! Text and JSON input formats for posets and poset pairs.
//!
//! The line format is hand-writable:
//!
//! ```text
//! # optional comments
//! d = 3
//! 3 < 1
//! 3 < 2
//! ```
//!
//! A pair file holds two such records separated by a blank line. Relation
//! lines may list covers or the full relation; the parser closes
//! transitively and validates either way. Files starting with `{` are parsed
//! as JSON instead: `{"P": {"d": 3, "covers": [[3,1],[3,2]]}, "Q": {...}}`.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::poset::Poset;

#[derive(Deserialize)]
struct PosetRecord {
    d: usize,
    #[serde(default)]
    covers: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct PairRecord {
    #[serde(rename = "P")]
    p: PosetRecord,
    #[serde(rename = "Q")]
    q: PosetRecord,
}

/// Parse a single poset from the line format or a JSON object.
pub fn parse_poset(input: &str) -> Result<Poset> {
    if input.trim_start().starts_with('{') {
        let rec: PosetRecord = serde_json::from_str(input).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        return Poset::from_covers(rec.d, &rec.covers);
    }
    let mut records = parse_text_records(input)?;
    match records.len() {
        1 => Ok(records.pop().unwrap()),
        n => Err(Error::Parse {
            line: 1,
            msg: format!("expected exactly one poset record, found {n}"),
        }),
    }
}

/// Parse a pair file (the poset `P` followed by `Q`).
pub fn parse_pair(input: &str) -> Result<(Poset, Poset)> {
    let (p, q) = if input.trim_start().starts_with('{') {
        let rec: PairRecord = serde_json::from_str(input).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        (
            Poset::from_covers(rec.p.d, &rec.p.covers)?,
            Poset::from_covers(rec.q.d, &rec.q.covers)?,
        )
    } else {
        let mut records = parse_text_records(input)?;
        if records.len() != 2 {
            return Err(Error::Parse {
                line: 1,
                msg: format!(
                    "expected two poset records (P then Q), found {}",
                    records.len()
                ),
            });
        }
        let q = records.pop().unwrap();
        let p = records.pop().unwrap();
        (p, q)
    };
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok((p, q))
}

fn parse_text_records(input: &str) -> Result<Vec<Poset>> {
    struct Partial {
        d: usize,
        covers: Vec<(usize, usize)>,
    }
    let mut records = Vec::new();
    let mut current: Option<Partial> = None;
    for (lineno, raw) in input.lines().enumerate() {
        let lineno = lineno + 1;
        let line = match raw.find('#') {
            Some(pos) => raw[..pos].trim(),
            None => raw.trim(),
        };
        if line.is_empty() {
            if let Some(partial) = current.take() {
                records.push(Poset::from_covers(partial.d, &partial.covers)?);
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("d") {
            let rest = rest.trim_start();
            if let Some(value) = rest.strip_prefix('=') {
                if current.is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "field `d` repeated inside a record (missing blank line?)".into(),
                    });
                }
                let d: usize = value.trim().parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("field `d`: expected an integer, got `{}`", value.trim()),
                })?;
                current = Some(Partial {
                    d,
                    covers: Vec::new(),
                });
                continue;
            }
        }
        if let Some((lhs, rhs)) = line.split_once('<') {
            let parse_idx = |s: &str, side: &str| -> Result<usize> {
                s.trim().parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!(
                        "field `covers` ({side} side): expected an index, got `{}`",
                        s.trim()
                    ),
                })
            };
            let i = parse_idx(lhs, "left")?;
            let j = parse_idx(rhs, "right")?;
            match current.as_mut() {
                Some(partial) => partial.covers.push((i, j)),
                None => {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "cover line before the `d = <n>` header".into(),
                    })
                }
            }
            continue;
        }
        return Err(Error::Parse {
            line: lineno,
            msg: format!("expected `d = <n>` or `i < j`, got `{line}`"),
        });
    }
    if let Some(partial) = current.take() {
        records.push(Poset::from_covers(partial.d, &partial.covers)?);
    }
    Ok(records)
}

/// Render a poset in the line format (cover relations only).
pub fn poset_text(p: &Poset) -> String {
    let mut s = format!("d = {}\n", p.len());
    for (i, j) in p.covers() {
        s.push_str(&format!("{i} < {j}\n"));
    }
    s
}

/// Render a pair file.
pub fn pair_text(p: &Poset, q: &Poset) -> String {
    format!("{}\n{}", poset_text(p), poset_text(q))
}
