//! JSON formats for family systems and covers.
//!
//! Canonical form: compact, fields in schema order, every set ascending,
//! one trailing newline. Parsing accepts unsorted sets and canonicalizes them.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::covering::{PartiteBlock, PartiteCover};
use crate::error::{Error, Result};
use crate::family::FamilySystem;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    n: usize,
    k: usize,
    m: usize,
    t: usize,
    families: Vec<Vec<Vec<usize>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCover {
    k: usize,
    t: usize,
    n: usize,
    blocks: Vec<RawBlock>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBlock {
    parts: Vec<Vec<usize>>,
}

/// A family system together with the `t` it is meant to be checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFile {
    pub system: FamilySystem,
    pub t: usize,
}

fn schema(msg: String) -> Error {
    Error::Schema(msg)
}

pub fn parse_system(text: &str) -> Result<SystemFile> {
    let raw: RawSystem = serde_json::from_str(text)?;
    if raw.k < 2 {
        return Err(schema(format!("field `k`: need k >= 2, got {}", raw.k)));
    }
    if raw.n < 1 {
        return Err(schema("field `n`: need n >= 1".into()));
    }
    if raw.m < 1 {
        return Err(schema("field `m`: need m >= 1".into()));
    }
    if !(2..=raw.k).contains(&raw.t) {
        return Err(schema(format!("field `t`: need 2 <= t <= k = {}, got {}", raw.k, raw.t)));
    }
    if raw.families.len() != raw.k {
        return Err(schema(format!("field `families`: {} families listed, k = {}", raw.families.len(), raw.k)));
    }
    if let Some((j, f)) = raw.families.iter().enumerate().find(|(_, f)| f.len() != raw.m) {
        return Err(schema(format!("field `families[{j}]`: {} sets listed, m = {}", f.len(), raw.m)));
    }
    let system = FamilySystem::from_elements(raw.n, &raw.families)?;
    Ok(SystemFile { system, t: raw.t })
}

pub fn emit_system(system: &FamilySystem, t: usize) -> String {
    let raw = RawSystem {
        n: system.n(),
        k: system.k(),
        m: system.m(),
        t,
        families: system.to_elements(),
    };
    let mut s = serde_json::to_string(&raw).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn parse_cover(text: &str) -> Result<PartiteCover> {
    let raw: RawCover = serde_json::from_str(text)?;
    if raw.k < 2 {
        return Err(schema(format!("field `k`: need k >= 2, got {}", raw.k)));
    }
    if !(2..=raw.k).contains(&raw.t) {
        return Err(schema(format!("field `t`: need 2 <= t <= k = {}, got {}", raw.k, raw.t)));
    }
    if raw.n < 1 {
        return Err(schema("field `n`: need n >= 1".into()));
    }
    let mut blocks = Vec::with_capacity(raw.blocks.len());
    for (r, block) in raw.blocks.iter().enumerate() {
        if block.parts.len() != raw.k {
            return Err(schema(format!("field `blocks[{r}].parts`: {} parts, k = {}", block.parts.len(), raw.k)));
        }
        let mut parts = Vec::with_capacity(raw.k);
        for (j, part) in block.parts.iter().enumerate() {
            if part.is_empty() {
                return Err(schema(format!("field `blocks[{r}].parts[{j}]`: parts must be nonempty")));
            }
            let mut set = BitSet::new(raw.n);
            for &e in part {
                if e >= raw.n {
                    return Err(schema(format!(
                        "field `blocks[{r}].parts[{j}]`: element {e} is outside [0, {})",
                        raw.n
                    )));
                }
                if set.contains(e) {
                    return Err(schema(format!("field `blocks[{r}].parts[{j}]`: element {e} listed twice")));
                }
                set.insert(e);
            }
            parts.push(set);
        }
        blocks.push(PartiteBlock::new(parts)?);
    }
    PartiteCover::new(raw.k, raw.t, raw.n, blocks)
}

pub fn emit_cover(cover: &PartiteCover) -> String {
    let raw = RawCover {
        k: cover.k(),
        t: cover.t(),
        n: cover.n(),
        blocks: cover
            .blocks()
            .iter()
            .map(|b| RawBlock { parts: b.parts().iter().map(BitSet::to_vec).collect() })
            .collect(),
    };
    let mut s = serde_json::to_string(&raw).expect("plain data serializes");
    s.push('\n');
    s
}
