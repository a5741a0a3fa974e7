//! Text syntax for bundles and named bundle sets.
//!
//! A bundle literal is `gr(3,5) u=[2,2,1] q=[0,0] mult=1` on a Grassmannian
//! or `fl(2,3;5) b1=[1,0] b2=[0] b3=[0,0] mult=1` on a flag variety; `mult`
//! defaults to 1.
//!
//! A bundle-set file holds any number of blocks of the form
//!
//! ```text
//! set tangent gr(2,5)
//!   u=[1,0] q=[0,0,-1] mult=1
//! end
//! ```
//!
//! Blank lines and `#` comments are ignored when reading. [`format_sets`]
//! writes the canonical form, which [`parse_sets`] reads back unchanged.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::homog::{BundleSum, FlagVariety, HomogeneousBundle};
use crate::partitions::IntegerWeight;

/// A named direct sum of bundles as read from a bundle-set file. Entries keep
/// their file order, which matters for exceptional collections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleSet {
    pub name: String,
    pub space: FlagVariety,
    pub entries: Vec<HomogeneousBundle>,
}

impl BundleSet {
    pub fn to_sum(&self) -> BundleSum {
        BundleSum::from_bundles(&self.space, &self.entries).expect("entries share the set's space")
    }
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parses `gr(k,n)` or `fl(d1,...;n)`.
pub fn parse_space(s: &str) -> Result<FlagVariety> {
    let s = s.trim();
    let (kind, rest) = s.split_at(s.find('(').ok_or_else(|| parse_err(format!("expected a space, got {s:?}")))?);
    let inner = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| parse_err(format!("unbalanced parentheses in {s:?}")))?;
    let ints = |t: &str| -> Result<Vec<usize>> {
        t.split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| parse_err(format!("bad integer {x:?} in {s:?}"))))
            .collect()
    };
    match kind.trim() {
        "gr" => {
            let v = ints(inner)?;
            if v.len() != 2 {
                return Err(parse_err(format!("gr takes two arguments: {s:?}")));
            }
            FlagVariety::grassmannian(v[0], v[1])
        }
        "fl" => {
            let (dims, n) = inner.split_once(';').ok_or_else(|| parse_err(format!("fl needs `;` before n: {s:?}")))?;
            let n = ints(n)?;
            if n.len() != 1 {
                return Err(parse_err(format!("bad ambient dimension in {s:?}")));
            }
            FlagVariety::new(ints(dims)?, n[0])
        }
        other => Err(parse_err(format!("unknown space kind {other:?}"))),
    }
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| parse_err(format!("expected [..], got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| parse_err(format!("bad integer {x:?}"))))
        .collect()
}

/// Splits on whitespace that is not inside brackets or parentheses.
fn tokens(s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(parse_err(format!("unbalanced brackets in {s:?}")));
        }
        if c.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else if !c.is_whitespace() {
            cur.push(c);
        }
    }
    if depth != 0 {
        return Err(parse_err(format!("unbalanced brackets in {s:?}")));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn block_keys(space: &FlagVariety) -> Vec<String> {
    if space.is_grassmannian() {
        vec!["u".into(), "q".into()]
    } else {
        (1..=space.block_sizes().len()).map(|i| format!("b{i}")).collect()
    }
}

/// Parses the block assignments of a bundle on a known space.
pub fn parse_entry(space: &FlagVariety, s: &str) -> Result<HomogeneousBundle> {
    let keys = block_keys(space);
    let mut blocks: Vec<Option<IntegerWeight>> = vec![None; keys.len()];
    let mut mult = BigUint::one();
    for tok in tokens(s)? {
        let (k, v) = tok.split_once('=').ok_or_else(|| parse_err(format!("expected key=value, got {tok:?}")))?;
        if k == "mult" {
            mult = v.parse::<BigUint>().map_err(|_| parse_err(format!("bad multiplicity {v:?}")))?;
            continue;
        }
        let i = keys.iter().position(|x| x == k).ok_or_else(|| parse_err(format!("unknown key {k:?} for {space}")))?;
        if blocks[i].is_some() {
            return Err(parse_err(format!("key {k:?} given twice")));
        }
        blocks[i] = Some(IntegerWeight::new(parse_list(v)?)?);
    }
    let sizes = space.block_sizes();
    let blocks = blocks
        .into_iter()
        .zip(&sizes)
        .map(|(b, &n)| b.unwrap_or_else(|| IntegerWeight::zero(n)))
        .collect();
    HomogeneousBundle::new(space.clone(), blocks, mult)
}

/// Parses a full bundle literal, space included. Missing blocks are zero.
pub fn parse_bundle(s: &str) -> Result<HomogeneousBundle> {
    let s = s.trim();
    let close = s.find(')').ok_or_else(|| parse_err(format!("expected a space in {s:?}")))?;
    let space = parse_space(&s[..=close])?;
    parse_entry(&space, &s[close + 1..])
}

fn format_list(w: &IntegerWeight) -> String {
    let parts: Vec<String> = w.entries().iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Block assignments without the space, e.g. `u=[1,0] q=[0,0,0] mult=1`.
pub fn format_entry(b: &HomogeneousBundle) -> String {
    let keys = block_keys(b.space());
    let mut out = String::new();
    for (k, w) in keys.iter().zip(b.blocks()) {
        let _ = write!(out, "{k}={} ", format_list(w));
    }
    let _ = write!(out, "mult={}", b.mult());
    out
}

pub fn format_bundle(b: &HomogeneousBundle) -> String {
    format!("{} {}", b.space(), format_entry(b))
}

pub fn parse_sets(text: &str) -> Result<Vec<BundleSet>> {
    let mut out = Vec::new();
    let mut current: Option<BundleSet> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |e: Error| parse_err(format!("line {}: {e}", lineno + 1));
        if let Some(rest) = line.strip_prefix("set ") {
            if current.is_some() {
                return Err(at(parse_err("`set` inside an open set")));
            }
            let rest = rest.trim();
            let (name, space) = rest.split_once(char::is_whitespace).ok_or_else(|| at(parse_err("expected `set NAME SPACE`")))?;
            let space = parse_space(space).map_err(at)?;
            current = Some(BundleSet { name: name.to_string(), space, entries: Vec::new() });
        } else if line == "end" {
            let set = current.take().ok_or_else(|| at(parse_err("`end` without `set`")))?;
            out.push(set);
        } else {
            let set = current.as_mut().ok_or_else(|| at(parse_err("entry outside a set")))?;
            set.entries.push(parse_entry(&set.space, line).map_err(at)?);
        }
    }
    if let Some(set) = current {
        return Err(parse_err(format!("set {:?} is missing `end`", set.name)));
    }
    Ok(out)
}

pub fn format_sets(sets: &[BundleSet]) -> String {
    let mut out = String::new();
    for (i, set) in sets.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "set {} {}", set.name, set.space);
        for e in &set.entries {
            let _ = writeln!(out, "  {}", format_entry(e));
        }
        out.push_str("end\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundle_literals() {
        let b = parse_bundle("gr(3,5) u=[2,2,1] q=[0,0] mult=1").unwrap();
        assert_eq!(b, HomogeneousBundle::from_blocks(&FlagVariety::gr35(), &[&[2, 2, 1], &[0, 0]]).unwrap());
        assert_eq!(format_bundle(&b), "gr(3,5) u=[2,2,1] q=[0,0] mult=1");
        let b = parse_bundle("gr(2,5) u=[0, 0] q=[3,3,3]").unwrap();
        assert_eq!(format_bundle(&b), "gr(2,5) u=[0,0] q=[3,3,3] mult=1");
        let f = parse_bundle("fl(2,3;5) b1=[2,2] b2=[1] b3=[0,0] mult=4").unwrap();
        assert_eq!(f.space(), &FlagVariety::fl235());
        assert_eq!(format_bundle(&f), "fl(2,3;5) b1=[2,2] b2=[1] b3=[0,0] mult=4");
        assert_eq!(parse_bundle("gr(3,5) q=[1,0]").unwrap().blocks()[0], IntegerWeight::zero(3));
    }

    #[test]
    fn bad_literals() {
        assert!(parse_bundle("gr(3,5) u=[0,1,0]").is_err());
        assert!(parse_bundle("gr(3,5) u=[1,0]").is_err());
        assert!(parse_bundle("gr(3,5) x=[1,0]").is_err());
        assert!(parse_bundle("gr(3,5) u=[1,0,0] u=[0,0,0]").is_err());
        assert!(parse_bundle("gr(3,5) u=[1,0,0] mult=0").is_err());
        assert!(parse_bundle("pp(3,5)").is_err());
        assert!(parse_bundle("gr(3,5 u=[1,0,0]").is_err());
    }

    #[test]
    fn set_file_round_trip() {
        let text = "set pair gr(2,5)\n  u=[1,0] q=[0,0,0] mult=1\n  u=[0,0] q=[5,5,5] mult=2\nend\n\nset one gr(3,5)\n  u=[0,0,0] q=[0,0] mult=1\nend\n";
        let sets = parse_sets(text).unwrap();
        assert_eq!(sets.len(), 2);
        assert_eq!(sets[0].entries.len(), 2);
        assert_eq!(format_sets(&sets), text);
        let messy = "# comment\nset one gr(3,5)   \n\n    u=[0, 0, 0]  # trailing\nend";
        assert_eq!(format_sets(&parse_sets(messy).unwrap()), "set one gr(3,5)\n  u=[0,0,0] q=[0,0] mult=1\nend\n");
    }

    #[test]
    fn set_file_errors() {
        assert!(parse_sets("set a gr(2,5)\n").is_err());
        assert!(parse_sets("u=[0,0]\n").is_err());
        assert!(parse_sets("end\n").is_err());
        assert!(parse_sets("set a gr(2,5)\nset b gr(2,5)\nend\nend\n").is_err());
    }
}
