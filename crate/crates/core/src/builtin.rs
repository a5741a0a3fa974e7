//! The built-in data set: window weights, exceptional collections,
//! resolutions, example windows and Kempf–Ness strata, read from
//! `data/builtin.toml`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Deserialize;

use crate::collections::{ExceptionalCollection, ResolutionSequence};
use crate::error::{Error, Result};
use crate::homog::{BundleSum, HomogeneousBundle};
use crate::literal::{parse_entry, parse_space};
use crate::minus_side::Star;
use crate::partitions::IntegerWeight;
use crate::windows::{ConeProblem, CoordinateWeight, HlWindow, Side, Stratum};

pub const BUILTIN_TOML: &str = include_str!("../data/builtin.toml");

#[derive(Deserialize)]
struct RawData {
    window: Vec<RawWindow>,
    collection: Vec<RawCollection>,
    sequence: Vec<RawSequence>,
    hl_example: Vec<RawHlExample>,
    stratum: Vec<RawStratum>,
}

#[derive(Deserialize)]
struct RawWindow {
    star: Star,
    note: String,
    weights: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct RawCollection {
    name: String,
    note: String,
    space: String,
    objects: Vec<String>,
}

#[derive(Deserialize)]
struct RawSequence {
    name: String,
    note: String,
    space: String,
    terms: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct RawHlExample {
    side: Side,
    w: [i64; 3],
    note: String,
    expected: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct RawStratum {
    side: Side,
    description: String,
    weight: [i64; 3],
    value_sq: String,
    constraints: Vec<String>,
    group_level: bool,
}

#[derive(Clone, Debug)]
pub struct WindowData {
    pub star: Star,
    pub note: String,
    pub weights: Vec<IntegerWeight>,
}

#[derive(Clone, Debug)]
pub struct CollectionData {
    pub collection: ExceptionalCollection,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct SequenceData {
    pub sequence: ResolutionSequence,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct HlExample {
    pub window: HlWindow,
    pub note: String,
    pub expected: Vec<IntegerWeight>,
}

#[derive(Clone, Debug)]
pub struct Builtins {
    pub windows: BTreeMap<Star, WindowData>,
    pub collections: Vec<CollectionData>,
    pub sequences: Vec<SequenceData>,
    pub hl_examples: Vec<HlExample>,
    pub strata: Vec<Stratum>,
}

fn weights(raw: &[Vec<i64>]) -> Result<Vec<IntegerWeight>> {
    raw.iter().map(|w| IntegerWeight::new(w.clone())).collect()
}

impl Builtins {
    pub fn load() -> Result<Self> {
        Self::from_toml(BUILTIN_TOML)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let raw: RawData = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut windows = BTreeMap::new();
        for w in raw.window {
            windows.insert(w.star, WindowData { star: w.star, note: w.note, weights: weights(&w.weights)? });
        }
        for star in Star::ALL {
            if !windows.contains_key(&star) {
                return Err(Error::Parse(format!("missing window {star}")));
            }
        }
        let collections = raw
            .collection
            .into_iter()
            .map(|c| {
                let space = parse_space(&c.space)?;
                let objects = c.objects.iter().map(|o| parse_entry(&space, o)).collect::<Result<Vec<_>>>()?;
                Ok(CollectionData { collection: ExceptionalCollection::new(&c.name, objects)?, note: c.note })
            })
            .collect::<Result<Vec<_>>>()?;
        let sequences = raw
            .sequence
            .into_iter()
            .map(|s| {
                let space = parse_space(&s.space)?;
                let terms = s
                    .terms
                    .iter()
                    .map(|t| {
                        let items = t.iter().map(|e| parse_entry(&space, e)).collect::<Result<Vec<HomogeneousBundle>>>()?;
                        BundleSum::from_bundles(&space, &items)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SequenceData { sequence: ResolutionSequence::new(&s.name, terms)?, note: s.note })
            })
            .collect::<Result<Vec<_>>>()?;
        let hl_examples = raw
            .hl_example
            .into_iter()
            .map(|h| {
                Ok(HlExample { window: HlWindow { w: h.w, side: h.side }, note: h.note, expected: weights(&h.expected)? })
            })
            .collect::<Result<Vec<_>>>()?;
        let strata = raw
            .stratum
            .into_iter()
            .map(|s| {
                let value_sq: BigRational =
                    s.value_sq.parse().map_err(|_| Error::Parse(format!("bad fraction {:?}", s.value_sq)))?;
                let constraints = s.constraints.iter().map(|c| c.parse::<CoordinateWeight>()).collect::<Result<Vec<_>>>()?;
                Ok(Stratum {
                    side: s.side,
                    description: s.description,
                    weight: s.weight,
                    value_sq,
                    problem: ConeProblem::new(constraints, ConeProblem::side_character(s.side)),
                    group_level: s.group_level,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Builtins { windows, collections, sequences, hl_examples, strata })
    }

    pub fn window(&self, star: Star) -> &[IntegerWeight] {
        &self.windows[&star].weights
    }

    pub fn collection(&self, name: &str) -> Result<&ExceptionalCollection> {
        self.collections
            .iter()
            .map(|c| &c.collection)
            .find(|c| c.name == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn sequence(&self, name: &str) -> Result<&ResolutionSequence> {
        self.sequences
            .iter()
            .map(|s| &s.sequence)
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// The sum of Kapranov's collection on `Gr(3,5)`, to be pulled back to `X₊`.
    pub fn kapranov_sum(&self) -> Result<BundleSum> {
        let c = self.collection("kapranov-gr35")?;
        BundleSum::from_bundles(&c.space, &c.objects)
    }

    /// Strata of one side, ordered by decreasing `M²` (most unstable first).
    pub fn strata(&self, side: Side, group_level_only: bool) -> Vec<&Stratum> {
        let mut out: Vec<&Stratum> =
            self.strata.iter().filter(|s| s.side == side && (s.group_level || !group_level_only)).collect();
        out.sort_by(|a, b| b.value_sq.cmp(&a.value_sq));
        out
    }
}
