//! Exceptional collections on Grassmannians and K-theoretic checks of
//! resolutions, all through Borel–Weil–Bott.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homog::{ext_on_base, BundleSum, FlagVariety, HomogeneousBundle, LineGenerator};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalCollection {
    pub name: String,
    pub space: FlagVariety,
    pub objects: Vec<HomogeneousBundle>,
}

impl ExceptionalCollection {
    pub fn new(name: &str, objects: Vec<HomogeneousBundle>) -> Result<Self> {
        let space = objects.first().ok_or_else(|| Error::Parse(format!("collection {name} is empty")))?.space().clone();
        if let Some(o) = objects.iter().find(|o| o.space() != &space) {
            return Err(Error::SpaceMismatch(space.to_string(), o.space().to_string()));
        }
        Ok(ExceptionalCollection { name: name.to_string(), space, objects })
    }

    /// Tensors every object with `O(a)`.
    pub fn twist(&self, a: i64) -> Self {
        ExceptionalCollection {
            name: format!("{}({a})", self.name),
            space: self.space.clone(),
            objects: self.objects.iter().map(|o| o.o(a)).collect(),
        }
    }

    pub fn reversed(&self) -> Self {
        let mut objects = self.objects.clone();
        objects.reverse();
        ExceptionalCollection { name: format!("{} reversed", self.name), space: self.space.clone(), objects }
    }
}

/// A nonzero `Ext^degree(E_from, E_to)` that a check forbids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub from: usize,
    pub to: usize,
    pub degree: usize,
    #[serde(with = "crate::report::biguint_json")]
    pub dim: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollectionReport {
    pub name: String,
    pub objects: usize,
    /// Rank of `K_0` of the Grassmannian, `binom(n, k)`.
    pub expected_k0_rank: usize,
    pub exceptional: Vec<Violation>,
    pub semiorthogonal: Vec<Violation>,
    pub strong: Vec<Violation>,
}

impl CollectionReport {
    pub fn pass(&self) -> bool {
        self.exceptional.is_empty() && self.semiorthogonal.is_empty() && self.strong.is_empty()
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `ext[i][j]` = per-degree dimensions of `Ext^•(E_i, E_j)`.
pub fn ext_matrix(c: &ExceptionalCollection) -> Result<Vec<Vec<BTreeMap<usize, BigUint>>>> {
    let n = c.objects.len();
    let cells = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            let e = BundleSum::single(c.objects[i].irreducible());
            let f = BundleSum::single(c.objects[j].irreducible());
            ext_on_base(&e, &f)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(cells.chunks(n).map(|row| row.to_vec()).collect())
}

/// Exceptionality, semiorthogonality (`Ext^•(E_b, E_a) = 0` for `b > a`) and
/// strongness (`Ext^{≠0}(E_a, E_b) = 0` for `a ≤ b`). Fullness is not
/// checked; the object count is reported next to the rank of `K_0`.
pub fn check_exceptional(c: &ExceptionalCollection) -> Result<CollectionReport> {
    let ext = ext_matrix(c)?;
    let n = c.objects.len();
    let mut report = CollectionReport {
        name: c.name.clone(),
        objects: n,
        expected_k0_rank: binomial(c.space.n(), c.space.dims()[0]),
        exceptional: Vec::new(),
        semiorthogonal: Vec::new(),
        strong: Vec::new(),
    };
    for (a, row) in ext.iter().enumerate() {
        for (b, dims) in row.iter().enumerate() {
            for (&degree, dim) in dims {
                let v = Violation { from: a, to: b, degree, dim: dim.clone() };
                if a == b && (degree > 0 || !dim.is_one()) {
                    report.exceptional.push(v.clone());
                }
                if a > b {
                    report.semiorthogonal.push(v.clone());
                }
                if a <= b && degree > 0 {
                    report.strong.push(v);
                }
            }
            if a == b && !dims.contains_key(&0) {
                report.exceptional.push(Violation { from: a, to: a, degree: 0, dim: BigUint::zero() });
            }
        }
    }
    report.exceptional.sort();
    report.semiorthogonal.sort();
    report.strong.sort();
    Ok(report)
}

/// A complex `0 → C_0 → C_1 → … → 0` of bundles, recorded termwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionSequence {
    pub name: String,
    pub terms: Vec<BundleSum>,
}

impl ResolutionSequence {
    pub fn new(name: &str, terms: Vec<BundleSum>) -> Result<Self> {
        if terms.len() < 2 {
            return Err(Error::Parse(format!("sequence {name} needs at least two terms")));
        }
        let space = terms[0].space().clone();
        if let Some(t) = terms.iter().find(|t| t.space() != &space) {
            return Err(Error::SpaceMismatch(space.to_string(), t.space().to_string()));
        }
        Ok(ResolutionSequence { name: name.to_string(), terms })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistCheck {
    pub twist: i64,
    /// `Σ_i (-1)^i dim H^d(C_i(t))` for each degree `d` that occurs.
    pub signed_dims: BTreeMap<usize, BigInt>,
    /// `Σ_i (-1)^i χ(C_i(t))`.
    pub euler: BigInt,
}

impl TwistCheck {
    /// Every per-degree signed sum vanishes.
    pub fn pass(&self) -> bool {
        self.signed_dims.values().all(|v| v.is_zero())
    }

    pub fn euler_pass(&self) -> bool {
        self.euler.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionReport {
    pub name: String,
    pub ranks: Vec<String>,
    pub rank_sum: BigInt,
    pub twists: Vec<TwistCheck>,
}

impl ResolutionReport {
    /// Rank sum and every per-degree signed sum vanish.
    pub fn pass(&self) -> bool {
        self.rank_sum.is_zero() && self.twists.iter().all(|t| t.pass())
    }

    /// Rank sum and every twisted Euler characteristic vanish. Unlike the
    /// per-degree sums, this is implied by exactness: connecting maps of the
    /// complex can move cohomology between degrees.
    pub fn euler_pass(&self) -> bool {
        self.rank_sum.is_zero() && self.twists.iter().all(|t| t.euler_pass())
    }
}

fn sign(i: usize) -> BigInt {
    if i.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Alternating rank sum and, for each twist, the alternating sums of the
/// cohomology dimensions, degree by degree and in total.
pub fn verify_resolution_ktheory(r: &ResolutionSequence, twists: &[i64]) -> Result<ResolutionReport> {
    let ranks: Vec<BigUint> = r.terms.iter().map(|t| t.rank()).collect();
    let rank_sum = ranks.iter().enumerate().map(|(i, x)| sign(i) * BigInt::from(x.clone())).sum();
    let checks = twists
        .par_iter()
        .map(|&t| {
            let mut signed_dims: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (i, term) in r.terms.iter().enumerate() {
                let twisted = term.twist(t, LineGenerator::O)?;
                for (d, dim) in crate::homog::dims_by_degree(&twisted.cohomology()) {
                    *signed_dims.entry(d).or_default() += sign(i) * BigInt::from(dim);
                }
            }
            let euler = signed_dims.iter().map(|(d, v)| sign(*d) * v).sum();
            Ok(TwistCheck { twist: t, signed_dims, euler })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResolutionReport {
        name: r.name.clone(),
        ranks: ranks.iter().map(|x| x.to_string()).collect(),
        rank_sum,
        twists: checks,
    })
}
