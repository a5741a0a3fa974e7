//! Ext groups on total spaces of vector bundles over a Grassmannian, computed
//! by expanding the pushforward of the structure sheaf as `⊕_ℓ term(ℓ)`.
//!
//! The two built-in models are `X₊ = Tot(U_3^∨(-2))` over `Gr(3,5)`, with
//! `term(ℓ) = Sym^ℓ(U_3(2))`, and `X₋ = Tot(Q(-2))` over `Gr(2,5)`, with
//! `term(ℓ) = Sym^ℓ(Q^∨(2))`. Both terms are linear in `ℓ` on the level of
//! block weights, which is what the cutoff certificate relies on.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homog::{dims_by_degree, BundleSum, Cohomology, FlagVariety, HomogeneousBundle};
use crate::partitions::IntegerWeight;

/// A total space whose `ℓ`-th pushforward summand has blocks `ℓ · step`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalSpaceModel {
    name: String,
    base: FlagVariety,
    step: Vec<IntegerWeight>,
}

impl TotalSpaceModel {
    /// A model with `term(ℓ)` the irreducible with blocks `ℓ · step`. The
    /// base must be a Grassmannian and every step block dominant.
    pub fn linear(name: &str, base: FlagVariety, step: Vec<IntegerWeight>) -> Result<Self> {
        if !base.is_grassmannian() {
            return Err(Error::BadFlag(format!("total space base must be a Grassmannian, got {base}")));
        }
        HomogeneousBundle::new(base.clone(), step.clone(), BigUint::from(1u32))?;
        Ok(TotalSpaceModel { name: name.to_string(), base, step })
    }

    pub fn xplus() -> Self {
        let step = vec![IntegerWeight::new(vec![2, 2, 1]).unwrap(), IntegerWeight::zero(2)];
        Self::linear("xplus", FlagVariety::gr35(), step).unwrap()
    }

    pub fn xminus() -> Self {
        let step = vec![IntegerWeight::new(vec![2, 2]).unwrap(), IntegerWeight::new(vec![1, 0, 0]).unwrap()];
        Self::linear("xminus", FlagVariety::gr25(), step).unwrap()
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "xplus" | "XPlus" | "plus" => Ok(Self::xplus()),
            "xminus" | "XMinus" | "minus" => Ok(Self::xminus()),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &FlagVariety {
        &self.base
    }

    /// The `ℓ`-th summand of the pushforward of the structure sheaf.
    pub fn pushforward_term(&self, l: u32) -> HomogeneousBundle {
        let blocks = self
            .step
            .iter()
            .map(|b| IntegerWeight::new(b.entries().iter().map(|x| x * l as i64).collect()).unwrap())
            .collect();
        HomogeneousBundle::new(self.base.clone(), blocks, BigUint::from(1u32)).unwrap()
    }

    /// How much `term(ℓ)` widens the gap between the blocks per unit of `ℓ`:
    /// the last step entry of the subbundle block minus the first of the
    /// quotient block.
    fn gap_rate(&self) -> i64 {
        self.step[0].last().unwrap() - self.step[1].first().unwrap()
    }

    fn check_base(&self, s: &BundleSum) -> Result<()> {
        if s.space() != &self.base {
            return Err(Error::SpaceMismatch(s.space().to_string(), self.base.to_string()));
        }
        Ok(())
    }
}

impl fmt::Display for TotalSpaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.name, self.base)
    }
}

/// Which rows of an Ext table to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cutoff {
    /// Rows `0..=ℓ₀` where `ℓ₀` is the certified stable cutoff.
    Auto,
    /// Rows `0..=N`.
    Fixed(u32),
}

impl std::str::FromStr for Cutoff {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(Cutoff::Auto);
        }
        s.parse().map(Cutoff::Fixed).map_err(|_| Error::Parse(format!("cutoff must be `auto` or a number, got {s:?}")))
    }
}

/// Evidence that every row past `l0` sits in degree 0: the summand of
/// `E^∨ ⊗ F` with the largest gap between its blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutoffCertificate {
    pub l0: u32,
    /// Largest value of `μ_1 - λ_k` over summands of `E^∨ ⊗ F`.
    pub max_gap: i64,
    /// Growth of that gap per unit of `ℓ`.
    pub rate: i64,
    pub binding_summand: Option<HomogeneousBundle>,
}

/// The least `ℓ₀` for which every summand of `E^∨ ⊗ F ⊗ term(ℓ)`, `ℓ ≥ ℓ₀`, has
/// a dominant concatenated weight and therefore only `H^0`.
///
/// The tensor with `term(ℓ)` raises the smallest subbundle-block entry by at
/// least `ℓ · step_1,last` and the largest quotient-block entry by at most
/// `ℓ · step_2,first`, so a summand with gap `μ_1 - λ_k = g` is dominant
/// once `ℓ · rate ≥ g`.
pub fn stable_cutoff(model: &TotalSpaceModel, e: &BundleSum, f: &BundleSum) -> Result<CutoffCertificate> {
    model.check_base(e)?;
    model.check_base(f)?;
    let rate = model.gap_rate();
    if rate <= 0 {
        return Err(Error::BadFlag(format!("{model}: term(ℓ) does not separate the blocks, no certified cutoff")));
    }
    let hom = e.dual().tensor(f)?;
    let mut best: Option<(i64, HomogeneousBundle)> = None;
    for s in hom.iter() {
        let gap = s.blocks()[1].first().unwrap() - s.blocks()[0].last().unwrap();
        if best.as_ref().is_none_or(|(g, _)| gap > *g) {
            best = Some((gap, s.irreducible()));
        }
    }
    let Some((max_gap, binding)) = best else {
        return Ok(CutoffCertificate { l0: 0, max_gap: 0, rate, binding_summand: None });
    };
    let l0 = if max_gap <= 0 { 0 } else { (max_gap + rate - 1) / rate };
    Ok(CutoffCertificate { l0: l0 as u32, max_gap, rate, binding_summand: Some(binding) })
}

/// Cohomology of the summands of one row `E^∨ ⊗ F ⊗ term(ℓ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtRow {
    pub l: u32,
    pub entries: Vec<(HomogeneousBundle, Cohomology)>,
}

impl ExtRow {
    pub fn dims_by_degree(&self) -> BTreeMap<usize, BigUint> {
        dims_by_degree(&self.entries)
    }

    pub fn has_higher_cohomology(&self) -> bool {
        self.entries.iter().any(|(_, c)| c.degree().is_some_and(|d| d > 0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTable {
    pub model: String,
    pub cutoff: u32,
    pub certificate: Option<CutoffCertificate>,
    pub rows: Vec<ExtRow>,
}

impl ExtTable {
    /// Total dimension per degree over all computed rows.
    pub fn aggregate(&self) -> BTreeMap<usize, BigUint> {
        let mut out: BTreeMap<usize, BigUint> = BTreeMap::new();
        for row in &self.rows {
            for (d, v) in row.dims_by_degree() {
                *out.entry(d).or_default() += v;
            }
        }
        out
    }

    pub fn any_higher_cohomology(&self) -> bool {
        self.rows.iter().any(|r| r.has_higher_cohomology())
    }

    /// `dims[ℓ][degree]`, the graded pieces of `Ext^degree` in weight `ℓ`.
    pub fn matrix(&self) -> Vec<BTreeMap<usize, BigUint>> {
        self.rows.iter().map(|r| r.dims_by_degree()).collect()
    }
}

/// `Ext^•(π^*E, π^*F)` on the total space, split by pushforward weight `ℓ`.
pub fn ext_table(model: &TotalSpaceModel, e: &BundleSum, f: &BundleSum, cutoff: Cutoff) -> Result<ExtTable> {
    model.check_base(e)?;
    model.check_base(f)?;
    let (last, certificate) = match cutoff {
        Cutoff::Fixed(n) => (n, None),
        Cutoff::Auto => {
            let c = stable_cutoff(model, e, f)?;
            (c.l0, Some(c))
        }
    };
    let hom = e.dual().tensor(f)?;
    let rows = (0..=last)
        .into_par_iter()
        .map(|l| {
            let s = hom.tensor_bundle(&model.pushforward_term(l))?;
            Ok(ExtRow { l, entries: s.cohomology() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExtTable { model: model.name.clone(), cutoff: last, certificate, rows })
}

/// One nonvanishing higher Ext: weight `l`, summand, degree and dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub l: u32,
    pub summand: HomogeneousBundle,
    pub degree: usize,
    pub dim: BigUint,
}

#[derive(Clone, Debug)]
pub struct PretiltingReport {
    pub ok: bool,
    pub witnesses: Vec<Witness>,
    pub table: ExtTable,
}

/// Checks `Ext^i(π^*T, π^*T) = 0` for `i > 0` using the certified cutoff.
pub fn is_pretilting(model: &TotalSpaceModel, t: &BundleSum) -> Result<PretiltingReport> {
    let table = ext_table(model, t, t, Cutoff::Auto)?;
    let mut witnesses = Vec::new();
    for row in &table.rows {
        for (s, c) in &row.entries {
            if let Cohomology::Nonzero { degree, dim, .. } = c {
                if *degree > 0 {
                    witnesses.push(Witness { l: row.l, summand: s.clone(), degree: *degree, dim: dim * s.mult() });
                }
            }
        }
    }
    Ok(PretiltingReport { ok: witnesses.is_empty(), witnesses, table })
}
