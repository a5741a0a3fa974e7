//! Homogeneous irreducible bundles on Grassmannians and partial flag
//! varieties, and their cohomology via Borel–Weil–Bott.
//!
//! Convention: on `Gr(k,n)` the blocks `(λ | μ)` stand for
//! `S^λ(U_k^∨) ⊗ S^μ(Q^∨)`; on `Fl(d_1,…,d_r;n)` block `i` is a Schur power of
//! the dual of the `i`-th successive quotient `(U_{d_i}/U_{d_{i-1}})^∨`.
//! With this convention `O(1) = det U_k^∨` has blocks `((1,…,1) | 0)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{gl_tensor, shift, weyl_dim, IntegerWeight};

/// A partial flag variety `Fl(d_1 < … < d_r; n)`; `Gr(k,n)` when `r = 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FlagVariety {
    n: usize,
    dims: Vec<usize>,
}

impl FlagVariety {
    pub fn new(dims: Vec<usize>, n: usize) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::BadFlag("no subspace dimensions".into()));
        }
        let strictly_increasing = dims.windows(2).all(|w| w[0] < w[1]);
        if !strictly_increasing || dims[0] == 0 || *dims.last().unwrap() >= n {
            return Err(Error::BadFlag(format!("dims {dims:?} invalid for n = {n}")));
        }
        Ok(FlagVariety { n, dims })
    }

    pub fn grassmannian(k: usize, n: usize) -> Result<Self> {
        Self::new(vec![k], n)
    }

    /// `Gr(3,5)`, the base of the plus side.
    pub fn gr35() -> Self {
        FlagVariety { n: 5, dims: vec![3] }
    }

    /// `Gr(2,5)`, the base of the minus side.
    pub fn gr25() -> Self {
        FlagVariety { n: 5, dims: vec![2] }
    }

    pub fn fl235() -> Self {
        FlagVariety { n: 5, dims: vec![2, 3] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_grassmannian(&self) -> bool {
        self.dims.len() == 1
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut prev = 0;
        let mut out = Vec::with_capacity(self.dims.len() + 1);
        for &d in &self.dims {
            out.push(d - prev);
            prev = d;
        }
        out.push(self.n - prev);
        out
    }

    /// Complex dimension `Σ_{i<j} b_i b_j` over the block sizes.
    pub fn dimension(&self) -> usize {
        let b = self.block_sizes();
        let mut d = 0;
        for i in 0..b.len() {
            for j in (i + 1)..b.len() {
                d += b[i] * b[j];
            }
        }
        d
    }

    /// The trivial bundle.
    pub fn structure_sheaf(&self) -> HomogeneousBundle {
        HomogeneousBundle {
            space: self.clone(),
            blocks: self.block_sizes().into_iter().map(IntegerWeight::zero).collect(),
            mult: BigUint::one(),
        }
    }

    /// `O(a)` pulled back from the Grassmannian of the first subspace.
    pub fn line(&self, a: i64) -> HomogeneousBundle {
        let gen = if self.is_grassmannian() { LineGenerator::O } else { LineGenerator::H3 };
        self.structure_sheaf().twist(a, gen).expect("generator valid for space")
    }
}

impl fmt::Display for FlagVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_grassmannian() {
            write!(f, "gr({},{})", self.dims[0], self.n)
        } else {
            let d: Vec<String> = self.dims.iter().map(|x| x.to_string()).collect();
            write!(f, "fl({};{})", d.join(","), self.n)
        }
    }
}

/// Named generators of the Picard group used for twists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineGenerator {
    /// `O(1) = det U_k^∨` on a Grassmannian.
    O,
    /// `det U_2^∨` on `Fl(2,3;5)`.
    H2,
    /// `det U_3^∨` on `Fl(2,3;5)`.
    H3,
}

impl std::str::FromStr for LineGenerator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "O" | "o" => Ok(LineGenerator::O),
            "H2" | "h2" => Ok(LineGenerator::H2),
            "H3" | "h3" => Ok(LineGenerator::H3),
            other => Err(Error::UnknownGenerator(other.into(), "any space".into())),
        }
    }
}

/// An irreducible homogeneous bundle with a multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomogeneousBundle {
    space: FlagVariety,
    blocks: Vec<IntegerWeight>,
    #[serde(with = "crate::report::biguint_json")]
    mult: BigUint,
}

impl HomogeneousBundle {
    pub fn new(space: FlagVariety, blocks: Vec<IntegerWeight>, mult: BigUint) -> Result<Self> {
        let sizes = space.block_sizes();
        if blocks.len() != sizes.len() {
            return Err(Error::BlockShape { index: blocks.len(), expected: sizes.len(), found: blocks.len() });
        }
        for (i, (b, &s)) in blocks.iter().zip(&sizes).enumerate() {
            if b.len() != s {
                return Err(Error::BlockShape { index: i, expected: s, found: b.len() });
            }
        }
        if mult.is_zero() {
            return Err(Error::Parse("multiplicity must be positive".into()));
        }
        Ok(HomogeneousBundle { space, blocks, mult })
    }

    /// Convenience constructor from raw block entries, multiplicity one.
    pub fn from_blocks(space: &FlagVariety, blocks: &[&[i64]]) -> Result<Self> {
        let blocks = blocks.iter().map(|b| IntegerWeight::new(b.to_vec())).collect::<Result<Vec<_>>>()?;
        Self::new(space.clone(), blocks, BigUint::one())
    }

    /// `S^λ U_k^∨` on a Grassmannian (trivial quotient block).
    pub fn schur_u(space: &FlagVariety, lam: &[i64]) -> Result<Self> {
        let sizes = space.block_sizes();
        let mut blocks = vec![IntegerWeight::new(lam.to_vec())?];
        blocks.extend(sizes[1..].iter().map(|&s| IntegerWeight::zero(s)));
        Self::new(space.clone(), blocks, BigUint::one())
    }

    pub fn space(&self) -> &FlagVariety {
        &self.space
    }

    pub fn blocks(&self) -> &[IntegerWeight] {
        &self.blocks
    }

    pub fn mult(&self) -> &BigUint {
        &self.mult
    }

    pub fn with_mult(mut self, mult: BigUint) -> Self {
        assert!(!mult.is_zero());
        self.mult = mult;
        self
    }

    /// The same irreducible with multiplicity one.
    pub fn irreducible(&self) -> Self {
        self.clone().with_mult(BigUint::one())
    }

    /// All blocks concatenated into one `GL(n)` weight (usually not dominant).
    pub fn concatenated(&self) -> Vec<i64> {
        self.blocks.iter().flat_map(|b| b.entries().iter().copied()).collect()
    }

    pub fn rank(&self) -> BigUint {
        let mut r = self.mult.clone();
        for b in &self.blocks {
            r *= weyl_dim(b, b.len()).expect("block has its own length");
        }
        r
    }

    /// Reverses and negates every block.
    pub fn dual(&self) -> Self {
        HomogeneousBundle {
            space: self.space.clone(),
            blocks: self.blocks.iter().map(|b| b.dual()).collect(),
            mult: self.mult.clone(),
        }
    }

    pub fn twist(&self, a: i64, generator: LineGenerator) -> Result<Self> {
        let affected = match (self.space.is_grassmannian(), generator) {
            (true, LineGenerator::O) => 1,
            (false, LineGenerator::H2) if self.space.dims.len() >= 2 => 1,
            (false, LineGenerator::H3) if self.space.dims.len() >= 2 => 2,
            _ => {
                return Err(Error::UnknownGenerator(format!("{generator:?}"), self.space.to_string()));
            }
        };
        let mut out = self.clone();
        for b in out.blocks.iter_mut().take(affected) {
            *b = shift(b, a);
        }
        Ok(out)
    }

    /// Twist by `O(a)` on a Grassmannian.
    pub fn o(&self, a: i64) -> Self {
        self.twist(a, LineGenerator::O).expect("twist by O(a) needs a Grassmannian")
    }

    /// Adds `t` to every entry of every block.
    pub fn shift_all(&self, t: i64) -> Self {
        HomogeneousBundle {
            space: self.space.clone(),
            blocks: self.blocks.iter().map(|b| shift(b, t)).collect(),
            mult: self.mult.clone(),
        }
    }

    pub fn tensor(&self, other: &Self) -> Result<BundleSum> {
        check_space(&self.space, &other.space)?;
        let mut partial: Vec<(Vec<IntegerWeight>, BigUint)> = vec![(Vec::new(), &self.mult * &other.mult)];
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            let prod = gl_tensor(a, b, a.len())?;
            let mut next = Vec::with_capacity(partial.len() * prod.len());
            for (blocks, m) in &partial {
                for (w, c) in prod.iter() {
                    let mut nb = blocks.clone();
                    nb.push(w.clone());
                    next.push((nb, m * c));
                }
            }
            partial = next;
        }
        let mut out = BundleSum::new(self.space.clone());
        for (blocks, m) in partial {
            out.add_raw(blocks, m);
        }
        Ok(out)
    }

    pub fn bwb(&self) -> Cohomology {
        bwb_weight(&self.concatenated())
    }
}

impl fmt::Display for HomogeneousBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::literal::format_bundle(self))
    }
}

fn check_space(a: &FlagVariety, b: &FlagVariety) -> Result<()> {
    if a != b {
        return Err(Error::SpaceMismatch(a.to_string(), b.to_string()));
    }
    Ok(())
}

/// Cohomology of one irreducible: zero, or one representation in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Cohomology {
    Acyclic,
    Nonzero {
        degree: usize,
        weight: IntegerWeight,
        #[serde(with = "crate::report::biguint_json")]
        dim: BigUint,
    },
}

impl Cohomology {
    pub fn degree(&self) -> Option<usize> {
        match self {
            Cohomology::Acyclic => None,
            Cohomology::Nonzero { degree, .. } => Some(*degree),
        }
    }

    pub fn dim(&self) -> BigUint {
        match self {
            Cohomology::Acyclic => BigUint::zero(),
            Cohomology::Nonzero { dim, .. } => dim.clone(),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        matches!(self, Cohomology::Acyclic)
    }
}

impl fmt::Display for Cohomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cohomology::Acyclic => write!(f, "Acyclic"),
            Cohomology::Nonzero { degree, weight, dim } => write!(f, "H^{degree} = V{weight}, dim {dim}"),
        }
    }
}

/// Borel–Weil–Bott on a concatenated `GL(n)` weight: add `ρ = (n-1,…,0)`,
/// sort by adjacent swaps, subtract `ρ`.
pub fn bwb_weight(w: &[i64]) -> Cohomology {
    let n = w.len();
    let mut alpha: Vec<i64> = w.iter().enumerate().map(|(i, x)| x + (n - 1 - i) as i64).collect();
    let mut sorted = alpha.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return Cohomology::Acyclic;
    }
    let mut degree = 0;
    // Bubble sort into strictly decreasing order; each swap is one step in
    // the Weyl group, so the count is the length of the sorting permutation.
    loop {
        let mut swapped = false;
        for i in 0..n.saturating_sub(1) {
            if alpha[i] < alpha[i + 1] {
                alpha.swap(i, i + 1);
                degree += 1;
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    let weight: Vec<i64> = alpha.iter().enumerate().map(|(i, x)| x - (n - 1 - i) as i64).collect();
    let weight = IntegerWeight::new(weight).expect("sorted weight is dominant");
    let dim = weyl_dim(&weight, n).expect("length n");
    Cohomology::Nonzero { degree, weight, dim }
}

/// A direct sum of irreducible bundles on one space, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleSum {
    space: FlagVariety,
    terms: BTreeMap<Vec<IntegerWeight>, BigUint>,
}

impl BundleSum {
    pub fn new(space: FlagVariety) -> Self {
        BundleSum { space, terms: BTreeMap::new() }
    }

    pub fn from_bundles<'a>(space: &FlagVariety, items: impl IntoIterator<Item = &'a HomogeneousBundle>) -> Result<Self> {
        let mut out = BundleSum::new(space.clone());
        for b in items {
            out.push(b.clone())?;
        }
        Ok(out)
    }

    pub fn single(b: HomogeneousBundle) -> Self {
        let mut out = BundleSum::new(b.space.clone());
        out.add_raw(b.blocks, b.mult);
        out
    }

    pub fn space(&self) -> &FlagVariety {
        &self.space
    }

    pub fn push(&mut self, b: HomogeneousBundle) -> Result<()> {
        check_space(&self.space, &b.space)?;
        self.add_raw(b.blocks, b.mult);
        Ok(())
    }

    pub fn extend(&mut self, other: &BundleSum) -> Result<()> {
        check_space(&self.space, &other.space)?;
        for (blocks, m) in &other.terms {
            self.add_raw(blocks.clone(), m.clone());
        }
        Ok(())
    }

    fn add_raw(&mut self, blocks: Vec<IntegerWeight>, m: BigUint) {
        if !m.is_zero() {
            *self.terms.entry(blocks).or_default() += m;
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = HomogeneousBundle> + '_ {
        self.terms.iter().map(|(blocks, m)| HomogeneousBundle {
            space: self.space.clone(),
            blocks: blocks.clone(),
            mult: m.clone(),
        })
    }

    pub fn rank(&self) -> BigUint {
        self.iter().map(|b| b.rank()).sum()
    }

    pub fn dual(&self) -> Self {
        let mut out = BundleSum::new(self.space.clone());
        for b in self.iter() {
            let d = b.dual();
            out.add_raw(d.blocks, d.mult);
        }
        out
    }

    pub fn twist(&self, a: i64, generator: LineGenerator) -> Result<Self> {
        let mut out = BundleSum::new(self.space.clone());
        for b in self.iter() {
            out.push(b.twist(a, generator)?)?;
        }
        Ok(out)
    }

    pub fn tensor(&self, other: &BundleSum) -> Result<BundleSum> {
        check_space(&self.space, &other.space)?;
        let mut out = BundleSum::new(self.space.clone());
        for a in self.iter() {
            for b in other.iter() {
                out.extend(&a.tensor(&b)?)?;
            }
        }
        Ok(out)
    }

    pub fn tensor_bundle(&self, other: &HomogeneousBundle) -> Result<BundleSum> {
        self.tensor(&BundleSum::single(other.clone()))
    }

    pub fn cohomology(&self) -> Vec<(HomogeneousBundle, Cohomology)> {
        cohomology_of_sum(self)
    }
}

/// Borel–Weil–Bott applied termwise; multiplicities stay on the terms.
pub fn cohomology_of_sum(s: &BundleSum) -> Vec<(HomogeneousBundle, Cohomology)> {
    s.iter().map(|b| {
        let c = b.bwb();
        (b, c)
    }).collect()
}

/// Total dimension per cohomological degree, multiplicities included.
pub fn dims_by_degree(results: &[(HomogeneousBundle, Cohomology)]) -> BTreeMap<usize, BigUint> {
    let mut out: BTreeMap<usize, BigUint> = BTreeMap::new();
    for (b, c) in results {
        if let Cohomology::Nonzero { degree, dim, .. } = c {
            *out.entry(*degree).or_default() += dim * b.mult();
        }
    }
    out
}

/// `Σ (-1)^d dim H^d`, multiplicities included.
pub fn euler_characteristic(results: &[(HomogeneousBundle, Cohomology)]) -> BigInt {
    let mut chi = BigInt::zero();
    for (d, dim) in dims_by_degree(results) {
        let v = BigInt::from(dim);
        if d % 2 == 0 {
            chi += v;
        } else {
            chi -= v;
        }
    }
    chi
}

/// Per-degree dimensions of `Ext^•(E, F) = H^•(E^∨ ⊗ F)` on the base.
pub fn ext_on_base(e: &BundleSum, f: &BundleSum) -> Result<BTreeMap<usize, BigUint>> {
    Ok(dims_by_degree(&e.dual().tensor(f)?.cohomology()))
}
