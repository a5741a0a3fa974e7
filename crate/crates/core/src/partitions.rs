//! Integer weights, Littlewood–Richardson products and Weyl dimensions.
//!
//! All products are computed by enumerating Littlewood–Richardson tableaux
//! directly: the boxes labelled `i` are added as a horizontal strip, label by
//! label, and the lattice-word condition on the reverse reading word is
//! enforced row by row while the strip is being placed.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing tuple of integers of a fixed length.
///
/// The length is part of the value: `(1,0)` and `(1)` are different weights.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntegerWeight(Vec<i64>);

impl IntegerWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(entries));
        }
        Ok(IntegerWeight(entries))
    }

    /// The constant weight `(c, …, c)` of length `len`.
    pub fn constant(c: i64, len: usize) -> Self {
        IntegerWeight(vec![c; len])
    }

    pub fn zero(len: usize) -> Self {
        Self::constant(0, len)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn first(&self) -> Option<i64> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<i64> {
        self.0.last().copied()
    }

    pub fn is_partition(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Pads with zeros on the right. The result must still be weakly decreasing.
    pub fn padded(&self, len: usize) -> Result<Self> {
        if self.len() > len {
            return Err(Error::TooLong { len: self.len(), m: len });
        }
        let mut v = self.0.clone();
        v.resize(len, 0);
        IntegerWeight::new(v)
    }

    /// `(-λ_m, …, -λ_1)`: the highest weight of the dual representation.
    pub fn dual(&self) -> Self {
        IntegerWeight(self.0.iter().rev().map(|x| -x).collect())
    }

    fn as_partition(&self) -> Result<Vec<usize>> {
        if !self.is_partition() {
            return Err(Error::NegativeEntry(self.0.clone()));
        }
        let mut v: Vec<usize> = self.0.iter().map(|&x| x as usize).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Ok(v)
    }
}

impl TryFrom<Vec<i64>> for IntegerWeight {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        IntegerWeight::new(v)
    }
}

impl From<IntegerWeight> for Vec<i64> {
    fn from(w: IntegerWeight) -> Self {
        w.0
    }
}

impl fmt::Display for IntegerWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Adds `t` to every entry.
pub fn shift(lam: &IntegerWeight, t: i64) -> IntegerWeight {
    IntegerWeight(lam.0.iter().map(|x| x + t).collect())
}

/// A formal sum of weights with positive multiplicities, in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedSum {
    terms: BTreeMap<IntegerWeight, BigUint>,
}

impl WeightedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, w: IntegerWeight, mult: BigUint) {
        if mult.is_zero() {
            return;
        }
        *self.terms.entry(w).or_default() += mult;
    }

    pub fn multiplicity(&self, w: &IntegerWeight) -> BigUint {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IntegerWeight, &BigUint)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies `f` to every key, merging collisions.
    pub fn map_weights(&self, f: impl Fn(&IntegerWeight) -> IntegerWeight) -> WeightedSum {
        let mut out = WeightedSum::new();
        for (w, m) in &self.terms {
            out.add(f(w), m.clone());
        }
        out
    }
}

impl FromIterator<(IntegerWeight, BigUint)> for WeightedSum {
    fn from_iter<I: IntoIterator<Item = (IntegerWeight, BigUint)>>(iter: I) -> Self {
        let mut out = WeightedSum::new();
        for (w, m) in iter {
            out.add(w, m);
        }
        out
    }
}

impl fmt::Display for WeightedSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{m}*{w}")?;
            }
        }
        Ok(())
    }
}

struct LrSearch<'a> {
    content: &'a [usize],
    max_rows: usize,
    bound: Option<&'a [usize]>,
    found: BTreeMap<Vec<usize>, u64>,
}

impl LrSearch<'_> {
    fn run(&mut self, shape: &[usize]) {
        let prev = vec![0; self.max_rows];
        let mut shape = shape.to_vec();
        shape.resize(self.max_rows, 0);
        self.place_label(0, &shape, &prev);
    }

    fn place_label(&mut self, label: usize, shape: &[usize], prev_counts: &[usize]) {
        if label == self.content.len() {
            let mut nu = shape.to_vec();
            while nu.last() == Some(&0) {
                nu.pop();
            }
            *self.found.entry(nu).or_default() += 1;
            return;
        }
        let mut counts = vec![0; self.max_rows];
        self.place_row(label, 0, self.content[label], shape, prev_counts, &mut counts, 0, 0);
    }

    // `placed` = labels placed so far in rows < row for this label,
    // `prev_above` = previous-label count in rows < row.
    #[allow(clippy::too_many_arguments)]
    fn place_row(
        &mut self,
        label: usize,
        row: usize,
        remaining: usize,
        shape: &[usize],
        prev_counts: &[usize],
        counts: &mut Vec<usize>,
        placed: usize,
        prev_above: usize,
    ) {
        if remaining == 0 {
            let new_shape: Vec<usize> = shape.iter().zip(counts.iter()).map(|(s, c)| s + c).collect();
            let placed_counts = counts.clone();
            self.place_label(label + 1, &new_shape, &placed_counts);
            return;
        }
        if row == self.max_rows {
            return;
        }
        let mut cap = remaining;
        if row > 0 {
            cap = cap.min(shape[row - 1] - shape[row]);
        }
        if let Some(b) = self.bound {
            let limit = b.get(row).copied().unwrap_or(0);
            if shape[row] > limit {
                return;
            }
            cap = cap.min(limit - shape[row]);
        }
        if label > 0 {
            // Lattice condition: label-th entries up to this row may not
            // outnumber (label-1)-th entries strictly above it.
            if placed > prev_above {
                return;
            }
            cap = cap.min(prev_above - placed);
        }
        let next_prev_above = prev_above + prev_counts[row];
        for k in (0..=cap).rev() {
            counts[row] = k;
            self.place_row(
                label,
                row + 1,
                remaining - k,
                shape,
                prev_counts,
                counts,
                placed + k,
                next_prev_above,
            );
        }
        counts[row] = 0;
    }
}

fn lr_expand(
    lam: &[usize],
    mu: &[usize],
    max_rows: usize,
    bound: Option<&[usize]>,
) -> BTreeMap<Vec<usize>, u64> {
    let max_rows = max_rows.min(lam.len() + mu.len());
    if lam.len() > max_rows {
        return BTreeMap::new();
    }
    let mut search = LrSearch { content: mu, max_rows, bound, found: BTreeMap::new() };
    search.run(lam);
    search.found
}

fn to_weight(nu: &[usize], len: usize) -> IntegerWeight {
    let mut v: Vec<i64> = nu.iter().map(|&x| x as i64).collect();
    v.resize(len, 0);
    IntegerWeight(v)
}

/// Littlewood–Richardson product `s_λ · s_μ = Σ c^ν_{λμ} s_ν`.
///
/// Output weights have length `len(λ) + len(μ)`, the largest number of rows
/// a summand can have.
pub fn lr_mult(lam: &IntegerWeight, mu: &IntegerWeight) -> Result<WeightedSum> {
    let l = lam.as_partition()?;
    let m = mu.as_partition()?;
    let len = lam.len() + mu.len();
    // The coefficients are symmetric; filling with the smaller content is cheaper.
    let (shape, content) = if m.iter().sum::<usize>() <= l.iter().sum::<usize>() { (&l, &m) } else { (&m, &l) };
    Ok(lr_expand(shape, content, usize::MAX, None)
        .into_iter()
        .map(|(nu, c)| (to_weight(&nu, len), BigUint::from(c)))
        .collect())
}

/// The Littlewood–Richardson coefficient `c^ν_{λμ}`.
pub fn lr_coefficient(nu: &IntegerWeight, lam: &IntegerWeight, mu: &IntegerWeight) -> Result<BigUint> {
    let n = nu.as_partition()?;
    let l = lam.as_partition()?;
    let m = mu.as_partition()?;
    let sum = |v: &[usize]| v.iter().sum::<usize>();
    if sum(&n) != sum(&l) + sum(&m) || l.len() > n.len() || l.iter().zip(&n).any(|(a, b)| a > b) {
        return Ok(BigUint::zero());
    }
    let found = lr_expand(&l, &m, n.len(), Some(&n));
    Ok(BigUint::from(found.get(&n).copied().unwrap_or(0)))
}

/// Decomposes `V(λ) ⊗ V(μ)` for `GL(m)`; weights may be negative.
///
/// Both weights are shifted to partitions, multiplied with at most `m` rows,
/// and shifted back. Output weights have length `m`.
pub fn gl_tensor(lam: &IntegerWeight, mu: &IntegerWeight, m: usize) -> Result<WeightedSum> {
    let lam = lam.padded(m)?;
    let mu = mu.padded(m)?;
    let s = lam.last().unwrap_or(0);
    let t = mu.last().unwrap_or(0);
    let l = shift(&lam, -s).as_partition()?;
    let k = shift(&mu, -t).as_partition()?;
    let (shape, content) = if k.iter().sum::<usize>() <= l.iter().sum::<usize>() { (&l, &k) } else { (&k, &l) };
    Ok(lr_expand(shape, content, m, None)
        .into_iter()
        .map(|(nu, c)| (shift(&to_weight(&nu, m), s + t), BigUint::from(c)))
        .collect())
}

/// Weyl dimension `∏_{i<j} (λ_i - λ_j + j - i)/(j - i)` of the `GL(m)` irreducible.
pub fn weyl_dim(lam: &IntegerWeight, m: usize) -> Result<BigUint> {
    let lam = lam.padded(m)?;
    let e = lam.entries();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..m {
        for j in (i + 1)..m {
            num *= (e[i] - e[j] + (j - i) as i64) as u64;
            den *= (j - i) as u64;
        }
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// All partitions of `n` with at most `rows` parts, as weights of length `rows`.
pub fn partitions_of(n: usize, rows: usize) -> Vec<IntegerWeight> {
    fn go(n: usize, max: usize, rows: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        if rows == 0 {
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p as i64);
            go(n - p, p, rows - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, rows, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|mut v| {
            v.resize(rows, 0);
            IntegerWeight(v)
        })
        .collect()
}

/// All weakly decreasing weights of length `len` with entries in `lo..=hi`.
pub fn weights_in_box(len: usize, lo: i64, hi: i64) -> Vec<IntegerWeight> {
    fn go(len: usize, lo: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<IntegerWeight>) {
        if cur.len() == len {
            out.push(IntegerWeight(cur.clone()));
            return;
        }
        for x in (lo..=max).rev() {
            cur.push(x);
            go(len, lo, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, lo, hi, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> IntegerWeight {
        IntegerWeight::new(v.to_vec()).unwrap()
    }

    fn sum(items: &[(&[i64], u64)]) -> WeightedSum {
        items.iter().map(|(v, m)| (w(v), BigUint::from(*m))).collect()
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(IntegerWeight::new(vec![0, 1]).is_err());
        assert!(matches!(lr_mult(&w(&[0, -1]), &w(&[1])), Err(Error::NegativeEntry(_))));
        assert!(matches!(gl_tensor(&w(&[1, 0, 0, 0]), &w(&[1]), 3), Err(Error::TooLong { .. })));
    }

    #[test]
    fn pieri_products() {
        assert_eq!(lr_mult(&w(&[1]), &w(&[1])).unwrap(), sum(&[(&[2, 0], 1), (&[1, 1], 1)]));
        assert_eq!(
            lr_mult(&w(&[2, 1]), &w(&[1])).unwrap(),
            sum(&[(&[3, 1, 0], 1), (&[2, 2, 0], 1), (&[2, 1, 1], 1)])
        );
    }

    #[test]
    fn lr_21_squared() {
        let p = lr_mult(&w(&[2, 1]), &w(&[2, 1])).unwrap();
        assert_eq!(p.multiplicity(&w(&[3, 2, 1, 0])), BigUint::from(2u32));
        assert_eq!(lr_coefficient(&w(&[3, 2, 1]), &w(&[2, 1]), &w(&[2, 1])).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn coefficients() {
        assert_eq!(lr_coefficient(&w(&[2, 1]), &w(&[1]), &w(&[1, 1])).unwrap(), BigUint::one());
        assert_eq!(lr_coefficient(&w(&[2, 2]), &w(&[1]), &w(&[1])).unwrap(), BigUint::zero());
        assert_eq!(lr_coefficient(&w(&[1, 1, 1]), &w(&[2]), &w(&[1])).unwrap(), BigUint::zero());
    }

    #[test]
    fn gl_products() {
        assert_eq!(gl_tensor(&w(&[1, 0, 0]), &w(&[1, 0, 0]), 3).unwrap(), sum(&[(&[2, 0, 0], 1), (&[1, 1, 0], 1)]));
        assert_eq!(gl_tensor(&w(&[1, 1]), &w(&[1, 0]), 2).unwrap(), sum(&[(&[2, 1], 1)]));
        assert_eq!(
            gl_tensor(&w(&[0, 0, -1]), &w(&[1, 0, 0]), 3).unwrap(),
            sum(&[(&[1, 0, -1], 1), (&[0, 0, 0], 1)])
        );
    }

    #[test]
    fn weyl_dims() {
        assert_eq!(weyl_dim(&w(&[1, 0, 0]), 3).unwrap(), BigUint::from(3u32));
        for k in -4..5 {
            assert_eq!(weyl_dim(&w(&[k, k, k]), 3).unwrap(), BigUint::one());
        }
        assert_eq!(weyl_dim(&w(&[2, 1, 0]), 3).unwrap(), BigUint::from(8u32));
        assert_eq!(weyl_dim(&w(&[1, 1, 0, 0, 0]), 5).unwrap(), BigUint::from(10u32));
        assert_eq!(weyl_dim(&w(&[1, 1]), 5).unwrap(), BigUint::from(10u32));
    }

    #[test]
    fn shifts() {
        assert_eq!(shift(&w(&[1, 0]), 0), w(&[1, 0]));
        assert_eq!(shift(&w(&[0, 0, -1]), 1), w(&[1, 1, 0]));
        assert_eq!(shift(&w(&[2, 2, 1]), -2), w(&[0, 0, -1]));
    }

    #[test]
    fn enumerations() {
        assert_eq!(partitions_of(4, 4).len(), 5);
        assert_eq!(partitions_of(4, 2).len(), 3);
        assert_eq!(weights_in_box(3, -4, 4).len(), 165);
    }
}
