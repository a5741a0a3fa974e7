//! Weight-level GIT data for the `GL(3)` action on
//! `W = Hom(S, V) ⊕ Hom(S, (det S)^2)`: graded-restriction windows and
//! Kempf–Ness adapted one-parameter subgroups for the maximal torus.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::IntegerWeight;

/// The two sides of the variation of GIT.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Side::Plus),
            "minus" | "-" => Ok(Side::Minus),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "plus",
            Side::Minus => "minus",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HlWindow {
    pub w: [i64; 3],
    pub side: Side,
}

/// One violated inequality: `value ∉ [lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConditionFailure {
    pub condition: char,
    pub value: i64,
    pub lo: i64,
    pub hi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub member: bool,
    pub failed: Vec<ConditionFailure>,
}

fn check(failed: &mut BTreeSet<ConditionFailure>, condition: char, value: i64, lo: i64, len: i64) {
    if value < lo || value >= lo + len {
        failed.insert(ConditionFailure { condition, value, lo, hi: lo + len });
    }
}

fn as_triple(chi: &IntegerWeight) -> Result<[i64; 3]> {
    chi.entries().try_into().map_err(|_| Error::PieceShape(format!("expected a GL(3) weight, got {chi}")))
}

/// Evaluates the three graded-restriction conditions of the given side,
/// over all permutations of the entries.
pub fn hl_membership(chi: &IntegerWeight, p: &HlWindow) -> Result<Membership> {
    let c = as_triple(chi)?;
    let [w0, w1, w2] = p.w;
    let s: i64 = c.iter().sum();
    let mut failed = BTreeSet::new();
    match p.side {
        Side::Plus => {
            check(&mut failed, 'a', s, w0, 15);
            for i in 0..3 {
                for j in (i + 1)..3 {
                    check(&mut failed, 'b', c[i] + c[j], w1, 8);
                }
            }
            for &x in &c {
                check(&mut failed, 'c', x, w2, 3);
            }
        }
        Side::Minus => {
            check(&mut failed, 'a', -s, w0, 15);
            // χ_σ1 + χ_σ2 - 4χ_σ3 = s - 5χ_σ3.
            for &x in &c {
                check(&mut failed, 'b', s - 5 * x, w1, 10);
            }
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        check(&mut failed, 'c', c[i] - 2 * c[j], w2, 4);
                    }
                }
            }
        }
    }
    Ok(Membership { member: failed.is_empty(), failed: failed.into_iter().collect() })
}

/// Finite box containing every member of the window.
///
/// Plus side: condition (c) bounds each entry by `[w2, w2+2]`. Minus side:
/// applying (c) to `(χ1, χ3)` and `(χ3, χ1)` and adding gives
/// `χ1 + χ3 ∈ [-2w2-6, -2w2]`, and subtracting gives `χ1 - χ3 ≤ 1`; the box
/// uses the looser `χ1 - χ3 ≤ 3`.
pub fn search_box(p: &HlWindow) -> Vec<IntegerWeight> {
    let w2 = p.w[2];
    let mut out = Vec::new();
    match p.side {
        Side::Plus => {
            for a in w2..=w2 + 2 {
                for b in w2..=a {
                    for c in w2..=b {
                        out.push(IntegerWeight::new(vec![a, b, c]).unwrap());
                    }
                }
            }
        }
        Side::Minus => {
            for sum in (-2 * w2 - 6)..=(-2 * w2) {
                for diff in 0..=3 {
                    if (sum + diff) % 2 != 0 {
                        continue;
                    }
                    let (a, c) = ((sum + diff) / 2, (sum - diff) / 2);
                    for b in c..=a {
                        out.push(IntegerWeight::new(vec![a, b, c]).unwrap());
                    }
                }
            }
        }
    }
    out
}

/// All dominant weights in the window, sorted.
pub fn hl_enumerate(p: &HlWindow) -> BTreeSet<IntegerWeight> {
    search_box(p)
        .into_iter()
        .filter(|chi| hl_membership(chi, p).expect("length 3").member)
        .collect()
}

/// Torus weights of the coordinates of `W`: `u_i` on the rows of `B`, `q_i`
/// on the entries of `ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoordinateWeight {
    U1,
    U2,
    U3,
    Q1,
    Q2,
    Q3,
}

impl CoordinateWeight {
    pub const ALL: [CoordinateWeight; 6] = [Self::U1, Self::U2, Self::U3, Self::Q1, Self::Q2, Self::Q3];

    pub fn vector(self) -> [i64; 3] {
        match self {
            Self::U1 => [-1, 0, 0],
            Self::U2 => [0, -1, 0],
            Self::U3 => [0, 0, -1],
            Self::Q1 => [1, 2, 2],
            Self::Q2 => [2, 1, 2],
            Self::Q3 => [2, 2, 1],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::U1 => "u1",
            Self::U2 => "u2",
            Self::U3 => "u3",
            Self::Q1 => "q1",
            Self::Q2 => "q2",
            Self::Q3 => "q3",
        }
    }

    /// The weight with coordinates permuted by `perm` (`perm[i]` is the new
    /// position of coordinate `i`).
    pub fn permuted(self, perm: [usize; 3]) -> Self {
        let idx = |i: usize| perm[i];
        match self {
            Self::U1 | Self::U2 | Self::U3 => [Self::U1, Self::U2, Self::U3][idx(self as usize)],
            _ => [Self::Q1, Self::Q2, Self::Q3][idx(self as usize - 3)],
        }
    }
}

impl std::str::FromStr for CoordinateWeight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// Minimize `(r·k)/‖k‖` over `k ≠ 0` with `w·k ≥ 0` for every constraint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeProblem {
    pub constraints: BTreeSet<CoordinateWeight>,
    pub character: [i64; 3],
}

impl ConeProblem {
    pub fn new(constraints: impl IntoIterator<Item = CoordinateWeight>, character: [i64; 3]) -> Self {
        ConeProblem { constraints: constraints.into_iter().collect(), character }
    }

    /// The character of the given side: `(-1,-1,-1)` on the plus side.
    pub fn side_character(side: Side) -> [i64; 3] {
        match side {
            Side::Plus => [-1, -1, -1],
            Side::Minus => [1, 1, 1],
        }
    }

    pub fn feasible(&self, k: &[i64; 3]) -> bool {
        self.constraints.iter().all(|w| dot_i(&w.vector(), k) >= 0)
    }
}

/// Outcome of the Kempf–Ness optimization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KnSolution {
    /// No feasible direction pairs negatively with the character.
    Nonnegative,
    /// `M = -sqrt(value_sq)`, attained on the ray of `minimizer`.
    Destabilizing { value_sq: BigRational, minimizer: [i64; 3] },
}

impl KnSolution {
    pub fn value_sq(&self) -> Option<&BigRational> {
        match self {
            KnSolution::Nonnegative => None,
            KnSolution::Destabilizing { value_sq, .. } => Some(value_sq),
        }
    }

    pub fn minimizer(&self) -> Option<[i64; 3]> {
        match self {
            KnSolution::Nonnegative => None,
            KnSolution::Destabilizing { minimizer, .. } => Some(*minimizer),
        }
    }
}

type QVec = [BigRational; 3];

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn dot_i(a: &[i64; 3], b: &[i64; 3]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot(a: &QVec, b: &QVec) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_q(v: &[i64; 3]) -> QVec {
    [q(v[0]), q(v[1]), q(v[2])]
}

/// Orthogonal projection of `r` onto `{k : w·k = 0 for w in rows}`.
fn project_onto_complement(r: &QVec, rows: &[[i64; 3]]) -> QVec {
    // Gram–Schmidt on the rows, then subtract the components of r.
    let mut basis: Vec<QVec> = Vec::new();
    for row in rows {
        let mut v = to_q(row);
        for b in &basis {
            let c = dot(&v, b) / dot(b, b);
            for i in 0..3 {
                v[i] = &v[i] - &c * &b[i];
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            basis.push(v);
        }
    }
    let mut p = r.clone();
    for b in &basis {
        let c = dot(r, b) / dot(b, b);
        for i in 0..3 {
            p[i] = &p[i] - &c * &b[i];
        }
    }
    p
}

/// The primitive integer vector on the ray of `v`.
fn primitive(v: &QVec) -> [i64; 3] {
    let den = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let conv = |x: &BigInt| i64::try_from(&(x / &g)).expect("minimizer fits in i64");
    [conv(&ints[0]), conv(&ints[1]), conv(&ints[2])]
}

/// Exact minimizer of `(r·k)/‖k‖` over the polyhedral cone.
///
/// The optimum, when negative, is `-p` where `p` is the projection of `r`
/// onto the span of the face containing it. Every face span is cut out by a
/// subset of the constraints, so it suffices to try every subset, keep the
/// feasible candidates and take the one with the largest `‖p‖²`.
pub fn kn_adapted(problem: &ConeProblem) -> KnSolution {
    let cons: Vec<[i64; 3]> = problem.constraints.iter().map(|w| w.vector()).collect();
    let r = to_q(&problem.character);
    let mut best: Option<(BigRational, [i64; 3])> = None;
    for mask in 0u32..(1 << cons.len()) {
        let rows: Vec<[i64; 3]> = (0..cons.len()).filter(|i| mask & (1 << i) != 0).map(|i| cons[i]).collect();
        let p = project_onto_complement(&r, &rows);
        if p.iter().all(|x| x.is_zero()) {
            continue;
        }
        let k = primitive(&[-p[0].clone(), -p[1].clone(), -p[2].clone()]);
        if !problem.feasible(&k) {
            continue;
        }
        let value_sq = dot(&p, &p);
        if best.as_ref().is_none_or(|(v, _)| value_sq > *v) {
            best = Some((value_sq, k));
        }
    }
    match best {
        Some((value_sq, minimizer)) if value_sq.is_positive() => KnSolution::Destabilizing { value_sq, minimizer },
        _ => KnSolution::Nonnegative,
    }
}

/// A Kempf–Ness stratum of the unstable locus for the `GL(3)` action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub side: Side,
    pub description: String,
    pub weight: [i64; 3],
    pub value_sq: BigRational,
    /// A torus-level cone problem realizing the stratum.
    pub problem: ConeProblem,
    /// False for torus strata that are absorbed into another stratum by the
    /// group action.
    pub group_level: bool,
}

impl Stratum {
    /// Whether the solver reproduces the recorded weight and value.
    pub fn validate(&self) -> bool {
        kn_adapted(&self.problem)
            == KnSolution::Destabilizing { value_sq: self.value_sq.clone(), minimizer: self.weight }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use CoordinateWeight::*;

    fn w(v: &[i64]) -> IntegerWeight {
        IntegerWeight::new(v.to_vec()).unwrap()
    }

    fn frac(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn membership_examples() {
        let plus = HlWindow { w: [-7, -4, -1], side: Side::Plus };
        assert!(hl_membership(&w(&[0, 0, 0]), &plus).unwrap().member);
        let m = hl_membership(&w(&[2, 2, 2]), &plus).unwrap();
        assert!(!m.member);
        assert!(m.failed.iter().any(|f| f.condition == 'b' && f.value == 4));
        let minus = HlWindow { w: [-7, -5, -2], side: Side::Minus };
        assert!(hl_membership(&w(&[1, 1, 1]), &minus).unwrap().member);
        assert!(hl_membership(&w(&[1, 1]), &minus).is_err());
    }

    #[test]
    fn enumerate_plus() {
        let got: Vec<_> = hl_enumerate(&HlWindow { w: [-7, -4, -1], side: Side::Plus }).into_iter().collect();
        let expected: BTreeSet<_> = [
            [-1, -1, -1], [0, -1, -1], [0, 0, -1], [0, 0, 0], [1, -1, -1],
            [1, 0, -1], [1, 0, 0], [1, 1, -1], [1, 1, 0], [1, 1, 1],
        ]
        .iter()
        .map(|v| w(v))
        .collect();
        assert_eq!(got, expected.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn enumerate_minus() {
        let got = hl_enumerate(&HlWindow { w: [-7, -5, -2], side: Side::Minus });
        let expected: BTreeSet<_> =
            [[-1, -1, -1], [0, 0, 0], [1, 0, 0], [1, 1, 0], [1, 1, 1], [2, 2, 2]].iter().map(|v| w(v)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn kn_examples() {
        let s = kn_adapted(&ConeProblem::new([Q1, Q2, Q3], [-1, -1, -1]));
        assert_eq!(s, KnSolution::Destabilizing { value_sq: frac(3, 1), minimizer: [1, 1, 1] });
        let s = kn_adapted(&ConeProblem::new([Q2, Q3], [1, 1, 1]));
        assert_eq!(s, KnSolution::Destabilizing { value_sq: frac(1, 17), minimizer: [3, -2, -2] });
        assert_eq!(kn_adapted(&ConeProblem::new(CoordinateWeight::ALL, [1, 1, 1])), KnSolution::Nonnegative);
        let s = kn_adapted(&ConeProblem::new([U2, U3], [-1, -1, -1]));
        assert_eq!(s, KnSolution::Destabilizing { value_sq: frac(1, 1), minimizer: [1, 0, 0] });
        let s = kn_adapted(&ConeProblem::new([Q3, U3], [1, 1, 1]));
        assert_eq!(s, KnSolution::Destabilizing { value_sq: frac(2, 9), minimizer: [1, 1, -4] });
        let s = kn_adapted(&ConeProblem::new([Q3, U2], [1, 1, 1]));
        assert_eq!(s, KnSolution::Destabilizing { value_sq: frac(1, 5), minimizer: [1, 0, -2] });
    }

    #[test]
    fn unconstrained_cone() {
        let s = kn_adapted(&ConeProblem::new([], [1, 1, 1]));
        assert_eq!(s, KnSolution::Destabilizing { value_sq: frac(3, 1), minimizer: [-1, -1, -1] });
    }

    #[test]
    fn permuting_weights() {
        assert_eq!(Q1.permuted([1, 0, 2]), Q2);
        assert_eq!(U3.permuted([2, 0, 1]), U2);
        assert_eq!(Q2.vector(), [2, 1, 2]);
    }
}
