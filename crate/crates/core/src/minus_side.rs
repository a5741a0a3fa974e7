//! Bundles on `X₋` built from the rank-3 extension
//! `0 → O(-2) → P → U_2^∨ → 0`, handled through their associated graded
//! pieces on `Gr(2,5)`, and the Borel–Weil–Bott checks that support the
//! minus-side tilting argument.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homog::{ext_on_base, BundleSum, Cohomology, FlagVariety, HomogeneousBundle};
use crate::partitions::{lr_coefficient, shift, IntegerWeight};
use crate::total_space::{ext_table, Cutoff, ExtTable, TotalSpaceModel};

/// One graded piece of a filtered bundle.
///
/// `fiber_weight` is the weight of the fiber-scaling `𝔾m` on the piece.
/// Functions of fiber degree `ℓ` have weight `ℓ`; for the extension `P` the
/// sub line bundle `L` has weight `-1` and the quotient weight `0`, so a
/// piece `L^a ⊗ S^β B` of `S^χ P` sits in weight `-a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub sum: BundleSum,
    pub fiber_weight: i64,
}

/// A bundle on `X₋` known through its associated graded, sub to quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredBundle {
    pub label: String,
    pub pieces: Vec<Piece>,
}

impl FilteredBundle {
    pub fn new(label: &str, pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::PieceShape(format!("{label}: no pieces")));
        }
        let space = pieces[0].sum.space().clone();
        if let Some(p) = pieces.iter().find(|p| p.sum.space() != &space) {
            return Err(Error::SpaceMismatch(space.to_string(), p.sum.space().to_string()));
        }
        Ok(FilteredBundle { label: label.to_string(), pieces })
    }

    /// A bundle pulled back from the base: one piece in fiber weight 0.
    pub fn unfiltered(label: &str, sum: BundleSum) -> Self {
        FilteredBundle { label: label.to_string(), pieces: vec![Piece { sum, fiber_weight: 0 }] }
    }

    /// The extension `0 → O(-2) → P → U_2^∨ → 0` on `Gr(2,5)`.
    pub fn p() -> Self {
        let g = FlagVariety::gr25();
        let l = g.line(-2);
        let b = HomogeneousBundle::from_blocks(&g, &[&[1, 0], &[0, 0, 0]]).unwrap();
        FilteredBundle {
            label: "P".into(),
            pieces: vec![
                Piece { sum: BundleSum::single(l), fiber_weight: -1 },
                Piece { sum: BundleSum::single(b), fiber_weight: 0 },
            ],
        }
    }

    pub fn space(&self) -> &FlagVariety {
        self.pieces[0].sum.space()
    }

    pub fn rank(&self) -> BigUint {
        self.pieces.iter().map(|p| p.sum.rank()).sum()
    }

    /// Dualizes every piece and reverses the order.
    pub fn dual(&self) -> Self {
        FilteredBundle {
            label: format!("({})^v", self.label),
            pieces: self
                .pieces
                .iter()
                .rev()
                .map(|p| Piece { sum: p.sum.dual(), fiber_weight: -p.fiber_weight })
                .collect(),
        }
    }

    /// Splits every piece into its irreducible summands, keeping the order.
    pub fn refine(&self) -> Self {
        let pieces = self
            .pieces
            .iter()
            .flat_map(|p| p.sum.iter().map(move |b| Piece { sum: BundleSum::single(b), fiber_weight: p.fiber_weight }))
            .collect();
        FilteredBundle { label: self.label.clone(), pieces }
    }
}

/// `B = U_2^∨ ⊗ M` for a line bundle `M`, returned as `(c, d)` where `M` has
/// blocks `((c,c) | (d,d,d))`.
fn twisted_tautological(b: &HomogeneousBundle) -> Option<(i64, i64)> {
    let u = b.blocks()[0].entries();
    let q = b.blocks()[1].entries();
    let q_const = q.iter().all(|&x| x == q[0]);
    (b.mult().is_one() && u.len() == 2 && u[0] == u[1] + 1 && q_const).then(|| (u[1], q[0]))
}

/// The line bundle `((c,c) | (d,d,d))`, returned as `(c, d)`.
fn line_parts(b: &HomogeneousBundle) -> Option<(i64, i64)> {
    let u = b.blocks()[0].entries();
    let q = b.blocks()[1].entries();
    let u_const = u.iter().all(|&x| x == u[0]);
    let q_const = q.iter().all(|&x| x == q[0]);
    (b.mult().is_one() && u_const && q_const).then(|| (u[0], q[0]))
}

fn single_term(p: &Piece) -> Option<HomogeneousBundle> {
    let mut it = p.sum.iter();
    let b = it.next()?;
    it.next().is_none().then_some(b)
}

/// Associated graded of `S^χ P` for an extension `0 → L → P → B → 0` with `L`
/// a line bundle and `B` a twist of `U_2^∨` on `Gr(2,5)`:
/// `⊕_{a,β} c^χ_{(a),β} L^a ⊗ S^β B`, with pieces ordered by descending `a`.
/// Negative `χ` is handled by writing `χ = χ' + χ_3 (1,1,1)` and twisting by
/// `(det P)^{χ_3}`.
pub fn schur_filtered(chi: &IntegerWeight, p: &FilteredBundle) -> Result<FilteredBundle> {
    if chi.len() != 3 {
        return Err(Error::PieceShape(format!("weight {chi} must have length 3")));
    }
    let shape_err = || Error::PieceShape(format!("{} is not an extension of a twisted U_2^v by a line bundle", p.label));
    if p.pieces.len() != 2 || !p.space().is_grassmannian() || p.space().dims()[0] != 2 {
        return Err(shape_err());
    }
    let l = single_term(&p.pieces[0]).ok_or_else(shape_err)?;
    let b = single_term(&p.pieces[1]).ok_or_else(shape_err)?;
    let (lc, ld) = line_parts(&l).ok_or_else(shape_err)?;
    let (bc, bd) = twisted_tautological(&b).ok_or_else(shape_err)?;
    let (lw, bw) = (p.pieces[0].fiber_weight, p.pieces[1].fiber_weight);
    let space = p.space().clone();

    let base = chi.last().unwrap();
    let part = shift(chi, -base);
    let part_e = part.entries();
    // det P = L ⊗ det B = L ⊗ O(1) ⊗ M^2.
    let (det_c, det_d) = (lc + 1 + 2 * bc, ld + 2 * bd);
    let det_w = lw + 2 * bw;

    let mut pieces = Vec::new();
    for a in (0..=part_e[0]).rev() {
        let mut sum = BundleSum::new(space.clone());
        // c^part_{(a),β} is nonzero only when part/β is a horizontal strip.
        for b1 in part_e[1]..=part_e[0] {
            let b2 = part.size() - a - b1;
            if b2 < part_e[2] || b2 > part_e[1] || b2 > b1 {
                continue;
            }
            let beta = IntegerWeight::new(vec![b1, b2])?;
            let c = lr_coefficient(&part, &IntegerWeight::new(vec![a])?, &beta)?;
            if c.is_zero() {
                continue;
            }
            let size = b1 + b2;
            let uc = a * lc + size * bc + base * det_c;
            let qd = a * ld + size * bd + base * det_d;
            let blocks = vec![IntegerWeight::new(vec![b1 + uc, b2 + uc])?, IntegerWeight::constant(qd, 3)];
            sum.push(HomogeneousBundle::new(space.clone(), blocks, c)?)?;
        }
        if !sum.is_empty() {
            pieces.push(Piece { sum, fiber_weight: a * lw + (part.size() - a) * bw + base * det_w });
        }
    }
    FilteredBundle::new(&format!("S^{chi} {}", p.label), pieces)
}

/// `χ_ℓ = Σ_i (-1)^i dim Ext^i(E, F)_ℓ` for each `ℓ ≤ max_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedEuler {
    pub values: BTreeMap<u32, BigInt>,
}

/// Graded Euler characteristic of `Ext(E, F)` on the total space, summed over
/// all pairs of pieces. A pair whose fiber weights differ by `s = w_F - w_E`
/// contributes the weight-`(ℓ - s)` pushforward summand to level `ℓ`.
pub fn graded_euler(model: &TotalSpaceModel, e: &[FilteredBundle], f: &[FilteredBundle], max_l: u32) -> Result<GradedEuler> {
    let mut pairs = Vec::new();
    for x in e {
        for pe in &x.pieces {
            for y in f {
                for pf in &y.pieces {
                    pairs.push((pe, pf));
                }
            }
        }
    }
    let partial = pairs
        .par_iter()
        .map(|(pe, pf)| {
            let hom = pe.sum.dual().tensor(&pf.sum)?;
            let s = pf.fiber_weight - pe.fiber_weight;
            let mut out = vec![BigInt::zero(); max_l as usize + 1];
            for (l, v) in out.iter_mut().enumerate() {
                let k = l as i64 - s;
                if k < 0 {
                    continue;
                }
                let term = model.pushforward_term(k as u32);
                *v = signed_dim(&hom.tensor_bundle(&term)?.cohomology());
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut values: BTreeMap<u32, BigInt> = (0..=max_l).map(|l| (l, BigInt::zero())).collect();
    for row in partial {
        for (l, v) in row.into_iter().enumerate() {
            *values.get_mut(&(l as u32)).unwrap() += v;
        }
    }
    Ok(GradedEuler { values })
}

fn signed_dim(c: &[(HomogeneousBundle, Cohomology)]) -> BigInt {
    crate::homog::euler_characteristic(c)
}

/// Which window of weights; the four suits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Star {
    Spade,
    Heart,
    Club,
    Diamond,
}

impl Star {
    pub const ALL: [Star; 4] = [Star::Spade, Star::Heart, Star::Club, Star::Diamond];

    pub fn name(self) -> &'static str {
        match self {
            Star::Spade => "spade",
            Star::Heart => "heart",
            Star::Club => "club",
            Star::Diamond => "diamond",
        }
    }

    /// The suit whose window bundle is the dual of this one.
    pub fn dual(self) -> Star {
        match self {
            Star::Spade => Star::Club,
            Star::Club => Star::Spade,
            Star::Heart => Star::Diamond,
            Star::Diamond => Star::Heart,
        }
    }
}

impl std::str::FromStr for Star {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spade" | "♠" => Ok(Star::Spade),
            "heart" | "♥" => Ok(Star::Heart),
            "club" | "♣" => Ok(Star::Club),
            "diamond" | "♦" => Ok(Star::Diamond),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

impl std::fmt::Display for Star {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// `⊕_χ S^χ U_3^∨` on `Gr(3,5)`.
pub fn plus_window_bundle(weights: &[IntegerWeight]) -> Result<BundleSum> {
    let g = FlagVariety::gr35();
    let mut out = BundleSum::new(g.clone());
    for chi in weights {
        out.push(HomogeneousBundle::schur_u(&g, chi.entries())?)?;
    }
    Ok(out)
}

/// `S^χ P` for every weight, in the given order.
pub fn minus_window_bundle(weights: &[IntegerWeight]) -> Result<Vec<FilteredBundle>> {
    let p = FilteredBundle::p();
    weights.iter().map(|chi| schur_filtered(chi, &p)).collect()
}

/// `χ_ℓ` of `End(T)` computed on both sides of the flop for `ℓ = 0..=max_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerComparison {
    pub plus: BTreeMap<u32, BigInt>,
    pub minus: BTreeMap<u32, BigInt>,
    /// Whether the plus-side table has no higher Ext, so `χ_ℓ` is the
    /// dimension of the graded Hom there.
    pub plus_higher_vanish: bool,
}

impl EulerComparison {
    pub fn pass(&self) -> bool {
        self.plus_higher_vanish && self.plus == self.minus
    }

    /// Levels where the two sides disagree.
    pub fn mismatches(&self) -> Vec<u32> {
        self.plus.keys().filter(|l| self.plus.get(l) != self.minus.get(l)).copied().collect()
    }
}

/// Compares the plus-side graded Euler characteristic of `End(T₊)` with the
/// filtration-additive one of `End(T₋)` for the same window weights.
pub fn compare_euler(weights: &[IntegerWeight], max_l: u32) -> Result<EulerComparison> {
    let plus_sum = plus_window_bundle(weights)?;
    let table = ext_table(&TotalSpaceModel::xplus(), &plus_sum, &plus_sum, Cutoff::Fixed(max_l))?;
    let plus = table.rows.iter().map(|r| (r.l, crate::homog::euler_characteristic(&r.entries))).collect();
    let minus_sum = minus_window_bundle(weights)?;
    let minus = graded_euler(&TotalSpaceModel::xminus(), &minus_sum, &minus_sum, max_l)?.values;
    Ok(EulerComparison { plus, minus, plus_higher_vanish: !table.any_higher_cohomology() })
}

/// A single check of the minus-side suite.
#[derive(Clone, Debug)]
pub struct VanishingCheck {
    pub id: String,
    pub group: String,
    pub description: String,
    pub pass: bool,
    pub outcome: VanishingOutcome,
}

#[derive(Clone, Debug)]
pub enum VanishingOutcome {
    /// No higher Ext on the total space.
    TotalSpace(ExtTable),
    /// No Ext in any degree on the base.
    Base(BTreeMap<usize, BigUint>),
}

fn gr25(u: &[i64], q: &[i64]) -> HomogeneousBundle {
    HomogeneousBundle::from_blocks(&FlagVariety::gr25(), &[u, q]).unwrap()
}

fn gr35(u: &[i64]) -> HomogeneousBundle {
    HomogeneousBundle::from_blocks(&FlagVariety::gr35(), &[u, &[0, 0]]).unwrap()
}

fn total_check(id: String, group: &str, description: String, e: HomogeneousBundle, f: HomogeneousBundle) -> Result<VanishingCheck> {
    let model = TotalSpaceModel::xminus();
    let table = ext_table(&model, &BundleSum::single(e), &BundleSum::single(f), Cutoff::Auto)?;
    Ok(VanishingCheck {
        id,
        group: group.to_string(),
        description,
        pass: !table.any_higher_cohomology(),
        outcome: VanishingOutcome::TotalSpace(table),
    })
}

fn base_check(id: String, description: String, e: HomogeneousBundle, f: HomogeneousBundle) -> Result<VanishingCheck> {
    let dims = ext_on_base(&BundleSum::single(e), &BundleSum::single(f))?;
    Ok(VanishingCheck {
        id,
        group: "gr35-semiorthogonality".into(),
        description,
        pass: dims.is_empty(),
        outcome: VanishingOutcome::Base(dims),
    })
}

/// The Borel–Weil–Bott steps behind the minus-side tilting argument:
/// higher-cohomology vanishing on `X₋` for line bundles, `U_2^∨` twists and
/// `Sym^2 U_2^∨` pairings, and full Ext vanishing between pairs of the
/// `Gr(3,5)` exceptional collection used as endpoints.
pub fn vanishing_suite() -> Result<Vec<VanishingCheck>> {
    let mut out = Vec::new();
    let o = gr25(&[0, 0], &[0, 0, 0]);
    for k in 0..=4 {
        out.push(total_check(
            format!("line-bundles/O(-{k})"),
            "line-bundles",
            format!("H^>0(X-, O(-{k})) = 0"),
            o.clone(),
            gr25(&[0, 0], &[k, k, k]),
        )?);
    }
    for k in 0..=2 {
        out.push(total_check(
            format!("tautological/U2v(-{k})"),
            "tautological",
            format!("H^>0(X-, U2^v(-{k})) = 0"),
            o.clone(),
            gr25(&[1 - k, -k], &[0, 0, 0]),
        )?);
    }
    let u2v = gr25(&[1, 0], &[0, 0, 0]);
    for a in 0..=2 {
        out.push(total_check(
            format!("u-sym2/Ext(U2v,Sym2U2v({a}))"),
            "u-sym2",
            format!("Ext^>0(U2^v, Sym^2 U2^v({a})) = 0 on X-"),
            u2v.clone(),
            gr25(&[2 + a, a], &[0, 0, 0]),
        )?);
    }
    let s2 = gr25(&[2, 0], &[0, 0, 0]);
    out.push(total_check(
        "sym2-sym2/Sym2U2*Sym2U2v".into(),
        "sym2-sym2",
        "H^>0(X-, Sym^2 U2 ⊗ Sym^2 U2^v) = 0".into(),
        s2.clone(),
        s2,
    )?);
    let endpoints: [(&str, &[i64], &str, &[i64]); 7] = [
        ("U3v(1)", &[2, 1, 1], "O(-1)", &[-1, -1, -1]),
        ("U3v(1)", &[2, 1, 1], "O", &[0, 0, 0]),
        ("U3v(1)", &[2, 1, 1], "U3v(-1)", &[0, -1, -1]),
        ("O(2)", &[2, 2, 2], "Sym2U3v(-1)", &[1, -1, -1]),
        ("O(3)", &[3, 3, 3], "U3v", &[1, 0, 0]),
        ("U3v(1)", &[2, 1, 1], "Sym2U3v(-1)", &[1, -1, -1]),
        ("U3(2)", &[2, 2, 1], "Sym2U3v(-1)", &[1, -1, -1]),
    ];
    for (en, e, fname, f) in endpoints {
        out.push(base_check(
            format!("gr35/RHom({en},{fname})"),
            format!("Ext^*(Gr(3,5); {en}, {fname}) = 0"),
            gr35(e),
            gr35(f),
        )?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> IntegerWeight {
        IntegerWeight::new(v.to_vec()).unwrap()
    }

    fn piece_sums(f: &FilteredBundle) -> Vec<BundleSum> {
        f.pieces.iter().map(|p| p.sum.clone()).collect()
    }

    fn one(u: &[i64]) -> BundleSum {
        BundleSum::single(gr25(u, &[0, 0, 0]))
    }

    #[test]
    fn schur_of_p() {
        let p = FilteredBundle::p();
        assert_eq!(piece_sums(&schur_filtered(&w(&[1, 0, 0]), &p).unwrap()), vec![one(&[-2, -2]), one(&[1, 0])]);
        assert_eq!(piece_sums(&schur_filtered(&w(&[1, 1, 0]), &p).unwrap()), vec![one(&[-1, -2]), one(&[1, 1])]);
        assert_eq!(
            piece_sums(&schur_filtered(&w(&[2, 0, 0]), &p).unwrap()),
            vec![one(&[-4, -4]), one(&[-1, -2]), one(&[2, 0])]
        );
        let det = schur_filtered(&w(&[1, 1, 1]), &p).unwrap();
        assert_eq!(piece_sums(&det), vec![one(&[-1, -1])]);
        assert_eq!(det.pieces[0].fiber_weight, -1);
    }

    #[test]
    fn schur_ranks() {
        let p = FilteredBundle::p();
        for chi in crate::partitions::weights_in_box(3, -3, 3) {
            let s = schur_filtered(&chi, &p).unwrap();
            assert_eq!(s.rank(), crate::partitions::weyl_dim(&chi, 3).unwrap(), "{chi}");
        }
    }

    #[test]
    fn schur_rejects_bad_shapes() {
        let g = FlagVariety::gr25();
        let bad = FilteredBundle::unfiltered("O", BundleSum::single(g.structure_sheaf()));
        assert!(schur_filtered(&w(&[1, 0, 0]), &bad).is_err());
        assert!(schur_filtered(&w(&[1, 0]), &FilteredBundle::p()).is_err());
    }

    #[test]
    fn dual_reverses() {
        let p = FilteredBundle::p();
        let d = p.dual();
        assert_eq!(piece_sums(&d), vec![one(&[0, -1]), one(&[2, 2])]);
        assert_eq!(d.dual().pieces, p.pieces);
    }

    #[test]
    fn euler_of_structure_sheaf() {
        let m = TotalSpaceModel::xminus();
        let o = FilteredBundle::unfiltered("O", BundleSum::single(FlagVariety::gr25().structure_sheaf()));
        let e = graded_euler(&m, std::slice::from_ref(&o), std::slice::from_ref(&o), 2).unwrap();
        assert_eq!(e.values[&0], BigInt::one());
    }

    #[test]
    fn euler_refinement_invariance() {
        let m = TotalSpaceModel::xminus();
        let s = minus_window_bundle(&[w(&[2, 0, 0]), w(&[1, 1, 0]), w(&[2, 1, 1])]).unwrap();
        let refined: Vec<_> = s.iter().map(|f| f.refine()).collect();
        assert_eq!(graded_euler(&m, &s, &s, 3).unwrap(), graded_euler(&m, &refined, &refined, 3).unwrap());
    }

    #[test]
    fn suite_passes() {
        let suite = vanishing_suite().unwrap();
        assert_eq!(suite.len(), 5 + 3 + 3 + 1 + 7);
        for c in &suite {
            assert!(c.pass, "{}", c.id);
        }
    }
}
