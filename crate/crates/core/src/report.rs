//! Machine-readable reports and the full verification run.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::builtin::Builtins;
use crate::collections::{check_exceptional, verify_resolution_ktheory, CollectionReport, ExceptionalCollection, ResolutionReport};
use crate::error::Result;
use crate::homog::{Cohomology, FlagVariety, HomogeneousBundle};
use crate::minus_side::{compare_euler, plus_window_bundle, vanishing_suite, EulerComparison, Star, VanishingOutcome};
use crate::total_space::{is_pretilting, ExtTable, PretiltingReport, TotalSpaceModel};
use crate::windows::{hl_enumerate, kn_adapted, HlWindow, KnSolution, Side, Stratum};

pub const TOOL: &str = "flopcheck";
pub const SCHEMA_VERSION: u32 = 1;
/// JSON schema for [`Report`], shipped with the crate.
pub const REPORT_SCHEMA: &str = include_str!("../data/report.schema.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    pub fn from_pass(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub payload: Value,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub info: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub schema_version: u32,
    pub input: Value,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(input: Value) -> Self {
        Report {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            schema_version: SCHEMA_VERSION,
            input,
            checks: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, id: impl Into<String>, status: Status, payload: Value) {
        match status {
            Status::Pass => self.summary.pass += 1,
            Status::Fail => self.summary.fail += 1,
            Status::Info => self.summary.info += 1,
        }
        self.summary.total += 1;
        self.checks.push(CheckRecord { id: id.into(), status, payload });
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is plain JSON");
        s.push('\n');
        s
    }
}

/// JSON encodings shared by the report payloads.
pub mod encode {
    use super::*;

    fn big_int(v: &BigInt) -> Value {
        match v.to_i64() {
            Some(x) => json!(x),
            None => json!(v.to_string()),
        }
    }

    pub fn biguint(v: &BigUint) -> Value {
        match v.to_u64() {
            Some(x) => json!(x),
            None => json!(v.to_string()),
        }
    }

    pub fn bigint(v: &BigInt) -> Value {
        big_int(v)
    }

    pub fn fraction(v: &BigRational) -> Value {
        json!({ "num": big_int(v.numer()), "den": big_int(v.denom()) })
    }

    pub fn bundle(b: &HomogeneousBundle) -> Value {
        json!(b.to_string())
    }

    pub fn cohomology(c: &Cohomology) -> Value {
        serde_json::to_value(c).expect("cohomology is plain JSON")
    }

    /// `[{degree, dim}]` in increasing degree.
    pub fn degrees(m: &BTreeMap<usize, BigUint>) -> Value {
        Value::Array(m.iter().map(|(d, v)| json!({ "degree": d, "dim": biguint(v) })).collect())
    }

    pub fn signed_degrees(m: &BTreeMap<usize, BigInt>) -> Value {
        Value::Array(m.iter().map(|(d, v)| json!({ "degree": d, "value": big_int(v) })).collect())
    }

    pub fn levels(m: &BTreeMap<u32, BigInt>) -> Value {
        Value::Array(m.iter().map(|(l, v)| json!({ "l": l, "value": big_int(v) })).collect())
    }

    pub fn ext_table(t: &ExtTable) -> Value {
        json!({
            "model": t.model,
            "cutoff": t.cutoff,
            "certificate": t.certificate.as_ref().map(|c| json!({
                "l0": c.l0,
                "max_gap": c.max_gap,
                "rate": c.rate,
                "binding_summand": c.binding_summand.as_ref().map(bundle),
            })),
            "rows": t.rows.iter().map(|r| json!({ "l": r.l, "dims": degrees(&r.dims_by_degree()) })).collect::<Vec<_>>(),
        })
    }

    pub fn pretilting(r: &PretiltingReport) -> Value {
        json!({
            "ok": r.ok,
            "witnesses": r.witnesses.iter().map(|w| json!({
                "l": w.l,
                "summand": bundle(&w.summand),
                "degree": w.degree,
                "dim": biguint(&w.dim),
            })).collect::<Vec<_>>(),
            "table": ext_table(&r.table),
        })
    }

    pub fn collection(c: &ExceptionalCollection, r: &CollectionReport) -> Value {
        let mut v = serde_json::to_value(r).expect("collection report is plain JSON");
        v["space"] = json!(c.space.to_string());
        v["object_literals"] = json!(c.objects.iter().map(|o| o.to_string()).collect::<Vec<_>>());
        v
    }

    pub fn resolution(r: &ResolutionReport) -> Value {
        json!({
            "name": r.name,
            "ranks": r.ranks,
            "rank_sum": big_int(&r.rank_sum),
            "per_degree_pass": r.pass(),
            "euler_pass": r.euler_pass(),
            "twists": r.twists.iter().map(|t| json!({
                "twist": t.twist,
                "signed_dims": signed_degrees(&t.signed_dims),
                "euler": big_int(&t.euler),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn kn(s: &KnSolution) -> Value {
        match s {
            KnSolution::Nonnegative => json!({ "kind": "nonnegative" }),
            KnSolution::Destabilizing { value_sq, minimizer } => {
                json!({ "kind": "destabilizing", "value_sq": fraction(value_sq), "minimizer": minimizer })
            }
        }
    }

    pub fn euler(c: &EulerComparison) -> Value {
        json!({
            "plus": levels(&c.plus),
            "minus": levels(&c.minus),
            "plus_higher_vanish": c.plus_higher_vanish,
            "mismatches": c.mismatches(),
        })
    }
}

/// Twists used for the resolution checks.
pub const RESOLUTION_TWISTS: std::ops::RangeInclusive<i64> = -3..=3;
/// Highest level compared between the two sides.
pub const EULER_MAX_L: u32 = 8;
/// Half-width of the box of minus-side windows scanned for the size bound.
pub const SCAN_RADIUS: i64 = 10;
pub const MINUS_WINDOW_BOUND: usize = 6;

fn star_id(s: Star) -> &'static str {
    s.name()
}

pub fn verify_tilting(b: &Builtins, report: &mut Report) -> Result<()> {
    let model = TotalSpaceModel::xplus();
    let mut tables = BTreeMap::new();
    for star in Star::ALL {
        let r = is_pretilting(&model, &plus_window_bundle(b.window(star))?)?;
        report.push(format!("tilting/xplus/{}", star_id(star)), Status::from_pass(r.ok), encode::pretilting(&r));
        if star == Star::Spade {
            let l0 = r.table.certificate.as_ref().map(|c| c.l0);
            report.push(
                "tilting/xplus/spade/cutoff",
                Status::from_pass(l0 == Some(4)),
                json!({ "expected_l0": 4, "l0": l0 }),
            );
        }
        tables.insert(star, r.table.matrix());
    }
    for star in [Star::Spade, Star::Heart] {
        let dual = star.dual();
        let mut lhs: Vec<_> = b.window(star).iter().map(|w| w.dual()).collect();
        let mut rhs = b.window(dual).to_vec();
        lhs.sort();
        rhs.sort();
        let weights_dual = lhs == rhs;
        let tables_equal = tables[&star] == tables[&dual];
        report.push(
            format!("pairing/{}-{}", star_id(star), star_id(dual)),
            Status::from_pass(weights_dual && tables_equal),
            json!({ "weights_dual": weights_dual, "ext_tables_equal": tables_equal }),
        );
    }
    let r = is_pretilting(&model, &b.kapranov_sum()?)?;
    report.push("tilting/xplus/kapranov", Status::from_pass(r.ok), encode::pretilting(&r));
    Ok(())
}

pub fn verify_vanishing(report: &mut Report) -> Result<()> {
    for c in vanishing_suite()? {
        let outcome = match &c.outcome {
            VanishingOutcome::TotalSpace(t) => json!({ "total_space": encode::ext_table(t) }),
            VanishingOutcome::Base(d) => json!({ "base": encode::degrees(d) }),
        };
        report.push(
            format!("vanishing/{}", c.id),
            Status::from_pass(c.pass),
            json!({ "group": c.group, "description": c.description, "outcome": outcome }),
        );
    }
    Ok(())
}

/// `⟨O(5), O⟩` on `Gr(2,5)`: `Ext^6(O(5), O) = H^6(O(-5)) = ℂ`.
pub fn negative_control() -> Result<ExceptionalCollection> {
    let g = FlagVariety::gr25();
    ExceptionalCollection::new("negative-control", vec![g.line(5), g.structure_sheaf()])
}

pub fn verify_collections(b: &Builtins, report: &mut Report) -> Result<()> {
    for c in &b.collections {
        let r = check_exceptional(&c.collection)?;
        let mut payload = encode::collection(&c.collection, &r);
        payload["note"] = json!(c.note);
        report.push(format!("collections/{}", c.collection.name), Status::from_pass(r.pass()), payload);
    }
    let c = negative_control()?;
    let r = check_exceptional(&c)?;
    let ext6 = r.strong.iter().any(|v| v.from == 0 && v.to == 1 && v.degree == 6 && v.dim == BigUint::from(1u32));
    let expected = !r.pass() && !r.semiorthogonal.is_empty() && ext6;
    let mut payload = encode::collection(&c, &r);
    payload["expected_failure"] = json!(true);
    payload["ext6_witness"] = json!(ext6);
    report.push("collections/negative-control", Status::from_pass(expected), payload);
    Ok(())
}

pub fn verify_resolutions(b: &Builtins, report: &mut Report) -> Result<()> {
    let twists: Vec<i64> = RESOLUTION_TWISTS.collect();
    for s in &b.sequences {
        let r = verify_resolution_ktheory(&s.sequence, &twists)?;
        let mut payload = encode::resolution(&r);
        payload["note"] = json!(s.note);
        report.push(format!("resolutions/{}", s.sequence.name), Status::from_pass(r.pass()), payload);
    }
    Ok(())
}

/// Largest minus-side window over `w ∈ [-r, r]^3`, with one window attaining it.
pub fn minus_window_scan(radius: i64) -> (usize, [i64; 3], usize) {
    use rayon::prelude::*;
    let ws: Vec<[i64; 3]> = (-radius..=radius)
        .flat_map(|a| (-radius..=radius).flat_map(move |b| (-radius..=radius).map(move |c| [a, b, c])))
        .collect();
    let (size, w) = ws
        .par_iter()
        .map(|&w| (hl_enumerate(&HlWindow { w, side: Side::Minus }).len(), w))
        .reduce(|| (0, [radius + 1; 3]), |x, y| if (y.0, std::cmp::Reverse(y.1)) > (x.0, std::cmp::Reverse(x.1)) { y } else { x });
    (size, w, ws.len())
}

pub fn verify_windows(b: &Builtins, report: &mut Report) {
    for ex in &b.hl_examples {
        let got = hl_enumerate(&ex.window);
        let expected: std::collections::BTreeSet<_> = ex.expected.iter().cloned().collect();
        let [w0, w1, w2] = ex.window.w;
        report.push(
            format!("windows/{}/{w0},{w1},{w2}", ex.window.side),
            Status::from_pass(got == expected && got.len() == ex.expected.len()),
            json!({ "note": ex.note, "expected": ex.expected, "enumerated": got }),
        );
    }
    let (size, w, count) = minus_window_scan(SCAN_RADIUS);
    report.push(
        "windows/minus/size-bound",
        Status::from_pass(size <= MINUS_WINDOW_BOUND),
        json!({ "radius": SCAN_RADIUS, "windows": count, "bound": MINUS_WINDOW_BOUND, "max": size, "attained_at": w }),
    );
}

fn stratum_payload(s: &Stratum, solved: &KnSolution) -> Value {
    json!({
        "description": s.description,
        "constraints": s.problem.constraints.iter().map(|c| c.name()).collect::<Vec<_>>(),
        "character": s.problem.character,
        "expected": { "value_sq": encode::fraction(&s.value_sq), "minimizer": s.weight },
        "solved": encode::kn(solved),
        "group_level": s.group_level,
    })
}

pub fn verify_strata(b: &Builtins, report: &mut Report) {
    for side in [Side::Plus, Side::Minus] {
        for s in b.strata(side, false) {
            let solved = kn_adapted(&s.problem);
            let [a, c, d] = s.weight;
            report.push(format!("kn/{side}/{a},{c},{d}"), Status::from_pass(s.validate()), stratum_payload(s, &solved));
        }
    }
}

pub fn verify_euler(b: &Builtins, report: &mut Report) -> Result<()> {
    for star in Star::ALL {
        let c = compare_euler(b.window(star), EULER_MAX_L)?;
        report.push(format!("euler/{}", star_id(star)), Status::from_pass(c.pass()), encode::euler(&c));
    }
    Ok(())
}

/// Every check over the built-in data, in a fixed order.
pub fn verify_all(b: &Builtins) -> Result<Report> {
    let mut report = Report::new(json!({
        "command": "verify-all",
        "data": "builtin",
        "resolution_twists": RESOLUTION_TWISTS.collect::<Vec<_>>(),
        "euler_max_l": EULER_MAX_L,
        "scan_radius": SCAN_RADIUS,
    }));
    verify_tilting(b, &mut report)?;
    verify_vanishing(&mut report)?;
    verify_collections(b, &mut report)?;
    verify_resolutions(b, &mut report)?;
    verify_windows(b, &mut report);
    verify_strata(b, &mut report);
    verify_euler(b, &mut report)?;
    Ok(report)
}

pub mod biguint_json {
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;
    use serde::{Deserialize, Deserializer, Serializer};

    /// Numbers that fit in `u64` are written as JSON numbers, larger ones as
    /// decimal strings.
    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        match v.to_u64() {
            Some(x) => s.serialize_u64(x),
            None => s.serialize_str(&v.to_string()),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(u64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(BigUint::from(x)),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
