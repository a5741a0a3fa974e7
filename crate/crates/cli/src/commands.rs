use std::fmt::Write as _;
use std::path::Path;

use num_bigint::Sign;
use serde_json::json;

use flopcheck_core::builtin::Builtins;
use flopcheck_core::collections::{check_exceptional, verify_resolution_ktheory, ExceptionalCollection};
use flopcheck_core::literal::{parse_bundle, parse_sets, BundleSet};
use flopcheck_core::minus_side::{compare_euler, plus_window_bundle, Star};
use flopcheck_core::partitions::{lr_mult, weyl_dim};
use flopcheck_core::report::{self, encode, Report, Status};
use flopcheck_core::total_space::{ext_table, is_pretilting, Cutoff, TotalSpaceModel};
use flopcheck_core::windows::{hl_enumerate, hl_membership, kn_adapted, ConeProblem, CoordinateWeight, HlWindow, KnSolution, Side};
use flopcheck_core::{Cohomology, Error, IntegerWeight, Result};

use crate::{BwbCommand, CollectionsCommand, Command, EulerCommand, KnCommand, LrCommand, SuiteCommand, TiltingCommand, WeylCommand, WindowsCommand};

pub struct Outcome {
    pub report: Report,
    pub text: String,
    /// Queries exit 0 whatever they find.
    pub query: bool,
}

fn query(report: Report, text: String) -> Result<Outcome> {
    Ok(Outcome { report, text, query: true })
}

fn check(report: Report, mut text: String) -> Result<Outcome> {
    let s = &report.summary;
    let _ = writeln!(text, "{} checks: {} pass, {} fail", s.total, s.pass, s.fail);
    Ok(Outcome { report, text, query: false })
}

fn ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("expected comma-separated integers, got {s:?}"))))
        .collect()
}

fn triple(s: &str) -> Result<[i64; 3]> {
    ints(s)?.try_into().map_err(|_| Error::Parse(format!("expected three integers, got {s:?}")))
}

fn weight(s: &str) -> Result<IntegerWeight> {
    if s.trim().is_empty() {
        return Ok(IntegerWeight::zero(0));
    }
    IntegerWeight::new(ints(s)?)
}

fn load_set(path: &Path, name: &str) -> Result<BundleSet> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_sets(&text)?
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownName(format!("set {name} in {}", path.display())))
}

fn twists(s: &str) -> Result<Vec<i64>> {
    if let Some((a, b)) = s.split_once("..") {
        let parse = |x: &str| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad twist range {s:?}")));
        let (a, b) = (parse(a)?, parse(b)?);
        if a > b {
            return Err(Error::Parse(format!("empty twist range {s:?}")));
        }
        return Ok((a..=b).collect());
    }
    ints(s)
}

fn status_lines(report: &Report) -> String {
    let mut text = String::new();
    for c in &report.checks {
        let tag = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Info => "info",
        };
        let _ = writeln!(text, "[{tag}] {}", c.id);
    }
    text
}

fn cohomology_text(c: &Cohomology) -> String {
    match c {
        Cohomology::Acyclic => "Acyclic".to_string(),
        Cohomology::Nonzero { degree, weight, dim } => format!("H^{degree} = V({weight}), dim {dim}"),
    }
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Lr(LrCommand::Mult { lam, mu }) => {
            let (l, m) = (weight(lam)?, weight(mu)?);
            let product = lr_mult(&l, &m)?;
            let mut text = String::new();
            let mut terms = Vec::new();
            for (nu, c) in product.iter() {
                let _ = writeln!(text, "{c} x {nu}");
                terms.push(json!({ "weight": nu, "mult": encode::biguint(c) }));
            }
            let mut r = Report::new(json!({ "command": "lr mult", "lam": l, "mu": m }));
            r.push("lr/mult", Status::Info, json!({ "terms": terms }));
            query(r, text)
        }
        Command::Weyl(WeylCommand::Dim { weight: w, m }) => {
            let lam = weight(w)?;
            let m = m.unwrap_or(lam.len());
            let d = weyl_dim(&lam, m)?;
            let mut r = Report::new(json!({ "command": "weyl dim", "weight": lam, "m": m }));
            r.push("weyl/dim", Status::Info, json!({ "dim": encode::biguint(&d) }));
            query(r, format!("{d}\n"))
        }
        Command::Bwb(BwbCommand::Cohom { literal }) => {
            let text = literal.join(" ");
            let b = parse_bundle(&text)?;
            let c = b.bwb();
            let mut r = Report::new(json!({ "command": "bwb cohom", "bundle": b.to_string() }));
            r.push("bwb/cohom", Status::Info, encode::cohomology(&c));
            query(r, format!("{}\n", cohomology_text(&c)))
        }
        Command::ExtTotal(a) => {
            let model = TotalSpaceModel::by_name(&a.model)?;
            let cutoff: Cutoff = a.cutoff.parse()?;
            let left = load_set(&a.source.sets, &a.left)?;
            let right = load_set(&a.source.sets, &a.right)?;
            let table = ext_table(&model, &left.to_sum(), &right.to_sum(), cutoff)?;
            let mut text = String::new();
            if let Some(c) = &table.certificate {
                let binding = c.binding_summand.as_ref().map(|b| b.to_string()).unwrap_or_else(|| "none".into());
                let _ = writeln!(text, "certified cutoff l0 = {} (max gap {}, rate {}, binding {binding})", c.l0, c.max_gap, c.rate);
            }
            for (l, dims) in table.matrix().iter().enumerate() {
                let cells: Vec<String> = dims.iter().map(|(d, v)| format!("Ext^{d} = {v}")).collect();
                let _ = writeln!(text, "l = {l}: {}", if cells.is_empty() { "0".into() } else { cells.join(", ") });
            }
            let mut r = Report::new(json!({
                "command": "ext-total",
                "model": model.name(),
                "left": left.name,
                "right": right.name,
                "cutoff": a.cutoff,
            }));
            r.push("ext-total", Status::Info, encode::ext_table(&table));
            query(r, text)
        }
        Command::Tilting(TiltingCommand::Check { model, window, sets, set }) => {
            let model = TotalSpaceModel::by_name(model)?;
            let (label, sum) = match (window, sets, set) {
                (Some(w), _, _) => {
                    if model.base() != &flopcheck_core::FlagVariety::gr35() {
                        return Err(Error::Parse(format!("built-in windows live on gr(3,5); model {} has base {}", model.name(), model.base())));
                    }
                    let b = Builtins::load()?;
                    let sum = if w == "kapranov" { b.kapranov_sum()? } else { plus_window_bundle(b.window(w.parse::<Star>()?))? };
                    (w.clone(), sum)
                }
                (None, Some(path), Some(name)) => (name.clone(), load_set(path, name)?.to_sum()),
                _ => return Err(Error::Parse("give --window or --sets with --set".into())),
            };
            let p = is_pretilting(&model, &sum)?;
            let mut r = Report::new(json!({ "command": "tilting check", "model": model.name(), "bundle": label }));
            r.push(format!("tilting/{}/{label}", model.name()), Status::from_pass(p.ok), encode::pretilting(&p));
            let mut text = format!("{label} on {}: {}\n", model.name(), if p.ok { "pretilting" } else { "NOT pretilting" });
            if let Some(c) = &p.table.certificate {
                let _ = writeln!(text, "rows 0..={} checked (certified cutoff)", c.l0);
            }
            for wit in &p.witnesses {
                let _ = writeln!(text, "  l = {}: Ext^{} = {} from {}", wit.l, wit.degree, wit.dim, wit.summand);
            }
            check(r, text)
        }
        Command::Suite(SuiteCommand::MinusVanishing) => {
            let mut r = Report::new(json!({ "command": "suite minus-vanishing" }));
            report::verify_vanishing(&mut r)?;
            let text = status_lines(&r);
            check(r, text)
        }
        Command::Euler(EulerCommand::Compare { star, max_l }) => {
            let star: Star = star.parse()?;
            let b = Builtins::load()?;
            let c = compare_euler(b.window(star), *max_l)?;
            let mut text = format!("{star}: graded Euler characteristic of End(T)\n   l        plus       minus\n");
            for (l, p) in &c.plus {
                let m = c.minus.get(l).map(|x| x.to_string()).unwrap_or_default();
                let _ = writeln!(text, "{l:>4} {p:>11} {m:>11}");
            }
            if !c.plus_higher_vanish {
                text.push_str("plus side has higher Ext, so chi is not the Hom dimension there\n");
            }
            let mut r = Report::new(json!({ "command": "euler compare", "star": star, "max_l": max_l }));
            r.push(format!("euler/{star}"), Status::from_pass(c.pass()), encode::euler(&c));
            check(r, text)
        }
        Command::Windows(WindowsCommand::Enumerate { side, w }) => {
            let p = HlWindow { w: triple(w)?, side: side.parse()? };
            let set = hl_enumerate(&p);
            let mut text = String::new();
            for chi in &set {
                let _ = writeln!(text, "{chi}");
            }
            let _ = writeln!(text, "{} weights", set.len());
            let mut r = Report::new(json!({ "command": "windows enumerate", "side": p.side, "w": p.w }));
            r.push("windows/enumerate", Status::Info, json!({ "weights": set, "count": set.len() }));
            query(r, text)
        }
        Command::Windows(WindowsCommand::Member { chi, side, w }) => {
            let p = HlWindow { w: triple(w)?, side: side.parse()? };
            let chi = weight(chi)?;
            let m = hl_membership(&chi, &p)?;
            let mut text = format!("{chi}: {}\n", if m.member { "member" } else { "not a member" });
            for f in &m.failed {
                let _ = writeln!(text, "  condition ({}) value {} not in [{}, {})", f.condition, f.value, f.lo, f.hi);
            }
            let mut r = Report::new(json!({ "command": "windows member", "chi": chi, "side": p.side, "w": p.w }));
            r.push("windows/member", Status::Info, serde_json::to_value(&m).expect("plain data"));
            query(r, text)
        }
        Command::Kn(KnCommand::Solve { character, support }) => {
            let r_vec = match character.as_str() {
                "plus" | "minus" => ConeProblem::side_character(character.parse::<Side>()?),
                other => triple(other)?,
            };
            let cons = support.split(',').map(|s| s.trim().parse::<CoordinateWeight>()).collect::<Result<Vec<_>>>()?;
            let problem = ConeProblem::new(cons, r_vec);
            let sol = kn_adapted(&problem);
            let text = match &sol {
                KnSolution::Nonnegative => "semistable: no destabilizing direction\n".to_string(),
                KnSolution::Destabilizing { value_sq, minimizer } => {
                    format!("M^2 = {value_sq}, M = -sqrt({value_sq}), adapted weight ({},{},{})\n", minimizer[0], minimizer[1], minimizer[2])
                }
            };
            let mut r = Report::new(json!({
                "command": "kn solve",
                "character": r_vec,
                "support": problem.constraints.iter().map(|c| c.name()).collect::<Vec<_>>(),
            }));
            r.push("kn/solve", Status::Info, encode::kn(&sol));
            query(r, text)
        }
        Command::Kn(KnCommand::Strata { side }) => {
            let side: Side = side.parse()?;
            let b = Builtins::load()?;
            let mut r = Report::new(json!({ "command": "kn strata", "side": side }));
            let mut text = String::new();
            for s in b.strata(side, false) {
                let [a, c, d] = s.weight;
                let _ = writeln!(
                    text,
                    "M^2 = {:<5} weight ({a},{c},{d}) {}{}",
                    s.value_sq.to_string(),
                    s.description,
                    if s.group_level { "" } else { " [torus only]" }
                );
                r.push(
                    format!("kn/{side}/{a},{c},{d}"),
                    Status::from_pass(s.validate()),
                    json!({ "description": s.description, "value_sq": encode::fraction(&s.value_sq), "solved": encode::kn(&kn_adapted(&s.problem)) }),
                );
            }
            text.push_str(&status_lines(&r));
            check(r, text)
        }
        Command::Collections(CollectionsCommand::Check { name, sets, set }) => {
            let b = Builtins::load()?;
            let mut r = Report::new(json!({ "command": "collections check", "name": name, "set": set }));
            match (name, sets, set) {
                (None, None, None) => report::verify_collections(&b, &mut r)?,
                (Some(n), _, _) => {
                    let c = if n == "negative-control" { report::negative_control()? } else { b.collection(n)?.clone() };
                    push_collection(&mut r, &c, n == "negative-control")?;
                }
                (None, Some(path), Some(s)) => {
                    let set = load_set(path, s)?;
                    let c = ExceptionalCollection::new(&set.name, set.entries)?;
                    push_collection(&mut r, &c, false)?;
                }
                _ => return Err(Error::Parse("give --name, or --sets with --set".into())),
            }
            let mut text = String::new();
            for c in &r.checks {
                let p = &c.payload;
                let _ = writeln!(
                    text,
                    "[{}] {}: {} objects (K0 rank {}), violations: exceptional {}, semiorthogonal {}, strong {}",
                    if c.status == Status::Pass { "pass" } else { "FAIL" },
                    c.id,
                    p["objects"],
                    p["expected_k0_rank"],
                    p["exceptional"].as_array().map_or(0, Vec::len),
                    p["semiorthogonal"].as_array().map_or(0, Vec::len),
                    p["strong"].as_array().map_or(0, Vec::len),
                );
            }
            check(r, text)
        }
        Command::Collections(CollectionsCommand::Resolve { name, twists: t }) => {
            let b = Builtins::load()?;
            let ts = twists(t)?;
            let seqs: Vec<_> = match name {
                Some(n) => vec![b.sequence(n)?.clone()],
                None => b.sequences.iter().map(|s| s.sequence.clone()).collect(),
            };
            let mut r = Report::new(json!({ "command": "collections resolve", "name": name, "twists": ts }));
            let mut text = String::new();
            for s in &seqs {
                let rep = verify_resolution_ktheory(s, &ts)?;
                let _ = writeln!(text, "{}: ranks {} (alternating sum {})", rep.name, rep.ranks.join(", "), rep.rank_sum);
                for tc in &rep.twists {
                    let dims: Vec<String> =
                        tc.signed_dims.iter().filter(|(_, v)| v.sign() != Sign::NoSign).map(|(d, v)| format!("H^{d}: {v}")).collect();
                    let mut line = format!("  t = {:>2}: euler {}", tc.twist, tc.euler);
                    if !dims.is_empty() {
                        let _ = write!(line, ", per-degree sums nonzero: {}", dims.join(", "));
                    }
                    let _ = writeln!(text, "{line}");
                }
                r.push(format!("resolutions/{}", rep.name), Status::from_pass(rep.pass()), encode::resolution(&rep));
            }
            check(r, text)
        }
        Command::VerifyAll => {
            let b = Builtins::load()?;
            let r = report::verify_all(&b)?;
            let text = status_lines(&r);
            check(r, text)
        }
    }
}

fn push_collection(r: &mut Report, c: &ExceptionalCollection, expect_failure: bool) -> Result<()> {
    let rep = check_exceptional(c)?;
    let ok = if expect_failure { !rep.pass() } else { rep.pass() };
    let mut payload = encode::collection(c, &rep);
    if expect_failure {
        payload["expected_failure"] = json!(true);
    }
    r.push(format!("collections/{}", c.name), Status::from_pass(ok), payload);
    Ok(())
}

