//! Command dispatch. Every command yields an [`Outcome`]: an exit code, a
//! human-readable report and a JSON document.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use twistfloer_core::certify::{certify_casson_bleiler, CertificateReport};
use twistfloer_core::curvesys::{
    validate_acceptable, validate_strongly_acceptable, AcceptabilityReport, CurveSystem,
    Violation,
};
use twistfloer_core::exactalg::IntMatrix;
use twistfloer_core::floer::{
    cup_action_screen, euler_lefschetz_check, hf_ranks_acceptable, hf_ranks_strongly_acceptable,
    relative_cohomology_ranks, FloerError, FloerRanks,
};
use twistfloer_core::surface::{check_curves, cut_along, Subcomplex};
use twistfloer_core::twist::{
    arrangement_word, conjugator_word, lefschetz_number, reorder_moves, word_matrix, Forest,
    TwistWord,
};

use crate::instance::Instance;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub human: String,
    pub json: Value,
}

impl Outcome {
    pub fn input_error(command: &str, message: impl Into<String>) -> Self {
        let message = message.into();
        Self {
            code: EXIT_INPUT,
            human: format!("input error: {message}\n"),
            json: json!({ "command": command, "status": "input_error", "error": message }),
        }
    }

    fn new(command: &str, code: i32, human: String, mut body: Value) -> Self {
        let status = match code {
            EXIT_OK => "ok",
            EXIT_FAILED => "failed",
            _ => "input_error",
        };
        if let Value::Object(m) = &mut body {
            m.insert("command".into(), json!(command));
            m.insert("status".into(), json!(status));
        }
        Self {
            code,
            human,
            json: body,
        }
    }
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn int_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn write_matrix(out: &mut String, m: &IntMatrix) {
    for line in m.to_string().lines() {
        let _ = writeln!(out, "  {line}");
    }
}

fn write_report(out: &mut String, title: &str, r: &AcceptabilityReport) {
    let _ = writeln!(
        out,
        "{title}: {}",
        if r.passed { "passed" } else { "FAILED" }
    );
    for m in r.messages() {
        let _ = writeln!(out, "  - {m}");
    }
    if let Some(c) = &r.caveat {
        let _ = writeln!(out, "  note: {c}");
    }
}

/// Crossing pairs of the map curves must match the declared pairs.
fn geometric_check(inst: &Instance) -> Option<Result<Vec<String>, String>> {
    let map = inst.map.as_ref()?;
    let cycles = Instance::cycles(&inst.all)?;
    let layout = match check_curves(map, &cycles) {
        Ok(l) => l,
        Err(e) => return Some(Err(e.to_string())),
    };
    let names: Vec<&str> = inst.all.curves().iter().map(|c| c.name.as_str()).collect();
    let mut problems = Vec::new();
    for &(i, j, v) in &layout.crossings {
        if !inst.all.is_listed(i, j) {
            problems.push(format!(
                "curves '{}' and '{}' cross at vertex {v} on the map but are not listed",
                names[i], names[j]
            ));
        }
    }
    for (i, j) in inst.all.graph_edges() {
        let (a, b) = (i.min(j), i.max(j));
        if !layout.crossings.iter().any(|&(x, y, _)| (x, y) == (a, b)) {
            problems.push(format!(
                "curves '{}' and '{}' are listed but do not cross on the map",
                names[a], names[b]
            ));
        }
    }
    Some(Ok(problems))
}

pub fn validate(inst: &Instance) -> Outcome {
    let mut human = String::new();
    let strong = !inst.negative.is_empty();
    let mut report = if strong {
        match validate_strongly_acceptable(&inst.positive, &inst.negative) {
            Ok(r) => r,
            Err(e) => return Outcome::input_error("validate", e.to_string()),
        }
    } else {
        validate_acceptable(&inst.positive)
    };
    for p in &inst.cross_pairs {
        report.push(Violation::DeclaredCrossIntersection {
            positive: p.first.clone(),
            negative: p.second.clone(),
        });
    }
    let title = if strong {
        "strongly acceptable"
    } else {
        "acceptable"
    };
    write_report(&mut human, title, &report);
    let mut passed = report.passed;
    let geometry = match geometric_check(inst) {
        None => Value::Null,
        Some(Err(e)) => return Outcome::input_error("validate", format!("map curves: {e}")),
        Some(Ok(problems)) => {
            let _ = writeln!(
                human,
                "map curves: {}",
                if problems.is_empty() {
                    "consistent"
                } else {
                    "INCONSISTENT"
                }
            );
            for p in &problems {
                let _ = writeln!(human, "  - {p}");
            }
            passed &= problems.is_empty();
            json!({ "consistent": problems.is_empty(), "problems": problems })
        }
    };
    if let Some(w) = inst.surface.warning() {
        let _ = writeln!(human, "warning: {w}");
    }
    let body = json!({
        "setting": if strong { "strongly_acceptable" } else { "acceptable" },
        "passed": passed,
        "report": to_json(&report),
        "map_curves": geometry,
    });
    Outcome::new(
        "validate",
        if passed { EXIT_OK } else { EXIT_FAILED },
        human,
        body,
    )
}

fn act_summary(word: &TwistWord, m: &IntMatrix, inst: &Instance) -> (String, Value) {
    let trace = m.trace().expect("square");
    let det = m.determinant().expect("square");
    let lefschetz = lefschetz_number(m).expect("square");
    let symplectic = m.preserves_form(&inst.surface.form()).expect("square");
    let mut human = String::new();
    let _ = writeln!(human, "word: {word}");
    let _ = writeln!(
        human,
        "basis: {}",
        inst.surface.basis_labels().join(", ")
    );
    let _ = writeln!(human, "matrix:");
    write_matrix(&mut human, m);
    let _ = writeln!(human, "trace: {trace}");
    let _ = writeln!(human, "determinant: {det}");
    let _ = writeln!(human, "lefschetz number: {lefschetz}");
    let _ = writeln!(human, "preserves J: {symplectic}");
    let body = json!({
        "word": to_json(word),
        "basis": inst.surface.basis_labels(),
        "matrix": to_json(m),
        "trace": int_json(&trace),
        "determinant": int_json(&det),
        "lefschetz": int_json(&lefschetz),
        "symplectic": symplectic,
    });
    (human, body)
}

pub fn act(inst: &Instance) -> Outcome {
    let word = inst.effective_word();
    let m = match word_matrix(&word, &inst.all) {
        Ok(m) => m,
        Err(e) => return Outcome::input_error("act", e.to_string()),
    };
    let (human, body) = act_summary(&word, &m, inst);
    Outcome::new("act", EXIT_OK, human, body)
}

fn certificate_text(r: &CertificateReport) -> String {
    let mut h = String::new();
    let _ = writeln!(h, "charpoly: {}", r.charpoly);
    let _ = writeln!(h, "irreducible: {}", to_json(&r.irreducible).as_str().unwrap_or("?"));
    if let Some(w) = &r.witness {
        let _ = writeln!(h, "witness: {}", to_json(w));
    }
    let _ = writeln!(h, "cyclotomic factors: {:?}", r.cyclotomic_hits);
    let _ = writeln!(
        h,
        "power pattern n: {}{}",
        r.power_pattern_n,
        if r.power_pattern_degenerate {
            " (degenerate)"
        } else {
            ""
        }
    );
    let _ = writeln!(h, "preserves standard form: {}", r.standard_form);
    let _ = writeln!(h, "verdict: {}", r.verdict.as_str());
    let _ = writeln!(h, "note: {}", r.caveat);
    h
}

pub fn certify(inst: &Instance) -> Outcome {
    let m = match (&inst.matrix, &inst.word) {
        (Some(_), Some(_)) => {
            return Outcome::input_error(
                "certify",
                "give exactly one of 'matrix' or 'curves'+'word', not both",
            )
        }
        (Some(m), None) => m.clone(),
        (None, Some(w)) => match word_matrix(w, &inst.all) {
            Ok(m) => m,
            Err(e) => return Outcome::input_error("certify", e.to_string()),
        },
        (None, None) => {
            return Outcome::input_error("certify", "certify needs 'matrix' or 'curves'+'word'")
        }
    };
    let dim = inst.surface.dim();
    if m.rows() != dim || m.cols() != dim {
        return Outcome::input_error(
            "certify",
            format!(
                "matrix is {}x{}, genus {} needs {dim}x{dim}",
                m.rows(),
                m.cols(),
                inst.genus
            ),
        );
    }
    match certify_casson_bleiler(&m) {
        Ok(r) => {
            let human = certificate_text(&r);
            Outcome::new("certify", EXIT_OK, human, json!({ "certificate": to_json(&r) }))
        }
        // a matrix preserving no symplectic form is not a mapping-class action
        Err(e) => Outcome::input_error("certify", e.to_string()),
    }
}

fn ranks_line(label: &str, r: &FloerRanks) -> String {
    format!(
        "{label}: H0={} H1={} H2={}  (even {}, odd {}, euler {})\n",
        r.r0,
        r.r1,
        r.r2,
        r.even(),
        r.odd(),
        r.euler
    )
}

fn floer_error(e: FloerError) -> Outcome {
    match e {
        FloerError::NotAcceptable(_) | FloerError::SharedCell { .. } => {
            let msg = e.to_string();
            Outcome::new(
                "floer",
                EXIT_FAILED,
                format!("not computed: {msg}\n"),
                json!({ "error": msg }),
            )
        }
        other => Outcome::input_error("floer", other.to_string()),
    }
}

pub fn floer(inst: &Instance) -> Outcome {
    if inst.negative.is_empty() {
        floer_acceptable(inst)
    } else {
        floer_strong(inst)
    }
}

fn floer_acceptable(inst: &Instance) -> Outcome {
    let sys = &inst.positive;
    let ranks = match hf_ranks_acceptable(sys) {
        Ok(r) => r,
        Err(e) => return floer_error(e),
    };
    let mut human = ranks_line("HF ranks (closed form)", &ranks);
    let word = arrangement_word(
        &(0..sys.len()).collect::<Vec<_>>(),
        &sys.curves().iter().map(|c| c.name.clone()).collect::<Vec<_>>(),
    );
    let m = word_matrix(&word, sys).expect("names come from the system");
    let el = euler_lefschetz_check(sys, &ranks, &m);
    let _ = writeln!(
        human,
        "euler/lefschetz: graded euler {} | (2-2g)+(n-c) {} | 2-tr {}  -> {}",
        el.graded_euler,
        el.closed_form,
        el.lefschetz,
        if el.consistent { "consistent" } else { "MISMATCH" }
    );
    let cup = cup_action_screen(sys);
    let _ = writeln!(
        human,
        "H2 action: {}",
        if cup.h2_trivial {
            "trivial"
        } else {
            "possibly nontrivial"
        }
    );
    for c in &cup.h1 {
        let _ = writeln!(
            human,
            "  dual of {:<4} {}",
            c.dual_to,
            to_json(&c.status).as_str().unwrap_or("?")
        );
    }
    let mut ok = el.consistent;
    let cellular = match (&inst.map, Instance::cycles(sys)) {
        (Some(map), Some(cycles)) => {
            if let Err(e) = check_curves(map, &cycles) {
                return Outcome::input_error("floer", format!("map curves: {e}"));
            }
            let sub = Subcomplex::from_cycles(map, &cycles);
            match relative_cohomology_ranks(map, &sub) {
                Ok(r) => {
                    human.push_str(&ranks_line("HF ranks (cellular)", &r));
                    let agree = r == ranks;
                    let _ = writeln!(
                        human,
                        "tiers {}",
                        if agree { "agree" } else { "DISAGREE" }
                    );
                    ok &= agree;
                    json!({ "ranks": to_json(&r), "agree": agree })
                }
                Err(e) => return floer_error(e),
            }
        }
        _ => Value::Null,
    };
    let body = json!({
        "setting": "acceptable",
        "ranks": to_json(&ranks),
        "even": ranks.even(),
        "odd": ranks.odd(),
        "euler_lefschetz": to_json(&el),
        "cup_screen": to_json(&cup),
        "cellular": cellular,
    });
    Outcome::new(
        "floer",
        if ok { EXIT_OK } else { EXIT_FAILED },
        human,
        body,
    )
}

fn floer_strong(inst: &Instance) -> Outcome {
    let report = match validate_strongly_acceptable(&inst.positive, &inst.negative) {
        Ok(r) => r,
        Err(e) => return Outcome::input_error("floer", e.to_string()),
    };
    if !report.passed || !inst.cross_pairs.is_empty() {
        let mut human = String::new();
        write_report(&mut human, "strongly acceptable", &report);
        return Outcome::new(
            "floer",
            EXIT_FAILED,
            human,
            json!({ "report": to_json(&report) }),
        );
    }
    let (Some(map), Some(a), Some(b)) = (
        &inst.map,
        Instance::cycles(&inst.positive),
        Instance::cycles(&inst.negative),
    ) else {
        return Outcome::input_error(
            "floer",
            "strongly acceptable settings need 'map' and 'darts' on every curve",
        );
    };
    let ranks = match hf_ranks_strongly_acceptable(map, &a, &b) {
        Ok(r) => r,
        Err(e) => return floer_error(e),
    };
    let m = word_matrix(&inst.effective_word(), &inst.all).expect("resolved at parse time");
    let lefschetz = lefschetz_number(&m).expect("square");
    let consistent = BigInt::from(ranks.euler) == lefschetz;
    let mut human = ranks_line("HF ranks (cut complex)", &ranks);
    let _ = writeln!(
        human,
        "euler/lefschetz: graded euler {} | 2-tr {}  -> {}",
        ranks.euler,
        lefschetz,
        if consistent { "consistent" } else { "MISMATCH" }
    );
    let body = json!({
        "setting": "strongly_acceptable",
        "ranks": to_json(&ranks),
        "even": ranks.even(),
        "odd": ranks.odd(),
        "lefschetz": int_json(&lefschetz),
        "consistent": consistent,
    });
    Outcome::new(
        "floer",
        if consistent { EXIT_OK } else { EXIT_FAILED },
        human,
        body,
    )
}

/// Parses `--perm`: comma-separated curve names or 1-based indices.
pub fn parse_perm(sys: &CurveSystem, perm: &str) -> Result<Vec<usize>, String> {
    let out: Vec<usize> = perm
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|tok| {
            if let Some(i) = sys.index_of(tok) {
                return Ok(i);
            }
            match tok.parse::<usize>() {
                Ok(k) if (1..=sys.len()).contains(&k) => Ok(k - 1),
                _ => Err(format!("'{tok}' is neither a curve name nor an index 1..={}", sys.len())),
            }
        })
        .collect::<Result<_, _>>()?;
    let mut seen = vec![false; sys.len()];
    for &i in &out {
        if std::mem::replace(&mut seen[i], true) {
            return Err(format!("curve '{}' repeated in permutation", sys.curves()[i].name));
        }
    }
    if out.len() != sys.len() {
        return Err(format!(
            "permutation has {} entries, the system has {} curves",
            out.len(),
            sys.len()
        ));
    }
    Ok(out)
}

pub fn conjugate(inst: &Instance, perm: &str) -> Outcome {
    let sys = &inst.positive;
    let target = match parse_perm(sys, perm) {
        Ok(t) => t,
        Err(e) => return Outcome::input_error("conjugate", e),
    };
    let forest = match Forest::of_system(sys) {
        Ok(f) => f,
        Err(e) => {
            return Outcome::new(
                "conjugate",
                EXIT_FAILED,
                format!("not computed: {e}\n"),
                json!({ "error": e.to_string() }),
            )
        }
    };
    let start: Vec<usize> = (0..sys.len()).collect();
    let plan = match reorder_moves(&forest, &start, &target) {
        Ok(p) => p,
        Err(e) => return Outcome::input_error("conjugate", e.to_string()),
    };
    let names: Vec<String> = sys.curves().iter().map(|c| c.name.clone()).collect();
    let f = conjugator_word(&forest, &plan, &names).expect("search output is legal");
    let t_id = word_matrix(&arrangement_word(&start, &names), sys).expect("resolved");
    let t_pi = word_matrix(&arrangement_word(&target, &names), sys).expect("resolved");
    let fm = word_matrix(&f, sys).expect("resolved");
    let fi = word_matrix(&f.inverse(), sys).expect("resolved");
    let verified = t_pi == &(&fm * &t_id) * &fi;

    let mut human = String::new();
    let label = |arr: &[usize]| {
        arr.iter()
            .map(|&i| names[i].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(human, "start:  ({})", label(&start));
    let _ = writeln!(human, "target: ({})", label(&target));
    let _ = writeln!(human, "moves:");
    for (mv, after) in plan.moves.iter().zip(&plan.history[1..]) {
        let _ = writeln!(
            human,
            "  {} {}-{} -> ({})",
            to_json(&mv.kind).as_str().unwrap_or("?"),
            mv.positions.0 + 1,
            mv.positions.1 + 1,
            label(after)
        );
    }
    let _ = writeln!(human, "rotation: {}", plan.rotation);
    let _ = writeln!(human, "conjugator: {f}");
    let _ = writeln!(
        human,
        "T_pi = F T_id F^-1: {}",
        if verified { "verified" } else { "FAILED" }
    );
    let body = json!({
        "start": start.iter().map(|&i| &names[i]).collect::<Vec<_>>(),
        "target": target.iter().map(|&i| &names[i]).collect::<Vec<_>>(),
        "moves": to_json(&plan.moves),
        "history": plan.history.iter().map(|a| a.iter().map(|&i| &names[i]).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "rotation": plan.rotation,
        "conjugator": to_json(&f),
        "verified": verified,
    });
    Outcome::new(
        "conjugate",
        if verified { EXIT_OK } else { EXIT_FAILED },
        human,
        body,
    )
}

pub fn cut(inst: &Instance) -> Outcome {
    let Some(map) = &inst.map else {
        return Outcome::input_error("cut", "cut needs a 'map'");
    };
    let Some(cycles) = Instance::cycles(&inst.positive) else {
        return Outcome::input_error("cut", "every curve needs 'darts' to be cut along");
    };
    let r = match cut_along(map, &cycles) {
        Ok(r) => r,
        Err(e) => return Outcome::input_error("cut", e.to_string()),
    };
    let identity = r.chi_cut == r.chi_original - r.chi_curves;
    let mut human = String::new();
    let _ = writeln!(human, "curves cut: {}", cycles.len());
    let _ = writeln!(human, "chi(map): {}", r.chi_original);
    let _ = writeln!(human, "chi(curves): {}", r.chi_curves);
    let _ = writeln!(human, "chi(cut): {}", r.chi_cut);
    let _ = writeln!(human, "boundary circles: {}", r.boundary_components);
    let _ = writeln!(human, "components: {}", r.complement_components);
    let _ = writeln!(
        human,
        "chi(cut) = chi(map) - chi(curves): {}",
        if identity { "holds" } else { "FAILS" }
    );
    let body = json!({
        "cut": to_json(&r),
        "vertices": r.map.vertex_count(),
        "edges": r.map.edge_count(),
        "faces": r.map.face_count(),
        "euler_identity": identity,
    });
    Outcome::new(
        "cut",
        if identity { EXIT_OK } else { EXIT_FAILED },
        human,
        body,
    )
}
