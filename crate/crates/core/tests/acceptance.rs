//! One pass/fail line per acceptance criterion.
//!
//! Run with `cargo test --release --test acceptance`. The G2 braid and
//! order checks of criterion 2 take about a minute.

use std::time::{Duration, Instant};

use coideal::report::{Report, Row, Status};
use coideal::suites::{run_suite, SuiteConfig};

struct Verdict {
    ok: bool,
    detail: String,
}

fn run(suite: &str, long: bool) -> Report {
    let mut cfg = SuiteConfig::new(suite);
    cfg.long = long;
    cfg.time_budget = Some(Duration::from_secs(30 * 60));
    cfg.mem_limit = Some(4 << 30);
    run_suite(&cfg, &mut |_, _| {}).unwrap_or_else(|e| panic!("suite {suite}: {e}"))
}

fn rows<'a>(rep: &'a Report, check: &'a str) -> impl Iterator<Item = &'a Row> + 'a {
    rep.rows.iter().filter(move |r| r.check == check)
}

/// Every row passes and each required check group is present.
fn judge(reps: &[&Report], required: &[&str]) -> Verdict {
    let all: Vec<&Row> = reps.iter().flat_map(|r| r.rows.iter()).collect();
    let fail = all.iter().filter(|r| r.status == Status::Fail).count();
    let skip = all.iter().filter(|r| r.status == Status::Skipped).count();
    let missing: Vec<&str> = required
        .iter()
        .copied()
        .filter(|c| !all.iter().any(|r| r.check == *c || r.check.starts_with(&format!("{c}/"))))
        .collect();
    let mut detail = format!("{} rows, {fail} fail, {skip} skipped", all.len());
    if !missing.is_empty() {
        detail.push_str(&format!(", missing checks {missing:?}"));
    }
    if let Some(r) = all.iter().find(|r| r.status != Status::Pass) {
        detail.push_str(&format!("; first: {} {} {} {}", r.status, r.suite, r.check, r.identity));
    }
    Verdict {
        ok: fail == 0 && skip == 0 && missing.is_empty() && !all.is_empty(),
        detail,
    }
}

fn within(v: Verdict, t0: Instant, limit: Duration) -> Verdict {
    let el = t0.elapsed();
    Verdict {
        ok: v.ok && el <= limit,
        detail: format!("{}, {:.1}s (limit {}s)", v.detail, el.as_secs_f64(), limit.as_secs()),
    }
}

fn main() {
    let min = |m: u64| Duration::from_secs(60 * m);
    let mut results: Vec<(usize, &str, Verdict, &str)> = Vec::new();

    let t = Instant::now();
    let b3 = run("I-B3", false);
    let c3 = run("I-C3", false);
    let v = within(judge(&[&b3, &c3], &["relations", "endo", "inverse", "braid"]), t, min(20));
    results.push((1, "I-B3, I-C3 relations, endomorphism, inverse, braid", v, ""));

    let t = Instant::now();
    let g2 = run("I-G2", true);
    let mut v = within(judge(&[&g2], &["relations", "endo", "inverse", "braid", "order"]), t, min(30));
    if !rows(&g2, "braid").any(|r| r.identity.starts_with("m=6")) {
        v.ok = false;
        v.detail.push_str(", no 6-fold braid rows");
    }
    results.push((2, "I-G2 with --long, 6-fold braid and (τ1τ2)^3 = id", v, ""));

    let t = Instant::now();
    let eps = run("epsilon", false);
    let mut v = within(judge(&[&eps], &["epsilon"]), t, min(1));
    for a in ["a=2/", "a=0/", "a=-1/", "a=-2/", "a=-3/"] {
        if !eps.rows.iter().any(|r| r.identity.starts_with(a)) {
            v.ok = false;
            v.detail.push_str(&format!(", no {a} rows"));
        }
    }
    results.push((3, "ε-identities for a_ij in {2, 0, -1, -2, -3}", v, "correction: ε(-1) carries an overall minus sign"));

    let t = Instant::now();
    let a7 = run("II-A7", false);
    let a6 = run("II-A6", false);
    let d5 = run("II-D5", false);
    let v = within(
        judge(&[&a7, &a6, &d5], &["relations", "endo", "inverse", "braid", "torus", "commutator"]),
        t,
        min(3 * 45),
    );
    results.push((
        4,
        "II-A7, II-A6, II-D5 relations, τ/τ^- checks, braid relations, IIA-odd commutator",
        v,
        "correction: a_ij=-1, j=τ(i) term has + sign; II-A6 torus uses T_r T_{r+1} T_r; commutator second term read as τ_i^-",
    ));

    let t = Instant::now();
    let c7 = run("III-A7", false);
    let v = within(
        judge(&[&c7], &["relations", "generators", "endo", "inverse", "braid", "lemma", "lusztig", "smash"]),
        t,
        min(60),
    );
    results.push((5, "III-A7 relations, τ/τ^- checks, braid, T_{i∓1}, T on F_j, smash identities", v, "correction: τ_i(B_2i) middle terms use K^-1"));

    let mut co = Report::new();
    for rep in [&b3, &c3, &g2, &a7, &a6, &d5, &c7] {
        for r in rows(rep, "coideal") {
            co.push(r.clone());
        }
    }
    let v = judge(&[&co], &["coideal"]);
    results.push((6, "coproduct identities Δ(B_i) in cases I, II, III", v, ""));

    let t = Instant::now();
    let lz = run("lusztig", false);
    let v = within(judge(&[&lz], &["inverse", "braid"]), t, min(5));
    results.push((7, "T_i∘T_i^-1 = id and T-braid relations", v, "scope: U_q(E6) and U_q(F4) are not completed, see README"));

    let t = Instant::now();
    let gs = run("garside", false);
    let v = within(judge(&[&gs], &["braid", "membership", "soundness"]), t, min(2));
    results.push((8, "embedding braid relations, Br(g,θ) membership, 1000-pair soundness", v, ""));

    let t = Instant::now();
    let cl = run("classical", false);
    let v = within(
        judge(&[&cl], &["theta", "twist", "lemma", "braid", "adbj", "order4", "q1", "q1-inverse"]),
        t,
        min(2),
    );
    results.push((9, "classical Ad identities and q → 1 degeneration", v, ""));

    let pr = run("properties", false);
    let mu = run("mutation", false);
    let v = judge(&[&pr, &mu], &["idempotence", "certificate", "hopf", "scalar", "mutation"]);
    results.push((10, "property suites green, every mutation detected", v, ""));

    let mut failed = 0;
    for (n, what, v, note) in &results {
        let tag = if v.ok { "PASS" } else { "FAIL" };
        if !v.ok {
            failed += 1;
        }
        let note = if note.is_empty() { String::new() } else { format!(" [{note}]") };
        println!("criterion {n:>2}: {tag}  {what} ({}){note}", v.detail);
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
