//! Named verification suites and the order in which their checks run.

use std::collections::BTreeSet;
use std::time::Duration;

use crate::braidact::{
    epsilon, tau_images, verify_case3_extras, verify_epsilon, verify_finite_order, verify_iia_torus_commutator, CaseContext, TauDir,
};
use crate::budget::Budget;
use crate::chevalley::{adbj_rhs, classical_suite, Realization};
use crate::error::{Error, Result};
use crate::garside::{soundness_check, verify_embedding, BraidWord, WeylGroup};
use crate::lusztig::{lusztig_images, verify_t_properties, Composite, Direction};
use crate::properties::property_suite;
use crate::qsp::{b, c, check_relations, e, kk, qc, qp, relation_set, verify_case3_generators, verify_coideal, verify_relations};
use crate::report::{Outcome, Report, Row, Status};
use crate::rootdata::{CaseSpec, RootDatum, Variant, SUITE_CASES};
use crate::scalar::{q_diff, q_int, Scalar};
use crate::uqg::{FreeElement, GenSymbol, Uq};

/// Suite identifiers accepted by [`run_suite`].
pub const SUITE_IDS: [&str; 14] = [
    "I-B3", "I-C3", "I-G2", "II-A7", "II-A6", "II-D5", "III-A7", "epsilon", "lusztig", "garside", "classical", "properties", "mutation", "all",
];

/// Check groups of a case suite, in execution order.
pub const CHECK_ORDER: [&str; 13] = [
    "relations",
    "generators",
    "endomorphism",
    "inverse",
    "torus",
    "braid",
    "commutator",
    "order",
    "lemma",
    "invariance",
    "smash",
    "lusztig",
    "coideal",
];

/// Detail string of rows gated behind `--long`.
pub const NEEDS_LONG: &str = "requires --long";

/// Root data whose Lusztig automorphisms are checked by the `lusztig` suite.
pub const LUSZTIG_TYPES: [&str; 12] = ["A1", "A2", "A3", "A5", "A6", "A7", "B2", "B3", "C3", "D4", "D5", "G2"];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: String,
    /// Only run these check groups (all when `None`).
    pub checks: Option<Vec<String>>,
    pub long: bool,
    /// Wall-clock budget for each check group.
    pub time_budget: Option<Duration>,
    pub mem_limit: Option<u64>,
    pub max_terms: usize,
}

impl SuiteConfig {
    pub fn new(suite: impl Into<String>) -> Self {
        SuiteConfig {
            suite: suite.into(),
            checks: None,
            long: false,
            time_budget: None,
            mem_limit: None,
            max_terms: usize::MAX,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !SUITE_IDS.contains(&self.suite.as_str()) {
            return Err(Error::Config(format!("unknown suite {:?}; expected one of {}", self.suite, SUITE_IDS.join(", "))));
        }
        if let Some(cs) = &self.checks {
            for c in cs {
                if !CHECK_ORDER.contains(&c.as_str()) {
                    return Err(Error::Config(format!("unknown check {c:?}; expected one of {}", CHECK_ORDER.join(", "))));
                }
            }
        }
        Ok(())
    }

    fn wants(&self, group: &str) -> bool {
        self.checks.as_ref().is_none_or(|cs| cs.iter().any(|c| c == group))
    }

    fn budget(&self) -> Budget {
        Budget::new(self.time_budget, self.max_terms, self.mem_limit)
    }
}

/// Whether a report row counts against the exit status.
pub fn exit_code(rep: &Report, allow_skip: bool) -> i32 {
    let failed = rep.rows.iter().any(|r| r.status == Status::Fail);
    let skipped = rep
        .rows
        .iter()
        .any(|r| r.status == Status::Skipped && r.detail.as_deref() != Some(NEEDS_LONG));
    if failed || (skipped && !allow_skip) {
        1
    } else {
        0
    }
}

fn setup_row(suite: &str, check: &str, err: Error) -> Row {
    let status = match err {
        Error::BudgetExceeded(_) | Error::DegreeCapExceeded { .. } => Status::Skipped,
        _ => Status::Fail,
    };
    Row {
        suite: suite.to_string(),
        check: check.to_string(),
        identity: "setup".into(),
        status,
        ms: 0,
        max_terms: 0,
        detail: Some(err.to_string()),
    }
}

fn gated_row(suite: &str, check: &str) -> Row {
    Row {
        suite: suite.to_string(),
        check: check.to_string(),
        identity: "*".into(),
        status: Status::Skipped,
        ms: 0,
        max_terms: 0,
        detail: Some(NEEDS_LONG.into()),
    }
}

type Progress<'a> = &'a mut dyn FnMut(&str, &Report);

/// Run one group, turning setup errors into a single row.
fn group(out: &mut Report, progress: &mut Progress, suite: &str, name: &str, f: impl FnOnce() -> Result<Report>) {
    let rep = match f() {
        Ok(r) => r,
        Err(e) => {
            let mut r = Report::new();
            r.push(setup_row(suite, name, e));
            r
        }
    };
    progress(name, &rep);
    out.extend(rep);
}

fn run_case(cfg: &SuiteConfig, id: &str, progress: &mut Progress) -> Result<Report> {
    let case = CaseSpec::parse(id)?;
    let mut out = Report::new();
    let ctx = match CaseContext::new(&case) {
        Ok(c) => c,
        Err(e) => {
            out.push(setup_row(id, "setup", e));
            progress("setup", &out);
            return Ok(out);
        }
    };
    let r = case.sigma_rank();
    let g2 = matches!(case.variant(), Variant::I('G', 2));
    let iia_odd = matches!(case.variant(), Variant::IIA(n) if n % 2 == 1);
    let case3 = matches!(case.variant(), Variant::III(_));
    let mut extras: Option<Report> = None;
    for name in CHECK_ORDER {
        if !cfg.wants(name) {
            continue;
        }
        let budget = cfg.budget();
        let bd = Some(&budget);
        match name {
            "relations" => group(&mut out, progress, id, name, || verify_relations(&ctx.uq, &case, bd)),
            "generators" if case3 => group(&mut out, progress, id, name, || verify_case3_generators(&ctx.uq, &case)),
            "endomorphism" => group(&mut out, progress, id, name, || {
                let mut rep = Report::new();
                for i in 0..r {
                    for d in [TauDir::TauMinus, TauDir::Tau] {
                        rep.extend(ctx.verify_endomorphism(i, d, bd)?);
                    }
                }
                Ok(rep)
            }),
            "inverse" => group(&mut out, progress, id, name, || {
                let mut rep = Report::new();
                for i in 0..r {
                    rep.extend(ctx.verify_inverse(i, bd)?);
                }
                Ok(rep)
            }),
            "torus" if case.is_case_ii() => group(&mut out, progress, id, name, || ctx.verify_torus()),
            "braid" | "order" if g2 && !cfg.long => {
                let mut rep = Report::new();
                rep.push(gated_row(id, name));
                progress(name, &rep);
                out.extend(rep);
            }
            "braid" => group(&mut out, progress, id, name, || ctx.verify_braid(bd)),
            "commutator" if iia_odd => group(&mut out, progress, id, name, || verify_iia_torus_commutator(&ctx, bd)),
            "order" if g2 => group(&mut out, progress, id, name, || verify_finite_order(&case, bd)),
            "lemma" | "invariance" | "smash" | "lusztig" if case3 => {
                if extras.is_none() {
                    extras = Some(verify_case3_extras(&ctx, bd).unwrap_or_else(|e| {
                        let mut r = Report::new();
                        r.push(setup_row(id, "extras", e));
                        r
                    }));
                }
                let all = extras.as_ref().expect("just computed");
                let mut rep = Report::new();
                for row in all.rows.iter().filter(|row| row.check == name || row.check == "extras") {
                    rep.push(row.clone());
                }
                progress(name, &rep);
                out.extend(rep);
            }
            "coideal" => group(&mut out, progress, id, name, || verify_coideal(&ctx.uq, &case)),
            _ => {}
        }
    }
    Ok(out)
}

/// Rank-one and rank-two types carrying every value of `a_ij` in
/// `{2, 0, -1, -2, -3}`.
pub const EPSILON_TYPES: [&str; 7] = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"];

fn run_epsilon(cfg: &SuiteConfig, progress: &mut Progress) -> Result<Report> {
    let mut out = Report::new();
    for t in EPSILON_TYPES {
        let rd = RootDatum::parse(t)?;
        let budget = cfg.budget();
        group(&mut out, progress, &format!("epsilon-{t}"), t, || verify_epsilon(&rd, Some(&budget)));
    }
    Ok(out)
}

fn run_lusztig(cfg: &SuiteConfig, progress: &mut Progress) -> Result<Report> {
    let mut out = Report::new();
    for t in LUSZTIG_TYPES {
        let rd = RootDatum::parse(t)?;
        let budget = cfg.budget();
        group(&mut out, progress, &format!("lusztig-{t}"), t, || {
            let uq = Uq::new(&rd)?;
            verify_t_properties(&uq, Some(&budget))
        });
    }
    Ok(out)
}

/// The cases of the braid group embeddings, one per map.
pub const EMBEDDING_CASES: [&str; 7] = ["I-B3", "I-G2", "II-A7", "II-A6", "II-D5", "II-E6", "III-A7"];

fn run_garside(progress: &mut Progress) -> Result<Report> {
    let mut out = Report::new();
    for id in EMBEDDING_CASES {
        let case = CaseSpec::parse(id)?;
        group(&mut out, progress, id, "embedding", || verify_embedding(&case));
    }
    for (k, t) in ["A3", "B3", "D5"].iter().enumerate() {
        let rd = RootDatum::parse(t)?;
        group(&mut out, progress, t, "soundness", || soundness_check(&rd, 1000, 12, 7 + k as u64));
    }
    Ok(out)
}

/// Multiply the coefficient of the first term of `x` by `factor`.
fn corrupt_first_term(x: &FreeElement, factor: &Scalar) -> FreeElement {
    let mut out = FreeElement::zero();
    for (k, (w, c)) in x.terms().enumerate() {
        let c = if k == 0 { c * factor } else { c.clone() };
        out.add_term(w.clone(), c);
    }
    out
}

fn detected(rep: &Report) -> std::result::Result<(), String> {
    if rep.rows.iter().any(|r| r.status == Status::Fail) {
        Ok(())
    } else {
        Err(format!("corruption not detected ({} rows passed)", rep.count(Status::Pass)))
    }
}

fn three_over_two() -> Scalar {
    q_int(3, 1).checked_div(&q_int(2, 1)).expect("nonzero")
}

/// Deliberately corrupted formulas; each row passes when the harness
/// reports the corruption as a failure.
pub fn mutation_suite() -> Result<Report> {
    let mut rep = Report::new();
    let suite = "mutation";

    rep.record_bool(suite, "mutation", "I-B3 relation a_ij=-2 with [2] -> [3]", || {
        let case = CaseSpec::parse("I-B3")?;
        let ctx = CaseContext::new(&case)?;
        let mut rels = relation_set(&case);
        let r = rels.iter_mut().find(|r| r.label.starts_with("serre/aij=-2/")).expect("B3 has a_ij = -2");
        r.rhs = r.rhs.scale(&three_over_two());
        Ok(detected(&check_relations(&ctx.uq, &ctx.gens, &rels[..], Vec::new(), suite, "relations", None)))
    });

    rep.record_bool(suite, "mutation", "I-B3 tau^- a_ij=-2 branch without +B_j", || {
        let case = CaseSpec::parse("I-B3")?;
        let ctx = CaseContext::new(&case)?;
        let rd = case.ambient();
        let (i, j) = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .find(|&(i, j)| rd.a(i, j) == -2)
            .expect("B3 has a_ij = -2");
        let mut t = tau_images(&case, i, TauDir::TauMinus)?;
        let img = t.images.image(GenSymbol::B(j as u8)).expect("defined");
        t.images.set(GenSymbol::B(j as u8), img.sub(&b(j + 1)));
        let rels = relation_set(&case);
        Ok(detected(&check_relations(&ctx.uq, &ctx.gens, &rels, vec![&t.images], suite, "endomorphism", None)))
    });

    for (t, a, label) in [("A2", -1, "epsilon(-1) with the opposite sign"), ("B2", -2, "epsilon(-2) first coefficient times [3]/[2]")] {
        rep.record_bool(suite, "mutation", format!("{t} {label}"), || {
            let rd = RootDatum::parse(t)?;
            let case = CaseSpec::new(Variant::I(rd.label(), rd.rank()))?;
            let ctx = CaseContext::new(&case)?;
            let (i, j) = (0..rd.rank())
                .flat_map(|i| (0..rd.rank()).map(move |j| (i, j)))
                .find(|&(i, j)| rd.a(i, j) == a)
                .expect("pair exists");
            let eps = epsilon(&rd, i + 1, j + 1);
            let bad = if a == -1 { eps.scale(&Scalar::from_int(-1)) } else { corrupt_first_term(&eps, &three_over_two()) };
            let ti = lusztig_images(&rd, i, Direction::Inverse)?;
            let tm = tau_images(&case, i, TauDir::TauMinus)?;
            let mut r = Report::new();
            r.record(suite, "epsilon", format!("i={},j={}", i + 1, j + 1), || {
                let (lt, _) = ctx.compose_on(vec![&ti], &b(j + 1), None)?;
                let (tau, _) = ctx.compose_on(vec![&tm.images], &b(j + 1), None)?;
                Ok(Outcome::from(lt.sub(&tau).sub(&ctx.value(&bad)?)))
            });
            Ok(detected(&r))
        });
    }

    rep.record_bool(suite, "mutation", "A2 T_1^-1(E_2) with one coefficient times q", || {
        let rd = RootDatum::parse("A2")?;
        let uq = Uq::new(&rd)?;
        let fw = lusztig_images(&rd, 0, Direction::Forward)?;
        let mut inv = lusztig_images(&rd, 0, Direction::Inverse)?;
        let img = inv.image(GenSymbol::E(1)).expect("defined");
        inv.set(GenSymbol::E(1), corrupt_first_term(&img, &qp(1)));
        let mut r = Report::new();
        r.record(suite, "inverse", "T_1 T_1^-1 (E_2)", || {
            let mut comp = Composite::new(&uq, vec![&fw, &inv], None, None);
            Ok(Outcome::from(comp.symbol(GenSymbol::E(1))?.sub(&uq.e(1))))
        });
        Ok(detected(&r))
    });

    rep.record_bool(suite, "mutation", "III-A5 tau_1(B_2) with K_1, K_3 middle terms", || {
        let case = CaseSpec::parse("III-A5")?;
        let ctx = CaseContext::new(&case)?;
        let mut t = tau_images(&case, 0, TauDir::Tau)?;
        let tm = tau_images(&case, 0, TauDir::TauMinus)?;
        let d = q_diff(1);
        let img = t.images.image(GenSymbol::B(1)).expect("defined");
        let swapped = img
            .add(&c(qc(&b(3), &b(2)).mul(&kk(&[(1, -1)])).mul(&e(3)), &qp(-2) * &d))
            .add(&c(qc(&b(1), &b(2)).mul(&kk(&[(3, -1)])).mul(&e(1)), &qp(-2) * &d))
            .sub(&c(qc(&b(3), &b(2)).mul(&kk(&[(1, 1)])).mul(&e(3)), &qp(-2) * &d))
            .sub(&c(qc(&b(1), &b(2)).mul(&kk(&[(3, 1)])).mul(&e(1)), &qp(-2) * &d));
        t.images.set(GenSymbol::B(1), swapped);
        let mut r = Report::new();
        r.record(suite, "inverse", "tau^- tau (B_2)", || {
            let (x, _) = ctx.compose_on(vec![&tm.images, &t.images], &b(2), None)?;
            Ok(Outcome::from(x.sub(&ctx.value(&b(2))?)))
        });
        Ok(detected(&r))
    });

    rep.record_bool(suite, "mutation", "III-A7 Ad b_j formula with [b_{2i-1}, b_{2i-2}] reversed", || {
        let case = CaseSpec::parse("III-A7")?;
        let r = Realization::new(&case)?;
        let (i, j) = (2, 2);
        let w = r.ad_word(&[2 * i - 1, 2 * i - 2, 2 * i, 2 * i - 1]);
        let wrong = r.b(2 * i - 1).bracket(&r.b(j)).bracket(&r.b(2 * i));
        Ok(if w.apply(&r.b(j)) != wrong && w.apply(&r.b(j)) == adbj_rhs(&r, i, j) {
            Ok(())
        } else {
            Err("reversed bracket not detected".into())
        })
    });

    rep.record_bool(suite, "mutation", "II-A6 embedding s_r s_{r-1} s_r", || {
        let case = CaseSpec::parse("II-A6")?;
        let w = WeylGroup::new(case.ambient());
        let r = case.sigma_rank();
        let bad = BraidWord::positive(&[r - 1, r - 2, r - 1]);
        let t = bad.map_nodes(|k| case.tau_of(k));
        Ok(if w.braid_equal(&t, &bad)? {
            Err("τ-invariance accepted a wrong embedding".into())
        } else {
            Ok(())
        })
    });
    Ok(rep)
}

/// Run a suite, calling `progress` after every check group.
pub fn run_suite(cfg: &SuiteConfig, progress: &mut dyn FnMut(&str, &Report)) -> Result<Report> {
    cfg.validate()?;
    let mut progress: Progress = progress;
    let id = cfg.suite.as_str();
    let mut out = Report::new();
    let selected: Vec<&str> = if id == "all" {
        SUITE_IDS.iter().copied().filter(|s| *s != "all").collect()
    } else {
        vec![id]
    };
    let mut seen = BTreeSet::new();
    for s in selected {
        if !seen.insert(s) {
            continue;
        }
        let rep = match s {
            "epsilon" => run_epsilon(cfg, &mut progress)?,
            "lusztig" => run_lusztig(cfg, &mut progress)?,
            "garside" => run_garside(&mut progress)?,
            "classical" => {
                let mut out = Report::new();
                group(&mut out, &mut progress, "classical", "classical", classical_suite);
                out
            }
            "mutation" => {
                let mut out = Report::new();
                group(&mut out, &mut progress, "mutation", "mutation", mutation_suite);
                out
            }
            "properties" => {
                let mut out = Report::new();
                let types: Vec<String> = crate::uqg::cached_systems().iter().map(|s| s.datum().to_string()).collect();
                let mut types: Vec<&str> = types.iter().map(String::as_str).collect();
                for t in ["A1", "A2", "B2", "G2", "A3"] {
                    if !types.contains(&t) {
                        types.push(t);
                    }
                }
                group(&mut out, &mut progress, "properties", "properties", || property_suite(&types));
                out
            }
            case if SUITE_CASES.contains(&case) => run_case(cfg, case, &mut progress)?,
            _ => unreachable!("validated"),
        };
        out.extend(rep);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(SuiteConfig::new("I-B3").validate().is_ok());
        assert!(matches!(SuiteConfig::new("I-B9").validate(), Err(Error::Config(_))));
        let mut c = SuiteConfig::new("III-A7");
        c.checks = Some(vec!["smash".into()]);
        assert!(c.validate().is_ok());
        c.checks = Some(vec!["smosh".into()]);
        assert!(c.validate().is_err());
    }

    #[test]
    fn exit_codes() {
        let mut rep = Report::new();
        rep.push(gated_row("I-G2", "braid"));
        assert_eq!(exit_code(&rep, false), 0);
        rep.push(setup_row("I-G2", "order", Error::BudgetExceeded("timeout".into())));
        assert_eq!(exit_code(&rep, false), 1);
        assert_eq!(exit_code(&rep, true), 0);
        rep.push(setup_row("I-G2", "order", Error::Unsupported("x".into())));
        assert_eq!(exit_code(&rep, true), 1);
    }
}
