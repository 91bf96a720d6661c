use serde_json::{json, Value};

use vclosed::abelian::{direct_summand_complement, primary_decompose, strong_retract_criterion, violation_embedding};
use vclosed::approx::{search_code, verify_certificate, verify_property2, ApproxCertificate};
use vclosed::constructions::{
    build_witness, center_direct_factor, corollary1_check, verify_witness_not_retract, verify_witness_verbal_closedness,
    BundleData, RetractVerdict, WitnessBundle,
};
use vclosed::group::catalog::{parse_group, GroupSpec};
use vclosed::group::hom::{search_retraction, DEFAULT_NODE_LIMIT};
use vclosed::group::subgroup::{center, center_of, centralizer_in, closure, commutator_subgroup, subgroups_of, Subgroup};
use vclosed::group::{Elem, FiniteGroup};
use vclosed::heisenberg::{
    classify_cross_check, identity_obstruction_check, prop6_experiment, quotient_heis, torsion_subgroup,
    verbal_image_classify,
};
use vclosed::util::factorize;
use vclosed::words::{verbally_closed_bounded, ClosednessReport, Word, DEFAULT_EVAL_BUDGET};
use vclosed::{Error, Result};

use crate::report::Report;
use crate::{Cli, Command, HeisCommand, WitnessCommand};

pub fn error_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::InvalidGroup(_) | Error::InvalidArgument(_) => 64,
        Error::SearchBudgetExceeded { .. } | Error::BudgetExceeded { .. } | Error::TooLarge { .. } => 2,
        _ => 1,
    }
}

fn load_group(spec: &str) -> Result<FiniteGroup> {
    match spec.strip_prefix('@') {
        Some(path) => {
            let text = read(std::path::Path::new(path))?;
            let spec: GroupSpec =
                serde_json::from_str(&text).map_err(|e| Error::InvalidGroup(format!("{path}: {e}")))?;
            spec.build()
        }
        None => parse_group(spec),
    }
}

fn read(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

/// `whole`, `center`, `derived`, `trivial`, or a comma-separated list of
/// element names or indices generating the subgroup.
fn parse_subgroup(g: &FiniteGroup, spec: &str) -> Result<Subgroup> {
    match spec.trim() {
        "whole" => return Ok(Subgroup::whole(g)),
        "center" => return Ok(center(g)),
        "derived" => return Ok(commutator_subgroup(g)),
        "trivial" => return Ok(Subgroup::trivial(g)),
        _ => {}
    }
    let gens = spec
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            g.element_by_name(tok)
                .or_else(|| tok.parse::<usize>().ok().filter(|&i| i < g.order()))
                .ok_or_else(|| Error::InvalidArgument(format!("unknown element {tok:?}")))
        })
        .collect::<Result<Vec<Elem>>>()?;
    Ok(closure(g, &gens))
}

fn names(g: &FiniteGroup, xs: &[Elem]) -> Vec<String> {
    xs.iter().map(|&x| g.name(x)).collect()
}

fn closedness_counterexamples(g: &FiniteGroup, report: &ClosednessReport) -> Vec<Value> {
    report
        .counterexamples
        .iter()
        .map(|c| json!({"word": c.word, "h": g.name(c.h), "witness": names(g, &c.witness)}))
        .collect()
}

fn decomposition_json(d: &vclosed::abelian::PrimaryDecomposition) -> Value {
    json!({
        "label": d.label(),
        "order": d.order(),
        "exponent": d.exponent(),
        "moduli": d.moduli(),
        "summands": d.summands.iter().map(|s| json!({"p": s.p, "k": s.k, "n": s.n})).collect::<Vec<_>>(),
    })
}

pub fn run(cli: &Cli) -> Result<Report> {
    let budget = cli.global.budget;
    match &cli.command {
        Command::Decompose(a) => {
            let g = load_group(&a.group)?;
            let mut r = Report::new("decompose", json!({"group": a.group}));
            let d = primary_decompose(&g)?;
            r.info("decomposition", d.label());
            r.details = decomposition_json(&d);
            Ok(r)
        }
        Command::RetractCriterion(a) => {
            let g = load_group(&a.group)?;
            let mut r = Report::new("retract-criterion", json!({"group": a.group}));
            let d = primary_decompose(&g)?;
            r.info("criterion", strong_retract_criterion(&d));
            r.details = decomposition_json(&d);
            Ok(r)
        }
        Command::ViolationEmbedding(a) => {
            let g = load_group(&a.group)?;
            let mut r = Report::new("violation-embedding", json!({"group": a.group}));
            let ve = violation_embedding(&g)?;
            let image = ve.f.image(&ve.h);
            r.expect("f_injective", ve.f.is_injective(&g), true);
            let complement = direct_summand_complement(&ve.h, &image)?;
            r.expect("complement_exists", complement.is_some(), false);
            r.details = json!({
                "ambient": ve.ambient.label(),
                "basis": names(&g, &ve.basis),
                "basis_images": ve.basis.iter().map(|&b| ve.f.apply(b)).collect::<Vec<_>>(),
                "image_order": image.order(),
            });
            Ok(r)
        }
        Command::Center(a) => {
            let g = load_group(&a.group)?;
            let l = parse_subgroup(&g, &a.sub)?;
            let mut r = Report::new("center", json!({"group": a.group, "sub": a.sub}));
            let whole = Subgroup::whole(&g);
            let factor = center_direct_factor(&g, &l, Some(&whole));
            r.info("center_direct_factor", factor.is_some());
            r.info("normal_complement", factor.as_ref().is_some_and(|f| f.normal_in_ambient == Some(true)));
            match corollary1_check(&g, &l) {
                Ok(v) => {
                    r.info("witness_applicable", v.witness_applicable);
                }
                Err(Error::AbelianTorsion) => {
                    r.info("witness_applicable", "abelian_torsion");
                }
                Err(e) => return Err(e),
            }
            r.details = json!({
                "center": names(&g, center_of(&g, &l).members()),
                "complement": factor.map(|f| names(&g, f.complement.members())),
            });
            Ok(r)
        }
        Command::RetractCheck(a) => {
            let g = load_group(&a.group)?;
            let h = parse_subgroup(&g, &a.sub)?;
            let limit = budget.unwrap_or(DEFAULT_NODE_LIMIT);
            let mut r = Report::new("retract-check", json!({"group": a.group, "sub": a.sub}));
            match search_retraction(&g, &h, limit) {
                Ok(outcome) => {
                    let found = outcome.found.is_some();
                    r.info("retract", found).with_budget(outcome.nodes, limit);
                    if let Some(rho) = outcome.found {
                        r.details = json!({
                            "generators": names(&g, rho.generators()),
                            "images": names(&g, rho.images()),
                        });
                    }
                }
                Err(Error::SearchBudgetExceeded { used, limit }) => r.indeterminate("retract", used, limit),
                Err(e) => return Err(e),
            }
            Ok(r)
        }
        Command::VerbalClosed(a) => {
            let g = load_group(&a.group)?;
            let h = parse_subgroup(&g, &a.sub)?;
            let limit = budget.unwrap_or(DEFAULT_EVAL_BUDGET);
            let mut r = Report::new(
                "verbal-closed",
                json!({"group": a.group, "sub": a.sub, "max_len": a.max_len, "vars": a.vars}),
            );
            match verbally_closed_bounded(&g, &h, a.max_len, a.vars, limit) {
                Ok(rep) => {
                    r.info("verbally_closed", rep.counterexamples.is_empty()).with_budget(rep.evaluations, limit);
                    r.info("words_checked", rep.words_checked);
                    r.counterexamples = closedness_counterexamples(&g, &rep);
                }
                Err(Error::BudgetExceeded { required, limit }) => {
                    r.indeterminate("verbally_closed", required.min(u64::MAX as u128) as u64, limit)
                }
                Err(e) => return Err(e),
            }
            Ok(r)
        }
        Command::ApproxSearch(a) => {
            let t_max = a.t_max.unwrap_or(a.k + 8);
            let mut r = Report::new("approx-search", json!({"p": a.p, "k": a.k, "t_max": t_max}));
            match search_code(a.p, a.k, t_max) {
                Ok(found) => {
                    r.expect("found", true, true);
                    r.info("t", found.t);
                    r.info("method", &found.method);
                    certificate_verdicts(&mut r, &found.certificate)?;
                    r.details = json!({"certificate": found.certificate});
                }
                Err(Error::NotFoundWithinBound { .. }) => {
                    r.expect("found", false, true);
                }
                Err(e) => return Err(e),
            }
            Ok(r)
        }
        Command::ApproxVerify(a) => {
            let text = read(&a.cert)?;
            let value: Value = serde_json::from_str(&text).map_err(|e| Error::InvalidArgument(e.to_string()))?;
            let cert_value = value
                .pointer("/details/certificate")
                .or_else(|| value.get("certificate"))
                .or_else(|| value.pointer("/details/bundle/certificate"))
                .cloned()
                .unwrap_or(value);
            let cert: ApproxCertificate =
                serde_json::from_value(cert_value).map_err(|e| Error::InvalidArgument(format!("certificate: {e}")))?;
            let mut r = Report::new("approx-verify", json!({"p": cert.p, "t": cert.t, "k": cert.k}));
            certificate_verdicts(&mut r, &cert)?;
            Ok(r)
        }
        Command::Witness(w) => run_witness(w, budget),
        Command::Heis(h) => run_heis(h, budget),
    }
}

fn certificate_verdicts(r: &mut Report, cert: &ApproxCertificate) -> Result<()> {
    let check = verify_certificate(cert)?;
    r.expect("property1", check.property1, true);
    r.expect("property2", check.property2, true);
    r.expect("property3", check.property3, true);
    if check.property3 {
        r.expect("property3_implies_property2", verify_property2(&cert.code(), cert.k), true);
    }
    r.counterexamples = check.problems.iter().map(|p| Value::String(p.clone())).collect();
    Ok(())
}

fn load_bundle(path: &std::path::Path) -> Result<WitnessBundle> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let data_value = value.pointer("/details/bundle").cloned().unwrap_or(value);
    let data: BundleData =
        serde_json::from_value(data_value).map_err(|e| Error::InvalidArgument(format!("bundle: {e}")))?;
    let h = load_group(&data.group)?;
    WitnessBundle::from_data(&data, h)
}

fn run_witness(w: &WitnessCommand, budget: Option<u64>) -> Result<Report> {
    match w {
        WitnessCommand::Build(a) => {
            let h = load_group(&a.group)?;
            let t_sub = parse_subgroup(&h, &a.t_sub)?;
            let a_sub = match a.a.as_str() {
                "center" => center_of(&h, &t_sub),
                other => parse_subgroup(&h, other)?,
            };
            let k = match a.k.as_str() {
                "full" => None,
                other => Some(other.parse::<usize>().map_err(|_| Error::InvalidArgument(format!("bad --k {other:?}")))?),
            };
            let p = match a.p {
                Some(p) => p,
                None => {
                    let l = centralizer_in(&h, &t_sub, a_sub.members());
                    let z = center_of(&h, &l);
                    factorize(z.order() as u64)
                        .first()
                        .map(|&(p, _)| p as u32)
                        .ok_or(Error::TrivialC(0))?
                }
            };
            let mut r = Report::new(
                "witness build",
                json!({"group": a.group, "k": a.k, "p": p, "t_sub": a.t_sub, "a": a.a}),
            );
            let bundle = build_witness(&a.group, h, &t_sub, &a_sub, p, k)?;
            let data = bundle.to_data();
            r.info("k", data.k);
            r.info("t", data.t);
            r.info("q_order", data.q_order);
            r.info("r_order", data.r_order);
            r.info("g_order", data.g_order);
            r.expect("certificate_valid", data.checks.certificate_valid, true);
            r.expect("r_normal", data.checks.r_normal_direct, true);
            r.expect("r_normal_by_invariance", data.checks.r_normal_invariance, true);
            r.expect("r_identity_coordinate", data.checks.r_identity_coordinate, true);
            r.expect("embed_injective", data.checks.embed_injective, true);
            r.details = json!({"bundle": data});
            Ok(r)
        }
        WitnessCommand::VerifyVc(a) => {
            let bundle = load_bundle(&a.bundle)?;
            let limit = budget.unwrap_or(DEFAULT_EVAL_BUDGET);
            let mut r = Report::new(
                "witness verify-vc",
                json!({"group": bundle.group_name, "k": bundle.k, "t": bundle.t, "max_len": a.max_len, "vars": a.vars}),
            );
            r.expect("bundle_checks", bundle.checks.all_pass(), true);
            match verify_witness_verbal_closedness(&bundle, a.max_len, a.vars, limit) {
                Ok(rep) => {
                    r.expect("identity_coordinate", rep.identity_coordinate, true);
                    r.expect("verbally_closed", rep.closedness.counterexamples.is_empty(), true)
                        .with_budget(rep.closedness.evaluations, limit);
                    r.info("words_checked", rep.closedness.words_checked);
                    let g = &bundle.quotient.as_ref().expect("verified above").g;
                    r.counterexamples = closedness_counterexamples(g, &rep.closedness);
                }
                Err(Error::BudgetExceeded { required, limit }) => {
                    r.indeterminate("verbally_closed", required.min(u64::MAX as u128) as u64, limit)
                }
                Err(e) => return Err(e),
            }
            Ok(r)
        }
        WitnessCommand::VerifyRetract(a) => {
            let bundle = load_bundle(&a.bundle)?;
            let limit = budget.unwrap_or(DEFAULT_NODE_LIMIT);
            let full_k = subgroups_of(&bundle.h, &bundle.t_sub).len();
            let mut r = Report::new(
                "witness verify-retract",
                json!({"group": bundle.group_name, "k": bundle.k, "t": bundle.t}),
            );
            r.expect("bundle_checks", bundle.checks.all_pass(), true);
            r.info("full_k", bundle.k >= full_k);
            let rep = verify_witness_not_retract(&bundle, limit)?;
            match rep.verdict {
                RetractVerdict::Indeterminate => r.indeterminate("retraction_absent", rep.nodes, limit),
                verdict => {
                    let absent = verdict == RetractVerdict::Absent;
                    let v = if bundle.k >= full_k {
                        r.expect("retraction_absent", absent, true)
                    } else {
                        r.info("retraction_absent", absent)
                    };
                    v.with_budget(rep.nodes, limit);
                }
            }
            r.details = json!({"search": rep});
            Ok(r)
        }
    }
}

fn run_heis(h: &HeisCommand, budget: Option<u64>) -> Result<Report> {
    match h {
        HeisCommand::Classify(a) => {
            let word: Word = a.word.parse()?;
            let limit = budget.unwrap_or(DEFAULT_EVAL_BUDGET);
            let mut r = Report::new("heis classify", json!({"n": a.n, "q": a.q, "word": word.to_string()}));
            let c = verbal_image_classify(&word, a.n, a.q)?;
            r.info("class", c.class);
            r.info("m", c.m);
            r.info("f_is_zero", c.f_is_zero);
            match classify_cross_check(&word, a.n, a.q, limit) {
                Ok(check) => {
                    r.expect("agrees_with_exhaustive", check.agrees, true);
                    r.info("image_order", check.image_order);
                }
                Err(Error::BudgetExceeded { .. }) => {
                    r.info("agrees_with_exhaustive", "skipped");
                }
                Err(e) => return Err(e),
            }
            Ok(r)
        }
        HeisCommand::Prop6(a) => {
            let limit = budget.unwrap_or(DEFAULT_EVAL_BUDGET);
            let mut r = Report::new(
                "heis prop6",
                json!({"n": a.n, "q": a.q, "max_len": a.max_len, "vars": a.vars}),
            );
            let rep = prop6_experiment(a.n, a.q, a.max_len, a.vars, limit, DEFAULT_NODE_LIMIT)?;
            r.info("k_order", rep.k_order);
            r.info("hbar_order", rep.hbar_order);
            r.expect("retraction_absent", !rep.retraction_found, true).with_budget(rep.retraction_nodes, DEFAULT_NODE_LIMIT);
            r.expect("verbally_closed", rep.closedness.counterexamples.is_empty(), true)
                .with_budget(rep.closedness.evaluations, limit);
            r.info("words_checked", rep.closedness.words_checked);
            r.counterexamples = rep
                .closedness
                .counterexamples
                .iter()
                .map(|c| json!({"word": c.word, "h": c.h, "witness": c.witness}))
                .collect();
            Ok(r)
        }
        HeisCommand::Quotient(a) => {
            let group = quotient_heis(a.alpha, a.nparam)?;
            let mut r = Report::new(
                "heis quotient",
                json!({"alpha": a.alpha, "nparam": a.nparam, "check": a.check, "window": a.window}),
            );
            r.info("gcd", group.g);
            let all = a.check == "all";
            if !["all", "abelian", "torsion", "obstruction"].contains(&a.check.as_str()) {
                return Err(Error::InvalidArgument(format!("unknown --check {:?}", a.check)));
            }
            if all || a.check == "abelian" {
                r.info("abelian", group.is_abelian());
                r.expect("abelian_iff_gcd_one", group.is_abelian() == (group.g == 1), true);
            }
            if all || a.check == "torsion" {
                match torsion_subgroup(&group) {
                    Ok(t) => {
                        r.info("torsion_factors", &t.factors);
                        r.expect("torsion_abelian", t.abelian, true);
                    }
                    Err(Error::Unbounded) => {
                        r.info("torsion_factors", "unbounded");
                    }
                    Err(e) => return Err(e),
                }
            }
            if all || a.check == "obstruction" {
                let rep = identity_obstruction_check(&group, a.window);
                r.expect("no_solution_outside_alpha_z", rep.solutions_outside.is_empty(), true);
                r.expect("symbolic_obstruction", rep.symbolic_ok, true);
                r.info("pairs_checked", rep.pairs_checked);
                r.info("bounded_window", rep.window);
                r.counterexamples = rep.solutions_outside.iter().map(|&(x, z)| json!({"x": x, "z": z})).collect();
            }
            Ok(r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use vclosed::group::catalog::q8;

    #[test]
    fn subgroup_specs() {
        let g = q8();
        assert_eq!(parse_subgroup(&g, "whole").unwrap().order(), 8);
        assert_eq!(parse_subgroup(&g, "center").unwrap().order(), 2);
        assert_eq!(parse_subgroup(&g, "derived").unwrap().order(), 2);
        assert_eq!(parse_subgroup(&g, "trivial").unwrap().order(), 1);
        assert_eq!(parse_subgroup(&g, "i").unwrap().order(), 4);
        assert_eq!(parse_subgroup(&g, "i, j").unwrap().order(), 8);
        // names win over indices: "1" is the identity, 3 is -i
        assert_eq!(parse_subgroup(&g, "1").unwrap().order(), 1);
        assert_eq!(parse_subgroup(&g, "3").unwrap().order(), 4);
        assert!(parse_subgroup(&g, "w").is_err());
        assert!(parse_subgroup(&g, "8").is_err());
    }

    #[test]
    fn error_codes() {
        assert_eq!(error_code(&Error::InvalidGroup("x".into())), 64);
        assert_eq!(error_code(&Error::SearchBudgetExceeded { used: 1, limit: 1 }), 2);
        assert_eq!(error_code(&Error::NotAbelian), 1);
    }
}
