use num_integer::Integer as _;
use serde_json::{json, Value};

use cuboid_core::asymptotics::{
    bound_check, correspondence_intervals, forward_intervals, integer_point_hypotheses,
    lemma_margins, reverse_intervals, shifted_equation, sign_change_check,
};
use cuboid_core::charpoly::{build_qpq, verify_factorization_with, verify_reversion};
use cuboid_core::exact::ratio_string;
use cuboid_core::filter::{classify_region, exclusion_check};
use cuboid_core::rootcert::{certification_report, correspondence_pairs};
use cuboid_core::search::run_search;
use cuboid_core::{
    Branch, Error, IntPolynomial, Integer, Precision, Rational, RegionClass, Result, RootLabel,
    SearchConfig, SeedPair,
};

/// JSON document plus whether every check in it passed.
pub struct Output {
    pub json: Value,
    pub ok: bool,
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

/// Adds one to the `t²` coefficient.
fn corrupt(poly: &IntPolynomial) -> IntPolynomial {
    let mut c = poly.coeffs().to_vec();
    c[2] += Integer::from(1);
    IntPolynomial::new(c)
}

pub fn identities(p_max: u64, q_max: u64, inject_corruption: bool) -> Result<Output> {
    if p_max == 0 || q_max == 0 {
        return Err(Error::InvalidConfig(
            "p-max and q-max must be positive".into(),
        ));
    }
    let mut pairs = 0u64;
    let mut failures = Vec::new();
    for q in 1..=q_max {
        for p in (1..=p_max).filter(|&p| p != q && p.gcd(&q) == 1) {
            let seed = SeedPair { p, q };
            pairs += 1;
            let mut qpq = build_qpq(seed).poly;
            if inject_corruption {
                qpq = corrupt(&qpq);
            }
            for branch in [Branch::First, Branch::Second] {
                if !verify_factorization_with(seed, branch, &qpq) {
                    failures.push(json!({"p": p, "q": q, "check": format!("factorization_{}", branch_name(branch))}));
                }
            }
            if !verify_reversion(seed) {
                failures.push(json!({"p": p, "q": q, "check": "reversion"}));
            }
        }
    }
    let ok = failures.is_empty();
    Ok(Output {
        json: json!({
            "command": "identities",
            "p_max": p_max,
            "q_max": q_max,
            "pairs_checked": pairs,
            "failures": failures,
            "passed": ok,
        }),
        ok,
    })
}

fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::First => "first",
        Branch::Second => "second",
    }
}

pub fn intervals(seed: SeedPair) -> Result<Output> {
    Ok(Output {
        json: json!({
            "command": "intervals",
            "seed": to_value(&seed)?,
            "forward": to_value(&forward_intervals(seed)?)?,
            "reverse": to_value(&reverse_intervals(seed)?)?,
            "correspondence": to_value(&correspondence_intervals(seed)?)?,
            "margins": to_value(&lemma_margins(seed)?)?,
            "integer_point_hypotheses": to_value(&integer_point_hypotheses(seed))?,
        }),
        ok: true,
    })
}

pub fn certify(seed: SeedPair, width: Rational) -> Result<Output> {
    let precision = Precision::Absolute(width);
    precision.validate()?;
    let report = certification_report(seed, &precision)?;
    let pairs = correspondence_pairs(seed, &precision)?;
    let correspondence = pairs.iter().all(|p| p.contains_pq_squared);
    let all_contained = report.all_simple_and_contained();
    Ok(Output {
        json: json!({
            "command": "certify",
            "seed": to_value(&seed)?,
            "disjoint": report.disjoint,
            "contained": report.contained(),
            "all_contained": all_contained,
            "correspondence": correspondence,
            "verdicts": to_value(&report.verdicts)?,
            "pairs": to_value(&pairs)?,
        }),
        ok: all_contained && report.disjoint && correspondence,
    })
}

pub fn sign_checks(seed: SeedPair, samples: usize) -> Result<Output> {
    let mut rows = Vec::new();
    let mut ok = true;
    for label in RootLabel::ALL {
        let eq = shifted_equation(label);
        let sign = sign_change_check(eq, seed)?;
        let bound = bound_check(eq, seed, samples)?;
        ok &= sign && bound.pass;
        rows.push(json!({
            "label": label.to_string(),
            "sign_change": if sign { "PASS" } else { "FAIL" },
            "bound": if bound.pass { "PASS" } else { "FAIL" },
            "claimed_bound": ratio_string(&bound.bound),
            "normalizer": to_value(&bound.normalizer)?,
            "max_abs_residual": to_value(&bound.max_abs_residual)?,
            "ratio": bound.ratio,
            "samples": samples,
        }));
    }
    Ok(Output {
        json: json!({"command": "sign-checks", "seed": to_value(&seed)?, "labels": rows, "passed": ok}),
        ok,
    })
}

pub fn regions(seed: SeedPair) -> Result<Output> {
    let region = classify_region(seed);
    let forward = u128::from(seed.p) >= 59 * u128::from(seed.q);
    let mut doc = json!({
        "command": "regions",
        "seed": to_value(&seed)?,
        "region": region.to_string(),
    });
    if forward {
        doc["integer_point_hypotheses"] = to_value(&integer_point_hypotheses(seed))?;
        doc["exclusion"] = to_value(&exclusion_check(seed)?)?;
    }
    if region == RegionClass::NoCuboid && !forward {
        doc["reason"] = json!("q >= 59p");
    }
    Ok(Output {
        json: doc,
        ok: true,
    })
}

pub fn search(config: &SearchConfig) -> Result<Output> {
    let outcome = run_search(config)?;
    for found in &outcome.candidates {
        eprintln!(
            "*** INTEGER ROOT FOUND: p={} q={} t={} branch={} admissible={} ***",
            found.candidate.seed.p,
            found.candidate.seed.q,
            found.candidate.t,
            branch_name(found.candidate.branch),
            found.admissible
        );
    }
    Ok(Output {
        json: json!({
            "command": "search",
            "q_max": config.q_max,
            "p_max": config.p_max,
            "config_hash": config.config_hash(),
            "rows_completed": outcome.rows_completed,
            "records_written": outcome.records_written,
            "interrupted": outcome.interrupted,
            "candidates_found": to_value(&outcome.candidates)?,
            "report": config.report_path.display().to_string(),
        }),
        ok: true,
    })
}
