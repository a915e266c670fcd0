//! Invariant checks run by the `verify` command.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::Serialize;
use weyl_equidist_core::{
    build_stability_operator, char_mu_m, compute_h, dualize, freudenthal, mu_m, transfer_parity,
    weyl_group_elements, RootDatum, StabilityOperator,
};

use crate::error::CliResult;
use crate::parallel::run_equidist_parallel;
use crate::scenario::Scenario;

/// Largest `m` for which the character is cross-checked against Freudenthal
/// and the Weyl group.
const ORACLE_M: u32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub scenario: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!("{tag} {} {}", c.scenario, c.check));
            if !c.detail.is_empty() {
                s.push_str(&format!(" ({})", c.detail));
            }
            s.push('\n');
        }
        s
    }
}

struct Checks<'a> {
    scenario: &'a str,
    out: Vec<CheckOutcome>,
}

impl Checks<'_> {
    fn record(&mut self, check: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.out.push(CheckOutcome {
            scenario: self.scenario.to_string(),
            check: check.into(),
            passed,
            detail: detail.into(),
        });
    }
}

/// Runs all checks for one scenario; structural errors (invalid data,
/// non-elliptic action) abort with the corresponding error.
pub fn verify_scenario(s: &Scenario, threads: usize) -> CliResult<Vec<CheckOutcome>> {
    let act = s.action()?;
    let rd = act.datum().clone();
    let hg = compute_h(&act)?;
    let name = if s.name.is_empty() {
        s.cartan_type.as_str()
    } else {
        s.name.as_str()
    };
    let mut c = Checks {
        scenario: name,
        out: Vec::new(),
    };

    character_checks(&mut c, &rd, s.m_max.min(ORACLE_M));

    let rep = run_equidist_parallel(&act, s.m_range(), threads)?;
    let k = rd.positive_roots().len();
    let one = BigRational::one();
    for row in &rep.rows {
        let expected = BigInt::from(4 * row.m + 1).pow(k);
        c.record(format!("dimension m={}", row.m), row.dim == expected, "");
        let total: BigRational = row.s_values.iter().sum();
        c.record(format!("S sums to 1 m={}", row.m), total == one, "");
        if row.m > 0 {
            let ok = row.chi_ratios.iter().all(|&r| r < 1.0);
            c.record(format!("character ratios below 1 m={}", row.m), ok, "");
        }
        let parity = transfer_parity(&rd, &mu_m(&rd, row.m))?;
        c.record(
            format!("parity of mu_m m={}", row.m),
            parity.sign == 1,
            format!("d={}", parity.d),
        );
    }
    if let (Some(first), Some(last)) = (rep.rows.first(), rep.rows.last()) {
        if rep.rows.len() > 1 {
            let ok = if first.dev_from_uniform.is_zero() {
                rep.rows.iter().all(|r| r.dev_from_uniform.is_zero())
            } else {
                last.dev_from_uniform < first.dev_from_uniform
            };
            c.record(
                format!("deviation decreases m={}..{}", first.m, last.m),
                ok,
                format!("{} -> {}", first.dev_from_uniform, last.dev_from_uniform),
            );
        }
    }

    for m in s.m_range() {
        operator_checks(&mut c, &build_stability_operator(&hg, m));
    }
    Ok(c.out)
}

fn character_checks(c: &mut Checks<'_>, rd: &RootDatum, m_max: u32) {
    let weyl = weyl_group_elements(rd).ok();
    for m in 0..=m_max {
        let ch = char_mu_m(rd, m);
        let oracle = freudenthal(rd, &mu_m(rd, m));
        c.record(
            format!("product formula equals Freudenthal m={m}"),
            oracle.as_ref().is_ok_and(|o| *o == ch),
            "",
        );
        c.record(format!("self-dual m={m}"), dualize(&ch) == ch, "");
        if let Some(w) = &weyl {
            let ok = w.iter().all(|g| ch.apply_weyl(g) == ch);
            c.record(
                format!("Weyl invariant m={m}"),
                ok,
                format!("|W|={}", w.len()),
            );
        }
    }
}

fn operator_checks(c: &mut Checks<'_>, op: &StabilityOperator) {
    let m = op.m();
    c.record(
        format!("operator row-stochastic m={m}"),
        op.is_row_stochastic(),
        "",
    );
    c.record(format!("operator circulant m={m}"), op.is_circulant(), "");
    c.record(
        format!("operator spectrum m={m}"),
        op.spectrum_matches(1e-9),
        "",
    );
}

pub fn verify_all(scenarios: &[Scenario], threads: usize) -> CliResult<VerifyReport> {
    let mut checks = Vec::new();
    for s in scenarios {
        checks.extend(verify_scenario(s, threads)?);
    }
    Ok(VerifyReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::builtin_scenarios;

    #[test]
    fn builtin_suite_passes() {
        let rep = verify_all(&builtin_scenarios(), 0).unwrap();
        assert!(rep.passed, "{}", rep.to_text());
        assert!(rep.checks.len() > 50);
    }

    #[test]
    fn trivial_action_is_rejected() {
        let s = Scenario::from_json(r#"{"cartan_type":"A1"}"#).unwrap();
        assert_eq!(verify_scenario(&s, 1).unwrap_err().exit_code(), 4);
    }
}
