//! Cross-checks of the engine against the brute-force oracle on one
//! instance. Each property yields a named PASS/FAIL line.

use std::fmt;

use serde::Serialize;

use crate::engine::{disjoint_stable_matchings, gale_shapley, gs_lists};
use crate::error::OracleError;
use crate::instance::{Instance, Side};
use crate::matching::{dominates, fixed_pairs, is_stable, Matching, MatchingChain};
use crate::oracle::{is_stable_bruteforce, teo_sethuraman_transform, StableSetReport};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.passed { "PASS" } else { "FAIL" }, self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub stable_matchings: usize,
    pub chain_length: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(name: &'static str, failure: Option<String>) -> Check {
    Check {
        name,
        passed: failure.is_none(),
        detail: failure.unwrap_or_default(),
    }
}

/// Runs every engine-versus-oracle property on `inst` (`n <= 9`).
pub fn verify_instance(inst: &Instance) -> Result<VerifyReport, OracleError> {
    let report = StableSetReport::compute(inst)?;
    let chain = disjoint_stable_matchings(inst);
    let man_opt = gale_shapley(inst, Side::Men);
    let woman_opt = gale_shapley(inst, Side::Women);
    let members = chain.matchings();

    let mut checks = Vec::new();

    checks.push(check(
        "chain-stable",
        members
            .iter()
            .position(|m| !is_stable(inst, m) || !is_stable_bruteforce(inst, m))
            .map(|i| format!("member {i} is not stable")),
    ));

    checks.push(check("chain-disjoint", first_shared(members)));

    checks.push(check(
        "chain-dominance",
        members
            .windows(2)
            .position(|w| !dominates(inst, &w[0], &w[1]))
            .map(|i| format!("member {i} does not dominate member {}", i + 1)),
    ));

    checks.push(check("chain-endpoints", endpoint_failure(&chain, &man_opt, &woman_opt)));

    checks.push(check(
        "chain-maximum",
        (chain.len() != report.max_disjoint_size).then(|| {
            format!(
                "engine found {} disjoint matchings, exhaustive search found {}",
                chain.len(),
                report.max_disjoint_size
            )
        }),
    ));

    let lists = gs_lists(inst);
    checks.push(check(
        "gs-lists-containment",
        report.all_stable.iter().enumerate().find_map(|(i, m)| {
            m.pairs()
                .find(|&(a, b)| !lists.contains(a, b))
                .map(|(a, b)| format!("stable matching {i} uses ({}, {}) outside the GS-lists", a + 1, b + 1))
        }),
    ));

    let extremes = (0..inst.n()).find_map(|m| {
        let w0 = man_opt.partner_of_man(m).unwrap();
        let wz = woman_opt.partner_of_man(m).unwrap();
        let ok = lists.first(Side::Men, m) == Some(w0)
            && lists.last(Side::Women, w0) == Some(m)
            && lists.last(Side::Men, m) == Some(wz)
            && lists.first(Side::Women, wz) == Some(m);
        (!ok).then(|| format!("optimal partners of man {} are not at his GS-list ends", m + 1))
    });
    checks.push(check("gs-lists-extremes", extremes));

    let fixed = fixed_pairs(&man_opt, &woman_opt);
    checks.push(check(
        "fixed-pairs",
        fixed
            .iter()
            .find(|&&p| report.all_stable.iter().any(|m| !m.contains(p)))
            .map(|&(a, b)| format!("({}, {}) is missing from some stable matching", a + 1, b + 1))
            .or_else(|| {
                (fixed != report.fixed_pairs)
                    .then(|| "differs from the intersection of all stable matchings".to_string())
            }),
    ));

    checks.push(check("teo-sethuraman", transform_failure(inst, &report, &chain)));

    Ok(VerifyReport {
        n: inst.n(),
        stable_matchings: report.all_stable.len(),
        chain_length: chain.len(),
        checks,
    })
}

fn first_shared(members: &[Matching]) -> Option<String> {
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if members[i].intersects(&members[j]) {
                return Some(format!("members {i} and {j} share a pair"));
            }
        }
    }
    None
}

fn endpoint_failure(chain: &MatchingChain, man_opt: &Matching, woman_opt: &Matching) -> Option<String> {
    if chain.last() != Some(woman_opt) {
        return Some("last member is not the woman-optimal matching".into());
    }
    // a one-element chain holds only the woman-optimal matching
    if chain.len() >= 2 && chain.first() != Some(man_opt) {
        return Some("first member is not the man-optimal matching".into());
    }
    None
}

fn transform_failure(inst: &Instance, report: &StableSetReport, chain: &MatchingChain) -> Option<String> {
    let mut reversed = chain.matchings().to_vec();
    reversed.reverse();
    match teo_sethuraman_transform(inst, &reversed) {
        Ok(out) if out == chain.matchings() => {}
        Ok(_) => return Some("transform of the chain does not restore chain order".into()),
        Err(e) => return Some(format!("transform of the chain failed: {e}")),
    }
    let witness: Vec<Matching> = report
        .max_disjoint_witness
        .iter()
        .map(|&i| report.all_stable[i].clone())
        .collect();
    match teo_sethuraman_transform(inst, &witness) {
        Ok(out) => {
            let as_chain = MatchingChain::from_matchings(out);
            let violations = as_chain.validate(inst);
            (!violations.is_empty())
                .then(|| format!("transform of the disjoint witness is not a chain: {violations:?}"))
        }
        Err(e) => Some(format!("transform of the disjoint witness failed: {e}")),
    }
}
