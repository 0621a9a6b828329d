//! Named constructions bundled with their expected outcomes, runnable end
//! to end into self-contained, re-verifiable reports.

mod builtin;
mod certificate;

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use certificate::Certificate;

use crate::error::{Error, Result};
use crate::groebner::GbStats;
use crate::polyring::is_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioInfo {
    pub name: &'static str,
    pub description: &'static str,
    /// Parameters this scenario reads.
    pub params: &'static [&'static str],
}

const REGISTRY: &[ScenarioInfo] = &[
    ScenarioInfo {
        name: "hartshorne",
        description: "socle classes [y^n z^n + (x^(n+1), y^(n+1))] in K[w,x,y,z]/(wx-yz) are killed by w, x, y, z",
        params: &["n_max", "k_max"],
    },
    ScenarioInfo {
        name: "singh-p-torsion",
        description: "p-torsion classes in H^3 of Z[u,v,w,x,y,z]/(ux+vy+wz) via weight reduction",
        params: &["primes", "k_max"],
    },
    ScenarioInfo {
        name: "ptor2-theorem",
        description: "lambda_q (g_1...g_n)^(q-1) lies in (g_i^(2q-1)) over QQ and GF(p)",
        params: &["primes", "e", "p", "f", "g"],
    },
    ScenarioInfo {
        name: "ring-A-colon",
        description: "(a^n, b^n) : s a b^(n-1) contracted to K[s,t] is (Q_(n-1))",
        params: &["n_max", "p"],
    },
    ScenarioInfo {
        name: "ring-B-colon",
        description: "(a^n, b^n, c) : s a b^(n-1) contracted to K[s,t] is (Q_(n-1))",
        params: &["n_max", "p"],
    },
    ScenarioInfo {
        name: "singh-swanson-S",
        description: "annihilator of eta_n in the 8-variable hypersurface S, with Frobenius-power witnesses",
        params: &["n_max", "p", "q_list"],
    },
    ScenarioInfo {
        name: "katzman-factorization",
        description: "s u^2 x^2 - (s+t) u x v y + t v^2 y^2 = (s u x - t v y)(u x - v y)",
        params: &[],
    },
    ScenarioInfo {
        name: "toeplitz-suite",
        description: "recursion vs determinant, generating function, numeric roots, factor census, divisibility ladder",
        params: &["n_max", "p"],
    },
];

pub fn list_scenarios() -> Vec<ScenarioInfo> {
    REGISTRY.to_vec()
}

pub fn scenario_info(name: &str) -> Result<ScenarioInfo> {
    REGISTRY
        .iter()
        .find(|s| s.name == name)
        .copied()
        .ok_or_else(|| Error::UnknownScenario(name.to_string()))
}

/// Run-time overrides. Fields a scenario does not read are ignored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_list: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<String>>,
}

impl Params {
    pub fn from_json(text: &str) -> Result<Params> {
        Ok(serde_json::from_str(text)?)
    }

    /// Fields set in `over` win.
    pub fn overlay(&self, over: &Params) -> Params {
        Params {
            primes: over.primes.clone().or_else(|| self.primes.clone()),
            p: over.p.or(self.p),
            n_max: over.n_max.or(self.n_max),
            k_max: over.k_max.or(self.k_max),
            q_list: over.q_list.clone().or_else(|| self.q_list.clone()),
            e: over.e.or(self.e),
            f: over.f.clone().or_else(|| self.f.clone()),
            g: over.g.clone().or_else(|| self.g.clone()),
        }
    }

    /// Keeps only the named fields.
    fn restrict(&self, keep: &[&str]) -> Params {
        let has = |k: &str| keep.contains(&k);
        Params {
            primes: self.primes.clone().filter(|_| has("primes")),
            p: self.p.filter(|_| has("p")),
            n_max: self.n_max.filter(|_| has("n_max")),
            k_max: self.k_max.filter(|_| has("k_max")),
            q_list: self.q_list.clone().filter(|_| has("q_list")),
            e: self.e.filter(|_| has("e")),
            f: self.f.clone().filter(|_| has("f")),
            g: self.g.clone().filter(|_| has("g")),
        }
    }
}

fn bound<T: PartialOrd + std::fmt::Display>(name: &str, v: T, lo: T, hi: T) -> Result<()> {
    if v < lo || v > hi {
        return Err(Error::ParamOutOfBounds(format!("{name} = {v} is outside {lo}..={hi}")));
    }
    Ok(())
}

fn prime_in(name: &str, p: u64, hi: u64) -> Result<()> {
    bound(name, p, 2, hi)?;
    if !is_prime(p) {
        return Err(Error::ParamOutOfBounds(format!("{name} = {p} is not prime")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    /// The engine gave up, e.g. on its degree guard.
    Unknown,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gb: Option<GbStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    /// Informational checks do not affect the verdict.
    pub required: bool,
    pub expected: String,
    pub outcome: Outcome,
    pub certificate: Certificate,
    pub diagnostics: Diagnostics,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub params: Params,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::MalformedReport(e.to_string()))
    }

    /// The report with every timing zeroed.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.elapsed_ms = 0.0;
        }
        r
    }

    pub fn required_checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.required)
    }
}

pub(crate) struct Runner {
    checks: Vec<CheckResult>,
    notes: Vec<String>,
}

pub(crate) type Evidence = (Certificate, Diagnostics);

impl Runner {
    fn new() -> Self {
        Runner { checks: Vec::new(), notes: Vec::new() }
    }

    pub(crate) fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub(crate) fn check(
        &mut self,
        name: impl Into<String>,
        expected: impl Into<String>,
        required: bool,
        budget_ms: Option<f64>,
        body: impl FnOnce() -> Result<Evidence>,
    ) {
        let start = Instant::now();
        let result = body();
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        let (outcome, certificate, mut diagnostics) = match result {
            Ok((cert, diag)) => {
                let outcome = if cert.holds() { Outcome::Pass } else { Outcome::Fail };
                (outcome, cert, diag)
            }
            Err(e @ Error::GuardExceeded(_)) => {
                (Outcome::Unknown, Certificate::None, Diagnostics { gb: None, message: Some(e.to_string()) })
            }
            Err(e) => (Outcome::Fail, Certificate::None, Diagnostics { gb: None, message: Some(e.to_string()) }),
        };
        let mut outcome = outcome;
        if let Some(b) = budget_ms {
            if elapsed_ms > b && outcome == Outcome::Pass {
                outcome = Outcome::Fail;
                diagnostics.message = Some(format!("exceeded the {b} ms budget"));
            }
        }
        self.checks.push(CheckResult {
            name: name.into(),
            required,
            expected: expected.into(),
            outcome,
            certificate,
            diagnostics,
            elapsed_ms,
        });
    }

    fn finish(self, scenario: &str, params: Params) -> Report {
        let passed = !self.checks.is_empty()
            && self.checks.iter().filter(|c| c.required).all(|c| c.outcome == Outcome::Pass);
        Report { scenario: scenario.to_string(), params, passed, checks: self.checks, notes: self.notes }
    }
}

/// Defaults for `name`, overlaid with `params`, validated and restricted to
/// the fields the scenario reads.
pub fn resolve_params(name: &str, params: &Params) -> Result<Params> {
    let info = scenario_info(name)?;
    let defaults = builtin::defaults(name);
    let p = defaults.overlay(&params.restrict(info.params)).restrict(info.params);
    builtin::validate(name, &p)?;
    Ok(p)
}

pub fn run_scenario(name: &str, params: &Params) -> Result<Report> {
    let resolved = resolve_params(name, params)?;
    let mut runner = Runner::new();
    builtin::run(name, &resolved, &mut runner)?;
    Ok(runner.finish(name, resolved))
}

/// Re-checks every certificate in `report` and the consistency of the
/// recorded outcomes with them.
pub fn reverify(report: &Report) -> Result<bool> {
    scenario_info(&report.scenario).map_err(|_| Error::MalformedReport(format!("unknown scenario `{}`", report.scenario)))?;
    if report.checks.is_empty() {
        return Err(Error::MalformedReport("no checks".into()));
    }
    let mut ok = true;
    for c in &report.checks {
        let rechecked = c.certificate.recheck();
        ok &= rechecked == (c.outcome == Outcome::Pass);
    }
    let passed = report.required_checks().all(|c| c.outcome == Outcome::Pass);
    Ok(ok && passed == report.passed)
}

pub fn reverify_json(text: &str) -> Result<bool> {
    reverify(&Report::from_json(text)?)
}
