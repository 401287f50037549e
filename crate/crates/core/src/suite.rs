//! Job configuration and suite dispatch shared by the CLI and the tests.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{self, check_family_axioms, Family, FamilyParams, ParamSpec};
use crate::highest_weight::{build_hw_module, singular_scan, verma_reducible_predicate, HighestWeight, HwModule};
use crate::induced::{self, BorelSpec};
use crate::poly::{BiPoly, UniPoly};
use crate::report::{timed, Report, Status};
use crate::scalar::{self, Scalar};
use crate::tensor::closure::{self, certify_irreducible, check_invariant_subspace, default_seeds};
use crate::tensor::{lemma, recover, whittaker, TensorModule};
use crate::uea::GModule;

pub const SUITES: [&str; 8] = [
    "axioms",
    "irreducible",
    "lemma51",
    "recover",
    "singular",
    "induced",
    "whittaker",
    "omega-constraint",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub suite: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default = "one_text")]
    pub lambda: String,
    #[serde(default = "zero_text")]
    pub a: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(default = "one_text")]
    pub eta: String,
    #[serde(default = "one_text")]
    pub theta: String,
    #[serde(default = "default_depth")]
    pub depth: u32,
    #[serde(default = "default_seeds_count")]
    pub seeds: usize,
    #[serde(default)]
    pub rng: u64,
    /// Polynomial `g` for the `w^(r)` checks.
    #[serde(default = "one_text")]
    pub g: String,
    #[serde(default = "default_r")]
    pub r: u32,
    #[serde(default = "default_max_level")]
    pub max_level: u32,
    /// `(mu1, mu2)` pairs for the Whittaker search; `{-1,0,1}^2` when empty.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub grid: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub timing: bool,
}

fn one_text() -> String {
    "1".into()
}
fn zero_text() -> String {
    "0".into()
}
fn default_depth() -> u32 {
    5
}
fn default_seeds_count() -> usize {
    10
}
fn default_r() -> u32 {
    2
}
fn default_max_level() -> u32 {
    6
}

impl JobConfig {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            family: None,
            lambda: one_text(),
            a: zero_text(),
            b: None,
            beta: None,
            alpha: None,
            eta: one_text(),
            theta: one_text(),
            depth: default_depth(),
            seeds: default_seeds_count(),
            rng: 0,
            g: one_text(),
            r: default_r(),
            max_level: default_max_level(),
            grid: Vec::new(),
            timing: false,
        }
    }

    /// Copies family parameters from a [`FamilyParams`].
    pub fn with_params(mut self, params: &FamilyParams) -> Self {
        let spec = params.to_spec();
        self.family = Some(spec.family);
        self.lambda = spec.lambda;
        self.a = spec.a;
        self.b = spec.b;
        self.beta = spec.beta;
        self.alpha = spec.alpha;
        self
    }

    pub fn with_weight(mut self, eta: &Scalar, theta: &Scalar) -> Self {
        self.eta = scalar::fmt_scalar(eta);
        self.theta = scalar::fmt_scalar(theta);
        self
    }

    pub fn param_spec(&self) -> Result<ParamSpec> {
        let family = self
            .family
            .ok_or_else(|| Error::InvalidParams(format!("suite {} needs a family", self.suite)))?;
        Ok(ParamSpec {
            family,
            lambda: self.lambda.clone(),
            a: self.a.clone(),
            b: self.b.clone(),
            beta: self.beta.clone(),
            alpha: self.alpha.clone(),
        })
    }

    pub fn params(&self) -> Result<FamilyParams> {
        self.param_spec()?.build()
    }

    pub fn weight(&self) -> Result<HighestWeight> {
        Ok(HighestWeight::new(
            scalar::parse_scalar(&self.eta)?,
            scalar::parse_scalar(&self.theta)?,
        ))
    }

    /// The `L` factor: the Verma module when `eta != 0`, else `L(0, theta)`.
    pub fn hw_module(&self) -> Result<HwModule> {
        let hw = self.weight()?;
        if hw.eta.is_zero() {
            build_hw_module(&hw, self.max_level)
        } else {
            Ok(HwModule::verma(hw))
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !SUITES.contains(&self.suite.as_str()) {
            return Err(Error::UnknownSuite(self.suite.clone()));
        }
        if self.depth == 0 {
            return Err(Error::InvalidParams("depth must be at least 1".into()));
        }
        Ok(())
    }

    fn whittaker_grid(&self) -> Result<Vec<(Scalar, Scalar)>> {
        if self.grid.is_empty() {
            let vals = [-1, 0, 1];
            return Ok(vals
                .iter()
                .flat_map(|&x| vals.iter().map(move |&y| (scalar::int(x), scalar::int(y))))
                .collect());
        }
        self.grid
            .iter()
            .map(|(x, y)| Ok((scalar::parse_scalar(x)?, scalar::parse_scalar(y)?)))
            .collect()
    }
}

/// Runs the configured suite. Failures to set up become a single ERROR record.
pub fn run_suite(config: &JobConfig) -> Report {
    let mut report = match config.validate().and_then(|()| dispatch(config)) {
        Ok(r) => r,
        Err(e) => {
            let mut r = Report::new(config.suite.clone());
            let id = if matches!(e, Error::UnknownSuite(_)) { "suite" } else { "config" };
            r.push(id, Status::Error, e.to_string());
            r
        }
    };
    report.suite = config.suite.clone();
    report.config = serde_json::to_value(config).expect("config serializes");
    report.sort();
    report
}

fn dispatch(config: &JobConfig) -> Result<Report> {
    let timing = config.timing;
    let mut report = Report::new(config.suite.clone());
    match config.suite.as_str() {
        "axioms" => {
            let params = config.params()?;
            timed(timing, &mut report, |r| r.absorb("family", check_family_axioms(&params)));
            let warnings = params.warnings();
            if !warnings.is_empty() {
                report.data.insert("warnings".into(), warnings.into());
            }
        }
        "irreducible" => {
            let params = config.params()?;
            let module = TensorModule::new(params, irreducible_factor(config)?);
            let seeds = default_seeds(&module, config.depth, config.seeds, config.rng);
            if module.params.is_simple() {
                timed(timing, &mut report, |r| {
                    r.absorb("certify", certify_irreducible(&module, &seeds, config.depth))
                });
            } else {
                let inv = check_invariant_subspace(&module, config.depth)?;
                timed(timing, &mut report, |r| r.absorb("invariant", inv));
                let inside = closure::into_hb_ideal(&seeds);
                let cert = certify_irreducible(&module, &inside, config.depth);
                let reached: Vec<&str> = cert
                    .checks
                    .iter()
                    .filter(|c| c.status == Status::Pass)
                    .map(|c| c.id.as_str())
                    .collect();
                report.check(
                    "ideal-seeds/never-reach-hw",
                    reached.is_empty(),
                    if reached.is_empty() {
                        format!("{} seeds inside hb*C[h,hb] ⊗ L", inside.len())
                    } else {
                        format!("reached from {}", reached.join(", "))
                    },
                );
            }
            report.data.insert("module".into(), module.to_string().into());
        }
        "lemma51" => {
            let params = config.params()?;
            let module = TensorModule::new(params, config.hw_module()?);
            let g: BiPoly = config.g.parse()?;
            let sub = lemma::lemma51_check(&module, &g, config.r)?;
            timed(timing, &mut report, |r| r.absorb("lemma51", sub));
            if module.family() == Family::Omega {
                let c = lemma::omega_casimir_on_hw(&module);
                report.data.insert("omega-casimir-on-hw".into(), c.to_string().into());
            }
        }
        "recover" => {
            let params = config.params()?;
            let module = TensorModule::new(params, config.hw_module()?);
            timed(timing, &mut report, |r| r.absorb("recover", recover::recover_report(&module)));
        }
        "singular" => {
            let hw = config.weight()?;
            let found = singular_scan(&hw, config.max_level);
            let predicted = verma_reducible_predicate(&hw);
            let total: usize = found.values().map(Vec::len).sum();
            report.check(
                "predicate-agrees",
                predicted == (total > 0),
                format!("predicate {predicted}; singular vectors up to level {}: {total}", config.max_level),
            );
            let listing: serde_json::Map<String, serde_json::Value> = found
                .iter()
                .map(|(level, vecs)| {
                    let texts: Vec<String> = vecs.iter().map(|v| v.to_string()).collect();
                    (level.to_string(), texts.into())
                })
                .collect();
            report.data.insert("singular-vectors".into(), listing.into());
        }
        "induced" => {
            let params = config.params()?;
            let hw = config.weight()?;
            let module = TensorModule::new(params.clone(), HwModule::verma(hw.clone()));
            let spec = BorelSpec::for_module(&module);
            timed(timing, &mut report, |r| r.absorb("borel-axioms", induced::check_borel_axioms(&spec)));
            timed(timing, &mut report, |r| {
                r.absorb("borel-reducibility", induced::borel_reducibility_check(&spec, config.depth))
            });
            let phi = induced::check_phi(&module, config.depth)?;
            timed(timing, &mut report, |r| r.absorb("phi", phi));
            timed(timing, &mut report, |r| {
                r.absorb(
                    "reducibility",
                    induced::check_reducibility_wiring(&params, std::slice::from_ref(&hw), config.max_level),
                )
            });
        }
        "whittaker" => {
            let params = config.params()?;
            let module = TensorModule::new(params, config.hw_module()?);
            let grid = config.whittaker_grid()?;
            timed(timing, &mut report, |r| {
                r.absorb("whittaker", whittaker::whittaker_report(&module, &grid, config.depth))
            });
        }
        "omega-constraint" => {
            let lambda = scalar::parse_scalar(&config.lambda)?;
            let a = scalar::parse_scalar(&config.a)?;
            let beta: UniPoly = config.beta.as_deref().unwrap_or("0").parse()?;
            let solved = family::solve_omega_alpha(&lambda, &a, &beta)?;
            let closed = family::eq1_alpha(&lambda, &a, &beta)?;
            report.check(
                "solver-matches-closed-form",
                solved == closed,
                format!("solved alpha = {solved}; closed form with b = a gives {closed}"),
            );
            let params = FamilyParams::omega_with_alpha(lambda, a, beta, solved.clone())?;
            timed(timing, &mut report, |r| r.absorb("axioms", check_family_axioms(&params)));
            report.data.insert("alpha".into(), solved.to_string().into());
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    }
    Ok(report)
}

/// For certification the `L` factor must be simple: a certified Verma
/// module or a finite-dimensional quotient.
fn irreducible_factor(config: &JobConfig) -> Result<HwModule> {
    build_hw_module(&config.weight()?, config.max_level)
}

/// Action of a generator word on a polynomial of the family module.
pub fn act_eval(params: &FamilyParams, expr: &str, target: &str) -> Result<BiPoly> {
    let word = crate::parse::parse_word(expr)?;
    let target: BiPoly = target.parse()?;
    Ok(params.act_word(&word, &target))
}
