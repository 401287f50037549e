//! Reading module parameters back off the action on `1 ⊗ v`.
//!
//! Every probe below acts on `1 ⊗ v` and reads the `v`-component; shifts and
//! `d/dhb` do nothing to the constant `1`, and the `L`-side contributions land
//! on other basis vectors, so each coefficient is a parameter up to a known factor.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::poly::{BiPoly, UniPoly};
use crate::report::Report;
use crate::scalar::{self, Scalar};
use crate::tensor::TensorModule;
use crate::uea::{GModule, GenSymbol};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Recovered {
    pub family: Family,
    pub lambda: Scalar,
    pub a: Scalar,
    pub b: Option<Scalar>,
    pub beta: Option<UniPoly>,
    pub eta: Scalar,
    pub theta: Scalar,
}

/// Text form for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoveredText {
    pub family: Family,
    pub lambda: String,
    pub a: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    pub eta: String,
    pub theta: String,
}

impl Recovered {
    pub fn to_text(&self) -> RecoveredText {
        RecoveredText {
            family: self.family,
            lambda: scalar::fmt_scalar(&self.lambda),
            a: scalar::fmt_scalar(&self.a),
            b: self.b.as_ref().map(scalar::fmt_scalar),
            beta: self.beta.as_ref().map(|p| p.to_string()),
            eta: scalar::fmt_scalar(&self.eta),
            theta: scalar::fmt_scalar(&self.theta),
        }
    }

    /// What the module was constructed from, in the same shape.
    pub fn expected(module: &TensorModule) -> Self {
        let p = &module.params;
        let omega = p.family() == Family::Omega;
        Self {
            family: p.family(),
            lambda: p.lambda().clone(),
            a: p.a().clone(),
            b: (!omega).then(|| p.b().clone()),
            beta: omega.then(|| p.beta().clone()),
            eta: module.hw.weight.eta.clone(),
            theta: module.hw.weight.theta.clone(),
        }
    }
}

impl fmt::Display for Recovered {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(lambda={}, a={}", self.family, self.lambda, self.a)?;
        if let Some(b) = &self.b {
            write!(f, ", b={b}")?;
        }
        if let Some(beta) = &self.beta {
            write!(f, ", beta={beta}")?;
        }
        write!(f, ") ⊗ L(eta={}, theta={})", self.eta, self.theta)
    }
}

fn probe(module: &TensorModule, g: GenSymbol) -> BiPoly {
    module.act(g, &module.hw_vector()).component(0, 0)
}

pub fn recover_parameters(module: &TensorModule) -> Result<Recovered> {
    use GenSymbol::*;
    let eta = probe(module, Hb).coeff(0, 0);
    let theta = probe(module, H).coeff(0, 0);
    let (lambda, a, b, beta) = match module.family() {
        Family::Gamma => {
            // eb = lambda s; fb = -(hb^2 + a)/(4 lambda) s^-1; f has constant part -b/(2 lambda)
            let lambda = probe(module, Eb).coeff(0, 0);
            let a = scalar::int(-4) * &lambda * probe(module, Fb).coeff(0, 0);
            let b = scalar::int(-2) * &lambda * probe(module, F).coeff(0, 0);
            (lambda, a, Some(b), None)
        }
        Family::Theta => {
            let lambda = probe(module, Fb).coeff(0, 0);
            let a = scalar::int(-4) * &lambda * probe(module, Eb).coeff(0, 0);
            let b = scalar::int(-2) * &lambda * probe(module, E).coeff(0, 0);
            (lambda, a, Some(b), None)
        }
        Family::Omega => {
            // eb.1 = lambda/2 (hb + a); f.1 = -h/(2 lambda) + beta(hb)
            let eb = probe(module, Eb);
            let lambda = scalar::int(2) * eb.coeff(0, 1);
            if lambda == scalar::zero() {
                return Err(Error::Precondition("eb probe has no hb term".into()));
            }
            let a = scalar::int(2) * eb.coeff(0, 0) / &lambda;
            let beta = probe(module, F).h_coeff(0);
            (lambda, a, None, Some(beta))
        }
    };
    Ok(Recovered {
        family: module.family(),
        lambda,
        a,
        b,
        beta,
        eta,
        theta,
    })
}

/// Recovers and compares with the construction parameters.
pub fn recover_report(module: &TensorModule) -> Report {
    let mut report = Report::new("recover");
    match recover_parameters(module) {
        Ok(rec) => {
            let expected = Recovered::expected(module);
            report.check(
                "round-trip",
                rec == expected,
                format!("recovered {rec}; constructed {expected}"),
            );
            report
                .data
                .insert("recovered".into(), serde_json::to_value(rec.to_text()).expect("serializable"));
        }
        Err(e) => report.push("round-trip", crate::report::Status::Error, e.to_string()),
    }
    report
}
