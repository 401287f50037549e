//! The rank-one `U(hb)`-free modules `Gamma(lambda,a,b)`, `Theta(lambda,a,b)`
//! and `Omega(lambda,a,beta)` on `C[h, hb]`.
//!
//! Each generator acts either through [`family_act`], written directly with
//! shifts and derivatives, or as a closed [`SkewOperator`] from
//! [`family_to_operator`]. The two are kept independent so they can check
//! each other.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{BiPoly, UniPoly};
use crate::report::Report;
use crate::scalar::{self, Scalar};
use crate::skew::SkewOperator;
use crate::uea::{bracket, AlgElement, GModule, GenSymbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gamma,
    Theta,
    Omega,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Gamma, Family::Theta, Family::Omega];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gamma => "gamma",
            Family::Theta => "theta",
            Family::Omega => "omega",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidParams(format!("unknown family {s:?}")))
    }
}

/// Parameters of one module. `b` is used by Gamma and Theta; `alpha` and
/// `beta` by Omega.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    family: Family,
    lambda: Scalar,
    a: Scalar,
    b: Scalar,
    alpha: UniPoly,
    beta: UniPoly,
}

impl FamilyParams {
    pub fn gamma(lambda: Scalar, a: Scalar, b: Scalar) -> Result<Self> {
        Self::ab(Family::Gamma, lambda, a, b)
    }

    pub fn theta(lambda: Scalar, a: Scalar, b: Scalar) -> Result<Self> {
        Self::ab(Family::Theta, lambda, a, b)
    }

    /// Gamma or Theta.
    pub fn ab(family: Family, lambda: Scalar, a: Scalar, b: Scalar) -> Result<Self> {
        if family == Family::Omega {
            return Err(Error::InvalidParams("Omega takes beta, not b".into()));
        }
        check_lambda(&lambda)?;
        Ok(Self {
            family,
            lambda,
            a,
            b,
            alpha: UniPoly::zero(),
            beta: UniPoly::zero(),
        })
    }

    /// Omega with `alpha` solved from `beta`.
    pub fn omega(lambda: Scalar, a: Scalar, beta: UniPoly) -> Result<Self> {
        let alpha = solve_omega_alpha(&lambda, &a, &beta)?;
        Self::omega_with_alpha(lambda, a, beta, alpha)
    }

    /// Omega with a caller-chosen `alpha`; the constraint is not enforced.
    pub fn omega_with_alpha(lambda: Scalar, a: Scalar, beta: UniPoly, alpha: UniPoly) -> Result<Self> {
        check_lambda(&lambda)?;
        Ok(Self {
            family: Family::Omega,
            lambda,
            a,
            b: Scalar::zero(),
            alpha,
            beta,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn alpha(&self) -> &UniPoly {
        &self.alpha
    }

    pub fn beta(&self) -> &UniPoly {
        &self.beta
    }

    /// Degree of `beta` (Omega only).
    pub fn m(&self) -> Option<u32> {
        self.beta.deg()
    }

    pub fn is_simple(&self) -> bool {
        self.family != Family::Omega || !self.a.is_zero()
    }

    /// Non-fatal remarks about the parameter choice.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.family == Family::Omega {
            if self.a.is_zero() {
                out.push("Omega with a = 0 is reducible: hb*C[h,hb] is a proper submodule".into());
            }
            if self.alpha.deg() != self.beta.deg() {
                out.push(format!(
                    "deg alpha = {:?} differs from deg beta = {:?}",
                    self.alpha.deg(),
                    self.beta.deg()
                ));
            }
        }
        out
    }

    pub fn to_spec(&self) -> ParamSpec {
        let omega = self.family == Family::Omega;
        ParamSpec {
            family: self.family,
            lambda: scalar::fmt_scalar(&self.lambda),
            a: scalar::fmt_scalar(&self.a),
            b: (!omega).then(|| scalar::fmt_scalar(&self.b)),
            beta: omega.then(|| self.beta.to_string()),
            alpha: omega.then(|| self.alpha.to_string()),
        }
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Omega => write!(
                f,
                "omega(lambda={}, a={}, beta={})",
                self.lambda, self.a, self.beta
            ),
            fam => write!(f, "{fam}(lambda={}, a={}, b={})", self.lambda, self.a, self.b),
        }
    }
}

fn check_lambda(lambda: &Scalar) -> Result<()> {
    if lambda.is_zero() {
        Err(Error::InvalidParams("lambda must be nonzero".into()))
    } else {
        Ok(())
    }
}

/// Text form of [`FamilyParams`] as found in parameter files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSpec {
    pub family: Family,
    pub lambda: String,
    #[serde(default = "zero_text")]
    pub a: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    /// Explicit `alpha` for Omega; solved from `beta` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
}

fn zero_text() -> String {
    "0".into()
}

impl ParamSpec {
    pub fn build(&self) -> Result<FamilyParams> {
        let lambda = scalar::parse_scalar(&self.lambda)?;
        let a = scalar::parse_scalar(&self.a)?;
        match self.family {
            Family::Omega => {
                if self.b.is_some() {
                    return Err(Error::InvalidParams("Omega takes beta, not b".into()));
                }
                let beta: UniPoly = self.beta.as_deref().unwrap_or("0").parse()?;
                match &self.alpha {
                    Some(text) => FamilyParams::omega_with_alpha(lambda, a, beta, text.parse()?),
                    None => FamilyParams::omega(lambda, a, beta),
                }
            }
            fam => {
                if self.beta.is_some() || self.alpha.is_some() {
                    return Err(Error::InvalidParams(format!("{fam} takes b, not beta")));
                }
                let b = scalar::parse_scalar(self.b.as_deref().unwrap_or("0"))?;
                FamilyParams::ab(fam, lambda, a, b)
            }
        }
    }
}

/// `(h + k) hb`.
fn hb_times_h_plus(k: i64) -> BiPoly {
    BiPoly::from_terms([((1, 1), Scalar::one()), ((0, 1), scalar::int(k))])
}

/// Image of `p` under one generator, computed straight from the defining formulas.
pub fn family_act(gen: GenSymbol, params: &FamilyParams, p: &BiPoly) -> BiPoly {
    use GenSymbol::*;
    let l = &params.lambda;
    let a = BiPoly::constant(params.a.clone());
    let b = BiPoly::constant(params.b.clone());
    let down = || p.shift_h(&scalar::int(-2));
    let up = || p.shift_h(&scalar::int(2));
    let hb2a = &BiPoly::monomial(0, 2, Scalar::one()) + &a;
    match (params.family, gen) {
        (_, H) => &BiPoly::h() * p,
        (_, Hb) => &BiPoly::hb() * p,
        (Family::Gamma, E) => down().dbar().scale(&(scalar::int(-2) * l)),
        (Family::Gamma, Eb) => down().scale(l),
        (Family::Gamma, Fb) => (&hb2a * &up()).scale(&-(scalar::int(4) * l).recip()),
        (Family::Gamma, F) => {
            let u = up();
            let first = &(&hb_times_h_plus(2) + &b) * &u;
            let second = &hb2a * &u.dbar();
            (&first + &second).scale(&-(scalar::int(2) * l).recip())
        }
        (Family::Theta, F) => up().dbar().scale(&(scalar::int(2) * l)),
        (Family::Theta, Fb) => up().scale(l),
        (Family::Theta, Eb) => (&hb2a * &down()).scale(&-(scalar::int(4) * l).recip()),
        (Family::Theta, E) => {
            let d = down();
            let first = &(&hb_times_h_plus(-2) + &b) * &d;
            let second = &hb2a * &d.dbar();
            (&second - &first).scale(&(scalar::int(2) * l).recip())
        }
        (Family::Omega, E) => {
            let d = down();
            let coef = &BiPoly::h().scale(&(l / scalar::int(2))) + &BiPoly::from(&params.alpha);
            let hba = &BiPoly::hb() + &a;
            &(&coef * &d) - &(&hba * &d.dbar()).scale(l)
        }
        (Family::Omega, F) => {
            let u = up();
            let coef = &BiPoly::h().scale(&(scalar::int(2) * l).recip()) - &BiPoly::from(&params.beta);
            let hba = &BiPoly::hb() - &a;
            -&(&(&coef * &u) + &(&hba * &u.dbar()).scale(&l.recip()))
        }
        (Family::Omega, Eb) => (&(&BiPoly::hb() + &a) * &down()).scale(&(l / scalar::int(2))),
        (Family::Omega, Fb) => (&(&BiPoly::hb() - &a) * &up()).scale(&-(scalar::int(2) * l).recip()),
    }
}

/// The generator's action as a normal-ordered operator.
pub fn family_to_operator(gen: GenSymbol, params: &FamilyParams) -> SkewOperator {
    use GenSymbol::*;
    let l = &params.lambda;
    let a = BiPoly::constant(params.a.clone());
    let b = BiPoly::constant(params.b.clone());
    let m = |p: &BiPoly| SkewOperator::mult(p);
    let s = SkewOperator::shift(1);
    let si = SkewOperator::shift(-1);
    let d = SkewOperator::dbar();
    let hb2a = m(&(&BiPoly::monomial(0, 2, Scalar::one()) + &a));
    match (params.family, gen) {
        (_, H) => SkewOperator::h(),
        (_, Hb) => SkewOperator::hb(),
        (Family::Gamma, E) => (&d * &s).scale(&(scalar::int(-2) * l)),
        (Family::Gamma, Eb) => s.scale(l),
        (Family::Gamma, Fb) => (&hb2a * &si).scale(&-(scalar::int(4) * l).recip()),
        (Family::Gamma, F) => {
            let first = &m(&(&hb_times_h_plus(2) + &b)) * &si;
            let second = &(&hb2a * &d) * &si;
            (&first + &second).scale(&-(scalar::int(2) * l).recip())
        }
        (Family::Theta, F) => (&d * &si).scale(&(scalar::int(2) * l)),
        (Family::Theta, Fb) => si.scale(l),
        (Family::Theta, Eb) => (&hb2a * &s).scale(&-(scalar::int(4) * l).recip()),
        (Family::Theta, E) => {
            let first = &m(&(&hb_times_h_plus(-2) + &b)) * &s;
            let second = &(&hb2a * &d) * &s;
            (&second - &first).scale(&(scalar::int(2) * l).recip())
        }
        (Family::Omega, E) => {
            let coef = &BiPoly::h().scale(&(l / scalar::int(2))) + &BiPoly::from(&params.alpha);
            let hba = m(&(&BiPoly::hb() + &a));
            &(&m(&coef) * &s) - &(&(&hba * &d) * &s).scale(l)
        }
        (Family::Omega, F) => {
            let coef = &BiPoly::h().scale(&(scalar::int(2) * l).recip()) - &BiPoly::from(&params.beta);
            let hba = m(&(&BiPoly::hb() - &a));
            let op = &(&m(&coef) * &si) + &(&(&hba * &d) * &si).scale(&l.recip());
            -&op
        }
        (Family::Omega, Eb) => (&m(&(&BiPoly::hb() + &a)) * &s).scale(&(l / scalar::int(2))),
        (Family::Omega, Fb) => (&m(&(&BiPoly::hb() - &a)) * &si).scale(&-(scalar::int(2) * l).recip()),
    }
}

/// Image of an algebra element under [`family_to_operator`].
pub fn element_operator(x: &AlgElement, params: &FamilyParams) -> SkewOperator {
    let mut out = SkewOperator::zero();
    for (g, c) in x.terms() {
        out = &out + &family_to_operator(*g, params).scale(c);
    }
    out
}

/// `[X, Y] - op([x, y])` for the generator pair.
pub fn axiom_residual(x: GenSymbol, y: GenSymbol, params: &FamilyParams) -> SkewOperator {
    let lhs = family_to_operator(x, params).commutator(&family_to_operator(y, params));
    let rhs = element_operator(&bracket(&AlgElement::gen(x), &AlgElement::gen(y)), params);
    &lhs - &rhs
}

/// The 15 unordered generator pairs in PBW order.
pub fn generator_pairs() -> Vec<(GenSymbol, GenSymbol)> {
    let mut out = Vec::with_capacity(15);
    for (i, x) in GenSymbol::ALL.iter().enumerate() {
        for y in &GenSymbol::ALL[i + 1..] {
            out.push((*x, *y));
        }
    }
    out
}

/// Checks every bracket relation as an exact operator identity.
pub fn check_family_axioms(params: &FamilyParams) -> Report {
    let mut report = Report::new("axioms");
    for (x, y) in generator_pairs() {
        let res = axiom_residual(x, y, params);
        let witness = if res.is_zero() {
            String::new()
        } else {
            format!("residual {res}")
        };
        report.check(format!("[{x},{y}]"), res.is_zero(), witness);
    }
    for w in params.warnings() {
        report.data.insert("warning".into(), w.into());
    }
    report
}

/// The unique `alpha` making `[e, f] = h` hold in Omega, found by solving the
/// linear system the residual operator imposes on `alpha`'s coefficients.
pub fn solve_omega_alpha(lambda: &Scalar, a: &Scalar, beta: &UniPoly) -> Result<UniPoly> {
    check_lambda(lambda)?;
    // Allow one degree of slack so the solver does not presuppose deg alpha = deg beta.
    let n = beta.deg().map_or(1, |d| d as usize + 2);
    let residual = |alpha: UniPoly| -> Result<SkewOperator> {
        let params = FamilyParams::omega_with_alpha(lambda.clone(), a.clone(), beta.clone(), alpha)?;
        Ok(axiom_residual(GenSymbol::E, GenSymbol::F, &params))
    };
    let r0 = residual(UniPoly::zero())?;
    let cols: Vec<SkewOperator> = (0..n)
        .map(|k| Ok(&residual(UniPoly::monomial(k as u32, Scalar::one()))? - &r0))
        .collect::<Result<_>>()?;
    let mut keys: Vec<_> = r0.terms().map(|(k, _)| *k).collect();
    for col in &cols {
        keys.extend(col.terms().map(|(k, _)| *k));
    }
    keys.sort();
    keys.dedup();
    let coef = |op: &SkewOperator, key| {
        op.terms()
            .find(|(k, _)| **k == key)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Scalar::zero)
    };
    let mat: Vec<Vec<Scalar>> = keys
        .iter()
        .map(|key| cols.iter().map(|col| coef(col, *key)).collect())
        .collect();
    let rhs: Vec<Scalar> = keys.iter().map(|key| -coef(&r0, *key)).collect();
    let p = linalg::solve(&mat, &rhs, n)
        .ok_or_else(|| Error::Precondition("no alpha satisfies [e,f] = h".into()))?;
    Ok(UniPoly::from_coeffs(p))
}

/// `p = lambda^2 A q` with `A` upper unitriangular, `A[k][l] = 2 b^(l-k)` above the diagonal.
pub fn eq1_alpha(lambda: &Scalar, b: &Scalar, beta: &UniPoly) -> Result<UniPoly> {
    check_lambda(lambda)?;
    let q = beta.coeffs();
    let l2 = lambda * lambda;
    let p = (0..q.len()).map(|k| {
        let mut acc = q[k].clone();
        let mut bp = Scalar::one();
        for ql in &q[k + 1..] {
            bp *= b;
            acc += scalar::int(2) * &bp * ql;
        }
        &l2 * acc
    });
    Ok(UniPoly::from_coeffs(p))
}

/// Checks that `hb * C[h, hb]` is closed under every generator on monomials
/// `h^i hb^j` with `j >= 1` and `i + j <= depth`.
pub fn omega_ideal_witness(params: &FamilyParams, depth: u32) -> Report {
    let mut report = Report::new("omega-ideal");
    for g in GenSymbol::ALL {
        let mut bad = None;
        'scan: for j in 1..=depth {
            for i in 0..=depth - j {
                let img = family_act(g, params, &BiPoly::monomial(i, j, Scalar::one()));
                if !img.divisible_by_hb() {
                    bad = Some(format!("{g}.(h^{i}*hb^{j}) = {img}"));
                    break 'scan;
                }
            }
        }
        report.check(format!("closed/{g}"), bad.is_none(), bad.unwrap_or_default());
    }
    report
}

impl crate::uea::ModuleElement for BiPoly {
    fn zero() -> Self {
        BiPoly::zero()
    }
    fn is_zero(&self) -> bool {
        BiPoly::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        *self = &*self + &other.scale(c);
    }
}

impl GModule for FamilyParams {
    type Elem = BiPoly;
    fn act(&self, g: GenSymbol, x: &BiPoly) -> BiPoly {
        family_act(g, self, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};
    use GenSymbol::*;

    fn p(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    fn u(s: &str) -> UniPoly {
        s.parse().unwrap()
    }

    #[test]
    fn action_examples() {
        let g2 = FamilyParams::gamma(int(2), int(0), int(0)).unwrap();
        assert_eq!(family_act(Eb, &g2, &p("h^2")), p("2*h^2 - 8*h + 8"));
        assert!(family_act(E, &g2, &p("1")).is_zero());
        let g = FamilyParams::gamma(int(1), int(3), int(1)).unwrap();
        assert_eq!(family_act(Fb, &g, &p("1")), p("-1/4*(hb^2 + 3)"));
        let o = FamilyParams::omega(int(1), int(2), UniPoly::zero()).unwrap();
        assert_eq!(family_act(Eb, &o, &p("1")), p("1/2*(hb + 2)"));
    }

    #[test]
    fn operator_examples() {
        let g = FamilyParams::gamma(int(3), int(1), int(2)).unwrap();
        assert_eq!(family_to_operator(Eb, &g), SkewOperator::shift(1).scale(&int(3)));
        assert_eq!(family_to_operator(E, &g), SkewOperator::term(0, 0, 1, 1, int(-6)));
        let t = FamilyParams::theta(int(3), int(1), int(2)).unwrap();
        assert_eq!(family_to_operator(Fb, &t), SkewOperator::shift(-1).scale(&int(3)));
    }

    #[test]
    fn operator_matches_direct_action() {
        let fams = [
            FamilyParams::gamma(frac(1, 2), int(3), int(-1)).unwrap(),
            FamilyParams::theta(int(-2), frac(1, 3), int(5)).unwrap(),
            FamilyParams::omega(int(2), int(-1), u("1 + 3*hb^2")).unwrap(),
        ];
        let polys = [p("1"), p("h^3*hb"), p("hb^4 - h"), p("(h + hb)^3")];
        for params in &fams {
            for g in GenSymbol::ALL {
                for q in &polys {
                    assert_eq!(
                        family_to_operator(g, params).apply(q),
                        family_act(g, params, q),
                        "{params} {g} {q}"
                    );
                }
            }
        }
    }

    #[test]
    fn axioms_hold() {
        for params in [
            FamilyParams::gamma(int(1), int(0), int(0)).unwrap(),
            FamilyParams::theta(int(3), int(-2), int(5)).unwrap(),
            FamilyParams::omega(int(1), int(1), u("hb")).unwrap(),
        ] {
            let r = check_family_axioms(&params);
            assert_eq!(r.checks.len(), 15);
            assert!(r.all_pass(), "{params}: {:?}", r.checks);
        }
    }

    #[test]
    fn broken_alpha_breaks_ef() {
        let params = FamilyParams::omega_with_alpha(int(1), int(1), u("hb"), UniPoly::zero()).unwrap();
        let r = check_family_axioms(&params);
        assert_eq!(r.get("[f,e]").unwrap().status, crate::report::Status::Fail);
        assert_eq!(r.count(crate::report::Status::Fail), 1);
    }

    #[test]
    fn alpha_solver_examples() {
        assert_eq!(solve_omega_alpha(&int(3), &int(5), &u("2")).unwrap(), u("18"));
        assert_eq!(solve_omega_alpha(&int(1), &int(1), &u("hb")).unwrap(), u("2 + hb"));
        assert!(solve_omega_alpha(&int(2), &int(7), &UniPoly::zero()).unwrap().is_zero());
        assert_eq!(eq1_alpha(&int(1), &int(1), &u("hb")).unwrap(), u("2 + hb"));
        assert_eq!(eq1_alpha(&int(3), &int(0), &u("1 + hb^2")).unwrap(), u("9 + 9*hb^2"));
    }

    #[test]
    fn omega_a_zero_ideal() {
        let o = FamilyParams::omega(int(1), int(0), u("hb")).unwrap();
        assert!(omega_ideal_witness(&o, 8).all_pass());
        assert!(!o.warnings().is_empty());
        let o = FamilyParams::omega(int(1), int(2), UniPoly::zero()).unwrap();
        assert!(!omega_ideal_witness(&o, 4).all_pass());
    }

    #[test]
    fn param_spec_round_trip() {
        let spec: ParamSpec =
            serde_json::from_str(r#"{"family":"omega","lambda":"1","a":"2","beta":"1 + 3*hb^2"}"#).unwrap();
        let params = spec.build().unwrap();
        assert_eq!(params.beta(), &u("1 + 3*hb^2"));
        assert_eq!(params.to_spec().build().unwrap(), params);
        let spec: ParamSpec =
            serde_json::from_str(r#"{"family":"gamma","lambda":"1/2","a":"3","b":"-1"}"#).unwrap();
        assert_eq!(spec.build().unwrap().b(), &int(-1));
        assert!(FamilyParams::gamma(int(0), int(1), int(1)).is_err());
    }
}
