//! Verma modules `L̄(eta, theta)` with basis `f^i fb^j v`, finite-dimensional
//! evaluation quotients `L(0, n)`, and singular-vector search.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::generator_pairs;
use crate::linalg;
use crate::report::Report;
use crate::scalar::{self, Scalar};
use crate::uea::{bracket, AlgElement, GModule, GenSymbol, ModuleElement, PbwMonomial, UeaElement};

/// Eigenvalues of `hb` (`eta`) and `h` (`theta`) on the highest-weight vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HighestWeight {
    pub eta: Scalar,
    pub theta: Scalar,
}

impl HighestWeight {
    pub fn new(eta: Scalar, theta: Scalar) -> Self {
        Self { eta, theta }
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(eta={}, theta={})", self.eta, self.theta)
    }
}

/// Combination of basis vectors `f^i fb^j v`, keyed by `(i, j)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VermaElement {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl VermaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The highest-weight vector.
    pub fn hw() -> Self {
        Self::basis(0, 0)
    }

    pub fn basis(i: u32, j: u32) -> Self {
        Self::term(i, j, Scalar::one())
    }

    pub fn term(i: u32, j: u32, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(i, j, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Scalar)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in iter {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Scalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    /// Highest `i + j` present.
    pub fn max_level(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }
}

impl ModuleElement for VermaElement {
    fn zero() -> Self {
        VermaElement::zero()
    }
    fn is_zero(&self) -> bool {
        VermaElement::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        for ((i, j), v) in &other.terms {
            self.add_term(*i, *j, v * c);
        }
    }
}

impl fmt::Display for VermaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, ((i, j), c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if !c.is_one() {
                write!(f, "{c}*")?;
            }
            write!(f, "{}", basis_name(*i, *j))?;
        }
        Ok(())
    }
}

/// `f^i fb^j v` in text form.
pub fn basis_name(i: u32, j: u32) -> String {
    let mut parts = Vec::new();
    if i > 0 {
        parts.push(format!("f^{i}"));
    }
    if j > 0 {
        parts.push(format!("fb^{j}"));
    }
    parts.push("v".into());
    parts.join(" ")
}

/// Reads a normal-ordered element off the highest-weight vector: raising
/// factors kill it, `h` and `hb` become `theta` and `eta`.
pub fn evaluate_on_hw(u: &UeaElement, hw: &HighestWeight) -> VermaElement {
    let mut out = VermaElement::zero();
    for (m, c) in u.terms() {
        if m.has_raising() {
            continue;
        }
        let th = scalar::pow(&hw.theta, m.exp(GenSymbol::H) as i64).expect("nonnegative power");
        let et = scalar::pow(&hw.eta, m.exp(GenSymbol::Hb) as i64).expect("nonnegative power");
        out.add_term(m.exp(GenSymbol::F), m.exp(GenSymbol::Fb), c * th * et);
    }
    out
}

fn lowering_monomial(i: u32, j: u32) -> PbwMonomial {
    PbwMonomial::one().times(GenSymbol::F, i).times(GenSymbol::Fb, j)
}

/// Action on the Verma module, through PBW normal ordering of `gen * f^i fb^j`.
pub fn verma_act(gen: GenSymbol, hw: &HighestWeight, v: &VermaElement) -> VermaElement {
    let mut out = VermaElement::zero();
    for ((i, j), c) in v.terms() {
        let u = UeaElement::monomial(lowering_monomial(*i, *j), Scalar::one()).left_mul_gen(gen);
        out.add_scaled(&evaluate_on_hw(&u, hw), c);
    }
    out
}

/// `u . v` on the Verma module by one normal-ordered product per basis vector.
pub fn verma_apply_uea(u: &UeaElement, hw: &HighestWeight, v: &VermaElement) -> VermaElement {
    let mut out = VermaElement::zero();
    for ((i, j), c) in v.terms() {
        let prod = u.mul(&UeaElement::monomial(lowering_monomial(*i, *j), Scalar::one()));
        out.add_scaled(&evaluate_on_hw(&prod, hw), c);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum HwKind {
    /// Full Verma module; no singular vectors at levels `1..=certified_level`.
    Verma { certified_level: u32 },
    /// `(dim)`-dimensional evaluation module with basis `f^i v`, `i < dim`.
    FiniteDim { dim: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HwModule {
    pub weight: HighestWeight,
    pub kind: HwKind,
}

impl HwModule {
    /// The Verma module itself, with no simplicity certificate.
    pub fn verma(weight: HighestWeight) -> Self {
        Self {
            weight,
            kind: HwKind::Verma { certified_level: 0 },
        }
    }

    /// `L(0, n)`: the `(n+1)`-dimensional sl2 module on which barred generators vanish.
    pub fn finite_dim(n: u32) -> Self {
        Self {
            weight: HighestWeight::new(Scalar::zero(), scalar::int(n as i64)),
            kind: HwKind::FiniteDim { dim: n + 1 },
        }
    }

    pub fn is_verma(&self) -> bool {
        matches!(self.kind, HwKind::Verma { .. })
    }

    /// Basis indices of level at most `level`.
    pub fn basis_up_to(&self, level: u32) -> Vec<(u32, u32)> {
        match self.kind {
            HwKind::Verma { .. } => (0..=level)
                .flat_map(|n| (0..=n).map(move |j| (n - j, j)))
                .collect(),
            HwKind::FiniteDim { dim } => (0..dim.min(level + 1)).map(|i| (i, 0)).collect(),
        }
    }

    fn finite_act(&self, gen: GenSymbol, v: &VermaElement, dim: u32) -> VermaElement {
        let n = dim as i64 - 1;
        let mut out = VermaElement::zero();
        for ((i, _), c) in v.terms() {
            let k = *i as i64;
            match gen {
                GenSymbol::F if k < n => out.add_term(i + 1, 0, c.clone()),
                GenSymbol::E if k > 0 => out.add_term(i - 1, 0, c * scalar::int(k * (n - k + 1))),
                GenSymbol::H => out.add_term(*i, 0, c * scalar::int(n - 2 * k)),
                _ => {}
            }
        }
        out
    }
}

impl GModule for HwModule {
    type Elem = VermaElement;
    fn act(&self, gen: GenSymbol, v: &VermaElement) -> VermaElement {
        match self.kind {
            HwKind::Verma { .. } => verma_act(gen, &self.weight, v),
            HwKind::FiniteDim { dim } => self.finite_act(gen, v, dim),
        }
    }
}

impl fmt::Display for HwModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            HwKind::Verma { .. } => write!(f, "Verma{}", self.weight),
            HwKind::FiniteDim { dim } => write!(f, "L(0, {}) [dim {dim}]", dim - 1),
        }
    }
}

/// Least `K` with `gen^K v = 0`.
pub fn annihilation_index(module: &HwModule, gen: GenSymbol, v: &VermaElement) -> Result<u32> {
    if !gen.is_raising() {
        return Err(Error::Precondition(format!("{gen} is not a raising generator")));
    }
    let bound = v.max_level().map_or(0, |l| l + 1);
    let mut cur = v.clone();
    for k in 0..=bound {
        if cur.is_zero() {
            return Ok(k);
        }
        cur = module.act(gen, &cur);
    }
    unreachable!("raising generators lower the level by one")
}

/// Basis of `{w : e w = eb w = 0}` inside the span of `f^i fb^j v` with `i + j = level`.
pub fn singular_vectors(hw: &HighestWeight, level: u32) -> Vec<VermaElement> {
    if level == 0 {
        return Vec::new();
    }
    let cols: Vec<(u32, u32)> = (0..=level).rev().map(|i| (i, level - i)).collect();
    // Rows are coordinates of e.w and eb.w at level - 1.
    let mut rows: BTreeMap<(GenSymbol, u32, u32), Vec<Scalar>> = BTreeMap::new();
    for (c, (i, j)) in cols.iter().enumerate() {
        for g in [GenSymbol::E, GenSymbol::Eb] {
            for ((a, b), v) in verma_act(g, hw, &VermaElement::basis(*i, *j)).terms() {
                rows.entry((g, *a, *b))
                    .or_insert_with(|| vec![Scalar::zero(); cols.len()])[c] = v.clone();
            }
        }
    }
    let mat: Vec<Vec<Scalar>> = rows.into_values().collect();
    linalg::nullspace(&mat, cols.len())
        .into_iter()
        .map(|v| VermaElement::from_terms(cols.iter().copied().zip(v)))
        .collect()
}

/// Reducibility criterion for `L̄(eta, theta)`: `eta = 0` and
/// `i (theta - 2j - i + 1) = 0` for some `j >= 1`, `i in {0, 1}`. The choice
/// `i = 0` always satisfies the second clause, so only `eta = 0` remains.
pub fn verma_reducible_predicate(hw: &HighestWeight) -> bool {
    hw.eta.is_zero()
}

/// Singular vectors at every level `1..=max_level`, keyed by level.
pub fn singular_scan(hw: &HighestWeight, max_level: u32) -> BTreeMap<u32, Vec<VermaElement>> {
    use rayon::prelude::*;
    let found: Vec<(u32, Vec<VermaElement>)> = (1..=max_level)
        .into_par_iter()
        .map(|l| (l, singular_vectors(hw, l)))
        .collect();
    found.into_iter().filter(|(_, v)| !v.is_empty()).collect()
}

/// Desk-scale model of the simple quotient `L(eta, theta)`.
pub fn build_hw_module(hw: &HighestWeight, depth: u32) -> Result<HwModule> {
    if !hw.eta.is_zero() {
        if let Some((level, vecs)) = singular_scan(hw, depth).into_iter().next() {
            return Err(Error::Precondition(format!(
                "singular vector {} at level {level}",
                vecs[0]
            )));
        }
        return Ok(HwModule {
            weight: hw.clone(),
            kind: HwKind::Verma { certified_level: depth },
        });
    }
    let Some(n) = scalar::as_nonneg_int(&hw.theta) else {
        return Err(Error::UnsupportedQuotient(format!(
            "eta = 0 with theta = {} is not a nonnegative integer",
            hw.theta
        )));
    };
    let module = HwModule::finite_dim(n);
    let report = check_hw_axioms(&module, n);
    if !report.all_pass() {
        return Err(Error::Precondition(format!("evaluation module for theta = {n} fails its axioms")));
    }
    Ok(module)
}

/// `x(yv) - y(xv) = [x,y]v` on every basis vector up to `level`.
pub fn check_hw_axioms(module: &HwModule, level: u32) -> Report {
    let mut report = Report::new("hw-axioms");
    let basis = module.basis_up_to(level);
    for (x, y) in generator_pairs() {
        let br = bracket(&AlgElement::gen(x), &AlgElement::gen(y));
        let mut bad = None;
        for (i, j) in &basis {
            let v = VermaElement::basis(*i, *j);
            let mut res = module.act(x, &module.act(y, &v));
            res.add_scaled(&module.act(y, &module.act(x, &v)), &-Scalar::one());
            for (z, c) in br.terms() {
                res.add_scaled(&module.act(*z, &v), &-c.clone());
            }
            if !res.is_zero() {
                bad = Some(format!("on {}: residual {res}", basis_name(*i, *j)));
                break;
            }
        }
        report.check(format!("[{x},{y}]"), bad.is_none(), bad.unwrap_or_default());
    }
    report
}
