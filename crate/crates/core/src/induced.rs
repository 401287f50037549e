//! Induction from the subalgebra `b` and the realization map `phi`.
//!
//! `b` is spanned by `eb, e, hb` for Gamma and by `eb, hb` for Theta and
//! Omega. It acts on `C[hb]` by multiplications and, for Gamma, `d/dhb`.
//! Induced elements are written over the basis `f^j fb^k h^q ⊗ hb^i`; `phi`
//! sends that basis element to `f^j fb^k h^q (hb^i ⊗ v)` in `V ⊗ L`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::{Family, FamilyParams};
use crate::highest_weight::{singular_scan, verma_reducible_predicate, HighestWeight};
use crate::linalg::{SparseEchelon, SparseRow};
use crate::poly::{BiPoly, UniPoly};
use crate::report::Report;
use crate::scalar::{self, Scalar};
use crate::skew::SkewOperator;
use crate::tensor::{TensorElement, TensorModule};
use crate::uea::{gen_bracket, GModule, GenSymbol, PbwMonomial, UeaElement};

use GenSymbol::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelSpec {
    pub family: Family,
    pub lambda: Scalar,
    pub a: Scalar,
    pub eta: Scalar,
}

impl BorelSpec {
    pub fn new(family: Family, lambda: Scalar, a: Scalar, eta: Scalar) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidParams("lambda must be nonzero".into()));
        }
        Ok(Self { family, lambda, a, eta })
    }

    /// The Borel data matching a tensor product `V ⊗ L(eta, theta)`.
    pub fn for_module(module: &TensorModule) -> Self {
        let p = &module.params;
        Self {
            family: p.family(),
            lambda: p.lambda().clone(),
            a: p.a().clone(),
            eta: module.hw.weight.eta.clone(),
        }
    }

    pub fn generators(&self) -> &'static [GenSymbol] {
        match self.family {
            Family::Gamma => &[Eb, E, Hb],
            Family::Theta | Family::Omega => &[Eb, Hb],
        }
    }

    pub fn contains(&self, g: GenSymbol) -> bool {
        self.generators().contains(&g)
    }
}

impl fmt::Display for BorelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C[hb]^{}(lambda={}, a={}, eta={})", self.family, self.lambda, self.a, self.eta)
    }
}

/// The action of a generator of `b` as an operator on `C[hb]`.
pub fn borel_operator(gen: GenSymbol, spec: &BorelSpec) -> Result<SkewOperator> {
    if !spec.contains(gen) {
        return Err(Error::NotInSubalgebra(gen));
    }
    let lambda = &spec.lambda;
    let op = match (spec.family, gen) {
        (_, Hb) => &SkewOperator::hb() + &SkewOperator::scalar(spec.eta.clone()),
        (Family::Gamma, Eb) => SkewOperator::scalar(lambda.clone()),
        (Family::Gamma, E) => SkewOperator::dbar().scale(&(scalar::int(-2) * lambda)),
        (Family::Theta, Eb) => {
            let c = -(scalar::int(4) * lambda).recip();
            let m = &SkewOperator::term(0, 2, 0, 0, Scalar::one()) + &SkewOperator::scalar(spec.a.clone());
            m.scale(&c)
        }
        (Family::Omega, Eb) => {
            let m = &SkewOperator::hb() + &SkewOperator::scalar(spec.a.clone());
            m.scale(&(lambda / scalar::int(2)))
        }
        _ => unreachable!("generator membership checked above"),
    };
    Ok(op)
}

pub fn borel_act(gen: GenSymbol, spec: &BorelSpec, g: &UniPoly) -> Result<UniPoly> {
    let op = borel_operator(gen, spec)?;
    Ok(op.apply(&BiPoly::from(g)).h_coeff(0))
}

/// `[x, y] o g = x o (y o g) - y o (x o g)` as operator identities, one record per pair.
pub fn check_borel_axioms(spec: &BorelSpec) -> Report {
    let mut report = Report::new("borel-axioms");
    let gens = spec.generators();
    for (n, &x) in gens.iter().enumerate() {
        for &y in &gens[n + 1..] {
            let ox = borel_operator(x, spec).expect("generator of b");
            let oy = borel_operator(y, spec).expect("generator of b");
            let lhs = match gen_bracket(x, y) {
                None => SkewOperator::zero(),
                Some((c, z)) => match borel_operator(z, spec) {
                    Ok(oz) => oz.scale(&scalar::int(c)),
                    Err(_) => {
                        report.check(format!("[{x},{y}]"), false, format!("[{x},{y}] leaves b"));
                        continue;
                    }
                },
            };
            let residual = &lhs - &ox.commutator(&oy);
            report.check(
                format!("[{x},{y}]"),
                residual.is_zero(),
                if residual.is_zero() { String::new() } else { format!("residual {residual}") },
            );
        }
    }
    report
}

/// Remark-level (ir)reducibility of `C[hb]` as a `b`-module.
///
/// Gamma: the span generated by each seed `hb^k` inside degrees `<= depth`
/// must contain `1` and fill the window. Theta/Omega: `hb C[hb]` is mapped
/// into itself by every generator and misses `1`.
pub fn borel_reducibility_check(spec: &BorelSpec, depth: u32) -> Report {
    let mut report = Report::new("borel-reducibility");
    match spec.family {
        Family::Gamma => {
            for k in 0..=depth {
                let (dim, has_one) = borel_closure(spec, &UniPoly::monomial(k, Scalar::one()), depth);
                report.check(
                    format!("seed-hb^{k}"),
                    has_one && dim == depth as usize + 1,
                    format!("span dim {dim} of {}, contains 1: {has_one}", depth + 1),
                );
            }
        }
        Family::Theta | Family::Omega => {
            for &g in spec.generators() {
                let mut bad = None;
                for k in 1..=depth {
                    let img = borel_act(g, spec, &UniPoly::monomial(k, Scalar::one())).expect("generator of b");
                    if !img.divisible_by_hb() {
                        bad = Some(format!("{g} o hb^{k} = {img}"));
                        break;
                    }
                }
                report.check(format!("ideal-closed/{g}"), bad.is_none(), bad.unwrap_or_default());
            }
            report.check("ideal-proper", true, "1 is not divisible by hb");
        }
    }
    report
}

/// Dimension of the `b`-span of `seed` inside degrees `<= depth`, and whether `1` lies in it.
fn borel_closure(spec: &BorelSpec, seed: &UniPoly, depth: u32) -> (usize, bool) {
    let encode = |p: &UniPoly| -> Option<SparseRow> {
        let row: SparseRow = p.terms().map(|(j, c)| (*j as usize, c.clone())).collect();
        row.keys().all(|&j| j <= depth as usize).then_some(row)
    };
    let mut ech = SparseEchelon::new();
    let mut queue = vec![seed.clone()];
    while let Some(p) = queue.pop() {
        let Some(row) = encode(&p) else { continue };
        if ech.insert(&row).is_none() {
            continue;
        }
        for &g in spec.generators() {
            queue.push(borel_act(g, spec, &p).expect("generator of b"));
        }
    }
    let has_one = ech.reduce(&SparseRow::from([(0, Scalar::one())])).residue.is_empty();
    (ech.len(), has_one)
}

/// `sum c f^j fb^k h^q ⊗ hb^i`, keyed by `(j, k, q, i)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IndElement {
    terms: BTreeMap<(u32, u32, u32, u32), Scalar>,
}

impl IndElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(j: u32, k: u32, q: u32, i: u32) -> Self {
        let mut out = Self::zero();
        out.add_term((j, k, q, i), Scalar::one());
        out
    }

    pub fn add_term(&mut self, key: (u32, u32, u32, u32), c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for IndElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, ((j, k, q, i), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*f^{j} fb^{k} h^{q} ⊗ hb^{i}", scalar::fmt_scalar(c))?;
        }
        Ok(())
    }
}

/// The `g`-action on the induced span: PBW-normalize `u x`, then move the
/// `hb^t e^d eb^s` tail across the tensor sign through the `b`-action.
///
/// For Theta and Omega a surviving `e` leaves the span of the basis used
/// here; that is reported as unsupported.
pub fn ind_act_uea(spec: &BorelSpec, u: &UeaElement, x: &IndElement) -> Result<IndElement> {
    let mut out = IndElement::zero();
    for (&(j, k, q, i), c) in x.terms() {
        let head = PbwMonomial::one().times(F, j).times(Fb, k).times(H, q);
        let prod = u.mul(&UeaElement::monomial(head, c.clone()));
        for (m, d) in prod.terms() {
            let mut g = UniPoly::monomial(i, Scalar::one());
            for (gen, exp) in [(Eb, m.exp(Eb)), (E, m.exp(E)), (Hb, m.exp(Hb))] {
                if exp > 0 && !spec.contains(gen) {
                    return Err(Error::UnsupportedQuotient(format!(
                        "{m} has a factor {gen} outside b for {}",
                        spec.family
                    )));
                }
                for _ in 0..exp {
                    g = borel_act(gen, spec, &g)?;
                }
            }
            for (t, e) in g.terms() {
                out.add_term((m.exp(F), m.exp(Fb), m.exp(H), *t), d * e);
            }
        }
    }
    Ok(out)
}

pub fn ind_act(spec: &BorelSpec, gen: GenSymbol, x: &IndElement) -> Result<IndElement> {
    ind_act_uea(spec, &UeaElement::gen(gen), x)
}

/// Memoized `phi` on basis elements, built one generator at a time.
pub struct Phi<'a> {
    module: &'a TensorModule,
    cache: HashMap<(u32, u32, u32, u32), TensorElement>,
}

impl<'a> Phi<'a> {
    pub fn new(module: &'a TensorModule) -> Result<Self> {
        if !module.hw.is_verma() {
            return Err(Error::Precondition("phi is defined over the Verma module".into()));
        }
        Ok(Self { module, cache: HashMap::new() })
    }

    pub fn basis(&mut self, key: (u32, u32, u32, u32)) -> TensorElement {
        self.fill(key);
        self.cache[&key].clone()
    }

    fn fill(&mut self, key: (u32, u32, u32, u32)) {
        if self.cache.contains_key(&key) {
            return;
        }
        let (j, k, q, i) = key;
        let (gen, prev) = if j > 0 {
            (F, (j - 1, k, q, i))
        } else if k > 0 {
            (Fb, (0, k - 1, q, i))
        } else if q > 0 {
            (H, (0, 0, q - 1, i))
        } else {
            let seed = TensorElement::pure(BiPoly::monomial(0, i, Scalar::one()), 0, 0);
            self.cache.insert(key, seed);
            return;
        };
        self.fill(prev);
        let out = self.module.act(gen, &self.cache[&prev]);
        self.cache.insert(key, out);
    }

    pub fn apply(&mut self, x: &IndElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (key, c) in x.terms() {
            self.fill(*key);
            out.add_scaled(&self.cache[key], c);
        }
        out
    }
}

/// `phi(x)` straight from the definition: apply `f^j fb^k h^q` to `hb^i ⊗ v`.
pub fn phi_map(module: &TensorModule, x: &IndElement) -> Result<TensorElement> {
    if !module.hw.is_verma() {
        return Err(Error::Precondition("phi is defined over the Verma module".into()));
    }
    let mut out = TensorElement::zero();
    for (&(j, k, q, i), c) in x.terms() {
        let u = UeaElement::monomial(PbwMonomial::one().times(F, j).times(Fb, k).times(H, q), c.clone());
        let seed = TensorElement::pure(BiPoly::monomial(0, i, Scalar::one()), 0, 0);
        let img = module.act_uea(&u, &seed);
        out.add_scaled(&img, &Scalar::one());
    }
    Ok(out)
}

/// Window of induced basis keys: `j + k <= depth`, `q, i <= depth`.
pub fn ind_window(depth: u32) -> Vec<(u32, u32, u32, u32)> {
    let mut out = Vec::new();
    for j in 0..=depth {
        for k in 0..=depth - j {
            for q in 0..=depth {
                for i in 0..=depth {
                    out.push((j, k, q, i));
                }
            }
        }
    }
    out.sort_by_key(|&(j, k, q, i)| order_key((j, k, q, i)));
    out
}

/// The total order on both bases: compare `(k, j, i, q)` lexicographically.
pub fn order_key((j, k, q, i): (u32, u32, u32, u32)) -> (u32, u32, u32, u32) {
    (k, j, i, q)
}

/// Target basis key `h^q hb^i ⊗ f^j fb^k v` from a tensor coordinate `(q, i, a, b)`.
fn target_key((q, i, a, b): (u32, u32, u32, u32)) -> (u32, u32, u32, u32) {
    (a, b, q, i)
}

/// Generators whose action keeps the induced span closed.
fn span_generators(family: Family) -> &'static [GenSymbol] {
    match family {
        Family::Gamma => &GenSymbol::ALL,
        Family::Theta | Family::Omega => &[F, Fb, H, Hb, Eb],
    }
}

/// Balance, homomorphism, triangularity and the unitriangular matrix profile.
pub fn check_phi(module: &TensorModule, depth: u32) -> Result<Report> {
    let spec = BorelSpec::for_module(module);
    let mut report = Report::new("phi");
    let window = ind_window(depth);

    // b-balance: b (hb^i ⊗ v) = (b o hb^i) ⊗ v for every generator of b.
    let mut bad = Vec::new();
    for &b in spec.generators() {
        for i in 0..=depth {
            let seed = TensorElement::pure(BiPoly::monomial(0, i, Scalar::one()), 0, 0);
            let lhs = module.act(b, &seed);
            let rhs = TensorElement::pure(BiPoly::from(borel_act(b, &spec, &UniPoly::monomial(i, Scalar::one()))?), 0, 0);
            if lhs != rhs {
                bad.push(format!("{b}.(hb^{i} ⊗ v) = {lhs}, b-action gives {rhs}"));
            }
        }
    }
    report.check("balance", bad.is_empty(), bad.first().cloned().unwrap_or_default());

    // One memo serves the homomorphism check and the matrix.
    let gens = span_generators(spec.family);
    let mut phi = Phi::new(module)?;
    let images: Vec<TensorElement> = window.iter().map(|&key| phi.basis(key)).collect();
    let mut failures = Vec::new();
    for (&key, px) in window.iter().zip(&images) {
        let x = IndElement::basis(key.0, key.1, key.2, key.3);
        // f.(f^j ...) is the next basis key and phi is defined through it.
        for &g in gens.iter().filter(|&&g| g != F) {
            let gx = ind_act(&spec, g, &x)?;
            if phi.apply(&gx) != module.act(g, px) {
                failures.push(format!("phi({g}.({x})) != {g}.phi({x})"));
            }
        }
    }
    report.check(
        "homomorphism",
        failures.is_empty(),
        failures.first().cloned().unwrap_or_default(),
    );

    // Triangularity and the matrix of phi on the window.
    let position: BTreeMap<(u32, u32, u32, u32), usize> =
        window.iter().enumerate().map(|(n, k)| (*k, n)).collect();
    let mut tri_bad = None;
    let mut below = 0usize;
    let mut above = 0usize;
    let mut diag_ones = 0usize;
    let mut outside = 0usize;
    let mut rows = Vec::with_capacity(window.len());
    let mut target_index: BTreeMap<(u32, u32, u32, u32), usize> = BTreeMap::new();
    for (row, (&key, img)) in window.iter().zip(&images).enumerate() {
        let own = order_key(key);
        let mut leading = Scalar::zero();
        let mut sparse = SparseRow::new();
        for (coord, c) in img.coords() {
            let tkey = target_key(coord);
            let tk = order_key(tkey);
            if tk == own {
                leading = c.clone();
            } else if tk > own && tri_bad.is_none() {
                tri_bad = Some(format!("phi({}) has term {} at a larger key", IndElement::basis(key.0, key.1, key.2, key.3), scalar::fmt_scalar(c)));
            }
            match position.get(&tkey) {
                Some(&col) if col < row => below += 1,
                Some(&col) if col > row => above += 1,
                Some(_) => {}
                None => outside += 1,
            }
            let n = target_index.len();
            let idx = *target_index.entry(tk).or_insert(n);
            sparse.insert(idx, c.clone());
        }
        if leading == Scalar::one() {
            diag_ones += 1;
        } else if tri_bad.is_none() {
            tri_bad = Some(format!("leading coefficient of phi at {key:?} is {}", scalar::fmt_scalar(&leading)));
        }
        rows.push(sparse);
    }
    let n = window.len();
    // Rows with distinct nonzero leading terms are independent, so the
    // elimination is only needed when triangularity fails.
    let rank = if tri_bad.is_none() {
        n
    } else {
        let mut ech = SparseEchelon::new();
        rows.iter().for_each(|r| {
            ech.insert(r);
        });
        ech.len()
    };
    report.check("triangularity", tri_bad.is_none(), tri_bad.unwrap_or_default());
    report.check(
        "unitriangular",
        diag_ones == n && above == 0 && rank == n,
        format!("size {n}, unit diagonal {diag_ones}, above {above}, rank {rank}"),
    );
    report.data.insert(
        "matrix".into(),
        serde_json::json!({
            "size": n,
            "unit_diagonal": diag_ones,
            "below_diagonal_nonzeros": below,
            "above_diagonal_nonzeros": above,
            "terms_outside_window": outside,
            "rank": rank,
        }),
    );
    Ok(report)
}

/// Reducibility of the induced module predicted through the isomorphism:
/// one tensor factor must be reducible.
pub fn induced_reducible_predicate(family: Family, a: &Scalar, hw: &HighestWeight) -> bool {
    (family == Family::Omega && a.is_zero()) || verma_reducible_predicate(hw)
}

/// Compares the prediction with direct evidence: a singular vector up to
/// `max_level`, or the explicit `hb`-ideal of Omega with `a = 0`.
pub fn check_reducibility_wiring(params: &FamilyParams, grid: &[HighestWeight], max_level: u32) -> Report {
    let mut report = Report::new("induced-reducibility");
    let rows: Vec<(bool, bool, usize)> = grid
        .par_iter()
        .map(|hw| {
            let singular = singular_scan(hw, max_level);
            let found = singular.values().map(Vec::len).sum::<usize>();
            let evidence = found > 0 || !params.is_simple();
            (induced_reducible_predicate(params.family(), params.a(), hw), evidence, found)
        })
        .collect();
    for (hw, (pred, evidence, found)) in grid.iter().zip(rows) {
        report.check(
            format!("{}/eta={},theta={}", params.family(), hw.eta, hw.theta),
            pred == evidence,
            format!("predicted reducible {pred}; singular vectors {found}; family simple {}", params.is_simple()),
        );
    }
    report
}
