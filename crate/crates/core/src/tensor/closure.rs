//! Submodule closure inside a finite degree window.
//!
//! The span of a seed is grown under all six generators. Products that leave
//! the window are dropped whole rather than truncated, so every vector in the
//! span genuinely lies in the submodule the seed generates; raising the depth
//! only adds vectors. Each basis row remembers how it was produced, which
//! lets [`Closure::tag`] rebuild an element of `U(g)` mapping the seed to it.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::linalg::{SparseEchelon, SparseRow};
use crate::poly::BiPoly;
use crate::report::{Report, Status};
use crate::scalar::{self, Scalar};
use crate::tensor::{TensorElement, TensorModule, Window};
use crate::uea::{omega_casimir, GModule, GenSymbol, UeaElement};

#[derive(Clone, Debug)]
enum Source {
    Seed,
    /// `g` applied to the generated vector recorded under another pivot.
    Act(GenSymbol, usize),
}

/// Row `p` equals `(raw - sum c * row[q]) / lead`, where `raw` is the
/// generated vector described by `source`.
#[derive(Clone, Debug)]
struct RowTag {
    source: Source,
    used: Vec<(usize, Scalar)>,
    lead: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureOutcome {
    /// `1 ⊗ v` lies in the span.
    pub reached: bool,
    pub dim: usize,
    pub window_len: usize,
    /// Products dropped for leaving the window.
    pub discarded: usize,
    /// Every spanning vector has all components divisible by `hb`.
    pub inside_hb_ideal: bool,
}

pub struct Closure<'a> {
    module: &'a TensorModule,
    window: Window,
    basis: SparseEchelon,
    tags: BTreeMap<usize, RowTag>,
    /// Generated vectors before elimination; these are what get acted on.
    raw: BTreeMap<usize, TensorElement>,
    order: Vec<usize>,
    discarded: usize,
}

impl<'a> Closure<'a> {
    pub fn new(module: &'a TensorModule, depth: u32) -> Self {
        Self {
            module,
            window: Window::new(&module.hw, depth),
            basis: SparseEchelon::new(),
            tags: BTreeMap::new(),
            raw: BTreeMap::new(),
            order: Vec::new(),
            discarded: 0,
        }
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn insert(&mut self, x: TensorElement, row: &SparseRow, source: Source) -> Option<usize> {
        let red = self.basis.reduce(row);
        if red.residue.is_empty() {
            return None;
        }
        let (p, lead) = self.basis.insert_residue(red.residue);
        self.tags.insert(
            p,
            RowTag {
                source,
                used: red.used,
                lead,
            },
        );
        self.raw.insert(p, x);
        self.order.push(p);
        Some(p)
    }

    /// Grows the span of `seed`. With `stop_at_hw`, stops as soon as `1 ⊗ v` is in it.
    ///
    /// Generated vectors are expanded lowest pivot first, which heads for
    /// `1 ⊗ v` and keeps the vectors being acted on short.
    pub fn grow(&mut self, seed: &TensorElement, stop_at_hw: bool) -> Result<ClosureOutcome> {
        if seed.is_zero() {
            return Err(Error::ZeroElement);
        }
        let row = self
            .window
            .encode(seed)
            .ok_or_else(|| Error::Precondition(format!("seed {seed} lies outside the depth-{} window", self.window.depth)))?;
        let mut queue: BinaryHeap<Reverse<usize>> =
            self.insert(seed.clone(), &row, Source::Seed).map(Reverse).into_iter().collect();
        while let Some(Reverse(p)) = queue.pop() {
            if stop_at_hw && self.basis.has_pivot(0) {
                break;
            }
            let member = self.raw[&p].clone();
            for g in GenSymbol::ALL {
                let image = self.module.act(g, &member);
                if image.is_zero() {
                    continue;
                }
                let Some(row) = self.window.encode(&image) else {
                    self.discarded += 1;
                    continue;
                };
                if let Some(q) = self.insert(image, &row, Source::Act(g, p)) {
                    queue.push(Reverse(q));
                }
            }
        }
        Ok(self.outcome())
    }

    pub fn outcome(&self) -> ClosureOutcome {
        ClosureOutcome {
            reached: self.basis.has_pivot(0),
            dim: self.basis.len(),
            window_len: self.window.len(),
            discarded: self.discarded,
            inside_hb_ideal: self.raw.values().all(TensorElement::inside_hb_ideal),
        }
    }

    pub fn contains(&self, x: &TensorElement) -> bool {
        match self.window.encode(x) {
            Some(row) => self.basis.reduce(&row).residue.is_empty(),
            None => false,
        }
    }

    /// Basis rows in insertion order.
    pub fn pivots(&self) -> &[usize] {
        &self.order
    }

    pub fn member(&self, pivot: usize) -> Option<TensorElement> {
        self.basis.row(pivot).map(|r| self.window.decode(r))
    }

    /// An element `u` of `U(g)` with `u . seed = member(pivot)`.
    pub fn tag(&self, pivot: usize) -> Option<UeaElement> {
        if !self.tags.contains_key(&pivot) {
            return None;
        }
        let mut raw: BTreeMap<usize, UeaElement> = BTreeMap::new();
        let mut rows: BTreeMap<usize, UeaElement> = BTreeMap::new();
        for p in &self.order {
            let tag = &self.tags[p];
            let word = match tag.source {
                Source::Seed => UeaElement::one(),
                Source::Act(g, parent) => raw[&parent].left_mul_gen(g),
            };
            let mut u = word.clone();
            for (q, c) in &tag.used {
                u.add_scaled(&rows[q], &-c.clone());
            }
            raw.insert(*p, word);
            rows.insert(*p, u.scale(&tag.lead.recip()));
            if *p == pivot {
                break;
            }
        }
        rows.remove(&pivot)
    }
}

/// `z = eb fb + hb^2/4` is central in `U(g)`, so on a simple module of
/// countable dimension it acts by a scalar. Returns that scalar when
/// `z (1 ⊗ v)` is a multiple of `1 ⊗ v`, otherwise the image itself.
pub fn central_character(module: &TensorModule) -> std::result::Result<Scalar, TensorElement> {
    let hw = module.hw_vector();
    let image = module.act_uea(&omega_casimir(), &hw);
    let c = image.component(0, 0).coeff(0, 0);
    if image == hw.scale(&c) {
        Ok(c)
    } else {
        Err(image)
    }
}

/// `(z - c)(1 ⊗ v)` with `c` the constant coefficient of `z (1 ⊗ v)` on `1 ⊗ v`;
/// `None` when `z` acts on `1 ⊗ v` by a scalar.
pub fn casimir_seed(module: &TensorModule) -> Option<TensorElement> {
    let image = central_character(module).err()?;
    let c = image.component(0, 0).coeff(0, 0);
    let mut seed = image;
    seed.add_scaled(&module.hw_vector(), &-c);
    Some(seed)
}

/// Seeds for certification: structured monomial seeds first, then the
/// Casimir seed when there is one, then random combinations drawn from
/// `rng_seed`. All fit in half the window depth.
pub fn default_seeds(module: &TensorModule, depth: u32, count: usize, rng_seed: u64) -> Vec<TensorElement> {
    let half = (depth / 2).max(1);
    let hw = &module.hw;
    let top = hw.basis_up_to(1).get(1).copied().unwrap_or((0, 0));
    let structured = [
        TensorElement::pure("h".parse().expect("poly"), 0, 0),
        TensorElement::pure("hb^2".parse().expect("poly"), 0, 0),
        TensorElement::pure("h + hb".parse().expect("poly"), top.0, top.1),
        TensorElement::pure(BiPoly::one(), top.0, top.1),
    ];
    let mut seeds: Vec<TensorElement> = structured.into_iter().chain(casimir_seed(module)).take(count).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let basis = hw.basis_up_to(half);
    while seeds.len() < count {
        let mut x = TensorElement::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let (a, b) = basis[rng.gen_range(0..basis.len())];
            let room = half - (a + b).min(half);
            let q = rng.gen_range(0..=room);
            let i = rng.gen_range(0..=room - q);
            let c = scalar::frac(rng.gen_range(-4..=4i64), rng.gen_range(1..=3i64));
            x.add_pure(&BiPoly::monomial(q, i, c), a, b);
        }
        if !x.is_zero() {
            seeds.push(x);
        }
    }
    seeds
}

/// Multiplies every component by `hb`, moving seeds into `hb C[h,hb] ⊗ L`.
pub fn into_hb_ideal(seeds: &[TensorElement]) -> Vec<TensorElement> {
    seeds
        .iter()
        .map(|x| {
            let mut out = TensorElement::zero();
            for ((a, b), p) in x.terms() {
                out.add_pure(&(&BiPoly::hb() * p), *a, *b);
            }
            out
        })
        .collect()
}

/// For each seed, whether `1 ⊗ v` lies in the windowed closure of its span.
/// Not reaching it is INCONCLUSIVE, never a proof of reducibility. The
/// `central-character` record is exact: it fails when the central element
/// `z` does not act on `1 ⊗ v` by a scalar, which rules out simplicity.
pub fn certify_irreducible(module: &TensorModule, seeds: &[TensorElement], depth: u32) -> Report {
    let results: Vec<(usize, Result<ClosureOutcome>)> = seeds
        .par_iter()
        .enumerate()
        .map(|(n, seed)| {
            let mut closure = Closure::new(module, depth);
            (n, closure.grow(seed, true))
        })
        .collect();
    let mut report = Report::new("irreducible");
    match central_character(module) {
        Ok(c) => report.push("central-character", Status::Pass, format!("z acts on 1⊗v by {c}")),
        Err(image) => report.push(
            "central-character",
            Status::Fail,
            format!("z = eb fb + hb^2/4 is central but z.(1⊗v) = {image} is not a multiple of 1⊗v"),
        ),
    }
    for (n, res) in results {
        let id = format!("seed-{n:02}");
        match res {
            Ok(out) => {
                let status = if out.reached { Status::Pass } else { Status::Inconclusive };
                let mut witness = format!(
                    "seed {}; span dim {} of window {}",
                    seeds[n], out.dim, out.window_len
                );
                if !out.reached && out.inside_hb_ideal {
                    witness.push_str("; span stays inside hb*C[h,hb] ⊗ L");
                }
                report.push(id, status, witness);
            }
            Err(e) => report.push(id, Status::Error, e.to_string()),
        }
    }
    report
}

/// Checks that `hb C[h,hb] ⊗ L` is closed under every generator on all window
/// basis vectors `h^q hb^i ⊗ w` with `i >= 1`.
pub fn check_invariant_subspace(module: &TensorModule, depth: u32) -> Result<Report> {
    if module.family() != Family::Omega || !module.params.a().is_zero() {
        return Err(Error::Precondition("invariant subspace check needs Omega with a = 0".into()));
    }
    let window = Window::new(&module.hw, depth);
    let inside: Vec<usize> = (0..window.len()).filter(|n| window.key(*n).1 >= 1).collect();
    let mut report = Report::new("invariant-subspace");
    for g in GenSymbol::ALL {
        let bad = inside.iter().find_map(|n| {
            let x = window.basis_element(*n);
            let img = module.act(g, &x);
            (!img.inside_hb_ideal()).then(|| format!("{g}.({x}) = {img}"))
        });
        report.check(
            format!("closed/{g}"),
            bad.is_none(),
            bad.unwrap_or_else(|| format!("{} basis vectors", inside.len())),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilyParams;
    use crate::highest_weight::{HighestWeight, HwModule};
    use crate::poly::UniPoly;
    use crate::scalar::int;

    fn p(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    fn verma(eta: i64, theta: i64) -> HwModule {
        HwModule::verma(HighestWeight::new(int(eta), int(theta)))
    }

    #[test]
    fn gamma_structured_seeds_reach_hw() {
        let m = TensorModule::new(FamilyParams::gamma(int(1), int(0), int(0)).unwrap(), verma(1, 1));
        let seeds = vec![
            TensorElement::pure(p("h"), 0, 0),
            TensorElement::pure(p("hb^2"), 0, 0),
            TensorElement::pure(p("h + hb"), 1, 0),
        ];
        let r = certify_irreducible(&m, &seeds, 8);
        assert!(r.checks.iter().filter(|c| c.id.starts_with("seed")).all(|c| c.status == Status::Pass));
        assert_eq!(r.get("central-character").unwrap().status, Status::Fail);
    }

    #[test]
    fn casimir_is_not_scalar_over_verma() {
        // z(1⊗v) = 1⊗fb v + (hb/2 + 1/4)⊗v for Gamma(1,0,0) over L(1,1).
        let m = TensorModule::new(FamilyParams::gamma(int(1), int(0), int(0)).unwrap(), verma(1, 1));
        let image = central_character(&m).unwrap_err();
        assert_eq!(image.component(0, 0), p("1/2*hb + 1/4"));
        assert_eq!(image.component(0, 1), BiPoly::one());
        let seed = casimir_seed(&m).unwrap();
        assert_eq!(seed.component(0, 0), p("1/2*hb"));
        let mut c = Closure::new(&m, 6);
        assert!(!c.grow(&seed, true).unwrap().reached);
    }

    #[test]
    fn casimir_is_scalar_over_finite_dim() {
        // Barred generators kill L(0, n), so z acts through V alone, by -a/4.
        let m = TensorModule::new(FamilyParams::theta(int(2), int(3), int(0)).unwrap(), HwModule::finite_dim(2));
        assert_eq!(central_character(&m), Ok(scalar::frac(-3, 4)));
        assert!(casimir_seed(&m).is_none());
    }

    #[test]
    fn theta_finite_dim() {
        let m = TensorModule::new(FamilyParams::theta(int(2), int(1), int(1)).unwrap(), HwModule::finite_dim(2));
        let r = certify_irreducible(&m, &[TensorElement::pure(BiPoly::one(), 2, 0)], 8);
        assert!(r.all_pass(), "{:?}", r.checks);
    }

    #[test]
    fn omega_a_zero_stays_in_ideal() {
        let m = TensorModule::new(
            FamilyParams::omega(int(1), int(0), UniPoly::zero()).unwrap(),
            verma(1, 1),
        );
        let mut c = Closure::new(&m, 6);
        let out = c.grow(&TensorElement::pure(BiPoly::hb(), 0, 0), true).unwrap();
        assert!(!out.reached);
        assert!(out.inside_hb_ideal);
        assert!(check_invariant_subspace(&m, 6).unwrap().all_pass());
        let m2 = TensorModule::new(FamilyParams::omega(int(1), int(0), "hb".parse().unwrap()).unwrap(), verma(1, 1));
        assert!(check_invariant_subspace(&m2, 6).unwrap().all_pass());
        let m3 = TensorModule::new(FamilyParams::omega(int(1), int(2), UniPoly::zero()).unwrap(), verma(1, 1));
        assert!(check_invariant_subspace(&m3, 6).is_err());
    }

    #[test]
    fn tags_replay() {
        let m = TensorModule::new(FamilyParams::gamma(int(2), int(1), int(-1)).unwrap(), verma(1, 2));
        let seed = TensorElement::pure(p("h*hb"), 0, 0);
        let mut c = Closure::new(&m, 4);
        let out = c.grow(&seed, true).unwrap();
        assert!(out.reached);
        for piv in c.pivots().to_vec() {
            let u = c.tag(piv).unwrap();
            assert_eq!(m.act_uea(&u, &seed), c.member(piv).unwrap());
        }
        assert_eq!(c.member(0).unwrap(), m.hw_vector());
    }

    #[test]
    fn seeds_are_deterministic() {
        let m = TensorModule::new(FamilyParams::gamma(int(1), int(0), int(0)).unwrap(), verma(1, 1));
        assert_eq!(default_seeds(&m, 8, 10, 42), default_seeds(&m, 8, 10, 42));
        assert_eq!(default_seeds(&m, 8, 10, 42).len(), 10);
    }
}
