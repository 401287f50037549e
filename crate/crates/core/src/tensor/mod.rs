//! Tensor products `V ⊗ L` of a family module with a highest-weight module.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::family::{Family, FamilyParams};
use crate::highest_weight::{basis_name, HwModule, VermaElement};
use crate::linalg::SparseRow;
use crate::poly::BiPoly;
use crate::scalar::Scalar;
use crate::uea::{GModule, GenSymbol, ModuleElement};

pub mod closure;
pub mod lemma;
pub mod recover;
pub mod reduce;
pub mod whittaker;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorModule {
    pub params: FamilyParams,
    pub hw: HwModule,
}

impl TensorModule {
    pub fn new(params: FamilyParams, hw: HwModule) -> Self {
        Self { params, hw }
    }

    pub fn family(&self) -> Family {
        self.params.family()
    }

    /// Whether irreducibility is expected: always for Gamma and Theta, `a != 0` for Omega.
    pub fn expected_irreducible(&self) -> bool {
        self.params.is_simple()
    }

    /// `1 ⊗ v`.
    pub fn hw_vector(&self) -> TensorElement {
        TensorElement::pure(BiPoly::one(), 0, 0)
    }
}

impl fmt::Display for TensorModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊗ {}", self.params, self.hw)
    }
}

/// `sum p_(i,j) ⊗ f^i fb^j v`, keyed by the basis index of `L`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TensorElement {
    terms: BTreeMap<(u32, u32), BiPoly>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `p ⊗ f^i fb^j v`.
    pub fn pure(p: BiPoly, i: u32, j: u32) -> Self {
        let mut out = Self::zero();
        out.add_pure(&p, i, j);
        out
    }

    pub fn add_pure(&mut self, p: &BiPoly, i: u32, j: u32) {
        self.add_pure_scaled(p, &Scalar::one(), i, j);
    }

    /// `self += c * p ⊗ f^i fb^j v`.
    pub fn add_pure_scaled(&mut self, p: &BiPoly, c: &Scalar, i: u32, j: u32) {
        if p.is_zero() || c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(BiPoly::zero);
        slot.add_scaled(p, c);
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// `p ⊗ w` for a general `w`.
    pub fn tensor(p: &BiPoly, w: &VermaElement) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in w.terms() {
            out.add_pure_scaled(p, c, *i, *j);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BiPoly)> {
        self.terms.iter()
    }

    pub fn component(&self, i: u32, j: u32) -> BiPoly {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BiPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for ((i, j), p) in &other.terms {
            self.add_pure_scaled(p, c, *i, *j);
        }
    }

    /// Largest `h`-degree over all components; `None` for zero.
    pub fn deg_h(&self) -> Option<u32> {
        self.terms.values().filter_map(BiPoly::deg_h).max()
    }

    /// Every polynomial component is divisible by `hb`.
    pub fn inside_hb_ideal(&self) -> bool {
        self.terms.values().all(BiPoly::divisible_by_hb)
    }

    /// Coordinates `(q, i, a, b)` of `c * h^q hb^i ⊗ f^a fb^b v`.
    pub fn coords(&self) -> impl Iterator<Item = ((u32, u32, u32, u32), &Scalar)> {
        self.terms.iter().flat_map(|((a, b), p)| {
            p.terms().map(move |((q, i), c)| ((*q, *i, *a, *b), c))
        })
    }
}

impl ModuleElement for TensorElement {
    fn zero() -> Self {
        TensorElement::zero()
    }
    fn is_zero(&self) -> bool {
        TensorElement::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        TensorElement::add_scaled(self, other, c)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, ((i, j), p)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({p})⊗{}", basis_name(*i, *j))?;
        }
        Ok(())
    }
}

/// Leibniz action `g(p ⊗ w) = (g p) ⊗ w + p ⊗ (g w)`.
pub fn tensor_act(gen: GenSymbol, module: &TensorModule, x: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero();
    for ((i, j), p) in &x.terms {
        out.add_pure(&module.params.act(gen, p), *i, *j);
        for ((a, b), c) in module.hw.act(gen, &VermaElement::basis(*i, *j)).terms() {
            out.add_pure_scaled(p, c, *a, *b);
        }
    }
    out
}

impl GModule for TensorModule {
    type Elem = TensorElement;
    fn act(&self, gen: GenSymbol, x: &TensorElement) -> TensorElement {
        tensor_act(gen, self, x)
    }
}

/// Finite set of basis vectors `h^q hb^i ⊗ f^a fb^b v` with `q + i + a + b <= depth`,
/// indexed by increasing total degree so `1 ⊗ v` has index 0.
#[derive(Clone, Debug)]
pub struct Window {
    pub depth: u32,
    keys: Vec<(u32, u32, u32, u32)>,
    index: HashMap<(u32, u32, u32, u32), usize>,
}

impl Window {
    pub fn new(hw: &HwModule, depth: u32) -> Self {
        let mut keys = Vec::new();
        for total in 0..=depth {
            for (a, b) in hw.basis_up_to(total) {
                let rest = total - a - b;
                for q in (0..=rest).rev() {
                    keys.push((q, rest - q, a, b));
                }
            }
        }
        let index = keys.iter().enumerate().map(|(n, k)| (*k, n)).collect();
        Self { depth, keys, index }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, n: usize) -> (u32, u32, u32, u32) {
        self.keys[n]
    }

    pub fn keys(&self) -> &[(u32, u32, u32, u32)] {
        &self.keys
    }

    pub fn index_of(&self, key: &(u32, u32, u32, u32)) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Coordinates in the window, or `None` if any term falls outside it.
    pub fn encode(&self, x: &TensorElement) -> Option<SparseRow> {
        x.coords()
            .map(|(k, c)| self.index_of(&k).map(|n| (n, c.clone())))
            .collect()
    }

    pub fn decode(&self, row: &SparseRow) -> TensorElement {
        let mut out = TensorElement::zero();
        for (n, c) in row {
            let (q, i, a, b) = self.keys[*n];
            out.add_pure(&BiPoly::monomial(q, i, c.clone()), a, b);
        }
        out
    }

    pub fn basis_element(&self, n: usize) -> TensorElement {
        let (q, i, a, b) = self.keys[n];
        TensorElement::pure(BiPoly::monomial(q, i, Scalar::one()), a, b)
    }
}
