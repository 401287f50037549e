//! Removing `h` from an element of `Gamma ⊗ L` using only powers of `eb`.
//!
//! On `Gamma`, `eb` is `lambda` times the shift `h -> h - 2`. For a component
//! `p ⊗ w` with `eb^K w = 0`,
//!
//! ```text
//! lambda^-m eb^m (p ⊗ w) = sum_{t<K} C(m,t) lambda^-t p(h - 2(m-t)) ⊗ eb^t w
//! ```
//!
//! is a polynomial in `m` of degree `deg_h p + K - 1` whose leading
//! coefficient is free of `h`. Sampling it at enough integers and solving the
//! Vandermonde system isolates that coefficient.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::highest_weight::{annihilation_index, VermaElement};
use crate::linalg::{self, SparseEchelon, SparseRow};
use crate::scalar::{self, Scalar};
use crate::tensor::{TensorElement, TensorModule};
use crate::uea::{GModule, GenSymbol, PbwMonomial, UeaElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// Nonzero, `h`-free, in the submodule generated by the input.
    pub element: TensorElement,
    /// `sum c_m eb^m` with `combination . x = element`.
    pub combination: UeaElement,
    /// Set when the direct solve on the `eb`-span replaced the sampling.
    pub fallback: bool,
    /// Largest `eb`-annihilation index over the components (0 on the fallback).
    pub k: u32,
    /// Degree in `m` of the sampled polynomial, or the top power on the fallback.
    pub degree: u32,
    /// Which coefficient was returned (the highest nonzero one).
    pub picked: u32,
}

/// Cap on the powers of `eb` tried by the fallback.
const MAX_POWERS: usize = 64;

/// Reduces `x` to a nonzero `h`-free element `sum c_m eb^m x`.
///
/// When the sampled coefficient still carries `h`, the combination is solved
/// for directly on the span of `x, eb x, eb^2 x, ...`, so a stall means that
/// span holds no nonzero `h`-free element at all.
pub fn vandermonde_reduce(module: &TensorModule, x: &TensorElement) -> Result<Reduction> {
    let red = reduce_once(module, x)?;
    if red.element.deg_h().unwrap_or(0) == 0 {
        return Ok(red);
    }
    krylov_reduce(module, x)
}

fn krylov_reduce(module: &TensorModule, x: &TensorElement) -> Result<Reduction> {
    let mut index: BTreeMap<(u32, u32, u32, u32), usize> = BTreeMap::new();
    let mut span = SparseEchelon::new();
    let mut powers = Vec::new();
    let mut cur = x.clone();
    while powers.len() < MAX_POWERS && !cur.is_zero() {
        let mut row = SparseRow::new();
        for (coord, c) in cur.coords() {
            let n = index.len();
            row.insert(*index.entry(coord).or_insert(n), c.clone());
        }
        if span.insert(&row).is_none() {
            break;
        }
        let next = module.act(GenSymbol::Eb, &cur);
        powers.push(cur);
        cur = next;
    }
    // One equation per h-dependent coordinate, one unknown per power.
    let mut eqs: BTreeMap<(u32, u32, u32, u32), SparseRow> = BTreeMap::new();
    for (m, y) in powers.iter().enumerate() {
        for (coord, c) in y.coords().filter(|(coord, _)| coord.0 > 0) {
            eqs.entry(coord).or_default().insert(m, c.clone());
        }
    }
    // The powers are independent, so any nonzero solution gives a nonzero element.
    let Some(c) = linalg::sparse_nullspace(eqs.into_values(), powers.len()).into_iter().next() else {
        return Err(Error::ReductionStalled(format!(
            "no nonzero h-free element in the span of eb^m ({x}), m < {}",
            powers.len()
        )));
    };
    let mut element = TensorElement::zero();
    let mut combination = UeaElement::zero();
    for (m, (y, cm)) in powers.iter().zip(&c).enumerate() {
        element.add_scaled(y, cm);
        combination.add_term(PbwMonomial::one().times(GenSymbol::Eb, m as u32), cm.clone());
    }
    Ok(Reduction { element, combination, k: 0, degree: powers.len() as u32 - 1, picked: 0, fallback: true })
}

fn reduce_once(module: &TensorModule, x: &TensorElement) -> Result<Reduction> {
    if module.family() != Family::Gamma {
        return Err(Error::Precondition("the Vandermonde reduction needs the Gamma family".into()));
    }
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut k = 1;
    let mut degree = 0;
    for ((i, j), p) in x.terms() {
        let kb = annihilation_index(&module.hw, GenSymbol::Eb, &VermaElement::basis(*i, *j))?;
        k = k.max(kb);
        degree = degree.max(p.deg_h().unwrap_or(0) + kb - 1);
    }
    let lambda = module.params.lambda();
    let nodes: Vec<u32> = (k..=k + degree).collect();
    let vander: Vec<Vec<Scalar>> = nodes
        .iter()
        .map(|&m| (0..=degree).map(|d| scalar::int(i64::from(m).pow(d))).collect())
        .collect();
    let inv = linalg::invert(&vander).expect("distinct nodes");

    // y_m = lambda^-m eb^m x for each node.
    let mut samples = Vec::with_capacity(nodes.len());
    let mut cur = x.clone();
    let mut power = 0;
    let lambda_inv = lambda.recip();
    for &m in &nodes {
        while power < m {
            cur = module.act(GenSymbol::Eb, &cur).scale(&lambda_inv);
            power += 1;
        }
        samples.push(cur.clone());
    }

    for d in (0..=degree).rev() {
        let mut coef = TensorElement::zero();
        let mut combination = UeaElement::zero();
        for (n, y) in samples.iter().enumerate() {
            let c = &inv[d as usize][n];
            coef.add_scaled(y, c);
            let m = nodes[n];
            let weight = c * scalar::pow(lambda, -i64::from(m)).expect("lambda nonzero");
            combination.add_term(PbwMonomial::one().times(GenSymbol::Eb, m), weight);
        }
        if coef.is_zero() {
            continue;
        }
        return Ok(Reduction {
            fallback: false,
            element: coef,
            combination,
            k,
            degree,
            picked: d,
        });
    }
    unreachable!("a nonzero input gives a nonzero sampled polynomial")
}

/// Applies the recorded `eb`-combination to `x` and compares with the output.
pub fn replay(module: &TensorModule, x: &TensorElement, red: &Reduction) -> bool {
    let only_eb = red
        .combination
        .terms()
        .all(|(m, _)| *m == PbwMonomial::one().times(GenSymbol::Eb, m.exp(GenSymbol::Eb)));
    only_eb && module.act_uea(&red.combination, x) == red.element
}
