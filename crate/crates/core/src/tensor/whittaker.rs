//! Exact search for Whittaker vectors: `e x = mu1 x` and `eb x = mu2 x`.
//!
//! Unknowns range over a degree window; images are kept in full, so every
//! solution returned is a genuine Whittaker vector and every Whittaker vector
//! inside the window is in the span of the solutions.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::family::FamilyParams;
use crate::linalg::{self, SparseRow};
use crate::poly::BiPoly;
use crate::report::Report;
use crate::scalar::Scalar;
use crate::tensor::{TensorElement, TensorModule, Window};
use crate::uea::{GModule, GenSymbol};

/// Solves the two eigen-equations over `basis`; `coords` flattens an element.
fn solve_in_span<E, K>(
    basis: &[E],
    act: impl Fn(GenSymbol, &E) -> E,
    coords: impl Fn(&E) -> Vec<(K, Scalar)>,
    mu1: &Scalar,
    mu2: &Scalar,
) -> Vec<Vec<Scalar>>
where
    K: Ord,
{
    let mut rows: BTreeMap<(GenSymbol, K), SparseRow> = BTreeMap::new();
    for (col, b) in basis.iter().enumerate() {
        for (g, mu) in [(GenSymbol::E, mu1), (GenSymbol::Eb, mu2)] {
            let mut entries: BTreeMap<K, Scalar> = BTreeMap::new();
            for (k, c) in coords(&act(g, b)) {
                *entries.entry(k).or_insert_with(Scalar::zero) += c;
            }
            for (k, c) in coords(b) {
                *entries.entry(k).or_insert_with(Scalar::zero) -= mu * c;
            }
            for (k, c) in entries {
                if !c.is_zero() {
                    rows.entry((g, k)).or_default().insert(col, c);
                }
            }
        }
    }
    linalg::sparse_nullspace(rows.into_values(), basis.len())
}

/// All Whittaker vectors of type `(mu1, mu2)` inside the depth window, as a basis.
pub fn whittaker_vector_search(module: &TensorModule, mu1: &Scalar, mu2: &Scalar, depth: u32) -> Vec<TensorElement> {
    let window = Window::new(&module.hw, depth);
    let basis: Vec<TensorElement> = (0..window.len()).map(|n| window.basis_element(n)).collect();
    let coords = |x: &TensorElement| x.coords().map(|(k, c)| (k, c.clone())).collect();
    solve_in_span(&basis, |g, x| module.act(g, x), coords, mu1, mu2)
        .into_iter()
        .map(|v| {
            let mut out = TensorElement::zero();
            for (b, c) in basis.iter().zip(&v) {
                out.add_scaled(b, c);
            }
            out
        })
        .collect()
}

/// The same search on `V` alone, over `h^q hb^i` with `q + i <= depth`.
pub fn whittaker_on_family(params: &FamilyParams, mu1: &Scalar, mu2: &Scalar, depth: u32) -> Vec<BiPoly> {
    let basis: Vec<BiPoly> = (0..=depth)
        .flat_map(|t| (0..=t).map(move |q| BiPoly::monomial(q, t - q, num_traits::One::one())))
        .collect();
    let coords = |p: &BiPoly| p.terms().map(|(k, c)| (*k, c.clone())).collect();
    solve_in_span(&basis, |g, p| params.act(g, p), coords, mu1, mu2)
        .into_iter()
        .map(|v| {
            let mut out = BiPoly::zero();
            for (b, c) in basis.iter().zip(&v) {
                out = &out + &b.scale(c);
            }
            out
        })
        .collect()
}

/// One check per grid point: PASS when no Whittaker vector exists in the window.
pub fn whittaker_report(module: &TensorModule, grid: &[(Scalar, Scalar)], depth: u32) -> Report {
    use rayon::prelude::*;
    let found: Vec<Vec<TensorElement>> = grid
        .par_iter()
        .map(|(m1, m2)| whittaker_vector_search(module, m1, m2, depth))
        .collect();
    let mut report = Report::new("whittaker");
    for ((m1, m2), sols) in grid.iter().zip(found) {
        let witness = match sols.first() {
            None => String::new(),
            Some(x) => format!("{} solution(s), e.g. {x}", sols.len()),
        };
        report.check(format!("mu=({m1},{m2})"), sols.is_empty(), witness);
    }
    report
}
