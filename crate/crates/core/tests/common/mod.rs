#![allow(dead_code)]

use proptest::prelude::*;
use takiff::highest_weight::{HighestWeight, HwModule};
use takiff::scalar::{frac, int};
use takiff::{BiPoly, Family, FamilyParams, GenSymbol, Scalar, UniPoly};

pub fn rat() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

pub fn nonzero_rat() -> impl Strategy<Value = Scalar> {
    (prop_oneof![-6i64..=-1, 1i64..=6], 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

pub fn bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0u32..4, 0u32..4, rat()), 0..5).prop_map(|t| {
        let mut p = BiPoly::zero();
        for (i, j, c) in t {
            p.add_term(i, j, c);
        }
        p
    })
}

pub fn unipoly(max_deg: u32) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(rat(), 0..=max_deg as usize + 1).prop_map(UniPoly::from_coeffs)
}

pub fn generator() -> impl Strategy<Value = GenSymbol> {
    prop::sample::select(GenSymbol::ALL.to_vec())
}

pub fn word(max_len: usize) -> impl Strategy<Value = Vec<GenSymbol>> {
    prop::collection::vec(generator(), 0..=max_len)
}

pub fn family_params() -> impl Strategy<Value = FamilyParams> {
    (prop::sample::select(Family::ALL.to_vec()), nonzero_rat(), rat(), rat(), unipoly(2)).prop_map(
        |(fam, lambda, a, b, beta)| match fam {
            Family::Omega => FamilyParams::omega(lambda, a, beta).expect("valid omega"),
            f => FamilyParams::ab(f, lambda, a, b).expect("valid params"),
        },
    )
}

pub fn verma(eta: i64, theta: i64) -> HwModule {
    HwModule::verma(HighestWeight::new(int(eta), int(theta)))
}

pub fn p(s: &str) -> BiPoly {
    s.parse().expect("polynomial literal")
}

pub fn u(s: &str) -> UniPoly {
    s.parse().expect("polynomial literal")
}
