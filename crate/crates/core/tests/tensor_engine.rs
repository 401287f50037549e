mod common;

use common::*;
use proptest::prelude::*;
use takiff::highest_weight::{HighestWeight, HwModule, VermaElement};
use takiff::scalar::{frac, int};
use takiff::tensor::closure::{
    casimir_seed, central_character, certify_irreducible, check_invariant_subspace, default_seeds, into_hb_ideal,
    Closure,
};
use takiff::tensor::lemma::{lemma51_check, w_r_on_family, w_r_on_tensor};
use takiff::tensor::recover::recover_parameters;
use takiff::tensor::reduce::{replay, vandermonde_reduce};
use takiff::tensor::whittaker::whittaker_vector_search;
use takiff::tensor::{TensorElement, TensorModule};
use takiff::uea::{omega_casimir, GModule};
use takiff::{BiPoly, FamilyParams, GenSymbol, Status};
use GenSymbol::*;

fn gamma100() -> TensorModule {
    TensorModule::new(FamilyParams::gamma(int(1), int(0), int(0)).unwrap(), verma(1, 1))
}

#[test]
fn leibniz_examples() {
    let m = gamma100();
    let one = m.hw_vector();
    assert_eq!(m.act(Eb, &one), one);
    let mut want = TensorElement::pure(BiPoly::hb(), 0, 0);
    want.add_pure(&BiPoly::one(), 0, 0);
    assert_eq!(m.act(Hb, &one), want);
    let mut want = TensorElement::pure(BiPoly::h(), 0, 0);
    want.add_pure(&BiPoly::one(), 0, 0);
    assert_eq!(m.act(H, &one), want);
    let fb = m.act(Fb, &one);
    assert_eq!(fb.component(0, 1), BiPoly::one());
}

#[test]
fn vandermonde_examples() {
    let m = gamma100();
    let mut x = TensorElement::pure(p("h"), 0, 0);
    x.add_pure(&BiPoly::one(), 0, 0);
    let red = vandermonde_reduce(&m, &x).unwrap();
    assert_eq!(red.k, 1);
    assert_eq!(red.element, TensorElement::pure(p("-2"), 0, 0));
    assert!(replay(&m, &x, &red));
    let y = TensorElement::pure(p("h^2"), 0, 0);
    assert_eq!(vandermonde_reduce(&m, &y).unwrap().element, TensorElement::pure(p("4"), 0, 0));
}

#[test]
fn structured_seeds_reach_hw() {
    let m = gamma100();
    let seeds = [
        TensorElement::pure(p("h"), 0, 0),
        TensorElement::pure(p("hb^2"), 0, 0),
        TensorElement::pure(p("h + hb"), 1, 0),
    ];
    let r = certify_irreducible(&m, &seeds, 8);
    for n in 0..3 {
        assert_eq!(r.get(&format!("seed-{n:02}")).unwrap().status, Status::Pass);
    }
    let t = TensorModule::new(FamilyParams::theta(int(2), int(1), int(1)).unwrap(), HwModule::finite_dim(2));
    let r = certify_irreducible(&t, &[TensorElement::pure(BiPoly::one(), 2, 0)], 8);
    assert!(r.all_pass(), "{:?}", r.checks);
}

#[test]
fn omega_a_zero_has_hb_submodule() {
    let m = TensorModule::new(FamilyParams::omega(int(1), int(0), u("hb")).unwrap(), verma(1, 1));
    assert!(check_invariant_subspace(&m, 6).unwrap().all_pass());
    let seeds = into_hb_ideal(&default_seeds(&m, 6, 6, 3));
    for s in &seeds {
        let mut c = Closure::new(&m, 6);
        let out = c.grow(s, true).unwrap();
        assert!(!out.reached && out.inside_hb_ideal, "{s}");
    }
}

#[test]
fn casimir_obstructs_simplicity_over_verma() {
    // z is central, so on a simple module of countable dimension it acts by a scalar.
    for params in [
        FamilyParams::gamma(int(1), int(0), int(0)).unwrap(),
        FamilyParams::theta(int(2), int(1), int(-1)).unwrap(),
        FamilyParams::omega(int(1), int(2), u("hb")).unwrap(),
    ] {
        let m = TensorModule::new(params.clone(), verma(1, 1));
        let image = central_character(&m).unwrap_err();
        assert_eq!(image, m.act_uea(&omega_casimir(), &m.hw_vector()));
        assert!(!image.component(0, 1).is_zero(), "{params}");
        let seed = casimir_seed(&m).unwrap();
        let mut c = Closure::new(&m, 6);
        assert!(!c.grow(&seed, true).unwrap().reached, "{params}");
        let fin = TensorModule::new(params, HwModule::finite_dim(2));
        assert!(central_character(&fin).is_ok());
    }
}

#[test]
fn lemma_examples() {
    let m = gamma100();
    // (eb^2 - 2 eb + 1) h = (h - 4) - 2 (h - 2) + h = 0
    assert!(w_r_on_family(&m, &BiPoly::h(), 2).unwrap().is_zero());
    let t = TensorModule::new(FamilyParams::theta(int(1), int(3), int(2)).unwrap(), verma(1, 1));
    let val = w_r_on_tensor(&t, &BiPoly::one(), 1, (0, 0)).unwrap();
    assert_eq!(val.component(0, 1), BiPoly::one());
    let r = lemma51_check(&t, &BiPoly::one(), 1).unwrap();
    assert!(r.all_pass(), "{:?}", r.checks);
}

#[test]
fn whittaker_examples() {
    let m = gamma100();
    assert!(whittaker_vector_search(&m, &int(0), &int(0), 6).is_empty());
    let t = TensorModule::new(FamilyParams::theta(int(1), int(1), int(0)).unwrap(), verma(1, 1));
    for mu1 in -1..=1 {
        for mu2 in -1..=1 {
            assert!(whittaker_vector_search(&t, &int(mu1), &int(mu2), 6).is_empty(), "({mu1}, {mu2})");
        }
    }
}

#[test]
fn recovery_examples() {
    let m = TensorModule::new(FamilyParams::gamma(int(3), int(-1), int(2)).unwrap(), verma(1, 1));
    let r = recover_parameters(&m).unwrap();
    assert_eq!((r.lambda, r.a, r.b, r.eta, r.theta), (int(3), int(-1), Some(int(2)), int(1), int(1)));
    let m = TensorModule::new(
        FamilyParams::theta(int(2), int(5), int(-3)).unwrap(),
        HwModule::verma(HighestWeight::new(int(2), int(0))),
    );
    let r = recover_parameters(&m).unwrap();
    assert_eq!((r.lambda, r.a, r.b, r.eta, r.theta), (int(2), int(5), Some(int(-3)), int(2), int(0)));
    let m = TensorModule::new(FamilyParams::omega(int(1), int(2), u("hb")).unwrap(), verma(1, 1));
    let r = recover_parameters(&m).unwrap();
    assert_eq!((r.lambda, r.a, r.beta), (int(1), int(2), Some(u("hb"))));
}

fn tensor_element() -> impl Strategy<Value = TensorElement> {
    prop::collection::vec((bipoly(), 0u32..3, 0u32..3), 1..3).prop_map(|parts| {
        let mut x = TensorElement::zero();
        for (q, i, j) in parts {
            x.add_pure(&q, i, j);
        }
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tensor_bracket_relations(params in family_params(), x in generator(), y in generator(), v in tensor_element()) {
        use takiff::uea::{bracket, AlgElement};
        let m = TensorModule::new(params, verma(2, -1));
        let lhs = {
            let mut l = m.act_word(&[x, y], &v);
            l.add_scaled(&m.act_word(&[y, x], &v), &int(-1));
            l
        };
        let mut rhs = TensorElement::zero();
        for (g, c) in bracket(&AlgElement::gen(x), &AlgElement::gen(y)).terms() {
            rhs.add_scaled(&m.act(*g, &v), c);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduction_is_h_free_and_replays(lambda in nonzero_rat(), a in rat(), b in rat(), v in tensor_element()) {
        prop_assume!(!v.is_zero());
        let m = TensorModule::new(FamilyParams::gamma(lambda, a, b).unwrap(), verma(1, 1));
        let red = vandermonde_reduce(&m, &v).unwrap();
        prop_assert!(!red.element.is_zero());
        prop_assert_eq!(red.element.deg_h(), Some(0));
        prop_assert!(replay(&m, &v, &red));
    }

    #[test]
    fn closure_tags_reproduce_members(seed_poly in bipoly(), i in 0u32..2) {
        prop_assume!(!seed_poly.is_zero());
        let m = TensorModule::new(FamilyParams::gamma(int(2), int(1), int(-1)).unwrap(), verma(1, 2));
        let seed = TensorElement::pure(seed_poly, i, 0);
        let mut c = Closure::new(&m, 4);
        prop_assume!(c.grow(&seed, false).is_ok());
        for piv in c.pivots().iter().take(12) {
            let u = c.tag(*piv).unwrap();
            prop_assert_eq!(m.act_uea(&u, &seed), c.member(*piv).unwrap());
        }
    }
}

#[test]
fn verma_component_of_tensor() {
    let w = VermaElement::term(1, 1, frac(1, 2));
    let x = TensorElement::tensor(&p("h"), &w);
    assert_eq!(x.component(1, 1), p("1/2*h"));
    assert_eq!(x.component(0, 0), BiPoly::zero());
}
