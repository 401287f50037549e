//! The `w^(r)` elements on `V` alone and on `V ⊗ L`.

use crate::error::{Error, Result};
use crate::family::Family;
use crate::highest_weight::basis_name;
use crate::poly::BiPoly;
use crate::report::{Report, Status};
use crate::scalar;
use crate::tensor::{TensorElement, TensorModule};
use crate::uea::{build_w_r, GModule};

/// `w^(r)` applied to `g` inside `V`; zero whenever `deg_h g < r`.
pub fn w_r_on_family(module: &TensorModule, g: &BiPoly, r: u32) -> Result<BiPoly> {
    let p = &module.params;
    let w = build_w_r(p.family(), r, p.lambda(), p.a())?;
    Ok(p.act_uea(&w, g))
}

/// `w^(r) (g ⊗ v)` for a basis vector `v` of `L`.
pub fn w_r_on_tensor(module: &TensorModule, g: &BiPoly, r: u32, v: (u32, u32)) -> Result<TensorElement> {
    let p = &module.params;
    let w = build_w_r(p.family(), r, p.lambda(), p.a())?;
    Ok(module.act_uea(&w, &TensorElement::pure(g.clone(), v.0, v.1)))
}

/// Part (i) on `V`, then part (ii) on `g ⊗ v` with `v` the highest-weight vector.
///
/// Part (ii) is also compared with `(-1)^r g ⊗ v` for Gamma. A final record
/// searches low basis vectors of `L` for one on which `w^(r)` does not vanish.
pub fn lemma51_check(module: &TensorModule, g: &BiPoly, r: u32) -> Result<Report> {
    let Some(deg) = g.deg_h() else {
        return Err(Error::ZeroElement);
    };
    if r == 0 || r <= deg {
        return Err(Error::Precondition(format!("need r > deg_h g = {deg}, got r = {r}")));
    }
    let family = module.family();
    let mut report = Report::new("lemma51");

    let on_v = w_r_on_family(module, g, r)?;
    report.check(
        "part-i",
        on_v.is_zero(),
        if on_v.is_zero() { String::new() } else { format!("w^({r}).({g}) = {on_v}") },
    );

    let value = w_r_on_tensor(module, g, r, (0, 0))?;
    let witness = format!("w^({r}).(({g})⊗v) = {value}");
    let status = match (value.is_zero(), family) {
        (false, _) => Status::Pass,
        (true, Family::Omega) => Status::Inconclusive,
        (true, _) => Status::Fail,
    };
    let flagged = if value.is_zero() && family == Family::Omega {
        format!("{witness}; vanishes at {}", module.params)
    } else {
        witness
    };
    report.push("part-ii/nonzero", status, flagged);

    if family == Family::Gamma {
        let sign = if r.is_multiple_of(2) { scalar::int(1) } else { scalar::int(-1) };
        let expected = TensorElement::pure(g.scale(&sign), 0, 0);
        report.check(
            "part-ii/signed-identity",
            value == expected,
            format!("expected {expected}, got {value}"),
        );
    }
    if family == Family::Theta {
        let top = value.component(0, r);
        let want = g.scale(&scalar::pow(module.params.lambda(), -i64::from(r)).expect("lambda nonzero"));
        report.check(
            "part-ii/top-component",
            top == want,
            format!("coefficient of {} is {top}", basis_name(0, r)),
        );
    }

    let found = search_nonvanishing(module, g, r, r + deg + 1)?;
    match found {
        Some((v, val)) => report.push(
            "part-ii/some-basis-vector",
            Status::Pass,
            format!("v = {}: {val}", basis_name(v.0, v.1)),
        ),
        None => report.push(
            "part-ii/some-basis-vector",
            Status::Inconclusive,
            format!("w^({r}) kills ({g})⊗w for every basis w up to level {}", r + deg + 1),
        ),
    }
    Ok(report)
}

/// First basis vector `w` of `L`, by level, with `w^(r)(g ⊗ w) != 0`.
pub fn search_nonvanishing(
    module: &TensorModule,
    g: &BiPoly,
    r: u32,
    max_level: u32,
) -> Result<Option<((u32, u32), TensorElement)>> {
    for v in module.hw.basis_up_to(max_level) {
        let val = w_r_on_tensor(module, g, r, v)?;
        if !val.is_zero() {
            return Ok(Some((v, val)));
        }
    }
    Ok(None)
}

/// The image of `1 ⊗ v` under `eb fb + hb^2/4` for Omega, used to locate
/// where `w^(r)` can vanish.
pub fn omega_casimir_on_hw(module: &TensorModule) -> TensorElement {
    module.act_uea(&crate::uea::omega_casimir(), &module.hw_vector())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilyParams;
    use crate::highest_weight::{HighestWeight, HwModule};
    use crate::poly::UniPoly;
    use crate::scalar::int;

    fn verma(eta: i64, theta: i64) -> HwModule {
        HwModule::verma(HighestWeight::new(int(eta), int(theta)))
    }

    #[test]
    fn part_one_gamma_example() {
        let m = TensorModule::new(FamilyParams::gamma(int(1), int(0), int(0)).unwrap(), verma(1, 1));
        assert!(w_r_on_family(&m, &BiPoly::h(), 2).unwrap().is_zero());
        assert!(!w_r_on_family(&m, &"h^2".parse().unwrap(), 2).unwrap().is_zero());
    }

    #[test]
    fn gamma_on_hw_vector_vanishes() {
        // eb kills v, so w^(r)(g ⊗ v) = (w^(r) g) ⊗ v = 0.
        let m = TensorModule::new(FamilyParams::gamma(int(1), int(0), int(0)).unwrap(), verma(1, 1));
        let r = lemma51_check(&m, &BiPoly::h(), 2).unwrap();
        assert_eq!(r.get("part-i").unwrap().status, Status::Pass);
        assert_eq!(r.get("part-ii/nonzero").unwrap().status, Status::Fail);
        assert_eq!(r.get("part-ii/signed-identity").unwrap().status, Status::Fail);
        assert_eq!(r.get("part-ii/some-basis-vector").unwrap().status, Status::Pass);
    }

    #[test]
    fn theta_top_component() {
        let m = TensorModule::new(FamilyParams::theta(int(1), int(2), int(0)).unwrap(), verma(1, 1));
        let r = lemma51_check(&m, &BiPoly::one(), 1).unwrap();
        assert!(r.all_pass(), "{:?}", r.checks);
        let val = w_r_on_tensor(&m, &BiPoly::one(), 1, (0, 0)).unwrap();
        assert_eq!(val.component(0, 1), BiPoly::one());
    }

    #[test]
    fn omega_casimir_value() {
        // (a^2 + eta^2)/4 + eta*hb/2 on the hw line, plus eb ⊗ fb cross term.
        let m = TensorModule::new(
            FamilyParams::omega(int(1), int(2), UniPoly::zero()).unwrap(),
            verma(3, 1),
        );
        let c = omega_casimir_on_hw(&m);
        let hw_part = c.component(0, 0);
        assert_eq!(hw_part, "13/4 + 3/2*hb".parse().unwrap());
        assert!(!c.component(0, 1).is_zero());
    }

    #[test]
    fn preconditions() {
        let m = TensorModule::new(FamilyParams::gamma(int(1), int(0), int(0)).unwrap(), verma(1, 1));
        assert!(lemma51_check(&m, &"h^2".parse().unwrap(), 2).is_err());
        assert!(lemma51_check(&m, &BiPoly::zero(), 2).is_err());
        let o = TensorModule::new(FamilyParams::omega(int(1), int(0), UniPoly::zero()).unwrap(), verma(1, 1));
        assert!(lemma51_check(&o, &BiPoly::one(), 1).is_err());
    }
}
