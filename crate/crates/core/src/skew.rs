//! Operators on `C[h, hb]` generated by multiplication by `h` and `hb`, the
//! derivation `db = d/dhb` and the shift `s: p(h, hb) -> p(h - 2, hb)`.
//!
//! Every element is kept in the normal order `h^i hb^j db^k s^t`, with `t` any
//! integer. The rewrite rules are
//!
//! ```text
//! s h  = (h - 2) s        s^-1 h = (h + 2) s^-1
//! db hb = hb db + 1       all other generator pairs commute
//! ```
//!
//! so composition never needs truncation and operator identities are exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::poly::BiPoly;
use crate::scalar::{self, Scalar};

/// Exponents of the normal-ordered word `h^h hb^hb db^db s^shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SkewKey {
    pub h: u32,
    pub hb: u32,
    pub db: u32,
    pub shift: i32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SkewOperator {
    terms: BTreeMap<SkewKey, Scalar>,
}

impl SkewOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::term(0, 0, 0, 0, Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::term(0, 0, 0, 0, c)
    }

    /// `c * h^h hb^hb db^db s^shift`.
    pub fn term(h: u32, hb: u32, db: u32, shift: i32, c: Scalar) -> Self {
        let mut op = Self::zero();
        op.add_term(SkewKey { h, hb, db, shift }, c);
        op
    }

    pub fn h() -> Self {
        Self::term(1, 0, 0, 0, Scalar::one())
    }

    pub fn hb() -> Self {
        Self::term(0, 1, 0, 0, Scalar::one())
    }

    pub fn dbar() -> Self {
        Self::term(0, 0, 1, 0, Scalar::one())
    }

    /// `s^t`; `s` realizes `p(h, hb) -> p(h - 2, hb)`.
    pub fn shift(t: i32) -> Self {
        Self::term(0, 0, 0, t, Scalar::one())
    }

    /// Multiplication by a polynomial.
    pub fn mult(p: &BiPoly) -> Self {
        let mut op = Self::zero();
        for (&(i, j), c) in p.terms() {
            op.add_term(
                SkewKey {
                    h: i,
                    hb: j,
                    db: 0,
                    shift: 0,
                },
                c.clone(),
            );
        }
        op
    }

    pub fn add_term(&mut self, key: SkewKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SkewKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Largest `db`-power and `|shift|` present.
    pub fn reach(&self) -> (u32, u32) {
        self.terms.keys().fold((0, 0), |(d, s), k| {
            (d.max(k.db), s.max(k.shift.unsigned_abs()))
        })
    }

    /// Normal-ordered product `self ∘ rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                compose_terms(a, b, &(ca * cb), &mut out);
            }
        }
        out
    }

    /// `self ∘ rhs - rhs ∘ self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &self.compose(rhs) - &rhs.compose(self)
    }

    /// Action on a polynomial: shift first, then differentiate, then multiply.
    pub fn apply(&self, p: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        let mut shifted: BTreeMap<i32, BiPoly> = BTreeMap::new();
        for (k, c) in &self.terms {
            let s = shifted
                .entry(k.shift)
                .or_insert_with(|| p.shift_h(&scalar::int(-2 * k.shift as i64)));
            let mut q = s.clone();
            for _ in 0..k.db {
                q = q.dbar();
            }
            out = &out + &q.shift_degrees(k.h, k.hb).scale(c);
        }
        out
    }
}

/// Accumulates `c * (h^i hb^j db^k s^t) ∘ (h^i' hb^j' db^k' s^t')`.
///
/// Moving `s^t` right past `h^i'` turns it into `(h - 2t)^i'`; moving `db^k`
/// past `hb^j'` follows Leibniz: `db^k hb^j' = sum_l C(k,l) j'^(l) hb^(j'-l) db^(k-l)`.
fn compose_terms(a: &SkewKey, b: &SkewKey, c: &Scalar, out: &mut SkewOperator) {
    let minus_2t = scalar::int(-2 * a.shift as i64);
    for m in 0..=b.h {
        let hc = if b.h == m {
            Scalar::one()
        } else {
            scalar::binomial(b.h, m) * scalar::pow(&minus_2t, (b.h - m) as i64).expect("power")
        };
        if hc.is_zero() {
            continue;
        }
        for l in 0..=a.db.min(b.hb) {
            let lc = scalar::binomial(a.db, l) * scalar::falling(b.hb, l);
            out.add_term(
                SkewKey {
                    h: a.h + m,
                    hb: a.hb + b.hb - l,
                    db: a.db - l + b.db,
                    shift: a.shift + b.shift,
                },
                c * &hc * lc,
            );
        }
    }
}

impl Add<&SkewOperator> for &SkewOperator {
    type Output = SkewOperator;
    fn add(self, rhs: &SkewOperator) -> SkewOperator {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub<&SkewOperator> for &SkewOperator {
    type Output = SkewOperator;
    fn sub(self, rhs: &SkewOperator) -> SkewOperator {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl Neg for &SkewOperator {
    type Output = SkewOperator;
    fn neg(self) -> SkewOperator {
        self.scale(&-Scalar::one())
    }
}

impl Mul<&SkewOperator> for &SkewOperator {
    type Output = SkewOperator;
    fn mul(self, rhs: &SkewOperator) -> SkewOperator {
        self.compose(rhs)
    }
}

impl fmt::Display for SkewOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let mut parts = vec![scalar::fmt_scalar(c)];
            for (name, e) in [("h", k.h as i64), ("hb", k.hb as i64), ("db", k.db as i64), ("s", k.shift as i64)] {
                if e != 0 {
                    parts.push(format!("{name}^{e}"));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn p(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn shift_past_h() {
        let lhs = SkewOperator::shift(1).compose(&SkewOperator::h());
        let rhs = (&SkewOperator::h() - &SkewOperator::scalar(int(2))).compose(&SkewOperator::shift(1));
        assert_eq!(lhs, rhs);
        // (h-2)s checked against the action on basis monomials
        for i in 0..5 {
            for j in 0..3 {
                let m = BiPoly::monomial(i, j, int(1));
                let direct = (&BiPoly::h() * &m).shift_h(&int(-2));
                assert_eq!(lhs.apply(&m), direct);
            }
        }
    }

    #[test]
    fn dbar_past_hb() {
        let lhs = SkewOperator::dbar().compose(&SkewOperator::hb());
        let rhs = &SkewOperator::term(0, 1, 1, 0, int(1)) + &SkewOperator::identity();
        assert_eq!(lhs, rhs);
        assert_eq!(
            SkewOperator::shift(1).compose(&SkewOperator::hb()),
            SkewOperator::term(0, 1, 0, 1, int(1))
        );
    }

    #[test]
    fn apply_examples() {
        assert_eq!(SkewOperator::shift(1).apply(&p("h^2")), p("h^2 - 4*h + 4"));
        assert_eq!(SkewOperator::term(0, 1, 1, 0, int(1)).apply(&p("hb^2")), p("2*hb^2"));
        assert_eq!(SkewOperator::shift(-1).apply(&p("h")), p("h + 2"));
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(
            SkewOperator::dbar().commutator(&SkewOperator::hb()),
            SkewOperator::identity()
        );
        assert!(SkewOperator::shift(1).commutator(&SkewOperator::hb()).is_zero());
        assert_eq!(
            SkewOperator::shift(1).commutator(&SkewOperator::h()),
            SkewOperator::shift(1).scale(&int(-2))
        );
    }

    #[test]
    fn text_form() {
        let op = SkewOperator::term(1, 2, 1, -1, crate::scalar::frac(3, 2));
        assert_eq!(op.to_string(), "3/2*h^1*hb^2*db^1*s^-1");
        assert_eq!(SkewOperator::identity().to_string(), "1");
    }
}
