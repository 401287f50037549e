//! Sparse polynomials in `h, hb` (bivariate) and in `hb` alone (univariate).
//!
//! Storage is an ordered map from exponents to nonzero coefficients, so two
//! equal polynomials always have identical term maps. The degree of the zero
//! polynomial is `None`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parse;
use crate::scalar::{self, Scalar};

/// Polynomial in `h` and `hb`; keys are `(h-degree, hb-degree)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Scalar>,
}

/// Polynomial in `hb`; keys are `hb`-degrees.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    terms: BTreeMap<u32, Scalar>,
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, c: &Scalar, mono: &str) -> fmt::Result {
    if mono.is_empty() {
        write!(f, "{c}")
    } else if c.is_one() {
        write!(f, "{mono}")
    } else if *c == -Scalar::one() {
        write!(f, "-{mono}")
    } else {
        write!(f, "{c}*{mono}")
    }
}

fn var_power(name: &str, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `c * h^i * hb^j`.
    pub fn monomial(i: u32, j: u32, c: Scalar) -> Self {
        let mut p = Self::zero();
        add_into(&mut p.terms, (i, j), c);
        p
    }

    pub fn h() -> Self {
        Self::monomial(1, 0, Scalar::one())
    }

    pub fn hb() -> Self {
        Self::monomial(0, 1, Scalar::one())
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Scalar)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in iter {
            add_into(&mut p.terms, k, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Scalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Scalar) {
        add_into(&mut self.terms, (i, j), c);
    }

    /// In place `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let one = c.is_one();
        for (k, v) in &other.terms {
            add_into(&mut self.terms, *k, if one { v.clone() } else { v * c });
        }
    }

    /// Degree in `h`; `None` for the zero polynomial.
    pub fn deg_h(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    /// Degree in `hb`; `None` for the zero polynomial.
    pub fn deg_hb(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    /// Coefficient of `h^i`, as a polynomial in `hb`.
    pub fn h_coeff(&self, i: u32) -> UniPoly {
        UniPoly::from_terms(
            self.terms
                .range((i, 0)..=(i, u32::MAX))
                .map(|(&(_, j), c)| (j, c.clone())),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplies by `h^i hb^j`.
    pub fn shift_degrees(&self, i: u32, j: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a + i, b + j), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `h -> h + delta`, leaving `hb` untouched.
    pub fn shift_h(&self, delta: &Scalar) -> Self {
        if delta.is_zero() {
            return self.clone();
        }
        let mut out = Self::zero();
        if delta.is_integer() {
            let d = delta.to_integer();
            for (&(i, j), c) in &self.terms {
                // C(i,l) delta^(i-l) for l = i, i-1, ..., 0, kept integral
                let mut coef = BigInt::one();
                for l in (0..=i).rev() {
                    out.add_term(l, j, c * &coef);
                    coef = coef * &d * BigInt::from(l) / BigInt::from(i - l + 1);
                }
            }
            return out;
        }
        for (&(i, j), c) in &self.terms {
            // (h + delta)^i = sum_l C(i,l) delta^(i-l) h^l
            let mut dpow = Scalar::one();
            for l in (0..=i).rev() {
                out.add_term(l, j, c * scalar::binomial(i, l) * &dpow);
                dpow *= delta;
            }
        }
        out
    }

    /// Formal partial derivative in `hb`.
    pub fn dbar(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.1 > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c * scalar::int(j as i64))),
        )
    }

    /// True when every term carries at least one factor of `hb`.
    pub fn divisible_by_hb(&self) -> bool {
        self.terms.keys().all(|k| k.1 > 0)
    }

    /// Evaluates `h = x`, returning a polynomial in `hb`.
    pub fn eval_h(&self, x: &Scalar) -> UniPoly {
        let mut out = UniPoly::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(j, c * scalar::pow(x, i as i64).expect("nonnegative power"));
        }
        out
    }
}

impl From<&UniPoly> for BiPoly {
    fn from(u: &UniPoly) -> Self {
        BiPoly::from_terms(u.terms().map(|(&j, c)| ((0, j), c.clone())))
    }
}

impl From<UniPoly> for BiPoly {
    fn from(u: UniPoly) -> Self {
        BiPoly::from(&u)
    }
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(0, c)
    }

    /// `c * hb^j`.
    pub fn monomial(j: u32, c: Scalar) -> Self {
        let mut p = Self::zero();
        add_into(&mut p.terms, j, c);
        p
    }

    pub fn hb() -> Self {
        Self::monomial(1, Scalar::one())
    }

    /// Builds from ascending coefficients `c_0, c_1, ...`.
    pub fn from_coeffs<I: IntoIterator<Item = Scalar>>(coeffs: I) -> Self {
        Self::from_terms(coeffs.into_iter().enumerate().map(|(j, c)| (j as u32, c)))
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Scalar)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in iter {
            add_into(&mut p.terms, k, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, j: u32) -> Scalar {
        self.terms.get(&j).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Dense coefficients `c_0..=c_deg`; empty for zero.
    pub fn coeffs(&self) -> Vec<Scalar> {
        match self.deg() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|j| self.coeff(j)).collect(),
        }
    }

    pub fn add_term(&mut self, j: u32, c: Scalar) {
        add_into(&mut self.terms, j, c);
    }

    pub fn deg(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| **k > 0)
                .map(|(&j, c)| (j - 1, c * scalar::int(j as i64))),
        )
    }

    /// True when the constant term vanishes.
    pub fn divisible_by_hb(&self) -> bool {
        !self.terms.contains_key(&0)
    }
}

macro_rules! ring_ops {
    ($ty:ident) => {
        impl Add<&$ty> for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                for (k, c) in &rhs.terms {
                    add_into(&mut out.terms, *k, c.clone());
                }
                out
            }
        }
        impl Sub<&$ty> for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                for (k, c) in &rhs.terms {
                    add_into(&mut out.terms, *k, -c.clone());
                }
                out
            }
        }
        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty {
                    terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
                }
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
    };
}

ring_ops!(BiPoly);
ring_ops!(UniPoly);

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(i, j), d) in &rhs.terms {
                out.add_term(a + i, b + j, c * d);
            }
        }
        out
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for (&a, c) in &self.terms {
            for (&i, d) in &rhs.terms {
                out.add_term(a + i, c * d);
            }
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = [var_power("h", i), var_power("hb", j)]
                .into_iter()
                .flatten()
                .collect();
            fmt_term(f, c, &mono.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&j, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            fmt_term(f, c, &var_power("hb", j).unwrap_or_default())?;
        }
        Ok(())
    }
}

impl FromStr for BiPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_bipoly(s)
    }
}

impl FromStr for UniPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let p = parse::parse_bipoly(s)?;
        if p.deg_h().unwrap_or(0) > 0 {
            return Err(Error::Parse {
                input: s.to_string(),
                position: s.find('h').unwrap_or(0),
                message: "expected a polynomial in hb only".into(),
            });
        }
        Ok(p.h_coeff(0))
    }
}

macro_rules! text_serde {
    ($ty:ident) => {
        impl Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_string())
            }
        }
        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

text_serde!(BiPoly);
text_serde!(UniPoly);
