//! The Euler ring `U(𝕋)` of a torus, truncated at codimension one.
//!
//! An element is `c·𝕀 + Σ_H c_H χ_𝕋(𝕋/H⁺)` where `H` ranges over
//! codimension-one subgroups `H_μ`. Generators of codimension two or more
//! never feed back into these coefficients under multiplication, so they are
//! dropped; the `truncated` flag records whether anything was dropped.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json;
use crate::weight_lattice::SubgroupId;

/// A closed subgroup that carries a coefficient in the truncated ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subgroup {
    /// The whole torus; its generator is the unit `𝕀`.
    Torus,
    Codim1(SubgroupId),
}

impl From<SubgroupId> for Subgroup {
    fn from(h: SubgroupId) -> Self {
        Subgroup::Codim1(h)
    }
}

#[derive(Debug, Clone, Default)]
pub struct EulerRingElement {
    unit: BigInt,
    codim1: BTreeMap<SubgroupId, BigInt>,
    truncated: bool,
}

/// Equality compares coefficients only; the truncation flag is provenance.
impl PartialEq for EulerRingElement {
    fn eq(&self, other: &Self) -> bool {
        self.unit == other.unit && self.codim1 == other.codim1
    }
}

impl Eq for EulerRingElement {}

impl EulerRingElement {
    /// The zero element `Θ`.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit `𝕀 = χ_𝕋(𝕋/𝕋⁺)`.
    pub fn one() -> Self {
        Self::from_unit(BigInt::one())
    }

    pub fn from_unit(c: impl Into<BigInt>) -> Self {
        EulerRingElement { unit: c.into(), ..Self::default() }
    }

    /// The generator `χ_𝕋(𝕋/H⁺)`.
    pub fn generator(h: SubgroupId) -> Self {
        Self::from_parts(BigInt::zero(), [(h, BigInt::one())])
    }

    pub fn from_parts(
        unit: impl Into<BigInt>,
        terms: impl IntoIterator<Item = (SubgroupId, BigInt)>,
    ) -> Self {
        let mut out = EulerRingElement { unit: unit.into(), ..Self::default() };
        for (h, c) in terms {
            out.add_term(h, c);
        }
        out
    }

    pub fn unit_coeff(&self) -> &BigInt {
        &self.unit
    }

    pub fn codim1(&self) -> &BTreeMap<SubgroupId, BigInt> {
        &self.codim1
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn mark_truncated(mut self) -> Self {
        self.truncated = true;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero() && self.codim1.is_empty()
    }

    /// Coefficient of the generator for `h`.
    pub fn coeff(&self, h: &Subgroup) -> BigInt {
        match h {
            Subgroup::Torus => self.unit.clone(),
            Subgroup::Codim1(id) => self.coeff_at(id),
        }
    }

    /// Coefficient `x_H` of `χ_𝕋(𝕋/H⁺)`.
    pub fn coeff_at(&self, h: &SubgroupId) -> BigInt {
        self.codim1.get(h).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, h: SubgroupId, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.codim1.entry(h.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.codim1.remove(&h);
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return EulerRingElement { truncated: self.truncated, ..Self::default() };
        }
        EulerRingElement {
            unit: &self.unit * k,
            codim1: self.codim1.iter().map(|(h, c)| (h.clone(), c * k)).collect(),
            truncated: self.truncated,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.unit += &other.unit;
        for (h, c) in &other.codim1 {
            out.add_term(h.clone(), c.clone());
        }
        out.truncated |= other.truncated;
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    /// Smash-product multiplication.
    ///
    /// `χ(𝕋/H_μ⁺) ⋆ χ(𝕋/H_ν⁺)` is `Θ` when `μ, ν` are proportional and a
    /// codimension-two generator otherwise; either way it leaves the unit and
    /// codimension-one coefficients untouched, so only the cross terms with
    /// `𝕀` survive.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = EulerRingElement {
            unit: &self.unit * &other.unit,
            codim1: BTreeMap::new(),
            truncated: self.truncated || other.truncated,
        };
        for (h, c) in &other.codim1 {
            out.add_term(h.clone(), &self.unit * c);
        }
        for (h, c) in &self.codim1 {
            out.add_term(h.clone(), &other.unit * c);
        }
        if !self.codim1.is_empty() && !other.codim1.is_empty() {
            out.truncated = true;
        }
        out
    }

    /// Inverse of `a𝕀 + b` with `a = ±1`: `(a𝕀 + b)(a𝕀 − b) = 𝕀` up to dropped terms.
    pub fn inverse(&self) -> Result<Self> {
        if self.unit.abs() != BigInt::one() {
            return Err(Error::NotInvertible(self.unit.to_string()));
        }
        let mut out = self.neg();
        out.unit = self.unit.clone();
        if !self.codim1.is_empty() {
            out.truncated = true;
        }
        Ok(out)
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inverse()?.pow(-n);
        }
        let mut acc = Self::one();
        if self.truncated {
            acc.truncated = true;
        }
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }
}

impl Add for &EulerRingElement {
    type Output = EulerRingElement;
    fn add(self, rhs: Self) -> EulerRingElement {
        EulerRingElement::add(self, rhs)
    }
}

impl Sub for &EulerRingElement {
    type Output = EulerRingElement;
    fn sub(self, rhs: Self) -> EulerRingElement {
        EulerRingElement::sub(self, rhs)
    }
}

impl Mul for &EulerRingElement {
    type Output = EulerRingElement;
    fn mul(self, rhs: Self) -> EulerRingElement {
        EulerRingElement::mul(self, rhs)
    }
}

impl Neg for &EulerRingElement {
    type Output = EulerRingElement;
    fn neg(self) -> EulerRingElement {
        EulerRingElement::neg(self)
    }
}

impl fmt::Display for EulerRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "Θ");
        }
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, c: &BigInt, label: &str| -> fmt::Result {
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{sign}")?;
            if !first && !sign.is_empty() {
                write!(f, " ")?;
            }
            if mag.is_one() {
                write!(f, "{label}")?;
            } else {
                write!(f, "{mag}{label}")?;
            }
            first = false;
            Ok(())
        };
        if !self.unit.is_zero() {
            term(f, &self.unit, "I")?;
        }
        for (h, c) in &self.codim1 {
            term(f, c, &format!("χ[{h}]"))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    #[serde(rename = "H")]
    h: crate::weight_lattice::RestrictedWeight,
    #[serde(with = "json::bigint")]
    c: BigInt,
}

#[derive(Serialize, Deserialize)]
struct ElementWire {
    #[serde(with = "json::bigint")]
    unit: BigInt,
    codim1: Vec<TermWire>,
    truncated: bool,
}

impl Serialize for EulerRingElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementWire {
            unit: self.unit.clone(),
            codim1: self
                .codim1
                .iter()
                .map(|(h, c)| TermWire { h: h.canonical().clone(), c: c.clone() })
                .collect(),
            truncated: self.truncated,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EulerRingElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = ElementWire::deserialize(d)?;
        let mut out = EulerRingElement::from_unit(wire.unit);
        for t in wire.codim1 {
            let h = crate::weight_lattice::canonicalize(&t.h).map_err(serde::de::Error::custom)?;
            out.add_term(h, t.c);
        }
        out.truncated = wire.truncated;
        Ok(out)
    }
}
