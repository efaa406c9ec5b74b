use std::fmt;

use super::{inv_mod, Elem, RingSpec};
use crate::error::{Error, Result};

/// A ring element together with the ring it lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    spec: RingSpec,
    elem: Elem,
}

impl RingElem {
    /// Wraps a payload, rejecting non-canonical ones.
    pub fn new(spec: &RingSpec, elem: Elem) -> Result<Self> {
        if !spec.contains(&elem) {
            return Err(Error::InvalidElement(format!("{elem:?} is not canonical in {spec}")));
        }
        Ok(RingElem {
            spec: spec.clone(),
            elem,
        })
    }

    pub(crate) fn wrap(spec: &RingSpec, elem: Elem) -> Self {
        debug_assert!(spec.contains(&elem));
        RingElem {
            spec: spec.clone(),
            elem,
        }
    }

    pub fn from_i64(spec: &RingSpec, v: i64) -> Self {
        Self::wrap(spec, spec.from_i64(v))
    }

    pub fn parse(spec: &RingSpec, s: &str) -> Result<Self> {
        Ok(Self::wrap(spec, spec.parse_elem(s)?))
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn elem(&self) -> &Elem {
        &self.elem
    }

    pub fn into_elem(self) -> Elem {
        self.elem
    }

    fn binary(&self, other: &Self, op: impl Fn(&RingSpec, &Elem, &Elem) -> Elem) -> Result<Self> {
        self.spec.same_as(&other.spec)?;
        Ok(Self::wrap(&self.spec, op(&self.spec, &self.elem, &other.elem)))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.binary(other, RingSpec::add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, RingSpec::sub)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, RingSpec::mul)
    }

    pub fn neg(&self) -> Self {
        Self::wrap(&self.spec, self.spec.neg(&self.elem))
    }

    pub fn pow(&self, e: u64) -> Self {
        Self::wrap(&self.spec, self.spec.pow(&self.elem, e))
    }

    pub fn is_zero(&self) -> bool {
        self.spec.is_zero(&self.elem)
    }

    pub fn is_unit(&self) -> bool {
        self.spec.is_unit(&self.elem)
    }

    pub fn invert(&self) -> Result<Self> {
        self.spec
            .inverse(&self.elem)
            .map(|e| Self::wrap(&self.spec, e))
            .ok_or_else(|| Error::NotAUnit(self.to_string()))
    }

    /// Image in the residue field. Fails on product rings.
    pub fn residue(&self) -> Result<ResidueElem> {
        let p = self
            .spec
            .residue_prime()
            .ok_or_else(|| Error::UnsupportedFamily(self.spec.to_string()))?;
        let value = self.spec.residue(&self.elem).expect("local ring has a residue map");
        Ok(ResidueElem { p, value })
    }

    /// Canonical lift of a residue class into `spec`.
    pub fn lift(r: ResidueElem, spec: &RingSpec) -> Result<Self> {
        match spec.residue_prime() {
            Some(p) if p == r.p => Ok(Self::wrap(spec, spec.lift_residue(r.value))),
            Some(p) => Err(Error::SpecMismatch {
                left: format!("F{}", r.p),
                right: format!("F{p}"),
            }),
            None => Err(Error::UnsupportedFamily(spec.to_string())),
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec.format_elem(&self.elem))
    }
}

/// An element of the residue field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueElem {
    p: u64,
    value: u64,
}

impl ResidueElem {
    pub fn new(p: u64, value: u64) -> Self {
        ResidueElem { p, value: value % p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn inverse(self) -> Option<Self> {
        inv_mod(self.value, self.p).map(|v| Self::new(self.p, v))
    }
}

impl std::ops::Add for ResidueElem {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        Self::new(self.p, self.value + other.value)
    }
}

impl std::ops::Mul for ResidueElem {
    type Output = Self;

    fn mul(self, other: Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        Self::new(self.p, self.value * other.value)
    }
}

impl fmt::Display for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

/// All elements of a finite ring in canonical order.
pub fn enumerate(spec: &RingSpec) -> Result<Vec<RingElem>> {
    let n = spec.require_finite()?;
    Ok((0..n).map(|i| RingElem::wrap(spec, spec.element_at(i))).collect())
}
