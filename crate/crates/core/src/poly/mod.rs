//! Dense univariate polynomials over a [`RingSpec`] and over its residue field.

mod residue;
mod text;

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::rings::{Elem, RingElem, RingSpec};

pub use residue::{factor_residue, factor_residue_bounded, xgcd_residue, ResiduePoly, DEFAULT_FACTOR_WORK};

/// Polynomial with coefficients in a ring, constant term first.
///
/// The coefficient vector never has trailing zeros; the zero polynomial has
/// no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    spec: RingSpec,
    coeffs: Vec<Elem>,
}

impl Poly {
    /// Builds a polynomial from canonical payloads, constant term first.
    pub fn new(spec: &RingSpec, coeffs: Vec<Elem>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| !spec.contains(c)) {
            return Err(Error::InvalidElement(format!("{bad:?} is not canonical in {spec}")));
        }
        Ok(Self::from_elems(spec, coeffs))
    }

    pub(crate) fn from_elems(spec: &RingSpec, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| spec.is_zero(c)) {
            coeffs.pop();
        }
        Poly {
            spec: spec.clone(),
            coeffs,
        }
    }

    pub fn from_ints(spec: &RingSpec, coeffs: &[i64]) -> Self {
        Self::from_elems(spec, coeffs.iter().map(|&c| spec.from_i64(c)).collect())
    }

    pub fn zero(spec: &RingSpec) -> Self {
        Poly {
            spec: spec.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(spec: &RingSpec) -> Self {
        Self::constant(spec, spec.one())
    }

    pub fn constant(spec: &RingSpec, c: Elem) -> Self {
        Self::from_elems(spec, vec![c])
    }

    /// `c * X^d`.
    pub fn monomial(spec: &RingSpec, c: Elem, d: usize) -> Self {
        let mut coeffs = vec![spec.zero(); d];
        coeffs.push(c);
        Self::from_elems(spec, coeffs)
    }

    /// `X^d`.
    pub fn x_pow(spec: &RingSpec, d: usize) -> Self {
        Self::monomial(spec, spec.one(), d)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `X^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.spec.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.spec.is_one(c))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.spec.is_one(&self.coeffs[0])
    }

    pub(crate) fn add_unchecked(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.spec.add(&self.coeff(i), &other.coeff(i))).collect();
        Self::from_elems(&self.spec, coeffs)
    }

    pub(crate) fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|c| self.spec.neg(c)).collect();
        Self::from_elems(&self.spec, coeffs)
    }

    pub(crate) fn sub_unchecked(&self, other: &Poly) -> Poly {
        self.add_unchecked(&other.neg())
    }

    pub(crate) fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.spec);
        }
        let spec = &self.spec;
        let mut coeffs = vec![spec.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if spec.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = spec.add(&coeffs[i + j], &spec.mul(a, b));
            }
        }
        Self::from_elems(spec, coeffs)
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.spec.same_as(&other.spec)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.spec.same_as(&other.spec)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.spec.same_as(&other.spec)?;
        Ok(self.mul_unchecked(other))
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Elem) -> Poly {
        let coeffs = self.coeffs.iter().map(|x| self.spec.mul(x, c)).collect();
        Self::from_elems(&self.spec, coeffs)
    }

    pub(crate) fn eval_elem(&self, x: &Elem) -> Elem {
        let spec = &self.spec;
        self.coeffs
            .iter()
            .rev()
            .fold(spec.zero(), |acc, c| spec.add(&spec.mul(&acc, x), c))
    }

    /// Substitution `X -> x`.
    pub fn eval(&self, x: &RingElem) -> Result<RingElem> {
        self.spec.same_as(x.spec())?;
        Ok(RingElem::wrap(&self.spec, self.eval_elem(x.elem())))
    }

    /// Division by a monic polynomial: `self = q * g + r` with `deg r < deg g`.
    pub fn divmod_monic(&self, g: &Poly) -> Result<(Poly, Poly)> {
        self.spec.same_as(&g.spec)?;
        if !g.is_monic() {
            return Err(Error::NotMonic(g.to_string()));
        }
        Ok(self.divmod_monic_unchecked(g))
    }

    pub(crate) fn divmod_monic_unchecked(&self, g: &Poly) -> (Poly, Poly) {
        debug_assert!(g.is_monic());
        let spec = &self.spec;
        let dg = g.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return (Self::zero(spec), self.clone());
        }
        let mut quot = vec![spec.zero(); rem.len() - dg];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dg].clone();
            if spec.is_zero(&c) {
                continue;
            }
            for (j, gj) in g.coeffs.iter().enumerate() {
                rem[i + j] = spec.sub(&rem[i + j], &spec.mul(&c, gj));
            }
            quot[i] = c;
        }
        rem.truncate(dg);
        (Self::from_elems(spec, quot), Self::from_elems(spec, rem))
    }

    pub(crate) fn rem_monic(&self, g: &Poly) -> Poly {
        self.divmod_monic_unchecked(g).1
    }

    /// Coefficientwise image in the residue field.
    pub fn reduce_mod_p(&self) -> Result<ResiduePoly> {
        let p = self
            .spec
            .residue_prime()
            .ok_or_else(|| Error::UnsupportedFamily(self.spec.to_string()))?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| self.spec.residue(c).expect("local ring has a residue map"))
            .collect();
        Ok(ResiduePoly::new(p, coeffs))
    }

    /// Canonical coefficientwise lift of a residue polynomial.
    pub fn lift(r: &ResiduePoly, spec: &RingSpec) -> Result<Poly> {
        match spec.residue_prime() {
            Some(p) if p == r.p() => Ok(Self::from_elems(
                spec,
                r.coeffs().iter().map(|&c| spec.lift_residue(c)).collect(),
            )),
            Some(p) => Err(Error::SpecMismatch {
                left: format!("F{}", r.p()),
                right: format!("F{p}"),
            }),
            None => Err(Error::UnsupportedFamily(spec.to_string())),
        }
    }

    /// Returns the monic `g` with `g(Y) = a^-n f(aY)`, where `n = deg f`.
    pub fn scale_substitute(&self, a: &RingElem) -> Result<Poly> {
        self.spec.same_as(a.spec())?;
        if !self.is_monic() {
            return Err(Error::NotMonic(self.to_string()));
        }
        let a_inv = self
            .spec
            .inverse(a.elem())
            .ok_or_else(|| Error::NotAUnit(a.to_string()))?;
        Ok(self.scale_substitute_unchecked(&a_inv))
    }

    /// Coefficient `i` becomes `c_i * a_inv^(n - i)`.
    pub(crate) fn scale_substitute_unchecked(&self, a_inv: &Elem) -> Poly {
        let spec = &self.spec;
        let n = self.coeffs.len() - 1;
        let mut factor = spec.one();
        let mut coeffs = vec![spec.zero(); n + 1];
        for i in (0..=n).rev() {
            coeffs[i] = spec.mul(&self.coeffs[i], &factor);
            factor = spec.mul(&factor, a_inv);
        }
        Self::from_elems(spec, coeffs)
    }

    /// Parses the text form, e.g. `X^2+3*X+2` or `(1+t)*X+t`.
    pub fn parse(spec: &RingSpec, s: &str) -> Result<Poly> {
        text::parse_poly(spec, s)
    }

    /// JSON form: coefficient strings, constant term first.
    pub fn to_json_coeffs(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| self.spec.format_elem(c)).collect()
    }

    pub fn from_json_coeffs(spec: &RingSpec, coeffs: &[String]) -> Result<Poly> {
        let elems = coeffs.iter().map(|c| spec.parse_elem(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_elems(spec, elems))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_poly(self))
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomials over different rings")
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomials over different rings")
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomials over different rings")
    }
}

#[cfg(test)]
mod tests;
