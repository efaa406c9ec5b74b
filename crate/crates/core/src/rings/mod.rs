//! Exact arithmetic over the supported coefficient rings.
//!
//! Four families are supported:
//!
//! * `Z/p^k`, stored as least nonnegative residues;
//! * `F_p[t]/(t^k)`, stored as length-`k` coefficient vectors over `[0, p)`;
//! * finite products of the two local families above (the CRT form of `Z/m`);
//! * the localization `Z_(p)`, stored as reduced rational numbers whose
//!   denominator is prime to `p`.
//!
//! The two local families have maximal ideal `P = (p)` resp. `(t)` with
//! `P^k = 0`, which is what makes Hensel lifting a finite exact computation
//! over them.

mod crt;
mod elem;
mod text;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use crt::{crt_combine, crt_split};
pub use elem::{enumerate, ResidueElem, RingElem};

/// Largest admissible order `p^k` of a local component.
pub const MAX_LOCAL_ORDER: u64 = 1 << 31;
/// Largest admissible number of components of a product ring.
pub const MAX_COMPONENTS: usize = 8;

/// The family a [`RingSpec`] belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    PrimePower { p: u64, k: u32, modulus: u64 },
    Truncated { p: u64, k: u32 },
    Product(Arc<[RingSpec]>),
    Localized { p: u64 },
}

/// A validated description of a coefficient ring.
///
/// Cheap to clone: product components live behind an `Arc`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec(Family);

/// Canonical payload of a ring element.
///
/// A payload carries no reference to its ring; arithmetic goes through the
/// owning [`RingSpec`]. Use [`RingElem`] for a self-describing element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Int(u64),
    Trunc(Vec<u64>),
    Tuple(Vec<Elem>),
    Frac(BigRational),
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime-power factorization by trial division, sorted by prime.
pub(crate) fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

fn checked_order(p: u64, k: u32) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidSpec("precision k must be at least 1".into()));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    match p.checked_pow(k) {
        Some(q) if q <= MAX_LOCAL_ORDER => Ok(q),
        _ => Err(Error::InvalidSpec(format!("{p}^{k} exceeds 2^31"))),
    }
}

impl RingSpec {
    /// `Z/p^k`.
    pub fn prime_power(p: u64, k: u32) -> Result<Self> {
        let modulus = checked_order(p, k)?;
        Ok(RingSpec(Family::PrimePower { p, k, modulus }))
    }

    /// `F_p[t]/(t^k)`.
    pub fn truncated(p: u64, k: u32) -> Result<Self> {
        checked_order(p, k)?;
        Ok(RingSpec(Family::Truncated { p, k }))
    }

    /// `Z_(p)`, the integers localized at `p`.
    pub fn localized(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(RingSpec(Family::Localized { p }))
    }

    /// Finite product of local rings.
    pub fn product(components: Vec<RingSpec>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::InvalidSpec("a product needs at least two components".into()));
        }
        if components.len() > MAX_COMPONENTS {
            return Err(Error::InvalidSpec(format!(
                "a product has at most {MAX_COMPONENTS} components"
            )));
        }
        let mut order: u64 = 1;
        for c in &components {
            if !c.is_local_nilpotent() {
                return Err(Error::InvalidSpec(format!(
                    "product component {c} is not a finite local ring"
                )));
            }
            order = order
                .checked_mul(c.size().expect("local components are finite"))
                .ok_or_else(|| Error::InvalidSpec("product order exceeds 2^64".into()))?;
        }
        Ok(RingSpec(Family::Product(components.into())))
    }

    /// `Z/n`: a prime-power ring when `n = p^k`, otherwise the product of the
    /// prime-power parts of `n`, sorted by prime.
    pub fn integers_mod(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSpec(format!("modulus {n} must be at least 2")));
        }
        let parts = factor_u64(n);
        if parts.len() == 1 {
            let (p, k) = parts[0];
            return Self::prime_power(p, k);
        }
        let comps = parts
            .into_iter()
            .map(|(p, k)| Self::prime_power(p, k))
            .collect::<Result<Vec<_>>>()?;
        Self::product(comps)
    }

    pub fn family(&self) -> &Family {
        &self.0
    }

    /// True for the two local families with nilpotent maximal ideal.
    pub fn is_local_nilpotent(&self) -> bool {
        matches!(self.0, Family::PrimePower { .. } | Family::Truncated { .. })
    }

    pub fn is_local(&self) -> bool {
        !matches!(self.0, Family::Product(_))
    }

    pub fn is_product(&self) -> bool {
        matches!(self.0, Family::Product(_))
    }

    /// True for products whose components are all of the form `Z/p^k`.
    pub fn is_integer_product(&self) -> bool {
        match &self.0 {
            Family::Product(cs) => cs.iter().all(|c| matches!(c.0, Family::PrimePower { .. })),
            _ => false,
        }
    }

    pub fn components(&self) -> &[RingSpec] {
        match &self.0 {
            Family::Product(cs) => cs,
            _ => std::slice::from_ref(self),
        }
    }

    /// Characteristic of the residue field, for local families.
    pub fn residue_prime(&self) -> Option<u64> {
        match self.0 {
            Family::PrimePower { p, .. } | Family::Truncated { p, .. } | Family::Localized { p } => Some(p),
            Family::Product(_) => None,
        }
    }

    /// Nilpotency index `k` of the maximal ideal (`P^k = 0`).
    pub fn nilpotency_index(&self) -> Option<u32> {
        match self.0 {
            Family::PrimePower { k, .. } | Family::Truncated { k, .. } => Some(k),
            Family::Product(ref cs) => cs.iter().filter_map(|c| c.nilpotency_index()).max(),
            Family::Localized { .. } => None,
        }
    }

    /// Number of elements, `None` for `Z_(p)`.
    pub fn size(&self) -> Option<u64> {
        match &self.0 {
            Family::PrimePower { modulus, .. } => Some(*modulus),
            Family::Truncated { p, k } => Some(p.pow(*k)),
            Family::Product(cs) => cs.iter().map(|c| c.size()).product(),
            Family::Localized { .. } => None,
        }
    }

    pub(crate) fn require_finite(&self) -> Result<u64> {
        self.size().ok_or_else(|| Error::InfiniteRing(self.to_string()))
    }

    pub fn zero(&self) -> Elem {
        self.from_i64(0)
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    /// Image of an integer under the structure map `Z -> R`.
    pub fn from_i64(&self, v: i64) -> Elem {
        match &self.0 {
            Family::PrimePower { modulus, .. } => Elem::Int((v as i128).rem_euclid(*modulus as i128) as u64),
            Family::Truncated { p, k } => {
                let mut c = vec![0; *k as usize];
                c[0] = (v as i128).rem_euclid(*p as i128) as u64;
                Elem::Trunc(c)
            }
            Family::Product(cs) => Elem::Tuple(cs.iter().map(|c| c.from_i64(v)).collect()),
            Family::Localized { .. } => Elem::Frac(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// Checks that `e` is a canonical payload of this ring.
    pub fn contains(&self, e: &Elem) -> bool {
        match (&self.0, e) {
            (Family::PrimePower { modulus, .. }, Elem::Int(v)) => v < modulus,
            (Family::Truncated { p, k }, Elem::Trunc(c)) => c.len() == *k as usize && c.iter().all(|x| x < p),
            (Family::Product(cs), Elem::Tuple(xs)) => {
                cs.len() == xs.len() && cs.iter().zip(xs).all(|(c, x)| c.contains(x))
            }
            (Family::Localized { p }, Elem::Frac(q)) => {
                q.denom().is_positive() && !(q.denom() % BigInt::from(*p)).is_zero()
            }
            _ => false,
        }
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        match (&self.0, x, y) {
            (Family::PrimePower { modulus, .. }, Elem::Int(a), Elem::Int(b)) => Elem::Int((a + b) % modulus),
            (Family::Truncated { p, .. }, Elem::Trunc(a), Elem::Trunc(b)) => {
                Elem::Trunc(a.iter().zip(b).map(|(s, t)| (s + t) % p).collect())
            }
            (Family::Product(cs), Elem::Tuple(a), Elem::Tuple(b)) => {
                Elem::Tuple(cs.iter().zip(a.iter().zip(b)).map(|(c, (s, t))| c.add(s, t)).collect())
            }
            (Family::Localized { .. }, Elem::Frac(a), Elem::Frac(b)) => Elem::Frac(a + b),
            _ => panic!("payload does not belong to {self}"),
        }
    }

    pub fn neg(&self, x: &Elem) -> Elem {
        match (&self.0, x) {
            (Family::PrimePower { modulus, .. }, Elem::Int(a)) => Elem::Int((modulus - a) % modulus),
            (Family::Truncated { p, .. }, Elem::Trunc(a)) => Elem::Trunc(a.iter().map(|s| (p - s) % p).collect()),
            (Family::Product(cs), Elem::Tuple(a)) => Elem::Tuple(cs.iter().zip(a).map(|(c, s)| c.neg(s)).collect()),
            (Family::Localized { .. }, Elem::Frac(a)) => Elem::Frac(-a),
            _ => panic!("payload does not belong to {self}"),
        }
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        match (&self.0, x, y) {
            (Family::PrimePower { modulus, .. }, Elem::Int(a), Elem::Int(b)) => Elem::Int(a * b % modulus),
            (Family::Truncated { p, k }, Elem::Trunc(a), Elem::Trunc(b)) => {
                let k = *k as usize;
                let mut c = vec![0u64; k];
                for (i, ai) in a.iter().enumerate().filter(|(_, v)| **v != 0) {
                    for (j, bj) in b[..k - i].iter().enumerate() {
                        c[i + j] = (c[i + j] + ai * bj % p) % p;
                    }
                }
                Elem::Trunc(c)
            }
            (Family::Product(cs), Elem::Tuple(a), Elem::Tuple(b)) => {
                Elem::Tuple(cs.iter().zip(a.iter().zip(b)).map(|(c, (s, t))| c.mul(s, t)).collect())
            }
            (Family::Localized { .. }, Elem::Frac(a), Elem::Frac(b)) => Elem::Frac(a * b),
            _ => panic!("payload does not belong to {self}"),
        }
    }

    pub fn pow(&self, x: &Elem, mut e: u64) -> Elem {
        let mut base = x.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        *x == self.zero()
    }

    pub fn is_one(&self, x: &Elem) -> bool {
        *x == self.one()
    }

    /// Units are exactly the elements outside the maximal ideal for the local
    /// families, and the componentwise units for products.
    pub fn is_unit(&self, x: &Elem) -> bool {
        match (&self.0, x) {
            (Family::Product(cs), Elem::Tuple(xs)) => cs.iter().zip(xs).all(|(c, v)| c.is_unit(v)),
            _ => self.residue(x).is_some_and(|r| r != 0),
        }
    }

    /// Multiplicative inverse, `None` for non-units.
    pub fn inverse(&self, x: &Elem) -> Option<Elem> {
        match (&self.0, x) {
            (Family::PrimePower { modulus, .. }, Elem::Int(a)) => inv_mod(*a, *modulus).map(Elem::Int),
            (Family::Truncated { p, k }, Elem::Trunc(a)) => {
                // x = c0 (1 - n) with n nilpotent; (1 - n)^-1 = sum of n^i, i < k.
                let c0_inv = inv_mod(a[0], *p)?;
                let c0_inv = self.from_i64(c0_inv as i64);
                let one = self.one();
                let n = self.sub(&one, &self.mul(&c0_inv, x));
                let mut sum = one.clone();
                let mut term = one;
                for _ in 1..*k {
                    term = self.mul(&term, &n);
                    sum = self.add(&sum, &term);
                }
                Some(self.mul(&sum, &c0_inv))
            }
            (Family::Product(cs), Elem::Tuple(xs)) => cs
                .iter()
                .zip(xs)
                .map(|(c, v)| c.inverse(v))
                .collect::<Option<Vec<_>>>()
                .map(Elem::Tuple),
            (Family::Localized { .. }, Elem::Frac(q)) => self.is_unit(x).then(|| Elem::Frac(q.recip())),
            _ => panic!("payload does not belong to {self}"),
        }
    }

    /// Image in the residue field `F_p`; `None` on product rings.
    pub fn residue(&self, x: &Elem) -> Option<u64> {
        match (&self.0, x) {
            (Family::PrimePower { p, .. }, Elem::Int(a)) => Some(a % p),
            (Family::Truncated { .. }, Elem::Trunc(a)) => Some(a[0]),
            (Family::Localized { p }, Elem::Frac(q)) => {
                let pb = BigInt::from(*p);
                let num = q.numer().mod_floor(&pb).to_u64()?;
                let den = q.denom().mod_floor(&pb).to_u64()?;
                Some(num * inv_mod(den, *p)? % p)
            }
            (Family::Product(_), _) => None,
            _ => panic!("payload does not belong to {self}"),
        }
    }

    /// Canonical lift of a residue-field element, `value` in `[0, p)`.
    pub fn lift_residue(&self, value: u64) -> Elem {
        match self.residue_prime() {
            Some(p) => self.from_i64((value % p) as i64),
            None => panic!("lift_residue on product ring {self}"),
        }
    }

    /// True when `x` lies in the maximal ideal of a local ring.
    pub fn in_maximal_ideal(&self, x: &Elem) -> bool {
        self.residue(x) == Some(0)
    }

    /// The `index`-th element in the canonical enumeration order.
    ///
    /// `Z/p^k` in increasing order, truncated polynomials with `c0` as the
    /// least significant digit, integer products in increasing integer order
    /// and other products in mixed radix with the last component least
    /// significant.
    pub fn element_at(&self, index: u64) -> Elem {
        match &self.0 {
            Family::PrimePower { modulus, .. } => Elem::Int(index % modulus),
            Family::Truncated { p, k } => {
                let mut rest = index;
                let mut c = Vec::with_capacity(*k as usize);
                for _ in 0..*k {
                    c.push(rest % p);
                    rest /= p;
                }
                Elem::Trunc(c)
            }
            Family::Product(cs) if self.is_integer_product() => {
                Elem::Tuple(cs.iter().map(|c| Elem::Int(index % c.size().unwrap())).collect())
            }
            Family::Product(cs) => {
                let mut rest = index;
                let mut parts: Vec<Elem> = cs
                    .iter()
                    .rev()
                    .map(|c| {
                        let s = c.size().unwrap();
                        let e = c.element_at(rest % s);
                        rest /= s;
                        e
                    })
                    .collect();
                parts.reverse();
                Elem::Tuple(parts)
            }
            Family::Localized { .. } => panic!("element_at on infinite ring {self}"),
        }
    }

    pub(crate) fn same_as(&self, other: &RingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpecMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    pub(crate) fn require_local_nilpotent(&self) -> Result<()> {
        if self.is_local_nilpotent() {
            Ok(())
        } else {
            Err(Error::UnsupportedFamily(self.to_string()))
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Family::PrimePower { modulus, .. } => write!(f, "Z/{modulus}"),
            Family::Truncated { p, k } => write!(f, "F{p}[t]/t^{k}"),
            Family::Localized { p } => write!(f, "Zloc({p})"),
            Family::Product(_) if self.is_integer_product() => {
                write!(f, "Z/{}", self.size().unwrap())
            }
            Family::Product(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

impl std::str::FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        text::parse_ring_spec(s)
    }
}

impl RingSpec {
    /// Renders `x` in the ring's element syntax.
    pub fn format_elem(&self, x: &Elem) -> String {
        text::format_elem(self, x)
    }

    /// Parses an element written in the ring's element syntax.
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        text::parse_elem(self, s)
    }
}

impl Elem {
    /// Numerator and denominator for `Z_(p)` payloads.
    pub fn as_fraction(&self) -> Option<(&BigInt, &BigInt)> {
        match self {
            Elem::Frac(q) => Some((q.numer(), q.denom())),
            _ => None,
        }
    }
}
