//! Strongly clean decompositions, the idempotent block split, polynomial
//! factorization through companion matrices, and strongly pi-regular
//! witnesses.

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hensel::{split_at_zero, ZeroSplit};
use crate::matrix::Mat;
use crate::poly::Poly;
use crate::rings::{Family, RingElem};

/// Which branch produced the decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CleanCase {
    /// `A` itself is a unit: `E = 0`.
    Unit,
    /// `A - I` is a unit and `A` is not: `E = I`.
    UnipotentShift,
    /// `E = v(A) h(A)` from a proper split of the characteristic polynomial.
    Split,
    /// Decomposed one CRT component at a time.
    Componentwise,
}

impl CleanCase {
    pub fn as_str(self) -> &'static str {
        match self {
            CleanCase::Unit => "unit",
            CleanCase::UnipotentShift => "unipotent-shift",
            CleanCase::Split => "split",
            CleanCase::Componentwise => "componentwise",
        }
    }
}

impl fmt::Display for CleanCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `A = E + U` with `E` idempotent, `U` a unit and `EU = UE`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CleanDecomposition {
    pub e: Mat,
    pub u: Mat,
    pub case: CleanCase,
    /// The split `(g, h, u, v)` behind `E = v(A) h(A)`; present for [`CleanCase::Split`].
    pub certificate: Option<ZeroSplit>,
    /// Per-component decompositions for [`CleanCase::Componentwise`].
    pub components: Vec<CleanDecomposition>,
}

impl CleanDecomposition {
    pub fn to_json(&self) -> Value {
        let certificate = match &self.certificate {
            Some(c) => json!({
                "g": c.g.to_string(),
                "h": c.h.to_string(),
                "u": c.u.to_string(),
                "v": c.v.to_string(),
                "m": c.m,
            }),
            None => Value::Null,
        };
        let mut out = json!({
            "E": self.e.to_json(),
            "U": self.u.to_json(),
            "case": self.case.as_str(),
            "certificate": certificate,
        });
        if !self.components.is_empty() {
            let parts: Vec<Value> = self
                .components
                .iter()
                .map(|c| {
                    let mut v = c.to_json();
                    v["ring"] = json!(c.e.spec().to_string());
                    v
                })
                .collect();
            out["components"] = Value::Array(parts);
        }
        out
    }
}

/// Why a triple `(A, E, U)` is not a strongly clean decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyFailure {
    Incompatible(String),
    SumMismatch,
    NotIdempotent,
    NotCommuting,
    NotUnit,
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyFailure::Incompatible(why) => write!(f, "incompatible matrices: {why}"),
            VerifyFailure::SumMismatch => f.write_str("A ≠ E+U"),
            VerifyFailure::NotIdempotent => f.write_str("E² ≠ E"),
            VerifyFailure::NotCommuting => f.write_str("EU ≠ UE"),
            VerifyFailure::NotUnit => f.write_str("U not a unit"),
        }
    }
}

pub fn charpoly(a: &Mat) -> Poly {
    a.charpoly()
}

pub fn det(a: &Mat) -> RingElem {
    a.det()
}

pub fn mat_invert(a: &Mat) -> Result<Mat> {
    a.inverse()
}

pub fn poly_eval_matrix(f: &Poly, a: &Mat) -> Result<Mat> {
    a.poly_eval(f)
}

/// Checks `A = E + U`, `E^2 = E`, `EU = UE` and `det U` a unit, in that order.
pub fn verify_decomposition(a: &Mat, e: &Mat, u: &Mat) -> std::result::Result<(), VerifyFailure> {
    for m in [e, u] {
        if let Err(err) = a.checked_add(m) {
            return Err(VerifyFailure::Incompatible(err.to_string()));
        }
    }
    if &(e + u) != a {
        return Err(VerifyFailure::SumMismatch);
    }
    if &(e * e) != e {
        return Err(VerifyFailure::NotIdempotent);
    }
    if e * u != u * e {
        return Err(VerifyFailure::NotCommuting);
    }
    if !u.is_invertible() {
        return Err(VerifyFailure::NotUnit);
    }
    Ok(())
}

/// Writes `A = E + U` with `E` a polynomial in `A`.
///
/// Over a local ring with nilpotent maximal ideal, split the characteristic
/// polynomial as `f = g h` with `g` residually `X^m` and take `E = v(A) h(A)`
/// from `u g + v h = 1`. Products are handled one component at a time.
pub fn strongly_clean_decompose(a: &Mat) -> Result<CleanDecomposition> {
    let spec = a.spec();
    match spec.family() {
        // not Henselian: see oracle::nonclean_witness_quadratic
        Family::Localized { .. } => Err(Error::UnsupportedRing(spec.to_string())),
        Family::Product(comps) => {
            let parts = (0..comps.len())
                .map(|i| strongly_clean_decompose(&a.component(i)))
                .collect::<Result<Vec<_>>>()?;
            let es: Vec<Mat> = parts.iter().map(|d| d.e.clone()).collect();
            let us: Vec<Mat> = parts.iter().map(|d| d.u.clone()).collect();
            let dec = CleanDecomposition {
                e: Mat::from_components(spec, &es)?,
                u: Mat::from_components(spec, &us)?,
                case: CleanCase::Componentwise,
                certificate: None,
                components: parts,
            };
            checked(a, dec)
        }
        Family::PrimePower { .. } | Family::Truncated { .. } => decompose_local(a),
    }
}

fn decompose_local(a: &Mat) -> Result<CleanDecomposition> {
    let spec = a.spec();
    let n = a.n();
    let split = split_at_zero(&a.charpoly())?;
    let (e, case, certificate) = if split.m == 0 {
        (Mat::zero(spec, n), CleanCase::Unit, None)
    } else if split.m == n {
        (Mat::identity(spec, n), CleanCase::UnipotentShift, None)
    } else {
        let e = a
            .poly_eval_unchecked(&split.v)
            .mul_unchecked(&a.poly_eval_unchecked(&split.h));
        (e, CleanCase::Split, Some(split))
    };
    let u = a - &e;
    checked(
        a,
        CleanDecomposition {
            e,
            u,
            case,
            certificate,
            components: Vec::new(),
        },
    )
}

fn checked(a: &Mat, dec: CleanDecomposition) -> Result<CleanDecomposition> {
    match verify_decomposition(a, &dec.e, &dec.u) {
        Ok(()) => Ok(dec),
        Err(why) => Err(Error::InternalCheckFailed(format!("decomposition of {a}: {why}"))),
    }
}

/// Incremental row echelon form over `F_p`, for independence tests.
struct Echelon {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    fn new(p: u64) -> Self {
        Echelon { p, rows: Vec::new() }
    }

    /// Adds `v` if it is independent of the rows so far.
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.p as u128;
        for (pivot, row) in &self.rows {
            let c = v[*pivot] as u128;
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = ((*x as u128 + (p - c) * *r as u128) % p) as u64;
                }
            }
        }
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = crate::rings::inv_mod(v[pivot], self.p).expect("nonzero residue is invertible");
        for x in v.iter_mut() {
            *x = ((*x as u128 * inv as u128) % p) as u64;
        }
        self.rows.push((pivot, v));
        true
    }
}

/// For an idempotent `E` over a local ring, returns `(Q, p)` with
/// `Q E Q^-1 = diag(I_p, 0)`.
///
/// The columns of `Q^-1` are the leftmost columns of `E`, then of `I - E`,
/// whose residues are linearly independent.
pub fn idempotent_split_basis(e: &Mat) -> Result<(Mat, usize)> {
    let spec = e.spec();
    let prime = spec
        .residue_prime()
        .ok_or_else(|| Error::UnsupportedFamily(spec.to_string()))?;
    if &(e * e) != e {
        return Err(Error::NotIdempotent);
    }
    let n = e.n();
    let complement = &Mat::identity(spec, n) - e;
    let mut echelon = Echelon::new(prime);
    let mut chosen = Vec::with_capacity(n);
    let mut rank = 0;
    for (source, is_image) in [(e, true), (&complement, false)] {
        for j in 0..n {
            let col: Vec<_> = (0..n).map(|i| source.get(i, j).clone()).collect();
            let residues = col.iter().map(|x| spec.residue(x).unwrap()).collect();
            if echelon.insert(residues) {
                chosen.push(col);
                rank += usize::from(is_image);
            }
        }
    }
    if chosen.len() != n {
        return Err(Error::InternalCheckFailed(format!(
            "columns of E and I-E span rank {} < {n}",
            chosen.len()
        )));
    }
    let entries = (0..n).flat_map(|i| chosen.iter().map(move |c| c[i].clone())).collect();
    let basis = Mat::from_entries(spec, n, entries);
    Ok((basis.inverse()?, rank))
}

fn block(a: &Mat, start: usize, size: usize) -> Mat {
    let entries = (start..start + size)
        .flat_map(|i| (start..start + size).map(move |j| a.get(i, j).clone()))
        .collect();
    Mat::from_entries(a.spec(), size, entries)
}

/// Factors a monic `f` with `f(0)` and `f(a)` in the maximal ideal, `a` a
/// unit, as `f = g h`.
///
/// After rescaling so that `a = 1`, the companion matrix `C` has both `C` and
/// `C - I` singular. Its clean idempotent splits the module into two
/// `C`-stable free summands; `g` and `h` are the characteristic polynomials
/// of the two diagonal blocks, `g` being the one with residue a power of `X`.
pub fn poly_reduce_via_matrix(f: &Poly, a: &RingElem) -> Result<(Poly, Poly)> {
    let spec = f.spec();
    spec.same_as(a.spec())?;
    if let Family::Localized { .. } = spec.family() {
        return Err(Error::UnsupportedRing(spec.to_string()));
    }
    spec.require_local_nilpotent()?;
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    let n = f.degree().unwrap();
    if n < 2 {
        return Err(Error::PreconditionViolated(format!("{f} has degree < 2")));
    }
    let a_inv = spec
        .inverse(a.elem())
        .ok_or_else(|| Error::PreconditionViolated(format!("{a} is not a unit")))?;
    for (at, value) in [("0", f.coeff(0)), ("a", f.eval_elem(a.elem()))] {
        if spec.is_unit(&value) {
            return Err(Error::PreconditionViolated(format!(
                "f({at}) = {} is a unit",
                spec.format_elem(&value)
            )));
        }
    }
    let scaled = if spec.is_one(a.elem()) {
        f.clone()
    } else {
        f.scale_substitute_unchecked(&a_inv)
    };
    let c = Mat::companion(&scaled)?;
    let dec = strongly_clean_decompose(&c)?;
    let (q, p) = idempotent_split_basis(&dec.e)?;
    if p == 0 || p == n {
        return Err(Error::InternalCheckFailed(format!("trivial idempotent for {f}")));
    }
    let b = &(&q * &c) * &q.inverse()?;
    let off_diagonal_zero = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| (i < p) != (j < p))
        .all(|(i, j)| spec.is_zero(b.get(i, j)));
    if !off_diagonal_zero {
        return Err(Error::InternalCheckFailed(format!(
            "conjugated companion of {f} is not block diagonal"
        )));
    }
    let mut g = block(&b, 0, p).charpoly();
    let mut h = block(&b, p, n - p).charpoly();
    if !spec.is_one(a.elem()) {
        g = g.scale_substitute_unchecked(a.elem());
        h = h.scale_substitute_unchecked(a.elem());
    }
    if g.mul_unchecked(&h) != *f {
        return Err(Error::InternalCheckFailed(format!("({g})*({h}) != {f}")));
    }
    Ok((g, h))
}

/// `A^q = A^(q+1) s` with `s` a power of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiRegularWitness {
    pub q: u64,
    pub s: Mat,
    /// Smallest `j` with `A^i = A^(i+j)`.
    pub period: u64,
    /// Smallest such `i`.
    pub index: u64,
}

impl PiRegularWitness {
    /// Re-checks `A^q = A^(q+1) s` and that `A^q s^q` is idempotent.
    pub fn verify(&self, a: &Mat) -> bool {
        let aq = a.pow(self.q);
        if aq != aq.mul_unchecked(a).mul_unchecked(&self.s) {
            return false;
        }
        let e = aq.mul_unchecked(&self.s.pow(self.q));
        e.mul_unchecked(&e) == e
    }

    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "s": self.s.to_json(),
            "period": self.period,
            "index": self.index,
        })
    }
}

/// Powers stored before giving up on finding the cycle.
const MAX_POWERS: u64 = 1 << 20;

/// Finds the first repeat `A^i = A^(i+j)` in the power sequence and returns
/// `q = max(i, 1)`, `s = A^(j-1)`.
pub fn pi_regular_witness(a: &Mat) -> Result<PiRegularWitness> {
    let spec = a.spec();
    spec.require_finite()?;
    let mut seen: HashMap<Mat, u64> = HashMap::new();
    let mut powers = Vec::new();
    let mut cur = Mat::identity(spec, a.n());
    let (index, period) = loop {
        let k = powers.len() as u64;
        if let Some(&i) = seen.get(&cur) {
            break (i, k - i);
        }
        if k >= MAX_POWERS {
            return Err(Error::BoundExceeded {
                needed: k as u128 + 1,
                bound: MAX_POWERS,
            });
        }
        seen.insert(cur.clone(), k);
        let next = cur.mul_unchecked(a);
        powers.push(cur);
        cur = next;
    };
    let q = index.max(1);
    let s = powers[(period - 1) as usize].clone();
    let witness = PiRegularWitness { q, s, period, index };
    if !witness.verify(a) {
        return Err(Error::InternalCheckFailed(format!("pi-regular witness for {a}")));
    }
    Ok(witness)
}
