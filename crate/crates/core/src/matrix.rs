//! Square matrices over a [`RingSpec`] with division-free determinant and
//! characteristic polynomial.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rings::{Elem, RingElem, RingSpec};

/// An `n x n` matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    spec: RingSpec,
    n: usize,
    entries: Vec<Elem>,
}

impl Mat {
    pub fn new(spec: &RingSpec, n: usize, entries: Vec<Elem>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| !spec.contains(e)) {
            return Err(Error::InvalidElement(format!("{bad:?} is not canonical in {spec}")));
        }
        Ok(Mat {
            spec: spec.clone(),
            n,
            entries,
        })
    }

    pub(crate) fn from_entries(spec: &RingSpec, n: usize, entries: Vec<Elem>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        Mat {
            spec: spec.clone(),
            n,
            entries,
        }
    }

    pub fn from_ints(spec: &RingSpec, rows: &[&[i64]]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix rows must form a square".into()));
        }
        let entries = rows.iter().flat_map(|r| r.iter().map(|&v| spec.from_i64(v))).collect();
        Self::new(spec, n, entries)
    }

    pub fn zero(spec: &RingSpec, n: usize) -> Self {
        Self::from_entries(spec, n, vec![spec.zero(); n * n])
    }

    pub fn identity(spec: &RingSpec, n: usize) -> Self {
        Self::scalar(spec, n, &spec.one())
    }

    pub fn scalar(spec: &RingSpec, n: usize, c: &Elem) -> Self {
        let mut m = Self::zero(spec, n);
        for i in 0..n {
            m.entries[i * n + i] = c.clone();
        }
        m
    }

    /// Companion matrix of a monic `f`: ones on the subdiagonal and
    /// `-c_0, ..., -c_{n-1}` down the last column.
    pub fn companion(f: &Poly) -> Result<Self> {
        if !f.is_monic() || f.degree() == Some(0) {
            return Err(Error::NotMonic(f.to_string()));
        }
        let spec = f.spec();
        let n = f.degree().unwrap();
        let mut m = Self::zero(spec, n);
        for i in 0..n {
            if i + 1 < n {
                m.entries[(i + 1) * n + i] = spec.one();
            }
            m.entries[i * n + n - 1] = spec.neg(&f.coeff(i));
        }
        Ok(m)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.n + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> RingElem {
        RingElem::wrap(&self.spec, self.get(i, j).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.spec.is_zero(e))
    }

    fn compatible(&self, other: &Mat) -> Result<()> {
        self.spec.same_as(&other.spec)?;
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.n, other.n)));
        }
        Ok(())
    }

    pub(crate) fn zip_with(&self, other: &Mat, op: impl Fn(&RingSpec, &Elem, &Elem) -> Elem) -> Mat {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| op(&self.spec, a, b))
            .collect();
        Self::from_entries(&self.spec, self.n, entries)
    }

    pub(crate) fn mul_unchecked(&self, other: &Mat) -> Mat {
        let n = self.n;
        let spec = &self.spec;
        let mut out = vec![spec.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if spec.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let t = spec.mul(a, &other.entries[k * n + j]);
                    out[i * n + j] = spec.add(&out[i * n + j], &t);
                }
            }
        }
        Self::from_entries(spec, n, out)
    }

    pub fn checked_add(&self, other: &Mat) -> Result<Mat> {
        self.compatible(other)?;
        Ok(self.zip_with(other, RingSpec::add))
    }

    pub fn checked_sub(&self, other: &Mat) -> Result<Mat> {
        self.compatible(other)?;
        Ok(self.zip_with(other, RingSpec::sub))
    }

    pub fn checked_mul(&self, other: &Mat) -> Result<Mat> {
        self.compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn neg(&self) -> Mat {
        let entries = self.entries.iter().map(|e| self.spec.neg(e)).collect();
        Self::from_entries(&self.spec, self.n, entries)
    }

    pub fn scale(&self, c: &Elem) -> Mat {
        let entries = self.entries.iter().map(|e| self.spec.mul(e, c)).collect();
        Self::from_entries(&self.spec, self.n, entries)
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        let mut base = self.clone();
        let mut acc = Self::identity(&self.spec, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// `det(X I - A)` by Berkowitz's division-free recurrence.
    ///
    /// Bordering the leading `r x r` block `M` with column `c`, row `w` and
    /// corner `a`, the new characteristic polynomial is `T * p_old` where `T`
    /// is lower-triangular Toeplitz with first column
    /// `1, -a, -w c, -w M c, ..., -w M^(r-1) c`.
    pub fn charpoly(&self) -> Poly {
        let spec = &self.spec;
        // coefficients, highest degree first
        let mut p = vec![spec.one()];
        for r in 0..self.n {
            let mut toeplitz = Vec::with_capacity(r + 2);
            toeplitz.push(spec.one());
            toeplitz.push(spec.neg(self.get(r, r)));
            let mut col: Vec<Elem> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let dot = (0..r).fold(spec.zero(), |acc, j| spec.add(&acc, &spec.mul(self.get(r, j), &col[j])));
                toeplitz.push(spec.neg(&dot));
                col = (0..r)
                    .map(|i| (0..r).fold(spec.zero(), |acc, j| spec.add(&acc, &spec.mul(self.get(i, j), &col[j]))))
                    .collect();
            }
            let next = (0..r + 2)
                .map(|i| (0..=i.min(r)).fold(spec.zero(), |acc, j| spec.add(&acc, &spec.mul(&toeplitz[i - j], &p[j]))))
                .collect();
            p = next;
        }
        p.reverse();
        Poly::from_elems(spec, p)
    }

    pub fn det(&self) -> RingElem {
        let c0 = self.charpoly().coeff(0);
        let d = if self.n.is_multiple_of(2) {
            c0
        } else {
            self.spec.neg(&c0)
        };
        RingElem::wrap(&self.spec, d)
    }

    pub fn is_invertible(&self) -> bool {
        self.det().is_unit()
    }

    /// Exact inverse. Gauss-Jordan with unit pivots over local rings, the
    /// Cayley-Hamilton adjugate over products.
    pub fn inverse(&self) -> Result<Mat> {
        if self.spec.is_local() {
            self.inverse_unit_pivots()
        } else {
            self.inverse_adjugate()
        }
    }

    fn inverse_unit_pivots(&self) -> Result<Mat> {
        let n = self.n;
        let spec = &self.spec;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(spec, n).entries;
        for c in 0..n {
            let pivot = (c..n)
                .find(|&r| spec.is_unit(&a[r * n + c]))
                .ok_or_else(|| Error::NotAUnit(self.det().to_string()))?;
            if pivot != c {
                for j in 0..n {
                    a.swap(pivot * n + j, c * n + j);
                    inv.swap(pivot * n + j, c * n + j);
                }
            }
            let scale = spec.inverse(&a[c * n + c]).unwrap();
            for j in 0..n {
                a[c * n + j] = spec.mul(&a[c * n + j], &scale);
                inv[c * n + j] = spec.mul(&inv[c * n + j], &scale);
            }
            for r in (0..n).filter(|&r| r != c) {
                let factor = a[r * n + c].clone();
                if spec.is_zero(&factor) {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = spec.sub(&a[r * n + j], &spec.mul(&factor, &a[c * n + j]));
                    inv[r * n + j] = spec.sub(&inv[r * n + j], &spec.mul(&factor, &inv[c * n + j]));
                }
            }
        }
        Ok(Self::from_entries(spec, n, inv))
    }

    /// `adj(A) = (-1)^(n+1) (c_1 I + c_2 A + ... + c_n A^(n-1))`.
    fn inverse_adjugate(&self) -> Result<Mat> {
        let spec = &self.spec;
        let f = self.charpoly();
        let det = self.det();
        let det_inv = spec
            .inverse(det.elem())
            .ok_or_else(|| Error::NotAUnit(det.to_string()))?;
        let mut adj = Self::zero(spec, self.n);
        for i in (1..=self.n).rev() {
            adj = adj
                .mul_unchecked(self)
                .zip_with(&Self::scalar(spec, self.n, &f.coeff(i)), RingSpec::add);
        }
        let sign = if self.n % 2 == 1 { spec.one() } else { spec.from_i64(-1) };
        Ok(adj.scale(&spec.mul(&sign, &det_inv)))
    }

    /// Horner evaluation `f(A)`.
    pub fn poly_eval(&self, f: &Poly) -> Result<Mat> {
        self.spec.same_as(f.spec())?;
        Ok(self.poly_eval_unchecked(f))
    }

    pub(crate) fn poly_eval_unchecked(&self, f: &Poly) -> Mat {
        let mut acc = Self::zero(&self.spec, self.n);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul_unchecked(self);
            for i in 0..self.n {
                let d = i * self.n + i;
                acc.entries[d] = self.spec.add(&acc.entries[d], c);
            }
        }
        acc
    }

    /// Entrywise residues, row-major, for local rings.
    pub fn residue(&self) -> Option<Vec<u64>> {
        self.entries.iter().map(|e| self.spec.residue(e)).collect()
    }

    /// The `i`-th CRT component of a matrix over a product ring.
    pub fn component(&self, i: usize) -> Mat {
        let comp = &self.spec.components()[i];
        let entries = self
            .entries
            .iter()
            .map(|e| match e {
                Elem::Tuple(parts) => parts[i].clone(),
                _ => panic!("component of a matrix over a local ring"),
            })
            .collect();
        Self::from_entries(comp, self.n, entries)
    }

    /// Glues component matrices into a matrix over the product `spec`.
    pub fn from_components(spec: &RingSpec, parts: &[Mat]) -> Result<Mat> {
        let comps = spec.components();
        if !spec.is_product() || comps.len() != parts.len() {
            return Err(Error::UnsupportedFamily(spec.to_string()));
        }
        let n = parts[0].n;
        for (c, m) in comps.iter().zip(parts) {
            c.same_as(&m.spec)?;
            if m.n != n {
                return Err(Error::DimensionMismatch("component sizes differ".into()));
            }
        }
        let entries = (0..n * n)
            .map(|k| Elem::Tuple(parts.iter().map(|m| m.entries[k].clone()).collect()))
            .collect();
        Ok(Self::from_entries(spec, n, entries))
    }

    /// Rows of element strings.
    pub fn to_rows(&self) -> Vec<Vec<String>> {
        self.entries
            .chunks(self.n)
            .map(|row| row.iter().map(|e| self.spec.format_elem(e)).collect())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.to_rows())
    }

    /// Parses a JSON array of rows; entries are element strings (bare
    /// integers are accepted too).
    pub fn parse_json(spec: &RingSpec, s: &str) -> Result<Mat> {
        let value: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::parse(e.column().saturating_sub(1), e.to_string()))?;
        let rows = value
            .as_array()
            .ok_or_else(|| Error::parse(0, "matrix must be a JSON array of rows"))?;
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            let row = row
                .as_array()
                .filter(|r| r.len() == n)
                .ok_or_else(|| Error::DimensionMismatch("matrix must be square".into()))?;
            for cell in row {
                let text = match cell {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(v) => v.to_string(),
                    other => return Err(Error::parse(0, format!("bad matrix entry {other}"))),
                };
                entries.push(spec.parse_elem(&text)?);
            }
        }
        Self::new(spec, n, entries)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.to_rows().iter().map(|r| format!("[{}]", r.join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl Add for &Mat {
    type Output = Mat;

    fn add(self, rhs: &Mat) -> Mat {
        self.checked_add(rhs).expect("incompatible matrices")
    }
}

impl Sub for &Mat {
    type Output = Mat;

    fn sub(self, rhs: &Mat) -> Mat {
        self.checked_sub(rhs).expect("incompatible matrices")
    }
}

impl Mul for &Mat {
    type Output = Mat;

    fn mul(self, rhs: &Mat) -> Mat {
        self.checked_mul(rhs).expect("incompatible matrices")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> RingSpec {
        RingSpec::integers_mod(n).unwrap()
    }

    #[test]
    fn charpoly_examples() {
        let z4 = z(4);
        assert_eq!(Mat::identity(&z4, 2).charpoly().to_string(), "X^2+2*X+1");
        assert_eq!(Mat::zero(&z4, 3).charpoly(), Poly::x_pow(&z4, 3));
        let f = Poly::parse(&z4, "X^2+3*X+2").unwrap();
        let c = Mat::companion(&f).unwrap();
        assert_eq!(c, Mat::from_ints(&z4, &[&[0, 2], &[1, 1]]).unwrap());
        assert_eq!(c.charpoly(), f);
    }

    #[test]
    fn companion_has_prescribed_charpoly() {
        let spec = RingSpec::truncated(3, 2).unwrap();
        for s in ["X", "X^3+t*X+2", "X^4+(1+t)*X^3+2*X+t", "X^5+1"] {
            let f = Poly::parse(&spec, s).unwrap();
            assert_eq!(Mat::companion(&f).unwrap().charpoly(), f);
        }
    }

    #[test]
    fn det_examples() {
        assert_eq!(Mat::identity(&z(9), 3).det().to_string(), "1");
        let a = Mat::from_ints(&z(4), &[&[1, 0], &[2, 3]]).unwrap();
        assert_eq!(a.det().to_string(), "3");
    }

    #[test]
    fn inverse_examples() {
        let z4 = z(4);
        let singular = Mat::from_ints(&z4, &[&[0, 2], &[1, 1]]).unwrap();
        assert_eq!(singular.det().to_string(), "2");
        assert!(matches!(singular.inverse(), Err(Error::NotAUnit(_))));

        let a = Mat::from_ints(&z4, &[&[1, 0], &[2, 3]]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Mat::identity(&z4, 2));

        let z12 = z(12);
        let b = Mat::from_ints(&z12, &[&[5, 1, 0], &[0, 7, 2], &[3, 0, 1]]).unwrap();
        assert!(b.is_invertible());
        assert_eq!(&b * &b.inverse().unwrap(), Mat::identity(&z12, 3));

        let q = RingSpec::localized(3).unwrap();
        let c = Mat::from_ints(&q, &[&[3, 1], &[1, 1]]).unwrap();
        let ci = c.inverse().unwrap();
        assert_eq!(&c * &ci, Mat::identity(&q, 2));
        assert_eq!(ci.to_rows()[0], ["1/2", "-1/2"]);
    }

    #[test]
    fn poly_eval_examples() {
        let z9 = z(9);
        let a = Mat::from_ints(&z9, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(a.poly_eval(&Poly::x_pow(&z9, 1)).unwrap(), a);
        assert_eq!(a.poly_eval(&Poly::one(&z9)).unwrap(), Mat::identity(&z9, 2));
        assert!(a.poly_eval(&a.charpoly()).unwrap().is_zero());
        // X^2 + 1 by direct multiplication
        let f = Poly::parse(&z9, "X^2+1").unwrap();
        assert_eq!(a.poly_eval(&f).unwrap(), &(&a * &a) + &Mat::identity(&z9, 2));
    }

    #[test]
    fn json_round_trip_and_errors() {
        let spec = RingSpec::truncated(2, 2).unwrap();
        let m = Mat::parse_json(&spec, r#"[["1+t","0"],["t","1"]]"#).unwrap();
        assert_eq!(Mat::parse_json(&spec, &m.to_json().to_string()).unwrap(), m);
        assert!(Mat::parse_json(&spec, r#"[["1","0"]]"#).is_err());
        assert!(Mat::parse_json(&spec, "[").is_err());
        assert!(Mat::parse_json(&spec, "[]").is_err());
        let z4 = z(4);
        assert_eq!(
            Mat::parse_json(&z4, "[[0,2],[1,1]]").unwrap().to_string(),
            "[[0, 2], [1, 1]]"
        );
    }

    #[test]
    fn components_round_trip() {
        let z12 = z(12);
        let a = Mat::from_ints(&z12, &[&[7, 2], &[11, 6]]).unwrap();
        let parts: Vec<Mat> = (0..2).map(|i| a.component(i)).collect();
        assert_eq!(parts[0].to_rows(), [["3", "2"], ["3", "2"]]);
        assert_eq!(Mat::from_components(&z12, &parts).unwrap(), a);
    }
}
