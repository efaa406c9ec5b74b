//! Exhaustive ground truth: idempotent search, trial division, and the
//! cofactor-expansion characteristic polynomial.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::poly::Poly;
use crate::rings::RingSpec;

use super::DEFAULT_WORK_BOUND;

/// `base^exp`, or `None` past `u128`.
fn checked_count(base: u64, exp: usize) -> Option<u128> {
    (base as u128).checked_pow(u32::try_from(exp).ok()?)
}

fn require_within(needed: Option<u128>, bound: u64) -> Result<u64> {
    match needed {
        Some(n) if n <= bound as u128 => Ok(n as u64),
        Some(n) => Err(Error::BoundExceeded { needed: n, bound }),
        None => Err(Error::BoundExceeded {
            needed: u128::MAX,
            bound,
        }),
    }
}

/// Number of `n x n` matrices over `spec`, checked against `bound`.
pub fn matrix_count(spec: &RingSpec, n: usize, bound: u64) -> Result<u64> {
    let size = spec.require_finite()?;
    require_within(checked_count(size, n * n), bound)
}

/// The `index`-th `n x n` matrix in lexicographic order, first entry most
/// significant.
pub fn matrix_at(spec: &RingSpec, n: usize, mut index: u64) -> Mat {
    let size = spec.size().expect("finite ring");
    let mut entries = vec![spec.zero(); n * n];
    for slot in entries.iter_mut().rev() {
        *slot = spec.element_at(index % size);
        index /= size;
    }
    Mat::from_entries(spec, n, entries)
}

/// The `index`-th monic polynomial of degree `d`, `c_0` least significant.
pub fn monic_at(spec: &RingSpec, d: usize, mut index: u64) -> Poly {
    let size = spec.size().expect("finite ring");
    let mut coeffs = Vec::with_capacity(d + 1);
    for _ in 0..d {
        coeffs.push(spec.element_at(index % size));
        index /= size;
    }
    coeffs.push(spec.one());
    Poly::from_elems(spec, coeffs)
}

pub fn brute_strongly_clean(a: &Mat) -> Result<Option<(Mat, Mat)>> {
    brute_strongly_clean_bounded(a, DEFAULT_WORK_BOUND)
}

/// First `E` in lexicographic order with `E^2 = E`, `EA = AE` and `A - E`
/// invertible, together with `U = A - E`.
pub fn brute_strongly_clean_bounded(a: &Mat, bound: u64) -> Result<Option<(Mat, Mat)>> {
    let spec = a.spec();
    let total = matrix_count(spec, a.n(), bound)?;
    for idx in 0..total {
        let e = matrix_at(spec, a.n(), idx);
        if e.mul_unchecked(&e) != e || e.mul_unchecked(a) != a.mul_unchecked(&e) {
            continue;
        }
        let u = a - &e;
        if u.is_invertible() {
            return Ok(Some((e, u)));
        }
    }
    Ok(None)
}

pub fn brute_factor(f: &Poly) -> Result<Option<(Poly, Poly)>> {
    brute_factor_bounded(f, DEFAULT_WORK_BOUND)
}

/// First monic `g` of degree `1..n` dividing `f`, by degree and then by
/// coefficients from the top, together with the cofactor.
pub fn brute_factor_bounded(f: &Poly, bound: u64) -> Result<Option<(Poly, Poly)>> {
    let spec = f.spec();
    let size = spec.require_finite()?;
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    let n = f.degree().unwrap();
    let needed = (1..n).try_fold(0u128, |acc, d| checked_count(size, d).and_then(|c| acc.checked_add(c)));
    require_within(needed, bound)?;
    for d in 1..n {
        for idx in 0..size.pow(d as u32) {
            let g = monic_at(spec, d, idx);
            let (q, r) = f.divmod_monic_unchecked(&g);
            if r.is_zero() {
                return Ok(Some((g, q)));
            }
        }
    }
    Ok(None)
}

/// `det(X I - A)` by Laplace expansion along the first row, with
/// polynomial entries. Exponential in `n`; an independent check on
/// [`Mat::charpoly`].
pub fn cofactor_charpoly(a: &Mat) -> Poly {
    let spec = a.spec();
    let n = a.n();
    let x = Poly::x_pow(spec, 1);
    let entries: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Poly::constant(spec, spec.neg(a.get(i, j)));
                    if i == j {
                        x.add_unchecked(&c)
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let rows: Vec<usize> = (0..n).collect();
    laplace(spec, &entries, &rows, &rows)
}

fn laplace(spec: &RingSpec, m: &[Vec<Poly>], rows: &[usize], cols: &[usize]) -> Poly {
    if rows.is_empty() {
        return Poly::one(spec);
    }
    let r = rows[0];
    let mut acc = Poly::zero(spec);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[r][c];
        if entry.is_zero() {
            continue;
        }
        let minor_cols: Vec<usize> = cols.iter().copied().filter(|&j| j != c).collect();
        let term = entry.mul_unchecked(&laplace(spec, m, &rows[1..], &minor_cols));
        acc = if k % 2 == 0 {
            acc.add_unchecked(&term)
        } else {
            acc.sub_unchecked(&term)
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matclean::{strongly_clean_decompose, verify_decomposition};

    fn z(n: u64) -> RingSpec {
        RingSpec::integers_mod(n).unwrap()
    }

    #[test]
    fn clean_examples() {
        let z4 = z(4);
        let a = Mat::from_ints(&z4, &[&[0, 2], &[1, 1]]).unwrap();
        let (e, u) = brute_strongly_clean(&a).unwrap().unwrap();
        assert_eq!(verify_decomposition(&a, &e, &u), Ok(()));
        let algo = strongly_clean_decompose(&a).unwrap();
        assert_eq!(verify_decomposition(&a, &algo.e, &algo.u), Ok(()));

        let i2 = Mat::identity(&z4, 2);
        let (e, u) = brute_strongly_clean(&i2).unwrap().unwrap();
        assert!(e.is_zero());
        assert_eq!(u, i2);

        let two = Mat::from_ints(&z4, &[&[2]]).unwrap();
        let (e, u) = brute_strongly_clean(&two).unwrap().unwrap();
        assert_eq!((e.to_string(), u.to_string()), ("[[1]]".into(), "[[1]]".into()));
    }

    #[test]
    fn clean_bound() {
        let z9 = z(9);
        let a = Mat::identity(&z9, 3);
        assert!(matches!(
            brute_strongly_clean_bounded(&a, 1000),
            Err(Error::BoundExceeded {
                needed: 387_420_489,
                bound: 1000
            })
        ));
    }

    #[test]
    fn factor_examples() {
        let z4 = z(4);
        let f = Poly::parse(&z4, "X^2+3*X+2").unwrap();
        let (g, h) = brute_factor(&f).unwrap().unwrap();
        assert_eq!((g.to_string(), h.to_string()), ("X+1".into(), "X+2".into()));
        assert_eq!(brute_factor(&Poly::parse(&z4, "X^2+X+1").unwrap()).unwrap(), None);
        for spec in [z4, z(9), RingSpec::truncated(2, 2).unwrap()] {
            let (g, h) = brute_factor(&Poly::x_pow(&spec, 2)).unwrap().unwrap();
            assert_eq!((g.to_string(), h.to_string()), ("X".into(), "X".into()));
        }
    }

    #[test]
    fn factor_order_prefers_lower_degree() {
        // X^4 over Z/4 has the linear divisor X before any quadratic
        let z4 = z(4);
        let (g, _) = brute_factor(&Poly::x_pow(&z4, 4)).unwrap().unwrap();
        assert_eq!(g.to_string(), "X");
        let f = Poly::parse(&z4, "X^4+X^2+1").unwrap();
        // (X^2+X+1)(X^2+3X+1) = X^4+X^2+1, no roots mod 2
        let (g, h) = brute_factor(&f).unwrap().unwrap();
        assert_eq!(g.degree(), Some(2));
        assert_eq!(&g * &h, f);
    }

    #[test]
    fn cofactor_matches_hand_expansion() {
        let z9 = z(9);
        let a = Mat::from_ints(&z9, &[&[1, 2], &[3, 4]]).unwrap();
        // X^2 - 5X - 2
        assert_eq!(cofactor_charpoly(&a).to_string(), "X^2+4*X+7");
        let f = Poly::parse(&z(4), "X^2+3*X+2").unwrap();
        assert_eq!(cofactor_charpoly(&Mat::companion(&f).unwrap()), f);
    }

    #[test]
    fn enumeration_order() {
        let z4 = z(4);
        assert_eq!(matrix_at(&z4, 2, 1).to_string(), "[[0, 0], [0, 1]]");
        assert_eq!(matrix_at(&z4, 2, 64).to_string(), "[[1, 0], [0, 0]]");
        assert_eq!(monic_at(&z4, 2, 1).to_string(), "X^2+1");
        assert_eq!(monic_at(&z4, 2, 4).to_string(), "X^2+X");
    }
}
