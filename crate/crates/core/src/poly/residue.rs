use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::rings::inv_mod;

/// Default work bound for [`factor_residue`]: `13^4`, enough for every
/// degree-8 polynomial over `F_p` with `p <= 13`.
pub const DEFAULT_FACTOR_WORK: u64 = 28_561;

/// Polynomial over `F_p`, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResiduePoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ResiduePoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ResiduePoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        ResiduePoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    /// `X^d`.
    pub fn x_pow(p: u64, d: usize) -> Self {
        let mut c = vec![0; d + 1];
        c[d] = 1;
        Self::new(p, c)
    }

    /// The `index`-th monic polynomial of degree `d`, with `c0` as the least
    /// significant base-`p` digit of `index`.
    pub fn monic_of_degree(p: u64, d: usize, index: u64) -> Self {
        let mut rest = index;
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(rest % p);
            rest /= p;
        }
        c.push(1);
        ResiduePoly { p, coeffs: c }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, c| (acc * (x % self.p) + c) % self.p)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.p, (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            self.p,
            (0..n).map(|i| self.coeff(i) + self.p - other.coeff(i)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % p;
            }
        }
        Self::new(p, c)
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|x| x * (c % self.p) % self.p).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.p), |acc, _| acc.mul(self))
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(inv_mod(lc, self.p).expect("nonzero in a field")),
            None => self.clone(),
        }
    }

    /// Euclidean division over the field. Panics on a zero divisor.
    pub fn divmod(&self, divisor: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = inv_mod(divisor.coeffs[dd], p).expect("nonzero in a field");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd] * lc_inv % p;
            if c == 0 {
                continue;
            }
            for (j, dj) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - c * dj % p) % p;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divmod(divisor).1
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Parses `X^2+X+1` style text with integer coefficients.
    pub fn parse(p: u64, s: &str) -> Result<Self> {
        super::text::parse_residue_poly(p, s)
    }
}

impl Ord for ResiduePoly {
    /// Degree first, then coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
            .then(self.p.cmp(&other.p))
    }
}

impl PartialOrd for ResiduePoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ResiduePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&super::text::join_terms(&terms))
    }
}

/// Extended gcd over `F_p`: returns `(d, u, v)` with `u*g + v*h = d`, `d`
/// monic, `deg u < deg h - deg d` and `deg v < deg g - deg d`.
///
/// When one input divides the other the pair puts the unit on the divisor
/// and zero on the other side, checking `g | h` first.
pub fn xgcd_residue(g: &ResiduePoly, h: &ResiduePoly) -> Result<(ResiduePoly, ResiduePoly, ResiduePoly)> {
    if g.p != h.p {
        return Err(Error::SpecMismatch {
            left: format!("F{}", g.p),
            right: format!("F{}", h.p),
        });
    }
    let p = g.p;
    let unit_on = |x: &ResiduePoly| {
        let lc_inv = inv_mod(x.leading().unwrap(), p).unwrap();
        (x.scale(lc_inv), ResiduePoly::new(p, vec![lc_inv]))
    };
    match (g.is_zero(), h.is_zero()) {
        (true, true) => return Err(Error::PreconditionViolated("xgcd of two zero polynomials".into())),
        (true, false) => {
            let (d, v) = unit_on(h);
            return Ok((d, ResiduePoly::zero(p), v));
        }
        (false, true) => {
            let (d, u) = unit_on(g);
            return Ok((d, u, ResiduePoly::zero(p)));
        }
        _ => {}
    }
    if g.divides(h) {
        let (d, u) = unit_on(g);
        return Ok((d, u, ResiduePoly::zero(p)));
    }
    if h.divides(g) {
        let (d, v) = unit_on(h);
        return Ok((d, ResiduePoly::zero(p), v));
    }

    let (mut r0, mut r1) = (g.clone(), h.clone());
    let (mut s0, mut s1) = (ResiduePoly::one(p), ResiduePoly::zero(p));
    let (mut t0, mut t1) = (ResiduePoly::zero(p), ResiduePoly::one(p));
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1);
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    let lc_inv = inv_mod(r0.leading().unwrap(), p).unwrap();
    let d = r0.scale(lc_inv);
    let u = s0.scale(lc_inv);
    // degree-reduce: u mod (h/d), then v = (d - u g) / h exactly
    let h_red = h.divmod(&d).0;
    let u = u.rem(&h_red);
    let (v, rest) = d.sub(&u.mul(g)).divmod(h);
    debug_assert!(rest.is_zero());
    Ok((d, u, v))
}

/// Factorization of a monic polynomial over `F_p` into monic irreducibles
/// with multiplicities, sorted by degree then coefficients.
pub fn factor_residue(f: &ResiduePoly) -> Result<Vec<(ResiduePoly, u32)>> {
    factor_residue_bounded(f, DEFAULT_FACTOR_WORK)
}

/// Trial division by every monic polynomial of degree `<= deg/2`, smallest
/// first. A divisor found this way has no smaller-degree factor left, so it
/// is irreducible.
pub fn factor_residue_bounded(f: &ResiduePoly, work_bound: u64) -> Result<Vec<(ResiduePoly, u32)>> {
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    let p = f.p;
    let n = f.degree().unwrap();
    let needed = (p as u128).pow((n / 2) as u32);
    if needed > work_bound as u128 {
        return Err(Error::BoundExceeded {
            needed,
            bound: work_bound,
        });
    }
    let mut rest = f.clone();
    let mut out: Vec<(ResiduePoly, u32)> = Vec::new();
    let mut d = 1;
    while 2 * d <= rest.degree().unwrap() {
        for index in 0..p.pow(d as u32) {
            let cand = ResiduePoly::monic_of_degree(p, d, index);
            let mut mult = 0;
            loop {
                let (q, r) = rest.divmod(&cand);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((cand, mult));
            }
            if 2 * d > rest.degree().unwrap() {
                break;
            }
        }
        d += 1;
    }
    if rest.degree().unwrap() > 0 {
        match out.iter_mut().find(|(q, _)| *q == rest) {
            Some((_, m)) => *m += 1,
            None => out.push((rest, 1)),
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(p: u64, s: &str) -> ResiduePoly {
        ResiduePoly::parse(p, s).unwrap()
    }

    #[test]
    fn factor_examples() {
        assert_eq!(
            factor_residue(&rp(2, "X^2+X")).unwrap(),
            vec![(rp(2, "X"), 1), (rp(2, "X+1"), 1)]
        );
        assert_eq!(factor_residue(&rp(2, "X^2+1")).unwrap(), vec![(rp(2, "X+1"), 2)]);
        assert_eq!(factor_residue(&rp(2, "X^2+X+1")).unwrap(), vec![(rp(2, "X^2+X+1"), 1)]);
        assert_eq!(factor_residue(&rp(3, "1")).unwrap(), vec![]);
        assert_eq!(
            factor_residue(&rp(2, "X^4+X^2+1")).unwrap(),
            vec![(rp(2, "X^2+X+1"), 2)]
        );
    }

    #[test]
    fn factor_errors() {
        assert!(matches!(factor_residue(&rp(3, "2*X+1")), Err(Error::NotMonic(_))));
        let big = ResiduePoly::x_pow(13, 10);
        assert!(matches!(factor_residue(&big), Err(Error::BoundExceeded { .. })));
        assert!(factor_residue(&ResiduePoly::x_pow(13, 8)).is_ok());
    }

    #[test]
    fn xgcd_examples() {
        let (d, u, v) = xgcd_residue(&rp(2, "X"), &rp(2, "X+1")).unwrap();
        assert_eq!((d, u, v), (rp(2, "1"), rp(2, "1"), rp(2, "1")));

        let (d, u, v) = xgcd_residue(&rp(3, "X^2"), &rp(3, "X^2")).unwrap();
        assert_eq!((d, u, v), (rp(3, "X^2"), rp(3, "1"), ResiduePoly::zero(3)));

        let (d, u, v) = xgcd_residue(&rp(2, "X^2+X"), &rp(2, "X+1")).unwrap();
        assert_eq!((d, u, v), (rp(2, "X+1"), ResiduePoly::zero(2), rp(2, "1")));

        assert!(xgcd_residue(&ResiduePoly::zero(5), &ResiduePoly::zero(5)).is_err());
    }

    /// Brute-force irreducibility: no monic divisor of degree 1..deg-1.
    fn irreducible_by_search(q: &ResiduePoly) -> bool {
        let n = q.degree().unwrap();
        (1..n).all(|d| (0..q.p().pow(d as u32)).all(|i| !ResiduePoly::monic_of_degree(q.p(), d, i).divides(q)))
    }

    #[test]
    fn factorizations_are_certified_exhaustively() {
        for (p, max_deg) in [(2u64, 6usize), (3, 4), (5, 3)] {
            for d in 1..=max_deg {
                for i in 0..p.pow(d as u32) {
                    let f = ResiduePoly::monic_of_degree(p, d, i);
                    let factors = factor_residue(&f).unwrap();
                    let product = factors
                        .iter()
                        .fold(ResiduePoly::one(p), |acc, (q, e)| acc.mul(&q.pow(*e)));
                    assert_eq!(product, f);
                    for w in factors.windows(2) {
                        assert!(w[0].0 < w[1].0);
                    }
                    for (q, _) in &factors {
                        assert!(q.is_monic() && irreducible_by_search(q), "{q} from {f}");
                    }
                }
            }
        }
    }

    #[test]
    fn xgcd_identity_exhaustive() {
        let p: u64 = 3;
        let polys: Vec<ResiduePoly> = (0..=2)
            .flat_map(|d| (0..p.pow(d as u32)).map(move |i| ResiduePoly::monic_of_degree(p, d as usize, i)))
            .chain([ResiduePoly::zero(p), ResiduePoly::new(p, vec![2, 1, 2])])
            .collect();
        for g in &polys {
            for h in &polys {
                let Ok((d, u, v)) = xgcd_residue(g, h) else {
                    assert!(g.is_zero() && h.is_zero());
                    continue;
                };
                assert_eq!(u.mul(g).add(&v.mul(h)), d);
                assert!(d.is_monic());
                assert!(d.divides(g) && d.divides(h));
                let dd = d.degree().unwrap();
                if g.is_zero() || h.is_zero() || g.divides(h) || h.divides(g) {
                    assert!(u.is_zero() || v.is_zero());
                    assert!(u.degree().unwrap_or(0) == 0 && v.degree().unwrap_or(0) == 0);
                } else {
                    assert!(u.degree().is_none_or(|du| du + dd < h.degree().unwrap()));
                    assert!(v.degree().is_none_or(|dv| dv + dd < g.degree().unwrap()));
                }
            }
        }
    }
}
