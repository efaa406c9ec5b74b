//! Quadratics over `Z_(p)` that vanish modulo `p` at both 0 and 1 but do not
//! factor. A factorization criterion that holds for every 2x2 matrix ring
//! that is strongly clean would factor them, so `M_2(Z_(p))` is not.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rings::{RingElem, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonCleanWitness {
    pub p: u64,
    /// `X^2 - X + p` over `Z_(p)`.
    pub f: Poly,
    pub f0_in_p: bool,
    pub f1_in_p: bool,
    pub discriminant: BigInt,
    pub discriminant_is_square: bool,
}

/// Exact square test for an integer.
fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

impl NonCleanWitness {
    /// Recomputes every recorded check from `f`.
    pub fn verify(&self) -> bool {
        let spec = self.f.spec();
        let in_p = |x: i64| {
            let v = self.f.eval(&RingElem::from_i64(spec, x)).unwrap();
            spec.in_maximal_ideal(v.elem())
        };
        let disc = discriminant(&self.f);
        self.f0_in_p
            && self.f1_in_p
            && in_p(0) == self.f0_in_p
            && in_p(1) == self.f1_in_p
            && disc.as_ref() == Some(&self.discriminant)
            && !self.discriminant_is_square
            && !is_square(&self.discriminant)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "f": self.f.to_string(),
            "ring": self.f.spec().to_string(),
            "checks": {
                "f0_in_P": self.f0_in_p,
                "f1_in_P": self.f1_in_p,
                "discriminant": self.discriminant.to_string(),
                "discriminant_is_square": self.discriminant_is_square,
            },
            "verified": self.verify(),
        })
    }
}

/// `b^2 - 4c` for a monic quadratic with integral coefficients.
fn discriminant(f: &Poly) -> Option<BigInt> {
    if f.degree() != Some(2) {
        return None;
    }
    let spec = f.spec();
    let b = spec.format_elem(&f.coeff(1)).parse::<BigInt>().ok()?;
    let c = spec.format_elem(&f.coeff(0)).parse::<BigInt>().ok()?;
    Some(&b * &b - BigInt::from(4) * c)
}

pub fn nonclean_witness_quadratic(p: u64) -> Result<NonCleanWitness> {
    let spec = RingSpec::localized(p)?;
    let f = Poly::from_ints(&spec, &[p as i64, -1, 1]);
    let f0 = f.eval(&RingElem::from_i64(&spec, 0))?;
    let f1 = f.eval(&RingElem::from_i64(&spec, 1))?;
    let discriminant = discriminant(&f).expect("integral quadratic");
    debug_assert!(!discriminant.is_zero());
    let witness = NonCleanWitness {
        p,
        f0_in_p: spec.in_maximal_ideal(f0.elem()),
        f1_in_p: spec.in_maximal_ideal(f1.elem()),
        discriminant_is_square: is_square(&discriminant),
        discriminant,
        f,
    };
    if witness.discriminant_is_square || !witness.f0_in_p || !witness.f1_in_p {
        return Err(Error::WitnessDegenerate(format!("X^2-X+{p}")));
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_examples() {
        for (p, disc) in [(5, -19), (7, -27), (2, -7)] {
            let w = nonclean_witness_quadratic(p).unwrap();
            assert_eq!(w.f.to_string(), format!("X^2-X+{p}"));
            assert_eq!(w.discriminant, BigInt::from(disc));
            assert!(w.f0_in_p && w.f1_in_p && !w.discriminant_is_square);
            assert!(w.verify());
        }
    }

    #[test]
    fn rejects_composite() {
        assert_eq!(nonclean_witness_quadratic(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn square_test() {
        for (n, sq) in [
            (0, true),
            (1, true),
            (16, true),
            (15, false),
            (-4, false),
            (1i64 << 40, true),
        ] {
            assert_eq!(is_square(&BigInt::from(n)), sq, "{n}");
        }
    }

    #[test]
    fn tampered_witness_fails() {
        let mut w = nonclean_witness_quadratic(3).unwrap();
        w.discriminant = BigInt::from(-10);
        assert!(!w.verify());
    }
}
