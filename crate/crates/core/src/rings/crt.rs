//! Chinese remainder split/combine between `Z/m` and its local components.

use super::{inv_mod, Elem, Family, RingElem, RingSpec};
use crate::error::{Error, Result};

/// Splits an element of a product ring into its local components.
pub fn crt_split(x: &RingElem) -> Result<Vec<RingElem>> {
    let spec = x.spec();
    match (spec.family(), x.elem()) {
        (Family::Product(cs), Elem::Tuple(parts)) => Ok(cs
            .iter()
            .zip(parts)
            .map(|(c, e)| RingElem::wrap(c, e.clone()))
            .collect()),
        _ => Err(Error::UnsupportedFamily(spec.to_string())),
    }
}

/// Glues local components back into an element of `spec`.
pub fn crt_combine(spec: &RingSpec, components: &[RingElem]) -> Result<RingElem> {
    let Family::Product(cs) = spec.family() else {
        return Err(Error::UnsupportedFamily(spec.to_string()));
    };
    if cs.len() != components.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} components given for {spec}",
            components.len()
        )));
    }
    for (c, x) in cs.iter().zip(components) {
        c.same_as(x.spec())?;
    }
    Ok(RingElem::wrap(
        spec,
        Elem::Tuple(components.iter().map(|x| x.elem().clone()).collect()),
    ))
}

/// Integer representative in `[0, m)` of an element of `Z/m` (prime power or
/// integer product).
pub(crate) fn integer_value(spec: &RingSpec, x: &Elem) -> Option<u64> {
    match (spec.family(), x) {
        (Family::PrimePower { .. }, Elem::Int(v)) => Some(*v),
        (Family::Product(cs), Elem::Tuple(parts)) if spec.is_integer_product() => {
            let m = spec.size()? as u128;
            let mut acc: u128 = 0;
            for (c, part) in cs.iter().zip(parts) {
                let Elem::Int(a) = part else { return None };
                let mi = c.size()?;
                let rest = (m / mi as u128) as u64;
                let inv = inv_mod(rest % mi, mi)?;
                // a * inv < 2^62, then times rest < 2^64 stays below 2^126.
                let term = (*a as u128 * inv as u128 % mi as u128) * rest as u128 % m;
                acc = (acc + term) % m;
            }
            Some(acc as u64)
        }
        _ => None,
    }
}

/// Element of `Z/m` with integer representative `v`.
pub(crate) fn from_integer(spec: &RingSpec, v: u64) -> Elem {
    match spec.family() {
        Family::PrimePower { modulus, .. } => Elem::Int(v % modulus),
        Family::Product(cs) => Elem::Tuple(cs.iter().map(|c| from_integer(c, v)).collect()),
        _ => panic!("from_integer on non-integer ring {spec}"),
    }
}
