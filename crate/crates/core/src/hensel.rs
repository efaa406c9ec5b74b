//! Exact Hensel lifting over `Z/p^k` and `F_p[t]/(t^k)`.
//!
//! Both families have a nilpotent maximal ideal, so a coprime factorization
//! modulo `P` lifts to an exact factorization after at most `k - 1` linear
//! correction steps. Each step fixes one more power of `P` using the residue
//! Bézout pair; the corrections are reduced modulo the current factors so
//! that degrees, and monicity, never change.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{factor_residue_bounded, xgcd_residue, Poly, ResiduePoly, DEFAULT_FACTOR_WORK};
use crate::rings::RingSpec;

/// `f = g * h` with `u * g + v * h = 1`, all exact over the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HenselFactorization {
    pub f: Poly,
    pub g: Poly,
    pub h: Poly,
    pub u: Poly,
    pub v: Poly,
}

/// Split of a monic `f` into the part whose residue is `X^m` and the part
/// whose residue does not vanish at zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroSplit {
    pub g: Poly,
    pub h: Poly,
    pub u: Poly,
    pub v: Poly,
    pub m: usize,
}

/// One factor of a [`LocalFactorList`]: its residue is `base^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    pub poly: Poly,
    pub base: ResiduePoly,
    pub multiplicity: u32,
}

/// Factorization of `f` into monic factors with prime-power residues, one
/// per distinct residue irreducible, sorted by that irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactorList {
    pub f: Poly,
    pub factors: Vec<LocalFactor>,
}

#[derive(Serialize)]
struct FactorJson {
    g: String,
    h: String,
    u: String,
    v: String,
}

impl HenselFactorization {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(FactorJson {
            g: self.g.to_string(),
            h: self.h.to_string(),
            u: self.u.to_string(),
            v: self.v.to_string(),
        })
        .expect("plain strings serialize")
    }
}

fn require_monic(f: &Poly) -> Result<()> {
    if f.is_monic() {
        Ok(())
    } else {
        Err(Error::NotMonic(f.to_string()))
    }
}

fn iteration_cap(spec: &RingSpec) -> u32 {
    spec.nilpotency_index().expect("local nilpotent family") + 1
}

/// Lifts the coprime residue factorization `reduce(f) = g0 * h0` to
/// `f = g * h` over the ring, together with an exact Bézout pair.
pub fn hensel_lift(f: &Poly, g0: &ResiduePoly, h0: &ResiduePoly) -> Result<HenselFactorization> {
    let spec = f.spec();
    spec.require_local_nilpotent()?;
    require_monic(f)?;
    for r in [g0, h0] {
        if !r.is_monic() {
            return Err(Error::NotMonic(r.to_string()));
        }
    }
    let reduced = f.reduce_mod_p()?;
    let product = g0.mul(h0);
    if product != reduced {
        return Err(Error::ResidueMismatch {
            product: product.to_string(),
            expected: reduced.to_string(),
        });
    }
    let (d, u_bar, v_bar) = xgcd_residue(g0, h0)?;
    if !d.is_one() {
        return Err(Error::NotCoprime(d.to_string()));
    }
    let u0 = Poly::lift(&u_bar, spec)?;
    let v0 = Poly::lift(&v_bar, spec)?;
    let mut g = Poly::lift(g0, spec)?;
    let mut h = Poly::lift(h0, spec)?;

    let mut exact = false;
    for _ in 0..iteration_cap(spec) {
        let err = f.sub_unchecked(&g.mul_unchecked(&h));
        if err.is_zero() {
            exact = true;
            break;
        }
        let dg = v0.mul_unchecked(&err).rem_monic(&g);
        let dh = u0.mul_unchecked(&err).rem_monic(&h);
        g = g.add_unchecked(&dg);
        h = h.add_unchecked(&dh);
    }
    if !exact {
        return Err(Error::InternalCheckFailed(format!("lifting of {f} did not converge")));
    }
    let (u, v) = lift_bezout(&g, &h, &u0, &v0)?;
    Ok(HenselFactorization {
        f: f.clone(),
        g,
        h,
        u,
        v,
    })
}

/// Exact `u, v` with `u * g + v * h = 1`, `deg u < deg h`, `deg v < deg g`.
pub fn bezout_lift(g: &Poly, h: &Poly) -> Result<(Poly, Poly)> {
    let spec = g.spec();
    spec.same_as(h.spec())?;
    spec.require_local_nilpotent()?;
    require_monic(g)?;
    require_monic(h)?;
    let (d, u_bar, v_bar) = xgcd_residue(&g.reduce_mod_p()?, &h.reduce_mod_p()?)?;
    if !d.is_one() {
        return Err(Error::NotCoprime(d.to_string()));
    }
    lift_bezout(g, h, &Poly::lift(&u_bar, spec)?, &Poly::lift(&v_bar, spec)?)
}

/// Starting from any `u0 g + v0 h = 1 mod P`, corrects the defect
/// `c = 1 - (u g + v h)` one power of `P` at a time.
fn lift_bezout(g: &Poly, h: &Poly, u0: &Poly, v0: &Poly) -> Result<(Poly, Poly)> {
    let spec = g.spec();
    let one = Poly::one(spec);
    let (mut u, mut v) = (u0.clone(), v0.clone());
    for _ in 0..iteration_cap(spec) {
        let defect = one.sub_unchecked(&u.mul_unchecked(g).add_unchecked(&v.mul_unchecked(h)));
        if defect.is_zero() {
            return Ok((u, v));
        }
        u = u.add_unchecked(&defect.mul_unchecked(u0).rem_monic(h));
        v = v.add_unchecked(&defect.mul_unchecked(v0).rem_monic(g));
    }
    Err(Error::InternalCheckFailed(format!(
        "Bezout lift for {g}, {h} did not converge"
    )))
}

/// Splits off the residue root at zero: `f = g * h` with `reduce(g) = X^m`
/// and `reduce(h)(0) != 0`, where `m` is the index of the first unit
/// coefficient of `f`.
pub fn split_at_zero(f: &Poly) -> Result<ZeroSplit> {
    let spec = f.spec();
    spec.require_local_nilpotent()?;
    require_monic(f)?;
    let n = f.degree().unwrap();
    let reduced = f.reduce_mod_p()?;
    let m = reduced.coeffs().iter().position(|&c| c != 0).expect("monic residue");
    let one = Poly::one(spec);
    let zero = Poly::zero(spec);
    if m == 0 {
        return Ok(ZeroSplit {
            g: one.clone(),
            h: f.clone(),
            u: one,
            v: zero,
            m,
        });
    }
    if m == n {
        return Ok(ZeroSplit {
            g: f.clone(),
            h: one.clone(),
            u: zero,
            v: one,
            m,
        });
    }
    let p = reduced.p();
    let g0 = ResiduePoly::x_pow(p, m);
    let h0 = ResiduePoly::new(p, reduced.coeffs()[m..].to_vec());
    let lifted = hensel_lift(f, &g0, &h0)?;
    Ok(ZeroSplit {
        g: lifted.g,
        h: lifted.h,
        u: lifted.u,
        v: lifted.v,
        m,
    })
}

/// Factors `f` into pieces whose residues are powers of distinct
/// irreducibles, i.e. `R[X]/(f)` as a product of local rings.
pub fn local_factorization(f: &Poly) -> Result<LocalFactorList> {
    local_factorization_bounded(f, DEFAULT_FACTOR_WORK)
}

pub fn local_factorization_bounded(f: &Poly, work_bound: u64) -> Result<LocalFactorList> {
    let spec = f.spec();
    spec.require_local_nilpotent()?;
    require_monic(f)?;
    if f.degree() == Some(0) {
        return Err(Error::PreconditionViolated(
            "constant polynomial has no local factors".into(),
        ));
    }
    let groups = factor_residue_bounded(&f.reduce_mod_p()?, work_bound)?;
    let mut factors = Vec::with_capacity(groups.len());
    let mut rest = f.clone();
    let p = spec.residue_prime().unwrap();
    for (i, (base, mult)) in groups.iter().enumerate() {
        if i + 1 == groups.len() {
            factors.push(LocalFactor {
                poly: rest.clone(),
                base: base.clone(),
                multiplicity: *mult,
            });
            break;
        }
        let g0 = base.pow(*mult);
        let h0 = groups[i + 1..]
            .iter()
            .fold(ResiduePoly::one(p), |acc, (q, e)| acc.mul(&q.pow(*e)));
        let lifted = hensel_lift(&rest, &g0, &h0)?;
        factors.push(LocalFactor {
            poly: lifted.g,
            base: base.clone(),
            multiplicity: *mult,
        });
        rest = lifted.h;
    }
    Ok(LocalFactorList { f: f.clone(), factors })
}
