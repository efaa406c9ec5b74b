use super::*;
use proptest::prelude::*;

fn z(n: u64) -> RingSpec {
    RingSpec::integers_mod(n).unwrap()
}

fn poly(spec: &RingSpec, s: &str) -> Poly {
    Poly::parse(spec, s).unwrap()
}

#[test]
fn arithmetic_examples() {
    let z4 = z(4);
    let f = &poly(&z4, "X+1") * &poly(&z4, "X+2");
    assert_eq!(f.to_string(), "X^2+3*X+2");
    assert_eq!(f.eval(&RingElem::from_i64(&z4, 1)).unwrap().to_string(), "2");
    assert_eq!(f.eval(&RingElem::from_i64(&z4, 0)).unwrap().to_string(), "2");
    assert!(poly(&z4, "X").checked_add(&poly(&z(8), "X")).is_err());
    assert!((&poly(&z4, "2*X") * &poly(&z4, "2*X+2")).is_zero());
}

#[test]
fn divmod_examples() {
    let z4 = z(4);
    let (q, r) = poly(&z4, "X^2+3*X+2").divmod_monic(&poly(&z4, "X+1")).unwrap();
    assert_eq!((q.to_string(), r.to_string()), ("X+2".into(), "0".into()));

    let (q, r) = poly(&z4, "X^2").divmod_monic(&poly(&z4, "X+1")).unwrap();
    assert_eq!((q.to_string(), r.to_string()), ("X+3".into(), "1".into()));
    // oracle: q*g + r by direct multiplication
    assert_eq!(&(&q * &poly(&z4, "X+1")) + &r, poly(&z4, "X^2"));

    let (q, r) = poly(&z4, "1").divmod_monic(&poly(&z4, "X")).unwrap();
    assert!(q.is_zero());
    assert_eq!(r.to_string(), "1");

    assert!(matches!(
        poly(&z4, "X^2").divmod_monic(&poly(&z4, "2*X+1")),
        Err(Error::NotMonic(_))
    ));
}

#[test]
fn reduce_examples() {
    let z4 = z(4);
    assert_eq!(poly(&z4, "X^2+3*X+2").reduce_mod_p().unwrap().to_string(), "X^2+X");
    assert_eq!(poly(&z(9), "X^2+X+3").reduce_mod_p().unwrap().to_string(), "X^2+X");
    assert!(poly(&z4, "2*X+2").reduce_mod_p().unwrap().is_zero());
    assert!(matches!(
        poly(&z(12), "X").reduce_mod_p(),
        Err(Error::UnsupportedFamily(_))
    ));
}

#[test]
fn scale_substitute_examples() {
    let z4 = z(4);
    let f = poly(&z4, "X^2+3*X+2");
    let a = RingElem::from_i64(&z4, 3);
    let g = f.scale_substitute(&a).unwrap();
    assert_eq!(g.to_string(), "X^2+X+2");
    // g(1) = a^-2 f(a)
    let one = RingElem::from_i64(&z4, 1);
    let a_inv_sq = a.invert().unwrap().pow(2);
    assert_eq!(g.eval(&one).unwrap(), a_inv_sq.try_mul(&f.eval(&a).unwrap()).unwrap());

    assert_eq!(f.scale_substitute(&one).unwrap(), f);
    let z9 = z(9);
    let x3 = Poly::x_pow(&z9, 3);
    assert_eq!(x3.scale_substitute(&RingElem::from_i64(&z9, 5)).unwrap(), x3);
    assert!(matches!(
        f.scale_substitute(&RingElem::from_i64(&z4, 2)),
        Err(Error::NotAUnit(_))
    ));
}

#[test]
fn text_round_trips() {
    let f3 = RingSpec::truncated(3, 2).unwrap();
    let f = poly(&f3, "(1+t)*X^2+t*X+2");
    assert_eq!(f.to_string(), "(1+t)*X^2+t*X+2");
    assert_eq!(f.coeff(2), f3.parse_elem("1+t").unwrap());

    let q = RingSpec::localized(5).unwrap();
    let f = poly(&q, "X^2-X+5");
    assert_eq!(f.to_string(), "X^2-X+5");
    assert_eq!(f.coeff(1), q.from_i64(-1));
    assert_eq!(poly(&q, "1/2*X - 3/7").to_string(), "1/2*X-3/7");

    let z4 = z(4);
    assert_eq!(poly(&z4, "X^2 + 3*X + 2 + X^2").to_string(), "2*X^2+3*X+2");
    assert!(Poly::parse(&z4, "X^").is_err());
    assert!(Poly::parse(&z4, "3X").is_err());
    assert!(Poly::parse(&z4, "").is_err());
    let json = poly(&z4, "X^2+3*X+2").to_json_coeffs();
    assert_eq!(json, ["2", "3", "1"]);
    assert_eq!(Poly::from_json_coeffs(&z4, &json).unwrap().to_string(), "X^2+3*X+2");
}

fn monic_poly(spec: RingSpec, max_deg: usize) -> impl Strategy<Value = Poly> {
    let size = spec.size().unwrap();
    prop::collection::vec(0..size, 0..=max_deg).prop_map(move |c| {
        let mut coeffs: Vec<Elem> = c.into_iter().map(|i| spec.element_at(i)).collect();
        coeffs.push(spec.one());
        Poly::from_elems(&spec, coeffs)
    })
}

fn any_poly(spec: RingSpec, max_len: usize) -> impl Strategy<Value = Poly> {
    let size = spec.size().unwrap();
    prop::collection::vec(0..size, 0..=max_len)
        .prop_map(move |c| Poly::from_elems(&spec, c.into_iter().map(|i| spec.element_at(i)).collect()))
}

proptest! {
    #[test]
    fn divmod_reconstructs(f in any_poly(z(9), 7), g in monic_poly(z(9), 4)) {
        let (q, r) = f.divmod_monic(&g).unwrap();
        prop_assert_eq!(&(&q * &g) + &r, f);
        prop_assert!(r.degree().is_none_or(|d| d < g.degree().unwrap()));
    }

    #[test]
    fn reduction_is_a_homomorphism(
        f in any_poly(RingSpec::truncated(3, 2).unwrap(), 4),
        g in any_poly(RingSpec::truncated(3, 2).unwrap(), 4),
    ) {
        let prod = (&f * &g).reduce_mod_p().unwrap();
        prop_assert_eq!(prod, f.reduce_mod_p().unwrap().mul(&g.reduce_mod_p().unwrap()));
        let sum = (&f + &g).reduce_mod_p().unwrap();
        prop_assert_eq!(sum, f.reduce_mod_p().unwrap().add(&g.reduce_mod_p().unwrap()));
    }

    #[test]
    fn scale_substitute_inverts(f in monic_poly(z(27), 5), a in 0u64..27) {
        let spec = z(27);
        let a = RingElem::from_i64(&spec, a as i64);
        prop_assume!(a.is_unit());
        let g = f.scale_substitute(&a).unwrap();
        prop_assert!(g.is_monic());
        prop_assert_eq!(g.scale_substitute(&a.invert().unwrap()).unwrap(), f);
    }

    #[test]
    fn text_round_trip(f in any_poly(RingSpec::truncated(5, 3).unwrap(), 5)) {
        let back = Poly::parse(f.spec(), &f.to_string()).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn reduction_homomorphism_exhaustive_small() {
    // all pairs of polynomials of length <= 2 over Z/4
    let z4 = z(4);
    let polys: Vec<Poly> = (0..16)
        .map(|i| Poly::from_ints(&z4, &[(i % 4) as i64, (i / 4) as i64]))
        .collect();
    for f in &polys {
        for g in &polys {
            let lhs = (f * g).reduce_mod_p().unwrap();
            assert_eq!(lhs, f.reduce_mod_p().unwrap().mul(&g.reduce_mod_p().unwrap()));
        }
    }
}
