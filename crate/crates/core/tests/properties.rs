use proptest::prelude::*;

use polyderive::derived::{hex_type, HexType};
use polyderive::geom3::{area_vector, cross, dot, mixed};
use polyderive::polygon::derivability_defect;
use polyderive::regularity::{check_regularity, double_cross_identity};
use polyderive::{Deltas, Polygon, QuadExt, Rational, Scalar, Vec3};

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn vec3() -> impl Strategy<Value = Vec3> {
    (rational(), rational(), rational()).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

fn polygon(n: usize) -> impl Strategy<Value = Polygon> {
    prop::collection::vec(vec3(), n).prop_map(|vs| Polygon::new(vs).unwrap())
}

fn radicand() -> impl Strategy<Value = Rational> {
    prop_oneof![
        Just(Rational::from(2)),
        Just(Rational::from(3)),
        Just(Rational::new(8, 5).unwrap()),
        Just(Rational::from(7)),
    ]
}

fn quad_triple() -> impl Strategy<Value = (QuadExt, QuadExt, QuadExt)> {
    (
        radicand(),
        rational(),
        rational(),
        rational(),
        rational(),
        rational(),
        rational(),
    )
        .prop_map(|(d, a1, b1, a2, b2, a3, b3)| {
            (
                QuadExt::new(a1, b1, d.clone()).unwrap(),
                QuadExt::new(a2, b2, d.clone()).unwrap(),
                QuadExt::new(a3, b3, d).unwrap(),
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + c.clone(), &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), Rational::one());
        }
    }

    #[test]
    fn quadratic_field_axioms((x, y, z) in quad_triple()) {
        prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
        prop_assert_eq!(
            x.clone() * (y.clone() + z.clone()),
            x.clone() * y.clone() + x.clone() * z.clone()
        );
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
        if !x.is_zero() {
            prop_assert_eq!(x.clone() * x.inverse().unwrap(), x.one_like());
        }
    }

    #[test]
    fn quadratic_sign_matches_float((x, _, _) in quad_triple()) {
        let f = x.to_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(x.sign_i8() as f64, f.signum());
        }
        prop_assert_eq!(x.sign(), (-x.clone()).sign().reverse());
    }

    #[test]
    fn lagrange_identity(a in vec3(), b in vec3()) {
        let c = cross(&a, &b);
        let lhs = dot(&c, &c);
        let ab = dot(&a, &b);
        prop_assert_eq!(lhs, dot(&a, &a) * dot(&b, &b) - &ab * &ab);
        prop_assert!(dot(&c, &a).is_zero() && dot(&c, &b).is_zero());
    }

    #[test]
    fn mixed_product_is_cyclic_and_alternating(a in vec3(), b in vec3(), c in vec3()) {
        let m = mixed(&a, &b, &c);
        prop_assert_eq!(mixed(&b, &c, &a), m.clone());
        prop_assert_eq!(mixed(&b, &a, &c), -m);
    }

    #[test]
    fn double_cross_identity_holds(a in vec3(), b in vec3(), c in vec3()) {
        let (lhs, rhs) = double_cross_identity(&a, &b, &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn area_vector_is_translation_invariant(p in polygon(6), t in vec3()) {
        let moved: Vec<Vec3> = p.vertices().iter().map(|x| x + &t).collect();
        prop_assert_eq!(area_vector(&moved).unwrap(), area_vector(p.vertices()).unwrap());
        let moved = Polygon::new(moved).unwrap();
        prop_assert_eq!(moved.edge_vectors(), p.edge_vectors());
    }

    #[test]
    fn mirror_negates_deltas(p in polygon(5)) {
        let d = p.edge_vectors().deltas();
        let m = p.mirror().edge_vectors().deltas();
        for (x, y) in d.as_slice().iter().zip(m.as_slice()) {
            prop_assert_eq!(y, &-x.clone());
        }
    }

    #[test]
    fn relabelling_shifts_deltas(p in polygon(6), k in 0usize..6) {
        prop_assert_eq!(p.rotated(k).edge_vectors().deltas(), p.edge_vectors().deltas().rotated(k));
    }

    #[test]
    fn defect_is_the_area_vector(p in polygon(7), k in 0usize..7) {
        let e = p.edge_vectors();
        let defect = derivability_defect(e.as_slice()).unwrap();
        prop_assert_eq!(&defect, &area_vector(p.vertices()).unwrap());
        let shifted = p.rotated(k).edge_vectors();
        prop_assert_eq!(derivability_defect(shifted.as_slice()).unwrap(), defect);
    }

    #[test]
    fn quadrangle_deltas_alternate(p in polygon(4)) {
        let d = p.edge_vectors().deltas();
        let d1 = d.delta(1).clone();
        prop_assert_eq!(d.delta(2), &-d1.clone());
        prop_assert_eq!(d.delta(3), &d1);
        prop_assert_eq!(d.delta(4), &-d1.clone());
        if !d1.is_zero() {
            prop_assert!(check_regularity(&d).unwrap().regular);
        }
    }

    #[test]
    fn hex_type_ignores_rotation_and_scale(
        a in nonzero_rational(), b in nonzero_rational(), c in nonzero_rational(),
        k in nonzero_rational(), shift in 0usize..3,
    ) {
        let d = Deltas::from_values(vec![a.clone(), b.clone(), c.clone(), a, b, c]);
        let t: HexType = hex_type(&d).unwrap();
        let scaled = Deltas::from_values(d.as_slice().iter().map(|x| x * &k).collect());
        prop_assert_eq!(hex_type(&scaled.rotated(shift)).unwrap(), t.clone());
        prop_assert_eq!(&t.triple[0], &Rational::one());
    }

    #[test]
    fn rational_json_round_trip(a in rational()) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&s).unwrap(), a.clone());
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }
}
