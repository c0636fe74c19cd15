mod common;

use common::*;
use idealcore::groebner::{ideal_member, krull_dimension, truncated_membership_oracle};
use idealcore::ideal_ops::{
    colon_by_element, ideal_colon, ideal_intersect, ideal_power, ideal_product, ideal_sum, minimalize_generators,
};
use idealcore::ring::parse_polynomial;
use idealcore::{Field, Ideal, MonomialOrder, Polynomial};
use proptest::prelude::*;

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::prime(32003).unwrap()), Just(Field::prime(211).unwrap())]
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 32, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn ring_axioms(seed in any::<u64>(), field in fields()) {
        let r = xyzw(field);
        let mut g = rng(seed);
        let (a, b, c) = (
            random_form(&r, 2, 0.5, 20, &mut g),
            random_form(&r, 1, 0.7, 20, &mut g),
            random_form(&r, 2, 0.5, 20, &mut g),
        );
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &c) * &b, &(&a * &b) + &(&c * &b));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn printing_round_trips(seed in any::<u64>(), field in fields()) {
        let r = xyzw(field);
        let f = random_form(&r, 3, 0.4, 99, &mut rng(seed));
        let back = parse_polynomial(&f.to_string(), &r).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn generators_reduce_to_zero(seed in any::<u64>(), field in fields()) {
        let r = ring(&["x", "y", "z"], field);
        let i = random_ideal(&r, 3, 3, &mut rng(seed));
        let gb = i.groebner_basis();
        for g in i.generators() {
            prop_assert!(gb.reduce(g).is_zero());
        }
        let leads = gb.leading_monomials();
        for (k, p) in leads.iter().enumerate() {
            // reduced: no leading monomial divides another
            prop_assert!(leads.iter().enumerate().all(|(j, q)| j == k || !p.divides(q)));
        }
    }

    #[test]
    fn normal_form_is_linear(seed in any::<u64>()) {
        let r = ring(&["x", "y", "z"], Field::Rational);
        let mut g = rng(seed);
        let i = random_ideal(&r, 2, 2, &mut g);
        let gb = i.groebner_basis();
        let f = random_form(&r, 3, 0.6, 9, &mut g);
        let h = random_form(&r, 3, 0.6, 9, &mut g);
        prop_assert_eq!(gb.reduce(&(&f + &h)), &gb.reduce(&f) + &gb.reduce(&h));
        let member = random_member(&i, 4, &mut g);
        prop_assert!(gb.reduce(&member).is_zero());
    }

    #[test]
    fn membership_matches_oracle(seed in any::<u64>(), field in fields()) {
        let r = xyzw(field);
        let mut g = rng(seed);
        let i = random_ideal(&r, 3, 2, &mut g);
        for d in 1..=4 {
            let f = if d % 2 == 0 { random_member(&i, d, &mut g) } else { random_form(&r, d, 0.5, 9, &mut g) };
            prop_assert_eq!(ideal_member(&f, &i).unwrap(), truncated_membership_oracle(&f, i.generators(), 4).unwrap());
        }
    }

    #[test]
    fn colon_and_intersection_laws(seed in any::<u64>()) {
        let r = ring(&["x", "y", "z"], Field::Rational);
        let mut g = rng(seed);
        let i = random_ideal(&r, 2, 2, &mut g);
        let k = random_ideal(&r, 2, 2, &mut g);
        let colon = ideal_colon(&i, &k).unwrap();
        prop_assert!(colon.contains(&i).unwrap());
        prop_assert!(i.contains(&ideal_product(&colon, &k).unwrap()).unwrap());
        let inter = ideal_intersect(&i, &k).unwrap();
        prop_assert!(i.contains(&inter).unwrap() && k.contains(&inter).unwrap());
        prop_assert!(inter.contains(&ideal_product(&i, &k).unwrap()).unwrap());
        // I : (I + K) = I : K
        let sum = ideal_sum(&i, &k).unwrap();
        prop_assert!(ideal_colon(&i, &sum).unwrap().equals(&colon).unwrap());
    }

    #[test]
    fn colon_by_member_is_unit(seed in any::<u64>()) {
        let r = ring(&["x", "y", "z"], Field::Rational);
        let mut g = rng(seed);
        let i = random_ideal(&r, 2, 2, &mut g);
        let f = random_member(&i, 3, &mut g);
        prop_assume!(!f.is_zero());
        prop_assert!(colon_by_element(&i, &f).unwrap().is_unit());
    }

    #[test]
    fn powers_and_minimal_generators(seed in any::<u64>(), a in 0u32..3, b in 0u32..3) {
        let r = ring(&["x", "y", "z"], Field::prime(32003).unwrap());
        let i = random_ideal(&r, 2, 2, &mut rng(seed));
        let lhs = ideal_power(&i, a + b);
        let rhs = ideal_product(&ideal_power(&i, a), &ideal_power(&i, b)).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap());
        let min = minimalize_generators(&lhs);
        prop_assert!(min.equals(&lhs).unwrap());
        prop_assert!(min.generators().len() <= lhs.generators().len());
    }

    #[test]
    fn orders_agree_on_equality_and_dimension(seed in any::<u64>()) {
        let r = ring(&["x", "y", "z"], Field::Rational);
        let mut g = rng(seed);
        let i = random_ideal(&r, 2, 2, &mut g);
        let mut gens: Vec<Polynomial> = i.generators().to_vec();
        gens.push(random_member(&i, 3, &mut g));
        gens.reverse();
        let same = Ideal::new(&r, gens).unwrap();
        prop_assert!(i.equals_in(&same, MonomialOrder::Lex).unwrap());
        prop_assert!(i.equals_in(&same, MonomialOrder::DegRevLex).unwrap());
        let lex_ring = r.with_order(MonomialOrder::Lex);
        let lex = Ideal::new(&lex_ring, i.generators().iter().map(|f| parse_polynomial(&f.to_string(), &lex_ring).unwrap()).collect()).unwrap();
        prop_assert_eq!(krull_dimension(&lex), krull_dimension(&i));
    }

    #[test]
    fn rational_basis_reduces_to_prime_basis(seed in any::<u64>()) {
        let q = ring(&["x", "y", "z"], Field::Rational);
        let p = ring(&["x", "y", "z"], Field::prime(32003).unwrap());
        let i = random_ideal(&q, 3, 2, &mut rng(seed));
        let over_p = i.to_field(&p).unwrap();
        let reduced: Option<Vec<Polynomial>> = i.groebner_basis().elements().iter().map(|g| g.reduce_mod(&p)).collect();
        // no denominator divisible by p: the bases correspond element by element
        if let Some(reduced) = reduced {
            let gb = over_p.groebner_basis();
            prop_assert_eq!(reduced.as_slice(), gb.elements());
        }
    }
}
