//! Property tests: the algebraic laws the whole engine leans on, exercised
//! on randomized inputs.

use proptest::prelude::*;

use confalg::builders::build_n4;
use confalg::conformal::{lambda_bracket, ConfElement, LambdaPoly};
use confalg::morphism::theta;
use confalg::n4::LtgElement;
use confalg::parse::{
    parse_conf_element, parse_ring_element, parse_scalar, render_conf_element,
};
use confalg::ring::RingSpec;
use confalg::sampling::Sampler;
use confalg::scalar::Scalar;

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6)
        .prop_map(|(a, b, c, d)| Scalar::from_ratio(a, b) + Scalar::from_ratio_im(c, d))
}

proptest! {
    #[test]
    fn scalar_field_laws(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        }
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn scalar_sqrt_squares_back(a in small_scalar()) {
        let sq = &a * &a;
        let root = sq.sqrt_if_exists().expect("a square has a root");
        prop_assert_eq!(&root * &root, sq);
        // deterministic tie-break: squares of a and -a share one canonical root
        let neg = -&a;
        prop_assert_eq!((&neg * &neg).sqrt_if_exists().unwrap(), root);
    }

    #[test]
    fn ring_leibniz_rule(seed in any::<u64>()) {
        for spec in [RingSpec::Laurent, RingSpec::Puiseux(2), RingSpec::Trunc(4)] {
            let mut s = Sampler::from_seed(seed);
            let a = s.ring_element(spec, 3);
            let b = s.ring_element(spec, 3);
            let lhs = a.mul(&b).unwrap().delta();
            let rhs = a.delta().mul(&b).unwrap().add(&a.mul(&b.delta()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs, "Leibniz over {}", spec);
        }
    }

    #[test]
    fn embedding_is_a_differential_ring_map(seed in any::<u64>()) {
        let src = RingSpec::Laurent;
        let dst = RingSpec::Puiseux(2);
        let mut s = Sampler::from_seed(seed);
        let a = s.ring_element(src, 3);
        let b = s.ring_element(src, 3);
        prop_assert_eq!(
            a.mul(&b).unwrap().embed(dst).unwrap(),
            a.embed(dst).unwrap().mul(&b.embed(dst).unwrap()).unwrap()
        );
        prop_assert_eq!(a.delta().embed(dst).unwrap(), a.embed(dst).unwrap().delta());
    }

    #[test]
    fn bracket_skew_symmetry_on_elements(
        seed in any::<u64>(),
        i in 0usize..8,
        j in 0usize..8,
        mi in 0u32..2,
        mj in 0u32..2,
    ) {
        let table = build_n4();
        let spec = RingSpec::Laurent;
        let mut s = Sampler::from_seed(seed);
        let a = ConfElement::term(i, mi, s.nonzero_ring_element(spec, 2));
        let b = ConfElement::term(j, mj, s.nonzero_ring_element(spec, 2));
        let lhs = lambda_bracket(&table, &a, &b).unwrap();
        let rhs = lambda_bracket(&table, &b, &a)
            .unwrap()
            .substitute_minus_lambda_dhat()
            .map(|e| e.scale_scalar(&-table.basis().pair_sign(i, j)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_sesquilinearity_on_elements(seed in any::<u64>(), i in 0usize..8, j in 0usize..8) {
        let table = build_n4();
        let spec = RingSpec::Laurent;
        let mut s = Sampler::from_seed(seed);
        let a = ConfElement::term(i, 0, s.nonzero_ring_element(spec, 2));
        let b = ConfElement::term(j, 0, s.nonzero_ring_element(spec, 2));
        // [dhat(a) lam b] = -lam [a lam b]
        let lhs = lambda_bracket(&table, &a.apply_dhat(), &b).unwrap();
        let base = lambda_bracket(&table, &a, &b).unwrap();
        let mut expect = LambdaPoly::zero(spec);
        for (n, e) in base.coeffs() {
            expect.insert(n + 1, e.neg());
        }
        prop_assert_eq!(lhs, expect);
        // [a lam dhat(b)] = (lam + dhat) [a lam b]
        let lhs = lambda_bracket(&table, &a, &b.apply_dhat()).unwrap();
        let mut expect = LambdaPoly::zero(spec);
        for (n, e) in base.coeffs() {
            expect.insert(n + 1, e.clone());
            expect.insert(n, e.apply_dhat());
        }
        prop_assert_eq!(lhs, expect);
    }

    #[test]
    fn dagger_laws(seed in any::<u64>()) {
        let spec = RingSpec::Laurent;
        let mut s = Sampler::from_seed(seed);
        let m = s.mat2(spec, 2);
        let n = s.mat2(spec, 2);
        prop_assert_eq!(m.dagger().dagger(), m.clone());
        prop_assert_eq!(m.mul(&n).unwrap().dagger(), n.dagger().mul(&m.dagger()).unwrap().neg());
        let mm = m.mul(&m.dagger()).unwrap();
        let expect = confalg::n4::Mat2::ring_scalar_mat(&m.det().neg());
        prop_assert_eq!(mm, expect);
    }

    #[test]
    fn ltg_encode_decode_round_trip(seed in any::<u64>()) {
        for spec in [RingSpec::Const, RingSpec::Laurent, RingSpec::Puiseux(2), RingSpec::Trunc(4)] {
            let mut s = Sampler::from_seed(seed);
            let v = s.ltg(spec, 2);
            let back = LtgElement::decode(&v.encode()).unwrap();
            prop_assert_eq!(back.l, v.l);
            prop_assert_eq!(back.x, v.x);
            prop_assert_eq!(back.m, v.m);
        }
    }

    #[test]
    fn scalar_and_ring_literals_round_trip(a in small_scalar(), seed in any::<u64>()) {
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
        for spec in [RingSpec::Laurent, RingSpec::Puiseux(3), RingSpec::Trunc(5)] {
            let mut s = Sampler::from_seed(seed);
            let r = s.ring_element(spec, 4);
            prop_assert_eq!(parse_ring_element(spec, &r.to_string()).unwrap(), r);
        }
    }

    #[test]
    fn conf_element_render_parse_round_trip(seed in any::<u64>()) {
        let table = build_n4();
        let spec = RingSpec::Laurent;
        let mut s = Sampler::from_seed(seed);
        // d-power zero keeps the rendering inside the literal grammar
        let e = s.conf_element(8, spec, 0, 3);
        let text = render_conf_element(table.basis(), &e, false);
        prop_assert_eq!(parse_conf_element(table.basis(), spec, &text).unwrap(), e.clone());
        let ascii = render_conf_element(table.basis(), &e, true);
        prop_assert_eq!(parse_conf_element(table.basis(), spec, &ascii).unwrap(), e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn theta_functoriality_sampled(seed in any::<u64>()) {
        let spec = RingSpec::Laurent;
        let mut s = Sampler::from_seed(seed);
        let p1 = s.sl2_pair(spec, 2);
        let p2 = s.sl2_pair(spec, 2);
        let lhs = theta(&p1.mul(&p2).unwrap()).unwrap();
        let rhs = theta(&p1).unwrap().compose(&theta(&p2).unwrap()).unwrap();
        prop_assert_eq!(lhs.images(), rhs.images());
    }

    #[test]
    fn theta_preserves_brackets_on_sampled_generator_pairs(
        seed in any::<u64>(),
        i in 0usize..8,
        j in 0usize..8,
    ) {
        let table = build_n4();
        let spec = RingSpec::Laurent;
        let mut s = Sampler::from_seed(seed);
        let phi = theta(&s.sl2_pair(spec, 2)).unwrap();
        let a = ConfElement::generator(i, spec);
        let b = ConfElement::generator(j, spec);
        let lhs = lambda_bracket(&table, &phi.apply(&a).unwrap(), &phi.apply(&b).unwrap()).unwrap();
        let rhs = phi.apply_poly(&lambda_bracket(&table, &a, &b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
