//! Property tests over randomly generated monomials and words.

use proptest::prelude::*;

use qchar_core::braid::{Braid, MonomialOrder};
use qchar_core::cartan::{CartanData, TypeLabel};
use qchar_core::lweight::{embed_y, omega_involution, sigma, PsiMonomial};
use qchar_core::yring::{factor_in_a, make_a, YMonomial, YPolynomial};

fn b2() -> CartanData {
    CartanData::new(TypeLabel::B, 2).unwrap()
}

fn g2() -> CartanData {
    CartanData::new(TypeLabel::G, 2).unwrap()
}

prop_compose! {
    fn arb_var()(i in 1usize..=2, r in -5i32..=5, e in prop::sample::select(vec![-3i32, -2, -1, 1, 2, 3])) -> (usize, i32, i32) {
        (i, r, e)
    }
}

prop_compose! {
    fn arb_monomial()(vars in prop::collection::vec(arb_var(), 0..5)) -> YMonomial {
        let mut m = YMonomial::one();
        for (i, r, e) in vars {
            m.mul_var(i, r, e);
        }
        m
    }
}

prop_compose! {
    fn arb_polynomial()(terms in prop::collection::vec((arb_monomial(), -4i64..=4), 0..6)) -> YPolynomial {
        let mut p = YPolynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }
}

prop_compose! {
    fn arb_word()(word in prop::collection::vec(1usize..=2, 0..8)) -> Vec<usize> {
        word
    }
}

proptest! {
    #[test]
    fn monomial_json_round_trip(m in arb_monomial()) {
        let s = serde_json::to_string(&m).unwrap();
        let back: YMonomial = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn polynomial_json_round_trip(p in arb_polynomial()) {
        let s = serde_json::to_string(&p).unwrap();
        let back: YPolynomial = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(&back, &p);
        // serialization is deterministic
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn factor_recovers_planted_root_exponents(
        m in arb_monomial(),
        i in 1usize..=2,
        r in -3i32..=3,
        k in prop::sample::select(vec![-3i32, -1, 1, 2]),
    ) {
        let cd = b2();
        let shifted = m.mul(&make_a(&cd, i, r).pow(k));
        let e = factor_in_a(&cd, &shifted, &m);
        prop_assert_eq!(e, Some([((i, r), k)].into_iter().collect()));
    }

    #[test]
    fn braid_generators_invert(m in arb_monomial(), i in 1usize..=2) {
        let cd = g2();
        let braid = Braid::new(&cd);
        prop_assert_eq!(braid.t_inv(i, &braid.t(i, &m)), m.clone());
        prop_assert_eq!(braid.t(i, &braid.t_inv(i, &m)), m);
    }

    #[test]
    fn braid_intertwines_weights(m in arb_monomial(), word in arb_word()) {
        let cd = b2();
        let braid = Braid::new(&cd);
        let w = cd.reduce_word(&word).unwrap();
        prop_assert_eq!(braid.t_w(&w, &m).weight(&cd), w.act(&m.weight(&cd)));
    }

    #[test]
    fn braid_is_multiplicative(m in arb_monomial(), n in arb_monomial(), word in arb_word()) {
        let cd = b2();
        let braid = Braid::new(&cd);
        let w = cd.reduce_word(&word).unwrap();
        prop_assert_eq!(
            braid.t_w(&w, &m.mul(&n)),
            braid.t_w(&w, &m).mul(&braid.t_w(&w, &n))
        );
    }

    #[test]
    fn twisted_descent_is_strictly_less(
        m in arb_monomial(),
        word in arb_word(),
        i in 1usize..=2,
        r in -3i32..=3,
    ) {
        let cd = b2();
        let braid = Braid::new(&cd);
        let w = cd.reduce_word(&word).unwrap();
        let lower = m.mul(&braid.twisted_root(&w, i, r).value.inverse());
        prop_assert_eq!(braid.compare_w(&lower, &m, &w), MonomialOrder::Less);
        prop_assert_eq!(braid.compare_w(&m, &lower, &w), MonomialOrder::Greater);
    }

    #[test]
    fn embedding_is_multiplicative(m in arb_monomial(), n in arb_monomial()) {
        let cd = b2();
        prop_assert_eq!(
            embed_y(&cd, &m.mul(&n)),
            embed_y(&cd, &m).mul(&embed_y(&cd, &n))
        );
    }

    #[test]
    fn sigma_and_omega_are_involutions(m in arb_monomial()) {
        let cd = g2();
        let p = embed_y(&cd, &m);
        prop_assert_eq!(sigma(&sigma(&p)), p.clone());
        prop_assert_eq!(omega_involution(&omega_involution(&p)), p);
    }

    #[test]
    fn psi_json_round_trip(m in arb_monomial()) {
        let cd = b2();
        let p = embed_y(&cd, &m);
        let s = serde_json::to_string(&p).unwrap();
        let back: PsiMonomial = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, p);
    }
}
