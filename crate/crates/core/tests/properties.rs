use num_bigint::BigInt;
use proptest::prelude::*;
use realk::bcom::{restrict_to_ku, BcomElement, BcomMonomial, KuElement, KuMonomial};
use realk::grading::{direct_sum, shift, with_multiplicity};
use realk::hz::{postnikov, HZElement, HZMonomial};
use realk::kr::{homogeneous_degree, KRElement, KRMonomial};
use realk::{FinAbGroup, GradedAbGroup};

fn kr_terms(max_exp: u32) -> impl Strategy<Value = Vec<(i64, KRMonomial)>> {
    prop::collection::vec(
        (-5i64..=5, 0..=max_exp, 0u32..=1, 0..=max_exp, 0..=max_exp)
            .prop_map(|(c, a, w, u, v)| (c, KRMonomial::new(a, w, u, v))),
        1..=3,
    )
}

fn kr_elem() -> impl Strategy<Value = KRElement> {
    kr_terms(6).prop_map(|ts| {
        let mut x = KRElement::zero();
        for (c, m) in ts {
            if let Some((c, m)) = KRMonomial::reduce(BigInt::from(c), m) {
                x.add_term(c, m);
            }
        }
        x
    })
}

fn kr_monomial() -> impl Strategy<Value = KRMonomial> {
    (0u32..=6, 0u32..=1, 0u32..=6, 0u32..=6)
        .prop_map(|(a, w, u, v)| KRMonomial::new(a, w, u, v))
        .prop_filter("canonical", |m| m.is_canonical())
}

fn hz_elem() -> impl Strategy<Value = HZElement> {
    prop::collection::vec((-5i64..=5, 0u32..=6, 0u32..=6), 1..=3).prop_map(|ts| {
        let mut x = HZElement::zero();
        for (c, a, u) in ts {
            x.add_term(BigInt::from(c), HZMonomial::new(a, u));
        }
        x
    })
}

fn ku_elem() -> impl Strategy<Value = KuElement> {
    prop::collection::vec((-5i64..=5, 0u32..=6, 0u32..=3), 1..=3).prop_map(|ts| {
        let mut x = KuElement::zero();
        for (c, y, v) in ts {
            x.add_term(BigInt::from(c), KuMonomial::new(y, v));
        }
        x
    })
}

fn bcom_elem() -> impl Strategy<Value = BcomElement> {
    prop::collection::vec((kr_terms(4), 0u32..=6), 1..=2).prop_map(|parts| {
        let mut x = BcomElement::zero();
        for (ts, i) in parts {
            for (c, m) in ts {
                if let Some((c, m)) = KRMonomial::reduce(BigInt::from(c), m) {
                    x.add_term(c, BcomMonomial::new(m, i));
                }
            }
        }
        x
    })
}

fn graded() -> impl Strategy<Value = GradedAbGroup> {
    prop::collection::vec((-6i64..=6, 0u64..=3, 0u64..=3), 0..=4).prop_map(|ts| {
        let parts: Vec<GradedAbGroup> = ts
            .into_iter()
            .map(|(d, f, t)| GradedAbGroup::concentrated(d, FinAbGroup::new(f, t)))
            .collect();
        direct_sum(parts.iter())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kr_ring_laws(x in kr_elem(), y in kr_elem(), z in kr_elem()) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
    }

    #[test]
    fn hz_ring_laws(x in hz_elem(), y in hz_elem(), z in hz_elem()) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
    }

    #[test]
    fn ku_ring_laws(x in ku_elem(), y in ku_elem(), z in ku_elem()) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
    }

    #[test]
    fn bcom_ring_laws(x in bcom_elem(), y in bcom_elem(), z in bcom_elem()) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
    }

    #[test]
    fn postnikov_is_multiplicative(x in kr_elem(), y in kr_elem()) {
        prop_assert_eq!(postnikov(&x.mul(&y)), postnikov(&x).mul(&postnikov(&y)));
        prop_assert_eq!(postnikov(&x.add(&y)), postnikov(&x).add(&postnikov(&y)));
    }

    #[test]
    fn canonical_form_is_stable(x in kr_elem()) {
        prop_assert!(x.terms().all(|(m, _)| m.is_canonical()));
        let again: KRElement = x.to_string().parse().unwrap();
        prop_assert_eq!(again, x);
    }

    #[test]
    fn kr_degrees_add(m in kr_monomial(), n in kr_monomial()) {
        let p = KRElement::monomial(m).mul(&KRElement::monomial(n));
        match homogeneous_degree(&p) {
            Some(Some(d)) => prop_assert_eq!(d, m.degree() + n.degree()),
            Some(None) => {}
            None => prop_assert!(false, "inhomogeneous product"),
        }
    }

    #[test]
    fn bcom_products_stay_homogeneous(m in kr_monomial(), n in kr_monomial(), k in 0u32..=6, l in 0u32..=6) {
        let x = BcomElement::monomial(BcomMonomial::new(m, k));
        let y = BcomElement::monomial(BcomMonomial::new(n, l));
        let d = BcomMonomial::new(m, k).degree() + BcomMonomial::new(n, l).degree();
        prop_assert!(x.mul(&y).terms().all(|(t, _)| t.degree() == d));
    }

    #[test]
    fn shift_composes(g in graded(), a in -5i64..=5, b in -5i64..=5) {
        prop_assert_eq!(shift(&shift(&g, a), b), shift(&g, a + b));
    }

    #[test]
    fn direct_sum_laws(g in graded(), h in graded(), k in graded(), c in 0u64..=4) {
        prop_assert_eq!(direct_sum([&g, &h]), direct_sum([&h, &g]));
        let gh = direct_sum([&g, &h]);
        let hk = direct_sum([&h, &k]);
        prop_assert_eq!(direct_sum([&gh, &k]), direct_sum([&g, &hk]));
        prop_assert_eq!(
            with_multiplicity(&gh, c),
            direct_sum([&with_multiplicity(&g, c), &with_multiplicity(&h, c)])
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn restriction_is_multiplicative(x in bcom_elem(), y in bcom_elem()) {
        prop_assert_eq!(restrict_to_ku(&x.mul(&y)), restrict_to_ku(&x).mul(&restrict_to_ku(&y)));
    }
}
