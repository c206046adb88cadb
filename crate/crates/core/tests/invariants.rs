use lieconf::conformal::{jacobi_residual, ConformalAlgebra, Element};
use lieconf::families::{k_conformal, WFamily};
use lieconf::grassmann::{GrassmannElement, Monomial};
use lieconf::modes::build_modes;
use lieconf::parity::Parity;
use lieconf::scalar::int;
use proptest::prelude::*;

const N: usize = 4;

fn grassmann() -> impl Strategy<Value = GrassmannElement> {
    prop::collection::vec((0u32..1 << N, -3i64..=3), 0..6).prop_map(|terms| {
        let mut g = GrassmannElement::zero(N);
        for (m, c) in terms {
            g.add_term(Monomial(m), int(c));
        }
        g
    })
}

fn homogeneous(parity: Parity) -> impl Strategy<Value = GrassmannElement> {
    prop::collection::vec((0u32..1 << N, -3i64..=3), 0..6).prop_map(move |terms| {
        let mut g = GrassmannElement::zero(N);
        for (m, c) in terms {
            if Monomial(m).parity() == parity {
                g.add_term(Monomial(m), int(c));
            }
        }
        g
    })
}

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

/// A homogeneous element of `alg` with small coefficients and ∂-powers.
fn element(alg: &ConformalAlgebra, p: Parity) -> impl Strategy<Value = Element> {
    let gens: Vec<usize> = (0..alg.rank()).filter(|&k| alg.parity(k) == p).collect();
    prop::collection::vec((prop::sample::select(gens), 0u32..3, -2i64..=2), 1..4)
        .prop_map(|terms| Element::from_terms(terms.into_iter().map(|(k, t, c)| ((k, t), int(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grassmann_is_associative(a in grassmann(), b in grassmann(), c in grassmann()) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn grassmann_is_supercommutative(
        (pa, pb, a, b) in (parity(), parity()).prop_flat_map(|(pa, pb)| {
            (Just(pa), Just(pb), homogeneous(pa), homogeneous(pb))
        })
    ) {
        let k = if pa.is_odd() && pb.is_odd() { int(-1) } else { int(1) };
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap().scale(&k));
    }

    #[test]
    fn odd_partial_is_a_superderivation(
        (pa, a) in parity().prop_flat_map(|p| (Just(p), homogeneous(p))),
        b in grassmann(),
        i in 1..=N,
    ) {
        let lhs = a.mul(&b).unwrap().odd_partial(i).unwrap();
        let rhs = a
            .odd_partial(i)
            .unwrap()
            .mul(&b)
            .unwrap()
            .add(&a.mul(&b.odd_partial(i).unwrap()).unwrap().scale(&pa.sign()))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

fn check_skew_and_jacobi(alg: &ConformalAlgebra, cases: u32) {
    let strat = (parity(), parity(), parity()).prop_flat_map(|(p, q, r)| {
        (
            Just((p, q)),
            element(alg, p),
            element(alg, q),
            element(alg, r),
        )
    });
    let mut runner = proptest::test_runner::TestRunner::new(ProptestConfig::with_cases(cases));
    runner
        .run(&strat, |((p, q), a, b, c)| {
            let ab = alg.bracket(&a, &b);
            let ba = alg.bracket(&b, &a);
            let k = if p.is_odd() && q.is_odd() {
                int(1)
            } else {
                int(-1)
            };
            prop_assert_eq!(ba, ab.substitute_neg().scale(&k));
            prop_assert!(jacobi_residual(alg, &a, &b, &c).is_zero());
            // sesquilinearity in both slots
            prop_assert_eq!(alg.bracket(&a.partial(1), &b), ab.sesqui(1, 0));
            prop_assert_eq!(alg.bracket(&a, &b.partial(1)), ab.sesqui(0, 1));
            Ok(())
        })
        .unwrap();
}

#[test]
fn random_elements_w2() {
    let w = WFamily::new(2).unwrap();
    check_skew_and_jacobi(&w.algebra, 48);
}

#[test]
fn random_elements_k3() {
    check_skew_and_jacobi(&k_conformal(3).unwrap(), 48);
}

#[test]
fn modes_of_derivative() {
    // (∂a)_p = −p a_{p−1}
    let alg = k_conformal(2).unwrap();
    let modes = build_modes(&alg);
    let strat = (parity().prop_flat_map(|p| element(&alg, p)), 0u32..6);
    let config = ProptestConfig {
        cases: 100,
        rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha,
        ..ProptestConfig::default()
    };
    let mut runner = proptest::test_runner::TestRunner::new_with_rng(
        config,
        proptest::test_runner::TestRng::deterministic_rng(
            proptest::test_runner::RngAlgorithm::ChaCha,
        ),
    );
    runner
        .run(&strat, |(x, p)| {
            let lhs = modes.modes_of(&x.partial(1), p);
            if p == 0 {
                prop_assert!(lhs.is_zero());
            } else {
                let rhs = modes.modes_of(&x, p - 1).scale(&int(-(p as i64)));
                prop_assert_eq!(lhs, rhs);
            }
            Ok(())
        })
        .unwrap();
}
