use std::collections::HashMap;

use hermrc::exactalg::{rat, Family, Monomial, MultiPoly, Rational, VarId};
use hermrc::fourier::{apply_bracket, evaluate_q_at, is_cusp_supported, FourierSeries, HermitianIndex};
use hermrc::generators::{q_generators, swap_w_z};
use hermrc::laplacian::{laplace_total, OperatorContext};
use hermrc::solver::{
    assemble_bracket, classical_rc_coefficients, recurrence_relation, solve_coefficients, BracketCoefficients,
    IndexTuple, Normalization,
};
use hermrc::verify::{check_bridge_identity, check_harmonic, check_pluriharmonic};
use proptest::prelude::*;

fn var() -> impl Strategy<Value = VarId> {
    (prop_oneof![Just(Family::W), Just(Family::Z)], 1usize..=2, 1usize..=2).prop_map(|(f, r, c)| VarId::new(f, r, c))
}

fn coef() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    let mono = prop::collection::vec((var(), 1u32..=2), 0..=3).prop_map(Monomial::from_pairs);
    prop::collection::vec((mono, coef()), 0..=4).prop_map(MultiPoly::from_terms)
}

fn point() -> impl Strategy<Value = HashMap<VarId, Rational>> {
    prop::collection::vec(coef(), 8).prop_map(|vals| {
        let mut pt = HashMap::new();
        let mut it = vals.into_iter();
        for f in [Family::W, Family::Z] {
            for r in 1..=2 {
                for c in 1..=2 {
                    pt.insert(VarId::new(f, r, c), it.next().unwrap());
                }
            }
        }
        pt
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MultiPoly::one(), a.clone());
    }

    #[test]
    fn leibniz_rule(a in poly(), b in poly(), v in var()) {
        let lhs = (&a * &b).derivative(v);
        let rhs = &(&a.derivative(v) * &b) + &(&a * &b.derivative(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitute_then_evaluate(p in poly(), images in prop::collection::vec(poly(), 8), pt in point()) {
        let mut map = HashMap::new();
        let mut it = images.into_iter();
        for f in [Family::W, Family::Z] {
            for r in 1..=2 {
                for c in 1..=2 {
                    map.insert(VarId::new(f, r, c), it.next().unwrap());
                }
            }
        }
        let direct = p.substitute(&map).evaluate_rational(&pt).unwrap();
        let inner: HashMap<VarId, Rational> =
            map.iter().map(|(k, q)| (*k, q.evaluate_rational(&pt).unwrap())).collect();
        prop_assert_eq!(direct, p.evaluate_rational(&inner).unwrap());
    }

    #[test]
    fn text_and_json_round_trip(p in poly()) {
        prop_assert_eq!(p.to_string().parse::<MultiPoly>().unwrap(), p.clone());
        prop_assert_eq!(MultiPoly::from_json_str(&p.to_json_string()).unwrap(), p);
    }

    #[test]
    fn bridge_identity_random(p in poly(), k1 in 2i64..=3, k2 in 2i64..=3) {
        prop_assert!(check_bridge_identity(&p, 2, k1, k2).unwrap().passed());
    }

    #[test]
    fn generator_evaluation_identity(pt in point()) {
        // det(W₀ + λZ₀) = Σ_a Q_a(W₀, Z₀) λ^a at λ = 0, 1, −1
        let g = q_generators(2).unwrap();
        let vals: Vec<Rational> = g.polys.iter().map(|q| q.evaluate_rational(&pt).unwrap()).collect();
        for lambda in [rat(0), rat(1), rat(-1), rat(3)] {
            let m = |r, c| &pt[&VarId::w(r, c)] + &lambda * &pt[&VarId::z(r, c)];
            let det = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
            let sum = vals.iter().enumerate().fold(rat(0), |acc, (a, q)| acc + q * lambda.pow(a as i32));
            prop_assert_eq!(det, sum);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solver_satisfies_relations(n in 1usize..=3, v in 0u32..=3, dk1 in 0i64..=3, k2 in 1i64..=6) {
        let k1 = n as i64 + dk1;
        let bc = solve_coefficients(n, v, k1, k2, Normalization::Unit).unwrap();
        prop_assert_eq!(bc.top(), rat(1));
        for alpha in IndexTuple::enumerate(n, v) {
            if let Some(rel) = recurrence_relation(&alpha, k1, k2) {
                prop_assert_eq!(rel.evaluate(|a| bc.get(a)), rat(0));
            }
        }
        let integral = bc.renormalize(Normalization::Integral);
        prop_assert!(integral.coeffs.values().all(|c| c.is_integer()));
        let back = BracketCoefficients::from_json_str(&integral.to_json_string()).unwrap();
        prop_assert_eq!(back, integral);
    }

    #[test]
    fn bracket_is_harmonic_and_pluriharmonic(v in 1u32..=2, dk1 in 0i64..=2, dk2 in 0i64..=2) {
        let (n, k1, k2) = (2usize, 2 + dk1, 2 + dk2);
        let bc = solve_coefficients(n, v, k1, k2, Normalization::Integral).unwrap();
        let q = assemble_bracket(&bc, &q_generators(n).unwrap()).unwrap();
        prop_assert!(laplace_total(&q, &OperatorContext::new(n, k1, k2).unwrap()).is_zero());
        prop_assert!(check_harmonic(&q, n, k1, k2).unwrap().passed());
        prop_assert!(check_pluriharmonic(&q, n, k1, k2).unwrap().passed());
    }

    #[test]
    fn swapped_weights_give_swapped_bracket(v in 1u32..=3, k1 in 1i64..=8, k2 in 1i64..=8) {
        // n = 1: Q_{k2,k1}(W,Z) is a multiple of Q_{k1,k2}(Z,W) with sign (−1)^v
        let g = q_generators(1).unwrap();
        let a = assemble_bracket(&solve_coefficients(1, v, k1, k2, Normalization::Unit).unwrap(), &g).unwrap();
        let b = assemble_bracket(&solve_coefficients(1, v, k2, k1, Normalization::Unit).unwrap(), &g).unwrap();
        let swapped = swap_w_z(&a);
        let zv = Monomial::from_pairs([(VarId::z(1, 1), v)]);
        let ratio = b.coefficient(&zv) / swapped.coefficient(&zv);
        prop_assert_eq!(swapped.scale(&ratio), b);
        prop_assert_eq!(ratio < rat(0), v % 2 == 1);
    }

    #[test]
    fn n1_convolution_agreement(
        a in prop::collection::vec(-50i64..=50, 1..=6),
        b in prop::collection::vec(-50i64..=50, 1..=6),
        v in 0u32..=3,
        k1 in 1i64..=8,
        k2 in 1i64..=8,
    ) {
        let fa = FourierSeries::from_q_expansion(&a.iter().map(|&x| rat(x)).collect::<Vec<_>>(), 1, k1);
        let fb = FourierSeries::from_q_expansion(&b.iter().map(|&x| rat(x)).collect::<Vec<_>>(), 1, k2);
        let bc = solve_coefficients(1, v, k1, k2, Normalization::Unit).unwrap();
        let g = apply_bracket(&fa, &fb, &bc).unwrap();
        let classical = classical_rc_coefficients(k1, k2, v);
        let top = a.len().min(b.len());
        let got = g.q_coefficients().unwrap();
        prop_assert_eq!(got.len(), top);
        for (m, c) in got.iter().enumerate() {
            let mut want = rat(0);
            for m1 in 0..=m {
                let weight = classical.iter().fold(rat(0), |acc, ((r, s), coef)| {
                    acc + coef * rat(m1 as i64).pow(*r as i32) * rat((m - m1) as i64).pow(*s as i32)
                });
                want += rat(a[m1]) * rat(b[m - m1]) * weight;
            }
            prop_assert_eq!(c, &want);
        }
        if v > 0 {
            prop_assert!(is_cusp_supported(&g));
        }
    }

    #[test]
    fn reality_and_support_law(entries in prop::collection::vec((0i64..=3, 0i64..=3, -2i64..=2, -2i64..=2, -5i64..=5), 1..=4)) {
        // 2x2 Hermitian PSD indices over Q(i) built as diagonally dominant matrices
        let d = 1;
        let mut f = FourierSeries::new(2, d, 3, hermrc::fourier::Truncation::Complete);
        for &(a, b, re, co, c) in &entries {
            let off = hermrc::exactalg::QuadFieldElement::new(rat(re), rat(co), d);
            let diag = |x: i64| hermrc::exactalg::QuadFieldElement::from_rational(rat(x + re.abs() + co.abs()), d);
            let h = HermitianIndex::new(d, vec![vec![diag(a), off.clone()], vec![off.conj(), diag(b)]]).unwrap();
            f.insert(h, hermrc::exactalg::QuadFieldElement::from_rational(rat(c), d)).unwrap();
        }
        let bc = solve_coefficients(2, 1, 3, 3, Normalization::Integral).unwrap();
        let q = assemble_bracket(&bc, &q_generators(2).unwrap()).unwrap();
        for (h1, _) in f.entries() {
            for (h2, _) in f.entries() {
                prop_assert!(evaluate_q_at(&q, h1, h2).unwrap().is_real());
            }
        }
        let g = apply_bracket(&f, &f, &bc).unwrap();
        for (h, _) in g.entries() {
            prop_assert!(h.is_psd());
            let found = f.entries().any(|(h1, _)| f.entries().any(|(h2, _)| &h1.add(h2) == h));
            prop_assert!(found);
        }
    }
}
