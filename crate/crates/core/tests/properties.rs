use proptest::prelude::*;

use waring_core::apolarity::{claim_ideals, verify_claim_identity, CatalecticantMatrix};
use waring_core::decompose::{decompose_form, verify_decomposition};
use waring_core::exact::{
    poly_pow_linear, rat, rank, solve_exact, LinearSystem, Polynomial, Rational, SolveError,
};
use waring_core::forms::{
    apply_differential, ci_point_ideal, parse_form, perp_generators, CoprimeForm, Monomial, Variable,
};
use waring_core::rank::rank_monomial;
use waring_core::serial;
use waring_core::CyclotomicNumber;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| *r != rat(0, 1))
}

fn cyclotomic() -> impl Strategy<Value = CyclotomicNumber> {
    (1u32..=12).prop_flat_map(|order| {
        let phi = waring_core::exact::euler_phi(order) as usize;
        prop::collection::vec(small_rational(), phi)
            .prop_map(move |coeffs| CyclotomicNumber::from_coeffs(order, coeffs))
    })
}

fn exponents(max_vars: usize, max_exp: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1..=max_exp, 1..=max_vars)
}

/// A coprime form with up to three monomials of a common degree on
/// disjoint variables, with shuffled variable names.
fn coprime_form() -> impl Strategy<Value = CoprimeForm> {
    (1u32..=4, 1usize..=3)
        .prop_flat_map(|(d, r)| {
            let blocks = prop::collection::vec(prop::collection::vec(1u32..=d, 1..=d as usize), r);
            let coeffs = prop::collection::vec(nonzero_rational(), r);
            (Just(d), blocks, coeffs, any::<u64>())
        })
        .prop_map(|(d, blocks, coeffs, salt)| {
            let mut next = 1;
            let mut terms = Vec::new();
            for (parts, c) in blocks.into_iter().zip(coeffs) {
                // turn arbitrary parts into a composition of d
                let mut exps = Vec::new();
                let mut left = d;
                for p in parts {
                    if left == 0 {
                        break;
                    }
                    let e = p.min(left);
                    exps.push(e);
                    left -= e;
                }
                if left > 0 {
                    *exps.last_mut().unwrap() += left;
                }
                let factors: Vec<(Variable, u32)> = exps
                    .iter()
                    .map(|&e| {
                        let idx = (next as u64 * 7 + salt % 5) as u32;
                        next += 1;
                        (Variable::x(idx), e)
                    })
                    .collect();
                terms.push((c, Monomial::new(factors).unwrap()));
            }
            CoprimeForm::new(terms).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert_eq!(&a * &inv, CyclotomicNumber::one_in(1));
        }
    }

    #[test]
    fn roots_of_unity(n in 1u32..=24, k in 0i64..48) {
        let z = CyclotomicNumber::root_of_unity(n, k);
        prop_assert_eq!(z.pow(n), CyclotomicNumber::one_in(1));
        let is_one = z == CyclotomicNumber::one_in(1);
        prop_assert_eq!(is_one, k % n as i64 == 0);
        prop_assert_eq!(CyclotomicNumber::root_of_unity(n, k + n as i64), z);
    }

    #[test]
    fn power_of_linear_form_evaluates_pointwise(
        coeffs in prop::collection::vec(small_rational(), 1..=4),
        point in prop::collection::vec(small_rational(), 4),
        d in 0u32..=6,
    ) {
        let p = poly_pow_linear(&coeffs, d);
        let x = &point[..coeffs.len()];
        let linear: Rational = coeffs.iter().zip(x).map(|(c, v)| c * v).sum();
        prop_assert_eq!(p.eval(x), num_traits::pow(linear, d as usize));
    }

    #[test]
    fn solutions_reproduce_the_rhs(
        rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3..=5),
        rhs in prop::collection::vec(-5i64..=5, 5),
    ) {
        let matrix: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect();
        let b: Vec<Rational> = rhs[..matrix.len()].iter().map(|&x| rat(x, 1)).collect();
        let system = LinearSystem::new(matrix.clone(), b.clone()).unwrap();
        match solve_exact(&system) {
            Ok(x) => prop_assert_eq!(system.apply(&x), b),
            Err(SolveError::Underdetermined { rank: r, cols }) => {
                prop_assert_eq!(r, rank(&matrix));
                prop_assert!(r < cols);
            }
            Err(SolveError::Inconsistent { .. }) => {
                let mut augmented = matrix.clone();
                for (row, v) in augmented.iter_mut().zip(&b) {
                    row.push(v.clone());
                }
                prop_assert!(rank(&augmented) > rank(&matrix));
            }
            Err(e) => prop_assert!(false, "unexpected {e:?}"),
        }
    }

    #[test]
    fn point_ideal_and_perp_generators_annihilate(exps in exponents(4, 5)) {
        let m = Monomial::from_exponents(&exps).unwrap();
        let target: Polynomial<Rational> = m.to_polynomial();
        for g in ci_point_ideal(&m) {
            prop_assert!(apply_differential(&g, &target).is_zero());
        }
        for g in perp_generators(&m).generators() {
            let op = Polynomial::monomial(g.clone(), rat(1, 1));
            prop_assert!(apply_differential(&op, &target).is_zero());
        }
    }

    #[test]
    fn render_then_parse_is_identity(form in coprime_form()) {
        prop_assert_eq!(parse_form(&form.to_string()).unwrap(), form);
    }

    #[test]
    fn form_json_round_trip(form in coprime_form()) {
        let text = serial::to_json_string(&serial::form_to_json(&form));
        prop_assert_eq!(serial::form_from_str(&text).unwrap(), form);
    }

    #[test]
    fn rank_is_permutation_invariant(mut exps in exponents(5, 6), rot in 0usize..5) {
        let base = rank_monomial(&Monomial::from_exponents(&exps).unwrap());
        let len = exps.len();
        exps.rotate_left(rot % len);
        prop_assert_eq!(rank_monomial(&Monomial::from_exponents(&exps).unwrap()), base);
        exps.reverse();
        prop_assert_eq!(rank_monomial(&Monomial::from_exponents(&exps).unwrap()), base);
    }

    #[test]
    fn catalecticant_is_symmetric(exps in exponents(3, 3), t in 0u32..=9) {
        let m = Monomial::from_exponents(&exps).unwrap();
        let d = m.degree();
        let t = t.min(d);
        let f: Polynomial<Rational> = m.to_polynomial();
        prop_assert_eq!(CatalecticantMatrix::new(&f, t).rank(), CatalecticantMatrix::new(&f, d - t).rank());
    }

    #[test]
    fn claim_identity_holds(
        blocks in prop::collection::vec(prop::collection::vec(1u32..=4, 1..=3), 1..=3),
    ) {
        let report = verify_claim_identity(&claim_ideals(&blocks), None).unwrap();
        prop_assert!(report.passed(), "{:?}", report);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decompositions_verify_and_round_trip(form in coprime_form()) {
        let d = decompose_form(&form).unwrap();
        let report = verify_decomposition(&form, &d);
        prop_assert!(report.passed(), "{}", report);
        let text = serial::to_json_string(&serial::decomposition_to_json(&d));
        prop_assert_eq!(serial::decomposition_from_str(&text).unwrap(), d);
    }
}
