use proptest::prelude::*;

use liaison::algebra::{parse_polynomial, Monomial, PolyMatrix, Polynomial, Ring, RingSpec, TermOrderSpec};
use liaison::fsing::{fedder_fpure, monomial_lct, nu_table};
use liaison::groebner::{Budget, GroebnerBasis, IdealHandle, Session};
use liaison::link::{a_invariant_universal_link, AInvariantInput};
use liaison::Error;

fn ring3(p: u64) -> Ring {
    RingSpec::new(&["x", "y", "z"], p).unwrap()
}

type Terms = Vec<(Vec<u32>, i64)>;

fn terms(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, 3), -4i64..=4), 1..=max_terms)
}

fn poly(r: &Ring, t: &Terms) -> Polynomial {
    Polynomial::from_terms(r, t.iter().map(|(e, c)| (Monomial::new(e.clone()), r.field().from_i64(*c))).collect())
}

fn monomial_gens(r: &Ring, exps: &[Vec<u32>]) -> Vec<Polynomial> {
    exps.iter()
        .filter(|e| e.iter().any(|&x| x > 0))
        .map(|e| Polynomial::monomial(r, Monomial::new(e.clone()), r.field().one()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn display_parse_round_trip(t in terms(4, 5), p in prop::sample::select(vec![0u64, 2, 3, 7])) {
        let r = ring3(p);
        let f = poly(&r, &t);
        prop_assert_eq!(parse_polynomial(&f.to_string(), &r).unwrap(), f);
    }

    #[test]
    fn ring_axioms(a in terms(3, 4), b in terms(3, 4), c in terms(3, 4)) {
        let r = ring3(0);
        let (a, b, c) = (poly(&r, &a), poly(&r, &b), poly(&r, &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).divide_exact(&b).unwrap(), a);
        }
    }

    #[test]
    fn reduced_basis_is_independent_of_generator_order(
        gens in prop::collection::vec(terms(2, 3), 1..=3),
        lex in any::<bool>(),
    ) {
        let r = ring3(5);
        let order = if lex { TermOrderSpec::lex_natural(3) } else { TermOrderSpec::degrevlex_natural(3) };
        let mut polys: Vec<Polynomial> = gens.iter().map(|t| poly(&r, t)).filter(|f| !f.is_zero()).collect();
        prop_assume!(!polys.is_empty());
        let s = Session::new(Budget { max_degree: 40, ..Budget::default() });
        let first = match GroebnerBasis::compute(&r, &polys, &order, &s) {
            Err(Error::BudgetExceeded(_)) => return Err(TestCaseError::reject("over budget")),
            other => other.unwrap(),
        };
        polys.rotate_left(1);
        let second = GroebnerBasis::compute(&r, &polys, &order, &s).unwrap();
        prop_assert_eq!(first.elements(), second.elements());
        for f in &polys {
            prop_assert!(first.contains(f).unwrap());
        }
    }

    #[test]
    fn intersection_lies_in_both(a in prop::collection::vec(prop::collection::vec(0u32..=2, 3), 1..=3),
                                 b in prop::collection::vec(prop::collection::vec(0u32..=2, 3), 1..=3)) {
        let r = ring3(0);
        let (ga, gb) = (monomial_gens(&r, &a), monomial_gens(&r, &b));
        prop_assume!(!ga.is_empty() && !gb.is_empty());
        let s = Session::default();
        let (i, j) = (IdealHandle::new(&r, ga).unwrap(), IdealHandle::new(&r, gb).unwrap());
        let both = i.intersect(&j, &s).unwrap();
        prop_assert!(i.contains(&both, &s).unwrap());
        prop_assert!(j.contains(&both, &s).unwrap());
        let quotient = i.colon(&j, &s).unwrap();
        prop_assert!(quotient.contains(&i, &s).unwrap());
    }

    #[test]
    fn nu_tables_are_monotone(exps in prop::collection::vec(prop::collection::vec(0u32..=2, 3), 1..=3)) {
        let r = ring3(2);
        let gens = monomial_gens(&r, &exps);
        prop_assume!(!gens.is_empty());
        let i = IdealHandle::new(&r, gens).unwrap();
        let t = nu_table(&i, 2, 2, &Session::default()).unwrap();
        prop_assert!(t.is_monotone());
        prop_assert!(t.within_range());
    }

    #[test]
    fn squarefree_monomial_ideals_are_f_pure(exps in prop::collection::vec(prop::collection::vec(0u32..=1, 3), 1..=4),
                                             p in prop::sample::select(vec![2u64, 3])) {
        let r = ring3(p);
        let gens = monomial_gens(&r, &exps);
        prop_assume!(!gens.is_empty());
        let i = IdealHandle::new(&r, gens).unwrap();
        prop_assert!(fedder_fpure(&i, p, &Session::default()).unwrap().f_pure);
    }

    #[test]
    fn lct_scales_inversely_with_powers(a in 1u32..=3, b in 1u32..=3, k in 1u32..=3) {
        let r = RingSpec::new(&["x", "y"], 0).unwrap();
        let base = IdealHandle::new(&r, monomial_gens(&r, &[vec![a, 0], vec![0, b]])).unwrap();
        let scaled = IdealHandle::new(&r, monomial_gens(&r, &[vec![k * a, 0], vec![0, k * b]])).unwrap();
        let one = monomial_lct(&base).unwrap().value;
        let other = monomial_lct(&scaled).unwrap().value;
        prop_assert_eq!(other * num_rational::BigRational::from_integer((k as i64).into()), one);
    }

    #[test]
    fn a_invariant_is_affine(n in 1i64..500, d in 1i64..40, g_frac in 0.0f64..1.0) {
        let g = 1 + ((n - 1) as f64 * g_frac) as i64;
        let a = |n, d, g| a_invariant_universal_link(AInvariantInput { n, d, g }).unwrap();
        prop_assert_eq!(a(n + 1, d, g), a(n, d, g) - 1);
        prop_assert_eq!(a(n, d + 1, g) - a(n, d, g), g - 1);
    }

    #[test]
    fn pfaffian_squares_to_determinant(half in 1usize..=3, vals in prop::collection::vec(-3i64..=3, 15)) {
        let k = 2 * half;
        let r = RingSpec::new(&["t"], 0).unwrap();
        let mut upper = vals.into_iter();
        let mut a = vec![vec![0i64; k]; k];
        for (i, j) in (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))) {
                a[i][j] = upper.next().unwrap();
                a[j][i] = -a[i][j];
        }
        let m = PolyMatrix::from_fn(&r, k, k, |i, j| Polynomial::from_i64(&r, a[i][j]));
        let pf = m.pfaffian(None).unwrap();
        prop_assert_eq!(&pf * &pf, m.determinant(None).unwrap());
    }
}
