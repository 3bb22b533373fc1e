use folcohom::exterior::{contract, hodge_star, wedge, FramedMetric, MultiIndexForm};
use folcohom::format::{parse_expression, render_element, resolve_in_degree};
use folcohom::lichnerowicz::{
    cohomology, duality_check, random_closed_thetas, theta_contraction, twisted_differential, Sign, TwistingForm,
};
use folcohom::linalg::{adjoint_wrt, sylvester_signature, Matrix, SymmetricForm};
use folcohom::morphism::{induced_cohomology_map, FoliatedModelMap};
use folcohom::scalar::{frac, rat};
use folcohom::zoo;
use folcohom::{BasicComplex, FoliatedModel, Rational};
use num_traits::Zero;
use proptest::prelude::*;
use std::sync::OnceLock;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(small_rational(), rows * cols)
        .prop_map(move |v| Matrix::from_rows(v.chunks(cols.max(1)).take(rows).map(<[_]>::to_vec).collect()))
}

fn any_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))
}

fn square(n: usize) -> impl Strategy<Value = Matrix> {
    matrix(n, n)
}

struct Loaded {
    name: &'static str,
    model: FoliatedModel,
    basic: BasicComplex,
}

fn loaded() -> &'static [Loaded] {
    static CELL: OnceLock<Vec<Loaded>> = OnceLock::new();
    CELL.get_or_init(|| {
        zoo::all()
            .unwrap()
            .into_iter()
            .map(|e| {
                let basic = e.model.basic_subcomplex().unwrap();
                Loaded { name: e.name, model: e.model, basic }
            })
            .collect()
    })
}

fn model_and_seed() -> impl Strategy<Value = (usize, u64)> {
    (0..zoo::NAMES.len(), any::<u64>())
}

fn is_zero(m: &Matrix) -> bool {
    m.is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in any_matrix()) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!(is_zero(&(&m * &k)));
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_recovers_image(m in any_matrix(), seed in proptest::collection::vec(small_rational(), 4)) {
        let x: Vec<Rational> = seed.into_iter().cycle().take(m.cols()).collect();
        let rhs = Matrix::column_vector(m.mul_vec(&x));
        let sol = m.solve(&rhs).expect("consistent system");
        prop_assert_eq!(&m * &sol, rhs);
    }

    #[test]
    fn determinant_is_multiplicative(a in square(3), b in square(3)) {
        prop_assert_eq!((&a * &b).determinant(), a.determinant() * b.determinant());
        match a.inverse() {
            Some(inv) => {
                prop_assert!(!a.determinant().is_zero());
                prop_assert_eq!(&a * &inv, Matrix::identity(3));
            }
            None => prop_assert!(a.determinant().is_zero()),
        }
    }

    #[test]
    fn signature_is_a_congruence_invariant(a in square(4), p in square(4)) {
        let s = &a + &a.transpose();
        prop_assume!(!p.determinant().is_zero());
        let moved = &(&p.transpose() * &s) * &p;
        let before = sylvester_signature(&SymmetricForm::new(s.clone()).unwrap());
        let after = sylvester_signature(&SymmetricForm::new(moved).unwrap());
        prop_assert_eq!(before, after);
        prop_assert_eq!(before.0 + before.1, s.rank());
    }

    #[test]
    fn adjoint_satisfies_defining_relation(a in matrix(3, 2), p in square(2), r in square(3)) {
        let g_dom = &(&p.transpose() * &p) + &Matrix::identity(2);
        let g_cod = &(&r.transpose() * &r) + &Matrix::identity(3);
        let adj = adjoint_wrt(
            &a,
            &SymmetricForm::new(g_dom.clone()).unwrap(),
            &SymmetricForm::new(g_cod.clone()).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(&(&a.transpose() * &g_cod), &(&g_dom * &adj));
    }
}

fn form(n: usize) -> impl Strategy<Value = MultiIndexForm> {
    (0..=n, proptest::collection::vec(small_rational(), 1 << n)).prop_map(move |(k, coefs)| {
        let len = folcohom::exterior::subsets(n, k).len();
        MultiIndexForm::from_coords(n, k, &coefs[..len])
    })
}

fn degree(f: &MultiIndexForm) -> usize {
    f.degree().unwrap().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_is_graded_commutative_and_associative(a in form(4), b in form(4), c in form(4)) {
        let ab = wedge(&a, &b).unwrap();
        let ba = wedge(&b, &a).unwrap();
        let sign = if (degree(&a) * degree(&b)).is_multiple_of(2) { rat(1) } else { rat(-1) };
        prop_assert_eq!(&ab, &ba.scale(&sign));
        prop_assert_eq!(wedge(&ab, &c).unwrap(), wedge(&a, &wedge(&b, &c).unwrap()).unwrap());
    }

    #[test]
    fn contraction_is_an_antiderivation(a in form(4), b in form(4), x in 0usize..4) {
        let lhs = contract(x, &wedge(&a, &b).unwrap());
        let sign = if degree(&a).is_multiple_of(2) { rat(1) } else { rat(-1) };
        let rhs = wedge(&contract(x, &a), &b)
            .unwrap()
            .add(&wedge(&a, &contract(x, &b)).unwrap().scale(&sign))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_squares_to_sign(a in form(4), scales in proptest::collection::vec(1i64..4, 4)) {
        let diag: Vec<Rational> = scales.iter().map(|s| rat(s * s)).collect();
        let m = FramedMetric::new(SymmetricForm::new(Matrix::diagonal(diag)).unwrap(), vec![1, 2, 3, 4]).unwrap();
        let k = degree(&a);
        let twice = hodge_star(&hodge_star(&a, &m).unwrap(), &m).unwrap();
        let sign = if (k * (4 - k)).is_multiple_of(2) { rat(1) } else { rat(-1) };
        prop_assert_eq!(twice, a.scale(&sign));
        // ⟨a, a⟩ vol = a ∧ ∗a
        let top = wedge(&a, &hodge_star(&a, &m).unwrap()).unwrap();
        let vol = m.volume_coefficient().unwrap();
        prop_assert_eq!(top.coefficient(&[1, 2, 3, 4]), m.inner(&a, &a).unwrap() * vol);
    }
}

fn random_coords(len: usize, seed: u64) -> Vec<Rational> {
    let mut s = seed;
    (0..len)
        .map(|_| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            frac(((s >> 33) % 13) as i64 - 6, ((s >> 20) % 4) as i64 + 1)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn twisted_operators_square_to_zero((idx, seed) in model_and_seed()) {
        let l = &loaded()[idx];
        let b = &l.basic;
        for theta in random_closed_thetas(b, 1, seed) {
            for sign in [Sign::Plus, Sign::Minus] {
                let d = twisted_differential(b, &theta, sign);
                for k in 0..d.len().saturating_sub(1) {
                    prop_assert!(is_zero(&(&d[k + 1] * &d[k])), "{} degree {}", l.name, k);
                }
            }
            let mc = b.mean_curvature_data().unwrap();
            let delta = folcohom::lichnerowicz::delta_b(b, &mc).unwrap();
            let contraction = theta_contraction(b, &theta);
            // δ_b − θ⌟ lowers degree and is the adjoint of d − θ∧, so it squares to zero.
            let down: Vec<Matrix> = (1..=b.codim()).map(|k| &delta[k] - &contraction[k]).collect();
            for k in 1..down.len() {
                prop_assert!(is_zero(&(&down[k - 1] * &down[k])), "{} degree {}", l.name, k + 1);
            }
        }
    }

    #[test]
    fn gram_matches_star_integral((idx, seed) in model_and_seed()) {
        let b = &loaded()[idx].basic;
        let q = b.codim();
        for k in 0..=q {
            let x = random_coords(b.dim(k), seed);
            let y = random_coords(b.dim(k), seed.rotate_left(17));
            let inner: Rational = x.iter().zip(b.gram(k).matrix().mul_vec(&y)).map(|(a, c)| a * c).sum();
            let star_y = b.star(k).mul_vec(&y);
            prop_assert_eq!(inner, b.integrate_with_chi(&b.wedge(k, &x, q - k, &star_y)));
        }
    }

    #[test]
    fn duality_holds_for_random_twists((idx, seed) in model_and_seed()) {
        let b = &loaded()[idx].basic;
        let mc = b.mean_curvature_data().unwrap();
        for theta in random_closed_thetas(b, 1, seed) {
            let report = duality_check(b, &theta, &mc).unwrap();
            for (k, left, right) in report.rows {
                prop_assert_eq!(left, right, "degree {}", k);
            }
        }
    }

    #[test]
    fn expressions_round_trip((idx, seed) in model_and_seed(), k in 0usize..5) {
        let m = &loaded()[idx].model;
        prop_assume!(k <= m.total_dim());
        let coords = random_coords(m.degree_dim(k), seed);
        let text = render_element(m, k, &coords);
        prop_assert!(parse_expression(&text).is_ok());
        prop_assert_eq!(resolve_in_degree(m, k, &text).unwrap(), coords);
    }
}

/// Left multiplication by `1 + f` on every degree of the unit-function model.
fn unit_multiplier(b: &BasicComplex) -> Vec<Matrix> {
    (0..=b.codim())
        .map(|k| b.left_multiplication(0, &[rat(1), rat(1)], k))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn exact_twist_change_is_intertwined_by_unit(c in small_rational()) {
        let b = &loaded().iter().find(|l| l.name == "unit_function_cdga").unwrap().basic;
        let mc = b.mean_curvature_data().unwrap();
        let df = TwistingForm::new(b, b.diff(0).mul_vec(&[rat(0), rat(1)])).unwrap();
        let v = TwistingForm::new(b, b.closed_one_forms().column(0)).unwrap();
        let beta = v.scale(&c);
        let alpha = beta.add(&df);
        let low = twisted_differential(b, &beta, Sign::Plus);
        let high = twisted_differential(b, &alpha, Sign::Plus);
        let mu = unit_multiplier(b);
        for k in 0..b.codim() {
            prop_assert_eq!(&low[k] * &mu[k], &mu[k + 1] * &high[k]);
        }
        let dims_a = cohomology(b, &alpha, Sign::Plus, &mc).unwrap().dims;
        let dims_b = cohomology(b, &beta, Sign::Plus, &mc).unwrap().dims;
        prop_assert_eq!(dims_a, dims_b);
    }

    #[test]
    fn induced_maps_compose((idx, seed) in model_and_seed()) {
        let m = &loaded()[idx].model;
        let b = &loaded()[idx].basic;
        let id = FoliatedModelMap::identity(m).unwrap();
        let twice = id.after(&id).unwrap();
        for theta in random_closed_thetas(b, 1, seed) {
            let one = induced_cohomology_map(&id, &theta, Sign::Minus).unwrap();
            let two = induced_cohomology_map(&twice, &theta, Sign::Minus).unwrap();
            prop_assert!(one.is_isomorphism());
            for (x, y) in one.matrices.iter().zip(&two.matrices) {
                prop_assert_eq!(x, &(x * x));
                prop_assert_eq!(x, y);
                prop_assert_eq!(x, &Matrix::identity(x.rows()));
            }
        }
    }
}

#[test]
fn flip_composed_with_itself_is_identity_on_cohomology() {
    let certs = zoo::certificates().unwrap();
    let flip = certs
        .iter()
        .find(|c| c.forward.source().name() == "carriere_sol3" && c.forward.orientation_effect() == -1)
        .expect("orientation-reversing certificate on the Carrière model");
    let b = flip.forward.source().basic_subcomplex().unwrap();
    let mc = b.mean_curvature_data().unwrap();
    let composite = flip.forward.after(&flip.forward).unwrap();
    for theta in random_closed_thetas(&b, 4, 7)
        .into_iter()
        .chain([TwistingForm::kappa_multiple(&b, &mc, &rat(1))])
    {
        let first = induced_cohomology_map(&flip.forward, &theta, Sign::Minus).unwrap();
        let pulled = flip.forward.pull_theta(&b, &b, &theta).unwrap();
        let second = induced_cohomology_map(&flip.forward, &pulled, Sign::Minus).unwrap();
        let double = induced_cohomology_map(&composite, &theta, Sign::Minus).unwrap();
        for ((x, y), d) in first.matrices.iter().zip(&second.matrices).zip(&double.matrices) {
            assert_eq!(&(y * x), d);
            assert_eq!(d, &Matrix::identity(d.rows()));
        }
    }
}
