//! Reference values recomputed by small independent procedures written here
//! (hand-built matrices, a separate rank routine over `Ratio<i64>`, direct
//! permutation-sign counts), then compared with the engine.

use folcohom::lichnerowicz::{cohomology, delta_b, twisted_differential, zero_degree_classification, Sign, TwistingForm};
use folcohom::linalg::Matrix;
use folcohom::scalar::{frac, rat};
use folcohom::signature::{basic_signature, pairing_matrix};
use folcohom::zoo;
use folcohom::Rational;
use num_rational::Ratio;

type Q = Ratio<i64>;

/// Rank by plain Gaussian elimination, independent of the library routine.
fn oracle_rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != Q::from_integer(0)) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != Q::from_integer(0) {
                let f = m[r][c] / m[rank][c];
                for k in 0..cols {
                    let v = m[rank][k];
                    m[r][k] -= f * v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers of a complex with the given per-degree dimensions and
/// differential ranks.
fn betti(dims: &[usize], ranks: &[usize]) -> Vec<usize> {
    (0..dims.len())
        .map(|k| dims[k] - ranks[k] - if k == 0 { 0 } else { ranks[k - 1] })
        .collect()
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// The Carrière basic complex by hand: bases {1}, {e2, e3}, {e23}; de2 = -e23;
/// the twist c·e3 acts as 1 ↦ c e3 and e2 ↦ -c e23.
fn carriere_oracle(c: Q) -> Vec<usize> {
    let d0 = vec![vec![q(0, 1)], vec![-c]];
    let d1 = vec![vec![q(-1, 1) + c, q(0, 1)]];
    betti(&[1, 2, 1], &[oracle_rank(&d0), oracle_rank(&d1), 0])
}

fn to_rational(c: Q) -> Rational {
    frac(*c.numer(), *c.denom())
}

#[test]
fn carriere_twisted_cohomology_matches_hand_ranks() {
    let e = zoo::builtin("carriere_sol3").unwrap();
    let b = e.model.basic_subcomplex().unwrap();
    let mc = b.mean_curvature_data().unwrap();
    assert_eq!(mc.kappa_b, vec![rat(0), rat(0), rat(1)]);
    for c in [q(0, 1), q(1, 2), q(1, 1), q(-1, 2), q(3, 1)] {
        let theta = TwistingForm::kappa_multiple(&b, &mc, &to_rational(c));
        let report = cohomology(&b, &theta, Sign::Minus, &mc).unwrap();
        assert_eq!(report.dims, carriere_oracle(c), "twist {c} * e3");
    }
    assert_eq!(carriere_oracle(q(0, 1)), vec![1, 1, 0]);
    assert_eq!(carriere_oracle(q(1, 2)), vec![0, 0, 0]);
    assert_eq!(carriere_oracle(q(1, 1)), vec![0, 1, 1]);
}

#[test]
fn carriere_mean_curvature_from_brackets() {
    // Orthonormal frame, leaf e1: κ(e_j) = <[e_j, e1], e1> for transverse e_j.
    // [e3, e1] = e1 and [e2, e1] = 0 give κ = e3; the leaf volume form is e1.
    let brackets: [(usize, usize, usize, i64); 2] = [(3, 1, 1, 1), (3, 2, 2, -1)];
    let mut kappa = [0i64; 3];
    for j in [2usize, 3] {
        for &(a, b, k, v) in &brackets {
            if a == j && b == 1 && k == 1 {
                kappa[j - 1] += v;
            }
            if b == j && a == 1 && k == 1 {
                kappa[j - 1] -= v;
            }
        }
    }
    let m = zoo::builtin("carriere_sol3").unwrap().model;
    let expected: Vec<Rational> = kappa.iter().map(|&v| rat(v)).collect();
    assert_eq!(m.kappa(), expected.as_slice());
    assert_eq!(m.chi(), &[rat(1), rat(0), rat(0)]);
    let mc = m.mean_curvature().unwrap();
    assert!(mc.rummler_residual.iter().all(|c| *c == rat(0)));
}

#[test]
fn carriere_codifferential_is_transposed_differential() {
    let b = zoo::builtin("carriere_sol3").unwrap().model.basic_subcomplex().unwrap();
    let mc = b.mean_curvature_data().unwrap();
    let delta = delta_b(&b, &mc).unwrap();
    assert!(delta[1].is_zero());
    assert_eq!(delta[2], Matrix::from_i64(&[&[-1], &[0]]));
}

#[test]
fn carriere_degree_zero_twisted_map() {
    let b = zoo::builtin("carriere_sol3").unwrap().model.basic_subcomplex().unwrap();
    let mc = b.mean_curvature_data().unwrap();
    let theta = TwistingForm::kappa_multiple(&b, &mc, &frac(-1, 2));
    let d = twisted_differential(&b, &theta, Sign::Plus);
    assert_eq!(d[0], Matrix::from_columns(2, &[vec![rat(0), frac(-1, 2)]]));
    let (dim, exact) = zero_degree_classification(&b, &TwistingForm::kappa_multiple(&b, &mc, &rat(1)));
    assert_eq!((dim, exact), (0, false));
    assert_eq!(zero_degree_classification(&b, &TwistingForm::zero(&b)), (1, true));
}

fn permutation_parity(seq: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[test]
fn torus4_pairing_is_hyperbolic() {
    let pairs: Vec<[usize; 2]> = vec![[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]];
    let mut oracle = vec![vec![0i64; 6]; 6];
    for (i, a) in pairs.iter().enumerate() {
        for (j, c) in pairs.iter().enumerate() {
            let seq = [a[0], a[1], c[0], c[1]];
            let distinct = seq.iter().collect::<std::collections::BTreeSet<_>>().len() == 4;
            if distinct {
                oracle[i][j] = permutation_parity(&seq);
            }
        }
    }
    // Each basis element pairs with exactly one complement: three hyperbolic planes.
    let blocks = (0..6).filter(|&i| (0..6).filter(|&j| oracle[i][j] != 0).count() == 1).count() / 2;
    assert_eq!(blocks, 3);

    let e = zoo::builtin("torus4_point").unwrap();
    let b = e.model.basic_subcomplex().unwrap();
    let mc = b.mean_curvature_data().unwrap();
    let lex = Matrix::identity(6);
    let rows: Vec<&[i64]> = oracle.iter().map(Vec::as_slice).collect();
    assert_eq!(pairing_matrix(&b, &lex), Matrix::from_i64(&rows));
    let sub = pairing_matrix(&b, &lex.select_columns(&[0, 5]));
    assert_eq!(sub, Matrix::from_i64(&[&[0, 1], &[1, 0]]));
    let report = basic_signature(&b, &mc).unwrap();
    assert_eq!(report.pairing_signature, (blocks, blocks, 0));
    assert_eq!(report.sigma, 0);
}

#[test]
fn cp2_signature_is_one() {
    let b = zoo::builtin("cp2_cdga").unwrap().model.basic_subcomplex().unwrap();
    let mc = b.mean_curvature_data().unwrap();
    let report = basic_signature(&b, &mc).unwrap();
    assert_eq!(report.pairing, Matrix::from_i64(&[&[1]]));
    assert_eq!(report.pairing_signature, (1, 0, 0));
    assert_eq!(report.sigma, 1);
}

#[test]
fn hopf_has_no_basic_one_forms() {
    // de1 = -e23 and de2 = e13 contract with e3 to e2 and -e1, so no basic 1-forms.
    let b = zoo::builtin("hopf_su2").unwrap().model.basic_subcomplex().unwrap();
    assert_eq!(b.dims(), vec![1, 0, 1]);
    let mc = b.mean_curvature_data().unwrap();
    let report = cohomology(&b, &TwistingForm::zero(&b), Sign::Minus, &mc).unwrap();
    assert_eq!(report.dims, vec![1, 0, 1]);
    assert_eq!(basic_signature(&b, &mc).unwrap().sigma, 0);
}

#[test]
fn unit_function_twisted_kernel_is_exponential() {
    let m = zoo::builtin("unit_function_cdga").unwrap().model;
    let b = m.basic_subcomplex().unwrap();
    let df = TwistingForm::new(&b, b.diff(0).mul_vec(&[rat(0), rat(1)])).unwrap();
    let (dim, exact) = zero_degree_classification(&b, &df);
    assert_eq!((dim, exact), (1, true));
    // (d - df∧)(a + b f) = (b - a) fv, so the kernel is spanned by 1 + f.
    let d = twisted_differential(&b, &df, Sign::Minus);
    assert!(d[0].mul_vec(&[rat(1), rat(1)]).iter().all(|c| *c == rat(0)));
    assert_eq!(oracle_rank(&[vec![q(-1, 1), q(1, 1)]]), 1);
}

#[test]
fn top_degree_twisted_by_kappa_is_one_dimensional() {
    for e in zoo::all().unwrap() {
        let b = e.model.basic_subcomplex().unwrap();
        let mc = b.mean_curvature_data().unwrap();
        let kappa = TwistingForm::kappa_multiple(&b, &mc, &rat(1));
        let report = cohomology(&b, &kappa, Sign::Minus, &mc).unwrap();
        assert_eq!(report.dims[b.codim()], 1, "{}", e.name);
    }
}

#[test]
fn frozen_zoo_table() {
    for e in zoo::all().unwrap() {
        e.verify().unwrap();
    }
    let c = zoo::builtin("carriere_sol3").unwrap();
    assert!(!c.expected.taut);
    assert_eq!(c.expected.basic_betti, vec![1, 1, 0]);
    assert_eq!(c.expected.twisted_betti, vec![0, 0, 0]);
    let h = zoo::builtin("hopf_su2").unwrap();
    assert!(h.expected.taut);
    assert_eq!(h.expected.basic_betti, vec![1, 0, 1]);
    let t = zoo::builtin("torus4_point").unwrap();
    assert_eq!(t.expected.basic_betti, vec![1, 4, 6, 4, 1]);
}

#[test]
fn taut_entries_satisfy_classical_duality() {
    for e in zoo::all().unwrap() {
        let betti = &e.expected.basic_betti;
        let reversed: Vec<usize> = betti.iter().rev().copied().collect();
        assert_eq!(e.expected.taut, *betti == reversed, "{}", e.name);
    }
}

#[test]
fn unknown_name_lists_registry() {
    let err = zoo::builtin("klein_bottle").unwrap_err().to_string();
    assert!(err.contains("carriere_sol3") && err.contains("cp2_cdga"));
}

#[test]
fn star_phases() {
    use folcohom::signature::StarInvolution;
    // powers of i in degrees 0..=q
    let table: [(usize, &[usize]); 3] = [(2, &[1, 1, 3]), (4, &[2, 2, 0, 0, 2]), (6, &[3, 3, 1, 1, 3, 3, 1])];
    for (q, phases) in table {
        let got: Vec<usize> = (0..=q).map(|k| StarInvolution::phase(q, k)).collect();
        assert_eq!(got, phases, "q = {q}");
    }
}
