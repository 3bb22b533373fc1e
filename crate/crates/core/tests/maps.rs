use folcohom::lichnerowicz::{cohomology, Sign, TwistingForm};
use folcohom::linalg::Matrix;
use folcohom::morphism::{alvarez_pullback_check, induced_cohomology_map, unit_relation, FoliatedModelMap};
use folcohom::scalar::rat;
use folcohom::signature::{basic_signature, class_pairing, half_kappa, pairing_matrix};
use folcohom::zoo;
use folcohom::{EquivalenceCertificate, Error, ErrorKind};

fn model(name: &str) -> folcohom::FoliatedModel {
    zoo::builtin(name).unwrap().model
}

fn deg1(rows: &[[i64; 3]]) -> Vec<(usize, usize, Vec<folcohom::Rational>)> {
    rows.iter()
        .enumerate()
        .map(|(j, r)| (1, j, r.iter().map(|&c| rat(c)).collect()))
        .collect()
}

#[test]
fn carriere_flip_acts_by_signs() {
    let c = model("carriere_sol3");
    let f = FoliatedModelMap::from_generator_images("flip", &c, &c, &deg1(&[[1, 0, 0], [0, -1, 0], [0, 0, 1]])).unwrap();
    assert_eq!(f.orientation_effect(), -1);
    assert_eq!(f.transfer_constant(), Some(&rat(-1)));
    let b = c.basic_subcomplex().unwrap();
    let mc = b.mean_curvature_data().unwrap();
    // H¹_d is spanned by e3, fixed by the flip.
    let plain = induced_cohomology_map(&f, &TwistingForm::zero(&b), Sign::Minus).unwrap();
    assert_eq!(plain.matrices[1], Matrix::from_i64(&[&[1]]));
    // H²_{d-κ_b} is spanned by e23, negated.
    let kappa = TwistingForm::kappa_multiple(&b, &mc, &rat(1));
    let twisted = induced_cohomology_map(&f, &kappa, Sign::Minus).unwrap();
    assert_eq!(twisted.matrices[2], Matrix::from_i64(&[&[-1]]));
    assert!(alvarez_pullback_check(&f).unwrap());
}

#[test]
fn maps_violating_the_axioms_are_rejected() {
    let cp2 = model("cp2_cdga");
    // x ↦ x but x² ↦ 2x² breaks multiplicativity.
    let mut pullback: Vec<Matrix> = (0..=4).map(|k| Matrix::identity(cp2.degree_dim(k))).collect();
    pullback[4] = Matrix::from_i64(&[&[2]]);
    let err = FoliatedModelMap::from_pullback("bad", &cp2, &cp2, pullback).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Validation, "{err}");

    // e3 ↦ e2 kills e23 = -de2 while de2 itself is nonzero.
    let c = model("carriere_sol3");
    let err = FoliatedModelMap::from_generator_images("bad", &c, &c, &deg1(&[[1, 0, 0], [0, 1, 0], [0, 1, 0]]))
        .unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Validation, "{err}");

    // images must generate the target
    let err = FoliatedModelMap::from_generator_images("bad", &cp2, &cp2, &[]).unwrap_err();
    assert!(matches!(err, Error::ModelAxiom { .. }));
}

#[test]
fn scaling_map_scales_the_transfer_constant() {
    let cp2 = model("cp2_cdga");
    let f = FoliatedModelMap::from_generator_images("x -> 2x", &cp2, &cp2, &[(2, 0, vec![rat(2)])]).unwrap();
    assert_eq!(f.transfer_constant(), Some(&rat(4)));
    assert_eq!(f.orientation_effect(), 1);
    let b = cp2.basic_subcomplex().unwrap();
    let induced = induced_cohomology_map(&f, &TwistingForm::zero(&b), Sign::Plus).unwrap();
    assert_eq!(induced.matrices[2], Matrix::from_i64(&[&[2]]));
    assert!(induced.is_isomorphism());
}

#[test]
fn non_equivalence_loses_the_alvarez_class() {
    let f = zoo::taut_to_carriere_map().unwrap();
    assert!(!alvarez_pullback_check(&f).unwrap());
    let cert = EquivalenceCertificate {
        name: "not an equivalence".into(),
        forward: f.clone(),
        backward: FoliatedModelMap::from_generator_images(
            "carriere -> torus3",
            f.target(),
            f.source(),
            &deg1(&[[0, 0, 0], [0, 0, 0], [0, 0, 1]]),
        )
        .unwrap(),
        mu: f.target().unit(),
    };
    assert_eq!(cert.report(0, 1).unwrap_err().kind(), ErrorKind::Assertion);
}

#[test]
fn shipped_certificates_hold() {
    for cert in zoo::certificates().unwrap() {
        let report = cert.report(3, 11).unwrap_or_else(|e| panic!("{}: {e}", cert.name));
        assert!(report.alvarez);
        assert_ne!(report.lambda, rat(0));
        assert_eq!(report.detected_codims.0, cert.forward.source().codim());
        if let Some((s, t)) = report.sigmas {
            assert_eq!(s, i64::from(report.orientation_effect) * t);
        }
    }
}

#[test]
fn unit_function_exact_twist_relation() {
    let (phi, psi) = zoo::unit_function_maps().unwrap();
    let u = phi.source().clone();
    let b = u.basic_subcomplex().unwrap();
    let v = TwistingForm::new(&b, b.closed_one_forms().column(0)).unwrap();
    let (_, f_index) = u.find_label("f").unwrap();
    let mut mu = u.unit();
    mu[f_index] = rat(1);
    unit_relation(&phi, &v, &mu).unwrap();
    // the plain unit fails, since φ moves v by an exact term
    assert!(unit_relation(&phi, &v, &u.unit()).is_err());
    assert!(induced_cohomology_map(&psi, &v, Sign::Plus).unwrap().is_isomorphism());
}

#[test]
fn class_pairing_recovers_the_middle_pairing() {
    let t4 = model("torus4_point");
    let b = t4.basic_subcomplex().unwrap();
    let mc = b.mean_curvature_data().unwrap();
    let e = |i: usize, n: usize| {
        let mut v = vec![rat(0); n];
        v[i] = rat(1);
        v
    };
    // e12 · e34 lands in degree 0 with the A_F entry as its value.
    let scalar = class_pairing(&b, &mc, 2, &e(0, 6), 2, &e(5, 6)).unwrap();
    let a = pairing_matrix(&b, &Matrix::identity(6));
    assert_eq!(scalar, vec![a[(0, 5)].clone()]);
    // two degree-1 classes land in H²_d
    let out = class_pairing(&b, &mc, 1, &e(0, 4), 1, &e(1, 4)).unwrap();
    assert_eq!(out.len(), 6);
    let report = cohomology(&b, &TwistingForm::zero(&b), Sign::Minus, &mc).unwrap();
    assert!(report.harmonic_representative(&b, 2, &out).is_ok());

    let c = model("carriere_sol3");
    let cb = c.basic_subcomplex().unwrap();
    let cmc = cb.mean_curvature_data().unwrap();
    assert!(matches!(
        class_pairing(&cb, &cmc, 1, &[rat(1), rat(0)], 0, &[rat(1)]),
        Err(Error::NotClosed)
    ));
    assert_eq!(half_kappa(&cb, &cmc).coords(), &[rat(0), folcohom::scalar::frac(1, 2)]);
}

#[test]
fn reversed_orientation_negates_signature() {
    let cp2 = model("cp2_cdga");
    let rev = cp2.reversed_orientation().unwrap();
    let sig = |m: &folcohom::FoliatedModel| {
        let b = m.basic_subcomplex().unwrap();
        basic_signature(&b, &b.mean_curvature_data().unwrap()).unwrap().sigma
    };
    assert_eq!((sig(&cp2), sig(&rev)), (1, -1));
}
