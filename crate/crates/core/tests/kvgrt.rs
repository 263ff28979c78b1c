use kvassoc::exactlin::SparseVec;
use kvassoc::kvgrt::*;
use kvassoc::taut::tau;
use kvassoc::tder::t_element;
use kvassoc::{Pattern, Rational, RationalMatrix, TautLog};

fn one() -> Rational {
    Rational::one()
}

fn solved(n: usize) -> (TautLog, TautLog) {
    let phi = associator_solve(n, &one()).unwrap();
    let f = kv_from_associator(&phi, &one()).unwrap();
    (phi, f)
}

#[test]
fn round_trip_recovers_associator() {
    let (phi, f) = solved(5);
    assert_eq!(phi_from_F(&f).unwrap(), phi);
    let rep = kv_check(&f, &one()).unwrap();
    assert!(rep.is_solution());
}

#[test]
fn duflo_extractions_agree() {
    let (phi, f) = solved(6);
    let rep = kv_check(&f, &one()).unwrap();
    let duflo = rep.duflo.solved().unwrap();
    assert_eq!(&duflo_from_phi(&phi).unwrap(), duflo);
    assert_eq!(&duflo_from_log(&f).unwrap(), duflo);
    assert_eq!(duflo.even_part(), bernoulli_duflo(6));
}

#[test]
fn ambiguity_by_exp_t() {
    let (phi, f) = solved(5);
    let f2 = f.compose(&TautLog::exp(t_element(5).scale(&Rational::new(-2, 3)))).unwrap();
    assert_ne!(f2, f);
    assert_eq!(phi_from_F(&f2).unwrap(), phi);
    assert!(kv_check(&f2, &one()).unwrap().is_solution());
}

#[test]
fn tau_and_associator_reversal() {
    let n = 5;
    let (_, f) = solved(n);
    let g = TautLog::exp(nu_map(&sigma(3).unwrap().truncate(n)).unwrap());
    let f2 = f.compose(&g).unwrap();
    let reversed = phi_from_F(&f2).unwrap().pattern_map(&Pattern::singletons(3, &[3, 2, 1]).unwrap()).unwrap();
    assert_eq!(phi_from_F(&tau(&f2).unwrap()).unwrap(), reversed.inverse());
}

#[test]
fn twisting_preserves_pentagon() {
    let n = 5;
    let phi = associator_solve(n, &one()).unwrap();
    let g = TautLog::exp(nu_map(&sigma(3).unwrap().truncate(n)).unwrap().scale(&Rational::new(1, 5)));
    let twisted = twist(&phi, &g).unwrap();
    assert_ne!(twisted, phi);
    assert!(pentagon_residual(&twisted).unwrap().is_identity());
}

#[test]
fn ghat_lands_in_t3() {
    let n = 4;
    let g = TautLog::exp(nu_map(&sigma(3).unwrap().truncate(n)).unwrap());
    let h = ghat(&g).unwrap();
    let d = 3;
    let cols: Vec<SparseVec> = t3_basis(d, n).unwrap().iter().map(|b| b.degree_vector(d)).collect();
    let rows = 3 * kvassoc::words::witt_dimension(3, d) as usize;
    let base = RationalMatrix::from_columns(rows, cols.clone()).rank();
    let mut with = cols;
    with.push(h.log().degree_vector(d));
    assert!(!h.log().homogeneous(d).is_zero());
    assert_eq!(RationalMatrix::from_columns(rows, with).rank(), base);
    assert!(ghat(&TautLog::exp(t_element(n))).unwrap().is_identity());
}

#[test]
fn nu_respects_ihara() {
    let m = 8;
    let s3 = sigma(3).unwrap().truncate(m);
    let s5 = sigma(5).unwrap().truncate(m);
    let lhs = nu_map(&ihara_bracket(&s3, &s5).unwrap()).unwrap();
    let rhs = nu_map(&s3).unwrap().bracket(&nu_map(&s5).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
    assert!(!lhs.is_zero());
    let (r1, r2, r3) = grt_residuals(&ihara_bracket(&s3, &s5).unwrap()).unwrap();
    assert!(r1.is_zero() && r2.is_zero() && r3.is_zero());
}

#[test]
fn sigma_normalization() {
    for d in [3, 5, 7] {
        let s = sigma(d).unwrap();
        let profile = double_commutator_profile(&s, d).unwrap();
        let want: Vec<Rational> = (1..d).map(|k| Rational::binomial(d, k)).collect();
        assert_eq!(profile, want);
    }
    assert!(grt_solve(4).unwrap().is_empty());
    assert!(verify_dpsi(&kvassoc::LieSeries::zero(2, 3)).unwrap());
}

#[test]
fn rescaled_pipeline() {
    let s = Rational::from_integer(2);
    let n = 4;
    let phi = associator_solve(n, &s).unwrap();
    assert_eq!(pi2(phi.log()).unwrap().value, Rational::new(1, 2));
    let f = kv_from_associator(&phi, &s).unwrap();
    assert!(kv_check(&f, &s).unwrap().is_solution());
    assert!(matches!(kv_from_associator(&phi, &one()), Err(kvassoc::Error::PiMismatch { .. })));
}

#[test]
fn dimension_tables() {
    let kv: Vec<usize> = dims_report(Subspace::Kv2, 1..=5).iter().map(|r| r.dim).collect();
    let hkv: Vec<usize> = dims_report(Subspace::Hkv2, 1..=5).iter().map(|r| r.dim).collect();
    assert_eq!(hkv, vec![1, 0, 1, 0, 1]);
    assert!(kv.iter().zip(&hkv).all(|(a, b)| a <= b));
    let tilde = cohomology_report(Complex::DeltaTilde, 2, 2..=5).unwrap();
    assert!(tilde.iter().all(|r| r.cohomology == 0));
}
