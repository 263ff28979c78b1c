use proptest::prelude::*;

use kvassoc::assocalg::trace_project;
use kvassoc::freelie::{bch_eval, delta_lie, deltatilde_lie};
use kvassoc::words::{canonical_necklace, lyndon_words, witt_dimension, Word};
use kvassoc::{AssocSeries, CyclicSeries, LieSeries, Rational, RationalMatrix, TangentialDerivation, TautLog};

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Lie element with the given integer coordinates on Lyndon words of degrees `1..=top`.
fn lie_from(n: usize, m: usize, top: usize, coeffs: &[i64]) -> LieSeries {
    let mut a = LieSeries::zero(n, m);
    let words = (1..=top).flat_map(|d| lyndon_words(n, d));
    for (w, c) in words.zip(coeffs.iter().cycle()) {
        a.add_basis(w.word(), q(*c));
    }
    a
}

fn lie_count(n: usize, top: usize) -> usize {
    (1..=top).map(|d| witt_dimension(n, d) as usize).sum()
}

fn tder_from(n: usize, m: usize, top: usize, coeffs: &[i64]) -> TangentialDerivation {
    let per = lie_count(n, top);
    let comps = (0..n).map(|k| lie_from(n, m, top, &coeffs[k * per..(k + 1) * per])).collect();
    TangentialDerivation::normalize(comps).unwrap()
}

fn small(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, len)
}

fn cyclic_from(n: usize, m: usize, coeffs: &[i64]) -> CyclicSeries {
    let mut t = CyclicSeries::zero(n, m);
    let mut it = coeffs.iter().cycle();
    for d in 1..=m.min(3) {
        for code in 0..(n as u64).pow(d as u32) {
            t.add_word(d, code, q(*it.next().unwrap()));
        }
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rational_field_laws(a in -50i64..50, b in 1i64..40, c in -50i64..50, d in 1i64..40) {
        let x = Rational::new(a, b);
        let y = Rational::new(c, d);
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x * &(&y + &Rational::one()), &(&x * &y) + &x);
        if !y.is_zero() {
            prop_assert_eq!(&(&x / &y) * &y, x.clone());
        }
        prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
    }

    #[test]
    fn rank_nullity(entries in prop::collection::vec(-3i64..=3, 20)) {
        let rows: Vec<Vec<Rational>> = entries.chunks(5).map(|r| r.iter().map(|&v| q(v)).collect()).collect();
        let a = RationalMatrix::from_dense(5, &rows);
        let kernel = a.kernel_basis();
        prop_assert_eq!(a.rank() + kernel.len(), 5);
        for v in &kernel {
            prop_assert!(a.mul_vec(v).iter().all(Rational::is_zero));
        }
        prop_assert_eq!(a.transpose().rank(), a.rank());
        let v: Vec<Rational> = (0..5).map(|i| q(i as i64 - 2)).collect();
        let b = a.mul_vec(&v);
        let x = a.solve_particular(&b).unwrap();
        prop_assert_eq!(a.mul_vec(&x), b);
    }

    #[test]
    fn necklaces_ignore_rotation(letters in prop::collection::vec(0u8..3, 1..7), k in 0usize..7) {
        let w = Word::new(letters);
        prop_assert_eq!(canonical_necklace(&w.rotate(k % w.len())), canonical_necklace(&w));
    }

    #[test]
    fn jacobi_identity(c in small(3 * 14)) {
        let m = 4;
        let per = lie_count(3, 2);
        let a = lie_from(3, m, 2, &c[..per]);
        let b = lie_from(3, m, 2, &c[per..2 * per]);
        let e = lie_from(3, m, 2, &c[2 * per..3 * per]);
        let br = |u: &LieSeries, v: &LieSeries| u.bracket(v).unwrap();
        let sum = br(&a, &br(&b, &e)).add(&br(&b, &br(&e, &a))).add(&br(&e, &br(&a, &b)));
        prop_assert!(sum.is_zero());
        prop_assert_eq!(LieSeries::from_assoc(&a.to_assoc()).unwrap(), a);
    }

    #[test]
    fn log_exp_and_partials(c in small(14)) {
        let m = 4;
        let a = AssocSeries::from_lie(&lie_from(2, m, 3, &c));
        prop_assert_eq!(a.exp().unwrap().log().unwrap(), a.clone());
        let mut rebuilt = AssocSeries::constant(2, m, a.constant_term());
        for k in 0..2 {
            let (_, p) = a.partial_k(k);
            rebuilt = rebuilt.add(&p.mul(&AssocSeries::generator(2, m, k)).unwrap());
        }
        prop_assert_eq!(rebuilt, a);
    }

    #[test]
    fn coboundaries_square_to_zero(c in small(14), s in -2i64..=2) {
        let m = 4;
        let f = lie_from(2, m, 3, &c);
        prop_assert!(delta_lie(&delta_lie(&f)).is_zero());
        prop_assert!(deltatilde_lie(&deltatilde_lie(&f, &q(s)), &q(s)).is_zero());
        let t = cyclic_from(2, m, &c);
        prop_assert!(t.delta().delta().is_zero());
        prop_assert!(t.deltatilde(&q(s)).deltatilde(&q(s)).is_zero());
    }

    #[test]
    fn d_squares_to_zero(c in small(2 * 5)) {
        let u = tder_from(2, 4, 3, &c);
        prop_assert!(u.d_differential().d_differential().is_zero());
    }

    #[test]
    fn bracket_is_commutator(c in small(4 * 5)) {
        let m = 4;
        let u = tder_from(2, m, 3, &c[..10]);
        let v = tder_from(2, m, 3, &c[10..]);
        let a = AssocSeries::from_lie(&lie_from(2, m, 3, &c[3..]));
        let uv = u.apply(&v.apply(&a).unwrap()).unwrap();
        let vu = v.apply(&u.apply(&a).unwrap()).unwrap();
        prop_assert_eq!(u.bracket(&v).unwrap().apply(&a).unwrap(), uv.sub(&vu));
    }

    #[test]
    fn action_is_an_automorphism(c in small(2 * 5 + 14)) {
        let m = 4;
        let g = TautLog::exp(tder_from(2, m, 3, &c[..10]));
        let a = AssocSeries::from_lie(&lie_from(2, m, 2, &c[10..]));
        let b = AssocSeries::from_lie(&lie_from(2, m, 3, &c[12..]));
        let ga = g.act(&a).unwrap();
        let gb = g.act(&b).unwrap();
        prop_assert_eq!(g.act(&a.mul(&b).unwrap()).unwrap(), ga.mul(&gb).unwrap());
        prop_assert_eq!(g.inverse().act(&ga).unwrap(), a.clone());
        let h = TautLog::exp(tder_from(2, m, 3, &c[4..14]));
        prop_assert_eq!(g.compose(&h).unwrap().act(&b).unwrap(), g.act(&h.act(&b).unwrap()).unwrap());
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(g.act(&trace_project(&ab)).unwrap(), trace_project(&ga.mul(&gb).unwrap()));
    }

    #[test]
    fn bch_group_law(c in small(3 * 5)) {
        let m = 5;
        let a = lie_from(2, m, 3, &c[..5]);
        let b = lie_from(2, m, 3, &c[5..10]);
        let e = lie_from(2, m, 3, &c[10..]);
        let ab_e = bch_eval(&bch_eval(&a, &b).unwrap(), &e).unwrap();
        let a_be = bch_eval(&a, &bch_eval(&b, &e).unwrap()).unwrap();
        prop_assert_eq!(ab_e, a_be);
        prop_assert!(bch_eval(&a, &a.neg()).unwrap().is_zero());
    }
}
