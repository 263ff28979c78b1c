//! Shared inputs for the criterion benches.

use kvassoc::kvgrt::associator_solve;
use kvassoc::words::lyndon_words;
use kvassoc::{LieSeries, Rational, TangentialDerivation, TautLog};

/// Degrees used by the solver benches; higher ones take seconds per iteration.
pub const SOLVER_DEGREES: [usize; 3] = [4, 5, 6];

/// `Σ` over Lyndon words of degree ≤ `top` with coefficients cycling through ±1, ±1/2.
pub fn dense_lie(n: usize, max_degree: usize, top: usize) -> LieSeries {
    let coeffs = [Rational::one(), Rational::new(-1, 2), Rational::new(1, 2), Rational::from_integer(-1)];
    let mut a = LieSeries::zero(n, max_degree);
    let words = (1..=top.min(max_degree)).flat_map(|d| lyndon_words(n, d));
    for (w, c) in words.zip(coeffs.iter().cycle()) {
        a.add_basis(w.word(), c.clone());
    }
    a
}

/// A tangential derivation of `lie_n` with every slot filled by `dense_lie`.
pub fn dense_tder(n: usize, max_degree: usize, top: usize) -> TangentialDerivation {
    TangentialDerivation::normalize((0..n).map(|_| dense_lie(n, max_degree, top)).collect()).expect("valid tuple")
}

pub fn associator(max_degree: usize) -> TautLog {
    associator_solve(max_degree, &Rational::one()).expect("associators exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_nonzero() {
        assert!(!dense_lie(2, 4, 3).is_zero());
        assert!(!dense_tder(3, 4, 2).is_zero());
        assert!(!associator(3).is_identity());
    }
}
