//! Duflo series and the degree-by-degree solve of `j = δ̃_s(Tr f)`.

use std::fmt;

use crate::assocalg::CyclicSeries;
use crate::exactlin::Rational;
use crate::words::Word;

/// `f = Σ_{k≥2} f_k x^k`, truncated at `max_degree`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DufloSeries {
    coeffs: Vec<Rational>,
}

impl fmt::Debug for DufloSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms()).finish()
    }
}

impl DufloSeries {
    pub fn zero(max_degree: usize) -> Self {
        DufloSeries { coeffs: vec![Rational::zero(); max_degree + 1] }
    }

    /// Builds from `(k, f_k)` pairs; degrees below 2 or above the truncation are dropped.
    pub fn from_terms(max_degree: usize, terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut f = Self::zero(max_degree);
        for (k, c) in terms {
            f.set(k, c);
        }
        f
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, k: usize, c: Rational) {
        if (2..self.coeffs.len()).contains(&k) {
            self.coeffs[k] = c;
        }
    }

    /// Nonzero `(k, f_k)`.
    pub fn terms(&self) -> Vec<(usize, Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn truncate(&self, m: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(m + 1, Rational::zero());
        DufloSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let m = self.max_degree().max(other.max_degree());
        Self::from_terms(m, (0..=m).map(|k| (k, &self.coeff(k) - &other.coeff(k))))
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.max_degree().max(other.max_degree());
        Self::from_terms(m, (0..=m).map(|k| (k, &self.coeff(k) + &other.coeff(k))))
    }

    pub fn even_part(&self) -> Self {
        Self::from_terms(self.max_degree(), self.terms().into_iter().filter(|(k, _)| k % 2 == 0))
    }

    pub fn odd_part(&self) -> Self {
        Self::from_terms(self.max_degree(), self.terms().into_iter().filter(|(k, _)| k % 2 == 1))
    }

    /// `x f'(x)`.
    pub fn x_derivative(&self) -> Self {
        Self::from_terms(
            self.max_degree(),
            self.terms().into_iter().map(|(k, c)| (k, c * Rational::from_integer(k as i64))),
        )
    }

    /// `Tr f(x)` in `tr_1`.
    pub fn trace(&self) -> CyclicSeries {
        let m = self.max_degree();
        let mut t = CyclicSeries::zero(1, m);
        for (k, c) in self.terms() {
            t.add_word(k, 0, c);
        }
        t
    }
}

/// `B_0, …, B_n` with `B_1 = −1/2`, from `Σ_{k≤m} C(m+1, k) B_k = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=n {
        let s: Rational = (0..m).map(|k| Rational::binomial(m + 1, k) * &b[k]).sum();
        b.push(-(s / Rational::from_integer(m as i64 + 1)));
    }
    b
}

/// Even part `Σ_{k even ≥ 2} ½ B_k/(k·k!) x^k` of the Duflo series of the KV problem.
pub fn bernoulli_duflo(max_degree: usize) -> DufloSeries {
    let b = bernoulli_numbers(max_degree);
    DufloSeries::from_terms(
        max_degree,
        (2..=max_degree).step_by(2).map(|k| (k, &b[k] * &Rational::inv_factorial(k) * Rational::new(1, 2 * k as i64))),
    )
}

/// Even part `½ Σ_{k even ≥ 2} B_k x^k/k!`, the series `x f'(x)` of [`bernoulli_duflo`].
pub fn bernoulli_phi(max_degree: usize) -> DufloSeries {
    let b = bernoulli_numbers(max_degree);
    DufloSeries::from_terms(
        max_degree,
        (2..=max_degree).step_by(2).map(|k| (k, &b[k] * &Rational::inv_factorial(k) * Rational::new(1, 2))),
    )
}

/// Finds `f` with `j = δ̃_s(Tr f)`, or the first degree where no `f_d` fits.
pub fn solve_duflo(j: &CyclicSeries, s: &Rational) -> std::result::Result<DufloSeries, usize> {
    assert_eq!(j.n(), 2, "Duflo solve runs in tr_2");
    let m = j.max_degree();
    let mut residual = j.clone();
    let mut f = DufloSeries::zero(m);
    for d in 1..=m {
        if residual.part(d).is_empty() {
            continue;
        }
        if d == 1 {
            return Err(1);
        }
        // Tr((x+y)^d) has coefficient d on the necklace of x y^{d-1}
        let mut letters = vec![1u8; d];
        letters[0] = 0;
        let c = residual.coeff(&Word::new(letters));
        let fd = -(c / Rational::from_integer(d as i64));
        let term = DufloSeries::from_terms(m, [(d, fd.clone())]).trace().deltatilde(s);
        if residual.homogeneous(d) != term.homogeneous(d) {
            return Err(d);
        }
        residual = residual.sub(&term);
        f.set(d, fd);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_oracle() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[1], Rational::new(-1, 2));
        assert_eq!(b[2], Rational::new(1, 6));
        assert_eq!(b[4], Rational::new(-1, 30));
        assert_eq!(b[6], Rational::new(1, 42));
        assert!(b[3].is_zero() && b[5].is_zero());
        let f = bernoulli_duflo(6);
        assert_eq!(f.coeff(2), Rational::new(1, 48));
        assert_eq!(f.coeff(4), Rational::new(-1, 5760));
        assert_eq!(bernoulli_phi(6), f.x_derivative());
    }

    #[test]
    fn solve_round_trip() {
        let s = Rational::one();
        let f = DufloSeries::from_terms(5, [(2, Rational::new(1, 3)), (3, Rational::from_integer(-2))]);
        let mut t = f.trace().deltatilde(&s);
        assert_eq!(t.n(), 2);
        assert_eq!(solve_duflo(&t, &s), Ok(f));
        t.add_word(3, 1, Rational::one());
        assert_eq!(solve_duflo(&t, &s), Err(3));
        assert_eq!(solve_duflo(&CyclicSeries::zero(2, 4), &s), Ok(DufloSeries::zero(4)));
    }
}
