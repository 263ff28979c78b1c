//! Cyclic words `tr_n` and the differentials δ, δ̃_s.

use std::collections::BTreeMap;

use super::AssocSeries;
use crate::error::{mismatch, Result};
use crate::exactlin::Rational;
use crate::freelie::ch_between;
use crate::words::{canonical_necklace, necklace_code, Necklace, Word};

/// Element of `tr_n` truncated above `max_degree`, keyed by canonical necklace codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicSeries {
    n: usize,
    max_degree: usize,
    parts: Vec<BTreeMap<u64, Rational>>,
}

impl CyclicSeries {
    pub fn zero(n: usize, max_degree: usize) -> Self {
        CyclicSeries { n, max_degree, parts: vec![BTreeMap::new(); max_degree + 1] }
    }

    /// `c·Tr(w)`.
    pub fn trace_of(n: usize, max_degree: usize, w: &Word, c: Rational) -> Self {
        let mut t = Self::zero(n, max_degree);
        t.add_word(w.len(), w.code(n), c);
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn part(&self, d: usize) -> &BTreeMap<u64, Rational> {
        &self.parts[d]
    }

    pub fn same_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.max_degree != other.max_degree {
            return Err(mismatch(format!(
                "cyclic (n={}, N={}) vs (n={}, N={})",
                self.n, self.max_degree, other.n, other.max_degree
            )));
        }
        Ok(())
    }

    /// Adds `c·Tr(word with this code)`; degree 0 and degrees above the truncation are dropped.
    pub fn add_word(&mut self, d: usize, code: u64, c: Rational) {
        if d == 0 || d > self.max_degree || c.is_zero() {
            return;
        }
        let key = necklace_code(code, self.n, d);
        let slot = self.parts[d].entry(key).or_default();
        *slot += c;
        if slot.is_zero() {
            self.parts[d].remove(&key);
        }
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        if w.is_empty() || w.len() > self.max_degree {
            return Rational::zero();
        }
        let key = necklace_code(w.code(self.n), self.n, w.len());
        self.parts[w.len()].get(&key).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> Vec<(Necklace, Rational)> {
        let mut out = Vec::new();
        for (d, part) in self.parts.iter().enumerate() {
            for (code, q) in part {
                out.push((canonical_necklace(&Word::from_code(*code, self.n, d)), q.clone()));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(BTreeMap::is_empty)
    }

    pub fn truncate(&self, m: usize) -> Self {
        let mut parts = self.parts.clone();
        parts.resize(m + 1, BTreeMap::new());
        CyclicSeries { n: self.n, max_degree: m, parts }
    }

    pub fn homogeneous(&self, d: usize) -> Self {
        let mut t = Self::zero(self.n, self.max_degree);
        if d <= self.max_degree {
            t.parts[d] = self.parts[d].clone();
        }
        t
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        assert!(self.n == other.n, "cyclic generator count mismatch");
        if c.is_zero() {
            return;
        }
        for d in 1..=self.max_degree.min(other.max_degree) {
            for (code, q) in &other.parts[d] {
                let slot = self.parts[d].entry(*code).or_default();
                *slot += q * c;
                if slot.is_zero() {
                    self.parts[d].remove(code);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut a = self.clone();
        a.add_scaled(other, &Rational::one());
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut a = self.clone();
        a.add_scaled(other, &-Rational::one());
        a
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut a = Self::zero(self.n, self.max_degree);
        a.add_scaled(self, c);
        a
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Scales the degree-`d` part by `f(d)`.
    pub fn graded_scale(&self, f: impl Fn(usize) -> Rational) -> Self {
        let mut a = self.clone();
        for (d, p) in a.parts.iter_mut().enumerate() {
            let c = f(d);
            if c.is_zero() {
                p.clear();
            } else {
                for q in p.values_mut() {
                    *q *= &c;
                }
            }
        }
        a
    }

    /// Lifts each necklace to its representative word.
    pub fn lift(&self) -> AssocSeries {
        let mut a = AssocSeries::zero(self.n, self.max_degree);
        for (d, part) in self.parts.iter().enumerate() {
            for (code, q) in part {
                a.add_term(d, *code, q.clone());
            }
        }
        a
    }

    /// `Tr(f(images))`, computed through a word lift.
    pub fn substitute(&self, images: &[AssocSeries]) -> Result<CyclicSeries> {
        Ok(trace_project(&self.lift().substitute(images)?))
    }

    /// The differential δ: `tr_n → tr_{n+1}`.
    pub fn delta(&self) -> CyclicSeries {
        coboundary(self, None)
    }

    /// δ̃_s, substituting `ch_s(x_i, x_{i+1})` for the merged pairs.
    pub fn deltatilde(&self, s: &Rational) -> CyclicSeries {
        coboundary(self, Some(s))
    }
}

/// `Tr`: drops degree 0 and sums over rotations.
pub fn trace_project(a: &AssocSeries) -> CyclicSeries {
    let mut t = CyclicSeries::zero(a.n(), a.max_degree());
    for d in 1..=a.max_degree() {
        for (code, q) in a.part(d) {
            t.add_word(d, *code, q.clone());
        }
    }
    t
}

pub fn delta_tr(f: &CyclicSeries) -> CyclicSeries {
    f.delta()
}

pub fn deltatilde_tr(f: &CyclicSeries, s: &Rational) -> CyclicSeries {
    f.deltatilde(s)
}

/// Images of `x_1..x_n` for the `i`-th face of the coboundary into `n+1` letters;
/// `merge` builds the element replacing `x_i + x_{i+1}`.
pub(crate) fn face_images<T>(
    n: usize,
    i: usize,
    generator: impl Fn(usize) -> T,
    merge: impl Fn(usize, usize) -> T,
) -> Vec<T> {
    (0..n)
        .map(|j| {
            if i == 0 {
                generator(j + 1)
            } else if i == n + 1 || j + 1 < i {
                generator(j)
            } else if j + 1 == i {
                merge(j, j + 1)
            } else {
                generator(j + 1)
            }
        })
        .collect()
}

fn coboundary(f: &CyclicSeries, s: Option<&Rational>) -> CyclicSeries {
    let n = f.n;
    let m = f.max_degree;
    let mut out = CyclicSeries::zero(n + 1, m);
    for i in 0..=n + 1 {
        let images = face_images(
            n,
            i,
            |j| AssocSeries::generator(n + 1, m, j),
            |a, b| match s {
                None => AssocSeries::generator(n + 1, m, a).add(&AssocSeries::generator(n + 1, m, b)),
                Some(s) => (*ch_between(n + 1, m, a, b, s).to_assoc()).clone(),
            },
        );
        let term = f.substitute(&images).expect("face images share a shape");
        let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
        out.add_scaled(&term, &sign);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::new(s.bytes().map(|b| b - b'x').collect())
    }

    fn tr(n: usize, m: usize, s: &str, c: i64) -> CyclicSeries {
        CyclicSeries::trace_of(n, m, &w(s), Rational::from_integer(c))
    }

    #[test]
    fn trace_kills_commutators() {
        let x = AssocSeries::generator(2, 4, 0);
        let y = AssocSeries::generator(2, 4, 1);
        assert!(trace_project(&x.commutator(&y).unwrap()).is_zero());
        let xyxy = AssocSeries::monomial(2, 4, &w("xyxy"), Rational::one());
        assert_eq!(trace_project(&xyxy), tr(2, 4, "xyxy", 1));
        assert_eq!(tr(2, 4, "yx", 1), tr(2, 4, "xy", 1));
    }

    #[test]
    fn delta_examples() {
        assert!(tr(1, 4, "x", 1).delta().is_zero());
        assert_eq!(tr(1, 4, "xx", 1).delta(), tr(2, 4, "xy", -2));
        assert!(tr(1, 5, "x", 1).deltatilde(&Rational::one()).is_zero());
    }
}
