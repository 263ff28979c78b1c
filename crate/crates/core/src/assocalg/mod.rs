//! Truncated free associative algebra and its cyclic quotient.

mod cyclic;

pub(crate) use cyclic::face_images;
pub use cyclic::{delta_tr, deltatilde_tr, trace_project, CyclicSeries};

use rustc_hash::FxHashMap;

use crate::error::{mismatch, Error, Result};
use crate::exactlin::Rational;
use crate::freelie::LieSeries;
use crate::words::{concat_code, letters_of, Letter, Word};

/// Element of `Ass_n` truncated above `max_degree`; one sparse map per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocSeries {
    n: usize,
    max_degree: usize,
    parts: Vec<FxHashMap<u64, Rational>>,
}

impl AssocSeries {
    pub fn zero(n: usize, max_degree: usize) -> Self {
        AssocSeries { n, max_degree, parts: vec![FxHashMap::default(); max_degree + 1] }
    }

    pub fn constant(n: usize, max_degree: usize, c: Rational) -> Self {
        let mut a = Self::zero(n, max_degree);
        a.add_term(0, 0, c);
        a
    }

    pub fn one(n: usize, max_degree: usize) -> Self {
        Self::constant(n, max_degree, Rational::one())
    }

    pub fn generator(n: usize, max_degree: usize, i: usize) -> Self {
        assert!(i < n, "generator {i} out of range");
        let mut a = Self::zero(n, max_degree);
        if max_degree >= 1 {
            a.add_term(1, i as u64, Rational::one());
        }
        a
    }

    pub fn monomial(n: usize, max_degree: usize, w: &Word, c: Rational) -> Self {
        let mut a = Self::zero(n, max_degree);
        if w.len() <= max_degree {
            a.add_term(w.len(), w.code(n), c);
        }
        a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn part(&self, d: usize) -> &FxHashMap<u64, Rational> {
        &self.parts[d]
    }

    pub fn same_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.max_degree != other.max_degree {
            return Err(mismatch(format!(
                "assoc (n={}, N={}) vs (n={}, N={})",
                self.n, self.max_degree, other.n, other.max_degree
            )));
        }
        Ok(())
    }

    /// Adds `c` to the coefficient of the word with `code` in degree `d`; ignored above the truncation.
    pub fn add_term(&mut self, d: usize, code: u64, c: Rational) {
        if d > self.max_degree || c.is_zero() {
            return;
        }
        let slot = self.parts[d].entry(code).or_default();
        *slot += c;
        if slot.is_zero() {
            self.parts[d].remove(&code);
        }
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        if w.len() > self.max_degree {
            return Rational::zero();
        }
        self.parts[w.len()].get(&w.code(self.n)).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.parts[0].get(&0).cloned().unwrap_or_default()
    }

    /// Terms sorted by degree then lexicographically.
    pub fn terms(&self) -> Vec<(Word, Rational)> {
        let mut out = Vec::new();
        for (d, part) in self.parts.iter().enumerate() {
            let mut v: Vec<_> = part.iter().collect();
            v.sort_unstable_by_key(|(c, _)| **c);
            out.extend(v.into_iter().map(|(c, q)| (Word::from_code(*c, self.n, d), q.clone())));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_empty())
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.parts.iter().position(|p| !p.is_empty())
    }

    pub fn truncate(&self, m: usize) -> Self {
        let mut parts = self.parts.clone();
        parts.resize(m + 1, FxHashMap::default());
        AssocSeries { n: self.n, max_degree: m, parts }
    }

    pub fn homogeneous(&self, d: usize) -> Self {
        let mut a = Self::zero(self.n, self.max_degree);
        if d <= self.max_degree {
            a.parts[d] = self.parts[d].clone();
        }
        a
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        assert!(self.n == other.n, "assoc generator count mismatch");
        if c.is_zero() {
            return;
        }
        for d in 0..=self.max_degree.min(other.max_degree) {
            for (code, q) in &other.parts[d] {
                self.add_term(d, *code, q * c);
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
        if c.is_zero() {
            return Self::zero(self.n, self.max_degree);
        }
        let mut a = self.clone();
        for p in a.parts.iter_mut() {
            for q in p.values_mut() {
                *q *= c;
            }
        }
        a
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Product keeping only degrees `≤ limit` (and `≤ max_degree`).
    fn mul_limited(&self, other: &Self, limit: usize) -> Self {
        let top = limit.min(self.max_degree);
        let mut out = Self::zero(self.n, self.max_degree);
        for i in 0..=top {
            if self.parts[i].is_empty() {
                continue;
            }
            for j in 0..=(top - i).min(other.max_degree) {
                if other.parts[j].is_empty() {
                    continue;
                }
                let target = &mut out.parts[i + j];
                for (a, ca) in &self.parts[i] {
                    for (b, cb) in &other.parts[j] {
                        let slot = target.entry(concat_code(*a, *b, j, self.n)).or_default();
                        *slot += ca * cb;
                    }
                }
            }
        }
        for p in out.parts.iter_mut() {
            p.retain(|_, q| !q.is_zero());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(self.mul_limited(other, self.max_degree))
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(other)?.sub(&other.mul(self)?))
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.parts[0].is_empty() {
            return Err(Error::Domain("exp needs a vanishing constant term".into()));
        }
        let mut acc = Self::one(self.n, self.max_degree);
        let mut power = Self::one(self.n, self.max_degree);
        for k in 1..=self.max_degree {
            power = power.mul_limited(self, self.max_degree).scale(&Rational::new(1, k as i64));
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc)
    }

    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() || self.parts[0].len() != 1 {
            return Err(Error::Domain("log needs constant term 1".into()));
        }
        let b = self.sub(&Self::one(self.n, self.max_degree));
        let mut acc = Self::zero(self.n, self.max_degree);
        let mut power = Self::one(self.n, self.max_degree);
        for k in 1..=self.max_degree {
            power = power.mul_limited(&b, self.max_degree);
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc.add_scaled(&power, &Rational::new(sign, k as i64));
        }
        Ok(acc)
    }

    /// `(a₀, ∂_k a)`: `∂_k` collects words ending in `x_k` with that letter removed.
    pub fn partial_k(&self, k: usize) -> (Rational, AssocSeries) {
        let mut out = Self::zero(self.n, self.max_degree);
        for d in 1..=self.max_degree {
            for (code, q) in &self.parts[d] {
                if (code % self.n as u64) as usize == k {
                    out.add_term(d - 1, code / self.n as u64, q.clone());
                }
            }
        }
        (self.constant_term(), out)
    }

    /// Image under the algebra map `x_i ↦ images[i]`; images need zero constant terms.
    pub fn substitute(&self, images: &[AssocSeries]) -> Result<AssocSeries> {
        if images.len() != self.n {
            return Err(mismatch(format!("{} images for {} generators", images.len(), self.n)));
        }
        let (tn, tm) = match images.first() {
            Some(f) => (f.n, f.max_degree),
            None => return Err(mismatch("no images")),
        };
        for im in images {
            if im.n != tn || im.max_degree != tm {
                return Err(mismatch("images have different shapes"));
            }
            if !im.parts[0].is_empty() {
                return Err(Error::Domain("substituted images need zero constant term".into()));
            }
        }
        let min_deg: Vec<Option<usize>> = images.iter().map(|im| im.min_degree()).collect();
        let mut terms: Vec<(Vec<Letter>, Rational)> = Vec::new();
        for d in 0..=self.max_degree.min(tm) {
            for (code, q) in &self.parts[d] {
                terms.push((letters_of(*code, self.n, d), q.clone()));
            }
        }
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let env = SubstEnv { images, min_deg: &min_deg, n: tn, m: tm };
        Ok(env.run(&terms, 0, tm))
    }

    pub fn from_lie(a: &LieSeries) -> Self {
        (*a.to_assoc()).clone()
    }
}

struct SubstEnv<'a> {
    images: &'a [AssocSeries],
    min_deg: &'a [Option<usize>],
    n: usize,
    m: usize,
}

impl SubstEnv<'_> {
    /// Horner-style evaluation over the prefix tree of `terms` below `depth`.
    fn run(&self, terms: &[(Vec<Letter>, Rational)], depth: usize, budget: usize) -> AssocSeries {
        let mut out = AssocSeries::zero(self.n, self.m);
        let mut i = 0;
        while i < terms.len() && terms[i].0.len() == depth {
            out.add_term(0, 0, terms[i].1.clone());
            i += 1;
        }
        while i < terms.len() {
            let l = terms[i].0[depth];
            let mut j = i;
            while j < terms.len() && terms[j].0[depth] == l {
                j += 1;
            }
            if let Some(md) = self.min_deg[l as usize] {
                if md <= budget {
                    let rest = self.run(&terms[i..j], depth + 1, budget - md);
                    if !rest.is_zero() {
                        let prod = self.images[l as usize].mul_limited(&rest, budget);
                        out.add_scaled(&prod, &Rational::one());
                    }
                }
            }
            i = j;
        }
        out
    }
}

/// Associative expansion of a Lie series.
pub fn lie_to_assoc(a: &LieSeries) -> AssocSeries {
    AssocSeries::from_lie(a)
}

pub fn assoc_mul(a: &AssocSeries, b: &AssocSeries) -> Result<AssocSeries> {
    a.mul(b)
}

pub fn exp_assoc(a: &AssocSeries) -> Result<AssocSeries> {
    a.exp()
}

pub fn log_assoc(a: &AssocSeries) -> Result<AssocSeries> {
    a.log()
}

pub fn partial_k(a: &AssocSeries, k: usize) -> (Rational, AssocSeries) {
    a.partial_k(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, m: usize, i: usize) -> AssocSeries {
        AssocSeries::generator(n, m, i)
    }

    fn w(s: &str) -> Word {
        Word::new(s.bytes().map(|b| b - b'x').collect())
    }

    #[test]
    fn products() {
        let xy = x(2, 3, 0).mul(&x(2, 3, 1)).unwrap();
        assert_eq!(xy.terms(), vec![(w("xy"), Rational::one())]);
        let one = AssocSeries::one(2, 3);
        let a = one.add(&x(2, 3, 0));
        let b = one.sub(&x(2, 3, 0));
        let p = a.mul(&b).unwrap();
        let expect = one.sub(&x(2, 3, 0).mul(&x(2, 3, 0)).unwrap());
        assert_eq!(p, expect);
        assert!(x(2, 3, 0).mul(&x(2, 4, 0)).is_err());
    }

    #[test]
    fn exp_log() {
        let z = AssocSeries::zero(2, 4);
        assert_eq!(z.exp().unwrap(), AssocSeries::one(2, 4));
        let e = x(2, 4, 0).exp().unwrap();
        assert_eq!(e.log().unwrap(), x(2, 4, 0));
        assert!(AssocSeries::one(2, 3).exp().is_err());
        assert!(x(2, 3, 0).log().is_err());
        let ch = x(2, 2, 0).exp().unwrap().mul(&x(2, 2, 1).exp().unwrap()).unwrap().log().unwrap();
        let half = Rational::new(1, 2);
        let expect = x(2, 2, 0).add(&x(2, 2, 1)).add(&x(2, 2, 0).commutator(&x(2, 2, 1)).unwrap().scale(&half));
        assert_eq!(ch, expect);
    }

    #[test]
    fn partials() {
        let xy = AssocSeries::monomial(2, 3, &w("xy"), Rational::one());
        let (a0, dy) = xy.partial_k(1);
        assert!(a0.is_zero());
        assert_eq!(dy, x(2, 3, 0));
        assert!(xy.partial_k(0).1.is_zero());
        let br = x(2, 3, 0).commutator(&x(2, 3, 1)).unwrap();
        assert_eq!(br.partial_k(1).1, x(2, 3, 0));
        assert_eq!(br.partial_k(0).1, x(2, 3, 1).neg());
        let c = AssocSeries::constant(2, 3, Rational::from_integer(5));
        let (a0, d0) = c.partial_k(0);
        assert_eq!(a0, Rational::from_integer(5));
        assert!(d0.is_zero() && c.partial_k(1).1.is_zero());
    }

    #[test]
    fn substitution() {
        let xy = AssocSeries::monomial(2, 4, &w("xy"), Rational::one());
        let s = x(2, 4, 0).add(&x(2, 4, 1));
        let out = xy.substitute(&[s.clone(), s.clone()]).unwrap();
        assert_eq!(out, s.mul(&s).unwrap());
        let swapped = xy.substitute(&[x(2, 4, 1), x(2, 4, 0)]).unwrap();
        assert_eq!(swapped.terms(), vec![(w("yx"), Rational::one())]);
    }
}
