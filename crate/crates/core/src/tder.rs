//! Tangential derivations `x_k ↦ [x_k, a_k]` of the free Lie algebra.

use std::fmt;

use crate::assocalg::{face_images, trace_project, AssocSeries, CyclicSeries};
use crate::error::{mismatch, Error, Result};
use crate::exactlin::{Rational, SparseVec};
use crate::freelie::{LieCarrier, LieSeries};
use crate::words::{witt_dimension, word_count};

/// A normalized tuple `(a_1, …, a_n)`: slot `k` carries no `x_k`-linear term.
#[derive(Clone, PartialEq, Eq)]
pub struct TangentialDerivation {
    n: usize,
    max_degree: usize,
    comps: Vec<LieSeries>,
}

impl fmt::Debug for TangentialDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.comps).finish()
    }
}

/// Things a tangential derivation acts on.
pub trait DerivationTarget: Sized {
    fn apply_derivation(&self, u: &TangentialDerivation) -> Result<Self>;
}

impl DerivationTarget for AssocSeries {
    fn apply_derivation(&self, u: &TangentialDerivation) -> Result<Self> {
        u.apply_assoc(self)
    }
}

impl DerivationTarget for LieSeries {
    fn apply_derivation(&self, u: &TangentialDerivation) -> Result<Self> {
        let a = u.apply_assoc(&self.to_assoc())?;
        Ok(LieSeries::from_assoc(&a).expect("derivations preserve Lie elements"))
    }
}

impl DerivationTarget for CyclicSeries {
    fn apply_derivation(&self, u: &TangentialDerivation) -> Result<Self> {
        Ok(trace_project(&u.apply_assoc(&self.lift())?))
    }
}

impl TangentialDerivation {
    pub fn zero(n: usize, max_degree: usize) -> Self {
        TangentialDerivation { n, max_degree, comps: vec![LieSeries::zero(n, max_degree); n] }
    }

    /// Builds the derivation of a raw tuple, stripping each `x_k` term from slot `k`.
    pub fn normalize(raw: Vec<LieSeries>) -> Result<Self> {
        let n = raw.len();
        let first = raw.first().ok_or_else(|| mismatch("empty tuple"))?;
        let max_degree = first.max_degree();
        for a in &raw {
            if a.n() != n || a.max_degree() != max_degree {
                return Err(mismatch(format!(
                    "tuple of length {n} needs components over {n} generators with one truncation"
                )));
            }
        }
        let comps = raw
            .into_iter()
            .enumerate()
            .map(|(k, mut a)| {
                let c = a.linear_coeff(k);
                if !c.is_zero() {
                    a.add_coord(1, k, -c);
                }
                a
            })
            .collect();
        Ok(TangentialDerivation { n, max_degree, comps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn components(&self) -> &[LieSeries] {
        &self.comps
    }

    pub fn component(&self, k: usize) -> &LieSeries {
        &self.comps[k]
    }

    pub fn same_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.max_degree != other.max_degree {
            return Err(mismatch(format!(
                "tder (n={}, N={}) vs (n={}, N={})",
                self.n, self.max_degree, other.n, other.max_degree
            )));
        }
        Ok(())
    }

    fn map(&self, f: impl Fn(&LieSeries) -> LieSeries) -> Self {
        TangentialDerivation { n: self.n, max_degree: self.max_degree, comps: self.comps.iter().map(f).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(&LieSeries, &LieSeries) -> LieSeries) -> Self {
        self.same_shape(other).expect("tder shapes differ");
        TangentialDerivation {
            n: self.n,
            max_degree: self.max_degree,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, LieSeries::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, LieSeries::sub)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|a| a.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.map(LieSeries::neg)
    }

    pub fn graded_scale(&self, f: impl Fn(usize) -> Rational) -> Self {
        self.map(|a| a.graded_scale(&f))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(LieSeries::is_zero)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.comps.iter().filter_map(LieSeries::min_degree).min()
    }

    pub fn truncate(&self, m: usize) -> Self {
        TangentialDerivation { n: self.n, max_degree: m, comps: self.comps.iter().map(|a| a.truncate(m)).collect() }
    }

    pub fn homogeneous(&self, d: usize) -> Self {
        self.map(|a| a.homogeneous(d))
    }

    pub fn below(&self, d: usize) -> Self {
        self.map(|a| a.below(d))
    }

    /// Images `[x_k, a_k]` of the generators, as associative series truncated at `m`.
    fn generator_images(&self, m: usize) -> Vec<Vec<(usize, u64, Rational)>> {
        let n = self.n;
        (0..n)
            .map(|k| {
                let a = self.comps[k].to_assoc();
                let mut img = AssocSeries::zero(n, m);
                for d in 1..=self.max_degree.min(m.saturating_sub(1)) {
                    for (code, c) in a.part(d) {
                        img.add_term(d + 1, k as u64 * word_count(n, d) + code, c.clone());
                        img.add_term(d + 1, code * n as u64 + k as u64, -c.clone());
                    }
                }
                let mut v = Vec::new();
                for e in 1..=m {
                    for (code, c) in img.part(e) {
                        v.push((e, *code, c.clone()));
                    }
                }
                v
            })
            .collect()
    }

    /// Leibniz extension to `Ass_n`; the target may be truncated up to `N + 1`.
    pub fn apply_assoc(&self, a: &AssocSeries) -> Result<AssocSeries> {
        if a.n() != self.n {
            return Err(mismatch("derivation and target have different generator counts"));
        }
        let m = a.max_degree();
        if m > self.max_degree + 1 {
            return Err(mismatch(format!(
                "target truncated at {m} exceeds what a derivation known to degree {} determines",
                self.max_degree
            )));
        }
        let n = self.n;
        let mut out = AssocSeries::zero(n, m);
        if self.is_zero() {
            return Ok(out);
        }
        let images = self.generator_images(m);
        for d in 1..m {
            for (code, c) in a.part(d) {
                for p in 0..d {
                    let tail = word_count(n, d - p - 1);
                    let prefix = code / (tail * n as u64);
                    let letter = ((code / tail) % n as u64) as usize;
                    let suffix = code % tail;
                    for (e, img, ic) in &images[letter] {
                        let total = d - 1 + e;
                        if total > m {
                            break;
                        }
                        let w = (prefix * word_count(n, *e) + img) * tail + suffix;
                        out.add_term(total, w, c * ic);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply<T: DerivationTarget>(&self, a: &T) -> Result<T> {
        a.apply_derivation(self)
    }

    /// `[u, v] = u∘v − v∘u`; slot `k` is `u(b_k) − v(a_k) + [a_k, b_k]`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let n = self.n;
        let m = self.max_degree;
        match (self.min_degree(), other.min_degree()) {
            (Some(p), Some(q)) if p + q <= m => {}
            _ => return Ok(Self::zero(n, m)),
        }
        let raw: Result<Vec<LieSeries>> = (0..n)
            .map(|k| {
                let a = &self.comps[k];
                let b = &other.comps[k];
                let ub = self.apply(b)?;
                let va = other.apply(a)?;
                Ok(ub.sub(&va).add(&a.bracket(b)?))
            })
            .collect();
        Self::normalize(raw?)
    }

    /// True iff the derivation kills `x_1 + … + x_n` (checked through degree `N + 1`).
    pub fn is_special(&self) -> bool {
        let s = LieSeries::generator_sum(self.n, self.max_degree + 1);
        self.apply(&s).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// `div(u) = Σ_k Tr(x_k ∂_k a_k)`.
    pub fn divergence(&self) -> CyclicSeries {
        let n = self.n;
        let mut out = CyclicSeries::zero(n, self.max_degree);
        for (k, a) in self.comps.iter().enumerate() {
            let assoc = a.to_assoc();
            for d in 1..=self.max_degree {
                for (code, c) in assoc.part(d) {
                    if (code % n as u64) as usize == k {
                        out.add_word(d, *code, c.clone());
                    }
                }
            }
        }
        out
    }

    /// Substitution along a simplicial, coproduct or permutation pattern.
    pub fn pattern_map(&self, pattern: &Pattern) -> Result<Self> {
        if pattern.subsets.len() != self.n {
            return Err(Error::Pattern(format!(
                "pattern has {} blocks, derivation has {} slots",
                pattern.subsets.len(),
                self.n
            )));
        }
        let m = pattern.m;
        let big_n = self.max_degree;
        let images: Vec<LieSeries> = pattern
            .subsets
            .iter()
            .map(|s| {
                let mut x = LieSeries::zero(m, big_n);
                for &p in s {
                    x.add_scaled(&LieSeries::generator(m, big_n, p - 1), &Rational::one());
                }
                x
            })
            .collect();
        let mut raw = vec![LieSeries::zero(m, big_n); m];
        for (i, s) in pattern.subsets.iter().enumerate() {
            if self.comps[i].is_zero() {
                continue;
            }
            let image = self.comps[i].eval_hom(&images)?;
            for &q in s {
                raw[q - 1] = image.clone();
            }
        }
        Self::normalize(raw)
    }

    /// `d: dert_n → dert_{n+1}`.
    pub fn d_differential(&self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n + 1, self.max_degree);
        for i in 0..=n + 1 {
            let subsets = face_images(n, i, |j| vec![j + 1], |a, b| vec![a + 1, b + 1]);
            let p = Pattern::new(n + 1, subsets).expect("face patterns are valid");
            let term = self.pattern_map(&p).expect("face patterns match the arity");
            out = if i % 2 == 0 { out.add(&term) } else { out.sub(&term) };
        }
        out
    }

    /// Degree-`d` coordinates: index `slot · W(n,d) + lyndon index`.
    pub fn degree_vector(&self, d: usize) -> SparseVec {
        let w = witt_dimension(self.n, d) as usize;
        let mut v = Vec::new();
        for (k, a) in self.comps.iter().enumerate() {
            v.extend(a.degree_vector(d).into_iter().map(|(i, c)| (k * w + i, c)));
        }
        v
    }

    /// Inverse of [`Self::degree_vector`], homogeneous of degree `d`.
    pub fn from_degree_vector(n: usize, max_degree: usize, d: usize, v: &[(usize, Rational)]) -> Self {
        let w = witt_dimension(n, d) as usize;
        let mut comps = vec![LieSeries::zero(n, max_degree); n];
        for (idx, c) in v {
            comps[idx / w].add_coord(d, idx % w, c.clone());
        }
        Self::normalize(comps).expect("components share a shape")
    }
}

/// Number of degree-`d` coordinates of `dert_n` (before normalization).
pub fn tder_coordinate_count(n: usize, d: usize) -> usize {
    n * witt_dimension(n, d) as usize
}

impl LieCarrier for TangentialDerivation {
    fn zero_like(&self) -> Self {
        Self::zero(self.n, self.max_degree)
    }
    fn add(&self, other: &Self) -> Self {
        TangentialDerivation::add(self, other)
    }
    fn scale(&self, c: &Rational) -> Self {
        TangentialDerivation::scale(self, c)
    }
    fn lie_bracket(&self, other: &Self) -> Result<Self> {
        self.bracket(other)
    }
    fn is_zero(&self) -> bool {
        TangentialDerivation::is_zero(self)
    }
    fn max_degree(&self) -> usize {
        self.max_degree
    }
    fn same_carrier(&self, other: &Self) -> Result<()> {
        self.same_shape(other)
    }
}

/// Ordered disjoint nonempty blocks `S_1, …, S_n` of `{1..m}` (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    m: usize,
    subsets: Vec<Vec<usize>>,
}

impl Pattern {
    pub fn new(m: usize, subsets: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; m + 1];
        for s in &subsets {
            if s.is_empty() {
                return Err(Error::Pattern("empty block".into()));
            }
            for &p in s {
                if p == 0 || p > m {
                    return Err(Error::Pattern(format!("index {p} outside 1..={m}")));
                }
                if seen[p] {
                    return Err(Error::Pattern(format!("index {p} appears twice")));
                }
                seen[p] = true;
            }
        }
        Ok(Pattern { m, subsets })
    }

    /// Singleton blocks `({σ_1}, …, {σ_n})` inside `{1..m}`.
    pub fn singletons(m: usize, order: &[usize]) -> Result<Self> {
        Self::new(m, order.iter().map(|&p| vec![p]).collect())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }
}

pub fn normalize(raw: Vec<LieSeries>) -> Result<TangentialDerivation> {
    TangentialDerivation::normalize(raw)
}

pub fn bracket_tder(u: &TangentialDerivation, v: &TangentialDerivation) -> Result<TangentialDerivation> {
    u.bracket(v)
}

pub fn is_special(u: &TangentialDerivation) -> bool {
    u.is_special()
}

pub fn divergence(u: &TangentialDerivation) -> CyclicSeries {
    u.divergence()
}

pub fn pattern_map(u: &TangentialDerivation, pattern: &Pattern) -> Result<TangentialDerivation> {
    u.pattern_map(pattern)
}

pub fn d_differential(u: &TangentialDerivation) -> TangentialDerivation {
    u.d_differential()
}

/// `t^{i,j}` in `dert_n` (1-based, `i < j`): `x_j` in slot `i`, `x_i` in slot `j`.
pub fn tn_generator(i: usize, j: usize, n: usize, max_degree: usize) -> Result<TangentialDerivation> {
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::Range(format!("t^{{{i},{j}}} needs 1 ≤ i < j ≤ {n}")));
    }
    let mut comps = vec![LieSeries::zero(n, max_degree); n];
    comps[i - 1] = LieSeries::generator(n, max_degree, j - 1);
    comps[j - 1] = LieSeries::generator(n, max_degree, i - 1);
    TangentialDerivation::normalize(comps)
}

/// `t = t^{1,2} = (y, x)` in `dert_2`.
pub fn t_element(max_degree: usize) -> TangentialDerivation {
    tn_generator(1, 2, 2, max_degree).expect("valid indices")
}

/// `r = (y, 0)` in `dert_2`.
pub fn r_element(max_degree: usize) -> TangentialDerivation {
    TangentialDerivation::normalize(vec![LieSeries::generator(2, max_degree, 1), LieSeries::zero(2, max_degree)])
        .expect("valid tuple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;

    fn w(s: &str) -> Word {
        Word::new(s.bytes().map(|b| b - b'x').collect())
    }

    fn g(n: usize, m: usize, i: usize) -> LieSeries {
        LieSeries::generator(n, m, i)
    }

    fn br(a: &LieSeries, b: &LieSeries) -> LieSeries {
        a.bracket(b).unwrap()
    }

    fn tuple(v: Vec<LieSeries>) -> TangentialDerivation {
        TangentialDerivation::normalize(v).unwrap()
    }

    #[test]
    fn normalization() {
        let (x, y) = (g(2, 3, 0), g(2, 3, 1));
        let u = tuple(vec![y.add(&x.scale(&Rational::from_integer(3))), x.clone()]);
        assert_eq!(u, tuple(vec![y.clone(), x.clone()]));
        let u = tuple(vec![x.clone(), y.clone()]);
        assert!(u.component(0).is_zero() && u.component(1).is_zero());
        let u = tuple(vec![x.clone(), x.clone()]);
        assert!(u.component(0).is_zero());
        assert_eq!(u.component(1), &x);
    }

    #[test]
    fn actions() {
        let t = t_element(4);
        let s = LieSeries::generator_sum(2, 4);
        assert!(t.apply(&s).unwrap().is_zero());
        let r = r_element(4);
        let trxy = CyclicSeries::trace_of(2, 4, &w("xy"), Rational::one());
        assert!(r.apply(&trxy).unwrap().is_zero());
        let c = AssocSeries::constant(2, 4, Rational::from_integer(3));
        assert!(r.apply(&c).unwrap().is_zero());
        assert!(t.is_special());
        assert!(!r.is_special());
        assert!(TangentialDerivation::zero(3, 3).is_special());
    }

    #[test]
    fn brackets_from_examples() {
        let m = 4;
        let (x, y, z) = (g(3, m, 0), g(3, m, 1), g(3, m, 2));
        let t13 = tn_generator(1, 3, 3, m).unwrap();
        let t23 = tn_generator(2, 3, 3, m).unwrap();
        let expect = tuple(vec![br(&y, &z), br(&z, &x), br(&x, &y)]);
        assert_eq!(t13.bracket(&t23).unwrap(), expect);
        let r12 = tuple(vec![y.clone(), LieSeries::zero(3, m), LieSeries::zero(3, m)]);
        let r13 = tuple(vec![z.clone(), LieSeries::zero(3, m), LieSeries::zero(3, m)]);
        let expect = tuple(vec![br(&y, &z), LieSeries::zero(3, m), LieSeries::zero(3, m)]);
        assert_eq!(r12.bracket(&r13).unwrap(), expect);
        assert!(t13.bracket(&t13).unwrap().is_zero());
    }

    #[test]
    fn divergence_examples() {
        let m = 4;
        assert!(t_element(m).divergence().is_zero());
        assert!(r_element(m).divergence().is_zero());
        let (x, y) = (g(2, m, 0), g(2, m, 1));
        let u = tuple(vec![br(&x, &y), LieSeries::zero(2, m)]);
        assert_eq!(u.divergence(), CyclicSeries::trace_of(2, m, &w("xy"), -Rational::one()));
    }

    #[test]
    fn patterns() {
        let m = 3;
        let t = t_element(m);
        let p = Pattern::new(3, vec![vec![1, 2], vec![3]]).unwrap();
        let t13 = tn_generator(1, 3, 3, m).unwrap();
        let t23 = tn_generator(2, 3, 3, m).unwrap();
        assert_eq!(t.pattern_map(&p).unwrap(), t13.add(&t23));
        let r = r_element(m);
        let p = Pattern::new(3, vec![vec![1], vec![2, 3]]).unwrap();
        let (y3, z3) = (g(3, m, 1), g(3, m, 2));
        let expect = tuple(vec![y3.add(&z3), LieSeries::zero(3, m), LieSeries::zero(3, m)]);
        assert_eq!(r.pattern_map(&p).unwrap(), expect);
        let (x, y) = (g(2, m, 0), g(2, m, 1));
        let a = br(&x, &br(&x, &y));
        let b = br(&y, &br(&x, &y));
        let u = tuple(vec![a.clone(), b.clone()]);
        let swap = Pattern::singletons(2, &[2, 1]).unwrap();
        let expect = tuple(vec![b.eval_hom(&[y.clone(), x.clone()]).unwrap(), a.eval_hom(&[y, x]).unwrap()]);
        assert_eq!(u.pattern_map(&swap).unwrap(), expect);
        assert!(Pattern::new(3, vec![vec![1, 2], vec![2]]).is_err());
        assert!(Pattern::new(3, vec![vec![], vec![2]]).is_err());
    }

    #[test]
    fn differential_examples() {
        let m = 4;
        assert!(r_element(m).d_differential().is_zero());
        assert!(t_element(m).d_differential().is_zero());
        let (x, y) = (g(2, m, 0), g(2, m, 1));
        let (al, be) = (Rational::from_integer(2), Rational::from_integer(5));
        let xy = br(&x, &y);
        let u = tuple(vec![xy.scale(&al), xy.scale(&be)]);
        let (x3, y3, z3) = (g(3, m, 0), g(3, m, 1), g(3, m, 2));
        let expect =
            tuple(vec![br(&y3, &z3).scale(&-al.clone()), br(&z3, &x3).scale(&(&al - &be)), br(&x3, &y3).scale(&be)]);
        assert_eq!(u.d_differential(), expect);
        assert!(TangentialDerivation::zero(2, m).d_differential().is_zero());
    }

    #[test]
    fn tn_generators() {
        let m = 4;
        assert_eq!(tn_generator(1, 2, 2, m).unwrap(), tuple(vec![g(2, m, 1), g(2, m, 0)]));
        let z = LieSeries::zero(3, m);
        assert_eq!(tn_generator(1, 3, 3, m).unwrap(), tuple(vec![g(3, m, 2), z.clone(), g(3, m, 0)]));
        assert!(tn_generator(2, 2, 3, m).is_err());
        let t12 = tn_generator(1, 2, 3, m).unwrap();
        let t13 = tn_generator(1, 3, 3, m).unwrap();
        let t23 = tn_generator(2, 3, 3, m).unwrap();
        let c = t12.add(&t13).add(&t23);
        for t in [&t12, &t13, &t23] {
            assert!(c.bracket(t).unwrap().is_zero());
        }
    }
}
