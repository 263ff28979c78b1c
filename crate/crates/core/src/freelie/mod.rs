//! Truncated free Lie algebra in the Lyndon basis.

mod bch;
mod carrier;

pub(crate) use bch::ch_between;
pub use bch::{bch, bch_eval, rescaled_ch};
pub use carrier::{eval_lie_poly, LieCarrier};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::assocalg::AssocSeries;
use crate::error::{mismatch, Error, Result};
use crate::exactlin::{Rational, SparseVec};
use crate::words::{lyndon_table, LyndonWord, Word};

/// Element of `lie_n` truncated above `max_degree`.
///
/// Coordinates are indexed per degree by the position of the Lyndon word in
/// [`lyndon_table`]. The associative expansion is computed on demand and cached.
#[derive(Clone)]
pub struct LieSeries {
    n: usize,
    max_degree: usize,
    parts: Vec<BTreeMap<usize, Rational>>,
    assoc: OnceLock<Arc<AssocSeries>>,
}

impl PartialEq for LieSeries {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.max_degree == other.max_degree && self.parts == other.parts
    }
}

impl Eq for LieSeries {}

impl fmt::Debug for LieSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieSeries(n={}, N={})[", self.n, self.max_degree)?;
        let mut first = true;
        for (w, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}·{w:?}")?;
        }
        write!(f, "]")
    }
}

impl LieSeries {
    pub fn zero(n: usize, max_degree: usize) -> Self {
        LieSeries { n, max_degree, parts: vec![BTreeMap::new(); max_degree + 1], assoc: OnceLock::new() }
    }

    pub fn generator(n: usize, max_degree: usize, i: usize) -> Self {
        assert!(i < n, "generator {i} out of range for n = {n}");
        let mut a = Self::zero(n, max_degree);
        if max_degree >= 1 {
            a.parts[1].insert(i, Rational::one());
        }
        a
    }

    /// `c` times the standard bracketing of a Lyndon word.
    pub fn basis(n: usize, max_degree: usize, w: &LyndonWord, c: Rational) -> Self {
        let mut a = Self::zero(n, max_degree);
        a.add_basis(w.word(), c);
        a
    }

    /// Sum of generators `x_1 + … + x_n`.
    pub fn generator_sum(n: usize, max_degree: usize) -> Self {
        let mut a = Self::zero(n, max_degree);
        if max_degree >= 1 {
            for i in 0..n {
                a.parts[1].insert(i, Rational::one());
            }
        }
        a
    }

    /// From `(degree, lyndon index, coefficient)` triples.
    pub fn from_coords(
        n: usize,
        max_degree: usize,
        coords: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut a = Self::zero(n, max_degree);
        for (d, i, c) in coords {
            a.add_coord(d, i, c);
        }
        a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn part(&self, d: usize) -> &BTreeMap<usize, Rational> {
        &self.parts[d]
    }

    pub fn same_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.max_degree != other.max_degree {
            return Err(mismatch(format!(
                "lie (n={}, N={}) vs (n={}, N={})",
                self.n, self.max_degree, other.n, other.max_degree
            )));
        }
        Ok(())
    }

    fn touch(&mut self) {
        self.assoc = OnceLock::new();
    }

    pub fn add_coord(&mut self, d: usize, i: usize, c: Rational) {
        if d == 0 || d > self.max_degree || c.is_zero() {
            return;
        }
        self.touch();
        let slot = self.parts[d].entry(i).or_default();
        *slot += c;
        if slot.is_zero() {
            self.parts[d].remove(&i);
        }
    }

    /// Adds `c` times the basis element of a Lyndon word; panics if `w` is not Lyndon.
    pub fn add_basis(&mut self, w: &Word, c: Rational) {
        let d = w.len();
        if d == 0 || d > self.max_degree {
            return;
        }
        let t = lyndon_table(self.n, d);
        let i = *t.index.get(&w.code(self.n)).unwrap_or_else(|| panic!("{w:?} is not a Lyndon word"));
        self.add_coord(d, i, c);
    }

    /// Coefficient of the basis element of a Lyndon word (zero for other words).
    pub fn coeff(&self, w: &Word) -> Rational {
        let d = w.len();
        if d == 0 || d > self.max_degree {
            return Rational::zero();
        }
        let t = lyndon_table(self.n, d);
        t.index.get(&w.code(self.n)).and_then(|i| self.parts[d].get(i)).cloned().unwrap_or_default()
    }

    /// `(Lyndon word, coefficient)` in degree then lexicographic order.
    pub fn terms(&self) -> Vec<(Word, Rational)> {
        let mut out = Vec::new();
        for (d, part) in self.parts.iter().enumerate() {
            if part.is_empty() {
                continue;
            }
            let t = lyndon_table(self.n, d);
            out.extend(part.iter().map(|(i, c)| (t.word(*i), c.clone())));
        }
        out
    }

    /// Degree-`d` part as a sparse vector over the Lyndon basis.
    pub fn degree_vector(&self, d: usize) -> SparseVec {
        if d > self.max_degree {
            return Vec::new();
        }
        self.parts[d].iter().map(|(i, c)| (*i, c.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(BTreeMap::is_empty)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.parts.iter().position(|p| !p.is_empty())
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.parts.iter().rposition(|p| !p.is_empty())
    }

    /// Re-truncates at `m`; raising `m` only widens the window with zeros.
    pub fn truncate(&self, m: usize) -> Self {
        let mut parts = self.parts.clone();
        parts.resize(m + 1, BTreeMap::new());
        LieSeries { n: self.n, max_degree: m, parts, assoc: OnceLock::new() }
    }

    pub fn homogeneous(&self, d: usize) -> Self {
        let mut a = Self::zero(self.n, self.max_degree);
        if d <= self.max_degree {
            a.parts[d] = self.parts[d].clone();
        }
        a
    }

    /// Sum of the parts of degree `< d`.
    pub fn below(&self, d: usize) -> Self {
        let mut a = self.clone();
        a.touch();
        for p in a.parts.iter_mut().skip(d) {
            p.clear();
        }
        a
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        assert_eq!(self.n, other.n, "lie generator count mismatch");
        if c.is_zero() || other.is_zero() {
            return;
        }
        self.touch();
        for d in 1..=self.max_degree.min(other.max_degree) {
            for (i, q) in &other.parts[d] {
                let slot = self.parts[d].entry(*i).or_default();
                *slot += q * c;
                if slot.is_zero() {
                    self.parts[d].remove(i);
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
        self.graded_scale(|_| c.clone())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Multiplies the degree-`d` part by `f(d)`.
    pub fn graded_scale(&self, f: impl Fn(usize) -> Rational) -> Self {
        let mut a = Self::zero(self.n, self.max_degree);
        for (d, p) in self.parts.iter().enumerate() {
            if p.is_empty() {
                continue;
            }
            let c = f(d);
            if c.is_zero() {
                continue;
            }
            a.parts[d] = p.iter().map(|(i, q)| (*i, q * &c)).collect();
        }
        a
    }

    /// The grading derivation `l`: degree-`d` part times `d`.
    pub fn grading(&self) -> Self {
        self.graded_scale(|d| Rational::from_integer(d as i64))
    }

    /// Cached associative expansion.
    pub fn to_assoc(&self) -> Arc<AssocSeries> {
        self.assoc
            .get_or_init(|| {
                let mut a = AssocSeries::zero(self.n, self.max_degree);
                for (d, part) in self.parts.iter().enumerate() {
                    if part.is_empty() {
                        continue;
                    }
                    let t = lyndon_table(self.n, d);
                    for (i, c) in part {
                        for &(code, k) in &t.expansions[*i] {
                            a.add_term(d, code, c * &Rational::from_integer(k));
                        }
                    }
                }
                Arc::new(a)
            })
            .clone()
    }

    /// Reads Lyndon coordinates off an associative element, failing unless it is Lie.
    pub fn from_assoc(a: &AssocSeries) -> Result<Self> {
        if !a.part(0).is_empty() {
            return Err(Error::NotLie { degree: 0 });
        }
        let n = a.n();
        let mut out = Self::zero(n, a.max_degree());
        for d in 1..=a.max_degree() {
            if a.part(d).is_empty() {
                continue;
            }
            let t = lyndon_table(n, d);
            let mut residual = a.part(d).clone();
            for (i, &code) in t.codes.iter().enumerate() {
                if residual.is_empty() {
                    break;
                }
                let Some(c) = residual.remove(&code) else { continue };
                for &(w, k) in &t.expansions[i][1..] {
                    let slot = residual.entry(w).or_default();
                    *slot -= &c * &Rational::from_integer(k);
                    if slot.is_zero() {
                        residual.remove(&w);
                    }
                }
                out.parts[d].insert(i, c);
            }
            if !residual.is_empty() {
                return Err(Error::NotLie { degree: d });
            }
        }
        let _ = out.assoc.set(Arc::new(a.clone()));
        Ok(out)
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        match (self.min_degree(), other.min_degree()) {
            (Some(p), Some(q)) if p + q <= self.max_degree => {}
            _ => return Ok(Self::zero(self.n, self.max_degree)),
        }
        let c = self.to_assoc().commutator(&other.to_assoc())?;
        Ok(Self::from_assoc(&c).expect("commutators of Lie elements are Lie"))
    }

    /// Image under the Lie homomorphism `x_i ↦ images[i]`.
    pub fn eval_hom(&self, images: &[LieSeries]) -> Result<Self> {
        if images.len() != self.n {
            return Err(mismatch(format!("{} images for {} generators", images.len(), self.n)));
        }
        let first = images.first().ok_or_else(|| mismatch("no images"))?;
        for im in images {
            first.same_shape(im)?;
        }
        let assoc: Vec<AssocSeries> = images.iter().map(|im| (*im.to_assoc()).clone()).collect();
        let a = self.truncate(self.max_degree.min(first.max_degree)).to_assoc();
        let out = a.substitute(&assoc)?;
        Ok(Self::from_assoc(&out).expect("substitution preserves Lie elements"))
    }

    /// `p_k`: the coefficient of `x_k` in degree one.
    pub fn linear_coeff(&self, k: usize) -> Rational {
        if self.max_degree == 0 {
            return Rational::zero();
        }
        self.parts[1].get(&k).cloned().unwrap_or_default()
    }
}

/// `[a, b]`.
pub fn bracket(a: &LieSeries, b: &LieSeries) -> Result<LieSeries> {
    a.bracket(b)
}

pub fn eval_hom(a: &LieSeries, images: &[LieSeries]) -> Result<LieSeries> {
    a.eval_hom(images)
}

/// δ: `lie_n → lie_{n+1}`, the alternating sum of face substitutions.
pub fn delta_lie(f: &LieSeries) -> LieSeries {
    coboundary_lie(f, None)
}

/// δ̃_s on `lie_n`: merged pairs receive `ch_s(x_i, x_{i+1})`.
pub fn deltatilde_lie(f: &LieSeries, s: &Rational) -> LieSeries {
    coboundary_lie(f, Some(s))
}

fn coboundary_lie(f: &LieSeries, s: Option<&Rational>) -> LieSeries {
    let n = f.n;
    let m = f.max_degree;
    let mut out = LieSeries::zero(n + 1, m);
    for i in 0..=n + 1 {
        let images = crate::assocalg::face_images(
            n,
            i,
            |j| LieSeries::generator(n + 1, m, j),
            |a, b| match s {
                None => LieSeries::generator(n + 1, m, a).add(&LieSeries::generator(n + 1, m, b)),
                Some(s) => ch_between(n + 1, m, a, b, s),
            },
        );
        let term = f.eval_hom(&images).expect("face images share a shape");
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

    fn gen(n: usize, m: usize, i: usize) -> LieSeries {
        LieSeries::generator(n, m, i)
    }

    #[test]
    fn brackets() {
        let x = gen(2, 4, 0);
        let y = gen(2, 4, 1);
        assert!(x.bracket(&x).unwrap().is_zero());
        let xy = x.bracket(&y).unwrap();
        assert!(xy.add(&y.bracket(&x).unwrap()).is_zero());
        assert_eq!(xy.coeff(&w("xy")), Rational::one());
        let xxy = x.bracket(&xy).unwrap();
        let mut expect = LieSeries::zero(2, 4);
        expect.add_basis(&w("xxy"), Rational::one());
        assert_eq!(xxy, expect);
        let a = xxy.to_assoc();
        let xa = AssocSeries::generator(2, 4, 0);
        let ya = AssocSeries::generator(2, 4, 1);
        let direct = xa.commutator(&xa.commutator(&ya).unwrap()).unwrap();
        assert_eq!(*a, direct);
        assert!(x.bracket(&gen(2, 3, 1)).is_err());
    }

    #[test]
    fn not_lie_detected() {
        let a = AssocSeries::monomial(2, 3, &w("xy"), Rational::one());
        assert_eq!(LieSeries::from_assoc(&a), Err(Error::NotLie { degree: 2 }));
    }

    #[test]
    fn hom_examples() {
        let x = gen(2, 4, 0);
        let y = gen(2, 4, 1);
        let xy = x.bracket(&y).unwrap();
        assert_eq!(xy.eval_hom(&[y.clone(), x.clone()]).unwrap(), xy.neg());
        let ch = bch(4);
        assert_eq!(ch.eval_hom(&[x.clone(), LieSeries::zero(2, 4)]).unwrap(), x);
    }

    #[test]
    fn delta_examples() {
        let x = gen(1, 5, 0);
        assert!(delta_lie(&x).is_zero());
        let x2 = gen(2, 5, 0);
        let y2 = gen(2, 5, 1);
        let xy = x2.bracket(&y2).unwrap();
        assert!(delta_lie(&xy).is_zero());
        let xxy = x2.bracket(&xy).unwrap();
        assert!(!delta_lie(&xxy).is_zero());
    }
}
