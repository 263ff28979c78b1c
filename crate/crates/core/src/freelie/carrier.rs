//! Evaluation of Lie polynomials in other graded Lie algebras.

use rustc_hash::FxHashMap;

use super::LieSeries;
use crate::error::{mismatch, Result};
use crate::exactlin::Rational;
use crate::words::lyndon_table;

/// A truncated graded Lie algebra concentrated in positive degrees.
pub trait LieCarrier: Clone {
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn lie_bracket(&self, other: &Self) -> Result<Self>;
    fn is_zero(&self) -> bool;
    fn max_degree(&self) -> usize;
    /// Errors unless both live in the same algebra and truncation.
    fn same_carrier(&self, other: &Self) -> Result<()>;
}

impl LieCarrier for LieSeries {
    fn zero_like(&self) -> Self {
        LieSeries::zero(self.n(), self.max_degree())
    }
    fn add(&self, other: &Self) -> Self {
        LieSeries::add(self, other)
    }
    fn scale(&self, c: &Rational) -> Self {
        LieSeries::scale(self, c)
    }
    fn lie_bracket(&self, other: &Self) -> Result<Self> {
        self.bracket(other)
    }
    fn is_zero(&self) -> bool {
        LieSeries::is_zero(self)
    }
    fn max_degree(&self) -> usize {
        LieSeries::max_degree(self)
    }
    fn same_carrier(&self, other: &Self) -> Result<()> {
        self.same_shape(other)
    }
}

/// `poly(images)`, evaluated bracket by bracket along standard factorizations.
pub fn eval_lie_poly<C: LieCarrier>(poly: &LieSeries, images: &[C]) -> Result<C> {
    if images.len() != poly.n() {
        return Err(mismatch(format!("{} images for {} generators", images.len(), poly.n())));
    }
    let first = images.first().ok_or_else(|| mismatch("no images"))?;
    for im in images {
        first.same_carrier(im)?;
    }
    let top = first.max_degree().min(poly.max_degree());
    let mut memo: FxHashMap<(usize, usize), C> = FxHashMap::default();
    let mut out = first.zero_like();
    for d in 1..=top {
        for (i, c) in poly.part(d) {
            let v = word_value(poly.n(), d, *i, images, &mut memo)?;
            if !v.is_zero() {
                out = out.add(&v.scale(c));
            }
        }
    }
    Ok(out)
}

fn word_value<C: LieCarrier>(
    n: usize,
    d: usize,
    i: usize,
    images: &[C],
    memo: &mut FxHashMap<(usize, usize), C>,
) -> Result<C> {
    if d == 1 {
        return Ok(images[i].clone());
    }
    if let Some(v) = memo.get(&(d, i)) {
        return Ok(v.clone());
    }
    let t = lyndon_table(n, d);
    let (k, li, ri) = t.factors[i].expect("higher-degree Lyndon words factor");
    let a = word_value(n, k, li, images, memo)?;
    let v = if a.is_zero() {
        a.zero_like()
    } else {
        let b = word_value(n, d - k, ri, images, memo)?;
        a.lie_bracket(&b)?
    };
    memo.insert((d, i), v.clone());
    Ok(v)
}
