//! The Campbell–Hausdorff series.

use std::sync::{Arc, Mutex, OnceLock};

use rustc_hash::FxHashMap;

use super::{eval_lie_poly, LieCarrier, LieSeries};
use crate::assocalg::AssocSeries;
use crate::error::{mismatch, Result};
use crate::exactlin::Rational;

fn compute_bch(n: usize) -> LieSeries {
    let x = AssocSeries::generator(2, n, 0);
    let y = AssocSeries::generator(2, n, 1);
    let prod = x.exp().unwrap().mul(&y.exp().unwrap()).unwrap();
    let log = prod.log().unwrap();
    LieSeries::from_assoc(&log).unwrap_or_else(|e| panic!("Dynkin check failed for ch: {e}"))
}

/// `ch(x, y) = log(e^x e^y)` in `lie_2`, truncated at `n`.
pub fn bch(n: usize) -> LieSeries {
    static CACHE: OnceLock<Mutex<FxHashMap<usize, Arc<LieSeries>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&n) {
        return (**c).clone();
    }
    let c = Arc::new(compute_bch(n));
    cache.lock().unwrap().insert(n, c.clone());
    (*c).clone()
}

/// `ch_s(x, y) = s⁻¹ ch(sx, sy)`: the degree-`k` part scaled by `s^{k−1}`.
pub fn rescaled_ch(s: &Rational, n: usize) -> LieSeries {
    bch(n).graded_scale(|k| if k == 0 { Rational::zero() } else { s.pow(k as u32 - 1) })
}

/// `ch(u, v)` in any graded Lie carrier with positive degrees.
pub fn bch_eval<C: LieCarrier>(u: &C, v: &C) -> Result<C> {
    u.same_carrier(v)?;
    if u.max_degree() != v.max_degree() {
        return Err(mismatch("bch_eval truncations differ"));
    }
    if u.is_zero() {
        return Ok(v.clone());
    }
    if v.is_zero() {
        return Ok(u.clone());
    }
    eval_lie_poly(&bch(u.max_degree()), &[u.clone(), v.clone()])
}

/// `ch_s(x_a, x_b)` inside `lie_n` truncated at `m`.
pub(crate) fn ch_between(n: usize, m: usize, a: usize, b: usize, s: &Rational) -> LieSeries {
    rescaled_ch(s, m)
        .eval_hom(&[LieSeries::generator(n, m, a), LieSeries::generator(n, m, b)])
        .expect("generator images share a shape")
}
