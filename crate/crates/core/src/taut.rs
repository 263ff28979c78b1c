//! The groups `TAut_n = exp(dert_n)`, stored through logarithms.

use crate::assocalg::{AssocSeries, CyclicSeries};
use crate::error::{mismatch, Result};
use crate::exactlin::Rational;
use crate::freelie::{bch, bch_eval, LieSeries};
use crate::tder::{r_element, t_element, DerivationTarget, Pattern, TangentialDerivation};
use crate::words::word_count;

/// Series types that `exp(u)` acts on.
pub trait ActionTarget: DerivationTarget + Clone {
    fn target_add(&self, other: &Self) -> Self;
    fn target_scale(&self, c: &Rational) -> Self;
    fn target_is_zero(&self) -> bool;
    fn target_max_degree(&self) -> usize;
}

macro_rules! action_target {
    ($t:ty) => {
        impl ActionTarget for $t {
            fn target_add(&self, other: &Self) -> Self {
                self.add(other)
            }
            fn target_scale(&self, c: &Rational) -> Self {
                self.scale(c)
            }
            fn target_is_zero(&self) -> bool {
                self.is_zero()
            }
            fn target_max_degree(&self) -> usize {
                self.max_degree()
            }
        }
    };
}

action_target!(LieSeries);
action_target!(AssocSeries);
action_target!(CyclicSeries);

/// A tangential automorphism `exp(log)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TautLog {
    log: TangentialDerivation,
}

impl TautLog {
    pub fn identity(n: usize, max_degree: usize) -> Self {
        TautLog { log: TangentialDerivation::zero(n, max_degree) }
    }

    pub fn exp(u: TangentialDerivation) -> Self {
        TautLog { log: u }
    }

    pub fn log(&self) -> &TangentialDerivation {
        &self.log
    }

    pub fn into_log(self) -> TangentialDerivation {
        self.log
    }

    pub fn n(&self) -> usize {
        self.log.n()
    }

    pub fn max_degree(&self) -> usize {
        self.log.max_degree()
    }

    pub fn is_identity(&self) -> bool {
        self.log.is_zero()
    }

    pub fn truncate(&self, m: usize) -> Self {
        TautLog { log: self.log.truncate(m) }
    }

    /// `g ∘ h`, i.e. `(gh)(a) = g(h(a))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(TautLog { log: bch_eval(&self.log, &other.log)? })
    }

    pub fn inverse(&self) -> Self {
        TautLog { log: self.log.neg() }
    }

    /// `Σ uᵏ(a)/k!` with `u` the logarithm.
    pub fn act<T: ActionTarget>(&self, a: &T) -> Result<T> {
        let mut acc = a.clone();
        if self.log.is_zero() {
            return Ok(acc);
        }
        let mut term = a.clone();
        for k in 1..=a.target_max_degree() {
            term = self.log.apply(&term)?.target_scale(&Rational::new(1, k as i64));
            if term.target_is_zero() {
                break;
            }
            acc = acc.target_add(&term);
        }
        Ok(acc)
    }

    pub fn pattern_map(&self, pattern: &Pattern) -> Result<Self> {
        Ok(TautLog { log: self.log.pattern_map(pattern)? })
    }

    /// `j(exp u) = Σ_{k≥0} uᵏ/(k+1)! · div(u)`.
    pub fn j_cocycle(&self) -> CyclicSeries {
        let div = self.log.divergence();
        let mut acc = div.clone();
        let mut term = div;
        for k in 1..=self.max_degree() {
            if term.is_zero() {
                break;
            }
            term = self.log.apply(&term).expect("shapes match").scale(&Rational::new(1, k as i64 + 1));
            acc = acc.add(&term);
        }
        acc
    }

    /// `κ(g) = l − g l g⁻¹`, recovered slot by slot from its values on generators.
    pub fn kappa(&self) -> TangentialDerivation {
        let n = self.n();
        let m = self.max_degree();
        let inv = self.inverse();
        let comps = (0..n)
            .map(|i| {
                let x = LieSeries::generator(n, m + 1, i);
                let a = inv.act(&x).expect("shapes match");
                let b = self.act(&a.grading()).expect("shapes match");
                let y = x.sub(&b);
                invert_ad(&y.to_assoc(), i, m)
            })
            .collect();
        TangentialDerivation::normalize(comps).expect("components share a shape")
    }
}

/// Solves `y = [x_i, a]` for `a` (no `x_i`-linear term), with `y` truncated at `m + 1`.
fn invert_ad(y: &AssocSeries, i: usize, m: usize) -> LieSeries {
    let n = y.n();
    let xi = i as u64;
    let mut a = AssocSeries::zero(n, m);
    for d in 1..=m {
        let lead = xi * word_count(n, d);
        let top = word_count(n, d - 1);
        let all_xi: u64 = (0..d).fold(0, |acc, _| acc * n as u64 + xi);
        let part = y.part(d + 1);
        if part.is_empty() {
            continue;
        }
        for v in 0..word_count(n, d) {
            if v == all_xi {
                continue;
            }
            let mut acc = Rational::zero();
            let mut cur = v;
            loop {
                if let Some(c) = part.get(&(lead + cur)) {
                    acc += c;
                }
                if cur % n as u64 == xi {
                    cur = xi * top + cur / n as u64;
                } else {
                    break;
                }
            }
            a.add_term(d, v, acc);
        }
    }
    LieSeries::from_assoc(&a).expect("κ components are Lie")
}

/// `E(u)`: the `g = exp(w)` with `κ(g) = u`, solved degree by degree from
/// `Σ_{m≥0} ad_w^m(Lw)/(m+1)! = u`, `L` the degree operator.
pub fn e_map(u: &TangentialDerivation) -> TautLog {
    let n = u.n();
    let top = u.max_degree();
    let mut w = TangentialDerivation::zero(n, top);
    for k in 1..=top {
        let s = kappa_series(&w).homogeneous(k);
        let wk = u.homogeneous(k).sub(&s).scale(&Rational::new(1, k as i64));
        w = w.add(&wk);
    }
    TautLog::exp(w)
}

fn kappa_series(w: &TangentialDerivation) -> TangentialDerivation {
    let lw = w.graded_scale(|d| Rational::from_integer(d as i64));
    let mut acc = lw.clone();
    let mut term = lw;
    for m in 1..=w.max_degree() {
        term = w.bracket(&term).expect("shapes match").scale(&Rational::new(1, m as i64 + 1));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
    }
    acc
}

/// Left-to-right product `g_1 g_2 ⋯ g_k`.
pub fn compose_all(gs: &[TautLog]) -> Result<TautLog> {
    let (first, rest) = gs.split_first().ok_or_else(|| mismatch("empty product"))?;
    rest.iter().try_fold(first.clone(), |acc, g| acc.compose(g))
}

/// `R = exp(r)`.
pub fn r_group(max_degree: usize) -> TautLog {
    TautLog::exp(r_element(max_degree))
}

/// θ: the normalized tuple `(ch(x,y) − x, ch(x,y) − y)`.
pub fn theta(max_degree: usize) -> TangentialDerivation {
    let ch = bch(max_degree);
    let x = LieSeries::generator(2, max_degree, 0);
    let y = LieSeries::generator(2, max_degree, 1);
    TangentialDerivation::normalize(vec![ch.sub(&x), ch.sub(&y)]).expect("valid tuple")
}

/// `τ(F) = R F^{2,1} e^{−t/2}`.
pub fn tau(f: &TautLog) -> Result<TautLog> {
    if f.n() != 2 {
        return Err(mismatch("τ is defined on TAut_2"));
    }
    let m = f.max_degree();
    let swap = Pattern::singletons(2, &[2, 1])?;
    let half_t = TautLog::exp(t_element(m).scale(&Rational::new(-1, 2)));
    compose_all(&[r_group(m), f.pattern_map(&swap)?, half_t])
}

pub fn compose(g: &TautLog, h: &TautLog) -> Result<TautLog> {
    g.compose(h)
}

pub fn act<T: ActionTarget>(g: &TautLog, a: &T) -> Result<T> {
    g.act(a)
}

pub fn j_cocycle(g: &TautLog) -> CyclicSeries {
    g.j_cocycle()
}

pub fn kappa(g: &TautLog) -> TangentialDerivation {
    g.kappa()
}

pub fn pattern_map_group(g: &TautLog, pattern: &Pattern) -> Result<TautLog> {
    g.pattern_map(pattern)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2(m: usize, i: usize) -> LieSeries {
        LieSeries::generator(2, m, i)
    }

    #[test]
    fn compose_basics() {
        let m = 4;
        let t = TautLog::exp(t_element(m));
        let r = r_group(m);
        let id = TautLog::identity(2, m);
        assert_eq!(t.compose(&id).unwrap(), t);
        assert!(t.compose(&t.inverse()).unwrap().is_identity());
        let tr = t.compose(&r).unwrap();
        let half = t_element(m).bracket(&r_element(m)).unwrap().scale(&Rational::new(1, 2));
        assert_eq!(tr.log().homogeneous(2), half.homogeneous(2));
    }

    #[test]
    fn r_action() {
        let m = 5;
        let r = r_group(m);
        let (x, y) = (g2(m, 0), g2(m, 1));
        // e^{-ad_y} x
        let mut expect = x.clone();
        let mut term = x.clone();
        for k in 1..=m {
            term = y.bracket(&term).unwrap().scale(&Rational::new(-1, k as i64));
            expect = expect.add(&term);
        }
        assert_eq!(r.act(&x).unwrap(), expect);
        let chyx = bch(m).eval_hom(&[y.clone(), x.clone()]).unwrap();
        assert_eq!(r.act(&chyx).unwrap(), bch(m));
    }

    #[test]
    fn j_examples() {
        let m = 4;
        assert!(TautLog::identity(2, m).j_cocycle().is_zero());
        assert!(TautLog::exp(t_element(m)).j_cocycle().is_zero());
        assert!(r_group(m).j_cocycle().is_zero());
    }

    #[test]
    fn kappa_degree_one() {
        let m = 4;
        let w = t_element(m).scale(&Rational::new(2, 3)).add(&r_element(m));
        let g = TautLog::exp(w.clone());
        let k = g.kappa();
        assert_eq!(k.homogeneous(1), w.homogeneous(1));
        assert!(TautLog::identity(2, m).kappa().is_zero());
        assert_eq!(e_map(&w.homogeneous(1)).log(), &w.homogeneous(1));
        assert_eq!(e_map(&k), g);
    }
}
