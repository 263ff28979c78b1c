//! The KV problem: checks, the pentagon-to-KV solver and Duflo extraction.

use super::duflo::{solve_duflo, DufloSeries};
use crate::error::{mismatch, Error, Result};
use crate::exactlin::Rational;
use crate::exactlin::{RationalMatrix, SparseVec};
use crate::freelie::{bch, rescaled_ch, LieSeries};
use crate::taut::{compose_all, TautLog};
use crate::tder::{r_element, tder_coordinate_count, Pattern, TangentialDerivation};
use crate::words::Word;

/// Outcome of a Duflo solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DufloOutcome {
    Solved(DufloSeries),
    /// No Duflo function matches `j` in this degree.
    Obstructed(usize),
}

impl DufloOutcome {
    pub fn solved(&self) -> Option<&DufloSeries> {
        match self {
            DufloOutcome::Solved(f) => Some(f),
            DufloOutcome::Obstructed(_) => None,
        }
    }
}

impl From<std::result::Result<DufloSeries, usize>> for DufloOutcome {
    fn from(r: std::result::Result<DufloSeries, usize>) -> Self {
        match r {
            Ok(f) => DufloOutcome::Solved(f),
            Err(d) => DufloOutcome::Obstructed(d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KvReport {
    pub s: Rational,
    /// `F(x+y) − ch_s(x,y)`.
    pub kv1_residual: LieSeries,
    pub duflo: DufloOutcome,
}

impl KvReport {
    pub fn is_solution(&self) -> bool {
        self.kv1_residual.is_zero() && self.duflo.solved().is_some()
    }
}

/// π of a degree-2 element of `sder_3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi2Value {
    pub value: Rational,
}

fn require_arity(g: &TautLog, n: usize, what: &str) -> Result<()> {
    if g.n() != n {
        return Err(mismatch(format!("{what} expects {n} generators, got {}", g.n())));
    }
    Ok(())
}

pub fn kv_check(f: &TautLog, s: &Rational) -> Result<KvReport> {
    require_arity(f, 2, "kv_check")?;
    let m = f.max_degree();
    let sum = LieSeries::generator_sum(2, m);
    let kv1_residual = f.act(&sum)?.sub(&rescaled_ch(s, m));
    let duflo = solve_duflo(&f.j_cocycle(), s).into();
    Ok(KvReport { s: s.clone(), kv1_residual, duflo })
}

/// `x + y − ch(y,x) − (1 − e^{−ad_x})A − (e^{ad_y} − 1)B` for `u = (A, B)`.
pub fn kv1_classical_residual(u: &TangentialDerivation) -> Result<LieSeries> {
    if u.n() != 2 {
        return Err(mismatch("the classical KV equation lives in dert_2"));
    }
    let m = u.max_degree();
    let x = LieSeries::generator(2, m, 0);
    let y = LieSeries::generator(2, m, 1);
    let chyx = bch(m).eval_hom(&[y.clone(), x.clone()])?;
    let mut out = x.add(&y).sub(&chyx);
    // (1 − e^{−ad_x})A = −Σ_{k≥1} (−ad_x)^k A/k!
    let mut term = u.component(0).clone();
    for k in 1..=m {
        term = x.bracket(&term)?.scale(&Rational::new(-1, k as i64));
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
    }
    let mut term = u.component(1).clone();
    for k in 1..=m {
        term = y.bracket(&term)?.scale(&Rational::new(1, k as i64));
        if term.is_zero() {
            break;
        }
        out = out.sub(&term);
    }
    Ok(out)
}

fn block(subsets: &[&[usize]]) -> Pattern {
    Pattern::new(3, subsets.iter().map(|s| s.to_vec()).collect()).expect("fixed patterns are valid")
}

/// `(g^{12,3})⁻¹ (g^{1,2})⁻¹ Φ g^{2,3} g^{1,23}`.
fn conjugate_by(phi: &TautLog, g: &TautLog) -> Result<TautLog> {
    let g12_3 = g.pattern_map(&block(&[&[1, 2], &[3]]))?;
    let g1_2 = g.pattern_map(&block(&[&[1], &[2]]))?;
    let g2_3 = g.pattern_map(&block(&[&[2], &[3]]))?;
    let g1_23 = g.pattern_map(&block(&[&[1], &[2, 3]]))?;
    compose_all(&[g12_3.inverse(), g1_2.inverse(), phi.clone(), g2_3, g1_23])
}

/// `Φ = (F^{12,3})⁻¹ (F^{1,2})⁻¹ F^{2,3} F^{1,23}`.
#[allow(non_snake_case)]
pub fn phi_from_F(f: &TautLog) -> Result<TautLog> {
    require_arity(f, 2, "phi_from_F")?;
    conjugate_by(&TautLog::identity(3, f.max_degree()), f)
}

fn require_special(g: &TautLog) -> Result<()> {
    require_arity(g, 2, "twist")?;
    if !g.log().is_special() {
        return Err(mismatch("twisting element must have a special logarithm"));
    }
    Ok(())
}

/// The twist `(g^{12,3})⁻¹ (g^{1,2})⁻¹ Φ g^{2,3} g^{1,23}`.
pub fn twist(phi: &TautLog, g: &TautLog) -> Result<TautLog> {
    require_arity(phi, 3, "twist")?;
    require_special(g)?;
    if phi.max_degree() != g.max_degree() {
        return Err(mismatch("twist truncations differ"));
    }
    conjugate_by(phi, g)
}

/// `ĝ`: the twist of the identity.
pub fn ghat(g: &TautLog) -> Result<TautLog> {
    require_special(g)?;
    conjugate_by(&TautLog::identity(3, g.max_degree()), g)
}

fn lie_word(s: &str) -> Word {
    Word::new(s.bytes().map(|b| b - b'x').collect())
}

/// `α + β + γ` for `φ₂ = (α[y,z], β[z,x], γ[x,y])`, read from the degree-2 part.
pub fn pi2(phi: &TangentialDerivation) -> Result<Pi2Value> {
    if phi.n() != 3 || phi.max_degree() < 2 {
        return Err(mismatch("π is read off a degree-2 element of dert_3"));
    }
    let allowed = [(0, "yz", 1), (1, "xz", -1), (2, "xy", 1)];
    let mut value = Rational::zero();
    for (k, w, sign) in allowed {
        let part = phi.component(k).homogeneous(2);
        let c = part.coeff(&lie_word(w));
        let mut rest = part.clone();
        rest.add_basis(&lie_word(w), -c.clone());
        if !rest.is_zero() {
            return Err(Error::Shape(format!("slot {} of φ₂ is not a multiple of the expected bracket", k + 1)));
        }
        value += c * Rational::from_integer(sign);
    }
    Ok(Pi2Value { value })
}

/// The `d`-matrix on degree-`k` coordinates of `dert_2` (all coordinates, `k ≥ 2`).
fn d_matrix(m: usize, k: usize) -> RationalMatrix {
    let cols = tder_coordinate_count(2, k);
    let columns: Vec<SparseVec> = (0..cols)
        .map(|i| {
            let u = TangentialDerivation::from_degree_vector(2, m, k, &[(i, Rational::one())]);
            u.d_differential().degree_vector(k)
        })
        .collect();
    RationalMatrix::from_columns(tder_coordinate_count(3, k), columns)
}

fn dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// The `F = exp(u) exp(s r/2)` of FF-type producing `Φ`, built degree by degree.
pub fn kv_from_associator(phi: &TautLog, s: &Rational) -> Result<TautLog> {
    require_arity(phi, 3, "kv_from_associator")?;
    let m = phi.max_degree();
    let log_phi = phi.log();
    if m >= 2 {
        let found = pi2(log_phi)?.value;
        let expected = s * s * Rational::new(1, 8);
        if found != expected {
            return Err(Error::PiMismatch { found, expected });
        }
    }
    let mut f = TautLog::exp(r_element(m).scale(&(s * &Rational::new(1, 2))));
    for k in 2..=m {
        let current = phi_from_F(&f.truncate(k))?;
        let disc = log_phi.truncate(k).sub(current.log());
        if !disc.below(k).is_zero() {
            return Err(Error::Obstructed { degree: disc.min_degree().unwrap_or(k) });
        }
        let rhs = disc.degree_vector(k);
        if rhs.is_empty() {
            continue;
        }
        let a = d_matrix(m, k);
        let sol = a.solve_particular(&dense(&rhs, a.rows())).map_err(|_| Error::Obstructed { degree: k })?;
        let coords: SparseVec = sol.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let u = TangentialDerivation::from_degree_vector(2, m, k, &coords);
        f = f.compose(&TautLog::exp(u))?;
    }
    Ok(f)
}

fn x_linear_profile(a: &LieSeries, last: usize, d: usize) -> Rational {
    // coefficient of the word (last)^{d-1} x
    let mut letters = vec![last as u8; d];
    letters[d - 1] = 0;
    a.to_assoc().coeff(&Word::new(letters))
}

/// Duflo series from `Φ = exp(A, B, C)`: `f' = h` where `B(x,0,z)` has x-linear part `h(ad_z)x`.
pub fn duflo_from_phi(phi: &TautLog) -> Result<DufloSeries> {
    require_arity(phi, 3, "duflo_from_phi")?;
    let m = phi.max_degree();
    let x = LieSeries::generator(3, m, 0);
    let z = LieSeries::generator(3, m, 2);
    let b = phi.log().component(1).eval_hom(&[x, LieSeries::zero(3, m), z])?;
    let mut f = DufloSeries::zero(m);
    for k in 2..=m {
        f.set(k, x_linear_profile(&b, 2, k) * Rational::new(1, k as i64));
    }
    Ok(f)
}

/// Duflo series from `F = exp(a, b)` through `f' = β − α`, where `α(ad_y)x` and `β(ad_y)x`
/// are the x-linear parts of `a` and `b`.
pub fn duflo_from_log(f: &TautLog) -> Result<DufloSeries> {
    require_arity(f, 2, "duflo_from_log")?;
    let m = f.max_degree();
    let (a, b) = (f.log().component(0), f.log().component(1));
    let mut out = DufloSeries::zero(m);
    for k in 2..=m {
        let diff = x_linear_profile(b, 1, k) - x_linear_profile(a, 1, k);
        out.set(k, diff * Rational::new(1, k as i64));
    }
    Ok(out)
}

/// `φ` with `div(κ(F)) = δ̃(Tr φ)`, if it exists.
#[allow(non_snake_case)]
pub fn kappa_duflo(f: &TautLog) -> Result<DufloOutcome> {
    require_arity(f, 2, "kappa_duflo")?;
    Ok(solve_duflo(&f.kappa().divergence(), &Rational::one()).into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HkvClass {
    InKv2,
    InHkv2(DufloSeries),
    Outside,
}

pub fn hkv_membership(u: &TangentialDerivation) -> HkvClass {
    if u.n() != 2 || !u.is_special() {
        return HkvClass::Outside;
    }
    let div = u.divergence();
    if div.is_zero() {
        return HkvClass::InKv2;
    }
    match solve_duflo(&div, &Rational::zero()) {
        Ok(f) => HkvClass::InHkv2(f),
        Err(_) => HkvClass::Outside,
    }
}
