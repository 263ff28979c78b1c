//! The Lie algebra `grt`, the map ν into `hkv_2` and the Ihara bracket.

use rayon::prelude::*;

use crate::error::{mismatch, Result};
use crate::exactlin::{Rational, RationalMatrix, SparseVec};
use crate::freelie::{eval_lie_poly, LieSeries};
use crate::tder::{tder_coordinate_count, tn_generator, TangentialDerivation};
use crate::words::{lyndon_words, witt_dimension};

fn require_two(psi: &LieSeries) -> Result<()> {
    if psi.n() != 2 {
        return Err(mismatch("grt elements live in lie_2"));
    }
    Ok(())
}

/// Defects of the three defining relations; `ψ ∈ grt` iff all vanish.
pub fn grt_residuals(psi: &LieSeries) -> Result<(LieSeries, LieSeries, TangentialDerivation)> {
    require_two(psi)?;
    let m = psi.max_degree();
    let x = LieSeries::generator(2, m, 0);
    let y = LieSeries::generator(2, m, 1);
    let z = x.add(&y).neg();
    let res1 = psi.add(&psi.eval_hom(&[y.clone(), x.clone()])?);
    let res2 = psi.add(&psi.eval_hom(&[y.clone(), z.clone()])?).add(&psi.eval_hom(&[z, x])?);
    let t = |i, j| tn_generator(i, j, 4, m);
    let (t12, t23, t34) = (t(1, 2)?, t(2, 3)?, t(3, 4)?);
    let (t13, t24) = (t(1, 3)?, t(2, 4)?);
    let ev = |a: &TangentialDerivation, b: &TangentialDerivation| eval_lie_poly(psi, &[a.clone(), b.clone()]);
    let lhs = ev(&t12, &t23.add(&t24))?.add(&ev(&t13.add(&t23), &t34)?);
    let rhs = ev(&t23, &t34)?.add(&ev(&t12.add(&t13), &t24.add(&t34))?).add(&ev(&t12, &t23)?);
    Ok((res1, res2, lhs.sub(&rhs)))
}

/// Columns `ad_x^{k−1} ad_y^{d−1−k} [x,y]`, `k = 1..d−1`.
fn abelian_monomials(d: usize) -> Vec<LieSeries> {
    let x = LieSeries::generator(2, d, 0);
    let y = LieSeries::generator(2, d, 1);
    let xy = x.bracket(&y).expect("same shape");
    (1..d)
        .map(|k| {
            let mut e = xy.clone();
            for _ in 0..d - 1 - k {
                e = y.bracket(&e).expect("same shape");
            }
            for _ in 0..k - 1 {
                e = x.bracket(&e).expect("same shape");
            }
            e
        })
        .collect()
}

/// Coefficients of `ψ` (homogeneous of degree `d`) on the monomials
/// `ad_x^{k−1} ad_y^{d−1−k}[x,y]` modulo the double commutator ideal.
pub fn double_commutator_profile(psi: &LieSeries, d: usize) -> Result<Vec<Rational>> {
    require_two(psi)?;
    let rows = witt_dimension(2, d) as usize;
    let mut columns: Vec<SparseVec> = Vec::new();
    for p in 2..=d.saturating_sub(2) {
        for u in lyndon_words(2, p) {
            for v in lyndon_words(2, d - p) {
                let a = LieSeries::basis(2, d, &u, Rational::one());
                let b = LieSeries::basis(2, d, &v, Rational::one());
                columns.push(a.bracket(&b)?.degree_vector(d));
            }
        }
    }
    let ideal = columns.len();
    columns.extend(abelian_monomials(d).iter().map(|e| e.degree_vector(d)));
    let a = RationalMatrix::from_columns(rows, columns);
    let mut rhs = vec![Rational::zero(); rows];
    for (i, c) in psi.degree_vector(d) {
        rhs[i] = c;
    }
    let sol = a.solve_particular(&rhs).map_err(|_| mismatch("monomials do not span the quotient"))?;
    Ok(sol[ideal..].to_vec())
}

/// Basis of the degree-`d` solutions of the `grt` relations.
/// One-dimensional odd degrees are normalized to `Σ_k C(d,k) ad_x^{k−1} ad_y^{d−1−k}[x,y]`
/// modulo double commutators.
pub fn grt_solve(d: usize) -> Result<Vec<LieSeries>> {
    if d == 0 {
        return Ok(Vec::new());
    }
    let lie = witt_dimension(2, d) as usize;
    let sizes = [lie, lie, tder_coordinate_count(4, d)];
    let columns: Vec<SparseVec> = lyndon_words(2, d)
        .par_iter()
        .map(|w| {
            let psi = LieSeries::basis(2, d, w, Rational::one());
            let (r1, r2, r3) = grt_residuals(&psi)?;
            let mut v = r1.degree_vector(d);
            v.extend(r2.degree_vector(d).into_iter().map(|(i, c)| (i + sizes[0], c)));
            v.extend(r3.degree_vector(d).into_iter().map(|(i, c)| (i + sizes[0] + sizes[1], c)));
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let a = RationalMatrix::from_columns(sizes.iter().sum(), columns);
    let mut basis: Vec<LieSeries> = a
        .kernel_basis()
        .into_iter()
        .map(|v| LieSeries::from_coords(2, d, v.into_iter().enumerate().map(|(i, c)| (d, i, c))))
        .collect();
    if basis.len() == 1 && d % 2 == 1 {
        let profile = double_commutator_profile(&basis[0], d)?;
        if let Some((k, c)) = profile.iter().enumerate().find(|(_, c)| !c.is_zero()) {
            let scale = Rational::binomial(d, k + 1) / c.clone();
            basis[0] = basis[0].scale(&scale);
        }
    }
    Ok(basis)
}

/// `σ_d`: the normalized generator of `grt` in an odd degree `d ≥ 3` with one-dimensional solutions.
pub fn sigma(d: usize) -> Result<LieSeries> {
    let mut basis = grt_solve(d)?;
    if basis.len() != 1 || d.is_multiple_of(2) {
        return Err(mismatch(format!("degree {d} has {} grt solutions", basis.len())));
    }
    Ok(basis.remove(0))
}

/// `ν(ψ) = (ψ(−x−y, x), ψ(−x−y, y))`.
pub fn nu_map(psi: &LieSeries) -> Result<TangentialDerivation> {
    require_two(psi)?;
    let m = psi.max_degree();
    let x = LieSeries::generator(2, m, 0);
    let y = LieSeries::generator(2, m, 1);
    let z = x.add(&y).neg();
    TangentialDerivation::normalize(vec![psi.eval_hom(&[z.clone(), x])?, psi.eval_hom(&[z, y])?])
}

fn second_slot(psi: &LieSeries) -> TangentialDerivation {
    TangentialDerivation::normalize(vec![LieSeries::zero(2, psi.max_degree()), psi.clone()]).expect("valid tuple")
}

/// `(0,ψ₁)(ψ₂) − (0,ψ₂)(ψ₁) + [ψ₁,ψ₂]`.
pub fn ihara_bracket(a: &LieSeries, b: &LieSeries) -> Result<LieSeries> {
    require_two(a)?;
    a.same_shape(b)?;
    let ab = second_slot(a).apply(b)?;
    let ba = second_slot(b).apply(a)?;
    Ok(ab.sub(&ba).add(&a.bracket(b)?))
}

/// Checks `d ν(ψ) = ψ(t^{1,2}, t^{2,3})`.
pub fn verify_dpsi(psi: &LieSeries) -> Result<bool> {
    require_two(psi)?;
    let m = psi.max_degree();
    let lhs = nu_map(psi)?.d_differential();
    let rhs = eval_lie_poly(psi, &[tn_generator(1, 2, 3, m)?, tn_generator(2, 3, 3, m)?])?;
    Ok(lhs == rhs)
}
