//! Pentagon, hexagon and inversion residuals, and the degree-by-degree associator solver.

use rayon::prelude::*;

use crate::error::{mismatch, Error, Result};
use crate::exactlin::{Rational, RationalMatrix, SparseVec};
use crate::freelie::{eval_lie_poly, LieSeries};
use crate::taut::{compose_all, TautLog};
use crate::tder::{tder_coordinate_count, tn_generator, Pattern, TangentialDerivation};
use crate::words::lyndon_words;

fn pattern(m: usize, subsets: &[&[usize]]) -> Pattern {
    Pattern::new(m, subsets.iter().map(|s| s.to_vec()).collect()).expect("fixed patterns are valid")
}

fn perm(order: [usize; 3]) -> Pattern {
    Pattern::singletons(3, &order).expect("fixed permutations are valid")
}

const PENT_LHS: [&[&[usize]]; 2] = [&[&[1, 2], &[3], &[4]], &[&[1], &[2], &[3, 4]]];
const PENT_RHS: [&[&[usize]]; 3] = [&[&[1], &[2], &[3]], &[&[1], &[2, 3], &[4]], &[&[2], &[3], &[4]]];

fn require_three(phi: &TautLog) -> Result<()> {
    if phi.n() != 3 {
        return Err(mismatch(format!("associators live in TAut_3, got {} generators", phi.n())));
    }
    Ok(())
}

/// `(Φ^{1,2,3} Φ^{1,23,4} Φ^{2,3,4})⁻¹ Φ^{12,3,4} Φ^{1,2,34}`.
pub fn pentagon_residual(phi: &TautLog) -> Result<TautLog> {
    require_three(phi)?;
    let lhs: Vec<TautLog> = PENT_LHS.iter().map(|p| phi.pattern_map(&pattern(4, p))).collect::<Result<_>>()?;
    let rhs: Vec<TautLog> = PENT_RHS.iter().map(|p| phi.pattern_map(&pattern(4, p))).collect::<Result<_>>()?;
    compose_all(&rhs)?.inverse().compose(&compose_all(&lhs)?)
}

fn half_t(i: usize, j: usize, m: usize, s: &Rational) -> TangentialDerivation {
    tn_generator(i, j, 3, m).expect("valid indices").scale(&(s * &Rational::new(1, 2)))
}

/// Residuals of both hexagons, with braiding `exp(s t^{i,j}/2)`.
pub fn hexagon_residuals(phi: &TautLog, s: &Rational) -> Result<(TautLog, TautLog)> {
    require_three(phi)?;
    let m = phi.max_degree();
    let p = |o: [usize; 3]| phi.pattern_map(&perm(o));
    let e = |i: usize, j: usize| TautLog::exp(half_t(i, j, m, s));
    let target1 = TautLog::exp(half_t(1, 3, m, s).add(&half_t(2, 3, m, s)));
    let hex1 = compose_all(&[p([2, 1, 3])?, e(1, 3), p([2, 3, 1])?.inverse(), e(2, 3), p([3, 2, 1])?])?;
    let target2 = TautLog::exp(half_t(1, 2, m, s).add(&half_t(1, 3, m, s)));
    let hex2 = compose_all(&[p([1, 3, 2])?.inverse(), e(1, 3), p([3, 1, 2])?, e(1, 2), p([3, 2, 1])?.inverse()])?;
    Ok((target1.inverse().compose(&hex1)?, target2.inverse().compose(&hex2)?))
}

/// `Φ^{1,2,3} Φ^{3,2,1}`.
pub fn inversion_residual(phi: &TautLog) -> Result<TautLog> {
    require_three(phi)?;
    phi.compose(&phi.pattern_map(&perm([3, 2, 1]))?)
}

/// Degree-`d` part of the linearized residual maps at a homogeneous `b`, stacked.
fn linear_part(b: &TangentialDerivation, d: usize) -> Result<Vec<SparseVec>> {
    let pm = |p: &Pattern| b.pattern_map(p);
    let mut pent = TangentialDerivation::zero(4, b.max_degree());
    for p in PENT_LHS {
        pent = pent.add(&pm(&pattern(4, p))?);
    }
    for p in PENT_RHS {
        pent = pent.sub(&pm(&pattern(4, p))?);
    }
    let pp = |o: [usize; 3]| pm(&perm(o));
    let hex1 = pp([2, 1, 3])?.sub(&pp([2, 3, 1])?).add(&pp([3, 2, 1])?);
    let hex2 = pp([3, 1, 2])?.sub(&pp([1, 3, 2])?).sub(&pp([3, 2, 1])?);
    let inv = b.add(&pp([3, 2, 1])?);
    Ok([pent, hex1, hex2, inv].iter().map(|u| u.degree_vector(d)).collect())
}

fn stacked_residual(phi: &TautLog, s: &Rational, d: usize) -> Result<Vec<SparseVec>> {
    let (h1, h2) = hexagon_residuals(phi, s)?;
    let pent = pentagon_residual(phi)?;
    let inv = inversion_residual(phi)?;
    Ok([&pent, &h1, &h2, &inv].iter().map(|g| g.log().degree_vector(d)).collect())
}

fn block_sizes(d: usize) -> [usize; 4] {
    let c3 = tder_coordinate_count(3, d);
    [tder_coordinate_count(4, d), c3, c3, c3]
}

fn stack(blocks: &[SparseVec], sizes: &[usize; 4]) -> SparseVec {
    let mut out = Vec::new();
    let mut offset = 0;
    for (v, len) in blocks.iter().zip(sizes) {
        out.extend(v.iter().map(|(i, c)| (i + offset, c.clone())));
        offset += len;
    }
    out
}

/// Images `P_w(t^{1,2}, t^{2,3})` of the degree-`d` Lyndon basis of `lie_2`.
pub fn t3_basis(d: usize, max_degree: usize) -> Result<Vec<TangentialDerivation>> {
    let t12 = tn_generator(1, 2, 3, max_degree)?;
    let t23 = tn_generator(2, 3, 3, max_degree)?;
    lyndon_words(2, d)
        .iter()
        .map(|w| eval_lie_poly(&LieSeries::basis(2, d, w, Rational::one()), &[t12.clone(), t23.clone()]))
        .collect()
}

/// An associator with log in the image of `lie(t^{1,2}, t^{2,3})`, solved degree by degree.
/// Free directions in each degree are set to zero.
pub fn associator_solve(max_degree: usize, s: &Rational) -> Result<TautLog> {
    if max_degree < 2 {
        return Err(Error::Range("associator_solve needs N ≥ 2".into()));
    }
    let mut phi = TangentialDerivation::zero(3, max_degree);
    for d in 1..=max_degree {
        let sizes = block_sizes(d);
        let rows: usize = sizes.iter().sum();
        let current = TautLog::exp(phi.truncate(d));
        let rho = stack(&stacked_residual(&current, s, d)?, &sizes);
        if rho.is_empty() {
            continue;
        }
        let basis = t3_basis(d, d)?;
        let columns: Vec<SparseVec> =
            basis.par_iter().map(|b| Ok(stack(&linear_part(b, d)?, &sizes))).collect::<Result<_>>()?;
        let a = RationalMatrix::from_columns(rows, columns);
        let mut rhs = vec![Rational::zero(); rows];
        for (i, c) in rho {
            rhs[i] = -c;
        }
        let sol = a.solve_particular(&rhs).map_err(|_| Error::Obstructed { degree: d })?;
        for (b, c) in basis.iter().zip(sol) {
            if !c.is_zero() {
                phi = phi.add(&b.truncate(max_degree).scale(&c));
            }
        }
    }
    Ok(TautLog::exp(phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kvgrt::pi2;

    #[test]
    fn identity_residuals() {
        let m = 3;
        let e = TautLog::identity(3, m);
        assert!(pentagon_residual(&e).unwrap().is_identity());
        assert!(inversion_residual(&e).unwrap().is_identity());
        let (h1, h2) = hexagon_residuals(&e, &Rational::one()).unwrap();
        assert!(!h1.is_identity() && !h2.is_identity());
        let t12 = TautLog::exp(tn_generator(1, 2, 3, m).unwrap());
        assert!(!pentagon_residual(&t12).unwrap().is_identity());
    }

    #[test]
    fn low_degree_associator() {
        let m = 4;
        let phi = associator_solve(m, &Rational::one()).unwrap();
        let log = phi.log();
        assert!(log.homogeneous(1).is_zero());
        let t12 = tn_generator(1, 2, 3, m).unwrap();
        let t23 = tn_generator(2, 3, 3, m).unwrap();
        let expect = t12.bracket(&t23).unwrap().scale(&Rational::new(-1, 24));
        assert_eq!(log.homogeneous(2), expect);
        assert_eq!(pi2(log).unwrap().value, Rational::new(1, 8));
        assert!(pentagon_residual(&phi).unwrap().is_identity());
        assert!(inversion_residual(&phi).unwrap().is_identity());
        let (h1, h2) = hexagon_residuals(&phi, &Rational::one()).unwrap();
        assert!(h1.is_identity() && h2.is_identity());
    }
}
