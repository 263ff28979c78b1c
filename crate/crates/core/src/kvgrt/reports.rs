//! Exact dimension tables for the complexes and for `sder_2 ⊃ hkv_2 ⊃ kv_2`.

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;

use crate::assocalg::CyclicSeries;
use crate::error::{Error, Result};
use crate::exactlin::{Rational, RationalMatrix, SparseVec};
use crate::freelie::{delta_lie, LieSeries};
use crate::tder::{tder_coordinate_count, TangentialDerivation};
use crate::words::{necklace_code, witt_dimension, word_count};

/// Which complex a cohomology table is computed for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Complex {
    /// `(lie_n, δ)`.
    DeltaLie,
    /// `(tr_n, δ)`.
    DeltaTr,
    /// `(tr_n, δ̃)` with `s = 1`, truncated at total degree `d` in row `d`.
    DeltaTilde,
    /// `(dert_n, d)`.
    DDert,
}

impl FromStr for Complex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta-lie" | "delta_lie" => Ok(Complex::DeltaLie),
            "delta-tr" | "delta_tr" => Ok(Complex::DeltaTr),
            "deltatilde" => Ok(Complex::DeltaTilde),
            "d-dert" | "d_dert" => Ok(Complex::DDert),
            _ => Err(Error::Domain(format!("unknown complex {s:?}"))),
        }
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Complex::DeltaLie => "delta-lie",
            Complex::DeltaTr => "delta-tr",
            Complex::DeltaTilde => "deltatilde",
            Complex::DDert => "d-dert",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyRow {
    pub degree: usize,
    /// Kernel of the differential leaving arity `n`.
    pub kernel: usize,
    /// Image of the differential arriving at arity `n`.
    pub image: usize,
    pub cohomology: usize,
}

/// Coordinates of one graded piece together with the differential into the next arity.
struct Piece {
    dim: usize,
    columns: Vec<SparseVec>,
    target_dim: usize,
}

fn necklaces(n: usize, degrees: RangeInclusive<usize>) -> HashMap<(usize, u64), usize> {
    let mut out = HashMap::new();
    for d in degrees {
        for code in 0..word_count(n, d) {
            if necklace_code(code, n, d) == code {
                let next = out.len();
                out.insert((d, code), next);
            }
        }
    }
    out
}

fn cyclic_vector(t: &CyclicSeries, index: &HashMap<(usize, u64), usize>) -> SparseVec {
    let mut v = Vec::new();
    for d in 1..=t.max_degree() {
        for (code, c) in t.part(d) {
            if let Some(i) = index.get(&(d, *code)) {
                v.push((*i, c.clone()));
            }
        }
    }
    v
}

fn dert_coordinates(n: usize, d: usize) -> Vec<usize> {
    let w = witt_dimension(n, d) as usize;
    (0..n * w).filter(|i| !(d == 1 && i % w == i / w)).collect()
}

fn piece(which: Complex, n: usize, d: usize) -> Piece {
    if n == 0 {
        return Piece { dim: 0, columns: Vec::new(), target_dim: 0 };
    }
    match which {
        Complex::DeltaLie => {
            let dim = witt_dimension(n, d) as usize;
            let columns = (0..dim)
                .into_par_iter()
                .map(|i| {
                    let f = LieSeries::from_coords(n, d, [(d, i, Rational::one())]);
                    delta_lie(&f).degree_vector(d)
                })
                .collect();
            Piece { dim, columns, target_dim: witt_dimension(n + 1, d) as usize }
        }
        Complex::DeltaTr | Complex::DeltaTilde => {
            let tilde = which == Complex::DeltaTilde;
            let low = if tilde { 1 } else { d };
            let src = necklaces(n, low..=d);
            let dst = necklaces(n + 1, low..=d);
            let mut keys: Vec<_> = src.iter().collect();
            keys.sort_by_key(|(_, i)| **i);
            let columns = keys
                .into_par_iter()
                .map(|((e, code), _)| {
                    let mut f = CyclicSeries::zero(n, d);
                    f.add_word(*e, *code, Rational::one());
                    let image = if tilde { f.deltatilde(&Rational::one()) } else { f.delta() };
                    cyclic_vector(&image, &dst)
                })
                .collect();
            Piece { dim: src.len(), columns, target_dim: dst.len() }
        }
        Complex::DDert => {
            let coords = dert_coordinates(n, d);
            let columns = coords
                .par_iter()
                .map(|&i| {
                    let u = TangentialDerivation::from_degree_vector(n, d, d, &[(i, Rational::one())]);
                    u.d_differential().degree_vector(d)
                })
                .collect();
            Piece { dim: coords.len(), columns, target_dim: tder_coordinate_count(n + 1, d) }
        }
    }
}

fn rank(p: Piece) -> usize {
    if p.dim == 0 {
        return 0;
    }
    RationalMatrix::from_columns(p.target_dim, p.columns).rank()
}

/// Per-degree kernel, image and cohomology dimensions at arity `n`.
pub fn cohomology_report(which: Complex, n: usize, degrees: RangeInclusive<usize>) -> Result<Vec<CohomologyRow>> {
    if n == 0 {
        return Err(Error::Range("arity must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for d in degrees {
        if d == 0 {
            continue;
        }
        let here = piece(which, n, d);
        let dim = here.dim;
        let kernel = dim - rank(here);
        let image = rank(piece(which, n - 1, d));
        rows.push(CohomologyRow { degree: d, kernel, image, cohomology: kernel - image });
    }
    Ok(rows)
}

/// Which subspace of `dert_2` a dimension table describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subspace {
    Sder2,
    Kv2,
    Hkv2,
}

impl FromStr for Subspace {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sder2" => Ok(Subspace::Sder2),
            "kv2" => Ok(Subspace::Kv2),
            "hkv2" => Ok(Subspace::Hkv2),
            _ => Err(Error::Domain(format!("unknown subspace {s:?}"))),
        }
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subspace::Sder2 => "sder2",
            Subspace::Kv2 => "kv2",
            Subspace::Hkv2 => "hkv2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimRow {
    pub degree: usize,
    pub dim: usize,
}

fn subspace_dim(which: Subspace, d: usize) -> usize {
    let coords = dert_coordinates(2, d);
    let sum = LieSeries::generator_sum(2, d + 1);
    let special_rows = witt_dimension(2, d + 1) as usize;
    let tr2 = necklaces(2, d..=d);
    let mut columns: Vec<SparseVec> = coords
        .par_iter()
        .map(|&i| {
            let u = TangentialDerivation::from_degree_vector(2, d, d, &[(i, Rational::one())]);
            let mut v = u.apply(&sum).expect("target within N+1").degree_vector(d + 1);
            if which != Subspace::Sder2 {
                v.extend(cyclic_vector(&u.divergence(), &tr2).into_iter().map(|(j, c)| (j + special_rows, c)));
            }
            v
        })
        .collect();
    let mut rows = special_rows;
    let mut trivial = 0;
    if which != Subspace::Sder2 {
        rows += tr2.len();
    }
    if which == Subspace::Hkv2 {
        // div(u) − δ(g·Tr x^d) = 0 with g a free scalar
        let mut g = CyclicSeries::zero(1, d);
        g.add_word(d, 0, Rational::one());
        let dg = cyclic_vector(&g.delta(), &tr2);
        if dg.is_empty() {
            trivial = 1;
        }
        columns.push(dg.into_iter().map(|(j, c)| (j + special_rows, -c)).collect());
    }
    let unknowns = columns.len();
    unknowns - RationalMatrix::from_columns(rows, columns).rank() - trivial
}

/// Per-degree dimensions of `sder_2`, `kv_2` or `hkv_2`.
pub fn dims_report(which: Subspace, degrees: RangeInclusive<usize>) -> Vec<DimRow> {
    degrees.filter(|&d| d > 0).map(|d| DimRow { degree: d, dim: subspace_dim(which, d) }).collect()
}
