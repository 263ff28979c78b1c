//! Sparse exact matrices with deterministic fraction-free elimination.

use std::collections::BTreeMap;
use std::fmt;

use super::rational::{integer_gcd, lcm_of_denominators, Rational};

/// A sparse vector: `(index, value)` pairs in increasing index order, no zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// Returned by [`RationalMatrix::solve_particular`] when `m·v = rhs` has no solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("linear system is inconsistent")]
pub struct Inconsistent;

/// Sparse rational matrix stored row-wise.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for (i, row) in self.data.iter().enumerate() {
            if !row.is_empty() {
                writeln!(f, "  {i}: {row:?}")?;
            }
        }
        write!(f, "]")
    }
}

fn normalize_sparse(mut v: Vec<(usize, Rational)>) -> SparseVec {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, Rational::one())]).collect();
        RationalMatrix { rows: n, cols: n, data }
    }

    /// Builds from dense rows; all rows must have length `cols`.
    pub fn from_dense(cols: usize, rows: &[Vec<Rational>]) -> Self {
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged dense matrix");
                r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j, c.clone())).collect()
            })
            .collect();
        RationalMatrix { rows: rows.len(), cols, data }
    }

    /// Convenience for tests and small literals.
    pub fn from_i64(cols: usize, rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect();
        Self::from_dense(cols, &dense)
    }

    /// Builds from sparse rows; entries may be unsorted and repeated (summed).
    pub fn from_rows(cols: usize, rows: Vec<Vec<(usize, Rational)>>) -> Self {
        let data: Vec<SparseVec> = rows.into_iter().map(normalize_sparse).collect();
        for r in &data {
            if let Some((j, _)) = r.last() {
                assert!(*j < cols, "column index {j} out of range");
            }
        }
        RationalMatrix { rows: data.len(), cols, data }
    }

    /// Builds from sparse columns; the usual way to assemble the matrix of a linear map.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, Rational)>>) -> Self {
        let cols = columns.len();
        let mut data: Vec<SparseVec> = vec![Vec::new(); rows];
        for (j, col) in columns.into_iter().enumerate() {
            for (i, c) in normalize_sparse(col) {
                assert!(i < rows, "row index {i} out of range");
                data[i].push((j, c));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r].binary_search_by_key(&c, |(j, _)| *j).map(|k| self.data[r][k].1.clone()).unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) if v.is_zero() => {
                row.remove(k);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => row.insert(k, (c, v)),
        }
    }

    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.data[r]
    }

    /// Appends the rows of `other` below `self`.
    pub fn vstack(mut self, other: RationalMatrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        self.rows += other.rows;
        self.data.extend(other.data);
        self
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, c) in row {
                data[*j].push((i, c.clone()));
            }
        }
        RationalMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        self.data.iter().map(|row| row.iter().map(|(j, c)| c * &v[*j]).sum()).collect()
    }

    fn echelon(&self, extra: Option<&[Rational]>) -> Echelon {
        let mut e = Echelon::default();
        for (i, row) in self.data.iter().enumerate() {
            let mut r = row.clone();
            if let Some(rhs) = extra {
                if !rhs[i].is_zero() {
                    r.push((self.cols, rhs[i].clone()));
                }
            }
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.echelon(None).pivots.len()
    }

    /// Null-space basis: one vector per free column (ascending), unit at that column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut e = self.echelon(None);
        e.back_substitute();
        let mut out = Vec::new();
        for f in 0..self.cols {
            if e.pivots.contains_key(&f) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (&c, row) in &e.pivots {
                let lead = &row[0].1;
                if let Ok(k) = row.binary_search_by_key(&f, |(j, _)| *j) {
                    v[c] = -(&row[k].1 / lead);
                }
            }
            out.push(v);
        }
        out
    }

    /// One solution of `self·v = rhs` with every free variable zero.
    pub fn solve_particular(&self, rhs: &[Rational]) -> Result<Vec<Rational>, Inconsistent> {
        assert_eq!(rhs.len(), self.rows, "rhs length mismatch");
        let mut e = self.echelon(Some(rhs));
        if e.pivots.contains_key(&self.cols) {
            return Err(Inconsistent);
        }
        e.back_substitute();
        let mut v = vec![Rational::zero(); self.cols];
        for (&c, row) in &e.pivots {
            if let Some((j, b)) = row.last() {
                if *j == self.cols {
                    v[c] = b / &row[0].1;
                }
            }
        }
        Ok(v)
    }
}

/// Echelon basis of integral primitive rows keyed by leading column.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, SparseVec>,
}

/// `a·x − b·y` over sparse integral rows.
fn combine(a: &Rational, x: &[(usize, Rational)], b: &Rational, y: &[(usize, Rational)]) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let c = a * &x[i].1 - b * &y[j].1;
            if !c.is_zero() {
                out.push((x[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn make_primitive(row: &mut SparseVec) {
    if row.is_empty() {
        return;
    }
    if row.iter().any(|(_, c)| !c.is_integer()) {
        let l = Rational::from(lcm_of_denominators(row.iter().map(|(_, c)| c)));
        for (_, c) in row.iter_mut() {
            *c *= &l;
        }
    }
    let mut g = Rational::zero();
    for (_, c) in row.iter() {
        g = integer_gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, c) in row.iter_mut() {
            *c = &*c / &g;
        }
    }
}

impl Echelon {
    fn insert(&mut self, mut row: SparseVec) {
        make_primitive(&mut row);
        while let Some((lead, _)) = row.first() {
            match self.pivots.get(lead) {
                None => {
                    let lead = *lead;
                    self.pivots.insert(lead, row);
                    return;
                }
                Some(p) => {
                    let a = p[0].1.clone();
                    let b = row[0].1.clone();
                    row = combine(&a, &row, &b, p);
                    make_primitive(&mut row);
                }
            }
        }
    }

    fn back_substitute(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().copied().rev().collect();
        for (k, &c) in cols.iter().enumerate() {
            let p = self.pivots[&c].clone();
            for &lower in &cols[k + 1..] {
                let row = self.pivots.get_mut(&lower).unwrap();
                if let Ok(idx) = row.binary_search_by_key(&c, |(j, _)| *j) {
                    let b = row[idx].1.clone();
                    let mut r = combine(&p[0].1, row, &b, &p);
                    make_primitive(&mut r);
                    *row = r;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::zero(0, 0).rank(), 0);
        assert_eq!(RationalMatrix::identity(2).rank(), 2);
        assert_eq!(RationalMatrix::from_i64(2, &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(RationalMatrix::identity(3).kernel_basis().is_empty());
        let k = RationalMatrix::from_i64(2, &[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
        let k = RationalMatrix::zero(2, 3).kernel_basis();
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            for (j, c) in v.iter().enumerate() {
                assert_eq!(*c, if i == j { q(1) } else { q(0) });
            }
        }
    }

    #[test]
    fn solve_examples() {
        let v = vec![q(3), Rational::new(-1, 2), q(7)];
        assert_eq!(RationalMatrix::identity(3).solve_particular(&v).unwrap(), v);
        let m = RationalMatrix::from_i64(2, &[&[1, 1]]);
        assert_eq!(m.solve_particular(&[q(2)]).unwrap(), vec![q(2), q(0)]);
        let z = RationalMatrix::from_i64(1, &[&[0]]);
        assert_eq!(z.solve_particular(&[q(1)]), Err(Inconsistent));
    }

    #[test]
    fn rational_entries() {
        let m = RationalMatrix::from_dense(
            3,
            &[
                vec![Rational::new(1, 2), Rational::new(1, 3), q(0)],
                vec![q(0), Rational::new(2, 3), q(5)],
                vec![Rational::new(1, 2), q(1), q(5)],
            ],
        );
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Rational::is_zero));
        let rhs = vec![q(1), q(2), q(3)];
        let v = m.solve_particular(&rhs).unwrap();
        assert_eq!(m.mul_vec(&v), rhs);
        assert_eq!(m.solve_particular(&[q(1), q(2), q(4)]), Err(Inconsistent));
    }

    #[test]
    fn columns_and_rows_agree() {
        let by_rows = RationalMatrix::from_i64(3, &[&[1, 0, 2], &[0, 3, 0]]);
        let by_cols = RationalMatrix::from_columns(2, vec![vec![(0, q(1))], vec![(1, q(3))], vec![(0, q(2))]]);
        assert_eq!(by_rows, by_cols);
        assert_eq!(by_rows.transpose().transpose(), by_rows);
    }
}
