//! Dense exact linear algebra: reduced row echelon form, nullspaces, linear
//! solves and subspaces with canonical representatives.
//!
//! Vectors are plain `[Scalar]` slices. Whenever an `n × n` linear map is
//! viewed as a point of a subspace it is flattened row-major into a vector of
//! length `n²`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// Row-major dense matrix over a single field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        check_field(field, &data)?;
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from integer entries given row-major.
    pub fn from_i64(field: FieldSpec, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        let data = entries.iter().map(|&v| field.from_i64(v)).collect();
        Matrix::new(field, rows, cols, data)
    }

    /// Stacks equal-length vectors as rows.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: &[Vec<Scalar>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    actual: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Matrix::new(field, rows.len(), cols, data)
    }

    /// Places equal-length vectors as columns.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        Ok(Matrix::from_rows(field, rows, columns)?.transpose())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Scalar> {
        self.data
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        &self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        assert_eq!(value.field(), self.field, "field mismatch");
        self.data[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[Scalar] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, col).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        check_field(self.field, v)?;
        Ok((0..self.rows)
            .map(|r| dot(self.row(r), v, self.field))
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.rows,
            });
        }
        same_field(self.field, other.field)?;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * other.cols + c;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Result<Matrix> {
        same_field(self.field, s.field())?;
        Ok(Matrix {
            data: self.data.iter().map(|a| a * s).collect(),
            ..self.clone()
        })
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                actual: other.rows * other.cols,
            });
        }
        same_field(self.field, other.field)?;
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                actual: other.rows,
            });
        }
        same_field(self.field, other.field)?;
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols,
            data,
        })
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.cols,
            });
        }
        same_field(self.field, other.field)?;
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let pivots = m.reduce_in_place();
        Echelon {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    // Gauss-Jordan elimination; the pivot is the first nonzero entry in the
    // column. Returns the pivot columns.
    fn reduce_in_place(&mut self) -> Vec<usize> {
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..cols {
            if next == self.rows {
                break;
            }
            let Some(found) = (next..self.rows).find(|&r| !self.data[r * cols + c].is_zero())
            else {
                continue;
            };
            if found != next {
                for j in c..cols {
                    self.data.swap(found * cols + j, next * cols + j);
                }
            }
            let inv = self.data[next * cols + c]
                .inv()
                .expect("pivot entry is nonzero");
            let mut pivot_row = Vec::new();
            for j in c..cols {
                let idx = next * cols + j;
                if !self.data[idx].is_zero() {
                    self.data[idx] = &self.data[idx] * &inv;
                    pivot_row.push((j, self.data[idx].clone()));
                }
            }
            for r in 0..self.rows {
                if r == next {
                    continue;
                }
                let factor = self.data[r * cols + c].clone();
                if factor.is_zero() {
                    continue;
                }
                for (j, p) in &pivot_row {
                    let idx = r * cols + j;
                    self.data[idx] = &self.data[idx] - &(&factor * p);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(Scalar::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(0);
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|c| format!("{:>width$}", cells[r * self.cols + c]))
                .collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

fn same_field(left: FieldSpec, right: FieldSpec) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::FieldMismatch { left, right })
    }
}

pub(crate) fn check_field(field: FieldSpec, v: &[Scalar]) -> Result<()> {
    match v.iter().find(|s| s.field() != field) {
        Some(s) => Err(Error::FieldMismatch {
            left: field,
            right: s.field(),
        }),
        None => Ok(()),
    }
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar], field: FieldSpec) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// Result of row reduction: the canonical RREF, its rank and the pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn rref(m: &Matrix) -> Echelon {
    m.rref()
}

/// `{v : m·v = 0}`.
pub fn nullspace(m: &Matrix) -> Subspace {
    let ech = m.rref();
    let field = m.field;
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<Scalar>> = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut v = vec![field.zero(); n];
            v[free] = field.one();
            for (r, &p) in ech.pivots.iter().enumerate() {
                v[p] = -ech.matrix.get(r, free);
            }
            v
        })
        .collect();
    Subspace::span(field, n, &vectors).expect("nullspace vectors have matching length")
}

/// Some `x` with `a·x = b`, or `None` when the system is inconsistent. When
/// the solution is not unique, free variables are set to zero.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            actual: b.len(),
        });
    }
    let rhs = Matrix::new(a.field, a.rows, 1, b.to_vec())?;
    let ech = a.hstack(&rhs)?.rref();
    if ech.pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = vec![a.field.zero(); a.cols];
    for (r, &p) in ech.pivots.iter().enumerate() {
        x[p] = ech.matrix.get(r, a.cols).clone();
    }
    Ok(Some(x))
}

/// A coefficient matrix reduced once so that many right-hand sides can be
/// solved cheaply. Produces the same particular solution as [`solve`].
#[derive(Debug, Clone)]
pub struct Solver {
    field: FieldSpec,
    rows: usize,
    unknowns: usize,
    pivots: Vec<usize>,
    // Rows of the transform E with E·a = rref(a), stored sparsely.
    transform: Vec<Vec<(usize, Scalar)>>,
}

impl Solver {
    pub fn new(a: &Matrix) -> Self {
        let ech = a
            .hstack(&Matrix::identity(a.field, a.rows))
            .expect("identity has matching rows")
            .rref();
        let rank = ech.pivots.iter().take_while(|&&p| p < a.cols).count();
        let transform = (0..a.rows)
            .map(|r| {
                (0..a.rows)
                    .filter_map(|j| {
                        let e = ech.matrix.get(r, a.cols + j);
                        (!e.is_zero()).then(|| (j, e.clone()))
                    })
                    .collect()
            })
            .collect();
        Solver {
            field: a.field,
            rows: a.rows,
            unknowns: a.cols,
            pivots: ech.pivots[..rank].to_vec(),
            transform,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                actual: b.len(),
            });
        }
        check_field(self.field, b)?;
        let apply = |row: &[(usize, Scalar)]| {
            let mut acc = self.field.zero();
            for (j, e) in row {
                if !b[*j].is_zero() {
                    acc = &acc + &(e * &b[*j]);
                }
            }
            acc
        };
        let rank = self.rank();
        if self.transform[rank..]
            .iter()
            .any(|row| !apply(row).is_zero())
        {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.unknowns];
        for (r, &p) in self.pivots.iter().enumerate() {
            x[p] = apply(&self.transform[r]);
        }
        Ok(Some(x))
    }
}

/// A linear subspace of `F^n`, stored as its canonical RREF basis. Two
/// subspaces are equal exactly when their bases are entry-wise equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: FieldSpec, ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        Ok(row_space(&Matrix::from_rows(field, ambient, vectors)?))
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Scalar]> + '_ {
        (0..self.dim()).map(|r| self.basis.row(r))
    }

    fn check_vector(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.ambient_dim() {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim(),
                right: v.len(),
            });
        }
        check_field(self.field(), v)
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        self.check_vector(v)?;
        // Pivot columns are zero outside their own row, so the coordinate on
        // basis row r is v[pivot_r]; the residual decides membership.
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (r, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(r).iter().enumerate() {
                if !b.is_zero() {
                    residual[j] = &residual[j] - &(c * b);
                }
            }
        }
        Ok(residual.iter().all(Scalar::is_zero).then_some(coords))
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim(),
                right: other.ambient_dim(),
            });
        }
        same_field(self.field(), other.field())
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self == other)
    }

    /// `self ≤ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        for v in self.basis_vectors() {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `{f : f·v = 0 for all v in self}`.
    pub fn annihilator(&self) -> Subspace {
        nullspace(&self.basis)
    }

    /// `self + other`.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(row_space(&self.basis.vstack(&other.basis)?))
    }
}

pub fn row_space(m: &Matrix) -> Subspace {
    let ech = m.rref();
    let rank = ech.rank;
    let cols = m.cols;
    let mut data = ech.matrix.data;
    data.truncate(rank * cols);
    Subspace {
        basis: Matrix {
            field: m.field,
            rows: rank,
            cols,
            data,
        },
        pivots: ech.pivots,
    }
}

pub fn column_space(m: &Matrix) -> Subspace {
    row_space(&m.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::RATIONALS;

    fn m(rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        Matrix::from_i64(Q, rows, cols, entries).unwrap()
    }

    fn v(entries: &[i64]) -> Vec<Scalar> {
        entries.iter().map(|&x| Q.from_i64(x)).collect()
    }

    #[test]
    fn rref_identity() {
        let ech = Matrix::identity(Q, 3).rref();
        assert_eq!(ech.matrix, Matrix::identity(Q, 3));
        assert_eq!(ech.rank, 3);
        assert_eq!(ech.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_dependent_rows() {
        let ech = m(2, 2, &[1, 1, 2, 2]).rref();
        assert_eq!(ech.matrix, m(2, 2, &[1, 1, 0, 0]));
        assert_eq!(ech.rank, 1);
        assert_eq!(ech.pivots, vec![0]);
    }

    #[test]
    fn rref_row_swap() {
        let ech = m(2, 2, &[0, 1, 1, 0]).rref();
        assert_eq!(ech.matrix, Matrix::identity(Q, 2));
        assert_eq!(ech.rank, 2);
    }

    #[test]
    fn rref_normalizes_to_fractions() {
        let ech = m(2, 3, &[2, 4, 1, 1, 3, 0]).rref();
        let half = Scalar::from_ratio(Q, 1, 2).unwrap();
        assert_eq!(ech.matrix.get(0, 2), &Scalar::from_ratio(Q, 3, 2).unwrap());
        assert_eq!(ech.matrix.get(1, 2), &-half);
    }

    #[test]
    fn nullspace_examples() {
        let ns = nullspace(&m(1, 2, &[1, 1]));
        assert_eq!(ns, Subspace::span(Q, 2, &[v(&[1, -1])]).unwrap());
        assert_eq!(ns.dim(), 1);
        assert_eq!(nullspace(&Matrix::identity(Q, 4)).dim(), 0);
        assert_eq!(nullspace(&Matrix::zeros(Q, 2, 3)), Subspace::full(Q, 3));
    }

    #[test]
    fn solve_examples() {
        let b = v(&[4, -1, 7]);
        assert_eq!(solve(&Matrix::identity(Q, 3), &b).unwrap(), Some(b));
        assert_eq!(
            solve(&m(1, 2, &[1, 1]), &v(&[2])).unwrap(),
            Some(v(&[2, 0]))
        );
        assert_eq!(solve(&m(2, 1, &[1, 1]), &v(&[1, 2])).unwrap(), None);
        assert!(matches!(
            solve(&m(2, 1, &[1, 1]), &v(&[1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn prepared_solver_matches_solve() {
        let a = m(3, 4, &[1, 2, 0, 1, 2, 4, 1, 0, 3, 6, 1, 1]);
        let solver = Solver::new(&a);
        assert_eq!(solver.rank(), 2);
        for b in [v(&[1, 2, 3]), v(&[1, 0, 1]), v(&[0, 0, 1])] {
            assert_eq!(solver.solve(&b).unwrap(), solve(&a, &b).unwrap());
        }
        assert_eq!(solver.solve(&v(&[0, 0, 1])).unwrap(), None);
    }

    #[test]
    fn row_and_column_spaces() {
        assert_eq!(
            column_space(&m(2, 2, &[1, 2, 0, 0])),
            Subspace::span(Q, 2, &[v(&[1, 0])]).unwrap()
        );
        assert_eq!(row_space(&Matrix::identity(Q, 3)), Subspace::full(Q, 3));
        assert_eq!(column_space(&Matrix::zeros(Q, 3, 2)), Subspace::zero(Q, 3));
    }

    #[test]
    fn membership_equality_and_order() {
        let s = Subspace::span(Q, 2, &[v(&[1, 0])]).unwrap();
        assert!(s.contains(&v(&[3, 0])).unwrap());
        assert!(!s.contains(&v(&[3, 1])).unwrap());
        assert!(s
            .equals(&Subspace::span(Q, 2, &[v(&[2, 0])]).unwrap())
            .unwrap());
        assert!(s.is_subspace_of(&Subspace::full(Q, 2)).unwrap());
        assert!(!Subspace::full(Q, 2).is_subspace_of(&s).unwrap());
        assert!(matches!(
            s.contains(&v(&[1, 0, 0])),
            Err(Error::AmbientMismatch { .. })
        ));
        assert!(matches!(
            s.equals(&Subspace::full(Q, 3)),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn annihilators() {
        let s = Subspace::span(Q, 2, &[v(&[1, 0])]).unwrap();
        assert_eq!(
            s.annihilator(),
            Subspace::span(Q, 2, &[v(&[0, 1])]).unwrap()
        );
        assert_eq!(Subspace::full(Q, 3).annihilator(), Subspace::zero(Q, 3));
        assert_eq!(Subspace::zero(Q, 3).annihilator(), Subspace::full(Q, 3));
    }

    #[test]
    fn coordinates_in_canonical_basis() {
        let s = Subspace::span(Q, 3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let coords = s.coordinates(&v(&[2, 5, 3])).unwrap().unwrap();
        let rebuilt: Vec<Scalar> = (0..3)
            .map(|j| {
                dot(
                    &coords,
                    &s.basis_vectors()
                        .map(|row| row[j].clone())
                        .collect::<Vec<_>>(),
                    Q,
                )
            })
            .collect();
        assert_eq!(rebuilt, v(&[2, 5, 3]));
        assert_eq!(s.coordinates(&v(&[1, 0, 0])).unwrap(), None);
    }

    #[test]
    fn field_mismatch_in_matrix() {
        let gf5 = FieldSpec::prime(5).unwrap();
        let err = Matrix::new(Q, 1, 1, vec![gf5.one()]).unwrap_err();
        assert!(matches!(err, Error::FieldMismatch { .. }));
    }
}
