//! Exact dense linear algebra over the rationals.
//!
//! Elimination uses first-nonzero pivoting with ties broken by lowest row
//! index, so every result is deterministic. Kernel bases are read off the
//! reduced row echelon form: one vector per free column, normalized to have
//! entry 1 at its free column.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::rational::Rational;

/// A fixed-length list of rationals.
pub type Vector = Vec<Rational>;

/// Dense row-major matrix of exact rationals.
///
/// A matrix may have zero rows (the orthogonal complement of a full-rank
/// square matrix is empty); file I/O in the CLI enforces positive
/// dimensions on input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::BadShape {
                rows,
                cols,
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    /// Builds a matrix from integer rows (test and model convenience).
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| Rational::from_integer(v.into())))
            .collect();
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    /// Columns `cols` (in the given order) as a new matrix.
    pub fn submatrix_cols(&self, cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            for &c in cols {
                data.push(self.at(r, c).clone());
            }
        }
        Matrix {
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    /// Appends a row, returning the extended matrix.
    pub fn with_row(&self, row: &[Rational]) -> Result<Matrix, Error> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "appended row has length {}, matrix has {} columns",
                row.len(),
                self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(row);
        Ok(Matrix {
            rows: self.rows + 1,
            cols: self.cols,
            data,
        })
    }

    pub fn mat_vec(&self, v: &[Rational]) -> Result<Vector, Error> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has length {}",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .fold(Rational::zero(), |acc, x| acc + x)
            })
            .collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pivot_row) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, pivot_row);
            let inv = m.at(row, col).clone().recip();
            for c in col..m.cols {
                let v = m.at(row, c).clone() * &inv;
                *m.at_mut(row, c) = v;
            }
            for r in 0..m.rows {
                if r == row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for c in col..m.cols {
                    let new = m.at(r, c).clone() - factor.clone() * m.at(row, c).clone();
                    *m.at_mut(r, c) = new;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Dimension of the row space.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{ n : M n = 0 }`, one vector per free column, read off the
    /// reduced row echelon form. Empty when the kernel is trivial.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![Rational::zero(); self.cols];
            vec[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                vec[p] = -r.at(i, free).clone();
            }
            basis.push(vec);
        }
        basis
    }

    /// A matrix whose rows form a basis of the orthogonal complement of the
    /// row span; zero rows when the matrix has full column rank.
    pub fn orthogonal_complement_basis(&self) -> Matrix {
        let basis = self.kernel_basis();
        let rows = basis.len();
        Matrix {
            rows,
            cols: self.cols,
            data: basis.into_iter().flatten().collect(),
        }
    }

    /// Whether `v` lies in the span of the rows.
    pub fn row_span_contains(&self, v: &[Rational]) -> Result<bool, Error> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} vs {} columns",
                v.len(),
                self.cols
            )));
        }
        if self.rows == 0 {
            return Ok(v.iter().all(|x| x.is_zero()));
        }
        Ok(matches!(
            solve(&self.transpose(), v)?,
            SolveOutcome::Solution(_)
        ))
    }

    /// Returns the matrix with an all-ones row appended when its row span
    /// does not already contain the all-ones vector; the flag reports
    /// whether augmentation happened.
    pub fn with_ones_row_if_missing(&self) -> (Matrix, bool) {
        let ones = vec![Rational::one(); self.cols];
        if self
            .row_span_contains(&ones)
            .expect("length matches by construction")
        {
            (self.clone(), false)
        } else {
            (
                self.with_row(&ones)
                    .expect("length matches by construction"),
                true,
            )
        }
    }

    /// Exact spans-equality of the rows of two matrices.
    pub fn same_row_span(&self, other: &Matrix) -> Result<bool, Error> {
        for r in 0..self.rows {
            if !other.row_span_contains(self.row(r))? {
                return Ok(false);
            }
        }
        for r in 0..other.rows {
            if !self.row_span_contains(other.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} x {}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Evidence that `M x = b` has no solution: a row combination `y` with
/// `yᵀM = 0` and `yᵀb ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfeasibilityCertificate {
    pub combination: Vector,
}

/// Result of [`solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solution(Vector),
    Infeasible(InfeasibilityCertificate),
}

impl SolveOutcome {
    pub fn solution(self) -> Option<Vector> {
        match self {
            SolveOutcome::Solution(v) => Some(v),
            SolveOutcome::Infeasible(_) => None,
        }
    }
}

/// Solves `M x = b` exactly, or returns a certificate of inconsistency.
///
/// Free variables are set to zero, so the returned solution is the unique
/// one with zero entries at all non-pivot columns.
pub fn solve(m: &Matrix, b: &[Rational]) -> Result<SolveOutcome, Error> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, right-hand side has length {}",
            m.rows,
            b.len()
        )));
    }
    // Eliminate on [M | b] while tracking row operations in T (initially the
    // identity), so an inconsistent row yields its originating combination.
    let mut a = m.clone();
    let mut rhs = b.to_vec();
    let mut tracker = Matrix::identity(m.rows);
    let mut row = 0;
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(pr) = (row..a.rows).find(|&r| !a.at(r, col).is_zero()) else {
            continue;
        };
        a.swap_rows(row, pr);
        rhs.swap(row, pr);
        tracker.swap_rows(row, pr);
        let inv = a.at(row, col).clone().recip();
        for c in col..a.cols {
            let v = a.at(row, c).clone() * &inv;
            *a.at_mut(row, c) = v;
        }
        rhs[row] = rhs[row].clone() * &inv;
        for c in 0..tracker.cols {
            let v = tracker.at(row, c).clone() * &inv;
            *tracker.at_mut(row, c) = v;
        }
        for r in 0..a.rows {
            if r == row || a.at(r, col).is_zero() {
                continue;
            }
            let factor = a.at(r, col).clone();
            for c in col..a.cols {
                let new = a.at(r, c).clone() - factor.clone() * a.at(row, c).clone();
                *a.at_mut(r, c) = new;
            }
            rhs[r] = rhs[r].clone() - factor.clone() * rhs[row].clone();
            for c in 0..tracker.cols {
                let new = tracker.at(r, c).clone() - factor.clone() * tracker.at(row, c).clone();
                *tracker.at_mut(r, c) = new;
            }
        }
        pivots.push(col);
        row += 1;
    }
    if let Some(bad) = (row..a.rows).find(|&r| !rhs[r].is_zero()) {
        return Ok(SolveOutcome::Infeasible(InfeasibilityCertificate {
            combination: tracker.row(bad).to_vec(),
        }));
    }
    let mut x = vec![Rational::zero(); a.cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = rhs[i].clone();
    }
    Ok(SolveOutcome::Solution(x))
}

/// Dot product of two equal-length rational slices.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| x * y)
        .fold(Rational::zero(), |acc, v| acc + v)
}

/// True when every entry is nonnegative.
pub fn is_nonneg(v: &[Rational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn rat(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn example1(alpha: i64) -> Matrix {
        Matrix::from_int_rows(&[vec![1, 1, 1, 1], vec![-alpha, 1, 0, 0]])
    }

    #[test]
    fn rank_examples() {
        assert_eq!(example1(2).rank(), 2);
        assert_eq!(Matrix::zeros(2, 2).rank(), 0);
        let moment4 =
            Matrix::from_int_rows(&[vec![1, 1, 1, 1], vec![1, 2, 3, 4], vec![1, 4, 9, 16]]);
        assert_eq!(moment4.rank(), 3);
    }

    #[test]
    fn kernel_of_example1_matches_expected_span() {
        let a = example1(2);
        let basis = a.kernel_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(a.mat_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
        // Span equality with {(1,2,-1,-2), (1,2,-2,-1)}.
        let expected = Matrix::from_int_rows(&[vec![1, 2, -1, -2], vec![1, 2, -2, -1]]);
        let got = Matrix::from_rows(basis).unwrap();
        assert!(got.same_row_span(&expected).unwrap());
    }

    #[test]
    fn kernel_trivial_for_identity() {
        assert!(Matrix::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_parity2_is_spanned_by_parity_vector() {
        let a = Matrix::from_int_rows(&[vec![1, 1, 1, 1], vec![0, 0, 1, 1], vec![0, 1, 0, 1]]);
        let basis = a.kernel_basis();
        assert_eq!(basis.len(), 1);
        let expected = Matrix::from_int_rows(&[vec![1, -1, -1, 1]]);
        assert!(Matrix::from_rows(basis)
            .unwrap()
            .same_row_span(&expected)
            .unwrap());
    }

    #[test]
    fn orthogonal_complement_of_example1() {
        let a = example1(2);
        let comp = a.orthogonal_complement_basis();
        assert_eq!(comp.rows(), 2);
        let expected = Matrix::from_int_rows(&[vec![0, 0, 1, -1], vec![1, 2, 0, -3]]);
        assert!(comp.same_row_span(&expected).unwrap());
        // A* ·  Aᵀ = 0
        for r in 0..comp.rows() {
            for ar in 0..a.rows() {
                assert!(dot(comp.row(r), a.row(ar)).is_zero());
            }
        }
    }

    #[test]
    fn orthogonal_complement_of_ones_row() {
        let ones = Matrix::from_int_rows(&[vec![1, 1, 1]]);
        let comp = ones.orthogonal_complement_basis();
        assert_eq!(comp.rows(), 2);
        for r in 0..comp.rows() {
            assert!(dot(comp.row(r), ones.row(0)).is_zero());
        }
    }

    #[test]
    fn orthogonal_complement_of_full_rank_is_empty() {
        let comp = Matrix::identity(3).orthogonal_complement_basis();
        assert_eq!(comp.rows(), 0);
        assert_eq!(comp.cols(), 3);
    }

    #[test]
    fn double_complement_recovers_row_span() {
        let a = example1(2);
        let twice = a
            .orthogonal_complement_basis()
            .orthogonal_complement_basis();
        assert!(twice.same_row_span(&a).unwrap());
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let b = vec![rat("1/2"), rat("-3"), rat("7")];
        match solve(&Matrix::identity(3), &b).unwrap() {
            SolveOutcome::Solution(x) => assert_eq!(x, b),
            SolveOutcome::Infeasible(_) => panic!("identity must be solvable"),
        }
    }

    #[test]
    fn solve_detects_contradiction_with_certificate() {
        // x = 0 and x = 1.
        let m = Matrix::from_int_rows(&[vec![1], vec![1]]);
        let b = vec![rat("0"), rat("1")];
        match solve(&m, &b).unwrap() {
            SolveOutcome::Infeasible(cert) => {
                let y = cert.combination;
                // yᵀ M = 0 and yᵀ b ≠ 0.
                let ytm = dot(&y, &m.column(0));
                assert!(ytm.is_zero());
                assert!(!dot(&y, &b).is_zero());
            }
            SolveOutcome::Solution(_) => panic!("system is inconsistent"),
        }
    }

    #[test]
    fn solve_round_trips_on_example1() {
        let a = example1(2);
        let ones = vec![Rational::one(); 4];
        let b = a.mat_vec(&ones).unwrap();
        match solve(&a, &b).unwrap() {
            SolveOutcome::Solution(x) => assert_eq!(a.mat_vec(&x).unwrap(), b),
            SolveOutcome::Infeasible(_) => panic!("consistent by construction"),
        }
    }

    #[test]
    fn rank_plus_nullity_is_cols() {
        let a = example1(3);
        assert_eq!(a.rank() + a.kernel_basis().len(), a.cols());
    }

    #[test]
    fn zero_rows_do_not_disturb_rank() {
        let a = Matrix::from_int_rows(&[vec![0, 0, 0], vec![1, 2, 3]]);
        assert_eq!(a.rank(), 1);
    }
}
