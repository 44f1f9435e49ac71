//! Fixture builders shared by the benchmarks.

use omfam_core::linalg::Matrix;
use omfam_core::models;
use omfam_core::rational::Rational;

/// The binary parity model on `{0,1}^3` (7 x 8, one circuit).
pub fn parity3() -> Matrix {
    models::parity_model_matrix(3).expect("n = 3 is valid")
}

/// Moment matrix with `m` states (3 x m, kernel dimension m - 3).
pub fn moment(m: usize) -> Matrix {
    models::moment_matrix(m).expect("m >= 3")
}

/// The four-state rank-2 example at alpha = 2.
pub fn example1() -> Matrix {
    models::example1_matrix(&Rational::new(2.into(), 1.into())).expect("alpha = 2 is valid")
}

/// A kernel vector of `example1` with full support.
pub fn example1_kernel_vector() -> Vec<Rational> {
    [1i64, 2, -1, -2]
        .into_iter()
        .map(|x| Rational::from_integer(x.into()))
        .collect()
}
