//! Shared fixtures for the integration suites: the matrix corpus, random
//! generators, and reference oracles that stay independent of the library's
//! computation paths.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use omfam_core::linalg::Matrix;
use omfam_core::matroid::CircuitVector;
use omfam_core::models;
use omfam_core::rational::{parse_rational, Rational};

pub fn rat(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

pub fn rats(xs: &[i64]) -> Vec<Rational> {
    xs.iter()
        .map(|&x| Rational::from_integer(x.into()))
        .collect()
}

pub fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

pub fn example1(alpha: &str) -> Matrix {
    models::example1_matrix(&rat(alpha)).unwrap()
}

/// The fixed corpus of reference matrices used across the suites.
pub fn corpus() -> Vec<(String, Matrix)> {
    let mut list: Vec<(String, Matrix)> = Vec::new();
    for alpha in ["2", "3", "1/2"] {
        list.push((format!("example1(alpha={alpha})"), example1(alpha)));
    }
    for n in [2usize, 3] {
        list.push((
            format!("parity(n={n})"),
            models::parity_model_matrix(n).unwrap(),
        ));
    }
    for m in [4usize, 5, 6, 7] {
        list.push((format!("moment(m={m})"), models::moment_matrix(m).unwrap()));
    }
    for (d, n) in [(2usize, 4usize), (2, 5), (3, 5), (3, 6), (4, 6), (4, 7)] {
        let spec = models::CyclicPolytopeSpec::with_default_parameters(d, n).unwrap();
        list.push((format!("cyclic(d={d},n={n})"), models::cyclic_matrix(&spec)));
    }
    list.push(("simplex(3)".into(), Matrix::identity(3)));
    list.push(("ones(1x5)".into(), Matrix::from_int_rows(&[vec![1; 5]])));
    list.push(("segment".into(), Matrix::from_int_rows(&[vec![1, -1]])));
    list.push((
        "loop-column".into(),
        Matrix::from_int_rows(&[vec![1, 0, 2], vec![0, 0, 1]]),
    ));
    list.push((
        "mixed(3x6)".into(),
        Matrix::from_int_rows(&[
            vec![1, 1, 1, 1, 1, 1],
            vec![0, 1, 2, 0, -1, 1],
            vec![2, 0, 1, -1, 0, 1],
        ]),
    ));
    list
}

/// Deterministic RNG for the randomized suites.
pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xC0FFEE ^ salt)
}

pub fn random_int_matrix(rng: &mut ChaCha8Rng, max_rows: usize, max_cols: usize) -> Matrix {
    let rows = rng.gen_range(1..=max_rows);
    let cols = rng.gen_range(2..=max_cols);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect())
        .collect();
    Matrix::from_int_rows(&data)
}

pub fn random_positive_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(1..=5i64);
    let den = rng.gen_range(1..=5i64);
    Rational::new(num.into(), den.into())
}

/// A random rational combination of the kernel basis of `a`; may be zero.
pub fn random_kernel_vector(rng: &mut ChaCha8Rng, a: &Matrix) -> Option<Vec<Rational>> {
    let basis = a.kernel_basis();
    if basis.is_empty() {
        return None;
    }
    let mut v = vec![Rational::zero(); a.cols()];
    for b in &basis {
        let num = rng.gen_range(-4..=4i64);
        let den = rng.gen_range(1..=3i64);
        let coeff = Rational::new(num.into(), den.into());
        for (slot, x) in v.iter_mut().zip(b) {
            *slot += &coeff * x;
        }
    }
    Some(v)
}

/// Reference circuit enumeration: scans every nonempty subset of columns and
/// keeps those whose column submatrix has a one-dimensional kernel with a
/// nowhere-zero generator.
pub fn brute_force_circuits(a: &Matrix) -> Vec<CircuitVector> {
    let m = a.cols();
    assert!(m <= 16, "oracle is exponential in m");
    let mut found = Vec::new();
    for mask in 1u32..(1u32 << m) {
        let subset: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let sub = a.submatrix_cols(&subset);
        let kernel = sub.kernel_basis();
        if kernel.len() != 1 || kernel[0].iter().any(|x| x.is_zero()) {
            continue;
        }
        let mut full = vec![Rational::zero(); m];
        for (slot, &col) in subset.iter().enumerate() {
            full[col] = kernel[0][slot].clone();
        }
        found.push(CircuitVector::primitive_from_rational(&full).canonicalized());
    }
    found.sort();
    found
}

/// Reference cocircuit enumeration from the primal matrix only: a subset `S`
/// supports a cocircuit exactly when the space of row-span vectors vanishing
/// off `S` is one-dimensional with a generator that is nowhere zero on `S`.
/// Returns the sign vectors (both orientations), sorted.
pub fn brute_force_cocircuit_signs(a: &Matrix) -> BTreeSet<Vec<i8>> {
    let m = a.cols();
    assert!(m <= 12, "oracle is exponential in m");
    let mut signs = BTreeSet::new();
    for mask in 1u32..(1u32 << m) {
        let inside: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let outside: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 0).collect();
        // u with uᵀa_x = 0 for x outside S.
        let u_space = a.submatrix_cols(&outside).transpose().kernel_basis();
        if u_space.is_empty() {
            continue;
        }
        // Row-span vectors v = Aᵀu generated by that space.
        let images: Vec<Vec<Rational>> = u_space
            .iter()
            .map(|u| a.transpose().mat_vec(u).unwrap())
            .collect();
        let image_matrix = Matrix::from_rows(images.clone()).unwrap();
        if image_matrix.rank() != 1 {
            continue;
        }
        let generator = images
            .into_iter()
            .find(|v| v.iter().any(|x| !x.is_zero()))
            .unwrap();
        if inside.iter().any(|&x| generator[x].is_zero()) {
            continue;
        }
        let sign: Vec<i8> = generator
            .iter()
            .map(|x| {
                if x.is_positive() {
                    1
                } else if x.is_negative() {
                    -1
                } else {
                    0
                }
            })
            .collect();
        let neg: Vec<i8> = sign.iter().map(|s| -s).collect();
        signs.insert(sign);
        signs.insert(neg);
    }
    signs
}

/// Integer-scaled copy of a rational vector (for telescoping-style checks).
pub fn integerize(v: &[Rational]) -> Vec<BigInt> {
    omfam_core::rational::to_primitive_integers(v)
}

/// `∏ p^{n⁺} q^{n⁻}` and `∏ p^{n⁻} q^{n⁺}` for an integer vector `n`.
pub fn binomial_sides(n: &[BigInt], p: &[Rational], q: &[Rational]) -> (Rational, Rational) {
    let mut lhs = Rational::one();
    let mut rhs = Rational::one();
    for (x, e) in n.iter().enumerate() {
        if e.is_positive() {
            lhs *= omfam_core::rational::rat_pow(&p[x], e);
            rhs *= omfam_core::rational::rat_pow(&q[x], e);
        } else if e.is_negative() {
            let mag = -e.clone();
            lhs *= omfam_core::rational::rat_pow(&q[x], &mag);
            rhs *= omfam_core::rational::rat_pow(&p[x], &mag);
        }
    }
    (lhs, rhs)
}
