//! Generators for the reference families: the one-dimensional four-state
//! example, binary parity (no-n-way interaction) models, cyclic polytopes on
//! the moment curve, and the planar moment matrix.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::expfam::Distribution;
use crate::linalg::Matrix;
use crate::matroid::binomial_u128;
use crate::rational::Rational;

/// `[[1,1,1,1], [-α,1,0,0]]` for `α ∉ {0,1}`.
pub fn example1_matrix(alpha: &Rational) -> Result<Matrix, Error> {
    if alpha.is_zero() || alpha.is_one() {
        return Err(Error::InvalidAlpha);
    }
    let one = Rational::one();
    let zero = Rational::zero();
    Matrix::from_rows(vec![
        vec![one.clone(), one.clone(), one.clone(), one.clone()],
        vec![-alpha.clone(), one, zero.clone(), zero],
    ])
}

/// Sign vector of the parity function on `{0,1}^n` in lexicographic state
/// order: `-1` on states with an odd number of ones, `+1` otherwise.
pub fn parity_vector(n: usize) -> Vec<i64> {
    (0..1usize << n)
        .map(|x| if x.count_ones() % 2 == 1 { -1 } else { 1 })
        .collect()
}

/// Sufficient statistics of the binary no-n-way interaction model: rows are
/// the monomials `∏_{i∈T} x_i` over all proper subsets `T ⊊ {1..n}`
/// (including `T = ∅`, the all-ones row), columns are the states of
/// `{0,1}^n` in lexicographic order. The kernel is spanned by the parity
/// vector.
pub fn parity_model_matrix(n: usize) -> Result<Matrix, Error> {
    if n < 2 {
        return Err(Error::InvalidModel("parity model needs n >= 2".into()));
    }
    if n > 16 {
        return Err(Error::InvalidModel(
            "parity model limited to n <= 16 (the matrix has 2^n columns)".into(),
        ));
    }
    let states = 1usize << n;
    let full_mask = states - 1;
    let mut rows = Vec::with_capacity(states - 1);
    for mask in 0..full_mask {
        // Column x (bits of x read as (x_1, .., x_n), most significant
        // first) carries ∏_{i in mask} x_i.
        let row: Vec<i64> = (0..states)
            .map(|x| {
                let vars = (0..n).fold(0usize, |acc, i| {
                    // variable i+1 has value bit (n-1-i) of x
                    acc | (((x >> (n - 1 - i)) & 1) << i)
                });
                if mask & !vars == 0 {
                    1
                } else {
                    0
                }
            })
            .collect();
        rows.push(row);
    }
    Ok(Matrix::from_int_rows(&rows))
}

/// Parameters of a cyclic polytope `C(d, n)`: the dimension and the strictly
/// increasing curve parameters (`n = |t| > d`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicPolytopeSpec {
    d: usize,
    t: Vec<Rational>,
}

impl CyclicPolytopeSpec {
    pub fn new(d: usize, t: Vec<Rational>) -> Result<Self, Error> {
        if d < 1 {
            return Err(Error::InvalidModel("dimension must be at least 1".into()));
        }
        if t.len() <= d {
            return Err(Error::InvalidModel(format!(
                "need more than d = {d} curve points, got {}",
                t.len()
            )));
        }
        if t.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidModel(
                "curve parameters must be strictly increasing".into(),
            ));
        }
        Ok(CyclicPolytopeSpec { d, t })
    }

    /// Integer parameters `t = (1, .., n)`.
    pub fn with_default_parameters(d: usize, n: usize) -> Result<Self, Error> {
        let t = (1..=n)
            .map(|i| Rational::from_integer((i as i64).into()))
            .collect();
        CyclicPolytopeSpec::new(d, t)
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn vertices(&self) -> usize {
        self.t.len()
    }
}

/// The `(d+1) × n` matrix of the cyclic polytope: an all-ones row atop the
/// moment-curve columns `(t_i, t_i², .., t_i^d)`.
pub fn cyclic_matrix(spec: &CyclicPolytopeSpec) -> Matrix {
    let n = spec.t.len();
    let mut rows = Vec::with_capacity(spec.d + 1);
    rows.push(vec![Rational::one(); n]);
    let mut powers = vec![Rational::one(); n];
    for _ in 1..=spec.d {
        for (p, t) in powers.iter_mut().zip(&spec.t) {
            *p *= t;
        }
        rows.push(powers.clone());
    }
    Matrix::from_rows(rows).expect("rows have equal length")
}

/// Facets of `C(d, n)` by Gale's evenness condition: the `d`-subsets `S`
/// such that any two elements outside `S` have an even number of elements
/// of `S` strictly between them. Zero-based indices.
pub fn gale_evenness_facets(d: usize, n: usize) -> Result<Vec<BTreeSet<usize>>, Error> {
    if d < 1 || n <= d {
        return Err(Error::InvalidModel("need n > d >= 1".into()));
    }
    let facets = (0..n)
        .combinations(d)
        .filter(|subset| {
            let inside: BTreeSet<usize> = subset.iter().copied().collect();
            let outside: Vec<usize> = (0..n).filter(|i| !inside.contains(i)).collect();
            outside
                .iter()
                .tuple_combinations()
                .all(|(&i, &j)| inside.range(i + 1..j).count().is_multiple_of(2))
        })
        .map(|subset| subset.into_iter().collect())
        .collect();
    Ok(facets)
}

/// f-vector of `C(d, n)` from the Gale-evenness facets: the polytope is
/// simplicial, so its proper faces are exactly the subsets of facets; the
/// polytope itself is counted as the single face of dimension `d`.
pub fn cyclic_f_vector(d: usize, n: usize) -> Result<Vec<u64>, Error> {
    let facets = gale_evenness_facets(d, n)?;
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for facet in &facets {
        let elems: Vec<usize> = facet.iter().copied().collect();
        for size in 1..=elems.len() {
            for subset in elems.iter().copied().combinations(size) {
                faces.insert(subset);
            }
        }
    }
    let mut f = vec![0u64; d + 1];
    for face in &faces {
        f[face.len() - 1] += 1;
    }
    f[d] = 1;
    Ok(f)
}

/// Closed-form count of parity-model support sets of cardinality `k`
/// (`1 ≤ k < 2^n`): `C(2^n, k) - 2·C(2^{n-1}, k - 2^{n-1})`.
pub fn parity_s_formula(n: usize, k: usize) -> Result<u128, Error> {
    let states = 1u64 << n;
    let half = 1u64 << (n - 1);
    if k == 0 || k as u64 >= states {
        return Err(Error::InvalidModel(format!(
            "k must satisfy 1 <= k < 2^n, got k = {k}"
        )));
    }
    let k = k as u64;
    let correction = if k >= half {
        2 * binomial_u128(half, k - half)
    } else {
        0
    };
    Ok(binomial_u128(states, k) - correction)
}

/// The `3 × m` matrix with columns `(1, i, i²)`, `i = 1..m`: the smallest
/// family whose closure contains every vertex of the simplex.
pub fn moment_matrix(m: usize) -> Result<Matrix, Error> {
    if m < 3 {
        return Err(Error::InvalidModel("moment matrix needs m >= 3".into()));
    }
    let rows = vec![
        vec![1i64; m],
        (1..=m as i64).collect(),
        (1..=m as i64).map(|i| i * i).collect(),
    ];
    Ok(Matrix::from_int_rows(&rows))
}

/// The family member `p_{βθ}` with `θ = (j², -2j, 1)` on the moment matrix:
/// `p(i) ∝ exp(-β(i-j)²)`, converging to `δ_j` as `β → ∞`. States `i` and
/// the target `j` are 1-based.
pub fn delta_approximation(m: usize, j: usize, beta: f64) -> Result<Distribution, Error> {
    if m < 3 || j < 1 || j > m {
        return Err(Error::InvalidModel(format!(
            "need m >= 3 and 1 <= j <= m, got m = {m}, j = {j}"
        )));
    }
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::InvalidModel(
            "beta must be finite and nonnegative".into(),
        ));
    }
    let weights: Vec<f64> = (1..=m)
        .map(|i| {
            let diff = i as f64 - j as f64;
            (-beta * diff * diff).exp()
        })
        .collect();
    let z: f64 = weights.iter().sum();
    Distribution::float(weights.into_iter().map(|w| w / z).collect(), 1e-9)
}
