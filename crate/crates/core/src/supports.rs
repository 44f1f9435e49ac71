//! Facial sets, Farkas certificates and support-set enumeration.
//!
//! A set `F` is facial when some functional vanishes on the columns indexed
//! by `F` and is at least 1 on all others; the facial sets are exactly the
//! possible supports of distributions in the closure of the exponential
//! family. Three equivalent characterizations are implemented: the circuit
//! test, exact certificate construction by Fourier–Motzkin, and closure
//! membership of the uniform distribution on the set.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::Error;
use crate::expfam::{in_closure, Distribution, ExponentialFamily, MembershipReport};
use crate::fm::{solve_inequalities, FmOutcome};
use crate::linalg::{dot, solve, Matrix, SolveOutcome, Vector};
use crate::matroid::{binomial_u128, cocircuits, signed_circuits, OrientedMatroid};
use crate::rational::Rational;

/// A functional `c` with `cᵀa_y = 0` on the set and `cᵀa_z ≥ 1` off it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacialCertificate {
    pub functional: Vector,
}

/// Farkas evidence that no facial functional exists, expressed over the
/// stacked system with rows `{a_yᵀ}`, `{-a_yᵀ}` (both over the set, in
/// ascending order) and `{-a_zᵀ}` (off the set, ascending).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasWitness {
    pub eq_plus: Vector,
    pub eq_minus: Vector,
    pub ineq: Vector,
}

impl FarkasWitness {
    /// Checks `y ≥ 0`, `yᵀB = 0` and `yᵀz < 0` against the defining system.
    pub fn verify(&self, a: &Matrix, subset: &BTreeSet<usize>) -> bool {
        let inside: Vec<usize> = subset.iter().copied().collect();
        let outside: Vec<usize> = (0..a.cols()).filter(|i| !subset.contains(i)).collect();
        if self.eq_plus.len() != inside.len()
            || self.eq_minus.len() != inside.len()
            || self.ineq.len() != outside.len()
        {
            return false;
        }
        let nonneg = |v: &Vector| v.iter().all(|x| !x.is_negative());
        if !(nonneg(&self.eq_plus) && nonneg(&self.eq_minus) && nonneg(&self.ineq)) {
            return false;
        }
        let mut combo = vec![Rational::zero(); a.rows()];
        let mut add = |col: usize, weight: &Rational, negate: bool| {
            for (r, slot) in combo.iter_mut().enumerate() {
                let term = weight * a.at(r, col);
                *slot += if negate { -term } else { term };
            }
        };
        for (k, &y) in inside.iter().enumerate() {
            add(y, &self.eq_plus[k], false);
            add(y, &self.eq_minus[k], true);
        }
        for (k, &z) in outside.iter().enumerate() {
            add(z, &self.ineq[k], true);
        }
        if combo.iter().any(|x| !x.is_zero()) {
            return false;
        }
        // yᵀz = -Σ ineq must be negative.
        self.ineq.iter().any(|x| x.is_positive())
    }
}

/// One of the two Farkas alternatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FacialOutcome {
    Certificate(FacialCertificate),
    Witness(FarkasWitness),
}

/// Circuit test against a precomputed oriented matroid: `F` is facial iff
/// for every signed circuit `(P, N)`, `P ⊆ F ⇔ N ⊆ F`.
pub fn is_facial_in(om: &OrientedMatroid, subset: &BTreeSet<usize>) -> bool {
    om.signed_circuits()
        .iter()
        .all(|c| c.plus().is_subset(subset) == c.minus().is_subset(subset))
}

/// Circuit test for facial sets. The empty set is facial by convention
/// (the empty face of the polytope).
pub fn is_facial(a: &Matrix, subset: &BTreeSet<usize>) -> bool {
    if subset.is_empty() {
        return true;
    }
    is_facial_in(&signed_circuits(a), subset)
}

/// Exact facial certificate or Farkas witness for a nonempty subset.
///
/// Equality constraints are projected out through a kernel basis, the
/// remaining inequalities are decided by Fourier–Motzkin, and an infeasible
/// outcome is mapped back to multipliers over the original stacked system.
pub fn facial_certificate(a: &Matrix, subset: &BTreeSet<usize>) -> Result<FacialOutcome, Error> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(&bad) = subset.iter().find(|&&i| i >= a.cols()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            ground: a.cols(),
        });
    }
    let inside: Vec<usize> = subset.iter().copied().collect();
    let outside: Vec<usize> = (0..a.cols()).filter(|i| !subset.contains(i)).collect();

    // c must satisfy cᵀa_y = 0 for y inside: parametrize c = Σ w_i n_i over a
    // kernel basis of the stacked rows {a_yᵀ}.
    let inside_rows = a.submatrix_cols(&inside).transpose();
    let null_basis = inside_rows.kernel_basis();

    if outside.is_empty() {
        // No inequality constraints; c = 0 satisfies the equalities.
        return Ok(FacialOutcome::Certificate(FacialCertificate {
            functional: vec![Rational::zero(); a.rows()],
        }));
    }

    // Inequalities cᵀa_z ≥ 1 become -(Nᵀa_z)·w ≤ -1.
    let system: Vec<(Vector, Rational)> = outside
        .iter()
        .map(|&z| {
            let col = a.column(z);
            let coeffs: Vector = null_basis.iter().map(|n| -dot(n, &col)).collect();
            (coeffs, -Rational::one())
        })
        .collect();

    match solve_inequalities(&system) {
        FmOutcome::Feasible(w) => {
            let mut c = vec![Rational::zero(); a.rows()];
            for (i, n) in null_basis.iter().enumerate() {
                for (slot, x) in c.iter_mut().zip(n) {
                    *slot += &w[i] * x;
                }
            }
            debug_assert!(inside.iter().all(|&y| dot(&c, &a.column(y)).is_zero()));
            debug_assert!(outside
                .iter()
                .all(|&z| dot(&c, &a.column(z)) >= Rational::one()));
            Ok(FacialOutcome::Certificate(FacialCertificate {
                functional: c,
            }))
        }
        FmOutcome::Infeasible(lambda) => {
            // v = Σ λ_z a_z lies in span{a_y : y inside}; recover the equality
            // multipliers by solving for that combination.
            let mut v = vec![Rational::zero(); a.rows()];
            for (k, &z) in outside.iter().enumerate() {
                for (slot, entry) in v.iter_mut().zip(a.column(z)) {
                    *slot += &lambda[k] * entry;
                }
            }
            let inside_cols = a.submatrix_cols(&inside);
            let mu = match solve(&inside_cols, &v)? {
                SolveOutcome::Solution(mu) => mu,
                SolveOutcome::Infeasible(_) => {
                    unreachable!("reduced witness must combine into the span of the facial columns")
                }
            };
            let eq_plus: Vector = mu
                .iter()
                .map(|x| {
                    if x.is_positive() {
                        x.clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            let eq_minus: Vector = mu
                .iter()
                .map(|x| {
                    if x.is_negative() {
                        -x.clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            let witness = FarkasWitness {
                eq_plus,
                eq_minus,
                ineq: lambda,
            };
            debug_assert!(witness.verify(a, subset));
            Ok(FacialOutcome::Witness(witness))
        }
    }
}

/// A facial set together with the affine dimension of its face.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FacialSet {
    pub indices: BTreeSet<usize>,
    pub dimension: usize,
}

impl FacialSet {
    pub fn cardinality(&self) -> usize {
        self.indices.len()
    }
}

/// All nonempty facial sets of a matrix, ordered by cardinality then
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportFamily {
    pub ground_size: usize,
    pub sets: Vec<FacialSet>,
}

impl SupportFamily {
    pub fn contains(&self, subset: &BTreeSet<usize>) -> bool {
        self.sets.iter().any(|f| &f.indices == subset)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

fn sorted_family(ground_size: usize, mut sets: Vec<FacialSet>) -> SupportFamily {
    sets.sort_by(|a, b| {
        a.cardinality()
            .cmp(&b.cardinality())
            .then_with(|| a.indices.cmp(&b.indices))
    });
    SupportFamily { ground_size, sets }
}

/// Face dimension: affine rank of the face's columns minus one, computed on
/// a matrix containing the all-ones row.
fn face_dimension(a: &Matrix, subset: &BTreeSet<usize>) -> usize {
    let cols: Vec<usize> = subset.iter().copied().collect();
    a.submatrix_cols(&cols).rank() - 1
}

/// All possible support sets via the face structure: facets are the
/// complements of supports of positive cocircuits, and every face is an
/// intersection of facets (with the full set adjoined).
///
/// The matrix is augmented with an all-ones row when its row span lacks one.
pub fn enumerate_supports(a: &Matrix) -> SupportFamily {
    let (a, _) = a.with_ones_row_if_missing();
    let m = a.cols();
    let full: BTreeSet<usize> = (0..m).collect();
    let dual = cocircuits(&a);
    let facets: Vec<BTreeSet<usize>> = dual
        .positive_circuits()
        .map(|c| {
            full.difference(&c.support())
                .copied()
                .collect::<BTreeSet<usize>>()
        })
        .filter(|f: &BTreeSet<usize>| !f.is_empty())
        .collect();
    let mut family: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    family.insert(full.clone());
    let mut frontier: Vec<BTreeSet<usize>> = Vec::new();
    for f in &facets {
        if family.insert(f.clone()) {
            frontier.push(f.clone());
        }
    }
    while let Some(current) = frontier.pop() {
        for facet in &facets {
            let inter: BTreeSet<usize> = current.intersection(facet).copied().collect();
            if !inter.is_empty() && family.insert(inter.clone()) {
                frontier.push(inter);
            }
        }
    }
    let sets = family
        .into_iter()
        .map(|indices| FacialSet {
            dimension: face_dimension(&a, &indices),
            indices,
        })
        .collect();
    sorted_family(m, sets)
}

/// Reference enumeration scanning all `2^m - 1` nonempty subsets with the
/// circuit test; exponential, intended for cross-checks at small `m`.
pub fn enumerate_supports_brute_force(a: &Matrix) -> SupportFamily {
    let (a, _) = a.with_ones_row_if_missing();
    let m = a.cols();
    assert!(
        m < usize::BITS as usize,
        "ground set too large for a mask scan"
    );
    let om = signed_circuits(&a);
    let sets: Vec<FacialSet> = (1u64..(1u64 << m))
        .into_par_iter()
        .filter_map(|mask| {
            let subset: BTreeSet<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            is_facial_in(&om, &subset).then(|| FacialSet {
                dimension: face_dimension(&a, &subset),
                indices: subset,
            })
        })
        .collect();
    sorted_family(m, sets)
}

/// `s_k` = number of facial sets of cardinality `k`, for `k = 1..=m`.
pub fn s_vector(family: &SupportFamily) -> Vec<u64> {
    let mut s = vec![0u64; family.ground_size];
    for f in &family.sets {
        s[f.cardinality() - 1] += 1;
    }
    s
}

/// `f_k` = number of faces of dimension `k`; the full set counts as the top
/// face, the empty face (dimension -1) is not included.
pub fn f_vector(family: &SupportFamily) -> Vec<u64> {
    let max_dim = family.sets.iter().map(|f| f.dimension).max().unwrap_or(0);
    let mut f = vec![0u64; max_dim + 1];
    for set in &family.sets {
        f[set.dimension] += 1;
    }
    f
}

/// Largest `k` such that every subset of cardinality at most `k` is facial.
pub fn neighborliness(family: &SupportFamily) -> usize {
    let s = s_vector(family);
    let m = family.ground_size;
    let mut best = 0;
    for k in 1..=m {
        if u128::from(s[k - 1]) == binomial_u128(m as u64, k as u64) {
            best = k;
        } else {
            break;
        }
    }
    best
}

/// The normalized restriction of the reference measure to `subset`
/// (`q·1_S / q(S)`, the uniform distribution on `S` when `q` is uniform),
/// together with its closure membership report.
pub fn uniform_on(
    subset: &BTreeSet<usize>,
    family: &ExponentialFamily,
) -> Result<(Distribution, MembershipReport), Error> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let m = family.ground_size();
    if let Some(&bad) = subset.iter().find(|&&i| i >= m) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            ground: m,
        });
    }
    let q = family.reference_measure();
    let total: Rational = subset
        .iter()
        .map(|&i| q[i].clone())
        .fold(Rational::zero(), |acc, x| acc + x);
    let entries: Vector = (0..m)
        .map(|i| {
            if subset.contains(&i) {
                &q[i] / &total
            } else {
                Rational::zero()
            }
        })
        .collect();
    let dist = Distribution::exact(entries)?;
    let report = in_closure(family, &dist)?;
    Ok((dist, report))
}
