//! Circuits, signed subsets and the oriented matroid of a matrix.
//!
//! A circuit vector of a matrix `A` is a nonzero kernel vector with
//! inclusion-minimal support; it is unique up to scaling, so each circuit is
//! represented by a primitive integer vector. The signed circuits of all
//! circuits form the oriented matroid of `A`, for which this module provides
//! axiom verification, composition, conformal decomposition, the dual
//! (cocircuits via the orthogonal complement) and the acyclicity test.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::Error;
use crate::linalg::Matrix;
use crate::rational::Rational;

/// A pair of disjoint subsets of the ground set `{0, .., ground-1}`,
/// equivalently a sign vector in `{-1, 0, +1}^ground`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SignedSubset {
    ground: usize,
    plus: BTreeSet<usize>,
    minus: BTreeSet<usize>,
}

impl SignedSubset {
    pub fn new(
        ground: usize,
        plus: BTreeSet<usize>,
        minus: BTreeSet<usize>,
    ) -> Result<Self, Error> {
        if let Some(&i) = plus.union(&minus).find(|&&i| i >= ground) {
            return Err(Error::IndexOutOfRange { index: i, ground });
        }
        if plus.intersection(&minus).next().is_some() {
            return Err(Error::DimensionMismatch(
                "plus and minus parts must be disjoint".into(),
            ));
        }
        Ok(SignedSubset {
            ground,
            plus,
            minus,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn plus(&self) -> &BTreeSet<usize> {
        &self.plus
    }

    pub fn minus(&self) -> &BTreeSet<usize> {
        &self.minus
    }

    /// `plus ∪ minus`.
    pub fn support(&self) -> BTreeSet<usize> {
        self.plus.union(&self.minus).copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty()
    }

    /// The opposite signed subset `(minus, plus)`.
    pub fn negated(&self) -> SignedSubset {
        SignedSubset {
            ground: self.ground,
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }

    /// All of `plus`, none of `minus`.
    pub fn is_positive(&self) -> bool {
        self.minus.is_empty() && !self.plus.is_empty()
    }

    pub fn sign_vector(&self) -> Vec<i8> {
        let mut v = vec![0i8; self.ground];
        for &i in &self.plus {
            v[i] = 1;
        }
        for &i in &self.minus {
            v[i] = -1;
        }
        v
    }

    pub fn from_sign_vector(signs: &[i8]) -> SignedSubset {
        let mut plus = BTreeSet::new();
        let mut minus = BTreeSet::new();
        for (i, &s) in signs.iter().enumerate() {
            if s > 0 {
                plus.insert(i);
            } else if s < 0 {
                minus.insert(i);
            }
        }
        SignedSubset {
            ground: signs.len(),
            plus,
            minus,
        }
    }

    /// Sign-consistency: `X⁺ ∩ Y⁻ = ∅ = X⁻ ∩ Y⁺`.
    pub fn is_sign_consistent_with(&self, other: &SignedSubset) -> bool {
        self.plus.intersection(&other.minus).next().is_none()
            && self.minus.intersection(&other.plus).next().is_none()
    }
}

impl fmt::Display for SignedSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based = |s: &BTreeSet<usize>| s.iter().map(|i| (i + 1).to_string()).join(",");
        write!(
            f,
            "+{{{}}} -{{{}}}",
            one_based(&self.plus),
            one_based(&self.minus)
        )
    }
}

/// Composition `X ∘ Y`: `(X∘Y)⁺ = X⁺ ∪ (Y⁺ \ X⁻)`, `(X∘Y)⁻ = X⁻ ∪ (Y⁻ \ X⁺)`.
pub fn compose(x: &SignedSubset, y: &SignedSubset) -> Result<SignedSubset, Error> {
    if x.ground != y.ground {
        return Err(Error::DimensionMismatch(format!(
            "ground sizes {} and {} differ",
            x.ground, y.ground
        )));
    }
    let plus: BTreeSet<usize> = x
        .plus
        .union(&y.plus.difference(&x.minus).copied().collect())
        .copied()
        .collect();
    let minus: BTreeSet<usize> = x
        .minus
        .union(&y.minus.difference(&x.plus).copied().collect())
        .copied()
        .collect();
    Ok(SignedSubset {
        ground: x.ground,
        plus,
        minus,
    })
}

/// The sign vector of a rational vector: `(supp(n⁺), supp(n⁻))`.
pub fn sign_of(n: &[Rational]) -> SignedSubset {
    let mut plus = BTreeSet::new();
    let mut minus = BTreeSet::new();
    for (i, x) in n.iter().enumerate() {
        if x.is_positive() {
            plus.insert(i);
        } else if x.is_negative() {
            minus.insert(i);
        }
    }
    SignedSubset {
        ground: n.len(),
        plus,
        minus,
    }
}

/// A primitive integer kernel vector with inclusion-minimal support.
///
/// Entries are coprime. [`enumerate_circuits`] returns the canonical
/// representative of each circuit (first nonzero entry positive); operations
/// that must match the sign pattern of a given kernel vector
/// ([`sign_consistent_circuit`], [`conformal_decomposition`]) return the
/// orientation dictated by that vector instead.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CircuitVector {
    entries: Vec<BigInt>,
}

impl CircuitVector {
    /// Scales a rational vector to primitive integers, keeping orientation.
    pub fn primitive_from_rational(v: &[Rational]) -> CircuitVector {
        CircuitVector {
            entries: crate::rational::to_primitive_integers(v),
        }
    }

    /// Canonical representative: first nonzero entry positive.
    pub fn canonicalized(mut self) -> CircuitVector {
        if let Some(first) = self.entries.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for e in &mut self.entries {
                    *e = -e.clone();
                }
            }
        }
        self
    }

    pub fn negated(&self) -> CircuitVector {
        CircuitVector {
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn signed(&self) -> SignedSubset {
        let mut plus = BTreeSet::new();
        let mut minus = BTreeSet::new();
        for (i, x) in self.entries.iter().enumerate() {
            if x.is_positive() {
                plus.insert(i);
            } else if x.is_negative() {
                minus.insert(i);
            }
        }
        SignedSubset {
            ground: self.entries.len(),
            plus,
            minus,
        }
    }

    /// `c⁺` as exponent vector.
    pub fn positive_part(&self) -> Vec<BigInt> {
        self.entries
            .iter()
            .map(|x| {
                if x.is_positive() {
                    x.clone()
                } else {
                    BigInt::zero()
                }
            })
            .collect()
    }

    /// `c⁻` as exponent vector.
    pub fn negative_part(&self) -> Vec<BigInt> {
        self.entries
            .iter()
            .map(|x| {
                if x.is_negative() {
                    -x.clone()
                } else {
                    BigInt::zero()
                }
            })
            .collect()
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.entries
            .iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect()
    }

    /// Sign-consistent with `n`: wherever the circuit is nonzero, its sign
    /// agrees with `n`.
    pub fn is_sign_consistent_with(&self, n: &[Rational]) -> bool {
        self.entries.iter().zip(n).all(|(c, nx)| {
            c.is_zero()
                || (c.is_positive() && nx.is_positive())
                || (c.is_negative() && nx.is_negative())
        })
    }
}

impl fmt::Display for CircuitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.entries.iter().join(", "))
    }
}

/// Ground set plus the set of signed circuits, closed under negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedMatroid {
    ground_size: usize,
    signed_circuits: BTreeSet<SignedSubset>,
}

impl OrientedMatroid {
    pub fn new(ground_size: usize, signed_circuits: BTreeSet<SignedSubset>) -> OrientedMatroid {
        OrientedMatroid {
            ground_size,
            signed_circuits,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn signed_circuits(&self) -> &BTreeSet<SignedSubset> {
        &self.signed_circuits
    }

    pub fn positive_circuits(&self) -> impl Iterator<Item = &SignedSubset> {
        self.signed_circuits.iter().filter(|c| c.is_positive())
    }
}

/// Whether the column submatrix on `support` carries a circuit, i.e. its
/// kernel is one-dimensional with a nowhere-zero generator; returns the
/// embedded kernel vector.
fn circuit_on_support(a: &Matrix, support: &[usize]) -> Option<Vec<Rational>> {
    let sub = a.submatrix_cols(support);
    let kernel = sub.kernel_basis();
    if kernel.len() != 1 {
        return None;
    }
    let gen = &kernel[0];
    if gen.iter().any(|x| x.is_zero()) {
        return None;
    }
    let mut full = vec![Rational::zero(); a.cols()];
    for (slot, &col) in support.iter().enumerate() {
        full[col] = gen[slot].clone();
    }
    Some(full)
}

/// All circuits of `A`, one canonical representative per circuit, sorted by
/// entries.
///
/// Candidate supports are scanned in increasing size up to `rank + 1`
/// (any larger set of columns contains a smaller dependency), skipping
/// supersets of supports already found. Candidates within one size level are
/// tested in parallel and merged deterministically.
pub fn enumerate_circuits(a: &Matrix) -> Vec<CircuitVector> {
    let m = a.cols();
    if m == 0 || a.kernel_basis().is_empty() {
        return Vec::new();
    }
    let max_size = (a.rank() + 1).min(m);
    let mut found_supports: Vec<BTreeSet<usize>> = Vec::new();
    let mut circuits: Vec<CircuitVector> = Vec::new();
    for size in 1..=max_size {
        let candidates: Vec<Vec<usize>> = (0..m)
            .combinations(size)
            .filter(|cand| {
                !found_supports
                    .iter()
                    .any(|s| s.iter().all(|i| cand.contains(i)))
            })
            .collect();
        let new: Vec<(Vec<usize>, CircuitVector)> = candidates
            .into_par_iter()
            .filter_map(|cand| {
                circuit_on_support(a, &cand).map(|full| {
                    let c = CircuitVector::primitive_from_rational(&full).canonicalized();
                    (cand, c)
                })
            })
            .collect();
        for (cand, c) in new {
            found_supports.push(cand.into_iter().collect());
            circuits.push(c);
        }
    }
    circuits.sort();
    circuits
}

/// The oriented matroid `C(A) = ± sgn(C)` of the matrix.
pub fn signed_circuits(a: &Matrix) -> OrientedMatroid {
    let mut set = BTreeSet::new();
    for c in enumerate_circuits(a) {
        let s = c.signed();
        set.insert(s.negated());
        set.insert(s);
    }
    OrientedMatroid {
        ground_size: a.cols(),
        signed_circuits: set,
    }
}

/// The dual oriented matroid: signed circuits of the orthogonal complement
/// (Gale transform), i.e. the minimal-support sign vectors of the row span.
pub fn cocircuits(a: &Matrix) -> OrientedMatroid {
    signed_circuits(&a.orthogonal_complement_basis())
}

/// Upper bound `C(m, r+2)` on the number of circuits, where `r + 1` is the
/// matrix rank.
pub fn circuit_count_bound(ground_size: usize, rank: usize) -> u128 {
    binomial_u128(ground_size as u64, (rank + 1) as u64)
}

pub(crate) fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// A violation of one of the circuit axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// (C1) the negation of `circuit` is missing.
    MissingOpposite { circuit: SignedSubset },
    /// (C2) two circuits with nested supports that are not opposites.
    NestedSupports {
        inner: SignedSubset,
        outer: SignedSubset,
    },
    /// (C3) weak elimination failed for `x`, `y` at element `e`.
    EliminationFailed {
        x: SignedSubset,
        y: SignedSubset,
        element: usize,
    },
}

/// Outcome of [`axioms_check`]; empty means a valid oriented matroid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively verifies (C1) symmetry, (C2) incomparability and (C3) weak
/// elimination, reporting every violation.
pub fn axioms_check(om: &OrientedMatroid) -> AxiomReport {
    let mut violations = Vec::new();
    let circuits: Vec<&SignedSubset> = om.signed_circuits.iter().collect();
    for &c in &circuits {
        if !om.signed_circuits.contains(&c.negated()) {
            violations.push(AxiomViolation::MissingOpposite { circuit: c.clone() });
        }
    }
    for &x in &circuits {
        for &y in &circuits {
            if x == y || *x == y.negated() {
                continue;
            }
            if x.support().is_subset(&y.support()) {
                violations.push(AxiomViolation::NestedSupports {
                    inner: x.clone(),
                    outer: y.clone(),
                });
            }
        }
    }
    for &x in &circuits {
        for &y in &circuits {
            if *x == y.negated() {
                continue;
            }
            for &e in x.plus().intersection(y.minus()) {
                let plus_pool: BTreeSet<usize> = x
                    .plus()
                    .union(y.plus())
                    .copied()
                    .filter(|&i| i != e)
                    .collect();
                let minus_pool: BTreeSet<usize> = x
                    .minus()
                    .union(y.minus())
                    .copied()
                    .filter(|&i| i != e)
                    .collect();
                let found = om
                    .signed_circuits
                    .iter()
                    .any(|z| z.plus().is_subset(&plus_pool) && z.minus().is_subset(&minus_pool));
                if !found {
                    violations.push(AxiomViolation::EliminationFailed {
                        x: x.clone(),
                        y: y.clone(),
                        element: e,
                    });
                }
            }
        }
    }
    AxiomReport { violations }
}

fn check_in_kernel(a: &Matrix, n: &[Rational]) -> Result<(), Error> {
    let image = a.mat_vec(n)?;
    if image.iter().all(|x| x.is_zero()) {
        Ok(())
    } else {
        Err(Error::NotInKernel)
    }
}

/// A circuit vector sign-consistent with the kernel vector `n`, with support
/// inside `supp(n)`; the returned orientation matches `n`.
pub fn sign_consistent_circuit(a: &Matrix, n: &[Rational]) -> Result<CircuitVector, Error> {
    check_in_kernel(a, n)?;
    if n.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroKernelVector);
    }
    let support: Vec<usize> = n
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i)
        .collect();
    let sub = a.submatrix_cols(&support);
    for c in enumerate_circuits(&sub) {
        let mut full = vec![BigInt::zero(); a.cols()];
        for (slot, &col) in support.iter().enumerate() {
            full[col] = c.entries()[slot].clone();
        }
        let embedded = CircuitVector { entries: full };
        if embedded.is_sign_consistent_with(n) {
            return Ok(embedded);
        }
        let neg = embedded.negated();
        if neg.is_sign_consistent_with(n) {
            return Ok(neg);
        }
    }
    unreachable!("every nonzero kernel vector has a sign-consistent circuit")
}

/// Writes the kernel vector `n` as a positive combination of circuit vectors,
/// each sign-consistent with `n`. Empty exactly when `n = 0`.
pub fn conformal_decomposition(
    a: &Matrix,
    n: &[Rational],
) -> Result<Vec<(Rational, CircuitVector)>, Error> {
    check_in_kernel(a, n)?;
    let mut rest = n.to_vec();
    let mut parts = Vec::new();
    while rest.iter().any(|x| !x.is_zero()) {
        let c = sign_consistent_circuit(a, &rest)?;
        let coeff = c
            .entries()
            .iter()
            .zip(&rest)
            .filter(|(cx, _)| !cx.is_zero())
            .map(|(cx, nx)| nx / Rational::from_integer(cx.clone()))
            .min()
            .expect("circuit has nonempty support");
        debug_assert!(coeff.is_positive());
        for (i, cx) in c.entries().iter().enumerate() {
            if !cx.is_zero() {
                rest[i] = rest[i].clone() - &coeff * Rational::from_integer(cx.clone());
            }
        }
        parts.push((coeff, c));
    }
    Ok(parts)
}

/// Acyclicity: some strictly positive vector lies in the row span.
///
/// By Gordan's alternative this holds exactly when no circuit is
/// nonnegative, so the test runs on the circuit list. Matrices with the
/// all-ones vector in their row span are always acyclic.
pub fn is_acyclic(a: &Matrix) -> bool {
    enumerate_circuits(a)
        .iter()
        .all(|c| !c.signed().plus().is_empty() && !c.signed().minus().is_empty())
}
