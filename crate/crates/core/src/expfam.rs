//! Exponential families, implicit equations and closure membership.
//!
//! The family determined by a matrix `A` and positive reference measure `q`
//! consists of the distributions `p(x) ∝ q(x)·exp(θᵀa_x)`. Its closure is
//! cut out by one binomial-type equation per circuit `c` of `A`:
//!
//! ```text
//! p^{c⁺} q^{c⁻} = p^{c⁻} q^{c⁺}
//! ```
//!
//! which is checked exactly over rationals or within a relative tolerance in
//! the flagged float mode.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::linalg::{dot, Matrix, Vector};
use crate::matroid::{enumerate_circuits, CircuitVector};
use crate::rational::{rat_pow, rational_to_f64, to_primitive_integers, Rational};
use crate::supports::{facial_certificate, is_facial, FacialOutcome};

/// Default relative tolerance on equation residuals in float mode.
pub const DEFAULT_FLOAT_TOLERANCE: f64 = 1e-9;

/// Scale floor of the relative residual `|lhs-rhs| / max(lhs, rhs, ε)`.
const RESIDUAL_FLOOR: f64 = 1e-300;

/// An exponential family `E_{q,A}`.
///
/// The working matrix always has the all-ones vector in its row span; a
/// constants row is appended on construction when missing (this changes
/// neither the family nor its closure) and the augmentation is reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentialFamily {
    matrix: Matrix,
    q: Vector,
    augmented: bool,
}

impl ExponentialFamily {
    pub fn new(a: Matrix, q: Vector) -> Result<Self, Error> {
        if q.len() != a.cols() {
            return Err(Error::DimensionMismatch(format!(
                "reference measure has {} entries, matrix has {} columns",
                q.len(),
                a.cols()
            )));
        }
        if q.iter().any(|x| !x.is_positive()) {
            return Err(Error::NonPositiveMeasure);
        }
        let (matrix, augmented) = a.with_ones_row_if_missing();
        Ok(ExponentialFamily {
            matrix,
            q,
            augmented,
        })
    }

    /// Family with the uniform reference measure `q ≡ 1`.
    pub fn uniform(a: Matrix) -> Result<Self, Error> {
        let q = vec![Rational::one(); a.cols()];
        ExponentialFamily::new(a, q)
    }

    /// The working matrix (augmented when the input lacked the all-ones row).
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn reference_measure(&self) -> &Vector {
        &self.q
    }

    pub fn was_augmented(&self) -> bool {
        self.augmented
    }

    pub fn ground_size(&self) -> usize {
        self.matrix.cols()
    }

    /// Dimension of the family inside the simplex: `rank(A) - 1`.
    pub fn dimension(&self) -> usize {
        self.matrix.rank() - 1
    }
}

/// A probability distribution over the state space, either exact or in the
/// flagged float mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    Exact(Vector),
    Float(Vec<f64>),
}

impl Distribution {
    /// Exact distribution: nonnegative entries summing to exactly 1.
    pub fn exact(entries: Vector) -> Result<Distribution, Error> {
        if entries.iter().any(|x| x.is_negative()) {
            return Err(Error::InvalidDistribution("negative entry".into()));
        }
        let total: Rational = entries.iter().fold(Rational::zero(), |acc, x| acc + x);
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {total}, expected 1"
            )));
        }
        Ok(Distribution::Exact(entries))
    }

    /// Float distribution: nonnegative entries summing to 1 within `tol`.
    pub fn float(entries: Vec<f64>, tol: f64) -> Result<Distribution, Error> {
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteValue);
        }
        if entries.iter().any(|&x| x < 0.0) {
            return Err(Error::InvalidDistribution("negative entry".into()));
        }
        let total: f64 = entries.iter().sum();
        if (total - 1.0).abs() > tol {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {total}, expected 1 within {tol}"
            )));
        }
        Ok(Distribution::Float(entries))
    }

    pub fn len(&self) -> usize {
        match self {
            Distribution::Exact(v) => v.len(),
            Distribution::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Distribution::Exact(_))
    }

    /// Indices with strictly positive probability.
    pub fn support(&self) -> BTreeSet<usize> {
        match self {
            Distribution::Exact(v) => v
                .iter()
                .enumerate()
                .filter(|(_, x)| x.is_positive())
                .map(|(i, _)| i)
                .collect(),
            Distribution::Float(v) => v
                .iter()
                .enumerate()
                .filter(|(_, x)| **x > 0.0)
                .map(|(i, _)| i)
                .collect(),
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Distribution::Exact(v) => v.iter().map(rational_to_f64).collect(),
            Distribution::Float(v) => v.clone(),
        }
    }

    /// Total variation-style L1 distance, in floats.
    pub fn l1_distance(&self, other: &Distribution) -> f64 {
        self.to_f64()
            .iter()
            .zip(other.to_f64())
            .map(|(a, b)| (a - b).abs())
            .sum()
    }
}

/// One implicit equation `p^{c⁺} q^{c⁻} = p^{c⁻} q^{c⁺}` per circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicitEquation {
    pub circuit: CircuitVector,
    pub lhs_exponents: Vec<BigInt>,
    pub rhs_exponents: Vec<BigInt>,
}

impl ImplicitEquation {
    fn new(circuit: CircuitVector) -> ImplicitEquation {
        ImplicitEquation {
            lhs_exponents: circuit.positive_part(),
            rhs_exponents: circuit.negative_part(),
            circuit,
        }
    }

    /// Exact values of both sides on a rational distribution.
    pub fn evaluate_exact(&self, p: &[Rational], q: &[Rational]) -> (Rational, Rational) {
        let product = |p_exp: &[BigInt], q_exp: &[BigInt]| {
            let mut acc = Rational::one();
            for (x, e) in p_exp.iter().enumerate() {
                if !e.is_zero() {
                    acc *= rat_pow(&p[x], e);
                }
            }
            for (x, e) in q_exp.iter().enumerate() {
                if !e.is_zero() {
                    acc *= rat_pow(&q[x], e);
                }
            }
            acc
        };
        (
            product(&self.lhs_exponents, &self.rhs_exponents),
            product(&self.rhs_exponents, &self.lhs_exponents),
        )
    }

    /// Float values of both sides.
    pub fn evaluate_float(&self, p: &[f64], q: &[f64]) -> (f64, f64) {
        let product = |p_exp: &[BigInt], q_exp: &[BigInt]| {
            let mut acc = 1.0f64;
            for (x, e) in p_exp.iter().enumerate() {
                if !e.is_zero() {
                    acc *= p[x].powi(e.to_i32().expect("exponent fits i32"));
                }
            }
            for (x, e) in q_exp.iter().enumerate() {
                if !e.is_zero() {
                    acc *= q[x].powi(e.to_i32().expect("exponent fits i32"));
                }
            }
            acc
        };
        (
            product(&self.lhs_exponents, &self.rhs_exponents),
            product(&self.rhs_exponents, &self.lhs_exponents),
        )
    }

    /// Relative residual `|lhs-rhs| / max(lhs, rhs, ε)`.
    pub fn residual_float(&self, p: &[f64], q: &[f64]) -> f64 {
        let (lhs, rhs) = self.evaluate_float(p, q);
        (lhs - rhs).abs() / lhs.max(rhs).max(RESIDUAL_FLOOR)
    }
}

/// The finite implicit equation system of the family's closure: one
/// equation per circuit of the working matrix.
pub fn implicit_equations(family: &ExponentialFamily) -> Vec<ImplicitEquation> {
    enumerate_circuits(family.matrix())
        .into_iter()
        .map(ImplicitEquation::new)
        .collect()
}

/// Monomial parametrization `p(x) ∝ q(x)·∏_j t_j^{A[j,x]}` (that is,
/// `θ_j = log t_j`), exact for integer matrices and positive rational `t`.
pub fn parametrize(family: &ExponentialFamily, t: &[Rational]) -> Result<Distribution, Error> {
    let a = family.matrix();
    if t.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} parameters, got {} (note: the matrix may have been augmented)",
            a.rows(),
            t.len()
        )));
    }
    if t.iter().any(|x| !x.is_positive()) {
        return Err(Error::NonPositiveParameter);
    }
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            if !a.at(r, c).denom().is_one() {
                return Err(Error::NonIntegerMatrix { row: r, col: c });
            }
        }
    }
    let q = family.reference_measure();
    let weights: Vector = (0..a.cols())
        .map(|x| {
            let mut w = q[x].clone();
            for (j, tj) in t.iter().enumerate() {
                let exp = a.at(j, x).numer();
                if !exp.is_zero() {
                    w *= rat_pow(tj, exp);
                }
            }
            w
        })
        .collect();
    let z: Rational = weights.iter().fold(Rational::zero(), |acc, w| acc + w);
    let p: Vector = weights.into_iter().map(|w| w / &z).collect();
    Distribution::exact(p)
}

/// One violated equation with the values of both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub circuit: CircuitVector,
    pub lhs: SideValue,
    pub rhs: SideValue,
}

/// Equation side value in the mode the check ran in.
#[derive(Debug, Clone, PartialEq)]
pub enum SideValue {
    Exact(Rational),
    Float(f64),
}

impl std::fmt::Display for SideValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SideValue::Exact(r) => write!(f, "{r}"),
            SideValue::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Verdict of the closure membership test.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    pub member: bool,
    pub violations: Vec<Violation>,
}

/// Tests `p ∈ closure(E_{q,A})` by checking every implicit equation, exactly
/// for exact distributions and within [`DEFAULT_FLOAT_TOLERANCE`] otherwise.
pub fn in_closure(family: &ExponentialFamily, p: &Distribution) -> Result<MembershipReport, Error> {
    in_closure_with_tol(family, p, DEFAULT_FLOAT_TOLERANCE)
}

/// [`in_closure`] with an explicit relative tolerance for float mode.
pub fn in_closure_with_tol(
    family: &ExponentialFamily,
    p: &Distribution,
    tol: f64,
) -> Result<MembershipReport, Error> {
    if p.len() != family.ground_size() {
        return Err(Error::DimensionMismatch(format!(
            "distribution has {} entries, state space has {}",
            p.len(),
            family.ground_size()
        )));
    }
    let equations = implicit_equations(family);
    let mut violations = Vec::new();
    match p {
        Distribution::Exact(pv) => {
            for eq in &equations {
                let (lhs, rhs) = eq.evaluate_exact(pv, family.reference_measure());
                if lhs != rhs {
                    violations.push(Violation {
                        circuit: eq.circuit.clone(),
                        lhs: SideValue::Exact(lhs),
                        rhs: SideValue::Exact(rhs),
                    });
                }
            }
        }
        Distribution::Float(pv) => {
            let qf: Vec<f64> = family
                .reference_measure()
                .iter()
                .map(rational_to_f64)
                .collect();
            for eq in &equations {
                let (lhs, rhs) = eq.evaluate_float(pv, &qf);
                let residual = (lhs - rhs).abs() / lhs.max(rhs).max(RESIDUAL_FLOOR);
                if residual > tol {
                    violations.push(Violation {
                        circuit: eq.circuit.clone(),
                        lhs: SideValue::Float(lhs),
                        rhs: SideValue::Float(rhs),
                    });
                }
            }
        }
    }
    Ok(MembershipReport {
        member: violations.is_empty(),
        violations,
    })
}

/// Membership in the family itself (not just the closure) for distributions
/// with full support: `log(p/q)` must be orthogonal to `ker A`, which is
/// `m - r - 1` conditions over a kernel basis.
///
/// Exact distributions are decided exactly (each orthogonality condition
/// becomes `∏ (p/q)^n = 1` for the integer-scaled basis vector `n`); float
/// distributions are checked in logs within `tol`.
pub fn in_family_full_support(
    family: &ExponentialFamily,
    p: &Distribution,
    tol: f64,
) -> Result<bool, Error> {
    if p.len() != family.ground_size() {
        return Err(Error::DimensionMismatch(format!(
            "distribution has {} entries, state space has {}",
            p.len(),
            family.ground_size()
        )));
    }
    let support = p.support();
    if let Some(missing) = (0..family.ground_size()).find(|i| !support.contains(i)) {
        return Err(Error::MissingSupport(missing));
    }
    let kernel = family.matrix().kernel_basis();
    match p {
        Distribution::Exact(pv) => {
            let q = family.reference_measure();
            for n in &kernel {
                let scaled = to_primitive_integers(n);
                let mut acc = Rational::one();
                for (x, e) in scaled.iter().enumerate() {
                    if !e.is_zero() {
                        acc *= rat_pow(&(&pv[x] / &q[x]), e);
                    }
                }
                if !acc.is_one() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Distribution::Float(pv) => {
            let qf: Vec<f64> = family
                .reference_measure()
                .iter()
                .map(rational_to_f64)
                .collect();
            let logs: Vec<f64> = pv.iter().zip(&qf).map(|(p, q)| (p / q).ln()).collect();
            for n in &kernel {
                let nf: Vec<f64> = n.iter().map(rational_to_f64).collect();
                let total: f64 = nf.iter().zip(&logs).map(|(a, b)| a * b).sum();
                let scale: f64 = nf
                    .iter()
                    .zip(&logs)
                    .map(|(a, b)| (a * b).abs())
                    .sum::<f64>()
                    .max(1.0);
                if total.abs() > tol * scale {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Moment map `p ↦ A·p`; for closure members the value lies in the convex
/// support `conv{a_x}`.
pub fn moment_map(family: &ExponentialFamily, p: &Distribution) -> Result<Vector, Error> {
    let exact: Vector = match p {
        Distribution::Exact(v) => v.clone(),
        Distribution::Float(v) => v
            .iter()
            .map(|&x| Rational::from_float(x).ok_or(Error::NonFiniteValue))
            .collect::<Result<_, _>>()?,
    };
    family.matrix().mat_vec(&exact)
}

/// Gaussian elimination with partial pivoting on a float system; `None`
/// when the system is inconsistent beyond the tolerance.
fn solve_float(rows: &[Vec<f64>], rhs: &[f64], tol: f64) -> Option<Vec<f64>> {
    let n = rows.len();
    let d = rows.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let mut b = rhs.to_vec();
    let scale = b.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
    let mut row = 0;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..d {
        if row == n {
            break;
        }
        let (best, best_abs) = (row..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("row < n inside the elimination loop");
        if best_abs <= tol {
            continue;
        }
        a.swap(row, best);
        b.swap(row, best);
        let pivot = a[row][col];
        for r in 0..n {
            if r == row {
                continue;
            }
            let factor = a[r][col] / pivot;
            if factor == 0.0 {
                continue;
            }
            let pivot_row = a[row].clone();
            for (c, pivot_entry) in pivot_row.iter().enumerate().take(d).skip(col) {
                a[r][c] -= factor * pivot_entry;
            }
            b[r] -= factor * b[row];
        }
        pivots.push((row, col));
        row += 1;
    }
    if b[row..]
        .iter()
        .any(|residual| residual.abs() > tol * scale.max(1.0) * 1e3)
    {
        return None;
    }
    let mut x = vec![0.0f64; d];
    for &(r, c) in &pivots {
        x[c] = b[r] / a[r][c];
    }
    Some(x)
}

/// A family member `p_(μ)` on the path that converges to `p_target` as
/// `μ → -∞`, built from a facial certificate `c` of `S` and a solution `d`
/// of `dᵀa_x = log(p(x)/q(x))` on `S`:
///
/// ```text
/// p_(μ)(x) ∝ q(x)·exp(μ·cᵀa_x + dᵀa_x)
/// ```
///
/// Errors when `S` is not facial, when the target's support differs from
/// `S`, or when the log system is inconsistent (the target then violates
/// the implicit equations).
pub fn boundary_sequence(
    family: &ExponentialFamily,
    subset: &BTreeSet<usize>,
    p_target: &Distribution,
    mu: f64,
) -> Result<Distribution, Error> {
    let one_based = || subset.iter().map(|i| i + 1).collect::<Vec<usize>>();
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    if p_target.len() != family.ground_size() {
        return Err(Error::DimensionMismatch(format!(
            "distribution has {} entries, state space has {}",
            p_target.len(),
            family.ground_size()
        )));
    }
    if !is_facial(family.matrix(), subset) {
        return Err(Error::NotFacial(one_based()));
    }
    if &p_target.support() != subset {
        return Err(Error::InvalidDistribution(
            "support of the target must equal the given facial set".into(),
        ));
    }
    let cert = match facial_certificate(family.matrix(), subset)? {
        FacialOutcome::Certificate(cert) => cert,
        FacialOutcome::Witness(_) => return Err(Error::NotFacial(one_based())),
    };
    let a = family.matrix();
    let qf: Vec<f64> = family
        .reference_measure()
        .iter()
        .map(rational_to_f64)
        .collect();
    let pf = p_target.to_f64();
    // dᵀa_x = log(p(x)/q(x)) on the support.
    let rows: Vec<Vec<f64>> = subset
        .iter()
        .map(|&x| a.column(x).iter().map(rational_to_f64).collect())
        .collect();
    let rhs: Vec<f64> = subset.iter().map(|&x| (pf[x] / qf[x]).ln()).collect();
    let d = solve_float(&rows, &rhs, 1e-9).ok_or(Error::LogSystemInconsistent)?;
    let c_dot: Vec<f64> = (0..a.cols())
        .map(|x| rational_to_f64(&dot(&cert.functional, &a.column(x))))
        .collect();
    let weights: Vec<f64> = (0..a.cols())
        .map(|x| {
            let d_dot: f64 = a
                .column(x)
                .iter()
                .zip(&d)
                .map(|(entry, dj)| rational_to_f64(entry) * dj)
                .sum();
            qf[x] * (mu * c_dot[x] + d_dot).exp()
        })
        .collect();
    let z: f64 = weights.iter().sum();
    Distribution::float(weights.into_iter().map(|w| w / z).collect(), 1e-9)
}
