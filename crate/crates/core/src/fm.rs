//! Exact Fourier–Motzkin elimination with certificate tracking.
//!
//! Systems are lists of inequalities `a·x ≤ rhs` over rationals. Variables
//! are eliminated in index order; every derived inequality carries the
//! nonnegative multipliers that produce it from the original rows, so an
//! infeasible system yields a Farkas certificate and a feasible one yields a
//! concrete point by back-substitution.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::linalg::dot;
use crate::rational::Rational;

#[derive(Debug, Clone)]
struct Ineq {
    coeffs: Vec<Rational>,
    rhs: Rational,
    /// Nonnegative multipliers over the original inequality rows.
    multipliers: Vec<Rational>,
}

impl Ineq {
    fn scaled(mut self, factor: &Rational) -> Ineq {
        debug_assert!(factor.is_positive());
        for c in &mut self.coeffs {
            *c *= factor;
        }
        self.rhs *= factor;
        for m in &mut self.multipliers {
            *m *= factor;
        }
        self
    }
}

/// Result of a feasibility run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FmOutcome {
    /// A point satisfying every inequality.
    Feasible(Vec<Rational>),
    /// Nonnegative multipliers `y` over the input rows with `yᵀA = 0` and
    /// `yᵀrhs < 0`.
    Infeasible(Vec<Rational>),
}

/// Decides feasibility of `{ x : coeffs·x ≤ rhs }` exactly.
pub fn solve_inequalities(system: &[(Vec<Rational>, Rational)]) -> FmOutcome {
    let nvars = system.first().map_or(0, |(c, _)| c.len());
    debug_assert!(system.iter().all(|(c, _)| c.len() == nvars));
    let nrows = system.len();
    let mut current: Vec<Ineq> = system
        .iter()
        .enumerate()
        .map(|(i, (coeffs, rhs))| {
            let mut multipliers = vec![Rational::zero(); nrows];
            multipliers[i] = Rational::from_integer(1.into());
            Ineq {
                coeffs: coeffs.clone(),
                rhs: rhs.clone(),
                multipliers,
            }
        })
        .collect();

    // Bounding rows kept per eliminated variable for back-substitution.
    let mut stages: Vec<(Vec<Ineq>, Vec<Ineq>)> = Vec::with_capacity(nvars);
    for var in 0..nvars {
        match prune(std::mem::take(&mut current), var) {
            Ok(pruned) => current = pruned,
            Err(witness) => return FmOutcome::Infeasible(witness),
        }
        let mut lower = Vec::new(); // negative coefficient on `var`
        let mut upper = Vec::new(); // positive coefficient on `var`
        let mut rest = Vec::new();
        for ineq in current.drain(..) {
            if ineq.coeffs[var].is_positive() {
                let factor = ineq.coeffs[var].clone().recip();
                upper.push(ineq.scaled(&factor));
            } else if ineq.coeffs[var].is_negative() {
                let factor = (-ineq.coeffs[var].clone()).recip();
                lower.push(ineq.scaled(&factor));
            } else {
                rest.push(ineq);
            }
        }
        for lo in &lower {
            for up in &upper {
                let coeffs: Vec<Rational> = lo
                    .coeffs
                    .iter()
                    .zip(&up.coeffs)
                    .map(|(a, b)| a + b)
                    .collect();
                let rhs = lo.rhs.clone() + up.rhs.clone();
                let multipliers: Vec<Rational> = lo
                    .multipliers
                    .iter()
                    .zip(&up.multipliers)
                    .map(|(a, b)| a + b)
                    .collect();
                rest.push(Ineq {
                    coeffs,
                    rhs,
                    multipliers,
                });
            }
        }
        stages.push((lower, upper));
        current = rest;
    }
    // All variables eliminated: every remaining row reads 0 ≤ rhs.
    for ineq in &current {
        if ineq.rhs.is_negative() {
            return FmOutcome::Infeasible(ineq.multipliers.clone());
        }
    }
    // Back-substitute in reverse elimination order.
    let mut point = vec![Rational::zero(); nvars];
    for var in (0..nvars).rev() {
        let (lower, upper) = &stages[var];
        let eval_rest = |ineq: &Ineq| -> Rational {
            // Bound on x_var given later variables (earlier ones have zero
            // coefficient at this stage).
            let mut acc = ineq.rhs.clone();
            for (coeff, value) in ineq.coeffs[var + 1..].iter().zip(&point[var + 1..]) {
                acc -= coeff.clone() * value.clone();
            }
            acc
        };
        let max_lower = lower.iter().map(|i| -eval_rest(i)).max();
        let min_upper = upper.iter().map(&eval_rest).min();
        point[var] = match (max_lower, min_upper) {
            (Some(lo), Some(up)) => {
                debug_assert!(lo <= up);
                lo
            }
            (Some(lo), None) => lo,
            (None, Some(up)) => up,
            (None, None) => Rational::zero(),
        };
    }
    debug_assert!(system
        .iter()
        .all(|(coeffs, rhs)| dot(coeffs, &point).le(rhs)));
    FmOutcome::Feasible(point)
}

/// Normalizes rows, drops dominated duplicates and trivial rows, and
/// reports an immediate contradiction `0 ≤ negative` when present.
fn prune(ineqs: Vec<Ineq>, from_var: usize) -> Result<Vec<Ineq>, Vec<Rational>> {
    let mut best: BTreeMap<Vec<Rational>, Ineq> = BTreeMap::new();
    for ineq in ineqs {
        if ineq.coeffs[from_var..].iter().all(|c| c.is_zero()) {
            if ineq.rhs.is_negative() {
                return Err(ineq.multipliers);
            }
            continue;
        }
        let scale = ineq.coeffs[from_var..]
            .iter()
            .find(|c| !c.is_zero())
            .expect("nonzero row")
            .abs()
            .recip();
        let normalized = ineq.scaled(&scale);
        let key = normalized.coeffs.clone();
        match best.get(&key) {
            Some(existing) if existing.rhs <= normalized.rhs => {}
            _ => {
                best.insert(key, normalized);
            }
        }
    }
    Ok(best.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn rat(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn rats(xs: &[i64]) -> Vec<Rational> {
        xs.iter()
            .map(|&x| Rational::from_integer(x.into()))
            .collect()
    }

    #[test]
    fn feasible_box() {
        // 0 ≤ x ≤ 1, 0 ≤ y ≤ 1.
        let system = vec![
            (rats(&[1, 0]), rat("1")),
            (rats(&[-1, 0]), rat("0")),
            (rats(&[0, 1]), rat("1")),
            (rats(&[0, -1]), rat("0")),
        ];
        match solve_inequalities(&system) {
            FmOutcome::Feasible(p) => {
                for (coeffs, rhs) in &system {
                    assert!(dot(coeffs, &p).le(rhs));
                }
            }
            FmOutcome::Infeasible(_) => panic!("box is feasible"),
        }
    }

    #[test]
    fn infeasible_with_valid_certificate() {
        // x ≤ -1 and -x ≤ 0 (x ≥ 0).
        let system = vec![(rats(&[1]), rat("-1")), (rats(&[-1]), rat("0"))];
        match solve_inequalities(&system) {
            FmOutcome::Infeasible(y) => {
                assert!(y.iter().all(|v| !v.is_negative()));
                let combo = y[0].clone() * rat("1") + y[1].clone() * rat("-1");
                assert!(combo.is_zero());
                let rhs = y[0].clone() * rat("-1") + y[1].clone() * rat("0");
                assert!(rhs.is_negative());
            }
            FmOutcome::Feasible(_) => panic!("system is infeasible"),
        }
    }

    #[test]
    fn empty_system_is_feasible() {
        assert_eq!(solve_inequalities(&[]), FmOutcome::Feasible(vec![]));
    }

    #[test]
    fn unbounded_directions_pick_deterministic_point() {
        // x ≥ 2 only.
        let system = vec![(rats(&[-1]), rat("-2"))];
        match solve_inequalities(&system) {
            FmOutcome::Feasible(p) => assert_eq!(p, vec![rat("2")]),
            FmOutcome::Infeasible(_) => panic!("feasible"),
        }
    }
}
