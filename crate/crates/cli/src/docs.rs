//! Structured output documents: a serde model rendered either as JSON or as
//! plain text carrying the same information. Ground-set indices are 1-based
//! in all output.

use serde::{Deserialize, Serialize};

use omfam_core::expfam::{MembershipReport, SideValue};
use omfam_core::linalg::Matrix;
use omfam_core::matroid::{CircuitVector, OrientedMatroid, SignedSubset};
use omfam_core::rational::Rational;
use omfam_core::supports::{FacialOutcome, SupportFamily};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedSetDoc {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
}

impl SignedSetDoc {
    pub fn from_signed(s: &SignedSubset) -> SignedSetDoc {
        SignedSetDoc {
            plus: s.plus().iter().map(|i| i + 1).collect(),
            minus: s.minus().iter().map(|i| i + 1).collect(),
        }
    }

    fn render(&self) -> String {
        let join = |v: &[usize]| {
            v.iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("+{{{}}} -{{{}}}", join(&self.plus), join(&self.minus))
    }
}

fn circuit_entries(c: &CircuitVector) -> Vec<String> {
    c.entries().iter().map(|e| e.to_string()).collect()
}

fn matrix_entries(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| x.to_string()).collect())
        .collect()
}

fn signed_docs(om: &OrientedMatroid) -> Vec<SignedSetDoc> {
    om.signed_circuits()
        .iter()
        .map(SignedSetDoc::from_signed)
        .collect()
}

/// The equation `p^{lhs} q^{rhs} = p^{rhs} q^{lhs}` of a circuit, with
/// `lhs = c⁺` and `rhs = c⁻` as exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationDoc {
    pub lhs_exponents: Vec<String>,
    pub rhs_exponents: Vec<String>,
}

impl EquationDoc {
    fn render(&self) -> String {
        let monomial = |p_exps: &[String], q_exps: &[String]| -> String {
            let mut factors = Vec::new();
            for (i, e) in p_exps.iter().enumerate() {
                match e.as_str() {
                    "0" => {}
                    "1" => factors.push(format!("p{}", i + 1)),
                    _ => factors.push(format!("p{}^{e}", i + 1)),
                }
            }
            for (i, e) in q_exps.iter().enumerate() {
                match e.as_str() {
                    "0" => {}
                    "1" => factors.push(format!("q{}", i + 1)),
                    _ => factors.push(format!("q{}^{e}", i + 1)),
                }
            }
            if factors.is_empty() {
                "1".into()
            } else {
                factors.join(" ")
            }
        };
        format!(
            "{} = {}",
            monomial(&self.lhs_exponents, &self.rhs_exponents),
            monomial(&self.rhs_exponents, &self.lhs_exponents)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitsDoc {
    pub schema_version: u32,
    pub command: String,
    pub ground_size: usize,
    pub rank: usize,
    pub circuit_count: usize,
    /// C(m, r+2) as a decimal string.
    pub circuit_bound: String,
    pub circuits: Vec<Vec<String>>,
    pub signed_circuits: Vec<SignedSetDoc>,
    /// Implicit equations of the closure, aligned with `circuits`.
    pub equations: Vec<EquationDoc>,
}

impl CircuitsDoc {
    pub fn build(
        a: &Matrix,
        circuits: &[CircuitVector],
        om: &OrientedMatroid,
        bound: u128,
    ) -> Self {
        CircuitsDoc {
            schema_version: SCHEMA_VERSION,
            command: "circuits".into(),
            ground_size: a.cols(),
            rank: a.rank(),
            circuit_count: circuits.len(),
            circuit_bound: bound.to_string(),
            circuits: circuits.iter().map(circuit_entries).collect(),
            signed_circuits: signed_docs(om),
            equations: circuits
                .iter()
                .map(|c| EquationDoc {
                    lhs_exponents: c.positive_part().iter().map(|e| e.to_string()).collect(),
                    rhs_exponents: c.negative_part().iter().map(|e| e.to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("ground size: {}\n", self.ground_size));
        out.push_str(&format!("rank: {}\n", self.rank));
        out.push_str(&format!(
            "circuits: {} (bound {})\n",
            self.circuit_count, self.circuit_bound
        ));
        for (c, eq) in self.circuits.iter().zip(&self.equations) {
            out.push_str(&format!("  ({})  {}\n", c.join(", "), eq.render()));
        }
        out.push_str(&format!(
            "signed circuits: {}\n",
            self.signed_circuits.len()
        ));
        for s in &self.signed_circuits {
            out.push_str(&format!("  {}\n", s.render()));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportSetDoc {
    pub indices: Vec<usize>,
    pub cardinality: usize,
    pub dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportsDoc {
    pub schema_version: u32,
    pub command: String,
    pub ground_size: usize,
    pub augmented: bool,
    pub support_count: usize,
    pub supports: Vec<SupportSetDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_vector: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_vector: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub neighborliness: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force_check: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset_query: Option<SubsetQueryDoc>,
}

impl SupportsDoc {
    pub fn build(
        family: &SupportFamily,
        augmented: bool,
        fvector: Option<(Vec<u64>, Vec<u64>, usize)>,
        brute_force_check: Option<bool>,
        subset_query: Option<SubsetQueryDoc>,
    ) -> Self {
        let (s_vector, f_vector, neighborliness) = match fvector {
            Some((s, f, n)) => (Some(s), Some(f), Some(n)),
            None => (None, None, None),
        };
        SupportsDoc {
            schema_version: SCHEMA_VERSION,
            command: "supports".into(),
            ground_size: family.ground_size,
            augmented,
            support_count: family.len(),
            supports: family
                .sets
                .iter()
                .map(|f| SupportSetDoc {
                    indices: f.indices.iter().map(|i| i + 1).collect(),
                    cardinality: f.cardinality(),
                    dimension: f.dimension,
                })
                .collect(),
            s_vector,
            f_vector,
            neighborliness,
            brute_force_check,
            subset_query,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("ground size: {}\n", self.ground_size));
        out.push_str(&format!("augmented: {}\n", self.augmented));
        out.push_str(&format!("support sets: {}\n", self.support_count));
        for s in &self.supports {
            let idx: Vec<String> = s.indices.iter().map(|i| i.to_string()).collect();
            out.push_str(&format!(
                "  {{{}}}  cardinality {}  dimension {}\n",
                idx.join(","),
                s.cardinality,
                s.dimension
            ));
        }
        if let Some(s) = &self.s_vector {
            out.push_str(&format!("s-vector: {s:?}\n"));
        }
        if let Some(f) = &self.f_vector {
            out.push_str(&format!("f-vector: {f:?}\n"));
        }
        if let Some(n) = self.neighborliness {
            out.push_str(&format!("neighborliness: {n}\n"));
        }
        if let Some(ok) = self.brute_force_check {
            out.push_str(&format!(
                "brute-force check: {}\n",
                if ok { "ok" } else { "MISMATCH" }
            ));
        }
        if let Some(query) = &self.subset_query {
            out.push_str(&query.render());
        }
        out
    }
}

/// Verdict and exact evidence for one queried subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetQueryDoc {
    pub indices: Vec<usize>,
    pub facial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub farkas_witness: Option<WitnessDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub eq_plus: Vec<String>,
    pub eq_minus: Vec<String>,
    pub ineq: Vec<String>,
}

impl SubsetQueryDoc {
    pub fn build(
        indices: &std::collections::BTreeSet<usize>,
        facial: bool,
        outcome: &FacialOutcome,
    ) -> SubsetQueryDoc {
        let rationals =
            |v: &[Rational]| -> Vec<String> { v.iter().map(|x| x.to_string()).collect() };
        let (certificate, farkas_witness) = match outcome {
            FacialOutcome::Certificate(cert) => (Some(rationals(&cert.functional)), None),
            FacialOutcome::Witness(w) => (
                None,
                Some(WitnessDoc {
                    eq_plus: rationals(&w.eq_plus),
                    eq_minus: rationals(&w.eq_minus),
                    ineq: rationals(&w.ineq),
                }),
            ),
        };
        SubsetQueryDoc {
            indices: indices.iter().map(|i| i + 1).collect(),
            facial,
            certificate,
            farkas_witness,
        }
    }

    fn render(&self) -> String {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        let mut out = format!(
            "subset {{{}}}: {}\n",
            idx.join(","),
            if self.facial { "facial" } else { "not facial" }
        );
        if let Some(c) = &self.certificate {
            out.push_str(&format!("  certificate: ({})\n", c.join(", ")));
        }
        if let Some(w) = &self.farkas_witness {
            out.push_str(&format!(
                "  farkas witness: eq+ ({}) eq- ({}) ineq ({})\n",
                w.eq_plus.join(", "),
                w.eq_minus.join(", "),
                w.ineq.join(", ")
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationDoc {
    pub circuit: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberDoc {
    pub schema_version: u32,
    pub command: String,
    pub mode: String,
    pub member: bool,
    pub violations: Vec<ViolationDoc>,
}

impl MemberDoc {
    pub fn build(report: &MembershipReport, mode: &str) -> Self {
        MemberDoc {
            schema_version: SCHEMA_VERSION,
            command: "member".into(),
            mode: mode.into(),
            member: report.member,
            violations: report
                .violations
                .iter()
                .map(|v| ViolationDoc {
                    circuit: circuit_entries(&v.circuit),
                    lhs: side_value(&v.lhs),
                    rhs: side_value(&v.rhs),
                })
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("mode: {}\n", self.mode));
        out.push_str(&format!("member: {}\n", self.member));
        out.push_str(&format!("violations: {}\n", self.violations.len()));
        for v in &self.violations {
            out.push_str(&format!(
                "  circuit ({}): lhs {}, rhs {}\n",
                v.circuit.join(", "),
                v.lhs,
                v.rhs
            ));
        }
        out
    }
}

fn side_value(v: &SideValue) -> String {
    match v {
        SideValue::Exact(r) => r.to_string(),
        SideValue::Float(x) => format!("{x:e}"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualDoc {
    pub schema_version: u32,
    pub command: String,
    pub ground_size: usize,
    pub dual_rows: usize,
    pub dual_matrix: Vec<Vec<String>>,
    pub cocircuits: Vec<SignedSetDoc>,
    pub circuits_of_dual_equal_cocircuits: bool,
}

impl DualDoc {
    pub fn build(a: &Matrix, dual: &Matrix, co: &OrientedMatroid, verified: bool) -> Self {
        DualDoc {
            schema_version: SCHEMA_VERSION,
            command: "dual".into(),
            ground_size: a.cols(),
            dual_rows: dual.rows(),
            dual_matrix: matrix_entries(dual),
            cocircuits: signed_docs(co),
            circuits_of_dual_equal_cocircuits: verified,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("ground size: {}\n", self.ground_size));
        out.push_str(&format!(
            "dual matrix: {} x {}\n",
            self.dual_rows, self.ground_size
        ));
        for row in &self.dual_matrix {
            out.push_str(&format!("  {}\n", row.join(" ")));
        }
        out.push_str(&format!("cocircuits: {}\n", self.cocircuits.len()));
        for c in &self.cocircuits {
            out.push_str(&format!("  {}\n", c.render()));
        }
        out.push_str(&format!(
            "circuits(dual) == cocircuits(primal): {}\n",
            self.circuits_of_dual_equal_cocircuits
        ));
        out
    }
}
