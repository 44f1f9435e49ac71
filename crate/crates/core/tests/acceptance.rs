//! Acceptance suite: one test per release criterion, each printing a
//! PASS line (visible with `cargo test --test acceptance -- --nocapture`).

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use num_traits::{Signed, Zero};
use rand::Rng;

use common::*;
use omfam_core::expfam::{
    boundary_sequence, implicit_equations, in_closure, parametrize, Distribution, ExponentialFamily,
};
use omfam_core::linalg::Matrix;
use omfam_core::matroid::{
    axioms_check, circuit_count_bound, cocircuits, conformal_decomposition, enumerate_circuits,
    signed_circuits, CircuitVector,
};
use omfam_core::models;
use omfam_core::rational::Rational;
use omfam_core::supports::{
    enumerate_supports, f_vector, facial_certificate, neighborliness, s_vector, uniform_on,
    FacialOutcome, SupportFamily,
};

fn circuit(xs: &[i64]) -> CircuitVector {
    CircuitVector::primitive_from_rational(&rats(xs))
}

/// Criterion 1: the four-state example is reproduced exactly for α ∈ {2, 3}:
/// canonical circuits, the three support sets, and rejection of the
/// boundary pretenders p_a = (0, a, 0, 1-a) with the violated circuits
/// reported. Runs in under a second.
///
/// For any 0 ≤ a < 1 the third coordinate of p_a is zero, so the circuit
/// with support {1,2,3} is satisfied (0 = 0); the violated pair is the
/// circuits (0,0,1,-1) and (1,α,0,-(1+α)).
#[test]
fn criterion_1_example1_reproduction() {
    let start = Instant::now();
    for alpha in [2i64, 3] {
        let a = example1(&alpha.to_string());
        let got = enumerate_circuits(&a);
        let expected = vec![
            circuit(&[0, 0, 1, -1]),
            circuit(&[1, alpha, -(1 + alpha), 0]),
            circuit(&[1, alpha, 0, -(1 + alpha)]),
        ];
        assert_eq!(got, expected, "circuits at alpha={alpha}");

        let family = enumerate_supports(&a);
        let sets: Vec<BTreeSet<usize>> = family.sets.iter().map(|f| f.indices.clone()).collect();
        assert_eq!(sets, vec![set(&[0]), set(&[1]), set(&[0, 1, 2, 3])]);

        let fam = ExponentialFamily::uniform(a).unwrap();
        for a_str in ["0", "1/4", "1/2"] {
            let av = rat(a_str);
            let p = Distribution::exact(vec![
                Rational::zero(),
                av.clone(),
                Rational::zero(),
                Rational::from_integer(1.into()) - av,
            ])
            .unwrap();
            let report = in_closure(&fam, &p).unwrap();
            assert!(!report.member, "p_a must be rejected at a={a_str}");
            let violated: Vec<CircuitVector> = report
                .violations
                .iter()
                .map(|v| v.circuit.clone())
                .collect();
            let expected_violated = vec![
                circuit(&[0, 0, 1, -1]),
                circuit(&[1, alpha, 0, -(1 + alpha)]),
            ];
            assert_eq!(
                violated, expected_violated,
                "violated circuits at a={a_str}"
            );
            for v in &report.violations {
                assert_ne!(format!("{}", v.lhs), format!("{}", v.rhs));
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1s");
    println!("ACCEPTANCE 1 (example1 reproduction): PASS in {elapsed:?}");
}

/// Criterion 2: for at least 100 random integer matrices (d ≤ 4, m ≤ 8)
/// with random positive rational q and t, the parametrized point satisfies
/// every implicit equation with exact equality. Runs in under 30 seconds.
#[test]
fn criterion_2_theorem1_identity_suite() {
    let start = Instant::now();
    let mut rng = rng(2);
    let mut checked = 0usize;
    while checked < 100 {
        let a = random_int_matrix(&mut rng, 4, 8);
        let q: Vec<Rational> = (0..a.cols())
            .map(|_| random_positive_rational(&mut rng))
            .collect();
        let fam = ExponentialFamily::new(a, q).unwrap();
        let t: Vec<Rational> = (0..fam.matrix().rows())
            .map(|_| random_positive_rational(&mut rng))
            .collect();
        let p = parametrize(&fam, &t).unwrap();
        let pv = match &p {
            Distribution::Exact(v) => v.clone(),
            Distribution::Float(_) => unreachable!("exact parametrization"),
        };
        let equations = implicit_equations(&fam);
        for eq in &equations {
            let (lhs, rhs) = eq.evaluate_exact(&pv, fam.reference_measure());
            assert_eq!(lhs, rhs, "equation violated for circuit {}", eq.circuit);
        }
        checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}, budget 30s");
    println!("ACCEPTANCE 2 (theorem-1 identity on {checked} random families): PASS in {elapsed:?}");
}

/// Criterion 3: on every corpus matrix with m ≤ 10, the circuit test, the
/// existence of an exact Farkas certificate, and closure membership of the
/// normalized indicator agree on every nonempty subset. Zero disagreements.
#[test]
fn criterion_3_facial_test_agreement() {
    let start = Instant::now();
    let mut subsets_checked = 0usize;
    for (name, a) in corpus() {
        if a.cols() > 10 {
            continue;
        }
        let (augmented, _) = a.with_ones_row_if_missing();
        let om = signed_circuits(&augmented);
        let fam = ExponentialFamily::uniform(a.clone()).unwrap();
        let m = augmented.cols();
        for mask in 1u64..(1u64 << m) {
            let subset: BTreeSet<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            let by_circuits = omfam_core::supports::is_facial_in(&om, &subset);
            let by_certificate = match facial_certificate(&augmented, &subset).unwrap() {
                FacialOutcome::Certificate(_) => true,
                FacialOutcome::Witness(w) => {
                    assert!(w.verify(&augmented, &subset), "invalid witness on {name}");
                    false
                }
            };
            let (_, report) = uniform_on(&subset, &fam).unwrap();
            assert_eq!(
                by_circuits, by_certificate,
                "circuit test vs certificate disagree on {name}, subset {subset:?}"
            );
            assert_eq!(
                by_circuits, report.member,
                "circuit test vs uniform membership disagree on {name}, subset {subset:?}"
            );
            subsets_checked += 1;
        }
    }
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE 3 (three-way facial agreement on {subsets_checked} subsets): PASS in {elapsed:?}"
    );
}

/// Criterion 4: circuit enumeration matches the brute-force subset oracle on
/// every corpus matrix with m ≤ 7, and the count bound C(m, r+2) holds on
/// the whole corpus.
#[test]
fn criterion_4_circuit_oracle() {
    let start = Instant::now();
    for (name, a) in corpus() {
        if a.cols() <= 7 {
            let fast = enumerate_circuits(&a);
            let slow = brute_force_circuits(&a);
            assert_eq!(fast, slow, "oracle mismatch on {name}");
        }
        let count = enumerate_circuits(&a).len() as u128;
        let bound = circuit_count_bound(a.cols(), a.rank());
        assert!(
            count <= bound,
            "bound violated on {name}: {count} > {bound}"
        );
    }
    let elapsed = start.elapsed();
    println!("ACCEPTANCE 4 (circuit oracle + count bound): PASS in {elapsed:?}");
}

/// Criterion 5: parity models for n ∈ {2, 3}: the unique circuit is the
/// parity vector, s_k matches the closed form for 1 ≤ k < 2^n (s_4 = 68 at
/// n = 3), neighborliness is 2^{n-1} - 1, and the f-vector equals the
/// cyclic-polytope f-vector C(2^n - 2, 2^n). The n = 3 run stays under 10
/// seconds.
#[test]
fn criterion_5_parity_models() {
    for n in [2usize, 3] {
        let start = Instant::now();
        let a = models::parity_model_matrix(n).unwrap();
        let circuits = enumerate_circuits(&a);
        assert_eq!(circuits.len(), 1, "parity kernel is one-dimensional");
        let parity = circuit(&models::parity_vector(n));
        assert_eq!(circuits[0], parity.clone().canonicalized());

        let family = enumerate_supports(&a);
        let s = s_vector(&family);
        let states = 1usize << n;
        for k in 1..states {
            assert_eq!(
                u128::from(s[k - 1]),
                models::parity_s_formula(n, k).unwrap(),
                "s_{k} mismatch at n={n}"
            );
        }
        if n == 3 {
            assert_eq!(s[3], 68);
        }
        assert_eq!(neighborliness(&family), (1 << (n - 1)) - 1);

        let f = f_vector(&family);
        let cyclic = models::cyclic_f_vector(states - 2, states).unwrap();
        assert_eq!(f, cyclic, "face lattice sizes differ from C(2^n-2, 2^n)");

        let elapsed = start.elapsed();
        if n == 3 {
            assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, budget 10s");
        }
        println!("ACCEPTANCE 5 (parity model n={n}): PASS in {elapsed:?}");
    }
}

/// Criterion 6: Gale's evenness condition agrees with matrix-based face
/// enumeration for C(2,4), C(2,5), C(3,5), C(4,6), and the Upper Bound
/// inequality f_k(P) ≤ f_k(C(d, n)) holds entrywise across the corpus.
#[test]
fn criterion_6_cyclic_polytopes() {
    let start = Instant::now();
    for (d, n) in [(2usize, 4usize), (2, 5), (3, 5), (4, 6)] {
        let facets: BTreeSet<BTreeSet<usize>> = models::gale_evenness_facets(d, n)
            .unwrap()
            .into_iter()
            .collect();
        let spec = models::CyclicPolytopeSpec::with_default_parameters(d, n).unwrap();
        let family = enumerate_supports(&models::cyclic_matrix(&spec));
        let maximal_proper = maximal_proper_faces(&family);
        assert_eq!(maximal_proper, facets, "facet mismatch for C({d},{n})");
    }
    // Upper bound across the corpus: compare against the cyclic polytope
    // with the same dimension and vertex count.
    for (name, a) in corpus() {
        let family = enumerate_supports(&a);
        let f = f_vector(&family);
        let dim = f.len() - 1;
        let vertices = f[0] as usize;
        if dim < 1 || vertices <= dim {
            continue;
        }
        let cyclic = models::cyclic_f_vector(dim, vertices).unwrap();
        assert_eq!(f.len(), cyclic.len());
        for (k, (got, bound)) in f.iter().zip(&cyclic).enumerate() {
            assert!(
                got <= bound,
                "upper bound violated on {name}: f_{k} = {got} > {bound}"
            );
        }
    }
    let elapsed = start.elapsed();
    println!("ACCEPTANCE 6 (cyclic polytopes + upper bound): PASS in {elapsed:?}");
}

fn maximal_proper_faces(family: &SupportFamily) -> BTreeSet<BTreeSet<usize>> {
    let full: BTreeSet<usize> = (0..family.ground_size).collect();
    let proper: Vec<&BTreeSet<usize>> = family
        .sets
        .iter()
        .map(|f| &f.indices)
        .filter(|s| **s != full)
        .collect();
    proper
        .iter()
        .filter(|s| !proper.iter().any(|t| t != *s && s.is_subset(t)))
        .map(|s| (*s).clone())
        .collect()
}

/// Criterion 7: circuits of the Gale dual equal the cocircuits for every
/// corpus matrix, the cocircuit sign vectors match an independent
/// minimal-row-span-support oracle for m ≤ 7, and both matroids pass the
/// axiom check.
#[test]
fn criterion_7_duality() {
    let start = Instant::now();
    for (name, a) in corpus() {
        let dual = a.orthogonal_complement_basis();
        let co = cocircuits(&a);
        assert_eq!(
            signed_circuits(&dual),
            co,
            "dual circuits mismatch on {name}"
        );
        assert!(
            axioms_check(&signed_circuits(&a)).is_valid(),
            "axioms fail on {name}"
        );
        assert!(axioms_check(&co).is_valid(), "dual axioms fail on {name}");
        if a.cols() <= 7 {
            let expected = brute_force_cocircuit_signs(&a);
            let got: BTreeSet<Vec<i8>> = co
                .signed_circuits()
                .iter()
                .map(|c| c.sign_vector())
                .collect();
            assert_eq!(got, expected, "cocircuit oracle mismatch on {name}");
        }
    }
    let elapsed = start.elapsed();
    println!("ACCEPTANCE 7 (duality + axioms): PASS in {elapsed:?}");
}

/// Criterion 8: boundary sequences converge monotonically. For the
/// four-state example with S = {1} and the moment matrix with j = 2, the
/// L1 distance to the target decreases strictly over μ = -1, .., -10 and
/// drops below 1e-3 by μ = -10.
#[test]
fn criterion_8_boundary_convergence() {
    let start = Instant::now();
    let cases: Vec<(&str, ExponentialFamily, BTreeSet<usize>, Distribution)> = vec![
        (
            "example1 S={1}",
            ExponentialFamily::uniform(example1("2")).unwrap(),
            set(&[0]),
            Distribution::exact(rats(&[1, 0, 0, 0])).unwrap(),
        ),
        (
            "moment4 j=2",
            ExponentialFamily::uniform(models::moment_matrix(4).unwrap()).unwrap(),
            set(&[1]),
            Distribution::exact(rats(&[0, 1, 0, 0])).unwrap(),
        ),
    ];
    for (name, fam, subset, target) in cases {
        let mut last = f64::INFINITY;
        let mut final_distance = f64::INFINITY;
        for step in 1..=10 {
            let mu = -(step as f64);
            let p = boundary_sequence(&fam, &subset, &target, mu).unwrap();
            let d = p.l1_distance(&target);
            assert!(
                d < last,
                "{name}: distance not strictly decreasing at mu={mu}: {d} >= {last}"
            );
            last = d;
            final_distance = d;
        }
        assert!(
            final_distance < 1e-3,
            "{name}: distance {final_distance} at mu=-10 exceeds 1e-3"
        );
    }
    let elapsed = start.elapsed();
    println!("ACCEPTANCE 8 (boundary convergence): PASS in {elapsed:?}");
}

/// Criterion 9: conformal decomposition reconstructs 200 random kernel
/// vectors exactly, every coefficient positive and every part
/// sign-consistent with its input.
#[test]
fn criterion_9_conformal_decomposition() {
    let start = Instant::now();
    let mut rng = rng(9);
    let with_kernel: Vec<(String, Matrix)> = corpus()
        .into_iter()
        .filter(|(_, a)| !a.kernel_basis().is_empty())
        .collect();
    let mut checked = 0usize;
    let mut index = 0usize;
    while checked < 200 {
        let (name, a) = &with_kernel[index % with_kernel.len()];
        index += 1;
        let Some(n) = random_kernel_vector(&mut rng, a) else {
            continue;
        };
        let parts = conformal_decomposition(a, &n).unwrap();
        let mut sum = vec![Rational::zero(); a.cols()];
        for (coeff, c) in &parts {
            assert!(coeff.is_positive(), "nonpositive coefficient on {name}");
            assert!(
                c.is_sign_consistent_with(&n),
                "part {c} not sign-consistent on {name}"
            );
            for (slot, e) in sum.iter_mut().zip(c.entries()) {
                *slot += coeff * Rational::from_integer(e.clone());
            }
        }
        assert_eq!(sum, n, "reconstruction failed on {name}");
        assert_eq!(parts.is_empty(), n.iter().all(|x| x.is_zero()));
        checked += 1;
    }
    let elapsed = start.elapsed();
    println!("ACCEPTANCE 9 (conformal decomposition x{checked}): PASS in {elapsed:?}");
}

/// Smoke check used by the suite itself: every corpus matrix is well-formed.
#[test]
fn corpus_is_well_formed() {
    let list = corpus();
    assert!(list.len() >= 10);
    for (name, a) in &list {
        assert!(a.cols() >= 1, "{name} has no columns");
        let mut r = rng(0);
        let _ = r.gen_range(0..2);
    }
}
