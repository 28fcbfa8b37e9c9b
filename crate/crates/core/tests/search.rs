use num_complex::Complex64;

use qsearch::bench::{self, BenchOptions, Method, ReportFormat};
use qsearch::grover::{self, GroverPlan};
use qsearch::magic::{self, DomainDescriptor};
use qsearch::statevector::{Control, Gate, InitMode, StateVector};

/// H^⊗q · (2|0⟩⟨0| − I) · H^⊗q built from gates. The X-conjugated MCZ gives I − 2|0⟩⟨0|,
/// so the gate version differs from the reflection by a global −1.
fn gate_diffusion(s: &mut StateVector) {
    let q = s.num_qubits();
    let hs: Vec<Gate> = (0..q).map(Gate::h).collect();
    let xs: Vec<Gate> = (0..q).map(Gate::x).collect();
    s.apply_gates(&hs).unwrap();
    s.apply_gates(&xs).unwrap();
    if q == 1 {
        s.apply_gate(&Gate::z(0)).unwrap();
    } else {
        s.apply_gate(&Gate::mcz((0..q - 1).map(Control::on).collect::<Vec<_>>(), q - 1)).unwrap();
    }
    s.apply_gates(&xs).unwrap();
    s.apply_gates(&hs).unwrap();
}

fn random_state(q: usize, seed: u64) -> StateVector {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<Complex64> =
        (0..1 << q).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(raw.into_iter().map(|a| a / norm).collect()).unwrap()
}

#[test]
fn padded_reflection_matches_gate_diffusion() {
    for q in 1..=10 {
        for seed in 0..3 {
            let mut mean = random_state(q, seed);
            let mut gates = mean.clone();
            mean.reflect_about_initial(InitMode::Padded).unwrap();
            gate_diffusion(&mut gates);
            for (a, b) in mean.amplitudes().iter().zip(gates.amplitudes()) {
                assert!((a + b).norm() < 1e-10, "q={q}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn exact_reflection_fixes_the_initial_state() {
    for n in [3usize, 5, 9, 40] {
        let mut s = StateVector::init(6, InitMode::ExactDomain(n)).unwrap();
        let before = s.clone();
        s.reflect_about_initial(InitMode::ExactDomain(n)).unwrap();
        for (a, b) in s.amplitudes().iter().zip(before.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}

fn toy_domain(size: u128) -> DomainDescriptor {
    DomainDescriptor::custom(size, "toy", |i| vec![i as u32], |_| true).unwrap()
}

#[test]
fn simulated_trace_follows_closed_form() {
    for (n, m) in [(8u64, 1u64), (64, 1), (64, 3), (100, 7), (1000, 1), (37, 2)] {
        let domain = toy_domain(n as u128);
        let plan = GroverPlan::new(n, m, 0).unwrap().with_iterations(40);
        let trace = grover::amplitude_trace(&domain, |c| (c[0] as u64) < m, &plan).unwrap();
        assert_eq!(trace.len(), 41);
        for (i, p) in trace {
            let want = grover::success_probability(n, m, i).unwrap();
            assert!((p - want).abs() < 1e-9, "N={n} M={m} i={i}: {p} vs {want}");
        }
    }
}

#[test]
fn padded_trace_uses_register_size() {
    let domain = toy_domain(20);
    let plan = GroverPlan::new(20, 1, 0).unwrap().padded(domain.qubit_width()).unwrap();
    assert_eq!(plan.iterations, grover::optimal_iterations(32, 1).unwrap());
    let trace = grover::amplitude_trace(&domain, |c| c[0] == 7, &plan).unwrap();
    for (i, p) in trace {
        assert!((p - grover::success_probability(32, 1, i).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn run_is_reproducible() {
    let domain = toy_domain(256);
    let plan = GroverPlan::new(256, 1, 99).unwrap();
    let go = || grover::run(&domain, |c| c[0] == 200, &plan, |c| c[0] == 200, 3).unwrap();
    let (a, b) = (go(), go());
    assert_eq!(a, b);
    assert!(a.valid);
    assert_eq!(a.candidate, Some(vec![200]));
    assert_eq!(a.oracle_queries, plan.iterations * (a.retries as u64 + 1));
}

#[test]
fn classical_searches_agree() {
    for n in 1..=3 {
        let (brute, _) = magic::brute_force(n, false).unwrap();
        let (back, stats) = magic::backtracking(n, false).unwrap();
        let mut a: Vec<_> = brute.iter().map(|g| g.cells().to_vec()).collect();
        let mut b: Vec<_> = back.iter().map(|g| g.cells().to_vec()).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b, "n = {n}");
        assert_eq!(stats.solutions_found as usize, b.len());
    }
    assert_eq!(magic::backtracking(3, false).unwrap().0.len(), 8);
    assert!(magic::backtracking(2, false).unwrap().0.is_empty());
}

#[test]
fn first_brute_force_hit_is_lexicographically_smallest() {
    let (found, stats) = magic::brute_force(3, true).unwrap();
    assert_eq!(found[0].cells(), &[2, 7, 6, 9, 5, 1, 4, 3, 8]);
    assert_eq!(stats.candidates_checked, 69_075);
}

#[test]
fn json_reports_round_trip() {
    let opts = BenchOptions { seed: 5, record_timings: false };
    let (brute, grover) = bench::bench_brute_vs_grover(3, &opts).unwrap();
    let text = bench::emit_report(&[brute.clone(), grover.clone()], ReportFormat::Json).unwrap();
    assert!(text.contains("\"schema\": \"qsearch-bench/1\""));
    assert_eq!(bench::parse_json_report(&text).unwrap(), vec![brute.clone(), grover.clone()]);

    assert_eq!(brute.method, Method::BruteForce);
    assert_eq!(brute.candidates_or_queries, 69_075);
    assert_eq!(brute.search_space_n, 362_880);
    assert_eq!(grover.marked_count, 8);
    assert!((grover.theoretical_queries_m1 - 602.395_218_6).abs() < 1e-3);
    assert!((grover.scaled_queries_m1 - 473.120_1).abs() < 1e-3);
    assert!(grover.solution.as_deref().is_some_and(|s| magic::is_magic_cells(3, s)));
    assert_eq!(
        text,
        bench::emit_report(&[brute, grover], ReportFormat::Json).unwrap(),
        "emission is deterministic"
    );
}

#[test]
fn markdown_tables_have_expected_headers() {
    let opts = BenchOptions { seed: 0, record_timings: false };
    let (brute, grover) = bench::bench_brute_vs_grover(3, &opts).unwrap();
    let md = bench::emit_report(&[brute, grover], ReportFormat::Markdown).unwrap();
    let header = md.lines().next().unwrap();
    assert!(header.contains("Aspect"));
    assert!(header.contains("Brute-Force Search"));
    assert!(header.contains("Grover's Algorithm"));
    assert!(md.contains("362,880"));

    let (back, grover) = bench::bench_backtrack_vs_grover(3, &opts).unwrap();
    let md = bench::emit_report(&[back, grover], ReportFormat::Markdown).unwrap();
    let header = md.lines().next().unwrap();
    assert!(header.contains("Feature"));
    assert!(header.contains("Classical Backtracking"));
}

#[test]
fn csv_has_one_row_per_report() {
    let opts = BenchOptions { seed: 0, record_timings: false };
    let (a, b) = bench::bench_backtrack_vs_grover(3, &opts).unwrap();
    let csv = bench::emit_report(&[a, b], ReportFormat::Csv).unwrap();
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("n,method,"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn no_solution_bench_refuses_grover() {
    let opts = BenchOptions::default();
    let (classical, grover) = bench::bench_brute_vs_grover(2, &opts).unwrap();
    assert_eq!(classical.solutions_found, 0);
    assert!(grover.solution.is_none());
    assert!(grover.notes.iter().any(|n| n.contains("M = 0")));
}
