//! Grover search over a [`DomainDescriptor`]: planning, the oracle/diffusion loop,
//! closed-form checks, and measure-then-verify with retries.

use std::f64::consts::FRAC_PI_4;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::magic::DomainDescriptor;
use crate::statevector::{InitMode, StateVector, MAX_QUBITS};
use crate::{Error, Result};

fn check_counts(n: u64, m: u64) -> Result<()> {
    if m < 1 || m > n {
        return Err(Error::Domain(format!(
            "marked count {m} must satisfy 1 ≤ M ≤ N = {n}"
        )));
    }
    Ok(())
}

/// `⌊(π/4)·√(N/M)⌋`, at least 1 whenever N > M and 0 when every state is marked.
pub fn optimal_iterations(n: u64, m: u64) -> Result<u64> {
    check_counts(n, m)?;
    if n == m {
        return Ok(0);
    }
    let k = (FRAC_PI_4 * (n as f64 / m as f64).sqrt()).floor() as u64;
    Ok(k.max(1))
}

/// `sin²((2k+1)·θ)` with `sin θ = √(M/N)`.
pub fn success_probability(n: u64, m: u64, k: u64) -> Result<f64> {
    check_counts(n, m)?;
    let theta = (m as f64 / n as f64).sqrt().asin();
    Ok(((2 * k + 1) as f64 * theta).sin().powi(2))
}

/// Parameters of one search: domain size N, marked count M, iterations k, preparation, seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroverPlan {
    pub domain_size: u64,
    pub marked_count: u64,
    pub iterations: u64,
    pub init: InitMode,
    pub seed: u64,
}

impl GroverPlan {
    /// Exact-domain plan with `k` chosen by [`optimal_iterations`].
    pub fn new(domain_size: u64, marked_count: u64, seed: u64) -> Result<Self> {
        let iterations = optimal_iterations(domain_size, marked_count)?;
        let n = usize::try_from(domain_size)
            .map_err(|_| Error::Capacity(format!("domain of {domain_size} states")))?;
        Ok(GroverPlan {
            domain_size,
            marked_count,
            iterations,
            init: InitMode::ExactDomain(n),
            seed,
        })
    }

    /// Uniform preparation over the whole register instead of the first N states.
    /// The iteration count is re-planned against `2^q`.
    pub fn padded(mut self, num_qubits: usize) -> Result<Self> {
        let dim = 1u64 << num_qubits;
        self.init = InitMode::Padded;
        self.iterations = optimal_iterations(dim, self.marked_count)?;
        Ok(self)
    }

    pub fn with_iterations(mut self, iterations: u64) -> Self {
        self.iterations = iterations;
        self
    }

    /// Effective number of states in the prepared superposition.
    pub fn effective_size(&self, num_qubits: usize) -> u64 {
        self.init.support(num_qubits) as u64
    }

    /// Closed-form probability of a marked outcome after `i` iterations.
    pub fn closed_form(&self, num_qubits: usize, i: u64) -> Result<f64> {
        success_probability(self.effective_size(num_qubits), self.marked_count, i)
    }
}

/// Outcome of [`run`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroverRunResult {
    /// Basis index measured on the final attempt.
    pub outcome_index: u64,
    /// Decoded candidate of the final measurement, when it lies inside the domain.
    pub candidate: Option<Vec<u32>>,
    pub valid: bool,
    pub oracle_queries: u64,
    pub retries: u32,
    pub iterations: u64,
    /// Exact probability mass on marked states just before measurement.
    pub final_marked_probability: f64,
    /// Number of basis states the oracle marks.
    pub marked_states: u64,
    /// Measured indices of the attempts that failed verification.
    pub failed_outcomes: Vec<u64>,
}

/// Oracle diagonal: `mask[i]` is true when basis index `i` decodes to a marked candidate.
struct MarkedSet {
    mask: Vec<bool>,
    count: u64,
}

impl MarkedSet {
    fn build(
        domain: &DomainDescriptor,
        marked: &impl Fn(&[u32]) -> bool,
        num_qubits: usize,
    ) -> Self {
        let size = domain.size() as usize;
        let mut mask = vec![false; 1 << num_qubits];
        for (i, slot) in mask.iter_mut().enumerate().take(size) {
            *slot = marked(&domain.decode_unchecked(i as u128));
        }
        let count = mask.iter().filter(|&&b| b).count() as u64;
        MarkedSet { mask, count }
    }

    fn contains(&self, i: usize) -> bool {
        self.mask[i]
    }
}

fn check_plan(domain: &DomainDescriptor, plan: &GroverPlan) -> Result<usize> {
    let q = domain.qubit_width();
    if !domain.is_simulable() {
        return Err(Error::Capacity(format!(
            "{} domain of {} candidates needs {q} qubits; the simulator stops at {MAX_QUBITS}",
            domain.label(),
            domain.size()
        )));
    }
    if domain.size() != plan.domain_size as u128 {
        return Err(Error::Domain(format!(
            "plan is for N = {} but the domain holds {}",
            plan.domain_size,
            domain.size()
        )));
    }
    if let InitMode::ExactDomain(n) = plan.init {
        if n as u128 != domain.size() {
            return Err(Error::Domain(format!(
                "exact-domain preparation over {n} states does not match N = {}",
                domain.size()
            )));
        }
    }
    check_counts(plan.domain_size, plan.marked_count)?;
    Ok(q)
}

/// Prepares the plan's initial state and applies `iterations` Grover iterates, calling
/// `observe(i, state)` before the first iterate and after each one.
fn evolve(
    q: usize,
    plan: &GroverPlan,
    marked: &MarkedSet,
    iterations: u64,
    mut observe: impl FnMut(u64, &StateVector),
) -> Result<StateVector> {
    let mut state = StateVector::init(q, plan.init)?;
    observe(0, &state);
    for i in 1..=iterations {
        state.apply_phase_oracle(|b| marked.contains(b));
        state.reflect_about_initial(plan.init)?;
        observe(i, &state);
    }
    Ok(state)
}

/// Runs the search: prepare, iterate `plan.iterations` times, measure one outcome, and
/// verify it classically. A failed verification re-runs the whole circuit, up to
/// `max_retries` extra attempts.
pub fn run(
    domain: &DomainDescriptor,
    marked: impl Fn(&[u32]) -> bool,
    plan: &GroverPlan,
    verify: impl Fn(&[u32]) -> bool,
    max_retries: u32,
) -> Result<GroverRunResult> {
    let q = check_plan(domain, plan)?;
    let marked_set = MarkedSet::build(domain, &marked, q);
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut oracle_queries = 0;
    let mut failed_outcomes = Vec::new();

    for attempt in 0..=max_retries {
        let state = evolve(q, plan, &marked_set, plan.iterations, |_, _| {})?;
        oracle_queries += state.oracle_queries();
        let final_marked_probability = state.probability_of(|i| marked_set.contains(i));
        let outcome = state.measure(&mut rng);
        let candidate = (outcome as u128)
            .lt(&domain.size())
            .then(|| domain.decode_unchecked(outcome as u128));
        let valid = candidate.as_deref().is_some_and(&verify);
        if valid || attempt == max_retries {
            return Ok(GroverRunResult {
                outcome_index: outcome as u64,
                candidate,
                valid,
                oracle_queries,
                retries: attempt,
                iterations: plan.iterations,
                final_marked_probability,
                marked_states: marked_set.count,
                failed_outcomes,
            });
        }
        failed_outcomes.push(outcome as u64);
    }
    unreachable!("the final attempt always returns")
}

/// Exact marked probability after each iteration `0..=plan.iterations`.
pub fn amplitude_trace(
    domain: &DomainDescriptor,
    marked: impl Fn(&[u32]) -> bool,
    plan: &GroverPlan,
) -> Result<Vec<(u64, f64)>> {
    let q = check_plan(domain, plan)?;
    let marked_set = MarkedSet::build(domain, &marked, q);
    let mut trace = Vec::with_capacity(plan.iterations as usize + 1);
    evolve(q, plan, &marked_set, plan.iterations, |i, s| {
        trace.push((i, s.probability_of(|b| marked_set.contains(b))));
    })?;
    Ok(trace)
}

/// The headline query figures for the full `(n²)!` permutation space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QueryReport {
    pub n: usize,
    pub assumed_marked: u64,
    /// `N = (n²)!` as a float (exact for n ≤ 4).
    pub search_space: f64,
    /// `√N`.
    pub sqrt_n: f64,
    /// `(π/4)·√(N/M)`.
    pub scaled_queries: f64,
    /// `⌊(π/4)·√(N/M)⌋`.
    pub optimal_iterations: f64,
}

/// `(n²)!` in floating point; finite for n ≤ 13.
pub fn permutation_count_f64(n: usize) -> f64 {
    (1..=n * n).map(|k| k as f64).product()
}

pub fn theoretical_query_report(n: usize, assume_m: u64) -> Result<QueryReport> {
    if !(2..=13).contains(&n) {
        return Err(Error::Domain(format!("query report covers 2 ≤ n ≤ 13, got {n}")));
    }
    let big_n = permutation_count_f64(n);
    if assume_m < 1 || assume_m as f64 > big_n {
        return Err(Error::Domain(format!("assumed M = {assume_m} outside 1..=N")));
    }
    let scaled = FRAC_PI_4 * (big_n / assume_m as f64).sqrt();
    Ok(QueryReport {
        n,
        assumed_marked: assume_m,
        search_space: big_n,
        sqrt_n: big_n.sqrt(),
        scaled_queries: scaled,
        optimal_iterations: scaled.floor(),
    })
}
