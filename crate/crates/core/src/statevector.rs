//! Dense statevector simulation of a small qubit register.
//!
//! Basis index bit `j` is the value of qubit `j`; bitstrings are rendered most-significant
//! qubit first, so qubit 2 set on a 3-qubit register prints as `"100"`.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest register the simulator will allocate (2^26 amplitudes, 1 GiB).
pub const MAX_QUBITS: usize = 26;

/// Tolerance used for norm checks.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Measurement histogram keyed by bitstring.
pub type Histogram = BTreeMap<String, u64>;

/// How the register is prepared before a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitMode {
    /// Uniform amplitude over basis indices `0..N`, zero elsewhere.
    ExactDomain(usize),
    /// Uniform amplitude over all `2^q` basis indices (a Hadamard layer on `|0…0⟩`).
    Padded,
}

impl InitMode {
    /// Number of basis states carrying amplitude on a `num_qubits` register.
    pub fn support(&self, num_qubits: usize) -> usize {
        match *self {
            InitMode::ExactDomain(n) => n,
            InitMode::Padded => 1 << num_qubits,
        }
    }

    fn validate(&self, num_qubits: usize) -> Result<()> {
        if let InitMode::ExactDomain(n) = *self {
            let dim = 1usize << num_qubits;
            if n == 0 || n > dim {
                return Err(Error::Domain(format!(
                    "exact-domain size {n} must lie in 1..={dim} for {num_qubits} qubits"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for InitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitMode::ExactDomain(n) => write!(f, "exact-domain({n})"),
            InitMode::Padded => f.write_str("padded"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    Hadamard,
    PauliX,
    PauliZ,
    MultiControlledX,
    MultiControlledZ,
}

impl GateKind {
    pub fn mnemonic(&self) -> &'static str {
        match self {
            GateKind::Hadamard => "H",
            GateKind::PauliX => "X",
            GateKind::PauliZ => "Z",
            GateKind::MultiControlledX => "MCX",
            GateKind::MultiControlledZ => "MCZ",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<Self> {
        Some(match s {
            "H" => GateKind::Hadamard,
            "X" => GateKind::PauliX,
            "Z" => GateKind::PauliZ,
            "MCX" => GateKind::MultiControlledX,
            "MCZ" => GateKind::MultiControlledZ,
            _ => return None,
        })
    }

    pub fn is_multi_controlled(&self) -> bool {
        matches!(self, GateKind::MultiControlledX | GateKind::MultiControlledZ)
    }
}

/// A control qubit together with the value it must hold for the gate to act.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Control {
    pub qubit: usize,
    pub polarity: bool,
}

impl Control {
    /// Fires when the qubit is `|1⟩`.
    pub fn on(qubit: usize) -> Self {
        Control { qubit, polarity: true }
    }

    /// Fires when the qubit is `|0⟩`.
    pub fn off(qubit: usize) -> Self {
        Control { qubit, polarity: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub target: usize,
    pub controls: Vec<Control>,
}

impl Gate {
    pub fn h(target: usize) -> Self {
        Gate { kind: GateKind::Hadamard, target, controls: Vec::new() }
    }

    pub fn x(target: usize) -> Self {
        Gate { kind: GateKind::PauliX, target, controls: Vec::new() }
    }

    pub fn z(target: usize) -> Self {
        Gate { kind: GateKind::PauliZ, target, controls: Vec::new() }
    }

    pub fn mcx(controls: impl Into<Vec<Control>>, target: usize) -> Self {
        Gate { kind: GateKind::MultiControlledX, target, controls: controls.into() }
    }

    pub fn mcz(controls: impl Into<Vec<Control>>, target: usize) -> Self {
        Gate { kind: GateKind::MultiControlledZ, target, controls: controls.into() }
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Gate::mcx(vec![Control::on(control)], target)
    }

    /// All five kinds are self-inverse.
    pub fn inverse(&self) -> Gate {
        self.clone()
    }

    /// Highest qubit index touched by the gate.
    pub fn max_qubit(&self) -> usize {
        self.controls.iter().map(|c| c.qubit).fold(self.target, usize::max)
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        if !self.kind.is_multi_controlled() && !self.controls.is_empty() {
            return Err(Error::InvalidGate(format!(
                "{} takes no controls",
                self.kind.mnemonic()
            )));
        }
        if self.target >= num_qubits {
            return Err(Error::QubitIndex { index: self.target, num_qubits });
        }
        let mut used: Vec<usize> = self.controls.iter().map(|c| c.qubit).collect();
        if let Some(&q) = used.iter().find(|&&q| q >= num_qubits) {
            return Err(Error::QubitIndex { index: q, num_qubits });
        }
        used.push(self.target);
        used.sort_unstable();
        if let Some(w) = used.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGate(format!("qubit {} used twice in {}", w[0], self)));
        }
        Ok(())
    }

    /// `(mask, value)` such that the controls are satisfied on basis index `i`
    /// exactly when `i & mask == value`.
    pub(crate) fn control_mask(&self) -> (usize, usize) {
        self.controls.iter().fold((0, 0), |(mask, value), c| {
            let bit = 1usize << c.qubit;
            (mask | bit, if c.polarity { value | bit } else { value })
        })
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind.mnemonic(), self.target)?;
        for c in &self.controls {
            write!(f, " {}{}", c.qubit, if c.polarity { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// The full amplitude vector of a `num_qubits`-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
    oracle_queries: u64,
}

fn check_width(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(Error::Capacity(format!(
            "{num_qubits} qubits requested; the dense simulator supports 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

impl StateVector {
    /// Prepares the uniform superposition described by `mode`.
    pub fn init(num_qubits: usize, mode: InitMode) -> Result<Self> {
        check_width(num_qubits)?;
        mode.validate(num_qubits)?;
        let dim = 1usize << num_qubits;
        let support = mode.support(num_qubits);
        let amp = Complex64::new(1.0 / (support as f64).sqrt(), 0.0);
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[..support].fill(amp);
        Ok(StateVector { num_qubits, amplitudes, oracle_queries: 0 })
    }

    /// The computational basis state `|index⟩`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        check_width(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::Domain(format!(
                "basis index {index} out of range for {num_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { num_qubits, amplitudes, oracle_queries: 0 })
    }

    /// Wraps raw amplitudes; the length must be a power of two and the norm 1.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Domain(format!(
                "amplitude vector length {len} is not a power of two ≥ 2"
            )));
        }
        let num_qubits = len.trailing_zeros() as usize;
        check_width(num_qubits)?;
        let state = StateVector { num_qubits, amplitudes, oracle_queries: 0 };
        if (state.norm() - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Domain(format!("state has norm {}", state.norm())));
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    /// Number of phase-oracle applications since preparation.
    pub fn oracle_queries(&self) -> u64 {
        self.oracle_queries
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        let bit = 1usize << gate.target;
        let (mask, value) = gate.control_mask();
        let amps = &mut self.amplitudes;
        match gate.kind {
            GateKind::Hadamard => {
                for i in (0..amps.len()).filter(|i| i & bit == 0) {
                    let (a, b) = (amps[i], amps[i | bit]);
                    amps[i] = (a + b) * FRAC_1_SQRT_2;
                    amps[i | bit] = (a - b) * FRAC_1_SQRT_2;
                }
            }
            GateKind::PauliX | GateKind::MultiControlledX => {
                for i in 0..amps.len() {
                    if i & bit == 0 && i & mask == value {
                        amps.swap(i, i | bit);
                    }
                }
            }
            GateKind::PauliZ | GateKind::MultiControlledZ => {
                for (i, a) in amps.iter_mut().enumerate() {
                    if i & bit != 0 && i & mask == value {
                        *a = -*a;
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply_gates<'a>(&mut self, gates: impl IntoIterator<Item = &'a Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.apply_gate(g))
    }

    /// Negates every amplitude whose basis index satisfies `marked` and counts one
    /// oracle query. Returns the running query count.
    pub fn apply_phase_oracle(&mut self, marked: impl Fn(usize) -> bool) -> u64 {
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            if marked(i) {
                *a = -*a;
            }
        }
        self.oracle_queries += 1;
        self.oracle_queries
    }

    /// Reflects about the state `init(q, mode)`: `ψ ← 2|s⟩⟨s|ψ⟩ − ψ`.
    pub fn reflect_about_initial(&mut self, mode: InitMode) -> Result<()> {
        mode.validate(self.num_qubits)?;
        let support = mode.support(self.num_qubits);
        let (inside, outside) = self.amplitudes.split_at_mut(support);
        // 2|s⟩⟨s|ψ⟩ restricted to the support is twice the mean amplitude there.
        let mean = inside.iter().sum::<Complex64>() / support as f64;
        let twice_mean = mean * 2.0;
        for a in inside.iter_mut() {
            *a = twice_mean - *a;
        }
        for a in outside.iter_mut() {
            *a = -*a;
        }
        Ok(())
    }

    /// Exact probability mass on the basis states selected by `marked`.
    pub fn probability_of(&self, marked: impl Fn(usize) -> bool) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| marked(*i))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Draws one basis index from the Born distribution.
    pub fn measure<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        Sampler::new(self).draw(rng)
    }

    /// Draws `shots` independent outcomes with a generator seeded from `seed`.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<Histogram> {
        if shots == 0 {
            return Err(Error::Domain("shots must be at least 1".into()));
        }
        let sampler = Sampler::new(self);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        for _ in 0..shots {
            *counts.entry(sampler.draw(&mut rng)).or_default() += 1;
        }
        Ok(counts
            .into_iter()
            .map(|(i, c)| (bitstring(i, self.num_qubits), c))
            .collect())
    }
}

/// Renders `index` as a `width`-character bitstring, most-significant qubit first.
pub fn bitstring(index: usize, width: usize) -> String {
    (0..width)
        .rev()
        .map(|q| if index >> q & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Cumulative distribution over basis indices for repeated draws.
struct Sampler {
    cdf: Vec<f64>,
}

impl Sampler {
    fn new(state: &StateVector) -> Self {
        let mut acc = 0.0;
        let cdf = state
            .amplitudes
            .iter()
            .map(|a| {
                acc += a.norm_sqr();
                acc
            })
            .collect();
        Sampler { cdf }
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self.cdf.last().expect("non-empty state");
        let u = rng.gen::<f64>() * total;
        // First index whose cumulative mass exceeds u; zero-probability entries never win.
        let idx = self.cdf.partition_point(|&c| c <= u);
        idx.min(self.cdf.len() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn padded_single_qubit_is_plus_state() {
        let s = StateVector::init(1, InitMode::Padded).unwrap();
        for a in s.amplitudes() {
            assert!((a.re - FRAC_1_SQRT_2).abs() < 1e-15 && a.im == 0.0);
        }
    }

    #[test]
    fn exact_domain_25_in_5_qubits() {
        let s = StateVector::init(5, InitMode::ExactDomain(25)).unwrap();
        for (i, a) in s.amplitudes().iter().enumerate() {
            let want = if i < 25 { 0.2 } else { 0.0 };
            assert!((a.re - want).abs() < 1e-15, "index {i}");
        }
        assert!((s.norm() - 1.0).abs() < NORM_TOLERANCE);
    }

    #[test]
    fn exact_domain_full_permutation_space() {
        let s = StateVector::init(19, InitMode::ExactDomain(362_880)).unwrap();
        assert!((s.norm() - 1.0).abs() < NORM_TOLERANCE);
        let a = 1.0 / 362_880f64.sqrt();
        assert!((s.amplitude(0).re - a).abs() < 1e-15);
        assert!((s.amplitude(362_879).re - a).abs() < 1e-15);
        assert_eq!(s.amplitude(362_880).norm(), 0.0);
    }

    #[test]
    fn init_rejects_bad_sizes() {
        assert!(matches!(StateVector::init(0, InitMode::Padded), Err(Error::Capacity(_))));
        assert!(matches!(StateVector::init(27, InitMode::Padded), Err(Error::Capacity(_))));
        assert!(matches!(
            StateVector::init(3, InitMode::ExactDomain(9)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            StateVector::init(3, InitMode::ExactDomain(0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn hadamard_twice_restores_state() {
        let mut s = StateVector::init(3, InitMode::ExactDomain(5)).unwrap();
        let before = s.clone();
        s.apply_gate(&Gate::h(1)).unwrap();
        s.apply_gate(&Gate::h(1)).unwrap();
        for (a, b) in s.amplitudes().iter().zip(before.amplitudes()) {
            assert!(close(*a, *b, 1e-12));
        }
    }

    #[test]
    fn z_negates_one() {
        let mut s = StateVector::basis(1, 1).unwrap();
        s.apply_gate(&Gate::z(0)).unwrap();
        assert_eq!(s.amplitude(1), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn three_qubit_demo_circuit_lands_on_100() {
        let mut s = StateVector::basis(3, 0).unwrap();
        let gates = [
            Gate::h(0),
            Gate::h(0),
            Gate::h(1),
            Gate::h(1),
            Gate::h(2),
            Gate::z(2),
            Gate::h(2),
        ];
        s.apply_gates(&gates).unwrap();
        assert!(close(s.amplitude(0b100), Complex64::new(1.0, 0.0), 1e-12));
        assert_eq!(s.sample(1024, 7).unwrap(), Histogram::from([("100".into(), 1024)]));
    }

    #[test]
    fn controlled_gates_respect_polarity() {
        // |q1 q0⟩ = |01⟩: a control on q0 fires, a negative control on q0 does not.
        let mut s = StateVector::basis(2, 0b01).unwrap();
        s.apply_gate(&Gate::mcx(vec![Control::on(0)], 1)).unwrap();
        assert_eq!(s.amplitude(0b11).re, 1.0);
        s.apply_gate(&Gate::mcx(vec![Control::off(0)], 1)).unwrap();
        assert_eq!(s.amplitude(0b11).re, 1.0);
        s.apply_gate(&Gate::mcz(vec![Control::on(0)], 1)).unwrap();
        assert_eq!(s.amplitude(0b11).re, -1.0);
    }

    #[test]
    fn invalid_gates_rejected() {
        let mut s = StateVector::basis(2, 0).unwrap();
        assert!(matches!(
            s.apply_gate(&Gate::h(2)),
            Err(Error::QubitIndex { index: 2, num_qubits: 2 })
        ));
        assert!(s.apply_gate(&Gate::mcx(vec![Control::on(1)], 1)).is_err());
        assert!(s.apply_gate(&Gate::mcx(vec![Control::on(5)], 1)).is_err());
        let mut bad = Gate::x(0);
        bad.controls.push(Control::on(1));
        assert!(matches!(s.apply_gate(&bad), Err(Error::InvalidGate(_))));
    }

    #[test]
    fn oracle_cases() {
        let mut s = StateVector::init(5, InitMode::ExactDomain(25)).unwrap();
        let before = s.clone();
        assert_eq!(s.apply_phase_oracle(|_| false), 1);
        assert_eq!(s.amplitudes(), before.amplitudes());

        assert_eq!(s.apply_phase_oracle(|i| i == 11), 2);
        for i in 0..25 {
            let want = if i == 11 { -0.2 } else { 0.2 };
            assert!((s.amplitude(i).re - want).abs() < 1e-15);
        }

        let probs = s.probabilities();
        s.apply_phase_oracle(|_| true);
        for (p, q) in probs.iter().zip(s.probabilities()) {
            assert!((p - q).abs() < 1e-15);
        }
        assert_eq!(s.oracle_queries(), 3);
    }

    #[test]
    fn reflection_fixed_points() {
        let mut s = StateVector::init(4, InitMode::Padded).unwrap();
        let before = s.clone();
        s.reflect_about_initial(InitMode::Padded).unwrap();
        for (a, b) in s.amplitudes().iter().zip(before.amplitudes()) {
            assert!(close(*a, *b, 1e-12));
        }

        let mut s = StateVector::init(5, InitMode::ExactDomain(25)).unwrap();
        let before = s.clone();
        s.reflect_about_initial(InitMode::ExactDomain(25)).unwrap();
        for (a, b) in s.amplitudes().iter().zip(before.amplitudes()) {
            assert!(close(*a, *b, 1e-12));
        }
    }

    #[test]
    fn two_qubit_search_is_exact() {
        let mut s = StateVector::init(2, InitMode::Padded).unwrap();
        s.apply_phase_oracle(|i| i == 3);
        s.reflect_about_initial(InitMode::Padded).unwrap();
        assert!(close(s.amplitude(3), Complex64::new(1.0, 0.0), 1e-12));
        assert_eq!(s.sample(500, 3).unwrap(), Histogram::from([("11".into(), 500)]));
    }

    #[test]
    fn reflection_keeps_out_of_domain_zero() {
        let mut s = StateVector::init(5, InitMode::ExactDomain(25)).unwrap();
        s.apply_phase_oracle(|i| i == 4);
        s.reflect_about_initial(InitMode::ExactDomain(25)).unwrap();
        assert!(s.amplitudes()[25..].iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn probability_readout() {
        let s = StateVector::init(5, InitMode::Padded).unwrap();
        assert!((s.probability_of(|i| i == 11) - 1.0 / 32.0).abs() < 1e-15);
        let s = StateVector::init(5, InitMode::ExactDomain(25)).unwrap();
        assert!((s.probability_of(|i| i == 11) - 0.04).abs() < 1e-15);
    }

    #[test]
    fn sampling_uniform_qubit_within_five_sigma() {
        let s = StateVector::init(1, InitMode::Padded).unwrap();
        let shots = 1_000_000u64;
        let hist = s.sample(shots, 2024).unwrap();
        let sigma = (shots as f64 * 0.25).sqrt();
        for key in ["0", "1"] {
            let c = hist[key] as f64;
            assert!((c - 500_000.0).abs() < 5.0 * sigma, "{key}: {c}");
        }
    }

    #[test]
    fn sampling_is_deterministic_and_rejects_zero_shots() {
        let s = StateVector::init(3, InitMode::ExactDomain(6)).unwrap();
        assert_eq!(s.sample(100, 9).unwrap(), s.sample(100, 9).unwrap());
        assert!(s.sample(0, 9).is_err());
        let hist = s.sample(10_000, 1).unwrap();
        assert!(!hist.contains_key("110") && !hist.contains_key("111"));
    }

    #[test]
    fn bitstrings_are_msb_first() {
        assert_eq!(bitstring(4, 3), "100");
        assert_eq!(bitstring(1, 3), "001");
        assert_eq!(bitstring(3, 2), "11");
    }

    #[test]
    fn gate_display() {
        assert_eq!(Gate::h(3).to_string(), "H 3");
        assert_eq!(
            Gate::mcx(vec![Control::on(0), Control::off(2)], 4).to_string(),
            "MCX 4 0+ 2-"
        );
    }
}
