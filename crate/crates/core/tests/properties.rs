use num_complex::Complex64;
use proptest::prelude::*;

use qsearch::magic;
use qsearch::revcircuit::{run_gatelist, with_uncompute, GateList};
use qsearch::statevector::{Control, Gate, GateKind, InitMode, StateVector, NORM_TOLERANCE};

const Q: usize = 5;

fn gate_strategy(q: usize) -> impl Strategy<Value = Gate> {
    (0..5u8, 0..q, proptest::collection::vec((0..q, any::<bool>()), 0..q)).prop_map(
        move |(kind, target, raw)| {
            let mut controls: Vec<Control> = Vec::new();
            for (qubit, polarity) in raw {
                if qubit != target && controls.iter().all(|c| c.qubit != qubit) {
                    controls.push(Control { qubit, polarity });
                }
            }
            match kind {
                0 => Gate::h(target),
                1 => Gate::x(target),
                2 => Gate::z(target),
                3 => Gate::mcx(controls, target),
                _ => Gate::mcz(controls, target),
            }
        },
    )
}

/// Random normalised state on `q` qubits.
fn state_strategy(q: usize) -> impl Strategy<Value = StateVector> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << q).prop_filter_map(
        "non-zero",
        |raw| {
            let norm = raw.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
            (norm > 1e-3).then(|| {
                StateVector::from_amplitudes(
                    raw.iter().map(|&(a, b)| Complex64::new(a / norm, b / norm)).collect(),
                )
                .unwrap()
            })
        },
    )
}

fn assert_close(a: &StateVector, b: &StateVector, tol: f64) {
    for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
        assert!((x - y).norm() < tol, "{x} vs {y}");
    }
}

proptest! {
    #[test]
    fn gates_preserve_norm(
        mut state in state_strategy(Q),
        gates in proptest::collection::vec(gate_strategy(Q), 1..60),
    ) {
        for g in &gates {
            state.apply_gate(g).unwrap();
            prop_assert!((state.norm() - 1.0).abs() < NORM_TOLERANCE);
        }
    }

    #[test]
    fn gatelists_are_reversible(
        state in state_strategy(Q),
        gates in proptest::collection::vec(gate_strategy(Q), 0..40),
    ) {
        let list = GateList::from_gates(Q, gates).unwrap();
        let mut s = state.clone();
        run_gatelist(&mut s, &list).unwrap();
        run_gatelist(&mut s, &list.inverse()).unwrap();
        assert_close(&s, &state, 1e-12);
    }

    #[test]
    fn oracle_is_a_signed_diagonal(state in state_strategy(Q), marked in any::<u32>()) {
        let mut s = state.clone();
        s.apply_phase_oracle(|i| marked >> i & 1 == 1);
        for (i, (out, inp)) in s.amplitudes().iter().zip(state.amplitudes()).enumerate() {
            let want = if marked >> i & 1 == 1 { -inp } else { *inp };
            prop_assert_eq!(*out, want);
        }
    }

    #[test]
    fn reflection_is_an_involution(state in state_strategy(Q), support in 1usize..=32) {
        for mode in [InitMode::Padded, InitMode::ExactDomain(support)] {
            let mut s = state.clone();
            s.reflect_about_initial(mode).unwrap();
            prop_assert!((s.norm() - 1.0).abs() < NORM_TOLERANCE);
            s.reflect_about_initial(mode).unwrap();
            assert_close(&s, &state, 1e-10);
        }
    }

    #[test]
    fn sampling_is_deterministic(state in state_strategy(3), seed in any::<u64>(), shots in 1u64..500) {
        let a = state.sample(shots, seed).unwrap();
        prop_assert_eq!(&a, &state.sample(shots, seed).unwrap());
        prop_assert_eq!(a.values().sum::<u64>(), shots);
    }

    #[test]
    fn rank_round_trips(perm in Just((1..=9u32).collect::<Vec<_>>()).prop_shuffle()) {
        let r = magic::rank(&perm).unwrap();
        prop_assert!(r < 362_880);
        prop_assert_eq!(magic::unrank(r, 9).unwrap(), perm);
    }

    #[test]
    fn reduced_domain_round_trips(index in 0u128..40_320) {
        let d = magic::reduce_domain(3).unwrap();
        let cells = d.decode(index).unwrap();
        prop_assert_eq!(cells[4], 5);
        prop_assert_eq!(d.encode(&cells), Some(index));
    }

    #[test]
    fn netlists_round_trip(gates in proptest::collection::vec(gate_strategy(6), 0..20)) {
        let list = GateList::from_gates(6, gates).unwrap().with_ancillas(4..6).unwrap();
        prop_assert_eq!(list.to_netlist().parse::<GateList>().unwrap(), list);
    }
}

fn reversible_gate(q: usize) -> impl Strategy<Value = Gate> {
    gate_strategy(q).prop_filter("basis-preserving", |g| g.kind != GateKind::Hadamard)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// compute ∥ mark ∥ compute⁻¹ with a diagonal mark leaves every basis state in place,
    /// up to sign.
    #[test]
    fn uncompute_restores_basis_states(
        compute in proptest::collection::vec(reversible_gate(6), 0..25),
        mark_target in 0usize..6,
        input in 0usize..64,
    ) {
        let compute = GateList::from_gates(6, compute).unwrap();
        let mark = GateList::from_gates(6, vec![Gate::z(mark_target)]).unwrap();
        let wrapped = with_uncompute(&compute, &mark).unwrap();
        let (out, _) = wrapped.apply_to_basis(input).unwrap();
        prop_assert_eq!(out, input);
    }
}

#[test]
fn involutions_exhaustive_up_to_four_qubits() {
    for q in 1..=4usize {
        for index in 0..1usize << q {
            for target in 0..q {
                for gate in [Gate::h(target), Gate::x(target), Gate::z(target)] {
                    let mut s = StateVector::basis(q, index).unwrap();
                    let before = s.clone();
                    s.apply_gate(&gate).unwrap();
                    s.apply_gate(&gate).unwrap();
                    assert_close(&s, &before, 1e-12);
                }
            }
        }
    }
}

#[test]
fn decode_is_injective_on_samples() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    for d in [magic::full_permutation_domain(3).unwrap(), magic::reduce_domain(3).unwrap()] {
        let mut seen = std::collections::HashMap::new();
        for _ in 0..100_000 {
            let i = rng.gen_range(0..d.size());
            let cells = d.decode(i).unwrap();
            if let Some(prev) = seen.insert(cells, i) {
                assert_eq!(prev, i);
            }
        }
    }
}
