"""Gate semantics, simulation, inversion, counting and gadgets."""
from random import Random

import pytest

from rcsynth import (
    CapacityError,
    Circuit,
    Gate,
    State,
    apply_gate,
    basis_gadget,
    circuit_permutation,
    cnot,
    count_gates,
    invert,
    is_even,
    not_gate,
    realized_mapping,
    simulate,
    ccnot,
    truth_table_masks,
)
from conftest import naive_mapping, random_circuit


def all_basis_gates(m):
    gates = [not_gate(t) for t in range(m)]
    gates += [cnot(c, t) for c in range(m) for t in range(m) if c != t]
    gates += [
        ccnot(c1, c2, t)
        for c1 in range(m)
        for c2 in range(c1 + 1, m)
        for t in range(m)
        if t not in (c1, c2)
    ]
    return gates


class TestApplyGate:
    def test_not_sets_bit(self):
        assert apply_gate(not_gate(0), State(0b00, 2)) == State(0b01, 2)

    def test_toffoli_fires_only_when_all_controls_set(self):
        gate = ccnot(0, 1, 2)
        assert apply_gate(gate, State(0b011, 3)) == State(0b111, 3)
        assert apply_gate(gate, State(0b001, 3)) == State(0b001, 3)

    def test_every_gate_is_an_involution(self):
        for gate in all_basis_gates(4):
            for bits in range(16):
                state = State(bits, 4)
                assert apply_gate(gate, apply_gate(gate, state)) == state

    def test_locality_changes_at_most_one_bit(self):
        for gate in all_basis_gates(4):
            for bits in range(16):
                after = apply_gate(gate, State(bits, 4)).bits
                assert bin(after ^ bits).count("1") <= 1

    def test_out_of_range_index_rejected(self):
        with pytest.raises(ValueError):
            apply_gate(not_gate(3), State(0, 2))
        with pytest.raises(ValueError):
            apply_gate(cnot(0, 2), State(0, 2))


class TestGateValidation:
    def test_target_cannot_be_a_control(self):
        with pytest.raises(ValueError):
            Gate((0, 1), 1)

    def test_duplicate_controls_rejected(self):
        with pytest.raises(ValueError):
            Gate((0, 0), 1)

    def test_kind_is_derived_from_control_count(self):
        assert not_gate(0).kind == "NOT"
        assert cnot(0, 1).kind == "CNOT"
        assert ccnot(0, 1, 2).kind == "2-CNOT"
        assert Gate((0, 1, 2), 3).kind == "generalized"


class TestSimulate:
    def test_empty_circuit_is_identity(self):
        c = Circuit(3, 3, (), (0, 1, 2))
        for w in range(8):
            assert simulate(c, w) == (w, w)

    def test_cnot_circuit(self):
        c = Circuit(2, 2, (cnot(0, 1),), (0, 1))
        assert simulate(c, 0b01)[0] == 0b11

    def test_ancilla_enables_control(self):
        c = Circuit(3, 2, (not_gate(2), ccnot(0, 2, 1)), (0, 1))
        output, final = simulate(c, 0b01)
        assert output == 0b11
        assert final == 0b111

    def test_input_must_fit(self):
        c = Circuit(2, 2, (), (0, 1))
        with pytest.raises(ValueError):
            simulate(c, 4)


class TestRealizedMapping:
    def test_empty_circuit(self):
        c = Circuit(2, 2, (), (0, 1))
        assert realized_mapping(c).images == (0, 1, 2, 3)

    def test_single_not(self):
        c = Circuit(1, 1, (not_gate(0),), (0,))
        assert realized_mapping(c).images == (1, 0)

    def test_matches_reference_simulation(self, rng):
        for _ in range(25):
            m = rng.randrange(2, 7)
            n = rng.randrange(1, m + 1)
            c = random_circuit(m, rng.randrange(0, 25), rng, n=n)
            assert list(realized_mapping(c).images) == naive_mapping(c)

    def test_cap_is_enforced(self):
        c = Circuit(4, 4, (), (0, 1, 2, 3))
        with pytest.raises(CapacityError):
            realized_mapping(c, cap=3)

    def test_cap_env_override(self, monkeypatch):
        c = Circuit(4, 4, (), (0, 1, 2, 3))
        monkeypatch.setenv("RCSYNTH_CAP", "3")
        with pytest.raises(CapacityError):
            realized_mapping(c)
        monkeypatch.setenv("RCSYNTH_CAP", "4")
        assert realized_mapping(c).images == tuple(range(16))


class TestCircuitPermutation:
    def test_single_not(self):
        c = Circuit(1, 1, (not_gate(0),), (0,))
        assert circuit_permutation(c).images == (1, 0)

    def test_cnot_table(self):
        c = Circuit(2, 2, (cnot(0, 1),), (0, 1))
        assert circuit_permutation(c).images == (0, 3, 2, 1)

    def test_even_on_four_or_more_lines(self, rng):
        for _ in range(15):
            m = rng.randrange(4, 7)
            c = random_circuit(m, rng.randrange(1, 30), rng)
            assert is_even(circuit_permutation(c))

    def test_agrees_with_realized_mapping(self, rng):
        # psi(g(phi(w))): pad with zero ancillas, permute, project outputs.
        sizes = [(rng.randrange(2, 7), None) for _ in range(15)] + [(12, 6)]
        for m, n in sizes:
            n = rng.randrange(1, m + 1) if n is None else n
            c = random_circuit(m, rng.randrange(0, 20), rng, n=n)
            g = circuit_permutation(c)
            realized = realized_mapping(c)
            for w in range(1 << n):
                full = g.images[w]
                projected = sum(
                    ((full >> line) & 1) << j for j, line in enumerate(c.outputs)
                )
                assert projected == realized.images[w]


class TestInvert:
    def test_double_inversion(self, rng):
        c = random_circuit(5, 12, rng)
        assert invert(invert(c)) == c

    def test_single_gate_circuit_is_its_own_inverse(self):
        c = Circuit(3, 3, (ccnot(0, 1, 2),), (0, 1, 2))
        assert invert(c) == c

    def test_composition_with_inverse_is_identity(self, rng):
        c = random_circuit(6, 20, rng)
        inv = invert(c)
        combined = Circuit(6, 6, c.gates + inv.gates, tuple(range(6)))
        assert realized_mapping(combined).images == tuple(range(64))

    def test_permutation_tables_are_inverse(self, rng):
        c = random_circuit(5, 15, rng)
        forward = circuit_permutation(c)
        backward = circuit_permutation(invert(c))
        assert backward == forward.inverse()


class TestCountGates:
    def test_empty(self):
        report = count_gates(Circuit(2, 2, (), (0, 1)))
        assert (report.nots, report.cnots, report.toffolis, report.total) == (0, 0, 0, 0)

    def test_mixed(self):
        c = Circuit(3, 3, (not_gate(0), cnot(0, 1), ccnot(0, 1, 2)), (0, 1, 2))
        report = count_gates(c)
        assert (report.nots, report.cnots, report.toffolis) == (1, 1, 1)
        assert report.total == 3
        assert report.generalized == 0


class TestBasisGadget:
    def value_on_fresh(self, gates, sources_bits, m, fresh):
        bits = list(sources_bits) + [0] * (m - len(sources_bits))
        for gate in gates:
            if all(bits[c] == 1 for c in gate.controls):
                bits[gate.target] ^= 1
        return bits, bits[fresh]

    def test_negation(self):
        gates = basis_gadget("negation", (0,), 1)
        assert len(gates) == 2
        for a in (0, 1):
            bits, value = self.value_on_fresh(gates, [a], 2, 1)
            assert value == 1 - a
            assert bits[0] == a

    def test_xor(self):
        gates = basis_gadget("xor", (0, 1), 2)
        assert len(gates) == 2
        for a in (0, 1):
            for b in (0, 1):
                bits, value = self.value_on_fresh(gates, [a, b], 3, 2)
                assert value == a ^ b
                assert bits[:2] == [a, b]

    def test_conjunction(self):
        gates = basis_gadget("conjunction", (0, 1), 2)
        assert len(gates) == 1
        for a in (0, 1):
            for b in (0, 1):
                _, value = self.value_on_fresh(gates, [a, b], 3, 2)
                assert value == a & b

    def test_fresh_must_differ(self):
        with pytest.raises(ValueError):
            basis_gadget("negation", (0,), 0)


class TestCircuitValidation:
    def test_outputs_must_be_distinct(self):
        with pytest.raises(ValueError):
            Circuit(2, 2, (), (0, 0))

    def test_q_nonnegative(self):
        with pytest.raises(ValueError):
            Circuit(1, 2, (), (0, 1))

    def test_gate_must_fit(self):
        with pytest.raises(ValueError):
            Circuit(2, 2, (not_gate(2),), (0, 1))


def test_truth_table_masks():
    masks = truth_table_masks(3)
    for w in range(8):
        for i in range(3):
            assert (masks[i] >> w) & 1 == (w >> i) & 1
