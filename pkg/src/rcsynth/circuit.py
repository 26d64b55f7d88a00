"""Gate and circuit model for reversible circuits over NOT, CNOT and 2-CNOT.

Conventions used everywhere in the package:

- lines are 0-indexed;
- a state is an integer whose bit j is the value on line j (line 0 is the
  least significant bit);
- a circuit has m lines, the first n carry the inputs, the remaining
  q = m - n are ancillas fixed to 0 on entry, and `outputs` names the n
  lines read back out, in order.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import CapacityError
from .perm import BooleanMapping, Permutation

DEFAULT_EXHAUSTIVE_CAP = 24
CAP_ENV_VAR = "RCSYNTH_CAP"

KIND_NOT = "NOT"
KIND_CNOT = "CNOT"
KIND_2CNOT = "2-CNOT"
KIND_GENERALIZED = "generalized"


def resolve_cap(cap: int | None = None) -> int:
    """Exhaustive-sweep cap: explicit argument, else RCSYNTH_CAP, else 24."""
    if cap is not None:
        return cap
    env = os.environ.get(CAP_ENV_VAR)
    if env is not None:
        return int(env)
    return DEFAULT_EXHAUSTIVE_CAP


@dataclass(frozen=True)
class Gate:
    """One reversible element: flip `target` iff all `controls` are 1.

    No controls is a NOT, one a CNOT, two a 2-CNOT.  Three or more controls
    make a generalized gate, legal in memory but outside the emitted basis.
    """

    controls: tuple[int, ...]
    target: int

    def __post_init__(self) -> None:
        controls = tuple(sorted(self.controls))
        object.__setattr__(self, "controls", controls)
        if len(set(controls)) != len(controls):
            raise ValueError(f"duplicate control lines in {controls}")
        if self.target in controls:
            raise ValueError(f"target {self.target} is also a control")
        if self.target < 0 or any(c < 0 for c in controls):
            raise ValueError("line indices must be non-negative")

    @property
    def kind(self) -> str:
        return {0: KIND_NOT, 1: KIND_CNOT, 2: KIND_2CNOT}.get(
            len(self.controls), KIND_GENERALIZED
        )

    @property
    def lines(self) -> tuple[int, ...]:
        return self.controls + (self.target,)

    def fires(self, bits: int) -> bool:
        return all((bits >> c) & 1 for c in self.controls)

    def apply_to_bits(self, bits: int) -> int:
        if self.fires(bits):
            return bits ^ (1 << self.target)
        return bits


def not_gate(target: int) -> Gate:
    return Gate((), target)


def cnot(control: int, target: int) -> Gate:
    return Gate((control,), target)


def ccnot(c1: int, c2: int, target: int) -> Gate:
    return Gate((c1, c2), target)


@dataclass(frozen=True)
class State:
    """Bit word on a fixed number of lines."""

    bits: int
    width: int

    def __post_init__(self) -> None:
        if self.width < 1:
            raise ValueError("state width must be at least 1")
        if not 0 <= self.bits < (1 << self.width):
            raise ValueError(f"bits {self.bits:#b} do not fit in {self.width} lines")


def apply_gate(gate: Gate, state: State) -> State:
    """Semantics of a single gate: the target bit flips iff every control
    bit is 1; no other bit changes."""
    if gate.target >= state.width or any(c >= state.width for c in gate.controls):
        raise ValueError(f"gate {gate} does not fit in {state.width} lines")
    return State(gate.apply_to_bits(state.bits), state.width)


@dataclass(frozen=True)
class Circuit:
    """Ordered gate sequence over m lines with n inputs and q = m - n
    zero-initialized ancillas; `outputs` selects the result lines."""

    m: int
    n: int
    gates: tuple[Gate, ...]
    outputs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        if self.n < 1 or self.m < self.n:
            raise ValueError(f"need m >= n >= 1, got m={self.m}, n={self.n}")
        if len(self.outputs) != self.n or len(set(self.outputs)) != self.n:
            raise ValueError(f"outputs must name {self.n} distinct lines")
        for line in self.outputs:
            if not 0 <= line < self.m:
                raise ValueError(f"output line {line} out of range [0, {self.m})")
        for gate in self.gates:
            if gate.target >= self.m or any(c >= self.m for c in gate.controls):
                raise ValueError(f"gate {gate} does not fit in {self.m} lines")

    @property
    def q(self) -> int:
        return self.m - self.n

    def __len__(self) -> int:
        return len(self.gates)


@dataclass(frozen=True)
class GateCountReport:
    """Gate counts by kind plus ancilla usage."""

    nots: int
    cnots: int
    toffolis: int
    generalized: int
    total: int
    ancillas: int

    def __post_init__(self) -> None:
        if self.nots + self.cnots + self.toffolis + self.generalized != self.total:
            raise ValueError("total does not match the per-kind counts")


def count_gates(circuit: Circuit) -> GateCountReport:
    counts = {KIND_NOT: 0, KIND_CNOT: 0, KIND_2CNOT: 0, KIND_GENERALIZED: 0}
    for gate in circuit.gates:
        counts[gate.kind] += 1
    return GateCountReport(
        nots=counts[KIND_NOT],
        cnots=counts[KIND_CNOT],
        toffolis=counts[KIND_2CNOT],
        generalized=counts[KIND_GENERALIZED],
        total=len(circuit.gates),
        ancillas=circuit.q,
    )


def simulate(circuit: Circuit, input_word: int) -> tuple[int, int]:
    """Run one input: place it on lines 0..n-1, zero the ancillas, apply the
    gates in order, and gather the output lines.  Returns (output, final
    m-line state)."""
    if not 0 <= input_word < (1 << circuit.n):
        raise ValueError(f"input {input_word} does not fit in {circuit.n} bits")
    bits = input_word
    for gate in circuit.gates:
        bits = gate.apply_to_bits(bits)
    output = 0
    for j, line in enumerate(circuit.outputs):
        output |= ((bits >> line) & 1) << j
    return output, bits


def truth_table_masks(n: int) -> list[int]:
    """Bit-parallel input columns: mask i has bit w set iff bit i of w is set,
    for all w in [0, 2^n)."""
    size = 1 << n
    masks = []
    for i in range(n):
        period = 1 << (i + 1)
        block = ((1 << (1 << i)) - 1) << (1 << i)
        mask = block
        width = period
        while width < size:
            mask |= mask << width
            width *= 2
        masks.append(mask & ((1 << size) - 1))
    return masks


def _sweep(circuit: Circuit, enumerated: int) -> list[int]:
    """Truth table per line after running the circuit on all 2^enumerated
    assignments of the first `enumerated` lines (remaining lines start 0)."""
    size = 1 << enumerated
    full = (1 << size) - 1
    tables = [0] * circuit.m
    for line, mask in enumerate(truth_table_masks(enumerated)):
        tables[line] = mask
    for gate in circuit.gates:
        fired = full
        for c in gate.controls:
            fired &= tables[c]
        tables[gate.target] ^= fired
    return tables


def realized_mapping(circuit: Circuit, cap: int | None = None) -> BooleanMapping:
    """The mapping the circuit realizes: simulate(w) gathered over all
    w < 2^n.  Capped on n, the size of the table being materialized."""
    cap = resolve_cap(cap)
    if circuit.n > cap:
        raise CapacityError(
            f"realized_mapping over 2^{circuit.n} inputs exceeds cap {cap}"
        )
    tables = _sweep(circuit, circuit.n)
    out_tables = [tables[line] for line in circuit.outputs]
    images = []
    for w in range(1 << circuit.n):
        value = 0
        for j, table in enumerate(out_tables):
            value |= ((table >> w) & 1) << j
        images.append(value)
    return BooleanMapping(circuit.n, tuple(images))


def circuit_permutation(circuit: Circuit, cap: int | None = None) -> Permutation:
    """The bijection on all 2^m states, every line treated as an input."""
    cap = resolve_cap(cap)
    if circuit.m > cap:
        raise CapacityError(
            f"circuit_permutation over 2^{circuit.m} states exceeds cap {cap}"
        )
    widened = Circuit(circuit.m, circuit.m, circuit.gates, tuple(range(circuit.m)))
    tables = _sweep(widened, circuit.m)
    images = []
    for w in range(1 << circuit.m):
        value = 0
        for line in range(circuit.m):
            value |= ((tables[line] >> w) & 1) << line
        images.append(value)
    return Permutation(circuit.m, tuple(images))


def invert(circuit: Circuit) -> Circuit:
    """Reverse the gate order.  Every basis gate is an involution, so the
    result realizes the inverse permutation."""
    return Circuit(circuit.m, circuit.n, tuple(reversed(circuit.gates)), circuit.outputs)


def basis_gadget(op: str, sources: tuple[int, ...], fresh: int) -> list[Gate]:
    """Classical {not, xor, and} on a fresh zero line, at most two gates.

    negation:    fresh = 1 ^ a      [NOT fresh, CNOT a -> fresh]
    xor:         fresh = a ^ b      [CNOT a -> fresh, CNOT b -> fresh]
    conjunction: fresh = a & b      [2-CNOT {a, b} -> fresh]
    """
    sources = tuple(sources)
    if fresh in sources:
        raise ValueError("fresh line must differ from the sources")
    if op == "negation":
        (a,) = sources
        return [not_gate(fresh), cnot(a, fresh)]
    if op == "xor":
        a, b = sources
        return [cnot(a, fresh), cnot(b, fresh)]
    if op == "conjunction":
        a, b = sources
        return [ccnot(a, b, fresh)]
    raise ValueError(f"unknown gadget op {op!r}")
