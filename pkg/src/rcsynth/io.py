"""Text file formats for circuits, permutations and mappings.

Circuit file (UTF-8, `#` starts a comment, blank lines ignored):

    lines <m>
    inputs <n>
    outputs <i_1> ... <i_n>
    n <t>                    NOT
    c <c> <t>                CNOT
    t <c1> <c2> <t>          2-CNOT
    x <c1> ... <ck> <t>      generalized, only with allow_generalized

Permutation file: ``perm <n>`` then 2^n integers forming a bijection on
[0, 2^n).  Mapping file: ``map <n>`` then 2^n integers in [0, 2^n).
"""
from __future__ import annotations

from typing import Iterable

from .circuit import Circuit, Gate
from .errors import FormatError
from .perm import BooleanMapping, Permutation

_GATE_LETTER = {0: "n", 1: "c", 2: "t"}


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            out.append((lineno, stripped))
    return out


def _header_int(lines: list[tuple[int, str]], index: int, keyword: str) -> int:
    if index >= len(lines):
        raise FormatError(f"missing `{keyword}` header line")
    lineno, line = lines[index]
    parts = line.split()
    if len(parts) != 2 or parts[0] != keyword:
        raise FormatError(f"line {lineno}: expected `{keyword} <value>`, got {line!r}")
    try:
        return int(parts[1])
    except ValueError:
        raise FormatError(f"line {lineno}: `{keyword}` value is not an integer") from None


def parse_circuit(text: str, allow_generalized: bool = False) -> Circuit:
    lines = _content_lines(text)
    m = _header_int(lines, 0, "lines")
    n = _header_int(lines, 1, "inputs")
    if len(lines) < 3:
        raise FormatError("missing `outputs` header line")
    lineno, outline = lines[2]
    parts = outline.split()
    if parts[0] != "outputs":
        raise FormatError(f"line {lineno}: expected `outputs ...`, got {outline!r}")
    try:
        outputs = tuple(int(tok) for tok in parts[1:])
    except ValueError:
        raise FormatError(f"line {lineno}: outputs must be integers") from None

    gates = []
    for lineno, line in lines[3:]:
        parts = line.split()
        letter, args = parts[0], parts[1:]
        try:
            values = [int(tok) for tok in args]
        except ValueError:
            raise FormatError(f"line {lineno}: gate arguments must be integers") from None
        expected = {"n": 1, "c": 2, "t": 3}
        if letter in expected:
            if len(values) != expected[letter]:
                raise FormatError(
                    f"line {lineno}: `{letter}` takes {expected[letter]} arguments"
                )
        elif letter == "x":
            if len(values) < 4:
                raise FormatError(
                    f"line {lineno}: `x` needs at least 3 controls and a target"
                )
            if not allow_generalized:
                raise FormatError(
                    f"line {lineno}: generalized gates need allow_generalized"
                )
        else:
            raise FormatError(f"line {lineno}: unknown gate kind {letter!r}")
        try:
            gates.append(Gate(tuple(values[:-1]), values[-1]))
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None

    try:
        return Circuit(m, n, tuple(gates), outputs)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_circuit(
    circuit: Circuit,
    allow_generalized: bool = False,
    header_comments: Iterable[str] = (),
) -> str:
    out = [f"# {comment}" for comment in header_comments]
    out.append(f"lines {circuit.m}")
    out.append(f"inputs {circuit.n}")
    out.append("outputs " + " ".join(str(i) for i in circuit.outputs))
    for gate in circuit.gates:
        k = len(gate.controls)
        if k > 2 and not allow_generalized:
            raise FormatError(
                f"gate with {k} controls is outside the basis; "
                "pass allow_generalized to serialize it"
            )
        letter = _GATE_LETTER.get(k, "x")
        fields = list(gate.controls) + [gate.target]
        out.append(letter + " " + " ".join(str(v) for v in fields))
    return "\n".join(out) + "\n"


def _parse_table(text: str, keyword: str) -> tuple[int, list[int]]:
    lines = _content_lines(text)
    n = _header_int(lines, 0, keyword)
    if n < 1:
        raise FormatError(f"`{keyword}` bit count must be at least 1")
    values: list[int] = []
    for lineno, line in lines[1:]:
        for tok in line.split():
            try:
                values.append(int(tok))
            except ValueError:
                raise FormatError(f"line {lineno}: {tok!r} is not an integer") from None
    if len(values) != 1 << n:
        raise FormatError(f"expected {1 << n} table entries, got {len(values)}")
    return n, values


def parse_permutation(text: str) -> Permutation:
    n, values = _parse_table(text, "perm")
    try:
        return Permutation(n, tuple(values))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def parse_mapping(text: str) -> BooleanMapping:
    n, values = _parse_table(text, "map")
    try:
        return BooleanMapping(n, tuple(values))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def parse_spec_table(text: str) -> BooleanMapping:
    """Accept either a permutation or a mapping file, for verification."""
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty file")
    keyword = lines[0][1].split()[0]
    if keyword == "perm":
        return parse_permutation(text)
    if keyword == "map":
        return parse_mapping(text)
    raise FormatError(f"expected a `perm` or `map` file, found {keyword!r}")


def _serialize_table(
    keyword: str, n: int, values: Iterable[int], header_comments: Iterable[str]
) -> str:
    out = [f"# {comment}" for comment in header_comments]
    out.append(f"{keyword} {n}")
    values = list(values)
    for i in range(0, len(values), 16):
        out.append(" ".join(str(v) for v in values[i : i + 16]))
    return "\n".join(out) + "\n"


def serialize_permutation(p: Permutation, header_comments: Iterable[str] = ()) -> str:
    return _serialize_table("perm", p.n, p.images, header_comments)


def serialize_mapping(f: BooleanMapping, header_comments: Iterable[str] = ()) -> str:
    return _serialize_table("map", f.n, f.images, header_comments)
