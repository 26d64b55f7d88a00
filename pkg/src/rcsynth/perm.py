"""Permutations of n-bit points: parity, cycles, and transposition grouping.

A permutation (or an arbitrary mapping) on {0, ..., 2^n - 1} is stored as an
image table.  Composition is read left to right throughout the package:
``compose(f, g)(x) == g(f(x))``, matching the order in which circuit gates
are applied.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapacityError, ParameterError


@dataclass(frozen=True)
class BooleanMapping:
    """Arbitrary function {0,...,2^n-1} -> {0,...,2^n-1} as an image table."""

    n: int
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("bit count must be at least 1")
        size = 1 << self.n
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != size:
            raise ValueError(f"expected {size} images, got {len(self.images)}")
        for v in self.images:
            if not 0 <= v < size:
                raise ValueError(f"image {v} out of range [0, {size})")

    @property
    def size(self) -> int:
        return 1 << self.n

    def __call__(self, x: int) -> int:
        return self.images[x]


@dataclass(frozen=True)
class Permutation(BooleanMapping):
    """Bijection on {0, ..., 2^n - 1}."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if len(set(self.images)) != self.size:
            raise ValueError("image table is not a bijection")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(n, tuple(range(1 << n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(1 << n))
        for cycle in cycles:
            for i, point in enumerate(cycle):
                images[point] = cycle[(i + 1) % len(cycle)]
        return cls(n, tuple(images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(self.n, tuple(inv))

    def then(self, other: "Permutation") -> "Permutation":
        """Left-to-right composition: (self.then(other))(x) == other(self(x))."""
        if self.n != other.n:
            raise ValueError("bit counts differ")
        return Permutation(self.n, tuple(other.images[v] for v in self.images))

    def is_identity(self) -> bool:
        return all(v == x for x, v in enumerate(self.images))


def moved_points(p: Permutation) -> set[int]:
    """Points x with p(x) != x."""
    return {x for x, y in enumerate(p.images) if x != y}


def cycle_decomposition(p: Permutation) -> list[tuple[int, ...]]:
    """Disjoint cycles of length >= 2, each rotated to start at its minimum,
    sorted by that minimum.  Fixed points are omitted."""
    seen = [False] * p.size
    cycles = []
    for start in range(p.size):
        if seen[start] or p.images[start] == start:
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(x)
            x = p.images[x]
        cycles.append(tuple(cycle))
    return cycles


def is_even(p: Permutation) -> bool:
    """Parity via cycle count: even iff 2^n minus the number of cycles
    (fixed points included) is even."""
    seen = [False] * p.size
    n_cycles = 0
    for start in range(p.size):
        if seen[start]:
            continue
        n_cycles += 1
        x = start
        while not seen[x]:
            seen[x] = True
            x = p.images[x]
    return (p.size - n_cycles) % 2 == 0


def parity(p: Permutation) -> str:
    return "even" if is_even(p) else "odd"


@dataclass(frozen=True)
class Transposition:
    """Swap of two n-bit points, normalized so that a < b."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ValueError("transposition needs two distinct points")
        if self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)

    @property
    def points(self) -> tuple[int, int]:
        return (self.a, self.b)

    def apply(self, x: int) -> int:
        if x == self.a:
            return self.b
        if x == self.b:
            return self.a
        return x


@dataclass(frozen=True)
class TranspositionGroup:
    """Pairwise-independent transpositions; the unit block of basic synthesis."""

    members: tuple[Transposition, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(self.members))
        pts: list[int] = []
        for t in self.members:
            pts.extend(t.points)
        if len(set(pts)) != len(pts):
            raise ValueError("transpositions in a group must be pairwise independent")

    def __len__(self) -> int:
        return len(self.members)

    @property
    def points(self) -> list[int]:
        pts: list[int] = []
        for t in self.members:
            pts.extend(t.points)
        return pts


def transpositions_product(ts: Iterable[Transposition], n: int) -> Permutation:
    """Left-to-right product of transpositions as a Permutation."""
    images = list(range(1 << n))
    for t in ts:
        images = [t.apply(v) for v in images]
    return Permutation(n, tuple(images))


def split_dependent_pair(
    t1: Transposition, t2: Transposition, n: int
) -> tuple[TranspositionGroup, TranspositionGroup]:
    """Rewrite a product of two transpositions sharing one point as two
    independent pairs, using a fresh transposition (r, s) on the two smallest
    free points: t1 * t2 == (t1 * (r,s)) * ((r,s) * t2)."""
    shared = set(t1.points) & set(t2.points)
    if len(shared) != 1:
        raise ParameterError("transpositions must share exactly one point")
    used = set(t1.points) | set(t2.points)
    free = [x for x in range(1 << n) if x not in used]
    if len(free) < 2:
        raise CapacityError(
            f"no room for a fresh transposition on {1 << n} points"
        )
    fresh = Transposition(free[0], free[1])
    return (
        TranspositionGroup((t1, fresh)),
        TranspositionGroup((fresh, t2)),
    )


def _take_from_cycle(cycle: list[int], count: int) -> tuple[list[Transposition], list[int]]:
    """Extract `count` pairwise-independent transpositions from the front of a
    cycle, 1 <= count <= len(cycle) // 2.

    (c0, c1, ..., c_{l-1}) splits as (c0,c1)(c2,c3)...(c_{2j-2},c_{2j-1})
    followed by the shorter cycle (c0, c2, ..., c_{2j-2}, c_{2j}, ..., c_{l-1}).
    """
    taken = [Transposition(cycle[2 * t], cycle[2 * t + 1]) for t in range(count)]
    tail = [cycle[2 * t] for t in range(count)] + cycle[2 * count:]
    return taken, tail


def transposition_stream(p: Permutation, K: int) -> list[TranspositionGroup]:
    """Decompose p into groups of K independent transpositions followed by
    independent pairs, preserving the left-to-right product.

    Groups are filled greedily, one pass over the outstanding cycles per
    group.  The residual that cannot fill a pair is either a lone
    transposition (odd p) or a 3-cycle, which is rewritten through
    split_dependent_pair.
    """
    if K < 2:
        raise ParameterError("group size K must be at least 2")
    groups: list[TranspositionGroup] = []
    work = [list(c) for c in cycle_decomposition(p)]

    for size in (K, 2):
        while sum(len(c) // 2 for c in work) >= size:
            batch: list[Transposition] = []
            next_work: list[list[int]] = []
            for idx, cycle in enumerate(work):
                need = size - len(batch)
                if need == 0:
                    next_work.extend(work[idx:])
                    break
                take = min(len(cycle) // 2, need)
                taken, tail = _take_from_cycle(cycle, take)
                batch.extend(taken)
                if len(tail) >= 2:
                    next_work.append(tail)
            work = next_work
            groups.append(TranspositionGroup(tuple(batch)))

    if work:
        # At most one cycle of length 2 or 3 can remain.
        assert len(work) == 1 and len(work[0]) in (2, 3)
        cycle = work[0]
        if len(cycle) == 2:
            groups.append(TranspositionGroup((Transposition(cycle[0], cycle[1]),)))
        else:
            t1 = Transposition(cycle[0], cycle[1])
            t2 = Transposition(cycle[0], cycle[2])
            groups.extend(split_dependent_pair(t1, t2, p.n))
    return groups


def plain_transpositions(p: Permutation) -> list[Transposition]:
    """Left-to-right transposition decomposition without independence:
    each cycle (c0, ..., c_{l-1}) becomes (c0,c1)(c0,c2)...(c0,c_{l-1})."""
    out: list[Transposition] = []
    for cycle in cycle_decomposition(p):
        out.extend(Transposition(cycle[0], cycle[i]) for i in range(1, len(cycle)))
    return out
