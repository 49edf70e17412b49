"""Finite-support permutations of the positive integers."""

from __future__ import annotations

import re
from typing import Iterable, Mapping

__all__ = [
    "Permutation",
    "from_cycles",
    "compose",
    "inverse",
    "omega",
    "sigma",
    "transposition",
    "parse_perm",
]

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """A bijection of {1, 2, ...} moving only finitely many points.

    Only moved points are stored; any constructor strips fixed points so
    that equality and hashing are structural.
    """

    __slots__ = ("_map", "_hash")

    def __init__(self, mapping: Mapping[int, int] | None = None):
        moved = {}
        for k, v in (mapping or {}).items():
            k, v = int(k), int(v)
            if k <= 0 or v <= 0:
                raise ValueError(f"points must be positive integers, got {k}->{v}")
            if k != v:
                moved[k] = v
        if set(moved) != set(moved.values()):
            raise ValueError("mapping is not a bijection of its support")
        self._map = moved
        self._hash = None

    # -- basic protocol --

    def __call__(self, i: int) -> int:
        return self.apply(i)

    def apply(self, i: int) -> int:
        if i <= 0:
            raise ValueError(f"points are positive integers, got {i}")
        return self._map.get(i, i)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._map == other._map

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._map.items()))
        return self._hash

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __repr__(self) -> str:
        return f"Permutation({self})"

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    @property
    def mapping(self) -> dict[int, int]:
        return dict(self._map)

    def items(self):
        return self._map.items()

    def is_identity(self) -> bool:
        return not self._map

    def support(self) -> frozenset[int]:
        return frozenset(self._map)

    def max_point(self) -> int:
        return max(self._map, default=0)

    def inverse(self) -> "Permutation":
        return Permutation({v: k for k, v in self._map.items()})

    def cycles(self) -> list[list[int]]:
        """Orbits of length >= 2, each starting at its minimum, sorted by minimum."""
        seen: set[int] = set()
        out = []
        for start in sorted(self._map):
            if start in seen:
                continue
            orbit = [start]
            seen.add(start)
            nxt = self._map[start]
            while nxt != start:
                orbit.append(nxt)
                seen.add(nxt)
                nxt = self._map[nxt]
            out.append(orbit)
        return out

    def cycle_type(self) -> list[int]:
        return sorted((len(c) for c in self.cycles()), reverse=True)

    def sign(self) -> int:
        parity = sum(len(c) - 1 for c in self.cycles()) % 2
        return -1 if parity else 1

    def restrict_to(self, orbit: Iterable[int]) -> "Permutation":
        """The permutation acting as self on ``orbit`` and fixing everything else."""
        pts = set(orbit)
        return Permutation({k: v for k, v in self._map.items() if k in pts})

    def to_array(self, n: int) -> list[int]:
        """Zero-based image list on {1..n}; requires support within 1..n."""
        if self.max_point() > n:
            raise ValueError(f"permutation moves points beyond {n}")
        return [self.apply(i) - 1 for i in range(1, n + 1)]


def from_cycles(cycles: Iterable[Iterable[int]]) -> Permutation:
    """Product of disjoint cycles; singletons are accepted and ignored."""
    mapping: dict[int, int] = {}
    used: set[int] = set()
    for cyc in cycles:
        cyc = [int(x) for x in cyc]
        for x in cyc:
            if x <= 0:
                raise ValueError(f"cycle entries must be positive, got {x}")
            if x in used:
                raise ValueError(f"cycles overlap at point {x}")
            used.add(x)
        if len(cyc) < 2:
            continue
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            mapping[a] = b
    return Permutation(mapping)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """(a . b)(i) = a(b(i))."""
    pts = set(a._map) | set(b._map)
    return Permutation({i: a.apply(b.apply(i)) for i in pts})


def inverse(a: Permutation) -> Permutation:
    return a.inverse()


def transposition(i: int, j: int) -> Permutation:
    if i == j:
        raise ValueError("transposition needs two distinct points")
    return from_cycles([[i, j]])


def omega(n: int) -> Permutation:
    """Swap the blocks {1..n} and {n+1..2n} pointwise."""
    if n < 1:
        raise ValueError("omega(n) needs n >= 1")
    m = {i: i + n for i in range(1, n + 1)}
    m.update({i: i - n for i in range(n + 1, 2 * n + 1)})
    return Permutation(m)


def sigma(n: int) -> Permutation:
    """The long cycle 1 -> 2 -> ... -> n -> 1."""
    if n < 1:
        raise ValueError("sigma(n) needs n >= 1")
    return from_cycles([list(range(1, n + 1))])


def parse_perm(text: str) -> Permutation:
    """Parse cycle notation such as ``(1 2)(3 4 5)``; ``()`` is the identity."""
    s = text.strip()
    if not s:
        raise ValueError("empty permutation text")
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(s):
        if s[pos:m.start()].strip():
            raise ValueError(f"unexpected text {s[pos:m.start()]!r} in {text!r}")
        body = m.group(1).replace(",", " ").split()
        try:
            cycles.append([int(x) for x in body])
        except ValueError:
            raise ValueError(f"non-integer entry in cycle {m.group(0)!r}") from None
        pos = m.end()
    if s[pos:].strip() or not cycles:
        raise ValueError(f"malformed permutation {text!r}")
    return from_cycles(cycles)
