"""Finitely supported elements of the wreath product of a finite group with S_inf.

An element is a pair ``(s, colors)`` acting on ``{1, 2, ...} x G`` by
``(i, x) -> (s(i), colors[i] * x)``.  Under that action the product
``g1 * g2`` (apply ``g2`` first) has permutation ``s1 . s2`` and color
``colors1[s2(i)] * colors2[i]`` at position ``i``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

from .finite_group import GroupError, GroupTable
from .perm import Permutation, compose, parse_perm

__all__ = [
    "WreathElement",
    "GeneralizedCycle",
    "identity_element",
    "multiply",
    "product",
    "inverse",
    "conjugate",
    "generalized_cycles",
    "cycle_invariant",
    "normal_form",
    "parse_element",
    "parse_element_parts",
    "relabel_to_standard",
    "format_element",
]

_COLOR_RE = re.compile(r"^\s*([^@,\[\]()\s]+)\s*@\s*(\d+)\s*$")


@dataclass(frozen=True)
class WreathElement:
    """Permutation ``s`` plus a sparse coloring ``position -> group element index``.

    Identity colors are dropped on construction, so equality is structural.
    Colors are indices into a :class:`GroupTable`; ``identity_index`` records
    which index to drop.
    """

    s: Permutation
    colors: Mapping[int, int] = field(default_factory=dict)
    identity_index: int = 0

    def __post_init__(self):
        clean = {}
        for pos, c in dict(self.colors).items():
            pos, c = int(pos), int(c)
            if pos <= 0:
                raise ValueError(f"color positions must be positive, got {pos}")
            if c != self.identity_index:
                clean[pos] = c
        object.__setattr__(self, "colors", dict(sorted(clean.items())))

    def __hash__(self) -> int:
        return hash((self.s, frozenset(self.colors.items()), self.identity_index))

    def color(self, pos: int) -> int:
        return self.colors.get(pos, self.identity_index)

    def support(self) -> frozenset[int]:
        return self.s.support() | frozenset(self.colors)

    def max_point(self) -> int:
        return max(self.support(), default=0)

    def is_identity(self) -> bool:
        return self.s.is_identity() and not self.colors

    def in_base_group(self) -> bool:
        """True when the permutation part is trivial."""
        return self.s.is_identity()


@dataclass(frozen=True)
class GeneralizedCycle:
    """One orbit of the permutation part together with the colors on it.

    ``orbit`` starts at its minimum and follows the permutation.  A colored
    fixed point gives a one-point orbit with identity ``cycle_perm``.
    """

    orbit: tuple[int, ...]
    cycle_perm: Permutation
    colors: Mapping[int, int]

    @property
    def length(self) -> int:
        return len(self.orbit)

    def element(self, group: GroupTable) -> WreathElement:
        return WreathElement(self.cycle_perm, dict(self.colors), group.identity)


def identity_element(group: GroupTable) -> WreathElement:
    return WreathElement(Permutation(), {}, group.identity)


def _check_colors(g: WreathElement, group: GroupTable) -> None:
    for c in g.colors.values():
        group.check_index(c)
    if g.identity_index != group.identity:
        raise ValueError("element was built for a different identity index")


def multiply(g1: WreathElement, g2: WreathElement, group: GroupTable) -> WreathElement:
    _check_colors(g1, group)
    _check_colors(g2, group)
    s = compose(g1.s, g2.s)
    positions = set(g2.colors) | {g2.s.inverse()(p) for p in g1.colors}
    colors = {i: int(group.mul[g1.color(g2.s(i)), g2.color(i)]) for i in positions}
    return WreathElement(s, colors, group.identity)


def product(elements, group: GroupTable) -> WreathElement:
    out = identity_element(group)
    for g in elements:
        out = multiply(out, g, group)
    return out


def inverse(g: WreathElement, group: GroupTable) -> WreathElement:
    _check_colors(g, group)
    s_inv = g.s.inverse()
    colors = {g.s(p): group.inv[c] for p, c in g.colors.items()}
    return WreathElement(s_inv, colors, group.identity)


def conjugate(g: WreathElement, h: Permutation, group: GroupTable) -> WreathElement:
    """h g h^-1: the color at position i moves to h(i)."""
    _check_colors(g, group)
    s = compose(compose(h, g.s), h.inverse())
    colors = {h(p): c for p, c in g.colors.items()}
    return WreathElement(s, colors, group.identity)


def generalized_cycles(g: WreathElement) -> list[GeneralizedCycle]:
    """Split ``g`` into commuting pieces with disjoint supports, ordered by minimum."""
    parts = []
    covered: set[int] = set()
    for orbit in g.s.cycles():
        covered.update(orbit)
        colors = {p: g.colors[p] for p in orbit if p in g.colors}
        parts.append(GeneralizedCycle(tuple(orbit), g.s.restrict_to(orbit), colors))
    for p, c in g.colors.items():
        if p not in covered:
            parts.append(GeneralizedCycle((p,), Permutation(), {p: c}))
    parts.sort(key=lambda part: part.orbit[0])
    return parts


def cycle_invariant(c: GeneralizedCycle, group: GroupTable) -> int:
    """Ordered color product gamma_k gamma_{s^-1 k} gamma_{s^-2 k} ... with k the orbit minimum."""
    k = min(c.orbit)
    s_inv = c.cycle_perm.inverse()
    out = group.identity
    pos = k
    for _ in range(len(c.orbit)):
        out = int(group.mul[out, c.colors.get(pos, group.identity)])
        pos = s_inv(pos)
    return out


def normal_form(c: GeneralizedCycle, group: GroupTable) -> WreathElement:
    """Relabel a generalized cycle onto {1..n} so its permutation is the long cycle 1->2->...->n.

    Position ``s^j(k)`` (``k`` the orbit minimum) is sent to ``j + 1``.  The
    result is the conjugate of the cycle by a permutation mapping the orbit
    onto ``{1..n}``.
    """
    h = relabel_to_standard(c)
    return conjugate(c.element(group), h, group)


def relabel_to_standard(c: GeneralizedCycle) -> Permutation:
    """A finite permutation sending ``s^j(k)`` to ``j + 1`` for the orbit of ``c``."""
    target = {p: j + 1 for j, p in enumerate(c.orbit)}
    # complete the partial injection to a bijection by pairing the leftovers
    src_rest = sorted(set(target.values()) - set(target))
    dst_rest = sorted(set(target) - set(target.values()))
    target.update(zip(src_rest, dst_rest))
    return Permutation(target)


def parse_element_parts(text: str) -> tuple[Permutation, dict[int, str]]:
    """Split ``<perm>[<name>@<pos>,...]`` into a permutation and ``position -> color name``."""
    s = text.strip()
    colors: dict[int, str] = {}
    if s.endswith("]"):
        open_at = s.rfind("[")
        if open_at < 0:
            raise ValueError(f"unbalanced brackets in {text!r}")
        body = s[open_at + 1:-1]
        s = s[:open_at]
        if body.strip():
            for item in body.split(","):
                m = _COLOR_RE.match(item)
                if not m:
                    raise ValueError(f"malformed color {item!r} in {text!r}")
                name, pos = m.group(1), int(m.group(2))
                if pos <= 0:
                    raise ValueError(f"color position must be positive in {text!r}")
                if pos in colors:
                    raise ValueError(f"position {pos} colored twice in {text!r}")
                colors[pos] = name
    elif "[" in s or "]" in s:
        raise ValueError(f"unbalanced brackets in {text!r}")
    perm = parse_perm(s) if s.strip() else Permutation()
    return perm, colors


def parse_element(text: str, group: GroupTable) -> WreathElement:
    """Parse ``<perm>[<name>@<pos>,...]``; the bracket part is optional."""
    perm, names = parse_element_parts(text)
    try:
        colors = {pos: group.index(name) for pos, name in names.items()}
    except GroupError as exc:
        raise ValueError(f"{exc} in {text!r}") from None
    return WreathElement(perm, colors, group.identity)


def format_element(g: WreathElement, group: GroupTable) -> str:
    _check_colors(g, group)
    text = str(g.s)
    if g.colors:
        text += "[" + ",".join(f"{group.name(c)}@{p}" for p, c in g.colors.items()) + "]"
    return text
