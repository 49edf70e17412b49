"""Indecomposable characters of the wreath product with S_inf.

Parameters are two weighted families of unitary representations plus an
optional leftover representation ``tau`` carrying the remaining mass
``delta``.  With the trivial group this is the classical two-sequence
parametrization of characters of S_inf.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .finite_group import (
    FormatError,
    GroupTable,
    UnitaryRep,
    group_from_json,
    load_json,
    normalized_char,
    regular_rep,
    rep_from_json,
    trivial_group,
    trivial_rep,
)
from .wreath import GeneralizedCycle, WreathElement, cycle_invariant, generalized_cycles

__all__ = [
    "ParameterError",
    "CharacterParams",
    "validate",
    "eval_cycle",
    "eval",
    "thoma",
    "params_from_json",
]

WEIGHT_TOL = 1e-12


class ParameterError(ValueError):
    """Invalid parameters; ``condition`` names the violated requirement."""

    def __init__(self, condition: str, message: str):
        super().__init__(f"[{condition}] {message}")
        self.condition = condition


@dataclass(frozen=True, eq=False)
class CharacterParams:
    group: GroupTable
    alphas: tuple[tuple[float, UnitaryRep], ...] = ()
    betas: tuple[tuple[float, UnitaryRep], ...] = ()
    tau: UnitaryRep | None = None

    @property
    def delta(self) -> float:
        mass = sum(w * r.dim for w, r in self.alphas) + sum(w * r.dim for w, r in self.betas)
        return 1.0 - mass


def _check_family(kind: str, family, group: GroupTable) -> None:
    prev = None
    for w, rep in family:
        if rep.group is not group and rep.group.order != group.order:
            raise ParameterError("common_group", f"{kind} representation is over a different group")
        if rep.dim < 1:
            raise ParameterError("positive_dimension", f"{kind} representation has dimension 0")
        if not 0.0 < w <= 1.0 + WEIGHT_TOL:
            raise ParameterError("weight_range", f"{kind} weight {w} outside (0, 1]")
        if prev is not None and w > prev + WEIGHT_TOL:
            raise ParameterError(
                "monotone_weights", f"{kind} weights must be non-increasing, got {prev} then {w}"
            )
        prev = w


def validate(p: CharacterParams) -> CharacterParams:
    """Check the parameter constraints; returns ``p`` unchanged on success.

    Irreducibility of the representations is not checked.
    """
    _check_family("alpha", p.alphas, p.group)
    _check_family("beta", p.betas, p.group)
    delta = p.delta
    if delta < -WEIGHT_TOL:
        raise ParameterError(
            "mass_bound",
            f"total mass exceeds 1: sum of weight*dim is {1.0 - delta:.12g}, delta = {delta:.12g} < 0",
        )
    if p.tau is not None:
        if p.tau.group.order != p.group.order:
            raise ParameterError("common_group", "tau is over a different group")
        if p.tau.dim < 1:
            raise ParameterError("positive_dimension", "tau has dimension 0")
    elif delta > WEIGHT_TOL:
        raise ParameterError("tau_required", f"delta = {delta:.12g} > 0 requires a representation tau")
    return p


def eval_cycle(p: CharacterParams, c: GeneralizedCycle) -> complex:
    g = p.group
    if c.length == 1:
        color = c.colors.get(c.orbit[0], g.identity)
        val = sum(w * normalized_char(r, color) for w, r in p.alphas)
        val += sum(w * normalized_char(r, color) for w, r in p.betas)
        delta = p.delta
        if p.tau is not None and delta > 0.0:
            val += delta * normalized_char(p.tau, color)
        return complex(val)
    l = c.length
    inv = cycle_invariant(c, g)
    val = sum(w**l * normalized_char(r, inv) for w, r in p.alphas)
    sgn = -1.0 if l % 2 == 0 else 1.0
    val += sgn * sum(w**l * normalized_char(r, inv) for w, r in p.betas)
    return complex(val)


def eval(p: CharacterParams, g: WreathElement) -> complex:
    out = 1.0 + 0.0j
    for c in generalized_cycles(g):
        out *= eval_cycle(p, c)
    return out


def thoma(alphas, betas=(), group: GroupTable | None = None) -> CharacterParams:
    """Character of S_inf (trivial color group) from two weight sequences."""
    group = group or trivial_group()
    one = trivial_rep(group)
    params = CharacterParams(
        group=group,
        alphas=tuple((float(a), one) for a in alphas),
        betas=tuple((float(b), one) for b in betas),
        tau=regular_rep(group),
    )
    return validate(params)


def _family_from_json(items, group, base):
    out = []
    for item in items or []:
        try:
            out.append((float(item["weight"]), rep_from_json(item["rep"], group, base)))
        except (KeyError, TypeError):
            raise FormatError("weight entries need 'weight' and 'rep'") from None
    return tuple(out)


def params_from_json(obj, group: GroupTable | None = None, base: Path | None = None) -> CharacterParams:
    """Build and validate character parameters from a parsed JSON object or a file path."""
    obj, base = load_json(obj, base)
    if obj.get("kind", "character") != "character":
        raise FormatError(f"expected kind 'character', got {obj.get('kind')!r}")
    if group is None:
        if "group" not in obj:
            raise FormatError("character params need a 'group'")
        group = group_from_json(obj["group"], base)
    tau = obj.get("tau")
    params = CharacterParams(
        group=group,
        alphas=_family_from_json(obj.get("alphas"), group, base),
        betas=_family_from_json(obj.get("betas"), group, base),
        tau=None if tau is None else rep_from_json(tau, group, base),
    )
    return validate(params)
