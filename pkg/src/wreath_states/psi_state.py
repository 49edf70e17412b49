"""States built from a self-adjoint trace-class operator, a unitary representation and a kernel vector.

The parameters live on a finite truncation: a "pm" block carrying the
nonzero spectrum of ``A`` together with the representation ``rho``, and an
optional regular block ``K`` (representation ``rho11``, unit vector ``xi``)
that carries the leftover mass ``1 - Tr|A|``.

Values on generalized cycles come from closed forms; :mod:`fock_oracle`
computes the same numbers by brute-force tensor traces.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from . import cmatrix as cm
from .characters import CharacterParams, ParameterError
from .characters import validate as validate_character
from .finite_group import (
    FormatError,
    GroupTable,
    UnitaryRep,
    empty_rep,
    group_from_json,
    group_to_json,
    load_json,
    rep_from_json,
    rep_to_json,
)
from .wreath import GeneralizedCycle, WreathElement, generalized_cycles

__all__ = [
    "ParameterError",
    "RegularPart",
    "StateParams",
    "SpectralData",
    "KmsResult",
    "validate",
    "eval_singleton",
    "eval_cycle",
    "eval",
    "check_kms",
    "conjugate_params",
    "params_for_phi_sp",
    "params_for_phi_reg",
    "params_from_character",
    "params_from_json",
    "params_to_json",
]

STRUCT_TOL = 1e-10
TRACE_TOL = 1e-12
KERNEL_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class RegularPart:
    """Truncated regular block ``K (x) C^copies``; only ``rho11`` and ``xi`` enter the values."""

    rho11: UnitaryRep
    xi: np.ndarray
    copies: int = 1

    def __post_init__(self):
        xi = np.asarray(self.xi, dtype=np.complex128).reshape(-1)
        xi.setflags(write=False)
        object.__setattr__(self, "xi", xi)

    @property
    def k_dim(self) -> int:
        return self.rho11.dim

    def overlap(self, g: int) -> complex:
        """<rho11(g) xi, xi>."""
        return complex(np.vdot(self.xi, self.rho11(g) @ self.xi))


@dataclass(frozen=True)
class SpectralData:
    """Eigenbasis of ``A`` adapted to the positive and negative blocks.

    Columns of ``vectors`` are ordered by descending eigenvalue; ``minus``
    marks the columns lying in the negative block.
    """

    eigvals: np.ndarray
    vectors: np.ndarray
    minus: np.ndarray
    plus_basis: np.ndarray
    minus_basis: np.ndarray
    remainder_dim: int


@dataclass(frozen=True, eq=False)
class StateParams:
    group: GroupTable
    A: np.ndarray
    rho: UnitaryRep
    reg: RegularPart | None = None
    pm_kernel_ok: bool = False

    def __post_init__(self):
        a = np.array(self.A, dtype=np.complex128)
        if a.size == 0:
            a = a.reshape(0, 0)
        a.setflags(write=False)
        object.__setattr__(self, "A", a)

    @property
    def pm_dim(self) -> int:
        return int(self.A.shape[0])

    @cached_property
    def abs_A(self) -> np.ndarray:
        return cm.abs_op(self.A) if self.pm_dim else np.zeros((0, 0), dtype=np.complex128)

    @cached_property
    def eigvals(self) -> np.ndarray:
        return cm.hermitian_eig(self.A, tol=1e-9)[0] if self.pm_dim else np.zeros(0)

    @cached_property
    def trace_abs(self) -> float:
        return float(np.real(np.trace(self.abs_A)))

    @property
    def reg_mass(self) -> float:
        return max(0.0, 1.0 - self.trace_abs)

    @cached_property
    def spectral(self) -> SpectralData:
        return _spectral_data(self)

    @cached_property
    def plus_proj(self) -> np.ndarray:
        b = self.spectral.plus_basis
        return b @ b.conj().T

    @cached_property
    def minus_proj(self) -> np.ndarray:
        b = self.spectral.minus_basis
        return b @ b.conj().T


def _algebra_closure(start: np.ndarray, p: StateParams) -> np.ndarray:
    """Smallest subspace containing ``start`` and invariant under ``A`` and every ``rho(g)``."""
    basis = cm.orthonormal_basis(start) if start.shape[1] else start
    while True:
        if basis.shape[1] == 0:
            return basis
        pieces = [basis, p.A @ basis] + [m @ basis for m in p.rho.mats]
        grown = cm.orthonormal_basis(np.hstack(pieces))
        if grown.shape[1] == basis.shape[1]:
            return grown
        basis = grown


def _diagonalize_on(basis: np.ndarray, a: np.ndarray):
    if basis.shape[1] == 0:
        return np.zeros(0), basis
    w, v = cm.hermitian_eig(basis.conj().T @ a @ basis, tol=1e-9)
    return w, basis @ v


def _spectral_data(p: StateParams) -> SpectralData:
    n = p.pm_dim
    if n == 0:
        empty = np.zeros((0, 0), dtype=np.complex128)
        return SpectralData(np.zeros(0), empty, np.zeros(0, dtype=bool), empty, empty, 0)
    w, v = cm.hermitian_eig(p.A, tol=1e-9)
    pos, neg = v[:, w > KERNEL_TOL], v[:, w < -KERNEL_TOL]
    if p.pm_kernel_ok:
        plus_b, minus_b = _algebra_closure(pos, p), _algebra_closure(neg, p)
    else:
        plus_b, minus_b = pos, neg
    wp, vp = _diagonalize_on(plus_b, p.A)
    wm, vm = _diagonalize_on(minus_b, p.A)
    cols = [vp, vm]
    vals = [wp, wm]
    labels = [np.zeros(len(wp), dtype=bool), np.ones(len(wm), dtype=bool)]
    covered = np.hstack(cols)
    remainder = 0
    if covered.shape[1] < n:
        # directions outside both blocks (only when validation will fail); keep the basis complete
        rest = np.eye(n) - covered @ covered.conj().T
        extra = cm.orthonormal_basis(rest)
        we, ve = _diagonalize_on(extra, p.A)
        cols.append(ve)
        vals.append(we)
        labels.append(np.zeros(len(we), dtype=bool))
        remainder = len(we)
    eig = np.concatenate(vals)
    vecs = np.hstack(cols)
    minus = np.concatenate(labels)
    order = np.lexsort((minus, -eig))
    return SpectralData(eig[order], vecs[:, order], minus[order], plus_b, minus_b, remainder)


# -- validation --

def validate(p: StateParams) -> StateParams:
    """Check the truncated parameter conditions; returns ``p`` on success.

    Raises :class:`ParameterError` whose ``condition`` is one of
    ``shape``, ``hermitian``, ``trace_bound``, ``regular_part``, ``kernel``,
    ``spectral_blocks`` or ``cyclicity``.
    """
    n = p.pm_dim
    if p.A.shape != (n, n):
        raise ParameterError("shape", f"A must be square, got shape {p.A.shape}")
    if p.rho.dim != n:
        raise ParameterError("shape", f"rho has dimension {p.rho.dim} but A is {n}x{n}")
    if p.rho.group.order != p.group.order:
        raise ParameterError("shape", "rho is over a different group")
    if n and not cm.is_hermitian(p.A, cm.HERMITIAN_TOL * max(1.0, float(np.max(np.abs(p.A))))):
        raise ParameterError("hermitian", "A is not self-adjoint")
    tr = p.trace_abs
    if tr > 1.0 + TRACE_TOL:
        raise ParameterError("trace_bound", f"Tr|A| = {tr:.12g} > 1")
    _validate_reg(p, tr)
    if _has_kernel(p) and not p.pm_kernel_ok:
        raise ParameterError(
            "kernel", "A has a zero eigenvalue on the pm block; the kernel must live in the regular block"
        )
    if n == 0:
        return p
    sd = p.spectral
    if p.pm_kernel_ok:
        cross = sd.plus_basis.conj().T @ sd.minus_basis
        if cross.size and float(np.max(np.abs(cross))) > STRUCT_TOL:
            raise ParameterError(
                "spectral_blocks", "the subspaces generated from the positive and negative spectrum overlap"
            )
        if sd.remainder_dim:
            raise ParameterError(
                "cyclicity",
                f"the range of A does not generate the pm block ({n - sd.remainder_dim} of {n} dimensions)",
            )
    else:
        for proj, name in ((p.plus_proj, "positive"), (p.minus_proj, "negative")):
            for g, m in enumerate(p.rho.mats):
                if float(np.max(np.abs(m @ proj - proj @ m))) > STRUCT_TOL:
                    raise ParameterError(
                        "spectral_blocks",
                        f"rho({p.group.name(g)}) does not commute with the {name} spectral projection of A",
                    )
    return p


def _has_kernel(p: StateParams) -> bool:
    return bool(np.any(np.abs(p.eigvals) <= KERNEL_TOL))


def _validate_reg(p: StateParams, tr: float) -> None:
    reg = p.reg
    if reg is None:
        if tr < 1.0 - TRACE_TOL:
            raise ParameterError(
                "regular_part", f"Tr|A| = {tr:.12g} < 1 requires a regular block carrying the remaining mass"
            )
        return
    if reg.rho11.group.order != p.group.order:
        raise ParameterError("regular_part", "rho11 is over a different group")
    if reg.k_dim < 1:
        raise ParameterError("regular_part", "the regular block needs positive dimension")
    if reg.xi.shape != (reg.k_dim,):
        raise ParameterError("regular_part", f"xi has length {reg.xi.size}, expected {reg.k_dim}")
    if abs(np.linalg.norm(reg.xi) - 1.0) > STRUCT_TOL:
        raise ParameterError("regular_part", f"xi must be a unit vector, |xi| = {np.linalg.norm(reg.xi):.12g}")
    if int(reg.copies) < 1:
        raise ParameterError("regular_part", "copies must be at least 1")


# -- evaluation --

def eval_singleton(p: StateParams, g: int) -> complex:
    val = complex(np.trace(p.rho(g) @ p.abs_A)) if p.pm_dim else 0j
    if p.reg is not None:
        val += p.reg_mass * p.reg.overlap(g)
    return val


def cycle_color_order(c: GeneralizedCycle) -> list[int]:
    """Positions k, s^-1 k, s^-2 k, ... starting at the orbit minimum."""
    k = min(c.orbit)
    s_inv = c.cycle_perm.inverse()
    out, pos = [], k
    for _ in range(c.length):
        out.append(pos)
        pos = s_inv(pos)
    return out


def eval_cycle(p: StateParams, c: GeneralizedCycle) -> complex:
    if c.length < 2:
        raise ValueError("one-point orbits are evaluated by eval_singleton")
    if p.pm_dim == 0:
        return 0j
    prod = np.eye(p.pm_dim, dtype=np.complex128)
    for pos in cycle_color_order(c):
        prod = prod @ p.rho(c.colors.get(pos, p.group.identity)) @ p.abs_A
    plus = complex(np.trace(p.plus_proj @ prod))
    minus = complex(np.trace(p.minus_proj @ prod))
    sign = -1.0 if c.length % 2 == 0 else 1.0
    return plus + sign * minus


def eval(p: StateParams, g: WreathElement) -> complex:
    out = 1.0 + 0.0j
    for c in generalized_cycles(g):
        if c.length == 1:
            out *= eval_singleton(p, c.colors.get(c.orbit[0], p.group.identity))
        else:
            out *= eval_cycle(p, c)
    return out


# -- KMS --

@dataclass(frozen=True)
class KmsResult:
    kms: bool
    kernel_ok: bool
    cyclic: bool
    separating: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.kms


def check_kms(p: StateParams) -> KmsResult:
    """Decide the KMS property: no kernel of A in the pm block, and xi cyclic and separating for rho11."""
    kernel_ok = not _has_kernel(p)
    if p.reg is None:
        cyclic = separating = True
    else:
        orbit = np.column_stack([m @ p.reg.xi for m in p.reg.rho11.mats])
        orbit_rank = cm.rank(orbit, STRUCT_TOL)
        span_rank = cm.rank(np.column_stack([m.reshape(-1) for m in p.reg.rho11.mats]), STRUCT_TOL)
        cyclic = orbit_rank == p.reg.k_dim
        separating = orbit_rank == span_rank
    reasons = []
    if not kernel_ok:
        reasons.append("A has a kernel inside the pm block")
    if not cyclic:
        reasons.append("xi is not cyclic for rho11")
    if not separating:
        reasons.append("xi is not separating for the algebra spanned by rho11")
    ok = kernel_ok and cyclic and separating
    return KmsResult(ok, kernel_ok, cyclic, separating, "; ".join(reasons))


# -- constructions --

def conjugate_params(p: StateParams, v) -> StateParams:
    """Transport the parameters by a unitary ``v`` acting blockwise on pm (+) K."""
    v = cm.as_matrix(v)
    n = p.pm_dim
    k = p.reg.k_dim if p.reg is not None else 0
    if v.shape != (n + k, n + k):
        raise ParameterError("shape", f"unitary must be {(n + k, n + k)}, got {v.shape}")
    if not cm.is_unitary(v, STRUCT_TOL):
        raise ParameterError("unitary", "conjugating matrix is not unitary")
    if (n and k) and (np.max(np.abs(v[:n, n:])) > STRUCT_TOL or np.max(np.abs(v[n:, :n])) > STRUCT_TOL):
        raise ParameterError("unitary", "conjugating matrix mixes the pm and regular blocks")
    vp, vk = v[:n, :n], v[n:, n:]
    rho = UnitaryRep.build(p.group, [vp @ m @ vp.conj().T for m in p.rho.mats])
    reg = None
    if p.reg is not None:
        rho11 = UnitaryRep.build(p.group, [vk @ m @ vk.conj().T for m in p.reg.rho11.mats])
        reg = RegularPart(rho11, vk @ p.reg.xi, p.reg.copies)
    out = StateParams(p.group, vp @ p.A @ vp.conj().T, rho, reg, p.pm_kernel_ok)
    return validate(out)


def _unit(xi, dim: int) -> np.ndarray:
    xi = np.asarray(xi, dtype=np.complex128).reshape(-1)
    if xi.shape != (dim,):
        raise ParameterError("shape", f"vector has length {xi.size}, expected {dim}")
    if abs(np.linalg.norm(xi) - 1.0) > STRUCT_TOL:
        raise ParameterError("unit_vector", f"vector must have norm 1, got {np.linalg.norm(xi):.12g}")
    return xi


def params_for_phi_sp(rep: UnitaryRep, xi) -> StateParams:
    """Parameters of the state whose value on ``s gamma`` is the product of <rep(gamma_k) xi, xi>.

    ``A`` is the rank-one projection onto ``xi`` restricted to the cyclic
    subspace generated by ``xi``; its kernel there is allowed.
    """
    xi = _unit(xi, rep.dim)
    q = cm.orthonormal_basis(np.column_stack([m @ xi for m in rep.mats]))
    mats = [q.conj().T @ m @ q for m in rep.mats]
    x = q.conj().T @ xi
    p = StateParams(rep.group, np.outer(x, x.conj()), UnitaryRep.build(rep.group, mats), None, True)
    return validate(p)


def params_for_phi_reg(rep: UnitaryRep, xi, copies: int = 1) -> StateParams:
    """Parameters of the state vanishing off the base group and equal to <rep(gamma) xi, xi> on it."""
    xi = _unit(xi, rep.dim)
    g = rep.group
    p = StateParams(g, np.zeros((0, 0)), empty_rep(g), RegularPart(rep, xi, copies))
    return validate(p)


def params_from_character(cp: CharacterParams, copies: int = 1) -> StateParams:
    """State parameters realizing a character whose weighted representations are one-dimensional."""
    validate_character(cp)
    g = cp.group
    fam = [(w, r) for w, r in cp.alphas] + [(-w, r) for w, r in cp.betas]
    if any(r.dim != 1 for _, r in fam):
        raise ParameterError("one_dimensional", "only one-dimensional weighted representations are supported")
    a = np.diag([w for w, _ in fam]).astype(np.complex128)
    mats = [np.diag([complex(r(h)[0, 0]) for _, r in fam]) if fam else np.zeros((0, 0)) for h in range(g.order)]
    rho = UnitaryRep.build(g, mats) if fam else empty_rep(g)
    reg = None
    if cp.delta > TRACE_TOL:
        tau = cp.tau
        d = tau.dim
        rho11 = UnitaryRep.build(g, [np.kron(m, np.eye(d)) for m in tau.mats])
        reg = RegularPart(rho11, np.eye(d).reshape(-1) / np.sqrt(d), copies)
    return validate(StateParams(g, a, rho, reg))


# -- JSON --

def _vector_from_json(obj) -> np.ndarray:
    out = []
    for x in obj:
        if isinstance(x, (list, tuple)):
            if len(x) != 2:
                raise FormatError(f"complex entry must be [re, im], got {x!r}")
            out.append(complex(float(x[0]), float(x[1])))
        else:
            out.append(complex(float(x)))
    return np.array(out, dtype=np.complex128)


def params_from_json(obj, group: GroupTable | None = None, base: Path | None = None) -> StateParams:
    obj, base = load_json(obj, base)
    if obj.get("kind", "state") != "state":
        raise FormatError(f"expected kind 'state', got {obj.get('kind')!r}")
    if group is None:
        if "group" not in obj:
            raise FormatError("state params need a 'group'")
        group = group_from_json(obj["group"], base)
    pm = obj.get("pm")
    if pm:
        try:
            a = cm.matrix_from_literal(pm["A"])
        except KeyError:
            raise FormatError("'pm' needs 'A' and 'rho'") from None
        except cm.MatrixError as exc:
            raise FormatError(str(exc)) from None
        if a.size == 0:
            a = np.zeros((0, 0))
        rho = rep_from_json(pm["rho"], group, base) if "rho" in pm else None
        if rho is None:
            raise FormatError("'pm' needs 'A' and 'rho'")
    else:
        a, rho = np.zeros((0, 0)), empty_rep(group)
    reg = None
    if obj.get("reg") is not None:
        r = obj["reg"]
        try:
            reg = RegularPart(
                rep_from_json(r["rho11"], group, base),
                _vector_from_json(r["xi"]),
                int(r.get("copies", 1)),
            )
        except (KeyError, TypeError):
            raise FormatError("'reg' needs 'rho11' and 'xi'") from None
    p = StateParams(group, a, rho, reg, bool(obj.get("pm_kernel_ok", False)))
    return validate(p)


def params_to_json(p: StateParams) -> dict:
    out = {
        "kind": "state",
        "group": group_to_json(p.group),
        "pm": {"A": cm.matrix_to_literal(p.A), "rho": rep_to_json(p.rho)} if p.pm_dim else None,
        "reg": None,
    }
    if p.reg is not None:
        out["reg"] = {
            "rho11": rep_to_json(p.reg.rho11),
            "xi": [[float(z.real), float(z.imag)] for z in p.reg.xi],
            "copies": int(p.reg.copies),
        }
    if p.pm_kernel_ok:
        out["pm_kernel_ok"] = True
    return out
