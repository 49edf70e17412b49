"""Finite groups given by multiplication tables, and their unitary representations."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import cmatrix as cm

__all__ = [
    "GroupError",
    "FormatError",
    "GroupTable",
    "UnitaryRep",
    "MAX_ORDER",
    "validate_table",
    "trivial_group",
    "cyclic",
    "symmetric3",
    "regular_rep",
    "trivial_rep",
    "cyclic_irrep",
    "sign_rep_s3",
    "standard_rep_s3",
    "direct_sum",
    "tensor_rep",
    "empty_rep",
    "normalized_char",
    "load_json",
    "group_from_json",
    "group_to_json",
    "rep_from_json",
    "rep_to_json",
]

MAX_ORDER = 64
REP_TOL = 1e-10


class GroupError(ValueError):
    """Raised for malformed group tables and representations."""


class FormatError(GroupError):
    """Input that cannot be read or does not have the expected JSON structure."""


@dataclass(frozen=True, eq=False)
class GroupTable:
    names: tuple[str, ...]
    mul: np.ndarray
    identity: int
    inv: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return self.order

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise GroupError(f"unknown group element {name!r}") from None

    def name(self, g: int) -> str:
        return self.names[g]

    def product(self, *elems: int) -> int:
        out = self.identity
        for g in elems:
            out = int(self.mul[out, g])
        return out

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def check_index(self, g: int) -> int:
        if not 0 <= int(g) < self.order:
            raise GroupError(f"element index {g} out of range for group of order {self.order}")
        return int(g)


def validate_table(names: Sequence[str], mul) -> GroupTable:
    """Check a multiplication table exhaustively and return the group.

    Identity and inverses are inferred; associativity is checked on all
    triples, which is why the order is capped at MAX_ORDER.
    """
    names = tuple(str(n) for n in names)
    n = len(names)
    if n == 0:
        raise GroupError("group must have at least one element")
    if n > MAX_ORDER:
        raise GroupError(f"group order {n} exceeds the supported maximum {MAX_ORDER}")
    if len(set(names)) != n:
        raise GroupError("element names must be distinct")
    for nm in names:
        if not nm or any(c in nm for c in "@,[]() \t"):
            raise GroupError(f"element name {nm!r} contains reserved characters")
    table = np.asarray(mul, dtype=np.int64)
    if table.shape != (n, n):
        raise GroupError(f"multiplication table must be {n}x{n}, got {table.shape}")
    if table.min() < 0 or table.max() >= n:
        raise GroupError("multiplication table entries out of range")
    # each row and column is a permutation (Latin square)
    for i in range(n):
        if len(set(table[i].tolist())) != n or len(set(table[:, i].tolist())) != n:
            raise GroupError(f"row/column {i} of the table is not a permutation")
    ids = [e for e in range(n) if np.array_equal(table[e], np.arange(n))
           and np.array_equal(table[:, e], np.arange(n))]
    if not ids:
        raise GroupError("no identity element")
    e = ids[0]
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a, b], c] != table[a, table[b, c]]:
            raise GroupError(
                f"associativity fails for ({names[a]}, {names[b]}, {names[c]})"
            )
    inv = tuple(int(np.flatnonzero(table[a] == e)[0]) for a in range(n))
    table.setflags(write=False)
    return GroupTable(names=names, mul=table, identity=e, inv=inv)


def trivial_group() -> GroupTable:
    return validate_table(["e"], [[0]])


def cyclic(n: int) -> GroupTable:
    """Z/n with names e, a, a2, a3, ..."""
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    names = ["e", "a"] + [f"a{k}" for k in range(2, n)]
    names = names[:n]
    mul = [[(i + j) % n for j in range(n)] for i in range(n)]
    return validate_table(names, mul)


# S3 as permutations of {0,1,2}, stored in one-line notation
_S3_ELEMS = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]
_S3_NAMES = ["e", "t12", "t23", "t13", "c123", "c132"]


def symmetric3() -> GroupTable:
    idx = {p: i for i, p in enumerate(_S3_ELEMS)}

    def comp(p, q):  # (p . q)(i) = p(q(i))
        return tuple(p[q[i]] for i in range(3))

    mul = [[idx[comp(p, q)] for q in _S3_ELEMS] for p in _S3_ELEMS]
    return validate_table(_S3_NAMES, mul)


@dataclass(frozen=True, eq=False)
class UnitaryRep:
    group: GroupTable
    mats: tuple[np.ndarray, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return int(self.mats[0].shape[0])

    def __call__(self, g: int) -> np.ndarray:
        return self.mats[g]

    @classmethod
    def build(cls, group: GroupTable, mats, tol: float = REP_TOL) -> "UnitaryRep":
        """Validate and freeze one matrix per group element."""
        mats = [np.array(m, dtype=np.complex128) for m in mats]
        if len(mats) != group.order:
            raise GroupError(f"need {group.order} matrices, got {len(mats)}")
        d = mats[0].shape[0] if mats[0].ndim == 2 else -1
        for g, m in enumerate(mats):
            if m.shape != (d, d):
                raise GroupError(f"matrix for {group.name(g)} has shape {m.shape}, expected {(d, d)}")
        if d > 0:
            for g, m in enumerate(mats):
                if not cm.is_unitary(m, tol):
                    raise GroupError(f"matrix for {group.name(g)} is not unitary")
            if np.max(np.abs(mats[group.identity] - np.eye(d))) > tol:
                raise GroupError("identity element is not represented by the identity matrix")
            for g, h in itertools.product(range(group.order), repeat=2):
                gh = int(group.mul[g, h])
                if np.max(np.abs(mats[g] @ mats[h] - mats[gh])) > tol:
                    raise GroupError(
                        f"homomorphism fails at ({group.name(g)}, {group.name(h)})"
                    )
        for m in mats:
            m.setflags(write=False)
        return cls(group=group, mats=tuple(mats))


def empty_rep(group: GroupTable) -> UnitaryRep:
    """The zero-dimensional representation."""
    return UnitaryRep.build(group, [np.zeros((0, 0))] * group.order)


def trivial_rep(group: GroupTable) -> UnitaryRep:
    return UnitaryRep.build(group, [np.eye(1)] * group.order)


def regular_rep(group: GroupTable) -> UnitaryRep:
    """Left translation on l2(G): basis vector delta_h goes to delta_{gh}."""
    n = group.order
    mats = []
    for g in range(n):
        m = np.zeros((n, n))
        for h in range(n):
            m[group.mul[g, h], h] = 1.0
        mats.append(m)
    return UnitaryRep.build(group, mats)


def cyclic_irrep(n: int, j: int, group: GroupTable | None = None) -> UnitaryRep:
    """Character k -> exp(2 pi i j k / n) of the cyclic group of order n."""
    if not 0 <= j < n:
        raise GroupError(f"irrep index must satisfy 0 <= j < {n}, got {j}")
    group = group or cyclic(n)
    if group.order != n:
        raise GroupError("group order does not match n")
    mats = [np.array([[np.exp(2j * np.pi * j * k / n)]]) for k in range(n)]
    return UnitaryRep.build(group, mats)


def _perm_matrix(p) -> np.ndarray:
    m = np.zeros((3, 3))
    for i in range(3):
        m[p[i], i] = 1.0
    return m


def sign_rep_s3(group: GroupTable | None = None) -> UnitaryRep:
    group = group or symmetric3()
    mats = [np.array([[np.linalg.det(_perm_matrix(p))]]) for p in _S3_ELEMS]
    return UnitaryRep.build(group, mats)


def standard_rep_s3(group: GroupTable | None = None) -> UnitaryRep:
    """Two-dimensional irreducible representation of S3 (permutation rep minus trivial)."""
    group = group or symmetric3()
    # orthonormal basis of the sum-zero plane
    basis = np.array([[1, -1, 0], [1, 1, -2]], dtype=float).T
    basis /= np.linalg.norm(basis, axis=0)
    mats = [basis.T @ _perm_matrix(p) @ basis for p in _S3_ELEMS]
    return UnitaryRep.build(group, mats)


def direct_sum(r1: UnitaryRep, r2: UnitaryRep) -> UnitaryRep:
    if r1.group is not r2.group and r1.group.order != r2.group.order:
        raise GroupError("representations of different groups")
    return UnitaryRep.build(r1.group, [cm.direct_sum(a, b) for a, b in zip(r1.mats, r2.mats)])


def tensor_rep(r1: UnitaryRep, r2: UnitaryRep) -> UnitaryRep:
    if r1.group.order != r2.group.order:
        raise GroupError("representations of different groups")
    return UnitaryRep.build(r1.group, [np.kron(a, b) for a, b in zip(r1.mats, r2.mats)])


def normalized_char(r: UnitaryRep, g: int) -> complex:
    """trace / dim."""
    if r.dim == 0:
        raise GroupError("normalized character of a zero-dimensional representation")
    return complex(np.trace(r.mats[g]) / r.dim)


# -- JSON --

def load_json(obj, base: Path | None = None):
    """Return ``(parsed, directory)``; strings and paths are read as files relative to ``base``."""
    if isinstance(obj, (str, Path)):
        path = Path(obj)
        if base is not None and not path.is_absolute():
            path = base / path
        try:
            return json.loads(path.read_text()), path.parent
        except OSError as exc:
            raise FormatError(f"cannot read {path}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path} is not valid JSON: {exc}") from None
    return obj, base


def group_from_json(obj, base: Path | None = None) -> GroupTable:
    obj, _ = load_json(obj, base)
    try:
        names = obj["names"]
        mul = obj["mul"]
    except (KeyError, TypeError):
        raise FormatError("group object needs 'names' and 'mul'") from None
    if "order" in obj and int(obj["order"]) != len(names):
        raise GroupError(f"declared order {obj['order']} != {len(names)} names")
    return validate_table(names, mul)


def group_to_json(group: GroupTable) -> dict:
    return {"order": group.order, "names": list(group.names), "mul": group.mul.tolist()}


def rep_from_json(obj, group: GroupTable, base: Path | None = None) -> UnitaryRep:
    obj, _ = load_json(obj, base)
    try:
        dim = int(obj["dim"])
        mats = [cm.matrix_from_literal(m) for m in obj["mats"]]
    except (KeyError, TypeError):
        raise FormatError("representation object needs 'dim' and 'mats'") from None
    except cm.MatrixError as exc:
        raise FormatError(str(exc)) from None
    for m in mats:
        if m.shape != (dim, dim):
            raise GroupError(f"matrix shape {m.shape} does not match dim {dim}")
    return UnitaryRep.build(group, mats)


def rep_to_json(rep: UnitaryRep) -> dict:
    return {"dim": rep.dim, "mats": [cm.matrix_to_literal(m) for m in rep.mats]}
