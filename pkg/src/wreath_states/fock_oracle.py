"""Brute-force tensor model for the states of :mod:`psi_state`.

Slot space: the eigenbasis of ``A`` on the pm block (labels plus/minus),
followed by ``copies`` copies of the regular block ``K`` in copy-major
order.  ``N`` slots form the tensor power, with numpy ``kron`` ordering:
slot 1 is the slowest index.

Permutations act by signed permutation matrices ``U(s)``:
``U(s) e_x = sign(x, s) e_{s.x}`` with ``(s.x)_{s(i)} = x_i``, where the sign
is the parity of the order in which ``s`` places the minus-labelled slots
of ``x``.  This makes ``U`` a homomorphism, ``U(t) U(s) = U(ts)``.

A state value is ``Tr(U(s) (kron_j rho(gamma_j)) (kron_j D_j))`` with
``D_j = |A| (+) (1 - Tr|A|) |xi in copy j><xi in copy j|``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from . import cmatrix as cm
from .perm import Permutation, transposition
from .psi_state import StateParams
from .report import CheckReport
from .wreath import WreathElement

__all__ = [
    "CapExceeded",
    "DEFAULT_CAP",
    "DEFAULT_PERM_CAP",
    "SlotBasis",
    "slot_basis",
    "cocycle_sign",
    "act_on_index",
    "build_U",
    "build_plain_U",
    "oracle_eval",
    "ExplicitModel",
    "build_alt",
    "build_sym",
    "build_plain_alt",
    "build_plain_sym",
    "falling_factorial",
    "signed_cycle_sum",
    "build_O",
    "random_slot_algebra_element",
    "stabilized_transposition_check",
    "asymptotic_insertion_check",
    "slot_relations_check",
    "cycle_mixture_check",
    "quantization_check",
    "spectral_inequality_check",
    "orthogonality_checks",
]

DEFAULT_CAP = 20_000
DEFAULT_PERM_CAP = 720
KERNEL_TOL = 1e-12


class CapExceeded(RuntimeError):
    """A requested tensor or permutation sum is larger than the configured budget."""


@dataclass(frozen=True, eq=False)
class SlotBasis:
    """Labels of the one-slot basis.

    ``kind`` is 0 for plus, 1 for minus, 2 for regular; ``copy`` and
    ``k_index`` are -1 outside the regular part.
    """

    eigvals: np.ndarray
    kind: np.ndarray
    copy: np.ndarray
    k_index: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.kind)

    @property
    def minus(self) -> np.ndarray:
        return self.kind == 1

    def label(self, i: int) -> str:
        k = int(self.kind[i])
        if k == 2:
            return f"reg(copy {int(self.copy[i])}, k {int(self.k_index[i])})"
        return "minus" if k == 1 else "plus"

    @classmethod
    def from_minus(cls, minus) -> "SlotBasis":
        """A basis with only pm labels, e.g. for testing sign conventions."""
        m = np.asarray(minus, dtype=bool)
        n = len(m)
        return cls(np.where(m, -1.0, 1.0), m.astype(int), -np.ones(n, int), -np.ones(n, int))


def slot_basis(p: StateParams, copies: int) -> SlotBasis:
    sd = p.spectral
    k = p.reg.k_dim if p.reg is not None else 0
    n_reg = k * copies
    eig = np.concatenate([sd.eigvals, np.zeros(n_reg)])
    kind = np.concatenate([sd.minus.astype(int), np.full(n_reg, 2)])
    copy = np.concatenate([-np.ones(p.pm_dim, int), np.repeat(np.arange(copies), k)])
    kidx = np.concatenate([-np.ones(p.pm_dim, int), np.tile(np.arange(k), copies)])
    return SlotBasis(eig, kind, copy, kidx)


# -- signs and permutation matrices --

def cocycle_sign(x, s: Permutation, basis: SlotBasis) -> int:
    """Sign of the reordering ``s`` induces on the minus-labelled slots of multi-index ``x``.

    ``x`` holds zero-based one-slot indices for slots 1..N.  The minus slots
    ``i_1 < ... < i_l`` are moved to ``s(i_1), ..., s(i_l)``; the result is
    the parity of that sequence's inversions.
    """
    n = len(x)
    if s.max_point() > n:
        raise ValueError(f"multi-index of length {n} is too short for {s}")
    targets = [s(i + 1) for i in range(n) if basis.minus[x[i]]]
    inv = sum(1 for a, b in itertools.combinations(targets, 2) if a > b)
    return -1 if inv % 2 else 1


def act_on_index(x, s: Permutation) -> tuple[int, ...]:
    """``s.x`` with ``(s.x)_{s(i)} = x_i``."""
    n = len(x)
    out = [0] * n
    for i in range(n):
        out[s(i + 1) - 1] = x[i]
    return tuple(out)


def _check_cap(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise CapExceeded(f"{what} needs {size} entries, above the cap {cap}")


def _index_grid(dims) -> np.ndarray:
    """All multi-indices over the given per-slot sizes, slot 1 slowest; shape (prod, N)."""
    grids = np.indices(tuple(dims), dtype=np.int64)
    return grids.reshape(len(dims), -1).T


def _inversion_pairs(s: Permutation, n: int) -> list[tuple[int, int]]:
    arr = s.to_array(n)
    return [(i, j) for i in range(n) for j in range(i + 1, n) if arr[i] > arr[j]]


def _signs(z: np.ndarray, s: Permutation, minus: np.ndarray) -> np.ndarray:
    """Vectorized ``cocycle_sign`` over rows of ``z``."""
    n = z.shape[1]
    m = minus[z]
    parity = np.zeros(z.shape[0], dtype=np.int64)
    for i, j in _inversion_pairs(s, n):
        parity += m[:, i] & m[:, j]
    return np.where(parity % 2 == 1, -1.0, 1.0)


def _flat(idx: np.ndarray, d: int) -> np.ndarray:
    n = idx.shape[1]
    weights = d ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return idx @ weights


def _perm_matrix(s: Permutation, n_slots: int, basis: SlotBasis, signed: bool, cap: int) -> sp.csr_matrix:
    d = basis.dim
    if s.max_point() > n_slots:
        raise ValueError(f"{s} moves points beyond {n_slots} slots")
    size = d**n_slots
    _check_cap(size, cap, "U matrix")
    x = _index_grid([d] * n_slots)
    arr = np.array(s.to_array(n_slots))
    sx = np.empty_like(x)
    sx[:, arr] = x
    vals = _signs(x, s, basis.minus) if signed else np.ones(size)
    return sp.csr_matrix((vals, (_flat(sx, d), _flat(x, d))), shape=(size, size))


def build_U(s: Permutation, n_slots: int, basis: SlotBasis, cap: int = DEFAULT_CAP) -> sp.csr_matrix:
    """Signed permutation matrix of ``s`` on ``n_slots`` tensor slots (sparse)."""
    return _perm_matrix(s, n_slots, basis, True, cap)


def build_plain_U(s: Permutation, n_slots: int, basis: SlotBasis, cap: int = DEFAULT_CAP) -> sp.csr_matrix:
    """Unsigned slot permutation of ``s``."""
    return _perm_matrix(s, n_slots, basis, False, cap)


# -- one-slot operators --

def rho_slot(p: StateParams, g: int, copies: int) -> np.ndarray:
    """rho on one slot, in the slot basis."""
    w = p.spectral.vectors
    pm = w.conj().T @ p.rho(g) @ w if p.pm_dim else np.zeros((0, 0))
    if p.reg is None:
        return np.asarray(pm, dtype=np.complex128)
    return cm.direct_sum(pm, np.kron(np.eye(copies), p.reg.rho11(g)))


def density(p: StateParams, slot: int, copies: int) -> np.ndarray:
    """D for 1-based ``slot``: |A| on pm, the leftover mass on xi placed in copy ``slot``."""
    pm = np.diag(np.abs(p.spectral.eigvals)).astype(np.complex128)
    if p.reg is None:
        return pm
    k = p.reg.k_dim
    eta = np.zeros(k * copies, dtype=np.complex128)
    eta[(slot - 1) * k:slot * k] = p.reg.xi
    return cm.direct_sum(pm, p.reg_mass * np.outer(eta, eta.conj()))


def a_slot(p: StateParams, copies: int) -> np.ndarray:
    """A on one slot (zero on the regular part), diagonal in the slot basis."""
    k = p.reg.k_dim if p.reg is not None else 0
    return np.diag(np.concatenate([p.spectral.eigvals, np.zeros(k * copies)])).astype(np.complex128)


def _sparse_kron(factors) -> sp.csr_matrix:
    out = sp.csr_matrix(np.ones((1, 1), dtype=np.complex128))
    for m in factors:
        out = sp.kron(out, sp.csr_matrix(m), format="csr")
    return out


# -- oracle --

def oracle_eval(
    p: StateParams,
    g: WreathElement,
    n_slots: int | None = None,
    cap: int = DEFAULT_CAP,
    prune: bool = True,
) -> complex:
    """Tensor trace ``Tr(U(s) kron(rho(gamma_j)) kron(D_j))`` summed entry by entry.

    With ``prune`` the sum skips multi-indices on which some ``D_j`` vanishes
    identically (slot ``j`` outside the pm block and regular copy ``j``);
    those terms are exactly zero, so the value is unchanged.
    """
    n = max(g.max_point(), 1) if n_slots is None else int(n_slots)
    if n < g.max_point():
        raise ValueError(f"{n} slots do not cover the support of the element")
    copies = max(p.reg.copies if p.reg is not None else 0, n)
    basis = slot_basis(p, copies)
    d = basis.dim
    mats = [rho_slot(p, g.color(j), copies) @ density(p, j, copies) for j in range(1, n + 1)]
    if prune:
        allowed = []
        for j in range(1, n + 1):
            keep = (basis.kind != 2) | (basis.copy == j - 1)
            allowed.append(np.flatnonzero(keep))
    else:
        allowed = [np.arange(d)] * n
    size = math.prod(len(a) for a in allowed)
    _check_cap(size, cap, "oracle sum")
    local = _index_grid([len(a) for a in allowed])
    y = np.column_stack([allowed[j][local[:, j]] for j in range(n)]) if n else local
    arr = np.array(g.s.to_array(n))
    z = y[:, arr]
    terms = _signs(z, g.s, basis.minus).astype(np.complex128)
    for j in range(n):
        terms *= mats[j][z[:, j], y[:, j]]
    return complex(terms.sum())


# -- explicit model on operators --

class ExplicitModel:
    """The cyclic representation realized on operators of the ``n_slots``-fold tensor power.

    Vectors are square matrices ``v``; the group acts by left multiplication
    with ``U(s) kron(rho(gamma_j))`` and the pairing is ``<v, w> = Tr(w^* v D)``
    with ``D = kron(D_j)``.  The identity matrix is the cyclic vector.
    """

    def __init__(self, p: StateParams, n_slots: int, copies: int | None = None, cap: int = DEFAULT_CAP):
        self.p = p
        self.n = int(n_slots)
        self.copies = max(self.n, p.reg.copies if p.reg is not None else 0) if copies is None else copies
        self.basis = slot_basis(p, self.copies)
        self.cap = cap
        _check_cap(self.size, cap, "explicit model")

    @property
    def d(self) -> int:
        return self.basis.dim

    @property
    def size(self) -> int:
        return self.basis.dim**self.n

    @cached_property
    def D(self) -> np.ndarray:
        return self.D_sparse.toarray()

    @cached_property
    def D_sparse(self) -> sp.csr_matrix:
        return _sparse_kron([density(self.p, j, self.copies) for j in range(1, self.n + 1)])

    @cached_property
    def identity(self) -> np.ndarray:
        return np.eye(self.size, dtype=np.complex128)

    @cached_property
    def identity_sparse(self) -> sp.csr_matrix:
        return sp.identity(self.size, dtype=np.complex128, format="csr")

    def slot_op(self, m: np.ndarray, slot: int) -> np.ndarray:
        """``m`` acting on 1-based ``slot``, identity elsewhere."""
        return self.slot_op_sparse(m, slot).toarray()

    def slot_op_sparse(self, m: np.ndarray, slot: int) -> sp.csr_matrix:
        eye = np.eye(self.d, dtype=np.complex128)
        return _sparse_kron([m if j == slot else eye for j in range(1, self.n + 1)])

    def U(self, s: Permutation) -> np.ndarray:
        return self.U_sparse(s).toarray()

    def U_sparse(self, s: Permutation) -> sp.csr_matrix:
        return build_U(s, self.n, self.basis, self.cap)

    def colors(self, g: WreathElement) -> np.ndarray:
        return self.colors_sparse(g).toarray()

    def colors_sparse(self, g: WreathElement) -> sp.csr_matrix:
        return _sparse_kron([rho_slot(self.p, g.color(j), self.copies) for j in range(1, self.n + 1)])

    def pi(self, g: WreathElement) -> np.ndarray:
        return self.pi_sparse(g).toarray()

    def pi_sparse(self, g: WreathElement) -> sp.csr_matrix:
        if g.max_point() > self.n:
            raise ValueError("element support exceeds the model's slots")
        return (self.U_sparse(g.s) @ self.colors_sparse(g)).tocsr()

    def inner(self, v, w) -> complex:
        """``Tr(w^* v D)``; dense and sparse operands are both accepted."""
        if sp.issparse(v) or sp.issparse(w):
            vd = sp.csr_matrix(v) @ self.D_sparse
            return complex(sp.csr_matrix(w).conj().multiply(vd).sum())
        vd = (self.D_sparse.T @ v.T).T
        return complex(np.sum(w.conj() * vd))

    def state(self, g: WreathElement) -> complex:
        return self.inner(self.pi_sparse(g), self.identity_sparse)

    def O(self, slot: int) -> np.ndarray:
        """Left multiplication of ``slot`` by A (zero on the regular part)."""
        return self.O_sparse(slot).toarray()

    def O_sparse(self, slot: int) -> sp.csr_matrix:
        return self.slot_op_sparse(a_slot(self.p, self.copies), slot)

    def color_at(self, g: int, slot: int) -> np.ndarray:
        return self.slot_op(rho_slot(self.p, g, self.copies), slot)

    def spectral_projection(self, slot: int, pred) -> np.ndarray:
        """Projection of ``slot`` onto slot-basis vectors whose A-eigenvalue satisfies ``pred``."""
        k = self.p.reg.k_dim * self.copies if self.p.reg is not None else 0
        vals = np.concatenate([self.p.spectral.eigvals, np.zeros(k)])
        return self.slot_op(np.diag([1.0 if pred(x) else 0.0 for x in vals]).astype(np.complex128), slot)

    def phi(self, j: int, k: int, a: np.ndarray) -> np.ndarray:
        """Move an operator on slot ``k`` to slot ``j`` by conjugating with the transposition."""
        if j == k:
            return a
        u = self.U(Permutation({j: k, k: j}))
        return u @ a @ u.conj().T


# -- symmetrizers --

def falling_factorial(nu: float, n: int) -> float:
    out = 1.0
    for i in range(n):
        out *= nu - i
    return out


def signed_cycle_sum(nu: float, n: int) -> float:
    """Sum over S_n of sign(s) * nu^(number of cycles, fixed points included)."""
    total = 0.0
    for img in itertools.permutations(range(1, n + 1)):
        s = Permutation({i + 1: img[i] for i in range(n)})
        cycles = len(s.cycles()) + (n - len(s.support()))
        total += s.sign() * nu**cycles
    return total


def _sn(n: int):
    for img in itertools.permutations(range(1, n + 1)):
        yield Permutation({i + 1: img[i] for i in range(n)})


def _average(n: int, n_slots: int, basis: SlotBasis, signed_u: bool, alternate: bool, cap: int, perm_cap: int):
    if n > n_slots:
        raise ValueError(f"cannot average over S_{n} on {n_slots} slots")
    _check_cap(math.factorial(n), perm_cap, "permutation sum")
    size = basis.dim**n_slots
    acc = sp.csr_matrix((size, size), dtype=np.float64)
    for s in _sn(n):
        u = _perm_matrix(s, n_slots, basis, signed_u, cap)
        acc = acc + (s.sign() if alternate else 1) * u
    return (acc / math.factorial(n)).tocsr()


def build_alt(n: int, n_slots: int, basis: SlotBasis, cap: int = DEFAULT_CAP, perm_cap: int = DEFAULT_PERM_CAP):
    """(1/n!) sum sign(s) U(s) over S_n, with the signed U of the model."""
    return _average(n, n_slots, basis, True, True, cap, perm_cap)


def build_sym(n: int, n_slots: int, basis: SlotBasis, cap: int = DEFAULT_CAP, perm_cap: int = DEFAULT_PERM_CAP):
    """(1/n!) sum U(s) over S_n, with the signed U of the model."""
    return _average(n, n_slots, basis, True, False, cap, perm_cap)


def build_plain_alt(n: int, n_slots: int, basis: SlotBasis, cap: int = DEFAULT_CAP, perm_cap: int = DEFAULT_PERM_CAP):
    """Classical antisymmetrizer from unsigned slot permutations."""
    return _average(n, n_slots, basis, False, True, cap, perm_cap)


def build_plain_sym(n: int, n_slots: int, basis: SlotBasis, cap: int = DEFAULT_CAP, perm_cap: int = DEFAULT_PERM_CAP):
    """Classical symmetrizer from unsigned slot permutations."""
    return _average(n, n_slots, basis, False, False, cap, perm_cap)


# -- model-level property checks --

def build_O(slot: int, n_slots: int, p: StateParams, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Slot ``slot`` multiplied by A, as an operator of the explicit model."""
    if not 1 <= slot <= n_slots:
        raise ValueError(f"slot {slot} outside 1..{n_slots}")
    return ExplicitModel(p, n_slots, cap=cap).O(slot)


def random_slot_algebra_element(p: StateParams, copies: int, rng, words: int = 4, length: int = 3) -> np.ndarray:
    """Random combination of words in the one-slot color operators and A."""
    gens = [rho_slot(p, g, copies) for g in range(p.group.order)] + [a_slot(p, copies)]
    d = gens[0].shape[0]
    out = np.zeros((d, d), dtype=np.complex128)
    for _ in range(words):
        word = np.eye(d, dtype=np.complex128)
        for _ in range(int(rng.integers(1, length + 1))):
            word = word @ gens[int(rng.integers(len(gens)))]
        out += complex(rng.normal(), rng.normal()) * word
    return out


def stabilized_transposition_check(model: ExplicitModel, slot: int, v, w, ks, seed: int = 0) -> CheckReport:
    """<U((slot k)) v, w> must not depend on k beyond the supports and must equal <O_slot v, w>."""
    values = [model.inner(model.U_sparse(transposition(slot, k)) @ v, w) for k in ks]
    target = model.inner(model.O_sparse(slot) @ v, w)
    drift = max(abs(a - values[0]) for a in values)
    match = max(abs(a - target) for a in values)
    drift_rep = CheckReport.from_residuals("transposition_drift", [drift], 1e-12, seed)
    match_rep = CheckReport.from_residuals("transposition_limit", [match], 1e-10, seed)
    return CheckReport(
        "asymptotic_transposition",
        drift_rep.passed and match_rep.passed,
        max(drift, match),
        len(list(ks)),
        seed,
        1e-10,
        "transpositions (l k) stabilize for large k to the slot-l insertion of A",
        [{"drift": drift, "limit_mismatch": match, "value": [target.real, target.imag]}],
    )


def asymptotic_insertion_check(p: StateParams, n_slots: int, trials: int, seed: int = 0,
                               cap: int = DEFAULT_CAP) -> CheckReport:
    """psi(g (n k) h) = <pi(g) O_k pi(h) I, I> for g, h fixing n with no color there."""
    from .psi_state import eval as psi_eval
    from .wreath import WreathElement, format_element, multiply

    rng = np.random.default_rng(seed)
    model = ExplicitModel(p, n_slots, cap=cap)
    res, labels = [], []
    for _ in range(trials):
        n, k = (int(x) for x in rng.choice(np.arange(1, n_slots + 1), size=2, replace=False))
        others = [i for i in range(1, n_slots + 1) if i != n]
        g = _random_element_on(p, others, rng)
        h = _random_element_on(p, others, rng)
        t = WreathElement(transposition(n, k), {}, p.group.identity)
        lhs = psi_eval(p, multiply(multiply(g, t, p.group), h, p.group))
        rhs = model.inner(model.pi_sparse(g) @ model.O_sparse(k) @ model.pi_sparse(h), model.identity_sparse)
        res.append(abs(lhs - rhs))
        labels.append(f"n={n} k={k} g={format_element(g, p.group)} h={format_element(h, p.group)}")
    return CheckReport.from_residuals(
        "asymptotic_insertion", res, 1e-10, seed,
        "inserting a transposition equals inserting the asymptotic transposition", labels,
    )


def _random_element_on(p: StateParams, points, rng):
    from .wreath import WreathElement

    pts = list(points)
    img = list(rng.permutation(pts))
    s = Permutation({a: int(b) for a, b in zip(pts, img)})
    colors = {q: int(rng.integers(p.group.order)) for q in pts if rng.random() < 0.6}
    return WreathElement(s, colors, p.group.identity)


def slot_relations_check(model: ExplicitModel, seed: int = 0) -> CheckReport:
    """Commutation of the O_k, with colors at other slots, and covariance under U(s)."""
    rng = np.random.default_rng(seed)
    n = model.n
    res, labels = [], []
    ops = {k: model.O(k) for k in range(1, n + 1)}
    for k in range(1, n + 1):
        for m in range(1, n + 1):
            res.append(float(np.max(np.abs(ops[k] @ ops[m] - ops[m] @ ops[k]))))
            labels.append(f"O_{k} O_{m}")
            if m != k:
                for g in range(model.p.group.order):
                    c = model.color_at(g, m)
                    res.append(float(np.max(np.abs(ops[k] @ c - c @ ops[k]))))
                    labels.append(f"O_{k} color {model.p.group.name(g)}@{m}")
    for _ in range(5):
        img = rng.permutation(n) + 1
        s = Permutation({i + 1: int(img[i]) for i in range(n)})
        u = model.U(s)
        for k in range(1, n + 1):
            res.append(float(np.max(np.abs(u @ ops[k] - ops[s(k)] @ u))))
            labels.append(f"U{s} O_{k}")
    return CheckReport.from_residuals(
        "slot_relations", res, 1e-12, seed, "asymptotic transpositions commute and are permuted covariantly", labels
    )


def cycle_mixture_check(model: ExplicitModel, orbit, seed: int = 0) -> CheckReport:
    """<pi(s_p) U_1 ... U_n I, I> equals the chain of slot-moved factors joined by O at the last slot.

    ``orbit`` lists k_1, ..., k_n; the cycle maps k_l to k_(l-1) and k_1 to k_n.
    """
    rng = np.random.default_rng(seed)
    ks = [int(k) for k in orbit]
    n = len(ks)
    s = Permutation({ks[i]: ks[i - 1] for i in range(n)}) if n > 1 else Permutation()
    res = []
    for _ in range(3):
        us = [model.slot_op(random_slot_algebra_element(model.p, model.copies, rng), k) for k in ks]
        lhs_op = model.U(s)
        for u in us:
            lhs_op = lhs_op @ u
        lhs = model.inner(lhs_op, model.identity)
        last = ks[-1]
        o = model.O(last)
        rhs_op = np.eye(model.size, dtype=np.complex128)
        for i, (k, u) in enumerate(zip(ks, us)):
            rhs_op = rhs_op @ model.phi(last, k, u)
            if i < n - 1:
                rhs_op = rhs_op @ o
        rhs = model.inner(rhs_op, model.identity)
        res.append(abs(lhs - rhs) / max(1.0, abs(lhs)))
    return CheckReport.from_residuals(
        "cycle_mixture", res, 1e-10, seed, "cycle values factor through the asymptotic transposition",
        [f"orbit {ks}"] * len(res),
    )


def _expected_pairing(alpha: float, nu: int, s: Permutation, n: int) -> float:
    l = len(s.cycles()) + (n - len(s.support()))
    return alpha ** (n - l) * abs(alpha) ** l * nu**l


def quantization_check(p: StateParams, alpha: float, n: int, cap: int = DEFAULT_CAP,
                       perm_cap: int = DEFAULT_PERM_CAP, tol: float = 1e-9) -> CheckReport:
    """Integrality of the multiplicity and the symmetrizer identities for one eigenvalue.

    With ``eta`` the projection onto ``alpha`` in each of ``n`` slots,
    ``<U(s) eta, eta> = alpha^(n-l) |alpha|^l nu^l`` (``l`` the number of
    cycles, fixed points included), and the antisymmetrizer (``alpha > 0``)
    or symmetrizer (``alpha < 0``) gives ``|alpha|^n nu (nu-1) ... (nu-n+1) / n!``.
    """
    eig = p.spectral.eigvals
    mask = np.abs(eig - alpha) <= 1e-9
    if alpha == 0 or not mask.any():
        return CheckReport.failure("quantization", f"{alpha} is not a nonzero eigenvalue of A")
    pm_proj = np.diag(mask.astype(float))
    nu_raw = float(np.real(np.trace(pm_proj @ np.diag(np.abs(eig))))) / abs(alpha)
    nu = int(round(nu_raw))
    details = [{"alpha": alpha, "n": n, "nu": nu_raw}]
    res = [abs(nu_raw - nu)]
    labels = ["nu integrality"]
    model = ExplicitModel(p, n, cap=cap)
    k = model.d - p.pm_dim
    one = np.concatenate([mask.astype(float), np.zeros(k)])
    eta = _sparse_kron([np.diag(one).astype(np.complex128)] * n)
    for s in _sn(n):
        got = model.inner(model.U_sparse(s) @ eta, eta)
        res.append(abs(got - _expected_pairing(alpha, nu, s, n)))
        labels.append(f"<U{s} eta, eta>")
    avg = (build_alt if alpha > 0 else build_sym)(n, n, model.basis, cap, perm_cap)
    got = model.inner(avg @ eta, eta)
    want = abs(alpha) ** n * falling_factorial(nu, n) / math.factorial(n)
    res.append(abs(got - want))
    labels.append(f"{'Alt' if alpha > 0 else 'Sym'}({n}) pairing")
    details.append({"symmetrizer_pairing": [got.real, got.imag], "expected": want})
    res.append(abs(signed_cycle_sum(nu, n) - falling_factorial(nu, n)))
    labels.append("signed cycle sum")
    return CheckReport.from_residuals(
        "quantization", res, tol, 0, "multiplicities of nonzero eigenvalues are integers", labels, details
    )


def spectral_inequality_check(p: StateParams, a: float, b: float, eps: float) -> CheckReport:
    """psi(E)^2 >= eps psi(E) for the spectral projection E of one slot's A on [a, b]."""
    if a > b:
        raise ValueError(f"malformed interval [{a}, {b}]")
    if not ((-1.0 <= a and b < 0.0) or (0.0 < a and b <= 1.0)):
        raise ValueError(f"interval [{a}, {b}] must lie in [-1, 0) or (0, 1]")
    if not min(abs(a), abs(b)) >= eps > 0:
        raise ValueError("need min(|a|, |b|) >= eps > 0")
    model = ExplicitModel(p, 1)
    e = model.spectral_projection(1, lambda x: a <= x <= b)
    val = model.inner(e, model.identity).real
    direct = float(sum(abs(x) for x in p.spectral.eigvals if a <= x <= b))
    shortfall = max(0.0, eps * val - val * val)
    return CheckReport.from_residuals(
        "spectral_inequality", [shortfall, abs(val - direct)], 1e-10, 0,
        "mass of a spectral interval away from 0 is at least the interval's distance from 0",
        ["psi(E)^2 - eps psi(E)", "model vs direct trace"], [{"psi_E": val, "interval": [a, b], "eps": eps}],
    )


def orthogonality_checks(p: StateParams, trials: int = 10, seed: int = 0) -> CheckReport:
    """Vectors P_x U P_y I vanish for nonzero x against y = 0 and for x, y of opposite sign."""
    rng = np.random.default_rng(seed)
    model = ExplicitModel(p, 1)
    projs = {
        "plus": model.spectral_projection(1, lambda x: x > KERNEL_TOL),
        "minus": model.spectral_projection(1, lambda x: x < -KERNEL_TOL),
        "zero": model.spectral_projection(1, lambda x: abs(x) <= KERNEL_TOL),
    }
    pairs = [("plus", "zero"), ("minus", "zero"), ("plus", "minus"), ("minus", "plus")]
    res, labels = [], []
    for _ in range(trials):
        u = random_slot_algebra_element(p, model.copies, rng)
        for x, y in pairs:
            v = projs[x] @ u @ projs[y]
            res.append(abs(model.inner(v, v)))
            labels.append(f"|P_{x} U P_{y} I|^2")
    return CheckReport.from_residuals(
        "block_orthogonality", res, 1e-10, seed, "nonzero spectral blocks are orthogonal to the kernel and to each other",
        labels,
    )

