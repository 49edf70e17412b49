"""Seeded property checks over characters and states, with JSON reports."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from . import characters as ch
from . import cmatrix as cm
from . import fock_oracle as fo
from . import psi_state as ps
from .finite_group import FormatError, GroupError, GroupTable, load_json
from .perm import Permutation, sigma
from .report import CheckReport, reports_to_json
from .wreath import (
    WreathElement,
    conjugate,
    format_element,
    generalized_cycles,
    identity_element,
    inverse,
    multiply,
    normal_form,
)

__all__ = [
    "CheckReport",
    "Evaluator",
    "evaluator_for",
    "load_params",
    "random_permutation",
    "random_element",
    "disjoint_pair",
    "random_block_unitary",
    "gram_matrix",
    "gram_check",
    "centrality_check",
    "multiplicativity_check",
    "normal_form_check",
    "uniqueness_check",
    "oracle_check",
    "thoma_check",
    "character_state_check",
    "quantization_suite",
    "stabilization_check",
    "kms_report",
    "full_suite",
    "all_passed",
    "reports_to_json",
]

EVAL_TOL = 1e-9
PSD_TOL = 1e-8
UNIQUE_TOL = 1e-10


@dataclass(frozen=True)
class Evaluator:
    group: GroupTable
    fn: Callable[[WreathElement], complex]
    name: str = ""

    def __call__(self, g: WreathElement) -> complex:
        return self.fn(g)


def evaluator_for(params) -> Evaluator:
    if isinstance(params, ch.CharacterParams):
        return Evaluator(params.group, lambda g: ch.eval(params, g), "character")
    if isinstance(params, ps.StateParams):
        return Evaluator(params.group, lambda g: ps.eval(params, g), "state")
    raise TypeError(f"no evaluator for {type(params).__name__}")


def load_params(obj, base: Path | None = None):
    """Character or state parameters from a JSON object or file, dispatching on ``kind``."""
    data, base = load_json(obj, base)
    if not isinstance(data, dict):
        raise FormatError("parameter file must hold a JSON object")
    kind = data.get("kind")
    if kind == "character":
        return ch.params_from_json(data, base=base)
    if kind == "state":
        return ps.params_from_json(data, base=base)
    raise FormatError(f"unknown parameter kind {kind!r}; expected 'character' or 'state'")


# -- samplers --

def random_permutation(rng, points) -> Permutation:
    pts = [int(x) for x in points]
    img = rng.permutation(pts)
    return Permutation({a: int(b) for a, b in zip(pts, img)})


def random_element(group: GroupTable, rng, max_support: int, offset: int = 0,
                   color_prob: float = 0.5) -> WreathElement:
    """Element supported in ``offset+1 .. offset+max_support``."""
    pts = np.arange(offset + 1, offset + max_support + 1)
    k = int(rng.integers(0, max_support + 1))
    moved = rng.choice(pts, size=k, replace=False) if k else []
    s = random_permutation(rng, moved)
    colors = {}
    if group.order > 1:
        for p in pts:
            if rng.random() < color_prob:
                colors[int(p)] = int(rng.integers(group.order))
    return WreathElement(s, colors, group.identity)


def disjoint_pair(group: GroupTable, rng, max_support: int):
    """Two elements with supports in disjoint ranges that together fit in ``1..max_support``."""
    left = max(1, max_support // 2)
    right = max(1, max_support - left)
    return random_element(group, rng, left), random_element(group, rng, right, offset=left)


def random_block_unitary(sizes, rng) -> np.ndarray:
    blocks = []
    for n in sizes:
        if n == 0:
            continue
        z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        q, r = np.linalg.qr(z)
        blocks.append(q * (np.diag(r) / np.abs(np.diag(r))))
    out = np.zeros((0, 0), dtype=np.complex128)
    for b in blocks:
        out = cm.direct_sum(out, b)
    return out


# -- checks --

def gram_matrix(ev: Evaluator, elements) -> np.ndarray:
    invs = [inverse(e, ev.group) for e in elements]
    n = len(elements)
    out = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            out[i, j] = ev(multiply(invs[i], elements[j], ev.group))
    return out


def gram_check(ev: Evaluator, elements, tol: float = PSD_TOL, seed: int = 0) -> CheckReport:
    """The Gram matrix is Hermitian, has unit diagonal and is PSD up to ``tol``."""
    if len(elements) > 12:
        raise ValueError("gram_check takes at most 12 elements")
    gm = gram_matrix(ev, elements)
    herm = float(np.max(np.abs(gm - gm.conj().T))) if gm.size else 0.0
    diag = float(np.max(np.abs(np.diag(gm) - 1.0))) if gm.size else 0.0
    w, _ = cm.hermitian_eig(0.5 * (gm + gm.conj().T))
    lam = float(w[-1]) if w.size else 0.0
    return CheckReport.from_residuals(
        "gram", [herm, diag, max(0.0, -lam)], tol, seed,
        "positive definiteness on a finite set of elements",
        ["hermitian", "unit diagonal", "negative eigenvalue"],
        [{"min_eigenvalue": lam, "elements": [format_element(e, ev.group) for e in elements]}],
    )


def centrality_check(ev: Evaluator, trials: int = 200, seed: int = 0, max_support: int = 5) -> CheckReport:
    rng = np.random.default_rng(seed)
    res, labels = [], []
    for _ in range(trials):
        g = random_element(ev.group, rng, max_support)
        h = random_permutation(rng, range(1, max_support + 1))
        res.append(abs(ev(conjugate(g, h, ev.group)) - ev(g)))
        labels.append(f"g={format_element(g, ev.group)} h={h}")
    return CheckReport.from_residuals(
        "centrality", res, EVAL_TOL, seed, "invariance under conjugation by finite permutations", labels
    )


def multiplicativity_check(ev: Evaluator, trials: int = 100, seed: int = 0, max_support: int = 6) -> CheckReport:
    rng = np.random.default_rng(seed)
    res, labels = [], []
    for _ in range(trials):
        g, h = disjoint_pair(ev.group, rng, max_support)
        res.append(abs(ev(multiply(g, h, ev.group)) - ev(g) * ev(h)))
        labels.append(f"{format_element(g, ev.group)} * {format_element(h, ev.group)}")
    return CheckReport.from_residuals(
        "multiplicativity", res, EVAL_TOL, seed, "factorization over disjoint supports", labels
    )


def normal_form_check(ev: Evaluator, trials: int = 100, seed: int = 0, max_support: int = 6) -> CheckReport:
    """Each generalized cycle takes the same value as its relabeling onto the long cycle 1 -> ... -> n."""
    rng = np.random.default_rng(seed)
    res, labels = [], []
    for _ in range(trials):
        g = random_element(ev.group, rng, max_support)
        for c in generalized_cycles(g):
            nf = normal_form(c, ev.group)
            if c.length > 1 and nf.s != sigma(c.length):
                res.append(float("inf"))
            else:
                res.append(abs(ev(c.element(ev.group)) - ev(nf)))
            labels.append(format_element(c.element(ev.group), ev.group))
    return CheckReport.from_residuals(
        "normal_form", res, EVAL_TOL, seed, "cycle values depend only on the relabeled long-cycle form", labels
    )


def uniqueness_check(p: ps.StateParams, trials: int = 50, seed: int = 0, max_support: int = 5,
                     v=None) -> CheckReport:
    """Conjugating the parameters by a block unitary leaves every value unchanged."""
    rng = np.random.default_rng(seed)
    k = p.reg.k_dim if p.reg is not None else 0
    if v is None:
        v = random_block_unitary([p.pm_dim, k], rng)
    q = ps.conjugate_params(p, v)
    res, labels = [], []
    for _ in range(trials):
        g = random_element(p.group, rng, max_support)
        res.append(abs(ps.eval(p, g) - ps.eval(q, g)))
        labels.append(format_element(g, p.group))
    return CheckReport.from_residuals(
        "uniqueness", res, UNIQUE_TOL, seed, "unitarily equivalent parameters give the same state", labels
    )


def oracle_check(p: ps.StateParams, trials: int = 50, seed: int = 0, max_support: int = 5,
                 cap: int = fo.DEFAULT_CAP) -> CheckReport:
    """Closed-form values against brute-force tensor traces."""
    rng = np.random.default_rng(seed)
    res, labels = [], []
    for _ in range(trials):
        g = random_element(p.group, rng, max_support)
        label = format_element(g, p.group)
        try:
            res.append(abs(ps.eval(p, g) - fo.oracle_eval(p, g, cap=cap)))
        except fo.CapExceeded as exc:
            return CheckReport.failure("oracle", f"{label}: {exc}", seed)
        labels.append(label)
    return CheckReport.from_residuals(
        "oracle", res, EVAL_TOL, seed, "closed form agrees with the tensor-trace definition", labels
    )


def _long_cycle(l: int, group: GroupTable) -> WreathElement:
    return WreathElement(sigma(l), {}, group.identity)


def thoma_check(params, max_length: int = 6) -> CheckReport:
    """Trivial color group: cycle values are sum a^l + (-1)^(l-1) sum b^l (and 1 for l = 1)."""
    if params.group.order != 1:
        return CheckReport("thoma", True, 0.0, 0, 0, 1e-12, "not applicable: nontrivial color group",
                           [{"skipped": "color group is not trivial"}])
    ev = evaluator_for(params)
    if isinstance(params, ps.StateParams):
        eig = params.spectral.eigvals
        alphas, betas = eig[eig > 0], -eig[eig < 0]
    else:
        alphas = np.array([w for w, _ in params.alphas])
        betas = np.array([w for w, _ in params.betas])
    res, labels = [], []
    for l in range(1, max_length + 1):
        if l == 1:
            want = 1.0
            g = WreathElement(Permutation(), {}, params.group.identity)
        else:
            want = float(np.sum(alphas**l) + (-1) ** (l - 1) * np.sum(betas**l))
            g = _long_cycle(l, params.group)
        res.append(abs(ev(g) - want))
        labels.append(f"cycle length {l}")
    return CheckReport.from_residuals(
        "thoma", res, 1e-12, 0, "power-sum values on cycles for the trivial color group", labels
    )


def character_state_check(cp: ch.CharacterParams, trials: int = 100, seed: int = 0,
                          max_support: int = 5) -> CheckReport:
    """Character values against the state realizing the same parameters (one-dimensional data only)."""
    try:
        sp_ = ps.params_from_character(cp)
    except ch.ParameterError as exc:
        return CheckReport("character_state", True, 0.0, 0, seed, EVAL_TOL, "not applicable",
                           [{"skipped": str(exc)}])
    rng = np.random.default_rng(seed)
    res, labels = [], []
    for _ in range(trials):
        g = random_element(cp.group, rng, max_support)
        res.append(abs(ch.eval(cp, g) - ps.eval(sp_, g)))
        labels.append(format_element(g, cp.group))
    return CheckReport.from_residuals(
        "character_state", res, EVAL_TOL, seed, "character formula equals the corresponding state", labels
    )


def quantization_suite(p: ps.StateParams, max_n: int = 5, cap: int = fo.DEFAULT_CAP) -> CheckReport:
    """quantization_check for every distinct nonzero eigenvalue and n = 1 .. nu + 1 (within budget)."""
    eig = p.spectral.eigvals
    distinct = []
    for x in eig:
        if abs(x) > ps.KERNEL_TOL and all(abs(x - y) > 1e-9 for y in distinct):
            distinct.append(float(x))
    res, labels, details = [], [], []
    for a in distinct:
        nu = int(round(float(np.sum(np.abs(eig - a) <= 1e-9))))
        for n in range(1, min(nu + 1, max_n) + 1):
            try:
                rep = fo.quantization_check(p, a, n, cap=cap)
            except fo.CapExceeded as exc:
                details.append({"alpha": a, "n": n, "skipped": str(exc)})
                continue
            res.append(rep.worst_residual)
            labels.append(f"alpha={a:.12g} n={n}")
    return CheckReport.from_residuals(
        "quantization", res, 1e-8, 0, "multiplicities of nonzero eigenvalues are integers", labels, details
    )


def stabilization_check(p: ps.StateParams, seed: int = 0, cap: int = fo.DEFAULT_CAP) -> CheckReport:
    """Transpositions (1 k), k = 3, 4, against the slot-1 insertion of A, on vectors supported in {1, 2}."""
    rng = np.random.default_rng(seed)
    try:
        model = fo.ExplicitModel(p, 4, cap=cap)
    except fo.CapExceeded as exc:
        return CheckReport("asymptotic_transposition", True, 0.0, 0, seed, 1e-10, "not applicable",
                           [{"skipped": str(exc)}])
    reps = []
    for _ in range(3):
        v = model.pi_sparse(random_element(p.group, rng, 2))
        w = model.pi_sparse(random_element(p.group, rng, 2))
        reps.append(fo.stabilized_transposition_check(model, 1, v, w, [3, 4], seed))
    worst = max(r.worst_residual for r in reps)
    return CheckReport("asymptotic_transposition", all(r.passed for r in reps), worst, len(reps), seed, 1e-10,
                       reps[0].property, [d for r in reps for d in r.details if not r.passed])


def kms_report(p: ps.StateParams) -> CheckReport:
    res = ps.check_kms(p)
    return CheckReport("kms", True, 0.0, 1, 0, 0.0, "decision: cyclic and separating regular vector",
                       [{"kms": res.kms, "cyclic": res.cyclic, "separating": res.separating,
                         "kernel_ok": res.kernel_ok, "reason": res.reason}])


def _gram_elements(group: GroupTable, rng, size: int, max_support: int):
    out = [identity_element(group)]
    while len(out) < size:
        out.append(random_element(group, rng, max_support))
    return out


def full_suite(params, seed: int = 0, trials: int = 50, max_support: int = 5,
               cap: int = fo.DEFAULT_CAP) -> list[CheckReport]:
    """Run every applicable check; a parameter error becomes a failed ``validation`` report."""
    try:
        if not isinstance(params, (ch.CharacterParams, ps.StateParams)):
            params = load_params(params)
        elif isinstance(params, ch.CharacterParams):
            ch.validate(params)
        else:
            ps.validate(params)
    except (ch.ParameterError, GroupError, ValueError) as exc:
        return [CheckReport.failure("validation", str(exc), seed)]
    ev = evaluator_for(params)
    rng = np.random.default_rng(seed)
    reports = [
        gram_check(ev, _gram_elements(params.group, rng, 8, max_support), seed=seed),
        centrality_check(ev, max(trials, 1), seed, max_support),
        multiplicativity_check(ev, max(trials, 1), seed, max(2, max_support)),
        normal_form_check(ev, max(trials // 2, 1), seed, max_support),
        thoma_check(params),
    ]
    if isinstance(params, ch.CharacterParams):
        reports.append(character_state_check(params, trials, seed, max_support))
    else:
        reports += [
            oracle_check(params, trials, seed, max_support, cap),
            uniqueness_check(params, trials, seed, max_support),
            quantization_suite(params, cap=cap),
            stabilization_check(params, seed, cap),
            kms_report(params),
        ]
    return sorted(reports, key=lambda r: r.name)


def all_passed(reports) -> bool:
    return all(r.passed for r in reports)
