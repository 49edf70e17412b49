"""The thirteen acceptance criteria, one test each.

Every test logs a single PASS/FAIL line through the ``acceptance_log``
fixture; the lines are repeated in the terminal summary.
"""

import time

import numpy as np
import pytest

import param_sets as P
from wreath_states import characters as ch
from wreath_states import finite_group as fg
from wreath_states import fock_oracle as fo
from wreath_states import psi_state as ps
from wreath_states import verify
from wreath_states.perm import Permutation, compose, sigma, transposition
from wreath_states.wreath import WreathElement, identity_element

ORACLE_CAP = 10**6


def evaluators():
    out = {f"state:{k}": verify.evaluator_for(p) for k, p in P.state_sets().items()}
    out.update({f"character:{k}": verify.evaluator_for(p) for k, p in P.character_sets().items()})
    return out


def long_cycle(l, group):
    return WreathElement(sigma(l), {}, group.identity) if l > 1 else identity_element(group)


def random_perm(rng, n):
    img = rng.permutation(n) + 1
    return Permutation({i + 1: int(img[i]) for i in range(n)})


def test_criterion_01_oracle_equivalence(acceptance_log):
    sets = P.state_sets()
    start = time.perf_counter()
    worst, count = 0.0, 0
    for i, p in enumerate(sets.values()):
        assert p.pm_dim <= 3 and p.group.order in (1, 2, 3, 6)
        rng = np.random.default_rng(100 + i)
        for _ in range(20):
            g = verify.random_element(p.group, rng, 5)
            worst = max(worst, abs(ps.eval(p, g) - fo.oracle_eval(p, g, cap=ORACLE_CAP)))
            count += 1
    elapsed = time.perf_counter() - start
    with_reg = sum(p.reg is not None for p in sets.values())
    ok = worst <= 1e-9 and elapsed <= 60 and count >= 100 and len(sets) >= 5 and 0 < with_reg < len(sets)
    acceptance_log(1, ok, f"oracle equivalence: {count} elements, {len(sets)} sets, "
                          f"worst {worst:.2e}, {elapsed:.1f}s")
    assert ok


def test_criterion_02_thoma_reduction(acceptance_log):
    alphas, betas = [0.5, 0.25], [0.125]
    char = ch.thoma(alphas, betas)
    state = P.trivial_thoma_state()
    worst = 0.0
    for l in range(1, 7):
        if l == 1:
            # a one-point cycle is the identity; its value is the full mass 1
            want = sum(alphas) + sum(betas) + char.delta
        else:
            want = sum(a**l for a in alphas) + (-1) ** (l - 1) * sum(b**l for b in betas)
        for params in (char, state):
            got = verify.evaluator_for(params)(long_cycle(l, params.group))
            worst = max(worst, abs(got - want))
    three = ps.eval(state, long_cycle(3, state.group))
    ok = worst <= 1e-12 and abs(three - 0.142578125) <= 1e-12
    acceptance_log(2, ok, f"Thoma reduction l=1..6: worst {worst:.2e}, 3-cycle {three.real!r}")
    assert ok


def test_criterion_03_sign_pinning(acceptance_log):
    g = fg.trivial_group()
    p = ps.validate(ps.StateParams(g, np.diag([-0.5]), fg.UnitaryRep.build(g, [np.eye(1)]),
                                   ps.RegularPart(fg.trivial_rep(g), [1.0])))
    two = long_cycle(2, g)
    closed = ps.eval(p, two)
    oracle = fo.oracle_eval(p, two)
    u = fo.build_U(transposition(1, 2), 2, fo.SlotBasis.from_minus([True])).toarray()
    raw = np.trace(u @ np.kron([[0.5]], [[0.5]]))
    ok = all(abs(v + 0.25) <= 1e-12 for v in (closed, oracle, raw))
    acceptance_log(3, ok, f"sign pinning: closed form {closed.real}, oracle {oracle.real}, signed swap trace {raw}")
    assert ok


def test_criterion_04_centrality(acceptance_log):
    reps = {name: verify.centrality_check(ev, trials=200, seed=4) for name, ev in evaluators().items()}
    worst = max(r.worst_residual for r in reps.values())
    ok = all(r.passed and r.samples == 200 for r in reps.values())
    acceptance_log(4, ok, f"centrality: {len(reps)} evaluators x 200 pairs, worst {worst:.2e}")
    assert ok


def test_criterion_05_multiplicativity(acceptance_log):
    reps = {name: verify.multiplicativity_check(ev, trials=100, seed=5) for name, ev in evaluators().items()}
    worst = max(r.worst_residual for r in reps.values())
    ok = all(r.passed and r.samples == 100 for r in reps.values())
    acceptance_log(5, ok, f"multiplicativity: {len(reps)} evaluators x 100 pairs, worst {worst:.2e}")
    assert ok


def test_criterion_06_positive_definiteness(acceptance_log):
    lowest = np.inf
    ok = True
    for i, ev in enumerate(evaluators().values()):
        rng = np.random.default_rng(60 + i)
        els = [identity_element(ev.group)] + [verify.random_element(ev.group, rng, 4) for _ in range(9)]
        rep = verify.gram_check(ev, els)
        lam = next(d["min_eigenvalue"] for d in rep.details if "min_eigenvalue" in d)
        lowest = min(lowest, lam)
        ok &= rep.passed and lam >= -1e-8
    acceptance_log(6, ok, f"Gram matrices: {len(evaluators())} sets x 10 elements, min eigenvalue {lowest:.2e}")
    assert ok


def _labelled_reps():
    s3 = fg.symmetric3()
    c3 = fg.cyclic(3)
    yield "S3 std+sign", fg.direct_sum(fg.standard_rep_s3(s3), fg.sign_rep_s3(s3)), [False, False, True]
    yield "C3 w+w2+1", fg.direct_sum(fg.direct_sum(fg.cyclic_irrep(3, 1, c3), fg.cyclic_irrep(3, 2, c3)),
                                     fg.trivial_rep(c3)), [False, True, True]
    yield "C2 sign", fg.cyclic_irrep(2, 1), [True]


def test_criterion_07_representation_relations(acceptance_log):
    rng = np.random.default_rng(7)
    exact = True
    worst_cov = 0.0
    for _, rep, mask in _labelled_reps():
        basis = fo.SlotBasis.from_minus(mask)
        for n in range(2, 7):
            if basis.dim**n > 1000:
                continue
            for _ in range(3):
                s, t = random_perm(rng, n), random_perm(rng, n)
                us, ut = fo.build_U(s, n, basis), fo.build_U(t, n, basis)
                exact &= bool(np.array_equal((ut @ us).toarray(), fo.build_U(compose(t, s), n, basis).toarray()))
                colors = [int(c) for c in rng.integers(rep.group.order, size=n)]
                x = rep(colors[0])
                for c in colors[1:]:
                    x = np.kron(x, rep(c))
                s_inv = s.inverse()
                moved = rep(colors[s_inv(1) - 1])
                for j in range(2, n + 1):
                    moved = np.kron(moved, rep(colors[s_inv(j) - 1]))
                u = us.toarray()
                worst_cov = max(worst_cov, float(np.max(np.abs(u @ x @ u.T - moved))))
    ok = exact and worst_cov <= 1e-12
    acceptance_log(7, ok, f"U homomorphism exact: {exact}; color covariance worst {worst_cov:.2e} (N <= 6, dim <= 3)")
    assert ok


def test_criterion_08_quantization(acceptance_log):
    nu_worst = ff_worst = alt_worst = star_worst = 0.0
    checked = 0
    for p in P.state_sets().values():
        eig = p.spectral.eigvals
        for a in sorted({round(float(x), 12) for x in eig if abs(x) > ps.KERNEL_TOL}):
            mult = float(np.sum(np.abs(eig - a) <= 1e-9))
            nu_raw = float(np.sum(np.abs(eig[np.abs(eig - a) <= 1e-9]))) / abs(a)
            nu = int(round(nu_raw))
            nu_worst = max(nu_worst, abs(nu_raw - nu), abs(mult - nu))
            for n in range(1, nu + 2):
                rep = fo.quantization_check(p, a, n, cap=ORACLE_CAP)
                ff_worst = max(ff_worst, rep.worst_residual)
                if n == nu + 1 and a > 0:
                    pair = rep.details[-1]["symmetrizer_pairing"]
                    alt_worst = max(alt_worst, abs(complex(*pair)))
                checked += 1
            for n in (2, 3):
                # every permutation of S_n is enumerated inside the check
                star_worst = max(star_worst, fo.quantization_check(p, a, n, cap=ORACLE_CAP).worst_residual)
    ok = nu_worst <= 1e-9 and ff_worst <= 1e-8 and alt_worst <= 1e-8 and star_worst <= 1e-9
    acceptance_log(8, ok, f"quantization: nu {nu_worst:.1e}, falling factorial {ff_worst:.1e} "
                          f"({checked} cases), Alt(nu+1) {alt_worst:.1e}, S2/S3 pairings {star_worst:.1e}")
    assert ok


def test_criterion_09_asymptotic_transposition(acceptance_log):
    cases = [("trivial_thoma", 5), ("c2", 5), ("c3_rotated", 5), ("s3_no_reg", 5), ("c3_phi_sp", 5),
             ("s3_rotated", 4)]
    drift = match = 0.0
    ok = True
    for name, n in cases:
        p = P.state_sets()[name]
        model = fo.ExplicitModel(p, n, cap=10**7)
        rng = np.random.default_rng(9)
        for _ in range(3):
            v = model.pi_sparse(verify.random_element(p.group, rng, 2))
            w = model.pi_sparse(verify.random_element(p.group, rng, 2))
            rep = fo.stabilized_transposition_check(model, 1, v, w, list(range(3, n + 1)))
            drift = max(drift, rep.details[0]["drift"])
            match = max(match, rep.details[0]["limit_mismatch"])
            ok &= rep.passed
    ok &= drift <= 1e-12 and match <= 1e-10
    acceptance_log(9, ok, f"asymptotic transposition: {len(cases)} sets, drift {drift:.1e}, limit {match:.1e}")
    assert ok


def test_criterion_10_uniqueness(acceptance_log):
    reps = [verify.uniqueness_check(p, trials=50, seed=10 + i) for i, p in enumerate(P.state_sets().values())]
    worst = max(r.worst_residual for r in reps)
    ok = all(r.passed and r.samples == 50 for r in reps)
    acceptance_log(10, ok, f"conjugated parameters: {len(reps)} sets x 50 elements, worst {worst:.2e}")
    assert ok


def test_criterion_11_natural_examples(acceptance_log):
    rng = np.random.default_rng(11)
    reg_worst, kms_ok = 0.0, True
    for group in (fg.cyclic(2), fg.cyclic(3), fg.symmetric3()):
        xi = rng.normal(size=group.order) + 1j * rng.normal(size=group.order)
        p = ps.params_for_phi_reg(fg.regular_rep(group), xi / np.linalg.norm(xi))
        kms_ok &= ps.check_kms(p).kms
        for _ in range(40):
            g = verify.random_element(group, rng, 5)
            if not g.in_base_group():
                reg_worst = max(reg_worst, abs(ps.eval(p, g)))
    s3 = fg.symmetric3()
    sp_worst = 0.0
    for rep in (fg.regular_rep(s3), fg.standard_rep_s3(s3),
                fg.direct_sum(fg.cyclic_irrep(3, 1), fg.trivial_rep(fg.cyclic(3)))):
        xi = rng.normal(size=rep.dim) + 1j * rng.normal(size=rep.dim)
        xi /= np.linalg.norm(xi)
        p = ps.params_for_phi_sp(rep, xi)
        for _ in range(40):
            g = verify.random_element(rep.group, rng, 5)
            want = np.prod([np.vdot(xi, rep(g.color(i)) @ xi) for i in range(1, 6)])
            sp_worst = max(sp_worst, abs(ps.eval(p, g) - want))
    ok = reg_worst <= 1e-12 and kms_ok and sp_worst <= 1e-10
    acceptance_log(11, ok, f"phi_reg off base group {reg_worst:.1e}, KMS {kms_ok}; phi_sp product {sp_worst:.1e}")
    assert ok


def test_criterion_12_kms_examples(acceptance_log):
    c2 = fg.cyclic(2)
    first = ps.check_kms(ps.params_for_phi_reg(fg.regular_rep(c2), [1.0, 0.0])).kms
    s3 = fg.symmetric3()
    second = ps.check_kms(ps.validate(ps.StateParams(s3, np.diag([0.5, 0.5]), fg.standard_rep_s3(s3), None))).kms
    split = fg.direct_sum(fg.trivial_rep(c2), fg.cyclic_irrep(2, 1, c2))
    third = ps.check_kms(ps.params_for_phi_reg(split, [1.0, 0.0])).kms
    ok = (first, second, third) == (True, True, False)
    acceptance_log(12, ok, f"KMS examples: {first}/{second}/{third} (expected True/True/False)")
    assert ok


def test_criterion_13_validation(acceptance_log):
    c2 = fg.cyclic(2)
    with pytest.raises(ch.ParameterError) as char_err:
        ch.validate(ch.CharacterParams(c2, ((0.8, fg.regular_rep(c2)),), (), None))
    sign = fg.cyclic_irrep(2, 1, c2)
    with pytest.raises(ch.ParameterError) as state_err:
        ps.validate(ps.StateParams(c2, np.diag([0.7, 0.7]), fg.direct_sum(sign, sign), None))
    conditions = (char_err.value.condition, state_err.value.condition)
    ok = conditions == ("mass_bound", "trace_bound")
    acceptance_log(13, ok, f"validation: delta < 0 -> {conditions[0]}, Tr|A| > 1 -> {conditions[1]}")
    assert ok
