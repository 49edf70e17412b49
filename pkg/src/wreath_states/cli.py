"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 unreadable input (files, JSON
structure, element text, compute budget), 3 parameters that parse but are
invalid.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import characters as ch
from . import fock_oracle as fo
from . import psi_state as ps
from . import verify
from .finite_group import FormatError, GroupError, group_from_json
from .wreath import (
    WreathElement,
    cycle_invariant,
    format_element,
    generalized_cycles,
    parse_element,
    parse_element_parts,
)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INVALID = 0, 1, 2, 3
DIGITS = 12


class UsageError(Exception):
    pass


def format_number(x: float) -> str:
    text = f"{x:.{DIGITS}g}"
    return "0" if text in ("-0", "0") else text


def format_complex(z: complex, tiny: float = 1e-12) -> str:
    """``re+im i`` at 12 significant digits; parts below ``tiny`` (relative to |z|, floor 1) print as 0."""
    z = complex(z)
    scale = tiny * max(1.0, abs(z))
    re = 0.0 if abs(z.real) <= scale else z.real
    im = 0.0 if abs(z.imag) <= scale else z.imag
    if im == 0.0:
        return format_number(re)
    sign = "-" if im < 0 else "+"
    return f"{format_number(re)}{sign}{format_number(abs(im))}i"


def _load_params(path: str | None):
    if not path:
        raise UsageError("--params is required for this subcommand")
    return verify.load_params(Path(path))


def _read_elements(args, group) -> list[WreathElement]:
    if args.element is not None:
        return [parse_element(args.element, group)]
    if args.elements is None:
        raise UsageError("give --element or --elements")
    path = Path(args.elements)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            items = json.loads(stripped)
        except json.JSONDecodeError:
            items = None
        if isinstance(items, list) and all(isinstance(x, str) for x in items):
            return [parse_element(x, group) for x in items]
    lines = [ln.strip() for ln in text.splitlines()]
    return [parse_element(ln, group) for ln in lines if ln and not ln.startswith("#")]


def _evaluate(params, g: WreathElement) -> complex:
    if isinstance(params, ch.CharacterParams):
        return ch.eval(params, g)
    return ps.eval(params, g)


def _write_report(path: str | None, reports) -> None:
    if path:
        Path(path).write_text(verify.reports_to_json(reports) + "\n")


def cmd_eval(args) -> int:
    params = _load_params(args.params)
    elements = _read_elements(args, params.group)
    if args.element is not None:
        print(format_complex(_evaluate(params, elements[0])))
    else:
        for g in elements:
            print(f"{format_element(g, params.group)}\t{format_complex(_evaluate(params, g))}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    if args.element is None:
        raise UsageError("decompose needs --element")
    group = None
    if args.params:
        group = _load_params(args.params).group
    elif args.group:
        group = group_from_json(Path(args.group))
    if group is not None:
        g = parse_element(args.element, group)
        parts = generalized_cycles(g)
        print(f"element: {format_element(g, group)}")
        for i, c in enumerate(parts, 1):
            inv = group.name(cycle_invariant(c, group))
            print(f"cycle {i}: {format_element(c.element(group), group)}  invariant: {inv}")
        return EXIT_OK
    # without a group the invariant is shown as the ordered word of color names
    perm, names = parse_element_parts(args.element)
    labels = sorted(set(names.values()))
    idx = {n: i + 1 for i, n in enumerate(labels)}
    g = WreathElement(perm, {p: idx[n] for p, n in names.items()}, 0)
    print(f"element: {_format_named(g, labels)}")
    for i, c in enumerate(generalized_cycles(g), 1):
        word = [labels[c.colors[p] - 1] for p in ps.cycle_color_order(c) if p in c.colors]
        part = WreathElement(c.cycle_perm, dict(c.colors), 0)
        print(f"cycle {i}: {_format_named(part, labels)}  invariant: {'*'.join(word) or 'e'}")
    return EXIT_OK


def _format_named(g: WreathElement, labels) -> str:
    text = str(g.s)
    if g.colors:
        text += "[" + ",".join(f"{labels[c - 1]}@{p}" for p, c in g.colors.items()) + "]"
    return text


def cmd_gram(args) -> int:
    params = _load_params(args.params)
    elements = _read_elements(args, params.group)
    if len(elements) > 12:
        raise UsageError("gram takes at most 12 elements")
    ev = verify.evaluator_for(params)
    gm = verify.gram_matrix(ev, elements)
    for row in gm:
        print("  ".join(format_complex(z) for z in row))
    rep = verify.gram_check(ev, elements, seed=args.seed)
    lam = next(d["min_eigenvalue"] for d in rep.details if "min_eigenvalue" in d)
    print(f"min eigenvalue: {format_number(lam)}")
    print(f"PSD: {'true' if rep.passed else 'false'}")
    _write_report(args.report, [rep])
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    params = _load_params(args.params)
    reports = verify.full_suite(params, seed=args.seed, trials=args.trials,
                                max_support=args.max_support, cap=args.cap)
    _print_reports(reports)
    _write_report(args.report, reports)
    return EXIT_OK if verify.all_passed(reports) else EXIT_FAIL


def _print_reports(reports) -> None:
    width = max(len(r.name) for r in reports)
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.name:<{width}}  {status}  worst={r.worst_residual:.3e}  samples={r.samples}")


def cmd_oracle(args) -> int:
    params = _load_params(args.params)
    if not isinstance(params, ps.StateParams):
        raise UsageError("oracle needs state parameters")
    rng = np.random.default_rng(args.seed)
    residuals, labels = [], []
    print("element\tclosed_form\toracle\tresidual")
    for _ in range(args.trials):
        g = verify.random_element(params.group, rng, args.max_support)
        closed = ps.eval(params, g)
        brute = fo.oracle_eval(params, g, cap=args.cap)
        r = abs(closed - brute)
        residuals.append(r)
        labels.append(format_element(g, params.group))
        print(f"{labels[-1]}\t{format_complex(closed)}\t{format_complex(brute)}\t{r:.3e}")
    rep = verify.CheckReport.from_residuals("oracle", residuals, verify.EVAL_TOL, args.seed,
                                            "closed form agrees with the tensor-trace definition", labels)
    print(f"worst residual: {rep.worst_residual:.3e}  ({'PASS' if rep.passed else 'FAIL'})")
    _write_report(args.report, [rep])
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_kms(args) -> int:
    params = _load_params(args.params)
    if not isinstance(params, ps.StateParams):
        raise UsageError("kms needs state parameters")
    res = ps.check_kms(params)
    line = f"KMS: {'true' if res.kms else 'false'}"
    if res.reason:
        line += f" ({res.reason})"
    print(line)
    _write_report(args.report, [verify.kms_report(params)])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wreath-states",
        description="Evaluate and check central states on wreath products with S_inf.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, element=True):
        p.add_argument("--params", help="character or state parameter file (JSON)")
        if element:
            p.add_argument("--element", help='element text, e.g. "(1 2 3)[a@1,b@3]"')
            p.add_argument("--elements", help="file with one element per line, or a JSON list of strings")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--report", help="write a JSON report to this path")
        p.add_argument("--cap", type=int, default=fo.DEFAULT_CAP, help="maximum tensor sum size")

    p = sub.add_parser("eval", help="evaluate at one or more elements")
    common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("decompose", help="split an element into generalized cycles")
    common(p)
    p.add_argument("--group", help="group file used to resolve color names")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("gram", help="Gram matrix and positive semidefiniteness")
    common(p)
    p.set_defaults(func=cmd_gram)

    for name, func, trials, help_ in (
        ("verify", cmd_verify, 50, "run the property suite"),
        ("oracle", cmd_oracle, 50, "compare closed forms with the tensor oracle"),
    ):
        p = sub.add_parser(name, help=help_)
        common(p, element=False)
        p.add_argument("--trials", type=int, default=trials)
        p.add_argument("--max-support", type=int, default=5)
        p.set_defaults(func=func)

    p = sub.add_parser("kms", help="decide the KMS property of a state")
    common(p, element=False)
    p.set_defaults(func=cmd_kms)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ch.ParameterError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (FormatError, UsageError, fo.CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GroupError as exc:
        print(f"invalid group data: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
