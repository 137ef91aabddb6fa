"""Command-line interface.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
parse errors.  --json swaps the line-oriented output for a single JSON
document that validates against schemas/report.schema.json.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from pathlib import Path
from typing import Any

from . import exprlang
from .pin import (
    check_presentation,
    cup_one_exponent,
    det_equals_sign_report,
    enumerate_group,
    extension_analysis,
    lemma_a_check,
    membership,
)
from .presentation import (
    CosetOverflow,
    PresentationSyntaxError,
    parse_presentation,
    sym_track_presentation,
    todd_coxeter,
)
from .quadratic import (
    BUILTIN_QPMS,
    n_star,
    parse_carrier_element,
    qpm_from_dict,
    qpm_to_dict,
    validate_qpm,
)
from .report import Report, command_report, dumps
from .scalars import binom2

USAGE_ERROR = 2


class _CliError(Exception):
    """Usage-level failure: bad input, unreadable file, parse error."""


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")

    p = argparse.ArgumentParser(prog="pincover", description="exact computations in the double cover of the symmetric group and its quadratic actions")
    sub = p.add_subparsers(dest="group", required=True)

    clifford = sub.add_parser("clifford", help="Clifford algebra expressions").add_subparsers(dest="command", required=True)
    ev = clifford.add_parser("eval", parents=[common], help="evaluate an expression to a canonical multivector")
    ev.add_argument("--dim", type=int, default=None, help="algebra dimension (default: inferred)")
    ev.add_argument("expr")
    ev.set_defaults(func=_cmd_clifford_eval)

    pin = sub.add_parser("pin", help="the double cover inside the Clifford algebra").add_subparsers(dest="command", required=True)
    de = pin.add_parser("delta", parents=[common], help="image permutation of a word, or NOT-MEMBER")
    de.add_argument("--dim", type=int, default=None)
    de.add_argument("word")
    de.set_defaults(func=_cmd_pin_delta)
    od = pin.add_parser("order", parents=[common], help="enumerated order against 2 n!")
    od.add_argument("--n", type=int, required=True)
    od.set_defaults(func=_cmd_pin_order)
    rel = pin.add_parser("relations", parents=[common], help="defining relations in the Clifford model")
    rel.add_argument("--n", type=int, required=True)
    rel.set_defaults(func=_cmd_pin_relations)
    la = pin.add_parser("lemma-a", parents=[common], help="square of the block swap")
    la.add_argument("--k", type=int, required=True)
    la.set_defaults(func=_cmd_pin_lemma_a)
    sp = pin.add_parser("split", parents=[common], help="does the cover split over the symmetric group")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=_cmd_pin_split)

    present = sub.add_parser("present", help="finite presentations").add_subparsers(dest="command", required=True)
    tc = present.add_parser("tc", parents=[common], help="coset enumeration order")
    tc.add_argument("--file", required=False, help="presentation file (default: built-in double cover)")
    tc.add_argument("--n", type=int, default=None, help="use the built-in presentation for this n")
    tc.add_argument("--max", type=int, default=100_000, help="coset table cap")
    tc.set_defaults(func=_cmd_present_tc)

    qpm = sub.add_parser("qpm", help="quadratic pair modules").add_subparsers(dest="command", required=True)
    qv = qpm.add_parser("validate", parents=[common], help="run the axiom suite on a module")
    qv.add_argument("--file", help="module JSON file")
    qv.add_argument("--builtin", choices=sorted(BUILTIN_QPMS), help="validate a shipped module")
    qv.set_defaults(func=_cmd_qpm_validate)
    qn = qpm.add_parser("nstar", parents=[common], help="apply the degree-0 action of an integer")
    qn.add_argument("--file", help="module JSON file")
    qn.add_argument("--builtin", choices=sorted(BUILTIN_QPMS))
    qn.add_argument("--n", type=int, required=True)
    qn.add_argument("--elem", required=True, help="degree-0 element, e.g. \"a + 2 b\"")
    qn.set_defaults(func=_cmd_qpm_nstar)
    qd = qpm.add_parser("dump", parents=[common], help="print a shipped module as JSON")
    qd.add_argument("--builtin", choices=sorted(BUILTIN_QPMS), required=True)
    qd.set_defaults(func=_cmd_qpm_dump)

    actions = sub.add_parser("actions", help="sign groups and crossed modules").add_subparsers(dest="command", required=True)
    ac = actions.add_parser("check", parents=[common], help="validate an actions-layer construction")
    ac.add_argument("--which", choices=["trivial-action", "sym-track-cm", "m-of-partial"], required=True)
    ac.add_argument("--n", type=int, default=3, help="dimension for the sign-group constructions")
    ac.add_argument("--qpm", choices=sorted(BUILTIN_QPMS), default="nil2", help="module for trivial-action")
    ac.set_defaults(func=_cmd_actions_check)

    rp = sub.add_parser("report", parents=[common], help="run the standard battery, write JSON + CSV + figures")
    rp.add_argument("--out", required=True, help="output directory")
    rp.set_defaults(func=_cmd_report)

    return p


# --- command bodies ---------------------------------------------------------
# each returns (reports, text_lines, inputs, outputs)

_CmdResult = tuple[list[Report], list[str], dict[str, Any], dict[str, Any]]


def _parse_expr(src: str, dim: int | None):
    try:
        ast = exprlang.parse(src)
        return exprlang.eval_expr(ast, dim)
    except (exprlang.ExprSyntaxError, ValueError) as ex:
        raise _CliError(str(ex)) from ex


def _cmd_clifford_eval(args) -> _CmdResult:
    mv = _parse_expr(args.expr, args.dim)
    rep = Report("clifford eval")
    rep.add("parsed and evaluated", True)
    return [rep], [str(mv)], {"expr": args.expr, "dim": args.dim}, {"value": str(mv), "dim": mv.n}


def _cmd_pin_delta(args) -> _CmdResult:
    mv = _parse_expr(args.word, args.dim)
    sigma = membership(mv)
    rep = Report("pin delta")
    rep.add("word evaluated", True)
    if sigma is None:
        return [rep], ["NOT-MEMBER"], {"word": args.word, "dim": args.dim}, {"delta": None}
    return [rep], [sigma.cycle_str()], {"word": args.word, "dim": args.dim}, {"delta": sigma.cycle_str()}


def _cmd_pin_order(args) -> _CmdResult:
    try:
        order = len(enumerate_group(args.n))
    except ValueError as ex:
        raise _CliError(str(ex)) from ex
    expected = 2 * math.factorial(args.n)
    rep = Report(f"pin order, n={args.n}")
    rep.add(f"enumerated order equals 2*{args.n}!", order == expected, witness=f"{order} != {expected}" if order != expected else "")
    return [rep], [f"{order} = 2*{args.n}!" if order == expected else f"{order} != 2*{args.n}! = {expected}"], {"n": args.n}, {"order": order, "expected": expected}


def _cmd_pin_relations(args) -> _CmdResult:
    try:
        rep = check_presentation(args.n)
    except ValueError as ex:
        raise _CliError(str(ex)) from ex
    return [rep], rep.lines(), {"n": args.n}, {}


def _cmd_pin_lemma_a(args) -> _CmdResult:
    try:
        ok, sign, rep = lemma_a_check(args.k)
    except ValueError as ex:
        raise _CliError(str(ex)) from ex
    exp = binom2(args.k) % 2
    sign_str = "-1" if sign < 0 else "+1" if sign > 0 else "not a scalar"
    line = f"tau_hat^2 = {sign_str} = omega^{exp}: {'PASS' if ok else 'FAIL'}"
    return [rep], [line], {"k": args.k}, {"sign": sign, "omega_exponent": exp}


def _cmd_pin_split(args) -> _CmdResult:
    try:
        ana = extension_analysis(args.n)
    except ValueError as ex:
        raise _CliError(str(ex)) from ex
    if ana.split:
        lines = [f"split: section found ({len(ana.section)} generators)"]
    else:
        lines = [f"non-split: {len(ana.failures)}/{len(ana.failures)} candidate sections fail"]
    return [ana.report], lines + ana.report.lines(), {"n": args.n}, {"split": ana.split}


def _cmd_present_tc(args) -> _CmdResult:
    if args.file and args.n:
        raise _CliError("--file and --n are mutually exclusive")
    if args.file:
        try:
            text = Path(args.file).read_text()
        except OSError as ex:
            raise _CliError(str(ex)) from ex
        try:
            pres = parse_presentation(text)
        except PresentationSyntaxError as ex:
            raise _CliError(str(ex)) from ex
        source = args.file
    elif args.n:
        pres = sym_track_presentation(args.n)
        source = f"built-in, n={args.n}"
    else:
        raise _CliError("one of --file or --n is required")
    rep = Report(f"coset enumeration ({source})")
    try:
        order = todd_coxeter(pres, max_cosets=args.max)
    except CosetOverflow as ex:
        rep.add("enumeration completed", False, witness=str(ex))
        return [rep], [f"overflow: {ex}"], {"file": args.file, "n": args.n, "max": args.max}, {"order": None}
    rep.add("enumeration completed", True)
    return [rep], [f"order {order}"], {"file": args.file, "n": args.n, "max": args.max}, {"order": order}


def _load_qpm(args):
    if bool(args.file) == bool(args.builtin):
        raise _CliError("exactly one of --file or --builtin is required")
    if args.builtin:
        return BUILTIN_QPMS[args.builtin](), args.builtin
    try:
        doc = json.loads(Path(args.file).read_text())
    except OSError as ex:
        raise _CliError(str(ex)) from ex
    except json.JSONDecodeError as ex:
        raise _CliError(f"bad JSON: {ex}") from ex
    try:
        return qpm_from_dict(doc), args.file
    except (KeyError, TypeError, ValueError) as ex:
        raise _CliError(f"bad module file: {ex}") from ex


def _cmd_qpm_validate(args) -> _CmdResult:
    C, source = _load_qpm(args)
    rep = validate_qpm(C)
    return [rep], rep.lines(), {"module": source}, {}


def _cmd_qpm_nstar(args) -> _CmdResult:
    C, source = _load_qpm(args)
    try:
        x = parse_carrier_element(C.c0, args.elem)
    except ValueError as ex:
        raise _CliError(str(ex)) from ex
    value = n_star(C, args.n, x, 0)
    rep = Report("qpm nstar")
    rep.add("computed", True)
    coords = list(C.c0.coords(value))
    return [rep], [str(value)], {"module": source, "n": args.n, "elem": args.elem}, {"value": str(value), "coords": coords}


def _cmd_qpm_dump(args) -> _CmdResult:
    C = BUILTIN_QPMS[args.builtin]()
    doc = qpm_to_dict(C)
    rep = Report("qpm dump")
    rep.add("serialized", True)
    return [rep], [json.dumps(doc, indent=2)], {"builtin": args.builtin}, {"module": doc}


def _cmd_actions_check(args) -> _CmdResult:
    from .actions import (
        crossed_action_from_sign_action,
        crossed_module_from_sign_group,
        m_of_partial,
        monoid_groupoid_laws,
        sign_group_sym_track,
        trivial_sign_group_action,
        validate_crossed_module,
        validate_sign_action,
        validate_sign_group,
    )

    inputs: dict[str, Any] = {"which": args.which}
    try:
        if args.which == "trivial-action":
            inputs["qpm"] = args.qpm
            C = BUILTIN_QPMS[args.qpm]()
            A = trivial_sign_group_action(C)
            reports = [validate_sign_action(A)]
            if reports[0].ok:
                _, cma = crossed_action_from_sign_action(A)
                reports.append(cma)
        elif args.which == "sym-track-cm":
            inputs["n"] = args.n
            sg = sign_group_sym_track(args.n)
            cm = crossed_module_from_sign_group(sg)
            reports = [validate_sign_group(sg), validate_crossed_module(cm)]
        else:
            inputs["n"] = args.n
            cm = crossed_module_from_sign_group(sign_group_sym_track(args.n))
            reports = [monoid_groupoid_laws(m_of_partial(cm))]
    except ValueError as ex:
        raise _CliError(str(ex)) from ex
    lines: list[str] = []
    for r in reports:
        lines.append(f"== {r.title}")
        lines.extend(r.lines())
    return reports, lines, inputs, {}


def _report_battery() -> list[Report]:
    from .actions import (
        crossed_module_from_sign_group,
        sign_group_sym_track,
        trivial_sign_group_action,
        validate_crossed_module,
        validate_sign_action,
    )

    reports: list[Report] = []
    for k in range(2, 7):
        reports.append(lemma_a_check(k)[2])
    orders = Report("orders match 2 n!")
    for n in range(2, 6):
        orders.add(f"n={n}", len(enumerate_group(n)) == 2 * math.factorial(n))
    reports.append(orders)
    for n in range(2, 6):
        reports.append(check_presentation(n))
    split = Report("splitting dichotomy")
    for n in range(2, 6):
        ana = extension_analysis(n)
        split.add(f"n={n} {'splits' if n in (2, 3) else 'does not split'}", ana.split == (n in (2, 3)))
    reports.append(split)
    for n in range(2, 5):
        reports.append(det_equals_sign_report(n))
    cup = Report("cup-one exponent on even pairs")
    for k in range(2, 7):
        for l in range(2, 7):
            cup.add(f"n={2 * k}, m={2 * l}", cup_one_exponent(2 * k, 2 * l) == (k + l) % 2)
    reports.append(cup)
    for name in sorted(BUILTIN_QPMS):
        r = validate_qpm(BUILTIN_QPMS[name]())
        r.title = f"module axioms: {name}"
        reports.append(r)
    for name in ("eta", "nil2"):
        r = validate_sign_action(trivial_sign_group_action(BUILTIN_QPMS[name]()))
        r.title = f"trivial sign action: {name}"
        reports.append(r)
    for n in (2, 3):
        r = validate_crossed_module(crossed_module_from_sign_group(sign_group_sym_track(n)))
        r.title = f"bridge crossed module, n={n}"
        reports.append(r)
    return reports


def _cmd_report(args) -> _CmdResult:
    from . import figures

    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as ex:
        raise _CliError(str(ex)) from ex
    started = time.monotonic()
    reports = _report_battery()

    csv_path = out / "summary.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["report", "check", "status", "witness"])
        for r in reports:
            for c in r.checks:
                writer.writerow([r.title, c.name, "pass" if c.passed else "fail", c.witness])

    doc = command_report("report", {"out": str(out)}, reports, started)
    json_path = out / "report.json"
    json_path.write_text(dumps(doc) + "\n")

    figure_paths = [
        str(figures.order_growth_figure(out / "order_growth.png")),
        str(figures.block_swap_sign_figure(out / "block_swap_signs.png")),
        str(figures.cayley_figure(out / "cayley_n3.png", 3)),
    ]

    n_checks = sum(len(r.checks) for r in reports)
    n_fail = sum(1 for r in reports for c in r.checks if not c.passed)
    lines = [
        f"wrote {json_path}",
        f"wrote {csv_path}",
        *(f"wrote {p}" for p in figure_paths),
        f"{n_checks - n_fail}/{n_checks} checks passed",
    ]
    outputs = {
        "json": str(json_path),
        "csv": str(csv_path),
        "figures": figure_paths,
        "checks": n_checks,
        "failures": n_fail,
    }
    return reports, lines, {"out": str(out)}, outputs


# --- dispatch ----------------------------------------------------------------


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        reports, lines, inputs, outputs = args.func(args)
    except _CliError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return USAGE_ERROR

    ok = all(r.ok for r in reports)
    if getattr(args, "json", False):
        command = f"{args.group} {args.command}" if getattr(args, "command", None) else args.group
        doc = command_report(command, inputs, reports, started)
        if outputs:
            doc["outputs"] = outputs
        print(dumps(doc))
    else:
        for line in lines:
            print(line)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
