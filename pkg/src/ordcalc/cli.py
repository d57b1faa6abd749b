"""Command-line front end.

Every command builds a JSON report; ``--json`` prints it, otherwise a short
human rendering of the same report is printed.  Exit codes: 0 pass, 1 fail,
2 usage or syntax error, 3 unsupported input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import condensation as cond
from . import cyclic as cyc
from .errors import (
    DegenerateBase,
    ExponentHasLeast,
    HypothesisFailed,
    NotDiscreteUnbounded,
    OrdCalcError,
    Unsupported,
)
from .exponential import (
    FSFunction,
    fs_between,
    fs_compare,
    locate_rem_rep,
)
from .expiso import ExpIsoContext, main_iso, verify_exponentiable
from .laws import DEFAULT_SEED, SUITES, check_laws
from .linorder import OrdExp
from .syntax import (
    dumps,
    element_to_json,
    format_term,
    fs_from_json,
    fs_to_json,
    parse_element,
    parse_ordinal,
    parse_term,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 1, 2, 3
_U64 = 1 << 64
_UNSUPPORTED = (Unsupported, NotDiscreteUnbounded, HypothesisFailed, ExponentHasLeast,
                DegenerateBase)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= value < _U64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def default_seed():
    env = os.environ.get("ORDCALC_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return _seed(env)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"ORDCALC_SEED: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=None, help="64-bit seed")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--timing", action="store_true", help="add elapsed_ms to the report")

    p = _Parser(prog="ordcalc", description="Computations with countable linear orders.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    cmd("parse", "parse and pretty-print a term").add_argument("term")
    cmd("classify", "classify a term").add_argument("term")
    c = cmd("cmp", "compare two elements")
    c.add_argument("term")
    c.add_argument("a")
    c.add_argument("b")
    c = cmd("neighbors", "immediate predecessor and successor")
    c.add_argument("term")
    c.add_argument("element")
    c = cmd("condense", "Hausdorff condensation of a term")
    c.add_argument("term")
    c.add_argument("--gamma", default="1")
    c = cmd("ctlo-witness", "construct and validate a cyclic-transitivity witness")
    c.add_argument("term")
    c.add_argument("a")
    c.add_argument("b")
    c.add_argument("--via", choices=cyc.VIA_CHOICES)
    c.add_argument("--pairs", type=_positive, default=500, help="validation samples")
    c = cmd("cyclic-check", "truth value of the cyclic relation R(a, b, c)")
    c.add_argument("term")
    for name in ("a", "b", "c"):
        c.add_argument(name)
    c = cmd("exp-iso", "validate the isomorphism (L,a)^alpha -> (L,b)^alpha")
    c.add_argument("term")
    c.add_argument("a")
    c.add_argument("b")
    c.add_argument("--alpha", required=True)
    c.add_argument("--pairs", type=_positive, default=1000)
    c = cmd("exp-apply", "image of one element under the isomorphism")
    c.add_argument("term")
    c.add_argument("a")
    c.add_argument("b")
    c.add_argument("--alpha", required=True)
    c.add_argument("--element", required=True)
    c = cmd("check-laws", "run a property suite")
    c.add_argument("suite")
    c.add_argument("--budget", type=_positive, default=None)
    c = cmd("expcmp", "compare two finite-support functions")
    c.add_argument("f")
    c.add_argument("g")
    cmd("explocate", "locate a function below, at or above the constant").add_argument("f")
    c = cmd("expbetween", "a function strictly between f < g")
    c.add_argument("f")
    c.add_argument("g")
    return p


# ---------------------------------------------------------------------------
# commands; each returns (report, human text)

def _fs_arg(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad function JSON: {exc.msg} (at position {exc.pos})") from None
    return fs_from_json(data)


def _ok(result, text, checks=1):
    return {"status": "pass", "checks_run": checks, "counterexample": None,
            "result": result}, text


def _cmd_parse(args):
    term = parse_term(args.term)
    return _ok({"term": format_term(term)}, format_term(term))


def _cmd_classify(args):
    term = parse_term(args.term)
    c = term.classify()
    result = {"term": format_term(term), "has_least": c.has_least,
              "has_greatest": c.has_greatest, "discrete": c.discrete, "dense": c.dense,
              "empty": c.empty, "unbounded": c.unbounded}
    flags = [k for k in ("has_least", "has_greatest", "discrete", "dense", "empty",
                         "unbounded") if result[k]]
    return _ok(result, f"{format_term(term)}: {', '.join(flags) or 'none'}")


def _cmd_cmp(args):
    term = parse_term(args.term)
    a, b = parse_element(term, args.a), parse_element(term, args.b)
    c = term.cmp(a, b)
    return _ok({"cmp": c}, {-1: "<", 0: "=", 1: ">"}[c])


def _cmd_neighbors(args):
    term = parse_term(args.term)
    e = parse_element(term, args.element)
    p, s = term.neighbors(e)
    enc = lambda x: None if x is None else element_to_json(x)
    result = {"predecessor": enc(p), "successor": enc(s)}
    text = f"predecessor {dumps(enc(p))}\nsuccessor {dumps(enc(s))}"
    return _ok(result, text)


def _cmd_condense(args):
    term = parse_term(args.term)
    gamma = parse_ordinal(args.gamma)
    c = cond.condense_iterate(term, gamma)
    out = format_term(c.term)
    return _ok({"term": format_term(term), "gamma": str(gamma), "condensed": out}, out)


def _witness(args):
    term = parse_term(args.term)
    a, b = parse_element(term, args.a), parse_element(term, args.b)
    return cyc.build_witness(term, a, b, getattr(args, "via", None))


def _cmd_ctlo_witness(args):
    w = _witness(args)
    rep = cyc.validate_witness(w, seed=args.seed, samples=args.pairs)
    report = rep.to_json()
    report["result"] = {"witness": w.describe()}
    text = f"{w.via} witness on {w.term}: {report['status']} ({rep.checks} checks)"
    return report, text


def _cmd_cyclic_check(args):
    term = parse_term(args.term)
    a, b, c = (parse_element(term, x) for x in (args.a, args.b, args.c))
    r = cyc.cyclic_r(term, a, b, c)
    return _ok({"R": r}, "true" if r else "false")


def _context(args):
    term = parse_term(args.term)
    c = term.classify()
    if not (c.discrete and c.unbounded):
        raise NotDiscreteUnbounded(f"{term} is not discrete and unbounded")
    return ExpIsoContext(_witness(args), seed=args.seed)


def _cmd_exp_iso(args):
    alpha = parse_ordinal(args.alpha)
    ctx = _context(args)
    rep = verify_exponentiable(ctx, alpha, seed=args.seed, pairs=args.pairs,
                               squares=min(200, args.pairs))
    body = rep.to_json()
    report = {"status": body["status"],
              "checks_run": sum(r for r, _ in rep.checks.values()),
              "counterexample": body["counterexample"],
              "result": {"alpha": body["alpha"], "checks": body["checks"]}}
    lines = [f"alpha={body['alpha']}: {body['status']}"]
    lines += [f"  {k}: {v['run']} run, {v['failed']} failed" for k, v in body["checks"].items()]
    return report, "\n".join(lines)


def _cmd_exp_apply(args):
    alpha = parse_ordinal(args.alpha)
    ctx = _context(args)
    term = OrdExp(ctx.base, ctx.a, alpha)
    try:
        data = json.loads(args.element)
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad element JSON: {exc.msg}") from None
    if isinstance(data, dict) and isinstance(data.get("fs"), dict):
        f = fs_from_json(data)
        if not f.same_space(FSFunction(ctx.base, ctx.a, alpha)):
            raise UsageError("the function does not live in (L,a)^alpha")
    else:
        f = FSFunction.of(term, parse_element(term, args.element))
    image = main_iso(ctx, alpha, f)
    return _ok({"image": fs_to_json(image)}, dumps(element_to_json(image.element)))


def _cmd_check_laws(args):
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    rep = check_laws(args.suite, seed=args.seed, budget=args.budget)
    body = rep.to_json()
    report = {"status": body["status"], "checks_run": body["checks_run"],
              "counterexample": body["counterexample"],
              "result": {"suite": args.suite, "failures": body["failures"],
                         "cases": body["cases"]}}
    text = f"{args.suite}: {body['status']} ({body['checks_run']} checks, " \
           f"{body['failures']} failures)"
    return report, text


def _cmd_expcmp(args):
    c = fs_compare(_fs_arg(args.f), _fs_arg(args.g))
    return _ok({"cmp": int(c)}, {-1: "<", 0: "=", 1: ">"}[int(c)])


def _cmd_explocate(args):
    loc = locate_rem_rep(_fs_arg(args.f)).to_json()
    return _ok({"locator": loc}, dumps(loc))


def _cmd_expbetween(args):
    m = fs_between(_fs_arg(args.f), _fs_arg(args.g))
    return _ok({"between": fs_to_json(m)}, dumps(fs_to_json(m)))


COMMANDS = {
    "parse": _cmd_parse, "classify": _cmd_classify, "cmp": _cmd_cmp,
    "neighbors": _cmd_neighbors, "condense": _cmd_condense,
    "ctlo-witness": _cmd_ctlo_witness, "cyclic-check": _cmd_cyclic_check,
    "exp-iso": _cmd_exp_iso, "exp-apply": _cmd_exp_apply, "check-laws": _cmd_check_laws,
    "expcmp": _cmd_expcmp, "explocate": _cmd_explocate, "expbetween": _cmd_expbetween,
}


def _emit(report, text, args, code, out):
    if args is not None and getattr(args, "json", False):
        out.write(dumps(report) + "\n")
    else:
        out.write(text + "\n")
    return code


def run(argv, out=None, err=None) -> int:
    """Run one command; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    args = None
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if args.seed is None:
            args.seed = default_seed()
        report, text = COMMANDS[args.command](args)
        code = EXIT_PASS if report["status"] == "pass" else EXIT_FAIL
    except UsageError as exc:
        err.write(f"ordcalc: usage error: {exc}\n")
        return EXIT_USAGE
    except _UNSUPPORTED as exc:
        subterm = getattr(exc, "subterm", None)
        report = {"status": "unsupported", "checks_run": 0, "counterexample": None,
                  "result": {"error": str(exc),
                             "subterm": None if subterm is None else format_term(subterm)}}
        text = "unsupported" + ("" if subterm is None else f" {format_term(subterm)}") \
               + f": {exc}"
        code = EXIT_UNSUPPORTED
    except (OrdCalcError, ValueError) as exc:
        err.write(f"ordcalc: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    report = {"command": args.command, "seed": args.seed, **report}
    if args.timing:
        report["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return _emit(report, text, args, code, out)


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
