"""Command-line front end: evaluate field expressions, compute set
numerosities and coin-toss probabilities, and run the sampling-set
builder and verifier.

Exit codes: 0 success, 2 parse error, 3 domain error, 4 approximation
failure, 5 verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys

from ._lex import ParseError
from . import cointoss, realsets
from .approx import ApproximationFailure
from .field import parse_element
from .spaces import EnumerationError
from .lambda_builder import build_lambda, verify_lambda
from .spacefile import load_description, load_lambda, report_to_dict, verdict_to_dict

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_APPROX = 4
EXIT_VERIFY = 5


def _emit(args, payload: dict, lines) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def _cmd_field_eval(args) -> int:
    value = parse_element(args.expr)
    payload = {
        "value": str(value),
        "shadow": str(value.shadow()),
        "kind": value.classify(),
    }
    _emit(args, payload, [f"{key}: {val}" for key, val in payload.items()])
    return EXIT_OK


def _cmd_real_num(args) -> int:
    s = realsets.parse_set(args.expr)
    num = realsets.numerosity(s)
    payload = {
        "set": str(s),
        "numerosity": str(num),
        "shadow_ratio": str(realsets.shadow_ratio(s, realsets.ALPHA)),
        "lebesgue": str(realsets.lebesgue(s)),
    }
    _emit(args, payload, [f"{key}: {val}" for key, val in payload.items()])
    return EXIT_OK


def _cmd_real_measure(args) -> int:
    s = realsets.parse_set(args.expr)
    payload = {"set": str(s), "lebesgue": str(realsets.lebesgue(s))}
    _emit(args, payload, [f"{key}: {val}" for key, val in payload.items()])
    return EXIT_OK


def _cmd_coin_prob(args) -> int:
    e = cointoss.parse_event(args.expr)
    prob = cointoss.probability(e)
    payload = {
        "event": str(e),
        "probability": str(prob),
        "shadow": str(prob.shadow()),
        "kolmogorov": str(cointoss.kolmogorov(e)),
    }
    _emit(args, payload, [f"{key}: {val}" for key, val in payload.items()])
    return EXIT_OK


def _cmd_coin_cond(args) -> int:
    e = cointoss.parse_event(args.expr)
    given = cointoss.parse_event(args.given)
    if given.rows or given.removed:
        raise ValueError("the conditioning set must be a finite outcome set like {O(|H)}")
    value = cointoss.conditional(e, given.added)
    payload = {"event": str(e), "given": str(given), "conditional": str(value)}
    _emit(args, payload, [f"{key}: {val}" for key, val in payload.items()])
    return EXIT_OK


def _cmd_lambda_build(args) -> int:
    desc, req = load_description(args.description)
    report = build_lambda(desc, req)
    doc = report_to_dict(desc, req, report)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    lines = [
        f"universe: {doc['universe']}",
        f"m: {doc['m']}",
        f"N: {doc['N']}",
        f"alpha_bound: {doc['alpha_bound']}",
        f"c_min: {doc['c_min']}",
        f"positive cells: {len(doc['positive_cells'])}",
        f"null cells: {len(doc['null_cells'])}",
        f"lambda size: {len(doc['lambda'])}",
        f"traces: {doc['verdicts']['traces']}",
        f"identity_ok: {doc['identity_ok']}",
        f"all_ok: {doc['verdicts']['all_ok']}",
    ]
    _emit(args, doc, lines)
    return EXIT_OK if report.verdict.all_ok and report.identity_ok else EXIT_VERIFY


def _cmd_lambda_verify(args) -> int:
    desc, req = load_description(args.description)
    lam = load_lambda(desc, args.sample)
    verdict = verify_lambda(desc, req, lam)
    doc = verdict_to_dict(verdict)
    lines = [
        f"points_present: {doc['points_present']}",
        f"equal_traces: {doc['equal_traces']}",
        f"ratios_within: {doc['ratios_within']}",
        f"traces: {doc['traces']}",
        f"all_ok: {doc['all_ok']}",
    ]
    _emit(args, doc, lines)
    return EXIT_OK if verdict.all_ok else EXIT_VERIFY


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="numerosity",
        description="Exact counting measures, infinitesimal probabilities, "
        "and finite sampling sets that match measure ratios.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--json", action="store_true", help="emit JSON")
        cmd.set_defaults(func=func)
        return cmd

    cmd = add("field-eval", _cmd_field_eval, "evaluate a field expression over 'a'")
    cmd.add_argument("expr")

    cmd = add("real-num", _cmd_real_num, "numerosity of an interval-set expression")
    cmd.add_argument("expr")

    cmd = add("real-measure", _cmd_real_measure, "length of an interval-set expression")
    cmd.add_argument("expr")

    cmd = add("coin-prob", _cmd_coin_prob, "exact probability of a coin event")
    cmd.add_argument("expr")

    cmd = add("coin-cond", _cmd_coin_cond, "conditional probability given finite outcomes")
    cmd.add_argument("expr")
    cmd.add_argument("--given", required=True, help="finite outcome set, e.g. '{O(|H), O(T|H)}'")

    cmd = add("lambda-build", _cmd_lambda_build, "build a sampling set from a description file")
    cmd.add_argument("description", help="JSON measure-space description")
    cmd.add_argument("--out", help="write the full report JSON here")

    cmd = add("lambda-verify", _cmd_lambda_verify, "verify a sampling set against a description")
    cmd.add_argument("description", help="JSON measure-space description")
    cmd.add_argument("sample", help="JSON sampling set (bare list or report)")

    return parser


def _fail(args, category: str, exc: Exception) -> None:
    if args is not None and getattr(args, "json", False):
        print(json.dumps({"error": {"category": category, "message": str(exc)}}),
              file=sys.stderr)
    else:
        print(f"error[{category}]: {exc}", file=sys.stderr)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        _fail(args, "parse", exc)
        return EXIT_PARSE
    except ApproximationFailure as exc:
        _fail(args, "approximation", exc)
        return EXIT_APPROX
    except (json.JSONDecodeError, FileNotFoundError) as exc:
        _fail(args, "parse", exc)
        return EXIT_PARSE
    except (ValueError, ZeroDivisionError, EnumerationError, KeyError) as exc:
        _fail(args, "domain", exc)
        return EXIT_DOMAIN


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
