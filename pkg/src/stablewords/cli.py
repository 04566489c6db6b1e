"""Command-line front end.  Every subcommand prints one JSON document (or plain text).

Exit codes: 0 success, 2 input error, 3 resource guard exceeded, 4 internal
invariant violation.  The same arguments and seed give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from . import cache
from .algebraic import chi_alg, primitivity_rank
from .characters import CmSpec, parse_group, parse_partition_map, partition, trivial_group
from .config import CONFIG
from .enumeration import Lattice, kernel
from .errors import InputError, InvariantViolation, StableWordsError
from .graphs import gamma_power, words_graph
from .stable import beta, induction_coefficient, spi_search, stable_coefficient_sn, stable_coefficient_wreath
from .words import infer_rank, parse_words

SCHEMA = "v1"


# -- conversions to JSON-friendly values


def _num(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, float):
        return "inf" if x == float("inf") else ("-inf" if x == float("-inf") else x)
    return x


def _graph(g):
    letters = "abcdefghijklmnopqrstuvwxyz"
    return {"vertices": g.n,
            "edges": [[v, letters[x], t] for v, x, t in g.edges],
            "euler_characteristic": g.euler_characteristic(),
            "components": [list(c) for c in g.components]}


def _partition_arg(text):
    text = text.strip()
    if text in ("", "0", "()"):
        return ()
    try:
        return partition(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad partition '{text}'") from exc


def _words(args):
    text = args.words if getattr(args, "words", None) else args.word
    if not text:
        raise InputError("a word is required (--word or --words)")
    rank = args.rank or max(CONFIG.rank, infer_rank(text))
    return parse_words(text, rank)


def _word(args):
    ws = _words(args)
    if len(ws) != 1:
        raise InputError("exactly one word is expected")
    return ws[0]


def _group(args):
    group = parse_group(args.group) if args.group else trivial_group()
    if isinstance(group, CmSpec):
        raise InputError("this subcommand needs a finite group with an integer character table (S1..S5, C2)")
    return group


def _coefficient(c):
    return {"ratfun": c.ratfun.to_dict(), "pretty": c.ratfun.pretty(), "valid_from": c.valid_from,
            "variant": c.variant_used, "beta": _num(beta(c))}


# -- subcommands


def cmd_core_graph(args):
    if args.shape:
        g, _, _ = gamma_power(_word(args), _partition_arg(args.shape))
    else:
        g, _, _ = words_graph(_words(args))
    return {"graph": _graph(g)}


def cmd_quotients(args):
    words = _words(args)
    if args.shape:
        g, eta, _ = gamma_power(_word(args), _partition_arg(args.shape))
    else:
        g, eta, _ = words_graph(words)
    lat = Lattice(g, top=kernel(eta))
    by_chi = {}
    for p in lat.elements:
        chi = lat.graph(p).euler_characteristic()
        by_chi[chi] = by_chi.get(chi, 0) + 1
    out = {"count": len(lat), "by_euler_characteristic": {str(k): v for k, v in sorted(by_chi.items())}}
    if args.list:
        out["quotients"] = [{"partition": list(p), "graph": _graph(lat.graph(p))} for p in sorted(lat.elements)]
    return out


def cmd_pi(args):
    w = _word(args)
    pi, cw = primitivity_rank(w)
    _, crit = chi_alg([w])
    return {"pi": _num(pi), "c_w": cw, "crit_graphs": [_graph(r.morphism.codomain) for r in crit]}


def cmd_chi_alg(args):
    value, crit = chi_alg(_words(args))
    return {"value": _num(value), "crit_count": len(crit),
            "crit_graphs": [_graph(r.morphism.codomain) for r in crit]}


def cmd_stable_sn(args):
    w = _word(args)
    mu = _partition_arg(args.mu)
    c = stable_coefficient_sn(w, mu)
    out = {"word": str(w), "mu": list(mu), **_coefficient(c)}
    if args.at is not None:
        out["value"] = _num(c.value(args.at))
    return out


def _arrm(args, group):
    return parse_partition_map(args.arrm, group)


def cmd_stable_wreath(args):
    group = _group(args)
    w = _word(args)
    arrm = _arrm(args, group)
    c = stable_coefficient_wreath(group, w, arrm)
    out = {"word": str(w), "group": group.name, "arrm": str(arrm), **_coefficient(c)}
    if args.at is not None:
        out["value"] = _num(c.value(args.at))
    return out


def cmd_induction(args):
    group = _group(args)
    w = _word(args)
    arrm = _arrm(args, group)
    r = induction_coefficient(group, w, arrm, path=args.path)
    return {"word": str(w), "group": group.name, "arrm": str(arrm), "path": args.path,
            "ratfun": r.to_dict(), "pretty": r.pretty()}


def cmd_beta(args):
    w = _word(args)
    if args.arrm is not None:
        group = _group(args)
        c = stable_coefficient_wreath(group, w, _arrm(args, group))
    else:
        c = stable_coefficient_sn(w, _partition_arg(args.mu or "1"))
    return {"word": str(w), "beta": _num(beta(c)), "coefficient": c.ratfun.pretty()}


def cmd_spi_bound(args):
    w = _word(args)
    constraint = None
    if args.mod is not None:
        constraint = ("mod", args.mod)
    elif args.phi:
        if ":" not in args.phi:
            raise InputError("--phi expects GROUP:LABEL, for example S3:std")
        gtext, label = args.phi.split(":", 1)
        group = parse_group(gtext)
        constraint = ("phi", group, label)
    res = spi_search(w, args.dmax, constraint)
    return {"word": str(w),
            "per_degree_minima": {str(d): _num(v) for d, v in res.per_degree_minima.items()},
            "overall_upper_bound": _num(res.overall_upper_bound),
            "witnesses": [{"degree": r.degree, "cycle_type": list(r.cycle_type), "euler_characteristic": r.sigma_chi,
                           "ratio": _num(r.ratio), "graph": _graph(r.b.codomain)} for r in res.witnesses],
            "skipped": [{"degree": d, "cycle_type": list(nu)} for d, nu in res.skipped]}


def cmd_verify(args):
    from .verify import verify_suite

    only = [args.criterion] if args.criterion else None
    results = verify_suite(args.suite, only)
    for r in results:
        print(r.line(), file=sys.stderr)
    return {"suite": args.suite, "passed": all(r.passed for r in results),
            "criteria": [r.to_dict() for r in results]}


COMMANDS = {
    "core-graph": cmd_core_graph,
    "quotients": cmd_quotients,
    "pi": cmd_pi,
    "chi-alg": cmd_chi_alg,
    "stable-sn": cmd_stable_sn,
    "stable-wreath": cmd_stable_wreath,
    "induction": cmd_induction,
    "beta": cmd_beta,
    "spi-bound": cmd_spi_bound,
    "verify": cmd_verify,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="stablewords", description="Exact word measures on symmetric groups and wreath products.")
    parser.add_argument("--rank", type=int, default=None, help="rank of the free group (default: 2 or the letters used)")
    parser.add_argument("--seed", type=int, default=CONFIG.seed)
    parser.add_argument("--output", choices=["json", "text"], default="json")
    parser.add_argument("--vertex-limit", type=int, default=CONFIG.vertex_limit)
    parser.add_argument("--cache", default=os.environ.get(cache.ENV_VAR), help=f"memo cache file (or ${cache.ENV_VAR})")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, help_text, words=True):
        p = sub.add_parser(name, help=help_text)
        if words:
            p.add_argument("--word")
            p.add_argument("--words", help="comma-separated words")
        return p

    p = add("core-graph", "the core graph of a word multiset, or of a power cover with --shape")
    p.add_argument("--shape")
    p = add("quotients", "surjective immersions out of a core graph")
    p.add_argument("--shape")
    p.add_argument("--list", action="store_true")
    add("pi", "primitivity rank and the number of critical subgroups")
    add("chi-alg", "algebraic Euler characteristic of a word multiset")
    p = add("stable-sn", "stable Fourier coefficient over S_N")
    p.add_argument("--mu", default="1")
    p.add_argument("--at", type=int)
    for name, text in (("stable-wreath", "stable Fourier coefficient over G wr S_N"),
                       ("induction", "coefficient of an induced character")):
        p = add(name, text)
        p.add_argument("--group", default="C2")
        p.add_argument("--arrm", required=True, help="partition map, for example sign:1 or std:1;triv:1")
        if name == "induction":
            p.add_argument("--path", choices=["algebraic", "surjective"], default="algebraic")
        else:
            p.add_argument("--at", type=int)
    p = add("beta", "decay exponent of a stable coefficient")
    p.add_argument("--mu")
    p.add_argument("--group")
    p.add_argument("--arrm")
    p = add("spi-bound", "upper bounds on the stable primitivity rank from small diagrams")
    p.add_argument("--dmax", type=int, default=2)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--mod", type=int)
    g.add_argument("--phi", help="GROUP:LABEL, for example S3:std")
    p = add("verify", "run the acceptance checks", words=False)
    p.add_argument("--suite", choices=["quick", "full"], default="quick")
    p.add_argument("--criterion", type=int, choices=range(1, 12))
    return parser


def _text(doc, indent=""):
    lines = []
    for k, v in doc.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.extend(_text(v, indent + "  "))
        else:
            lines.append(f"{indent}{k}: {json.dumps(v, sort_keys=True, ensure_ascii=False)}")
    return lines


def emit(doc, mode):
    if mode == "text":
        print("\n".join(_text(doc)))
    else:
        print(json.dumps(doc, sort_keys=True, ensure_ascii=False))


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    CONFIG.seed = args.seed
    CONFIG.vertex_limit = args.vertex_limit
    CONFIG.output = args.output
    CONFIG.cache_path = args.cache
    if args.rank is not None:
        if args.rank < 1:
            print("rank must be positive", file=sys.stderr)
            return 2
        CONFIG.rank = args.rank
    cache.load(args.cache)
    try:
        body = COMMANDS[args.command](args)
    except StableWordsError as exc:
        emit({"schema": SCHEMA, "seed": args.seed, "command": args.command,
              "error": type(exc).__name__, "message": str(exc)}, args.output)
        return exc.exit_code
    except AssertionError as exc:
        err = InvariantViolation(str(exc))
        emit({"schema": SCHEMA, "seed": args.seed, "command": args.command,
              "error": type(err).__name__, "message": str(exc)}, args.output)
        return err.exit_code
    cache.save(args.cache)
    doc = {"schema": SCHEMA, "seed": args.seed, "command": args.command, **body}
    emit(doc, args.output)
    if args.command == "verify" and not body["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
