"""Command-line front end.

Exit codes: classify returns 0 (in Sigma^1), 1 (not in Sigma^1),
2 (uncertified); witness/sphere return 2 when the sum condition fails;
verify returns 1 on any failed check; 3 means bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .characters import CharacterError, parse_character, validate_character
from .criterion import Membership, classify, sphere_description
from .graph import GraphError, SpokeParams, parse_graph, to_spoke_params
from .growth import HypothesisError, hypothesis_check, reduce_labels, witness_report
from .verify import verify_spokes

EXIT_CODES = {Membership.IN: 0, Membership.OUT: 1, Membership.UNCERTIFIED: 2}
EXIT_BAD_INPUT = 3


class UsageError(ValueError):
    pass


def _ints(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def resolve_params(args) -> tuple[SpokeParams, dict | None]:
    inline = None
    if args.k is not None or args.l is not None:
        k, l = _ints(args.k), _ints(args.l) or []
        if k is None:
            raise UsageError("--k is required with --l")
        if args.n is not None and args.n != len(k):
            raise UsageError(f"--n {args.n} disagrees with {len(k)} values of --k")
        inline = SpokeParams(tuple(k), tuple(l))
    roles = None
    if args.graph:
        g = parse_graph(Path(args.graph).read_text(encoding="utf-8"))
        found = to_spoke_params(g)
        if found is None:
            raise UsageError("graph is not a spoke-family graph")
        from_graph, roles = found
        if inline is not None and inline != from_graph:
            raise UsageError(f"inline parameters {inline.to_json()} disagree with the graph {from_graph.to_json()}")
        inline = from_graph
    if inline is None:
        raise UsageError("give spoke parameters with --k/--l or --graph")
    return inline, roles


def _config(args) -> dict:
    skip = {"func"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def cmd_classify(args) -> tuple[dict, int]:
    if not args.graph or not args.chi:
        raise UsageError("classify needs --graph and --chi")
    g = parse_graph(Path(args.graph).read_text(encoding="utf-8"))
    c = validate_character(g, parse_character(Path(args.chi).read_text(encoding="utf-8")))
    verdict = classify(g, c)
    return verdict.to_json(), EXIT_CODES[verdict.membership]


def cmd_witness(args) -> tuple[dict, int]:
    p, _ = resolve_params(args)
    try:
        return witness_report(p, args.smax, args.method), 0
    except HypothesisError as exc:
        return {"params": p.to_json(), "hypothesis_sum": str(exc.total), "error": str(exc)}, 2


def cmd_verify(args) -> tuple[dict, int]:
    p, _ = resolve_params(args)
    report = verify_spokes(p, args.jmin, args.jmax, corrupt_theta=args.corrupt_theta)
    return report, 0 if report["passed"] else 1


def cmd_sphere(args) -> tuple[dict, int]:
    p, roles = resolve_params(args)
    try:
        return sphere_description(p, roles), 0
    except ValueError as exc:
        return {"params": p.to_json(), "hypothesis_sum": str(hypothesis_check(p)[1]), "error": str(exc)}, 2


def cmd_reduce(args) -> tuple[dict, int]:
    p, _ = resolve_params(args)
    rp = reduce_labels(p)
    ok, total = hypothesis_check(p)
    return {
        "params": p.to_json(),
        "reduced_params": rp.to_json(),
        "reductions": [{"spoke": i, "from": a, "to": b} for i, a, b in rp.reductions],
        "hypothesis_sum": str(total),
        "hypothesis_holds": ok,
    }, 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sigma-artin", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, params=True):
        sp.add_argument("--graph", help="graph file (vertex/edge lines)")
        sp.add_argument("--out", help="write JSON here instead of stdout")
        if params:
            sp.add_argument("--n", type=int)
            sp.add_argument("--k", help="k_1,...,k_n")
            sp.add_argument("--l", help="l_2,...,l_n")
        return sp

    sp = common(sub.add_parser("classify", help="decide Sigma^1 membership of a character"), params=False)
    sp.add_argument("--chi", help="character file (chi <vertex> <rational> lines)")
    sp.set_defaults(func=cmd_classify)

    sp = common(sub.add_parser("witness", help="dimension table of E_s"))
    sp.add_argument("--smax", type=int, default=4)
    sp.add_argument("--method", choices=["abelian", "words"], default="abelian")
    sp.set_defaults(func=cmd_witness)

    sp = common(sub.add_parser("verify", help="check the kernel and theta machinery"))
    sp.add_argument("--jmin", type=int)
    sp.add_argument("--jmax", type=int)
    sp.add_argument("--corrupt-theta", action="store_true", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_verify)

    common(sub.add_parser("sphere", help="describe Sigma^1 on the character sphere")).set_defaults(func=cmd_sphere)
    common(sub.add_parser("reduce", help="show the prime label reduction")).set_defaults(func=cmd_reduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "smax", 1) < 1:
            raise UsageError("--smax must be >= 1")
        body, code = args.func(args)
    except (UsageError, GraphError, CharacterError, OSError, ValueError) as exc:
        body, code = {"error": str(exc)}, EXIT_BAD_INPUT
        print(f"error: {exc}", file=sys.stderr)
    report = {"tool": "sigma-artin", "version": __version__, "command": args.command,
              "config": _config(args), "result": body}
    text = json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
