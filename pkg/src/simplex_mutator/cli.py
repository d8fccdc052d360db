"""Command-line interface: JSON in on stdin or a file, JSON or text out on stdout.

Exit codes: 0 success, 1 a verification suite failed, 2 usage or parse error,
3 domain validation error, 4 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus as corpus_mod
from . import sylvester as syl
from .mutation import MutationError, MutationMove, find_simplex_mutations, move_for_partition, mutate, mutate_simplex
from .simplex import FanoError, WeightSystem, degree, from_json, simplex_from_weights
from .singularity import ResourceLimitError, classify_polytope, classify_weights

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN, EXIT_LIMIT = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _emit(obj):
    sys.stdout.write(_dump(obj) + "\n")


def _read_json(path: str | None):
    try:
        text = sys.stdin.read() if path in (None, "-") else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from exc


def _read_simplex(path):
    data = _read_json(path)
    if not isinstance(data, dict) or not isinstance(data.get("vertices"), list):
        raise UsageError('simplex JSON needs a "vertices" list')
    try:
        return from_json(data)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, FanoError):
            raise
        raise UsageError(f"bad simplex JSON: {exc}") from exc


def _read_weights_or_simplex(path):
    data = _read_json(path)
    if isinstance(data, dict) and "weights" in data:
        try:
            return WeightSystem.from_json(data)
        except (TypeError, KeyError) as exc:
            raise UsageError(f"bad weights JSON: {exc}") from exc
    if isinstance(data, dict) and "vertices" in data:
        return from_json(data)
    raise UsageError('expected a simplex ("vertices") or weight ("weights") JSON object')


def cmd_weights(args):
    P = _read_simplex(args.file)
    _emit(P.weight_system().to_json())


def cmd_build(args):
    if args.weights:
        ws = WeightSystem(tuple(args.weights))
    else:
        data = _read_json(args.file)
        if not isinstance(data, dict) or "weights" not in data:
            raise UsageError('weights JSON needs a "weights" list')
        ws = WeightSystem.from_json(data)
    _emit(simplex_from_weights(ws).to_json())


def cmd_mutate(args):
    P = _read_simplex(args.file)
    if args.move:
        move = MutationMove.from_json(_read_json(args.move), P)
    elif args.apex is not None and args.min_face:
        move = move_for_partition(P, args.apex, tuple(args.min_face))
        if move is None:
            raise MutationError("partition admits no simplex mutation")
    elif args.w and args.factor:
        try:
            F = json.loads(args.factor)
        except json.JSONDecodeError as exc:
            raise UsageError(f"malformed --factor JSON: {exc}") from exc
        R = mutate(P, tuple(args.w), F)
        _emit({"dim": R.dim, "vertices": [list(v) for v in R.vertices]})
        return
    else:
        raise UsageError("give --move FILE, --apex with --min-face, or --w with --factor")
    _emit(mutate_simplex(P, move).to_json())


def cmd_moves(args):
    P = _read_simplex(args.file)
    moves = [m for m in find_simplex_mutations(P) if not (args.nontrivial and m.trivial)]
    out = []
    for m in moves:
        entry = m.to_json()
        entry["target"] = mutate_simplex(P, m).weight_system().to_json()
        out.append(entry)
    _emit(out)


def cmd_classify(args):
    obj = _read_weights_or_simplex(args.file)
    kappas = args.kappa or None
    if isinstance(obj, WeightSystem):
        _emit(classify_weights(obj, kappas).to_json())
    elif args.method == "weights":
        _emit(classify_weights(obj.weight_system(), kappas).to_json())
    else:
        _emit(classify_polytope(obj).to_json())


def cmd_degree(args):
    obj = _read_weights_or_simplex(args.file)
    d = degree(obj)
    _emit({"degree": str(d)})


def cmd_tower(args):
    out = []
    for a in ([args.a] if args.a is not None else range(args.n - 1)):
        for st in syl.tower(args.n, args.variant, a, args.m):
            entry = {"a": a, "m": st.m, "lambda": list(st.weights), "weights": sorted(st.weights), "h": st.h}
            if st.m >= 1:
                w = syl.kappa_witness(st)
                entry["kappa_witness"] = {"kappa": w.kappa, "sum": str(w.value), "verdict": w.verdict}
            out.append(entry)
    _emit(out)


def cmd_tree(args):
    if not 0 <= args.depth <= syl.MAX_TREE_DEPTH:
        raise ResourceLimitError(f"depth must be in 0..{syl.MAX_TREE_DEPTH}")
    g = syl.build_mutation_tree(args.n, args.variant, args.depth)
    dot = g.to_dot()
    data = g.to_json(classify=not args.no_classify)
    if args.dot:
        Path(args.dot).write_text(dot)
    if args.json:
        Path(args.json).write_text(_dump(data) + "\n")
    if not args.dot and not args.json:
        sys.stdout.write(dot)
    else:
        _emit({"depth_counts": data["depth_counts"], "edges": len(data["edges"])})


def _table(rows) -> bool:
    width = max((len(r[0]) for r in rows), default=10)
    ok = True
    for name, passed, checked, detail in rows:
        ok &= passed
        line = f"{'PASS' if passed else 'FAIL'}  {name.ljust(width)}  {checked:>6}"
        if detail:
            line += f"  {detail}"
        sys.stdout.write(line + "\n")
    sys.stdout.write(("all checks passed" if ok else "some checks FAILED") + "\n")
    return ok


def cmd_verify(args):
    rows = []
    if args.suite == "appendix":
        variants = [args.variant] if args.variant else list(syl.VARIANTS)
        for v in variants:
            for r in syl.verify_appendix_claims(args.n, v, args.m):
                rows.append((f"{v} n={args.n} {r.name}", r.passed, r.checked, r.counterexample))
    else:
        C = corpus_mod.generate_corpus(seed=args.seed)
        if args.suite == "mutation":
            checks = corpus_mod.mutation_suite(C, general_every=args.general_every)
        else:
            checks = corpus_mod.singularity_suite(C)
        for c in checks:
            rows.append((c.name, c.passed, c.checked, "; ".join(c.failures[:1])))
    return EXIT_OK if _table(rows) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="simplex-mutator", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(sp, help_text="input JSON (default: stdin)"):
        sp.add_argument("file", nargs="?", help=help_text)
        return sp

    with_file(sub.add_parser("weights", help="weights and multiplicity of a simplex")).set_defaults(func=cmd_weights)

    sp = with_file(sub.add_parser("build", help="simplex realising a weight system"), "weights JSON (default: stdin)")
    sp.add_argument("--weights", type=int, nargs="+", help="weights given inline")
    sp.set_defaults(func=cmd_build)

    sp = with_file(sub.add_parser("mutate", help="mutate a simplex"))
    sp.add_argument("--move", help="move JSON file (as printed by 'moves')")
    sp.add_argument("--apex", type=int)
    sp.add_argument("--min-face", type=int, nargs="+")
    sp.add_argument("--w", type=int, nargs="+", help="height function for the general construction")
    sp.add_argument("--factor", help="factor vertices as a JSON list, with --w")
    sp.set_defaults(func=cmd_mutate)

    sp = with_file(sub.add_parser("moves", help="list simplex-to-simplex mutations"))
    sp.add_argument("--nontrivial", action="store_true")
    sp.set_defaults(func=cmd_moves)

    sp = with_file(sub.add_parser("classify", help="canonical / terminal / Gorenstein"))
    sp.add_argument("--method", choices=("polytope", "weights"), default="polytope")
    sp.add_argument("--kappa", type=int, nargs="+", help="only scan these kappa values")
    sp.set_defaults(func=cmd_classify)

    with_file(sub.add_parser("degree", help="anticanonical degree")).set_defaults(func=cmd_degree)

    sp = sub.add_parser("tower", help="maximal-degree weight towers")
    sp.add_argument("n", type=int)
    sp.add_argument("--variant", choices=syl.VARIANTS, default="canonical")
    sp.add_argument("--a", type=int)
    sp.add_argument("--m", type=int, default=2)
    sp.set_defaults(func=cmd_tower)

    sp = sub.add_parser("tree", help="mutation graph from the maximal-degree space")
    sp.add_argument("n", type=int)
    sp.add_argument("--variant", choices=syl.VARIANTS, default="canonical")
    sp.add_argument("--depth", type=int, default=2)
    sp.add_argument("--dot", help="write DOT here")
    sp.add_argument("--json", help="write the JSON dump here")
    sp.add_argument("--no-classify", action="store_true", help="skip per-node singularity reports")
    sp.set_defaults(func=cmd_tree)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", required=True, choices=("appendix", "mutation", "singularity"))
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--variant", choices=syl.VARIANTS)
    sp.add_argument("--seed", type=int, default=corpus_mod.DEFAULT_SEED)
    sp.add_argument("--general-every", type=int, default=10,
                    help="re-run every k-th move through the general construction (0: never)")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except FanoError as exc:
        sys.stderr.write(f"invalid simplex: {exc}\n")
        return EXIT_DOMAIN
    except ResourceLimitError as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return EXIT_LIMIT
    except (MutationError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
