"""Batch command line: JSON in (stdin or ``--in``), JSON out on stdout.

Exit codes: 0 success, 1 domain error (or a FAIL from ``verify``), 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cp, oracle
from .errors import CostLimitExceeded, TreeAlgebraError
from .jsonio import (
    MalformedInput,
    alphabet_of,
    endo_from_json,
    poly_from_json,
    poly_to_json,
    table_from_json,
    table_to_json,
    tree_from_json,
    tree_to_json,
    validate,
)
from .morphisms import grafting, similar
from .tree import Alphabet, check_over, decompose, to_words

ENUM_LIMIT = 10**6


def _read(args):
    try:
        if args.in_path:
            with open(args.in_path, encoding="utf-8") as fh:
                return json.load(fh)
        return json.load(sys.stdin)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"invalid JSON: {e}") from None
    except OSError as e:
        raise MalformedInput(f"cannot read input: {e}") from None


def _alphabet(args, obj=None) -> Alphabet:
    return alphabet_of(obj, Alphabet(args.alphabet))


def cmd_eval(args):
    obj = _read(args)
    validate(obj, {"type": "object", "required": ["polynomial"],
                   "properties": {"args": {"type": "array"}}}, "eval")
    alphabet = _alphabet(args, obj)
    p = poly_from_json(obj["polynomial"], alphabet)
    if "args" not in obj:
        return table_to_json(cp.tabulate(p, alphabet))
    trees = [tree_from_json(t, alphabet) for t in obj["args"]]
    return tree_to_json(p(*trees), alphabet)


def cmd_synth(args):
    g = table_from_json(_read(args), Alphabet(args.alphabet))
    return poly_to_json(cp.synthesize(g))


def cmd_check_wcp(args):
    g = table_from_json(_read(args), Alphabet(args.alphabet))
    witness = cp.gcp_witness(g)
    if witness is not None:
        raise cp.NotWCP(witness)
    return {"wcp": True}


def cmd_classify(args):
    g = table_from_json(_read(args), Alphabet(args.alphabet))
    c = cp.classify_sigma_valued(g)
    if isinstance(c, cp.Constant):
        return {"classification": "constant", "value": to_words(c.value)}
    if isinstance(c, cp.Projection):
        return {"classification": "projection", "index": c.index}
    if isinstance(c, cp.NotWCPClass):
        return {"classification": "not_wcp", "witness": c.witness.to_json()}
    return {"classification": "not_sigma_valued"}


def cmd_graft(args):
    obj = _read(args)
    validate(obj, {"type": "object", "required": ["tree"],
                   "oneOf": [{"required": ["letter", "tau"]}, {"required": ["images"]}],
                   "properties": {"letter": {"type": "string"}}}, "graft")
    alphabet = _alphabet(args, obj)
    t = tree_from_json(obj["tree"], alphabet)
    if "images" in obj:
        h = endo_from_json(obj, alphabet)
    else:
        if obj["letter"] not in alphabet:
            raise MalformedInput(f"letter {obj['letter']!r} is not in alphabet {alphabet}")
        h = grafting(obj["letter"], tree_from_json(obj["tau"], alphabet))
    return tree_to_json(h(t), alphabet)


def cmd_decompose(args):
    obj = _read(args)
    alphabet = _alphabet(args, obj)
    t = tree_from_json(obj, alphabet)
    left, right = decompose(t)
    return {"alphabet": alphabet.letters, "left": to_words(left), "right": to_words(right)}


def cmd_similar(args):
    obj = _read(args)
    validate(obj, {"type": "object", "required": ["trees"],
                   "properties": {"trees": {"type": "array", "minItems": 2, "maxItems": 2}}}, "similar")
    alphabet = _alphabet(args, obj)
    t1, t2 = (check_over(tree_from_json(t, alphabet), alphabet) for t in obj["trees"])
    return {"similar": similar(t1, t2, alphabet)}


def cmd_enum_trees(args):
    alphabet = Alphabet(args.alphabet)
    k = 3 if args.max_size is None else args.max_size
    count = sum(oracle.tree_counts(len(alphabet), k))
    if count > ENUM_LIMIT and not args.force:
        raise CostLimitExceeded(f"{count} trees exceeds {ENUM_LIMIT}; use --force")
    trees = [to_words(t) for t in oracle.enumerate_trees(alphabet, k)]
    return {"alphabet": alphabet.letters, "max_size": k, "count": len(trees), "trees": trees}


def cmd_verify(args):
    try:
        bounds = oracle.EnumerationBounds(
            alphabet=Alphabet(args.alphabet),
            max_tree_size=args.max_size,
            samples=args.samples,
            seed=args.seed,
        )
    except ValueError as e:
        raise MalformedInput(str(e)) from None
    if args.proposition == "all":
        reports = oracle.verify_all(bounds, force=args.force, jobs=args.jobs)
        out = [r.to_json() for r in reports]
        ok = all(r.passed for r in reports)
    else:
        r = oracle.verify_proposition(args.proposition, bounds, force=args.force)
        out, ok = r.to_json(), r.passed
    return out, 0 if ok else 1


COMMANDS = {
    "eval": (cmd_eval, "evaluate a polynomial on trees, or tabulate it on letters"),
    "synth": (cmd_synth, "synthesize the polynomial representing a function table"),
    "check-wcp": (cmd_check_wcp, "check the WCP condition of a function table"),
    "classify": (cmd_classify, "classify a letter-valued function table"),
    "graft": (cmd_graft, "apply a grafting or endomorphism to a tree"),
    "decompose": (cmd_decompose, "split a tree into its left and right factors"),
    "enum-trees": (cmd_enum_trees, "enumerate all trees up to a size"),
    "verify": (cmd_verify, "brute-force check the tree-algebra propositions"),
    "similar": (cmd_similar, "test whether two trees have the same skeleton"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedInput(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--alphabet", default="abc", help="alphabet letters (default: abc)")
    common.add_argument("--in", dest="in_path", metavar="PATH", help="read JSON input from PATH instead of stdin")
    common.add_argument("--max-size", type=int, metavar="K", help="tree size bound")
    common.add_argument("--force", action="store_true", help="run even beyond the cost limit")

    parser = _Parser(prog="treealg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (fn, help_) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        if name == "verify":
            p.add_argument("--proposition", default="all",
                           help="proposition to check, or 'all': " + ", ".join(oracle.PROPOSITIONS))
            p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
            p.add_argument("--samples", type=int, help="random samples for sampled checks")
            p.add_argument("--jobs", type=int, default=1, help="worker processes")
    return parser


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, separators=(",", ":"), ensure_ascii=False) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except MalformedInput as e:
        _emit({"error": e.code, "message": str(e)})
        return 2
    except SystemExit as e:
        return int(e.code or 0)
    try:
        result = args.fn(args)
    except MalformedInput as e:
        _emit({"error": e.code, "message": str(e)})
        return 2
    except TreeAlgebraError as e:
        _emit(e.to_json())
        return 1
    except Exception as e:  # never a bare traceback on stdout consumers
        _emit({"error": "INTERNAL_ERROR", "message": f"{type(e).__name__}: {e}"})
        return 1
    code = 0
    if isinstance(result, tuple):
        result, code = result
    _emit(result)
    return code


if __name__ == "__main__":
    sys.exit(main())
