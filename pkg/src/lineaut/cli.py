"""Command-line interface.

All inputs and outputs are JSON.  Composition is LEFT TO RIGHT throughout:
a map file for g composed with f as ``g then f``, and solver equations read
the same way (``solve-xgx`` solves x g x = f with x applied first).

Exit codes: 0 success (and verified where applicable), 1 no solution
(non-conjugate inputs), 2 input error, 3 verification failure.

Procedural solutions have no finite exact serialization (their graphs have
infinitely many pieces), so they are emitted as sampled graphs at the
verification points plus a construction descriptor.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .automorphism import PLAutomorphism, compose, inverse, power
from .conjugacy import conjugation, solve_conjugacy, verify_pointwise
from .equations import (
    Word,
    commutator_decomposition,
    nth_root,
    solve_xgx,
    solve_word,
    word_automorphism,
)
from .oracle import measure_locate
from .rational import format_rational, parse_rational
from .samples import DEFAULT_SAMPLE_COUNT, default_samples
from .terrain import enumerate_color_sequences, realize, support_decompose

EXIT_OK = 0
EXIT_NO_SOLUTION = 1
EXIT_INPUT_ERROR = 2
EXIT_VERIFICATION_FAILED = 3


class InputError(Exception):
    pass


def _load_pl(path: str) -> PLAutomorphism:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    try:
        return PLAutomorphism.from_json_dict(data)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_word(path: str) -> Word:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    try:
        return Word.from_json_dict(data)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(payload: dict):
    print(json.dumps(payload, indent=2))


def _graph(solution, samples) -> list:
    return [{"x": format_rational(q), "y": format_rational(solution.forward(q))}
            for q in samples]


def _sample_set(args, *maps) -> list:
    terrains = tuple(support_decompose(m) for m in maps)
    return default_samples(args.samples, args.seed, terrains)


def _mode(args) -> str:
    return args.mode.replace("-", "_")


def cmd_terrain(args) -> int:
    g = _load_pl(args.map)
    terrain = support_decompose(g)
    _emit({"color_sequence": terrain.color_sequence(),
           "terrain": terrain.to_json_dict()})
    return EXIT_OK


def cmd_eval(args) -> int:
    g = _load_pl(args.map)
    x = parse_rational(args.point)
    y = g.backward(x) if args.inverse else g.forward(x)
    _emit({"x": format_rational(x), "y": format_rational(y)})
    return EXIT_OK


def cmd_conjugate(args) -> int:
    g = _load_pl(args.g)
    f = _load_pl(args.f)
    h = solve_conjugacy(g, f, mode=_mode(args))
    if h is None:
        _emit({
            "conjugate": False,
            "color_sequences": {
                "g": support_decompose(g).color_sequence(),
                "f": support_decompose(f).color_sequence(),
            },
        })
        return EXIT_NO_SOLUTION
    samples = _sample_set(args, g, f)
    verified = verify_pointwise(conjugation(g, h), f, samples)
    _emit({
        "conjugate": True,
        "construction": h.description,
        "solution_graph": _graph(h, samples),
        "verification": {"samples": len(samples), "verified": verified},
    })
    return EXIT_OK if verified else EXIT_VERIFICATION_FAILED


def cmd_solve_xgx(args) -> int:
    g = _load_pl(args.g)
    f = _load_pl(args.f)
    x = solve_xgx(g, f)
    samples = _sample_set(args, g, f, compose(f, g))

    def lhs(q):
        return x.forward(g.forward(x.forward(q)))

    verified = all(lhs(q) == f.forward(q) for q in samples)
    _emit({
        "construction": x.description,
        "solution_graph": _graph(x, samples),
        "verification": {"samples": len(samples), "verified": verified},
    })
    return EXIT_OK if verified else EXIT_VERIFICATION_FAILED


def cmd_solve_word(args) -> int:
    word = _load_word(args.word)
    g = _load_pl(args.g)
    try:
        assignment = solve_word(word, g)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    samples = _sample_set(args, g)
    value = word_automorphism(word, assignment)
    verified = verify_pointwise(value, g, samples)
    _emit({
        "word": word.to_json_dict(),
        "variables": {
            str(v): {"construction": getattr(assignment[v], "description", "piecewise-linear"),
                     "graph": _graph(assignment[v], samples)}
            for v in word.variables
        },
        "verification": {"samples": len(samples), "verified": verified},
    })
    return EXIT_OK if verified else EXIT_VERIFICATION_FAILED


def cmd_root(args) -> int:
    g = _load_pl(args.g)
    if args.n < 1:
        raise InputError("root order must be a positive integer")
    x = nth_root(g, args.n)
    samples = _sample_set(args, g)
    verified = verify_pointwise(power(x, args.n), g, samples)
    _emit({
        "n": args.n,
        "construction": getattr(x, "description", "piecewise-linear"),
        "solution_graph": _graph(x, samples),
        "verification": {"samples": len(samples), "verified": verified},
    })
    return EXIT_OK if verified else EXIT_VERIFICATION_FAILED


def cmd_commutator(args) -> int:
    g = _load_pl(args.g)
    x, y = commutator_decomposition(g)
    samples = _sample_set(args, g)
    lhs = compose(compose(compose(inverse(x), inverse(y)), x), y)
    verified = verify_pointwise(lhs, g, samples)
    _emit({
        "x": {"construction": getattr(x, "description", "piecewise-linear"),
              "graph": _graph(x, samples)},
        "y": {"construction": getattr(y, "description", "piecewise-linear"),
              "graph": _graph(y, samples)},
        "verification": {"samples": len(samples), "verified": verified},
    })
    return EXIT_OK if verified else EXIT_VERIFICATION_FAILED


def cmd_enumerate(args) -> int:
    if args.n < 1:
        raise InputError("terrain size must be a positive integer")
    seqs = enumerate_color_sequences(args.n)
    _emit({"n": args.n, "count": len(seqs), "sequences": seqs})
    return EXIT_OK


def cmd_realize(args) -> int:
    try:
        g = realize(args.sequence)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    roundtrip = support_decompose(g).color_sequence()
    _emit({
        "sequence": args.sequence,
        "automorphism": g.to_json_dict(),
        "roundtrip": roundtrip,
    })
    return EXIT_OK if roundtrip == args.sequence else EXIT_VERIFICATION_FAILED


def cmd_measure(args) -> int:
    g = _load_pl(args.map)
    alpha = parse_rational(args.alpha)
    gamma = parse_rational(args.gamma)
    try:
        report = measure_locate(g, alpha, gamma, mode=_mode(args))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit(report.to_json_dict())
    return EXIT_OK


def _add_sample_flags(parser):
    parser.add_argument("--samples", type=int, default=DEFAULT_SAMPLE_COUNT,
                        help="number of verification sample points")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for the randomized part of the sample set")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lineaut",
        description="Exact analysis and equation solving for order-automorphisms "
                    "of the line (composition is left to right).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--output", choices=("json",), default="json",
                        help="output format (JSON only)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("terrain", help="support decomposition and color sequence")
    p.add_argument("map")
    p.set_defaults(func=cmd_terrain)

    p = sub.add_parser("eval", help="evaluate a map at a rational point")
    p.add_argument("map")
    p.add_argument("point")
    p.add_argument("--inverse", action="store_true", help="evaluate the inverse map")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("conjugate", help="decide conjugacy of g and f and build h "
                                         "with f = h^-1 g h")
    p.add_argument("g")
    p.add_argument("f")
    p.add_argument("--mode", choices=("linear", "fast-forward"), default="linear")
    _add_sample_flags(p)
    p.set_defaults(func=cmd_conjugate)

    p = sub.add_parser("solve-xgx", help="solve x g x = f")
    p.add_argument("g")
    p.add_argument("f")
    _add_sample_flags(p)
    p.set_defaults(func=cmd_solve_xgx)

    p = sub.add_parser("solve-word", help="solve w(x_2, ..., x_n) = g for a reduced word")
    p.add_argument("word")
    p.add_argument("g")
    _add_sample_flags(p)
    p.set_defaults(func=cmd_solve_word)

    p = sub.add_parser("root", help="n-th root of a map")
    p.add_argument("g")
    p.add_argument("n", type=int)
    _add_sample_flags(p)
    p.set_defaults(func=cmd_root)

    p = sub.add_parser("commutator", help="write g as x^-1 y^-1 x y")
    p.add_argument("g")
    _add_sample_flags(p)
    p.set_defaults(func=cmd_commutator)

    p = sub.add_parser("enumerate-terrains", help="all color sequences of a given size")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("realize", help="build a map with a given color sequence")
    p.add_argument("sequence")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("measure", help="orbit location cost report")
    p.add_argument("map")
    p.add_argument("--alpha", required=True, help="orbit anchor")
    p.add_argument("--gamma", required=True, help="query point")
    p.add_argument("--mode", choices=("linear", "fast-forward"), default="linear")
    p.set_defaults(func=cmd_measure)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = list(argv)
    # let color sequences such as "-+-" pass through as positionals
    if "realize" in argv and "--" not in argv:
        argv.insert(argv.index("realize") + 1, "--")
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
