"""Command line interface.

Subcommands: analyze (matrix, eigenvalue, defect graph), classify (seed or
census verdict), simulate (approximation run), spectrum (band spectra along
the run).  Exit codes: 0 success / good verdict, 2 usage or unusable input,
3 bad seed, 4 budget exhausted, 5 numeric failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from .approximation import run_approximation, run_to_csv, run_to_json
from .defect_graph import (
    SeedCensus,
    build_defect_graph,
    classify,
    self_correcting,
    to_dot,
)
from .dictionary import DEFAULT_WORD_BUDGET, illegal_words, legal_words
from .errors import (
    NotPrimitiveError,
    NumericError,
    ParseError,
    ResourceBudgetError,
    SubhullError,
)
from .reporting import dumps_canonical, format_float
from .spectral import PotentialMap, spectral_run, spectral_run_to_csv, spectral_run_to_json
from .specfile import SubstitutionSpec, bundled_names, load_bundled, load_spec
from .words import CyclicWord

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BAD_SEED = 3
EXIT_RESOURCE = 4
EXIT_NUMERIC = 5


class UsageError(SubhullError):
    pass


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError, NotPrimitiveError, ValueError) as e:
        print(f"subhull: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as e:
        print(f"subhull: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceBudgetError as e:
        print(f"subhull: resource budget exhausted: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except NumericError as e:
        print(f"subhull: numeric failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subhull",
        description="Periodic approximation of substitution subshifts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="matrix, eigenvalue, legality, defect graph")
    _common_args(p)
    p.add_argument("--dot", metavar="FILE", help="write the defect graph in DOT format ('-' = stdout)")
    p.add_argument("--json", metavar="FILE", help="write the analysis as JSON ('-' = stdout)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classify", help="good/bad verdict for a seed or census")
    _common_args(p)
    p.add_argument("--seed", metavar="WORD", help="periodic seed (defaults to the spec's seed)")
    p.add_argument("--census", metavar="W1,W2,...", help="explicit 2-word census instead of a seed")
    p.add_argument("--json", metavar="FILE", help="write the verdict as JSON ('-' = stdout)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("simulate", help="iterate the seed and track dictionary distance")
    _common_args(p)
    p.add_argument("--seed", metavar="WORD", help="periodic seed (defaults to the spec's seed)")
    p.add_argument("--n", type=int, default=10, help="number of substitution steps (default 10)")
    p.add_argument("--L", type=int, default=41, help="largest dictionary length scanned (default 41)")
    p.add_argument("--csv", metavar="FILE", help="write per-step CSV ('-' = stdout)")
    p.add_argument("--json", metavar="FILE", help="write the full run as JSON ('-' = stdout)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("spectrum", help="band spectra along the approximation steps")
    _common_args(p)
    p.add_argument("--seed", metavar="WORD", help="periodic seed (defaults to the spec's seed)")
    p.add_argument("--n", type=int, default=10, help="number of substitution steps (default 10)")
    p.add_argument(
        "--potential",
        metavar="K=V,...",
        help="letter potential, e.g. 0=0.0,1=1.0 (defaults to the spec's potential)",
    )
    p.add_argument("--csv", metavar="FILE", help="write per-step CSV ('-' = stdout)")
    p.add_argument("--json", metavar="FILE", help="write the full run as JSON ('-' = stdout)")
    p.set_defaults(func=cmd_spectrum)
    return parser


def _common_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("spec", help="spec file path, or a bundled name (see README)")
    p.add_argument("--tol", type=float, default=1e-12, help="eigenvalue tolerance (default 1e-12)")
    p.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_WORD_BUDGET,
        help=f"dictionary word budget (default {DEFAULT_WORD_BUDGET})",
    )


def _load(args) -> SubstitutionSpec:
    if os.path.exists(args.spec):
        return load_spec(args.spec)
    names = bundled_names()
    if args.spec in names:
        return load_bundled(args.spec)
    raise UsageError(
        f"spec {args.spec!r} is neither a file nor a bundled name (bundled: {', '.join(names)})"
    )


def _emit(text: str, target: str | None) -> None:
    if target is None or target == "-":
        sys.stdout.write(text)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)


def _seed_from(args, spec: SubstitutionSpec) -> CyclicWord:
    if getattr(args, "seed", None):
        return CyclicWord(spec.substitution.alphabet.parse_word(args.seed))
    if spec.seed is None:
        raise UsageError("no seed: pass --seed or add a 'seed:' line to the spec")
    return spec.seed


# ---------------------------------------------------------------- analyze


def cmd_analyze(args) -> int:
    spec = _load(args)
    sub = spec.substitution
    fmt = sub.alphabet.format_word
    perron = sub.perron(tol=args.tol)
    legal2 = sorted(legal_words(sub, 2, args.budget).words)
    illegal2 = sorted(illegal_words(sub, 2, args.budget).words)
    graph = build_defect_graph(sub, args.budget)
    correcting, cycle = self_correcting(graph)

    lines = []
    lines.append(f"name: {spec.name or '(unnamed)'}")
    lines.append(f"alphabet: {' '.join(sub.alphabet.letters)}")
    for a in sub.alphabet:
        lines.append(f"rule {a} -> {fmt(sub.rule(a))}")
    lines.append(f"matrix (entry i,j = count of letter i in rule j): {sub.matrix().tolist()}")
    lines.append(f"primitivity exponent: {perron.primitivity_exponent}")
    lines.append(f"perron eigenvalue: {format_float(perron.eigenvalue)}")
    lines.append(
        "growth bounds: "
        f"{format_float(perron.growth_lower)} .. {format_float(perron.growth_upper)}"
        f" (horizon {perron.horizon})"
    )
    lines.append(f"legal 2-words: {' '.join(fmt(w) for w in legal2)}")
    lines.append(f"illegal 2-words: {' '.join(fmt(w) for w in illegal2) or '(none)'}")
    edges = ", ".join(f"{fmt(u)} -> {fmt(w)}" for u, w in graph.edges) or "(none)"
    lines.append(f"defect edges: {edges}")
    if correcting:
        lines.append("self-correcting: yes (no defect cycles; every seed converges)")
    else:
        lines.append(f"self-correcting: no (cycle: {' -> '.join(fmt(v) for v in cycle)})")
    print("\n".join(lines))

    if args.dot:
        _emit(to_dot(graph), args.dot)
    if args.json:
        doc = {
            "kind": "analysis",
            "name": spec.name,
            "alphabet": list(sub.alphabet.letters),
            "rules": {a: fmt(sub.rule(a)) for a in sub.alphabet},
            "matrix": sub.matrix().tolist(),
            "primitivity_exponent": perron.primitivity_exponent,
            "eigenvalue": perron.eigenvalue,
            "growth_lower": perron.growth_lower,
            "growth_upper": perron.growth_upper,
            "horizon": perron.horizon,
            "legal_2words": [fmt(w) for w in legal2],
            "illegal_2words": [fmt(w) for w in illegal2],
            "defect_edges": [[fmt(u), fmt(w)] for u, w in graph.edges],
            "self_correcting": correcting,
            "cycle": None if cycle is None else [fmt(v) for v in cycle],
        }
        _emit(dumps_canonical(doc), args.json)
    return EXIT_OK


# ---------------------------------------------------------------- classify


def cmd_classify(args) -> int:
    spec = _load(args)
    sub = spec.substitution
    fmt = sub.alphabet.format_word
    graph = build_defect_graph(sub, args.budget)

    if args.census:
        words = [sub.alphabet.parse_word(tok) for tok in args.census.split(",") if tok.strip()]
        for w in words:
            if len(w) != 2:
                raise UsageError(f"census word {fmt(w)!r} does not have length 2")
        census = SeedCensus.from_words(words)
        origin = "explicit census"
    else:
        seed = _seed_from(args, spec)
        census = SeedCensus.from_cyclic(seed)
        origin = f"seed {fmt(seed.period)}"

    verdict = classify(graph, census)
    lines = [
        f"census ({origin}): {' '.join(fmt(w) for w in sorted(census.two_words))}",
        f"verdict: {verdict.verdict}",
    ]
    if verdict.good:
        lines.append(
            f"longest defect path from census: {verdict.max_path_length}"
            f" (< {verdict.bound}, so defects die out)"
        )
    else:
        lines.append(f"cycle: {' -> '.join(fmt(v) for v in verdict.cycle)}")
        lines.append(
            "path to cycle: " + (" -> ".join(fmt(v) for v in verdict.path_to_cycle) or "(at census)")
        )
    print("\n".join(lines))

    if args.json:
        doc = {
            "kind": "classification",
            "name": spec.name,
            "census": [fmt(w) for w in sorted(census.two_words)],
            "origin": origin,
            "verdict": verdict.verdict,
            "max_path_length": verdict.max_path_length,
            "bound": verdict.bound,
            "cycle": None if verdict.cycle is None else [fmt(v) for v in verdict.cycle],
            "path_to_cycle": None
            if verdict.path_to_cycle is None
            else [fmt(v) for v in verdict.path_to_cycle],
        }
        _emit(dumps_canonical(doc), args.json)
    return EXIT_OK if verdict.good else EXIT_BAD_SEED


# ---------------------------------------------------------------- simulate


def cmd_simulate(args) -> int:
    spec = _load(args)
    sub = spec.substitution
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    if args.L < 1:
        raise UsageError("--L must be >= 1")
    seed = _seed_from(args, spec)
    run = run_approximation(sub, seed, n_max=args.n, L_max=args.L, budget=args.budget)
    csv_text = run_to_csv(run)
    if args.csv or not args.json:
        _emit(csv_text, args.csv)
    if args.json:
        _emit(run_to_json(run), args.json)
    return EXIT_OK


# ---------------------------------------------------------------- spectrum


def cmd_spectrum(args) -> int:
    spec = _load(args)
    sub = spec.substitution
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    seed = _seed_from(args, spec)
    if args.potential:
        table = {}
        for item in args.potential.split(","):
            if not item.strip():
                continue
            if "=" not in item:
                raise UsageError(f"bad potential entry {item!r}, expected LETTER=VALUE")
            k, _, v = item.partition("=")
            k = k.strip()
            if k not in sub.alphabet:
                raise UsageError(f"potential for unknown letter {k!r}")
            try:
                table[k] = float(v)
            except ValueError:
                raise UsageError(f"potential value {v!r} is not a number") from None
        potential = PotentialMap.from_mapping(table)
    elif spec.potential is not None:
        potential = spec.potential
    else:
        raise UsageError("no potential: pass --potential or add 'potential X:' lines to the spec")
    for a in sub.alphabet:
        if a not in potential.letters:
            raise UsageError(f"no potential value for letter {a!r}")

    run = spectral_run(sub, seed, potential, n_max=args.n, tol=args.tol)
    csv_text = spectral_run_to_csv(run)
    if args.csv or not args.json:
        _emit(csv_text, args.csv)
    if args.json:
        _emit(spectral_run_to_json(run), args.json)
    return EXIT_OK
