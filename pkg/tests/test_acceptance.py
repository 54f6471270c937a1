"""End-to-end scorecard.

Each test checks one numbered claim about the package and prints exactly one
line, "CRITERION <k> PASS ..." or "CRITERION <k> FAIL ...", so a full run
reads as a scorecard.  Run with `pytest tests/test_acceptance.py -v -rA` (or
-s) to see the lines.  Every test also enforces its own wall-clock budget.
"""

import math
import time

import numpy as np

from subhull import (
    CyclicWord,
    PotentialMap,
    bands,
    bounds,
    build_defect_graph,
    check_bounds,
    classify,
    classify_by_walk_length,
    complexity,
    complexity_cap,
    defect_paths,
    illegal_words,
    legal_words,
    repetitivity_constant,
    run_approximation,
    self_correcting,
    spectral_run,
    transfer_spectrum_mask,
    walk_frontier,
)
from subhull.defect_graph import SeedCensus
from subhull.substitution import Substitution
from subhull.words import Alphabet

GOLDEN = (1 + math.sqrt(5)) / 2

SELF_CORRECTING = ("fibonacci", "thue_morse", "period_doubling", "golay_rudin_shapiro")


def two(words):
    """Parse 'ab cd' into a set of 2-letter tuples (single-char letters)."""
    return {tuple(w) for w in words.split()}


def seed(letter):
    return CyclicWord((letter,))


def scorecard(num, ok, desc, detail, elapsed, limit):
    ok = ok and elapsed < limit
    status = "PASS" if ok else "FAIL"
    suffix = f"{detail + '; ' if detail else ''}{elapsed:.2f}s of {limit:.0f}s"
    print(f"CRITERION {num} {status} - {desc} ({suffix})")
    assert ok, f"criterion {num}: {desc} ({suffix})"


def test_criterion_1_two_letter_dictionaries(bundled):
    t0 = time.perf_counter()
    fib = bundled["fibonacci"].substitution
    ce = bundled["counterexample"].substitution
    tm = bundled["thue_morse"].substitution
    ok = (
        legal_words(fib, 2).words == two("00 01 10")
        and illegal_words(fib, 2).words == two("11")
        and legal_words(ce, 2).words == two("00 01 02 10 11 12 20")
        and illegal_words(ce, 2).words == two("21 22")
        and legal_words(tm, 2).words == two("00 01 10 11")
        and illegal_words(tm, 2).words == set()
    )
    scorecard(
        1,
        ok,
        "legal and illegal 2-words match the reference sets exactly",
        "fibonacci, counterexample, thue_morse",
        time.perf_counter() - t0,
        1.0,
    )


def test_criterion_2_perron_eigenvalues(bundled):
    t0 = time.perf_counter()
    fib = bundled["fibonacci"].substitution.perron().eigenvalue
    ce = bundled["counterexample"].substitution.perron().eigenvalue
    ok = abs(fib - GOLDEN) < 1e-9 and abs(ce - 3.0) < 1e-9
    scorecard(
        2,
        ok,
        "leading eigenvalues within 1e-9 of the closed forms",
        f"fibonacci {fib:.12f}, counterexample {ce:.12f}",
        time.perf_counter() - t0,
        1.0,
    )


def test_criterion_3_seed_verdicts(bundled):
    t0 = time.perf_counter()
    ce = bundled["counterexample"].substitution
    graph = build_defect_graph(ce)
    bad = classify(graph, SeedCensus.from_cyclic(seed("2")))
    good = classify(graph, SeedCensus.from_cyclic(seed("0")))
    ok = (
        bad.verdict == "bad"
        and set(bad.cycle) <= two("21 22")
        and good.verdict == "good"
        and not self_correcting(graph)[0]
    )
    for name in SELF_CORRECTING:
        sub = bundled[name].substitution
        g = build_defect_graph(sub)
        ok = ok and self_correcting(g)[0]
        for a in sub.alphabet:
            ok = ok and classify(g, SeedCensus.from_cyclic(seed(a))).good
    scorecard(
        3,
        ok,
        "constant-seed verdicts and self-correcting flags are exact",
        "bad only for the counterexample seed 2",
        time.perf_counter() - t0,
        1.0,
    )


def test_criterion_4_classification_routes_agree(bundled, rng):
    t0 = time.perf_counter()
    ok = True
    for spec in bundled.values():
        sub = spec.substitution
        graph = build_defect_graph(sub)
        for a in sub.alphabet:
            census = SeedCensus.from_cyclic(seed(a))
            ok = ok and classify(graph, census).good == classify_by_walk_length(graph, census).good
    checked = 0
    attempts = 0
    while checked < 200 and attempts < 4000:
        attempts += 1
        size = int(rng.integers(1, 4))
        letters = tuple(str(i) for i in range(size))
        rules = {
            a: tuple(str(int(x)) for x in rng.integers(0, size, size=int(rng.integers(1, 5))))
            for a in letters
        }
        sub = Substitution.from_rules(Alphabet(letters), rules)
        if sub.primitivity() is None:
            continue
        checked += 1
        graph = build_defect_graph(sub)
        for a in letters:
            census = SeedCensus.from_cyclic(seed(a))
            ok = ok and classify(graph, census).good == classify_by_walk_length(graph, census).good
    ok = ok and checked >= 200
    scorecard(
        4,
        ok,
        "cycle-reachability and walk-length verdicts agree",
        f"bundled plus {checked} random primitive substitutions",
        time.perf_counter() - t0,
        30.0,
    )


def test_criterion_5_defects_follow_graph_walks(bundled):
    t0 = time.perf_counter()
    ce = bundled["counterexample"].substitution
    graph = build_defect_graph(ce)
    census = SeedCensus.from_cyclic(seed("2"))
    sources = [w for w in census.two_words if w in graph.illegal]
    observed = defect_paths(ce, seed("2"), 8)
    ok = bool(sources)
    for m, defects in enumerate(observed, start=1):
        ok = ok and defects <= walk_frontier(graph, sources, m)
    scorecard(
        5,
        ok,
        "step-n illegal 2-words sit at the end of length-n defect walks",
        "counterexample seed 2, n up to 8",
        time.perf_counter() - t0,
        10.0,
    )


def test_criterion_6_convergence_rate_matches_eigenvalue(bundled):
    t0 = time.perf_counter()
    parts = []
    ok = True
    for name in ("fibonacci", "thue_morse", "period_doubling"):
        sub = bundled[name].substitution
        run = run_approximation(sub, seed("0"), n_max=10, L_max=41)
        target = -math.log(run.perron.eigenvalue)
        if run.rate_fit is None:
            ok = False
            parts.append(f"{name} no fit")
            continue
        dev = abs(run.rate_fit.slope - target) / abs(target)
        within = dev <= 0.15
        ok = ok and within
        parts.append(
            f"{name} slope {run.rate_fit.slope:.4f} vs {target:.4f},"
            f" {dev * 100:.1f}% {'ok' if within else 'out'}"
        )
    scorecard(
        6,
        ok,
        "log-distance slope within 15% of -log(eigenvalue)",
        "; ".join(parts),
        time.perf_counter() - t0,
        60.0,
    )


def test_criterion_7_bad_seed_distance_floor(bundled):
    t0 = time.perf_counter()
    ce = bundled["counterexample"].substitution
    run = run_approximation(ce, seed("2"), n_max=8, L_max=41)
    reports = [s.report for s in run.steps]
    ok = (
        min(r.upper_bound for r in reports) >= 1.0 / 3.0
        and all(r.agree_length < 3 for r in reports)
        and all(s.illegal_2word_count >= 1 for s in run.steps[1:])
    )
    scorecard(
        7,
        ok,
        "bad-seed distance bound never drops below 1/3",
        f"min bound {min(r.upper_bound for r in reports):.4f} over n up to 8",
        time.perf_counter() - t0,
        10.0,
    )


def brute_force_legal(sub, ell, max_level=24):
    def factors(word):
        return {word[i : i + ell] for i in range(len(word) - ell + 1)}

    prev = None
    stable = 0
    current = set()
    for n in range(max_level):
        current = set()
        for a in sub.alphabet.letters:
            current |= factors(sub.apply_power((a,), n))
        if current == prev and current:
            stable += 1
            if stable >= 2:
                return current
        else:
            stable = 0
        prev = current
    return current


def test_criterion_8_closure_matches_brute_force(bundled):
    t0 = time.perf_counter()
    ok = True
    for spec in bundled.values():
        for ell in range(1, 7):
            ok = ok and legal_words(spec.substitution, ell).words == brute_force_legal(
                spec.substitution, ell
            )
    scorecard(
        8,
        ok,
        "dictionary closure equals stabilized brute-force factor sets",
        "all bundled substitutions, lengths 1 to 6",
        time.perf_counter() - t0,
        30.0,
    )


def test_criterion_9_complexity_caps(bundled):
    t0 = time.perf_counter()
    fib = bundled["fibonacci"].substitution
    ce = bundled["counterexample"].substitution
    ok = all(complexity(fib, r) == r + 1 for r in range(1, 13))
    ok = ok and all(complexity(ce, r) >= r + 1 for r in range(1, 13))
    run_params = {
        "fibonacci": (8, 41),
        "thue_morse": (8, 41),
        "period_doubling": (8, 41),
        "golay_rudin_shapiro": (8, 7),
        "counterexample": (6, 7),
    }
    for name, (n_max, L_max) in run_params.items():
        spec = bundled[name]
        run = run_approximation(spec.substitution, spec.seed, n_max=n_max, L_max=L_max)
        for step in run.steps:
            for _, count in step.hull_complexities:
                ok = ok and count <= step.period_length
        ok = ok and complexity_cap(run) == []
    scorecard(
        9,
        ok,
        "legal complexity floors and periodic complexity ceilings hold",
        "Sturmian equality on fibonacci, caps on every run step",
        time.perf_counter() - t0,
        30.0,
    )


def test_criterion_10_spectral_basics():
    t0 = time.perf_counter()
    rng = np.random.default_rng(7)
    free = PotentialMap.from_mapping({"0": 0.0})
    ok = True
    for p in (1, 2, 3, 5, 8):
        b = bands(CyclicWord(("0",) * p), free)
        ok = (
            ok
            and len(b.intervals) == 1
            and abs(b.intervals[0][0] + 2.0) < 1e-9
            and abs(b.intervals[0][1] - 2.0) < 1e-9
        )
    for _ in range(10):
        p = int(rng.integers(1, 6))
        word = CyclicWord(tuple(str(int(x)) for x in rng.integers(0, 2, size=p)))
        base = {"0": float(rng.uniform(-2, 2)), "1": float(rng.uniform(-2, 2))}
        shift = float(rng.uniform(-3, 3))
        b0 = bands(word, PotentialMap.from_mapping(base))
        b1 = bands(word, PotentialMap.from_mapping({a: v + shift for a, v in base.items()}))
        for (lo0, hi0), (lo1, hi1) in zip(b0.intervals, b1.intervals):
            ok = ok and abs(lo1 - lo0 - shift) < 1e-9 and abs(hi1 - hi0 - shift) < 1e-9
    for p in (1, 2, 3, 4):
        letters = tuple(str(i) for i in range(p))
        word = CyclicWord(letters)
        pot = PotentialMap.from_mapping({a: float(rng.uniform(-1.5, 1.5)) for a in letters})
        b = bands(word, pot)
        grid = np.arange(-5.0, 5.0, 1e-3)
        mask = transfer_spectrum_mask(grid, word, pot)
        inside = np.zeros(grid.shape, dtype=bool)
        for lo, hi in b.intervals:
            inside |= (grid >= lo) & (grid <= hi)
        edges = np.array([e for iv in b.intervals for e in iv])
        disagree = grid[mask != inside]
        if disagree.size:
            dist = np.min(np.abs(disagree[:, None] - edges[None, :]), axis=1)
            ok = ok and float(dist.max()) < 2e-3
    scorecard(
        10,
        ok,
        "free band, shift covariance, and trace oracle within tolerances",
        "eigensolver vs transfer matrix on a 1e-3 grid",
        time.perf_counter() - t0,
        30.0,
    )


def test_criterion_11_spectral_cauchy_rate(bundled):
    t0 = time.perf_counter()
    fib = bundled["fibonacci"].substitution
    pot = PotentialMap.from_mapping({"0": 0.0, "1": 1.0})
    run = spectral_run(fib, seed("0"), pot, n_max=10)
    target = -math.log(GOLDEN)
    ok = run.rate_fit is not None
    detail = "no fit"
    if ok:
        dev = abs(run.rate_fit.slope - target) / abs(target)
        ok = dev <= 0.25
        detail = f"slope {run.rate_fit.slope:.4f} vs {target:.4f}, {dev * 100:.1f}%"
    scorecard(
        11,
        ok,
        "spectral increment slope within 25% of -log(eigenvalue)",
        detail,
        time.perf_counter() - t0,
        120.0,
    )


def test_criterion_12_coverage_and_containment_bounds(bundled):
    t0 = time.perf_counter()
    run_params = {
        "fibonacci": (10, 41, 8),
        "thue_morse": (10, 41, 8),
        "period_doubling": (10, 41, 8),
        "golay_rudin_shapiro": (19, 7, 8),
        "counterexample": (11, 7, 4),
    }
    ok = True
    parts = []
    for name, (n_max, L_max, ell_max) in run_params.items():
        sub = bundled[name].substitution
        run = run_approximation(sub, seed("0"), n_max=n_max, L_max=L_max)
        rep = repetitivity_constant(sub, ell_max=ell_max)
        bnds = bounds(sub, perron=run.perron, repetitivity=rep)
        chk = check_bounds(run, bnds)
        binding = any(r.coverage_required for r in chk.rows) and any(
            r.containment_required for r in chk.rows
        )
        ok = ok and chk.good and chk.ok and binding
        parts.append(f"{name} {len(chk.violations)} violations, C={rep.value:g}")
    scorecard(
        12,
        ok,
        "coverage and containment inclusions hold at the predicted steps",
        "; ".join(parts),
        time.perf_counter() - t0,
        60.0,
    )
