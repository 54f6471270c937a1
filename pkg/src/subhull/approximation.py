"""Iterated periodic approximation of a substitution subshift.

Starting from a periodic seed, apply the substitution step by step and
measure, at every step, how far the hull of the current periodic word is
from the substitution subshift (via dictionary agreement).  For seeds whose
defects die out the agreement length grows like theta^n, so the log of the
distance bound falls linearly in n with slope -log(theta); the run fits
that slope and the bounds below predict when r-agreement must occur.
"""

from __future__ import annotations

import io
import csv
import math
from dataclasses import dataclass

import numpy as np

from .defect_graph import (
    DEFAULT_PERIOD_BUDGET,
    SeedCensus,
    build_defect_graph,
    classify,
)
from .dictionary import (
    DEFAULT_WORD_BUDGET,
    DistanceReport,
    HullSource,
    LegalSource,
    RepetitivityEstimate,
    legal_words,
    repetitivity_constant,
    scan_agreement,
)
from .errors import ResourceBudgetError
from .reporting import dumps_canonical, format_float
from .substitution import PerronData, Substitution
from .words import CyclicWord, cyclic_subwords

DEFAULT_N_MAX = 10
DEFAULT_L_MAX = 41


@dataclass(frozen=True)
class ApproximationStep:
    n: int
    period_length: int
    report: DistanceReport
    illegal_2word_count: int
    # (L, hull dictionary size) at every compared length, for the cap checks
    hull_complexities: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class RateFit:
    slope: float
    intercept: float
    points: tuple[tuple[int, float], ...]

    @property
    def n_points(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class ApproximationRun:
    substitution: Substitution
    seed: CyclicWord
    n_max: int
    L_max: int
    steps: tuple[ApproximationStep, ...]
    periods: tuple[CyclicWord, ...]
    perron: PerronData
    rate_fit: RateFit | None
    truncated: bool


def iterate_periods(
    sub: Substitution,
    seed: CyclicWord,
    n_max: int,
    period_budget: int = DEFAULT_PERIOD_BUDGET,
) -> tuple[list[CyclicWord], bool]:
    """S^n(seed) for n = 0..n_max, stopping early at the period budget."""
    image_len = {a: len(sub.rule(a)) for a in sub.alphabet}
    periods = [seed]
    truncated = False
    for _ in range(n_max):
        predicted = sum(image_len[a] for a in periods[-1].period)
        if predicted > period_budget:
            truncated = True
            break
        periods.append(sub.apply_cyclic(periods[-1]))
    return periods, truncated


def run_approximation(
    sub: Substitution,
    seed: CyclicWord,
    n_max: int = DEFAULT_N_MAX,
    L_max: int = DEFAULT_L_MAX,
    budget: int = DEFAULT_WORD_BUDGET,
    period_budget: int = DEFAULT_PERIOD_BUDGET,
) -> ApproximationRun:
    sub.alphabet.validate_word(seed.period)
    perron = sub.perron()
    legal2 = legal_words(sub, 2, budget).words
    legal_src = LegalSource(sub, budget)
    periods, truncated = iterate_periods(sub, seed, n_max, period_budget)

    steps = []
    for n, cyc in enumerate(periods):
        report, sizes = scan_agreement(HullSource(cyc), legal_src, L_max, budget)
        observed2 = cyclic_subwords(cyc, 2)
        steps.append(
            ApproximationStep(
                n=n,
                period_length=len(cyc),
                report=report,
                illegal_2word_count=len(observed2 - legal2),
                hull_complexities=tuple((L, s1) for L, s1, _ in sizes),
            )
        )

    fit = _fit_rate(steps, L_max)
    return ApproximationRun(
        substitution=sub,
        seed=seed,
        n_max=n_max,
        L_max=L_max,
        steps=tuple(steps),
        periods=tuple(periods),
        perron=perron,
        rate_fit=fit,
        truncated=truncated,
    )


def _fit_rate(steps, L_max: int) -> RateFit | None:
    """Least squares on (n, log bound) over the informative steps.

    Informative: the agreement length strictly rose between two steps that
    both actually agreed somewhere (a previous value of 0 means there was
    no agreement to increase from), and the new value is not sitting at the
    scan cap (a capped plateau says nothing about the true agreement).
    """
    cap = L_max if L_max % 2 == 1 else L_max - 1
    points = []
    for prev, step in zip(steps, steps[1:]):
        al = step.report.agree_length
        prev_al = prev.report.agree_length
        if step.report.truncated or prev_al < 1 or al <= prev_al or al >= cap:
            continue
        points.append((step.n, math.log(step.report.upper_bound)))
    if len(points) < 3:
        return None
    xs = np.array([p[0] for p in points], dtype=float)
    ys = np.array([p[1] for p in points], dtype=float)
    slope, intercept = np.polyfit(xs, ys, 1)
    return RateFit(slope=float(slope), intercept=float(intercept), points=tuple(points))


# ------------------------------------------------------------------- bounds


@dataclass(frozen=True)
class ConvergenceBounds:
    """Step thresholds for r-agreement, from measured growth constants.

    coverage_threshold(r): past this step the hull contains every legal
    r-word.  containment_threshold(r): past this step (good seeds only) the
    hull has no illegal r-word left.
    """

    eigenvalue: float
    growth_lower: float
    repetitivity: RepetitivityEstimate
    alphabet_size: int

    def coverage_threshold(self, r: int) -> float:
        log_t = math.log(self.eigenvalue)
        return math.log(r) / log_t + (
            math.log(self.repetitivity.value) - math.log(self.growth_lower)
        ) / log_t

    def containment_threshold(self, r: int) -> float:
        log_t = math.log(self.eigenvalue)
        return (
            math.log(r) / log_t
            - math.log(2.0 * self.growth_lower) / log_t
            + self.alphabet_size**2
        )


def bounds(
    sub: Substitution,
    perron: PerronData | None = None,
    repetitivity: RepetitivityEstimate | None = None,
    budget: int = DEFAULT_WORD_BUDGET,
) -> ConvergenceBounds:
    perron = perron or sub.perron()
    repetitivity = repetitivity or repetitivity_constant(sub, budget=budget)
    return ConvergenceBounds(
        eigenvalue=perron.eigenvalue,
        growth_lower=perron.growth_lower,
        repetitivity=repetitivity,
        alphabet_size=len(sub.alphabet),
    )


@dataclass(frozen=True)
class BoundRow:
    r: int
    n: int
    coverage_required: bool
    coverage_holds: bool | None
    containment_required: bool
    containment_holds: bool | None


@dataclass(frozen=True)
class BoundsCheck:
    good: bool
    rows: tuple[BoundRow, ...]
    violations: tuple[BoundRow, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_bounds(
    run: ApproximationRun,
    bnds: ConvergenceBounds,
    r_values=(2, 3, 5),
    budget: int = DEFAULT_WORD_BUDGET,
) -> BoundsCheck:
    """Verify the predicted inclusions on a completed run.

    Coverage (hull contains all legal r-words) is demanded from step
    ceil(coverage_threshold(r)); containment (hull has only legal r-words)
    from strictly after ceil(containment_threshold(r)), and only for good
    seeds.  For bad seeds containment rows are recorded as not required.
    """
    sub = run.substitution
    graph = build_defect_graph(sub, budget)
    good = classify(graph, SeedCensus.from_cyclic(run.seed)).good
    rows = []
    for r in r_values:
        legal_r = legal_words(sub, r, budget).words
        n_cov = math.ceil(bnds.coverage_threshold(r))
        n_con = math.ceil(bnds.containment_threshold(r))
        for n, cyc in enumerate(run.periods):
            need_cov = n >= n_cov
            need_con = good and n > n_con
            cov = con = None
            if need_cov or need_con:
                hull_r = cyclic_subwords(cyc, r)
                if need_cov:
                    cov = legal_r <= hull_r
                if need_con:
                    con = hull_r <= legal_r
            rows.append(BoundRow(r, n, need_cov, cov, need_con, con))
    violations = tuple(
        row for row in rows if row.coverage_holds is False or row.containment_holds is False
    )
    return BoundsCheck(good=good, rows=tuple(rows), violations=violations)


def complexity_cap(run: ApproximationRun, perron: PerronData | None = None) -> list[str]:
    """Check every measured hull complexity against its two ceilings.

    A periodic hull can never have more length-L words than its period, and
    the period itself is at most growth_upper * theta^n * |seed|.  Returns
    human-readable violation strings (empty list = all caps hold).
    """
    perron = perron or run.perron
    seed_len = len(run.seed)
    problems = []
    for step in run.steps:
        ceiling = perron.growth_upper * perron.eigenvalue**step.n * seed_len
        if step.period_length > ceiling * (1 + 1e-9):
            problems.append(
                f"step {step.n}: period {step.period_length} exceeds growth ceiling {ceiling:.6g}"
            )
        for L, count in step.hull_complexities:
            if count > step.period_length:
                problems.append(
                    f"step {step.n}: {count} words of length {L} from a period of {step.period_length}"
                )
            if count > ceiling * (1 + 1e-9):
                problems.append(
                    f"step {step.n}: complexity {count} at length {L} exceeds growth ceiling {ceiling:.6g}"
                )
    return problems


# -------------------------------------------------------------------- export

CSV_COLUMNS = ("n", "period_length", "agree_length", "rho", "upper_bound", "illegal_2word_count")


def run_to_csv(run: ApproximationRun) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for step in run.steps:
        writer.writerow(
            [
                step.n,
                step.period_length,
                step.report.agree_length,
                format_float(step.report.rho),
                format_float(step.report.upper_bound),
                step.illegal_2word_count,
            ]
        )
    return buf.getvalue()


def run_to_json(run: ApproximationRun) -> str:
    fmt = run.substitution.alphabet.format_word
    doc = {
        "kind": "approximation-run",
        "alphabet": list(run.substitution.alphabet.letters),
        "rules": {a: fmt(run.substitution.rule(a)) for a in run.substitution.alphabet},
        "seed": fmt(run.seed.period),
        "n_max": run.n_max,
        "L_max": run.L_max,
        "truncated": run.truncated,
        "constants": {
            "eigenvalue": run.perron.eigenvalue,
            "growth_lower": run.perron.growth_lower,
            "growth_upper": run.perron.growth_upper,
            "primitivity_exponent": run.perron.primitivity_exponent,
            "horizon": run.perron.horizon,
        },
        "steps": [
            {
                "n": s.n,
                "period_length": s.period_length,
                "agree_length": s.report.agree_length,
                "rho": s.report.rho,
                "upper_bound": s.report.upper_bound,
                "illegal_2word_count": s.illegal_2word_count,
                "scanned_to": s.report.scanned_to,
                "truncated": s.report.truncated,
                "lower_witness": None if s.report.lower_witness is None else fmt(s.report.lower_witness),
            }
            for s in run.steps
        ],
        "rate_fit": None
        if run.rate_fit is None
        else {
            "slope": run.rate_fit.slope,
            "intercept": run.rate_fit.intercept,
            "n_points": run.rate_fit.n_points,
            "points": [[n, y] for n, y in run.rate_fit.points],
        },
    }
    return dumps_canonical(doc)
