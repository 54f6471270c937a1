"""Band spectra of periodic discrete Schrodinger operators.

The operator is (H psi)(n) = -psi(n+1) - psi(n-1) + V(n) psi(n) with V
given by a letter potential read off a periodic word.  Band edges are the
eigenvalues of the two Bloch-Floquet matrices (periodic and antiperiodic
boundary phase); the spectrum is the union of the resulting closed
intervals.  Hausdorff distances between such unions are computed exactly
from endpoints and gap midpoints, never by sampling.
"""

from __future__ import annotations

import io
import csv
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from . import kernels
from .approximation import RateFit, iterate_periods
from .defect_graph import DEFAULT_PERIOD_BUDGET
from .errors import NumericError, ResourceBudgetError
from .reporting import dumps_canonical, format_float
from .substitution import Substitution
from .words import CyclicWord, Word

DEFAULT_TOL = 1e-9
DEFAULT_PERIOD_CAP = 20_000

Interval = tuple[float, float]


@dataclass(frozen=True)
class PotentialMap:
    """Diagonal potential assigning one float per letter."""

    items: tuple[tuple[str, float], ...]

    def __post_init__(self):
        letters = [a for a, _ in self.items]
        if len(set(letters)) != len(letters):
            raise ValueError("duplicate letter in potential")
        for a, v in self.items:
            if not math.isfinite(v):
                raise ValueError(f"potential value for {a!r} is not finite")

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, float]) -> "PotentialMap":
        return cls(tuple(sorted((a, float(v)) for a, v in mapping.items())))

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(a for a, _ in self.items)

    def as_dict(self) -> dict[str, float]:
        return dict(self.items)

    def value(self, letter: str) -> float:
        for a, v in self.items:
            if a == letter:
                return v
        raise ValueError(f"no potential value for letter {letter!r}")

    def values(self, word: Word) -> np.ndarray:
        table = self.as_dict()
        try:
            return np.array([table[a] for a in word], dtype=np.float64)
        except KeyError as e:
            raise ValueError(f"no potential value for letter {e.args[0]!r}") from None


@dataclass(frozen=True)
class SpectralBands:
    """Spectrum of one periodic operator as disjoint closed intervals.

    ``band_edges`` keeps the raw p edge pairs (one per band before merging);
    ``intervals`` merges bands that touch.
    """

    intervals: tuple[Interval, ...]
    band_edges: tuple[Interval, ...]
    period: int

    @property
    def total_bandwidth(self) -> float:
        return float(sum(hi - lo for lo, hi in self.intervals))


def floquet_matrix(values: np.ndarray, antiperiodic: bool) -> np.ndarray:
    """Real symmetric Bloch matrix at boundary phase 0 or pi.

    For period 1 the hopping and the boundary corner coincide, giving the
    1x1 matrix V0 -+ 2; for period 2 they stack on the same entry.
    """
    p = len(values)
    corner = 1.0 if antiperiodic else -1.0
    if p == 1:
        return np.array([[values[0] + 2.0 * corner]])
    h = np.zeros((p, p))
    np.fill_diagonal(h, values)
    for i in range(p - 1):
        h[i, i + 1] -= 1.0
        h[i + 1, i] -= 1.0
    h[0, p - 1] += corner
    h[p - 1, 0] += corner
    return h


def bands(
    cyclic: CyclicWord,
    potential: PotentialMap,
    tol: float = DEFAULT_TOL,
    period_cap: int = DEFAULT_PERIOD_CAP,
) -> SpectralBands:
    """Band spectrum of the operator with potential read off the period."""
    p = len(cyclic)
    if p > period_cap:
        raise ResourceBudgetError(f"period {p} exceeds the eigensolver cap {period_cap}")
    v = potential.values(cyclic.period)
    try:
        periodic = np.sort(np.linalg.eigvalsh(floquet_matrix(v, antiperiodic=False)))
        anti = np.sort(np.linalg.eigvalsh(floquet_matrix(v, antiperiodic=True)))
    except np.linalg.LinAlgError as e:
        raise NumericError(
            f"eigensolver failed for period {p} (potential values "
            f"{np.array2string(np.unique(v))}): {e}"
        ) from e
    _check_interlacing(periodic, anti, tol)
    edges = np.sort(np.concatenate([periodic, anti]))
    raw = tuple((float(edges[2 * k]), float(edges[2 * k + 1])) for k in range(p))
    return SpectralBands(intervals=_merge_touching(raw, tol), band_edges=raw, period=p)


def _check_interlacing(periodic: np.ndarray, anti: np.ndarray, tol: float) -> None:
    """Periodic/antiperiodic eigenvalues must weave a0 b0 b1 a1 a2 b2 b3 ...;
    anything else means the eigensolver returned garbage."""
    p = len(periodic)
    chain = [periodic[0]]
    ai, bi = 1, 0
    from_b = True
    while ai < p or bi < p:
        if from_b:
            take = min(2, p - bi)
            chain.extend(anti[bi : bi + take])
            bi += take
        else:
            take = min(2, p - ai)
            chain.extend(periodic[ai : ai + take])
            ai += take
        from_b = not from_b
    scale = max(1.0, float(abs(chain[-1] - chain[0])))
    for x, y in zip(chain, chain[1:]):
        if y < x - tol * scale:
            raise NumericError(
                f"band edges do not interlace (got {x:.12g} before {y:.12g})"
            )


def _merge_touching(raw: tuple[Interval, ...], tol: float) -> tuple[Interval, ...]:
    merged: list[list[float]] = []
    for lo, hi in raw:
        if merged and lo - merged[-1][1] <= tol:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return tuple((lo, hi) for lo, hi in merged)


# ------------------------------------------------------------ set distance


def spectral_distance(a, b) -> float:
    """Exact Hausdorff distance between two unions of closed intervals.

    The supremum of the distance-to-set function over an interval is
    attained at its endpoints or at a gap midpoint of the other set, so
    finitely many candidate points suffice.
    """
    ia = _normalize(a)
    ib = _normalize(b)
    return max(_directed(ia, ib), _directed(ib, ia))


def _normalize(obj) -> tuple[Interval, ...]:
    if isinstance(obj, SpectralBands):
        ivs = obj.intervals
    else:
        ivs = tuple((float(lo), float(hi)) for lo, hi in obj)
    if not ivs:
        raise ValueError("empty interval union has no Hausdorff distance")
    for lo, hi in ivs:
        if hi < lo:
            raise ValueError(f"backwards interval ({lo}, {hi})")
    ivs = tuple(sorted(ivs))
    merged: list[list[float]] = []
    for lo, hi in ivs:
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return tuple((lo, hi) for lo, hi in merged)


def _directed(a: tuple[Interval, ...], b: tuple[Interval, ...]) -> float:
    mids = [(x[1] + y[0]) / 2.0 for x, y in zip(b, b[1:])]
    worst = 0.0
    for lo, hi in a:
        candidates = [lo, hi] + [m for m in mids if lo < m < hi]
        for x in candidates:
            worst = max(worst, _point_distance(x, b))
    return worst


def _point_distance(x: float, b: tuple[Interval, ...]) -> float:
    best = math.inf
    for lo, hi in b:
        if lo <= x <= hi:
            return 0.0
        best = min(best, abs(x - lo), abs(x - hi))
    return best


# ------------------------------------------------------------ trace oracle


def transfer_spectrum_mask(
    energies: np.ndarray, cyclic: CyclicWord, potential: PotentialMap
) -> np.ndarray:
    """Boolean mask: which energies lie in the spectrum, decided by the
    transfer-matrix trace (|trace| <= 2).  Independent of the eigensolver
    route in bands()."""
    v = potential.values(cyclic.period)
    traces = kernels.transfer_traces(np.asarray(energies, dtype=np.float64), v)
    return np.abs(traces) <= 2.0


# -------------------------------------------------------------------- runs


@dataclass(frozen=True)
class SpectralStep:
    n: int
    period_length: int
    bands: SpectralBands


@dataclass(frozen=True)
class SpectralRun:
    substitution: Substitution
    seed: CyclicWord
    potential: PotentialMap
    n_max: int
    tol: float
    steps: tuple[SpectralStep, ...]
    increments: tuple[float, ...]
    rate_fit: RateFit | None
    truncated: bool


def spectral_run(
    sub: Substitution,
    seed: CyclicWord,
    potential: PotentialMap,
    n_max: int = 10,
    tol: float = DEFAULT_TOL,
    period_cap: int = DEFAULT_PERIOD_CAP,
    period_budget: int = DEFAULT_PERIOD_BUDGET,
) -> SpectralRun:
    """Band spectra along the periodic approximation steps.

    The limit spectrum is never computed; the Cauchy increments
    d_H(sigma_n, sigma_{n+1}) stand in for the distance to the limit, and
    their log-linear fit estimates the convergence rate.
    """
    sub.alphabet.validate_word(seed.period)
    for a in sub.alphabet:
        potential.value(a)  # fail early if a letter has no value
    periods, truncated = iterate_periods(sub, seed, n_max, period_budget)
    steps = []
    for n, cyc in enumerate(periods):
        if len(cyc) > period_cap:
            truncated = True
            break
        steps.append(SpectralStep(n=n, period_length=len(cyc), bands=bands(cyc, potential, tol)))
    increments = tuple(
        spectral_distance(x.bands, y.bands) for x, y in zip(steps, steps[1:])
    )
    fit = _fit_increments(increments)
    return SpectralRun(
        substitution=sub,
        seed=seed,
        potential=potential,
        n_max=n_max,
        tol=tol,
        steps=tuple(steps),
        increments=increments,
        rate_fit=fit,
        truncated=truncated,
    )


def _fit_increments(increments: Iterable[float]) -> RateFit | None:
    points = [
        (n, math.log(inc)) for n, inc in enumerate(increments) if inc > 1e-14
    ]
    if len(points) < 3:
        return None
    xs = np.array([p[0] for p in points], dtype=float)
    ys = np.array([p[1] for p in points], dtype=float)
    slope, intercept = np.polyfit(xs, ys, 1)
    return RateFit(slope=float(slope), intercept=float(intercept), points=tuple(points))


SPECTRAL_CSV_COLUMNS = ("n", "period", "band_count", "total_bandwidth", "increment_to_next")


def spectral_run_to_csv(run: SpectralRun) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SPECTRAL_CSV_COLUMNS)
    for i, step in enumerate(run.steps):
        inc = format_float(run.increments[i]) if i < len(run.increments) else ""
        writer.writerow(
            [
                step.n,
                step.period_length,
                len(step.bands.intervals),
                format_float(step.bands.total_bandwidth),
                inc,
            ]
        )
    return buf.getvalue()


def spectral_run_to_json(run: SpectralRun) -> str:
    fmt = run.substitution.alphabet.format_word
    doc = {
        "kind": "spectral-run",
        "alphabet": list(run.substitution.alphabet.letters),
        "rules": {a: fmt(run.substitution.rule(a)) for a in run.substitution.alphabet},
        "seed": fmt(run.seed.period),
        "potential": {a: v for a, v in run.potential.items},
        "n_max": run.n_max,
        "tol": run.tol,
        "truncated": run.truncated,
        "steps": [
            {
                "n": s.n,
                "period": s.period_length,
                "band_count": len(s.bands.intervals),
                "total_bandwidth": s.bands.total_bandwidth,
                "intervals": [[lo, hi] for lo, hi in s.bands.intervals],
            }
            for s in run.steps
        ],
        "increments": list(run.increments),
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
