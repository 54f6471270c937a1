import json
import math

import numpy as np
import pytest

from subhull import (
    CyclicWord,
    PotentialMap,
    bands,
    floquet_matrix,
    spectral_distance,
    spectral_run,
    spectral_run_to_csv,
    spectral_run_to_json,
    transfer_spectrum_mask,
)
from subhull.errors import ResourceBudgetError
from subhull.reporting import dumps_canonical
from subhull.spectral import SPECTRAL_CSV_COLUMNS


def constant_word(letter, p):
    return CyclicWord((letter,) * p)


def test_potential_map_validation():
    with pytest.raises(ValueError):
        PotentialMap.from_mapping({"0": float("nan")})
    with pytest.raises(ValueError):
        PotentialMap(items=(("0", 1.0), ("0", 2.0)))
    pot = PotentialMap.from_mapping({"1": 2.0, "0": -1.0})
    assert pot.letters == ("0", "1")
    assert pot.value("1") == 2.0


def test_floquet_matrix_small_periods():
    v1 = np.array([0.7])
    assert floquet_matrix(v1, antiperiodic=False)[0, 0] == pytest.approx(-1.3)
    assert floquet_matrix(v1, antiperiodic=True)[0, 0] == pytest.approx(2.7)
    v2 = np.array([0.0, 1.0])
    periodic = floquet_matrix(v2, antiperiodic=False)
    anti = floquet_matrix(v2, antiperiodic=True)
    assert periodic[0, 1] == pytest.approx(-2.0)
    assert anti[0, 1] == pytest.approx(0.0)
    assert (periodic == periodic.T).all() and (anti == anti.T).all()


def test_free_potential_gives_full_band():
    pot = PotentialMap.from_mapping({"0": 0.0})
    for p in (1, 2, 3, 5, 8):
        b = bands(constant_word("0", p), pot)
        assert len(b.intervals) == 1
        assert b.intervals[0][0] == pytest.approx(-2.0, abs=1e-9)
        assert b.intervals[0][1] == pytest.approx(2.0, abs=1e-9)
        assert b.total_bandwidth == pytest.approx(4.0, abs=1e-9)


def test_dimer_band_edges_closed_form():
    for lam in (1.0, 2.5):
        pot = PotentialMap.from_mapping({"0": 0.0, "1": lam})
        b = bands(CyclicWord(("0", "1")), pot)
        outer = (lam - math.sqrt(lam * lam + 16)) / 2
        upper = (lam + math.sqrt(lam * lam + 16)) / 2
        assert len(b.intervals) == 2
        assert b.intervals[0] == pytest.approx((outer, 0.0), abs=1e-12)
        assert b.intervals[1] == pytest.approx((lam, upper), abs=1e-12)


def test_constant_shift_covariance(rng):
    letters = ("0", "1", "2")
    for _ in range(20):
        p = int(rng.integers(1, 7))
        word = CyclicWord(tuple(str(int(x)) for x in rng.integers(0, 3, size=p)))
        base = {a: float(rng.uniform(-2, 2)) for a in letters}
        shift = float(rng.uniform(-3, 3))
        b0 = bands(word, PotentialMap.from_mapping(base))
        b1 = bands(word, PotentialMap.from_mapping({a: v + shift for a, v in base.items()}))
        for (lo0, hi0), (lo1, hi1) in zip(b0.intervals, b1.intervals):
            assert lo1 == pytest.approx(lo0 + shift, abs=1e-9)
            assert hi1 == pytest.approx(hi0 + shift, abs=1e-9)


def test_spectra_lipschitz_in_potential(rng):
    """Hausdorff distance between spectra is at most the sup-norm distance
    of the potentials (the spectral continuity bound)."""
    letters = ("0", "1")
    for _ in range(25):
        p = int(rng.integers(1, 8))
        word = CyclicWord(tuple(str(int(x)) for x in rng.integers(0, 2, size=p)))
        va = {a: float(rng.uniform(-2, 2)) for a in letters}
        vb = {a: float(rng.uniform(-2, 2)) for a in letters}
        ba = bands(word, PotentialMap.from_mapping(va))
        bb = bands(word, PotentialMap.from_mapping(vb))
        gap = max(abs(va[a] - vb[a]) for a in letters)
        assert spectral_distance(ba, bb) <= gap + 1e-9


def test_transfer_mask_agrees_with_eigensolver(rng):
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
            assert dist.max() < 2e-3
        assert (mask == inside).mean() > 0.999


def test_spectral_distance_exact_cases():
    assert spectral_distance([(0.0, 1.0)], [(0.0, 1.0)]) == 0.0
    assert spectral_distance([(0.0, 1.0)], [(2.0, 3.0)]) == pytest.approx(2.0)
    # containment: the directed distance from the big set dominates
    assert spectral_distance([(0.0, 4.0)], [(1.0, 2.0)]) == pytest.approx(2.0)
    # gap midpoint of the second union is the worst point of the first
    assert spectral_distance([(0.0, 10.0)], [(0.0, 4.0), (6.0, 10.0)]) == pytest.approx(1.0)


def test_bands_period_cap():
    pot = PotentialMap.from_mapping({"0": 0.0})
    with pytest.raises(ResourceBudgetError):
        bands(constant_word("0", 51), pot, period_cap=50)


def test_fibonacci_spectral_run(bundled):
    spec = bundled["fibonacci"]
    run = spectral_run(spec.substitution, spec.seed, spec.potential, n_max=10)
    assert [s.period_length for s in run.steps] == [1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144]
    assert not run.truncated
    incs = np.array(run.increments)
    assert (incs > 0).all()
    # Cauchy increments shrink exponentially at the eigenvalue rate
    assert run.rate_fit is not None
    golden = (1 + math.sqrt(5)) / 2
    assert run.rate_fit.slope == pytest.approx(-math.log(golden), rel=0.25)


def test_bad_seed_spectral_increments_stall(bundled):
    spec = bundled["counterexample"]
    run = spectral_run(spec.substitution, spec.seed, spec.potential, n_max=6)
    assert [s.period_length for s in run.steps] == [1, 3, 9, 27, 81, 243, 729]
    tail = run.increments[-3:]
    assert max(tail) - min(tail) < 1e-6
    assert min(tail) > 0.25


def test_spectral_run_requires_full_potential(fibonacci):
    pot = PotentialMap.from_mapping({"0": 0.0})
    with pytest.raises(ValueError):
        spectral_run(fibonacci, CyclicWord(("0",)), pot, n_max=2)


def test_spectral_csv_and_json(bundled):
    spec = bundled["fibonacci"]
    run = spectral_run(spec.substitution, spec.seed, spec.potential, n_max=5)
    text = spectral_run_to_csv(run)
    assert text == spectral_run_to_csv(run)
    lines = text.strip().splitlines()
    assert lines[0] == ",".join(SPECTRAL_CSV_COLUMNS)
    assert len(lines) == len(run.steps) + 1
    assert lines[-1].endswith(",")  # no increment after the last step
    doc = json.loads(spectral_run_to_json(run))
    assert doc["kind"] == "spectral-run"
    assert dumps_canonical(doc) == spectral_run_to_json(run)
