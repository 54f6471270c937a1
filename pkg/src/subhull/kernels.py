"""Array kernels with numba-compiled and pure-numpy implementations.

The backend is chosen once at import from the SUBHULL_BACKEND environment
variable: "numba" (require the JIT), "numpy" (force the fallback), or
"auto" (default: numba when importable).  Both implementations of each
kernel return identical arrays; ``benchmarks/bench_kernels.py`` times them
against each other.
"""

from __future__ import annotations

import os

import numpy as np

ENV_VAR = "SUBHULL_BACKEND"
_CHOICES = ("auto", "numba", "numpy")


def _try_numba():
    try:
        import numba
    except ImportError:
        return None
    return numba


def select_backend(choice: str | None = None) -> str:
    """Resolve a backend name; raises if numba is demanded but missing."""
    if choice is None:
        choice = os.environ.get(ENV_VAR, "auto")
    choice = choice.lower()
    if choice not in _CHOICES:
        raise ValueError(f"{ENV_VAR} must be one of {_CHOICES}, got {choice!r}")
    if choice == "numpy":
        return "numpy"
    if _try_numba() is None:
        if choice == "numba":
            raise ImportError("SUBHULL_BACKEND=numba but numba is not importable")
        return "numpy"
    return "numba"


_BACKEND = select_backend()


def active_backend() -> str:
    return _BACKEND


def use_backend(choice: str | None = None) -> str:
    """Resolve ``choice`` (or the environment setting) and make it active."""
    global _BACKEND
    _BACKEND = select_backend(choice)
    return _BACKEND


# ---------------------------------------------------------------- numpy path


def unique_cyclic_windows_numpy(codes: np.ndarray, ell: int) -> np.ndarray:
    """Sorted distinct length-ell cyclic windows of an int64 code sequence.

    Returns a (k, ell) int64 array whose rows are lexicographically sorted.
    """
    p = codes.shape[0]
    if ell > 1:
        # wrap far enough for windows longer than the period
        reps = -(-(p + ell - 1) // p)
        ext = np.tile(codes, reps)[: p + ell - 1]
    else:
        ext = codes
    win = np.lib.stride_tricks.sliding_window_view(ext, ell)[:p]
    return np.unique(win, axis=0)


def transfer_traces_numpy(energies: np.ndarray, potential: np.ndarray) -> np.ndarray:
    """Trace of the period transfer matrix at each energy.

    The one-step matrix at site j is [[v_j - E, -1], [1, 0]]; the product
    runs over one full period, so |trace| <= 2 marks spectrum.
    """
    e = np.asarray(energies, dtype=np.float64)
    a = np.ones_like(e)
    b = np.zeros_like(e)
    c = np.zeros_like(e)
    d = np.ones_like(e)
    for v in potential:
        x = v - e
        a, b, c, d = x * a - c, x * b - d, a, b
    return a + d


# ---------------------------------------------------------------- numba path

_numba = _try_numba()

if _numba is not None:
    _njit = _numba.njit(cache=False)

    @_njit
    def _unique_cyclic_windows_jit(codes, ell):  # pragma: no cover - compiled
        p = codes.shape[0]
        win = np.empty((p, ell), dtype=np.int64)
        for i in range(p):
            for j in range(ell):
                win[i, j] = codes[(i + j) % p]
        # lexicographic order via repeated stable sorts, last column first
        order = np.arange(p)
        keys = np.empty(p, dtype=np.int64)
        for col in range(ell - 1, -1, -1):
            for i in range(p):
                keys[i] = win[order[i], col]
            idx = np.argsort(keys, kind="mergesort")
            order = order[idx]
        distinct = np.empty(p, dtype=np.bool_)
        count = 0
        for i in range(p):
            if i == 0:
                new = True
            else:
                new = False
                prev = order[i - 1]
                cur = order[i]
                for j in range(ell):
                    if win[prev, j] != win[cur, j]:
                        new = True
                        break
            distinct[i] = new
            if new:
                count += 1
        out = np.empty((count, ell), dtype=np.int64)
        k = 0
        for i in range(p):
            if distinct[i]:
                for j in range(ell):
                    out[k, j] = win[order[i], j]
                k += 1
        return out

    @_njit
    def _transfer_traces_jit(energies, potential):  # pragma: no cover - compiled
        m = energies.shape[0]
        p = potential.shape[0]
        out = np.empty(m, dtype=np.float64)
        for i in range(m):
            e = energies[i]
            a = 1.0
            b = 0.0
            c = 0.0
            d = 1.0
            for j in range(p):
                x = potential[j] - e
                na = x * a - c
                nb = x * b - d
                c = a
                d = b
                a = na
                b = nb
            out[i] = a + d
        return out

    def unique_cyclic_windows_numba(codes: np.ndarray, ell: int) -> np.ndarray:
        return _unique_cyclic_windows_jit(np.ascontiguousarray(codes, dtype=np.int64), ell)

    def transfer_traces_numba(energies: np.ndarray, potential: np.ndarray) -> np.ndarray:
        return _transfer_traces_jit(
            np.ascontiguousarray(energies, dtype=np.float64),
            np.ascontiguousarray(potential, dtype=np.float64),
        )

else:  # pragma: no cover - exercised only without numba installed

    def unique_cyclic_windows_numba(codes, ell):
        raise ImportError("numba is not installed")

    def transfer_traces_numba(energies, potential):
        raise ImportError("numba is not installed")


# ---------------------------------------------------------------- dispatch


def unique_cyclic_windows(codes: np.ndarray, ell: int) -> np.ndarray:
    if _BACKEND == "numba":
        return unique_cyclic_windows_numba(codes, ell)
    return unique_cyclic_windows_numpy(codes, ell)


def transfer_traces(energies: np.ndarray, potential: np.ndarray) -> np.ndarray:
    if _BACKEND == "numba":
        return transfer_traces_numba(energies, potential)
    return transfer_traces_numpy(energies, potential)
