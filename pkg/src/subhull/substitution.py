"""Substitutions on a finite alphabet and their Perron-Frobenius data."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import NotPrimitiveError, NumericError
from .words import Alphabet, CyclicWord, Word

DEFAULT_HORIZON = 40
DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class Substitution:
    """Letter-to-word map, extended to words by concatenation.

    ``images[i]`` is the image of ``alphabet.letters[i]``.  Images must be
    non-empty words over the same alphabet.
    """

    alphabet: Alphabet
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != len(self.alphabet):
            raise ValueError("need exactly one image per letter")
        for img in self.images:
            self.alphabet.validate_word(img)

    @classmethod
    def from_rules(cls, alphabet: Alphabet, rules: Mapping[str, Word | str]) -> "Substitution":
        missing = [a for a in alphabet if a not in rules]
        if missing:
            raise ValueError(f"no rule for letter {missing[0]!r}")
        extra = [a for a in rules if a not in alphabet]
        if extra:
            raise ValueError(f"rule for unknown letter {extra[0]!r}")
        images = []
        for a in alphabet:
            img = rules[a]
            if isinstance(img, str):
                img = alphabet.parse_word(img)
            images.append(tuple(img))
        return cls(alphabet, tuple(images))

    @property
    def rules(self) -> dict[str, Word]:
        return dict(zip(self.alphabet.letters, self.images))

    def rule(self, letter: str) -> Word:
        return self.images[self.alphabet.index(letter)]

    # ------------------------------------------------------------ action

    def apply(self, word: Word) -> Word:
        self.alphabet.validate_word(word)
        out: list[str] = []
        for a in word:
            out.extend(self.images[self.alphabet.index(a)])
        return tuple(out)

    def apply_power(self, word: Word, n: int) -> Word:
        if n < 0:
            raise ValueError("power must be >= 0")
        for _ in range(n):
            word = self.apply(word)
        return word

    def apply_cyclic(self, cyclic: CyclicWord) -> CyclicWord:
        """Image of a periodic configuration: substitute one period."""
        return CyclicWord(self.apply(cyclic.period))

    def compose(self, other: "Substitution") -> "Substitution":
        """(self . other): first apply ``other``, then ``self``."""
        if self.alphabet != other.alphabet:
            raise ValueError("compose requires a common alphabet")
        return Substitution(self.alphabet, tuple(self.apply(img) for img in other.images))

    # ------------------------------------------------------------ matrix

    def matrix(self) -> np.ndarray:
        """Substitution matrix: entry (i, j) counts letter i in the image of letter j."""
        s = len(self.alphabet)
        m = np.zeros((s, s), dtype=np.int64)
        for j, img in enumerate(self.images):
            for a in img:
                m[self.alphabet.index(a), j] += 1
        return m

    def _exact_matrix(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.matrix()]

    def exact_power(self, n: int) -> list[list[int]]:
        """n-th power of the substitution matrix in exact integer arithmetic."""
        if n < 0:
            raise ValueError("power must be >= 0")
        s = len(self.alphabet)
        result = [[1 if i == j else 0 for j in range(s)] for i in range(s)]
        base = self._exact_matrix()
        k = n
        while k:
            if k & 1:
                result = _matmul_exact(result, base)
            k >>= 1
            if k:
                base = _matmul_exact(base, base)
        return result

    def image_lengths(self, n: int) -> tuple[int, ...]:
        """|S^n(a)| for every letter a, from exact matrix powers."""
        power = self.exact_power(n)
        s = len(self.alphabet)
        return tuple(sum(power[i][j] for i in range(s)) for j in range(s))

    # ------------------------------------------------------- primitivity

    def primitivity(self) -> int | None:
        """Least p with M^p entrywise positive, or None.

        By Wielandt's bound a primitive s x s matrix satisfies
        p <= (s - 1)^2 + 1, so the search is finite.
        """
        s = len(self.alphabet)
        bound = (s - 1) ** 2 + 1
        base = self._exact_matrix()
        power = base
        for p in range(1, bound + 1):
            if all(x > 0 for row in power for x in row):
                return p
            if p < bound:
                power = _matmul_exact(power, base)
        return None

    # ------------------------------------------------------------ perron

    def perron(self, horizon: int = DEFAULT_HORIZON, tol: float = DEFAULT_TOL) -> "PerronData":
        """Dominant eigenvalue by power iteration plus empirical growth bounds.

        The growth bounds sandwich every image length:
        growth_lower * theta^n <= |S^n(a)| <= growth_upper * theta^n
        for all letters a and 1 <= n <= horizon.
        """
        p = self.primitivity()
        if p is None:
            raise NotPrimitiveError("substitution matrix is not primitive")
        m = self.matrix().astype(np.float64)
        theta = _power_iteration(m, tol)
        lo = np.inf
        hi = 0.0
        for n in range(1, horizon + 1):
            scale = theta**n
            for length in self.image_lengths(n):
                ratio = length / scale
                lo = min(lo, ratio)
                hi = max(hi, ratio)
        return PerronData(
            eigenvalue=theta,
            primitivity_exponent=p,
            growth_lower=float(lo),
            growth_upper=float(hi),
            horizon=horizon,
        )


@dataclass(frozen=True)
class PerronData:
    """Perron eigenvalue with the empirical growth constants used downstream."""

    eigenvalue: float
    primitivity_exponent: int
    growth_lower: float
    growth_upper: float
    horizon: int


def _matmul_exact(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _power_iteration(m: np.ndarray, tol: float, max_iter: int = 100_000) -> float:
    """Dominant eigenvalue of a non-negative primitive matrix.

    Stops on the eigen-residual |Mx - theta*x|, aiming below the requested
    tolerance (floored near machine precision); raises NumericError if the
    residual target is still unmet after ``max_iter`` iterations.
    """
    s = m.shape[0]
    x = np.ones(s) / np.sqrt(s)
    norm = float(np.abs(m).sum(axis=1).max())
    target = min(tol, 1e-13) * max(norm, 1.0)
    for _ in range(max_iter):
        y = m @ x
        ny = float(np.linalg.norm(y))
        if ny == 0.0:
            raise NumericError("power iteration collapsed to the zero vector")
        x = y / ny
        mx = m @ x
        theta = float(x @ mx)
        residual = float(np.max(np.abs(mx - theta * x)))
        if residual <= target:
            # polish toward the rounding floor; the tolerance is a ceiling,
            # not a stopping reward
            for _ in range(20):
                x = mx / float(np.linalg.norm(mx))
                mx = m @ x
            return float(x @ mx)
    raise NumericError(f"power iteration did not converge within {max_iter} iterations")
