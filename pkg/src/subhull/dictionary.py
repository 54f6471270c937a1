"""Word dictionaries: legal words of a substitution, hull factors, distances.

The central fact used throughout: two subshifts over the same alphabet are
within Hausdorff distance 1/(rho+1) of each other iff their dictionaries
agree at length 2*rho - 1.  Distance reports therefore carry an agreement
length, the derived bound, and a witness word at the first disagreement.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import ceil

from .errors import ResourceBudgetError, SubhullError
from .substitution import Substitution
from .words import CyclicWord, Word, cyclic_subwords, subwords

DEFAULT_WORD_BUDGET = 2_000_000

LEGAL = "substitution-legal"
HULL = "cyclic-hull"


@dataclass(frozen=True)
class Dictionary:
    """All words of one length from one source, as a hash-set."""

    length: int
    words: frozenset[Word]
    source: str

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: Word) -> bool:
        return word in self.words


def legal_words(sub: Substitution, ell: int, budget: int = DEFAULT_WORD_BUDGET) -> Dictionary:
    """Exactly the length-ell words occurring in the language of ``sub``.

    Seeds with the factors of S^n0(a) where n0 is the first level at which
    every image is at least ell long, then closes under taking factors of
    images.  Any ell-window of S(w) meets at most ell consecutive letter
    images, so it already lies in S(u) for some ell-factor u of w; the
    closure is therefore complete.
    """
    if ell < 1:
        raise ValueError("word length must be >= 1")
    return _legal_words_cached(sub, ell, budget)


@lru_cache(maxsize=512)
def _legal_words_cached(sub: Substitution, ell: int, budget: int) -> Dictionary:
    s = len(sub.alphabet)
    matrix = sub.exact_power(1)
    lengths = [1] * s
    n0 = 0
    while min(lengths) < ell:
        nxt = [sum(matrix[k][j] * lengths[k] for k in range(s)) for j in range(s)]
        if nxt == lengths:
            # images stopped growing below ell: no legal word this long
            return Dictionary(ell, frozenset(), LEGAL)
        lengths = nxt
        n0 += 1

    if all(len(a) == 1 for a in sub.alphabet.letters):
        return _legal_words_str(sub, ell, budget, n0)

    words: set[Word] = set()
    for a in sub.alphabet:
        words |= subwords(sub.apply_power((a,), n0), ell)
    if len(words) > budget:
        raise ResourceBudgetError(f"legal dictionary exceeded budget {budget} at length {ell}")

    frontier = set(words)
    while frontier:
        new: set[Word] = set()
        for w in frontier:
            for v in subwords(sub.apply(w), ell):
                if v not in words and v not in new:
                    new.add(v)
        if len(words) + len(new) > budget:
            raise ResourceBudgetError(f"legal dictionary exceeded budget {budget} at length {ell}")
        words |= new
        frontier = new
    return Dictionary(ell, frozenset(words), LEGAL)


def _legal_words_str(sub: Substitution, ell: int, budget: int, n0: int) -> Dictionary:
    """Closure on plain strings, valid when every letter is one character.

    str.translate applies the substitution and slicing takes factors, both
    at C speed, which matters for the long dictionaries the repetitivity
    estimate asks for.
    """
    table = {ord(a): "".join(sub.rule(a)) for a in sub.alphabet.letters}
    words: set[str] = set()
    for a in sub.alphabet.letters:
        img = a
        for _ in range(n0):
            img = img.translate(table)
        words.update(img[i : i + ell] for i in range(len(img) - ell + 1))
    if len(words) > budget:
        raise ResourceBudgetError(f"legal dictionary exceeded budget {budget} at length {ell}")

    frontier = words
    while frontier:
        new: set[str] = set()
        for w in frontier:
            img = w.translate(table)
            new.update(img[i : i + ell] for i in range(len(img) - ell + 1))
        new -= words
        if len(words) + len(new) > budget:
            raise ResourceBudgetError(f"legal dictionary exceeded budget {budget} at length {ell}")
        words |= new
        frontier = new
    return Dictionary(ell, frozenset(tuple(w) for w in words), LEGAL)


def illegal_words(sub: Substitution, ell: int, budget: int = DEFAULT_WORD_BUDGET) -> Dictionary:
    """Complement of the legal dictionary inside all length-ell words."""
    s = len(sub.alphabet)
    if s**ell > budget:
        raise ResourceBudgetError(f"|alphabet|^{ell} = {s**ell} exceeds budget {budget}")
    legal = legal_words(sub, ell, budget).words
    words = frozenset(
        w for w in itertools.product(sub.alphabet.letters, repeat=ell) if w not in legal
    )
    return Dictionary(ell, words, LEGAL)


def hull_words(cyclic: CyclicWord, ell: int) -> Dictionary:
    return Dictionary(ell, frozenset(cyclic_subwords(cyclic, ell)), HULL)


# ------------------------------------------------------------------ sources


@dataclass(frozen=True)
class LegalSource:
    """Dictionary source: the language of a primitive substitution."""

    substitution: Substitution
    budget: int = DEFAULT_WORD_BUDGET

    def dictionary(self, ell: int) -> Dictionary:
        return legal_words(self.substitution, ell, self.budget)


@dataclass(frozen=True)
class HullSource:
    """Dictionary source: the hull of one periodic configuration."""

    cyclic: CyclicWord

    def dictionary(self, ell: int) -> Dictionary:
        return hull_words(self.cyclic, ell)


def as_source(obj, budget: int = DEFAULT_WORD_BUDGET):
    if isinstance(obj, (LegalSource, HullSource)):
        return obj
    if isinstance(obj, Substitution):
        return LegalSource(obj, budget)
    if isinstance(obj, CyclicWord):
        return HullSource(obj)
    raise TypeError(f"not a dictionary source: {obj!r}")


def complexity(source, r: int, budget: int = DEFAULT_WORD_BUDGET) -> int:
    """Number of length-r words the source admits."""
    return len(as_source(source, budget).dictionary(r))


# ----------------------------------------------------------------- distance


@dataclass(frozen=True)
class DistanceReport:
    """Outcome of the odd-length agreement scan between two sources.

    agree_length is the largest odd L <= scanned_to at which the two
    dictionaries were equal (0 if they already differ at L = 1); the
    Hausdorff bound 1/(rho+1) with rho = (agree_length+1)/2 follows.  When
    a disagreement was seen inside the scan range, lower_witness is the
    smallest word in the symmetric difference at the first bad length.
    """

    agree_length: int
    rho: float
    upper_bound: float
    lower_witness: Word | None
    truncated: bool
    scanned_to: int


def distance(source1, source2, L_max: int = 41, budget: int = DEFAULT_WORD_BUDGET) -> DistanceReport:
    """Scan odd lengths 1, 3, ..., L_max for dictionary agreement."""
    report, _ = scan_agreement(source1, source2, L_max, budget)
    return report


def scan_agreement(source1, source2, L_max: int, budget: int = DEFAULT_WORD_BUDGET):
    """Distance scan that also returns the per-length dictionary sizes.

    Returns (report, sizes) with sizes a list of (L, |dict1|, |dict2|) for
    every length actually compared.
    """
    if L_max < 1:
        raise ValueError("L_max must be >= 1")
    src1 = as_source(source1, budget)
    src2 = as_source(source2, budget)
    agree = 0
    scanned = 0
    witness: Word | None = None
    truncated = False
    sizes: list[tuple[int, int, int]] = []
    for L in range(1, L_max + 1, 2):
        try:
            d1 = src1.dictionary(L)
            d2 = src2.dictionary(L)
        except ResourceBudgetError:
            truncated = True
            break
        sizes.append((L, len(d1), len(d2)))
        scanned = L
        if d1.words == d2.words:
            agree = L
        else:
            witness = min(d1.words ^ d2.words)
            break
    rho = (agree + 1) / 2
    report = DistanceReport(
        agree_length=agree,
        rho=rho,
        upper_bound=1.0 / (rho + 1.0),
        lower_witness=witness,
        truncated=truncated,
        scanned_to=scanned,
    )
    return report, sizes


# ------------------------------------------------------------- repetitivity


@dataclass(frozen=True)
class RepetitivityEstimate:
    """Empirical linear-repetitivity constant and the range it was checked on."""

    value: float
    ell_max: int
    grid_step: float


def repetitivity_constant(
    sub: Substitution,
    ell_max: int = 8,
    grid_step: float = 0.5,
    c_max: float = 256.0,
    budget: int = DEFAULT_WORD_BUDGET,
) -> RepetitivityEstimate:
    """Smallest grid value C such that every legal ell-word occurs in every
    legal ceil(C*ell)-word, for all ell <= ell_max.

    This is an empirical stand-in for the true repetitivity constant; it is
    only verified on the stated range.  Containment at window length L implies
    it at L+1 (any legal (L+1)-word has a legal L-factor), so the minimal
    sufficient window per ell is found by doubling and bisecting rather than
    walking the whole C grid.
    """
    needed: list[tuple[int, int]] = []
    for ell in range(1, ell_max + 1):
        cap = ceil(c_max * ell)
        if _repetitive_at(sub, ell, ell, budget):
            needed.append((ell, ell))
            continue
        lo = ell
        hi = None
        step = max(2 * ell, ell + 1)
        while step <= cap:
            if _repetitive_at(sub, ell, step, budget):
                hi = step
                break
            lo = step
            step *= 2
        if hi is None:
            if not _repetitive_at(sub, ell, cap, budget):
                raise SubhullError(f"no repetitivity constant <= {c_max} found on the grid")
            hi = cap
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if _repetitive_at(sub, ell, mid, budget):
                hi = mid
            else:
                lo = mid
        needed.append((ell, hi))

    c = 1.0
    while c <= c_max + 1e-9:
        if all(ceil(c * ell) >= need for ell, need in needed):
            return RepetitivityEstimate(value=c, ell_max=ell_max, grid_step=grid_step)
        c += grid_step
    raise SubhullError(f"no repetitivity constant <= {c_max} found on the grid")


def _repetitive_at(sub: Substitution, ell: int, big: int, budget: int) -> bool:
    if big <= ell:
        big = ell
    small = ["\x00" + "\x00".join(u) + "\x00" for u in legal_words(sub, ell, budget).words]
    for w in legal_words(sub, big, budget).words:
        joined = "\x00" + "\x00".join(w) + "\x00"
        for u in small:
            if u not in joined:
                return False
    return True
