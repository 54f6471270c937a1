"""Defect graphs: how illegal 2-words propagate under substitution.

Vertices are all 2-words; an edge u -> w (both illegal) means w occurs in
S(u).  An illegal 2-word in the n-th image of a periodic seed is always the
endpoint of a length-n walk starting at an illegal 2-word of the seed, so a
seed is harmless ("good") exactly when no walk from its census reaches a
closed walk; equivalently, when every walk from the census is shorter than
|alphabet|^2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .dictionary import DEFAULT_WORD_BUDGET, legal_words
from .errors import ResourceBudgetError
from .substitution import Substitution
from .words import Alphabet, CyclicWord, Word, cyclic_subwords, subwords

DEFAULT_PERIOD_BUDGET = 10_000_000


@dataclass(frozen=True)
class DefectGraph:
    alphabet: Alphabet
    legal: frozenset[Word]
    edges: tuple[tuple[Word, Word], ...]
    _succ: dict[Word, tuple[Word, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        succ: dict[Word, list[Word]] = {}
        for u, w in self.edges:
            succ.setdefault(u, []).append(w)
        object.__setattr__(
            self, "_succ", {u: tuple(sorted(ws)) for u, ws in succ.items()}
        )

    @property
    def vertices(self) -> tuple[Word, ...]:
        return tuple(sorted(itertools.product(self.alphabet.letters, repeat=2)))

    @property
    def illegal(self) -> tuple[Word, ...]:
        return tuple(v for v in self.vertices if v not in self.legal)

    def successors(self, u: Word) -> tuple[Word, ...]:
        return self._succ.get(u, ())


def build_defect_graph(sub: Substitution, budget: int = DEFAULT_WORD_BUDGET) -> DefectGraph:
    legal = legal_words(sub, 2, budget).words
    illegal = [w for w in sorted(itertools.product(sub.alphabet.letters, repeat=2)) if w not in legal]
    illegal_set = set(illegal)
    edges = []
    for u in illegal:
        for w in sorted(subwords(sub.apply(u), 2)):
            if w in illegal_set:
                edges.append((u, w))
    return DefectGraph(sub.alphabet, legal, tuple(edges))


@dataclass(frozen=True)
class SeedCensus:
    """The 2-words present in a seed, with the seed kept when known."""

    two_words: frozenset[Word]
    origin: CyclicWord | None = None

    def __post_init__(self):
        for w in self.two_words:
            if len(w) != 2:
                raise ValueError(f"census word {w!r} does not have length 2")

    @classmethod
    def from_cyclic(cls, cyclic: CyclicWord) -> "SeedCensus":
        return cls(frozenset(cyclic_subwords(cyclic, 2)), origin=cyclic)

    @classmethod
    def from_words(cls, words) -> "SeedCensus":
        return cls(frozenset(tuple(w) for w in words), origin=None)


@dataclass(frozen=True)
class Classification:
    """Verdict for a census, with checkable evidence.

    Bad: ``path_to_cycle`` leads from a census vertex to ``cycle[0]`` and
    ``cycle`` is a closed walk.  Good: ``max_path_length`` is the longest
    defect walk leaving the census, strictly below ``bound``.
    """

    verdict: str
    cycle: tuple[Word, ...] | None = None
    path_to_cycle: tuple[Word, ...] | None = None
    max_path_length: int | None = None
    bound: int = 0

    @property
    def good(self) -> bool:
        return self.verdict == "good"


def classify(graph: DefectGraph, census: SeedCensus) -> Classification:
    """Good/bad verdict by cycle reachability from the census."""
    sources = _census_sources(graph, census)
    bound = len(graph.alphabet) ** 2
    reachable = _reachable(graph, sources)
    cycle = _find_cycle(graph, reachable)
    if cycle is not None:
        path = _shortest_path(graph, sources, cycle[0])
        return Classification("bad", cycle=cycle, path_to_cycle=path, bound=bound)
    longest = max((_longest_walk(graph, v) for v in sources), default=0)
    return Classification("good", max_path_length=longest, bound=bound)


def classify_by_walk_length(graph: DefectGraph, census: SeedCensus) -> Classification:
    """Same verdict, different route: a census is bad iff some defect walk
    from it reaches length |alphabet|^2 (pigeonhole forces a repeat)."""
    sources = _census_sources(graph, census)
    bound = len(graph.alphabet) ** 2
    frontier = frozenset(sources)
    for m in range(1, bound + 1):
        frontier = frozenset(w for u in frontier for w in graph.successors(u))
        if not frontier:
            return Classification("good", max_path_length=m - 1 if sources else 0, bound=bound)
    return Classification("bad", bound=bound)


def walk_frontier(graph: DefectGraph, sources, steps: int) -> frozenset[Word]:
    """Vertices reachable by walks of exactly ``steps`` edges from sources."""
    frontier = frozenset(sources)
    for _ in range(steps):
        frontier = frozenset(w for u in frontier for w in graph.successors(u))
    return frontier


def self_correcting(graph: DefectGraph) -> tuple[bool, tuple[Word, ...] | None]:
    """True iff the graph has no closed walk at all (every seed is good)."""
    cycle = _find_cycle(graph, set(graph.illegal))
    return cycle is None, cycle


def defect_paths(
    sub: Substitution,
    seed: CyclicWord,
    n: int,
    period_budget: int = DEFAULT_PERIOD_BUDGET,
) -> list[frozenset[Word]]:
    """Illegal 2-words of S^m(seed) for m = 1..n (entry m-1 of the list)."""
    legal = legal_words(sub, 2).words
    image_len = {a: len(sub.rule(a)) for a in sub.alphabet}
    out: list[frozenset[Word]] = []
    current = seed
    for m in range(1, n + 1):
        predicted = sum(image_len[a] for a in current.period)
        if predicted > period_budget:
            raise ResourceBudgetError(
                f"period would reach {predicted} letters at step {m}, budget {period_budget}"
            )
        current = sub.apply_cyclic(current)
        observed = cyclic_subwords(current, 2)
        out.append(frozenset(w for w in observed if w not in legal))
    return out


def to_dot(graph: DefectGraph) -> str:
    """GraphViz rendering; legal vertices are filled gray, order is fixed."""
    fmt = graph.alphabet.format_word
    lines = ["digraph defect_graph {", "  node [shape=box];"]
    for v in graph.vertices:
        label = fmt(v)
        if v in graph.legal:
            lines.append(f'  "{label}" [legal=true, style=filled, fillcolor=gray];')
        else:
            lines.append(f'  "{label}" [legal=false];')
    for u, w in sorted(graph.edges):
        lines.append(f'  "{fmt(u)}" -> "{fmt(w)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------- internal


def _census_sources(graph: DefectGraph, census: SeedCensus) -> list[Word]:
    for w in census.two_words:
        for a in w:
            if a not in graph.alphabet:
                raise ValueError(f"census letter {a!r} is not in the alphabet")
    return sorted(w for w in census.two_words if w not in graph.legal)


def _reachable(graph: DefectGraph, sources) -> set[Word]:
    seen = set(sources)
    stack = list(sources)
    while stack:
        u = stack.pop()
        for w in graph.successors(u):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _find_cycle(graph: DefectGraph, allowed: set[Word]) -> tuple[Word, ...] | None:
    """A closed walk inside ``allowed``, as (v0, ..., v0), else None."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {v: WHITE for v in allowed}
    for root in sorted(allowed):
        if color[root] != WHITE:
            continue
        stack: list[tuple[Word, int]] = [(root, 0)]
        path: list[Word] = []
        while stack:
            v, idx = stack.pop()
            if idx == 0:
                color[v] = GRAY
                path.append(v)
            succ = [w for w in graph.successors(v) if w in allowed]
            if idx < len(succ):
                stack.append((v, idx + 1))
                w = succ[idx]
                if color[w] == GRAY:
                    start = path.index(w)
                    return tuple(path[start:]) + (w,)
                if color[w] == WHITE:
                    stack.append((w, 0))
            else:
                color[v] = BLACK
                path.pop()
    return None


def _shortest_path(graph: DefectGraph, sources, target: Word) -> tuple[Word, ...]:
    parent: dict[Word, Word | None] = {v: None for v in sources}
    queue = list(sources)
    seen = set(sources)
    while queue:
        nxt: list[Word] = []
        for u in queue:
            if u == target:
                path = [u]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return tuple(reversed(path))
            for w in graph.successors(u):
                if w not in seen:
                    seen.add(w)
                    parent[w] = u
                    nxt.append(w)
        queue = nxt
    raise RuntimeError("target vertex was reported reachable but BFS cannot reach it")


def _longest_walk(graph: DefectGraph, start: Word) -> int:
    """Edge count of the longest walk from ``start`` (graph must be acyclic
    downstream of it, which classify() has established)."""
    memo: dict[Word, int] = {}

    def rec(v: Word) -> int:
        if v in memo:
            return memo[v]
        succ = graph.successors(v)
        memo[v] = 0 if not succ else 1 + max(rec(w) for w in succ)
        return memo[v]

    return rec(start)
