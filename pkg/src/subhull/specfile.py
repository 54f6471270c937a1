"""Plain-text description files for substitutions.

Format, one ``key: value`` pair per line (``#`` starts a comment):

    name: fibonacci
    alphabet: 0 1
    rule 0: 01
    rule 1: 0
    seed: 0
    potential 0: 0.0
    potential 1: 1.0

The alphabet line must precede rules, seed, and potentials.  Words list
letters separated by whitespace; when every letter is a single character
the separators may be dropped ("01" == "0 1").  ``seed`` and ``potential``
are optional; every letter needs a rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .errors import ParseError
from .spectral import PotentialMap
from .substitution import Substitution
from .words import Alphabet, CyclicWord


@dataclass(frozen=True)
class SubstitutionSpec:
    name: str
    substitution: Substitution
    seed: CyclicWord | None
    potential: PotentialMap | None


def parse_spec(text: str, filename: str = "<string>") -> SubstitutionSpec:
    name = ""
    alphabet: Alphabet | None = None
    rules: dict[str, tuple[str, ...]] = {}
    seed: CyclicWord | None = None
    potential: dict[str, float] = {}
    seen_name = seen_alphabet = seen_seed = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError("expected 'key: value'", filename, lineno)
        key, _, value = line.partition(":")
        key = key.strip()
        value = value.strip()
        parts = key.split()

        if key == "name":
            if seen_name:
                raise ParseError("duplicate name line", filename, lineno)
            seen_name = True
            name = value
        elif key == "alphabet":
            if seen_alphabet:
                raise ParseError("duplicate alphabet line", filename, lineno)
            seen_alphabet = True
            try:
                alphabet = Alphabet(tuple(value.split()))
            except ValueError as e:
                raise ParseError(str(e), filename, lineno) from None
        elif len(parts) == 2 and parts[0] == "rule":
            letter = parts[1]
            if alphabet is None:
                raise ParseError("alphabet must be declared before rules", filename, lineno)
            if letter not in alphabet:
                raise ParseError(f"rule for unknown letter {letter!r}", filename, lineno)
            if letter in rules:
                raise ParseError(f"duplicate rule for letter {letter!r}", filename, lineno)
            try:
                rules[letter] = alphabet.parse_word(value)
            except ParseError as e:
                raise ParseError(str(e.args[0]).split(": ", 1)[-1], filename, lineno) from None
        elif key == "seed":
            if alphabet is None:
                raise ParseError("alphabet must be declared before the seed", filename, lineno)
            if seen_seed:
                raise ParseError("duplicate seed line", filename, lineno)
            seen_seed = True
            try:
                seed = CyclicWord(alphabet.parse_word(value))
            except ParseError as e:
                raise ParseError(str(e.args[0]).split(": ", 1)[-1], filename, lineno) from None
        elif len(parts) == 2 and parts[0] == "potential":
            letter = parts[1]
            if alphabet is None:
                raise ParseError("alphabet must be declared before potentials", filename, lineno)
            if letter not in alphabet:
                raise ParseError(f"potential for unknown letter {letter!r}", filename, lineno)
            if letter in potential:
                raise ParseError(f"duplicate potential for letter {letter!r}", filename, lineno)
            try:
                potential[letter] = float(value)
            except ValueError:
                raise ParseError(f"potential value {value!r} is not a number", filename, lineno) from None
        else:
            raise ParseError(f"unknown key {key!r}", filename, lineno)

    if alphabet is None:
        raise ParseError("missing alphabet line", filename)
    for letter in alphabet:
        if letter not in rules:
            raise ParseError(f"no rule for letter {letter!r}", filename)
    if potential:
        for letter in potential:
            if letter not in alphabet:
                raise ParseError(f"potential for unknown letter {letter!r}", filename)

    sub = Substitution.from_rules(alphabet, rules)
    pot = PotentialMap.from_mapping(potential) if potential else None
    return SubstitutionSpec(name=name, substitution=sub, seed=seed, potential=pot)


def load_spec(path: str) -> SubstitutionSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read(), filename=path)


def bundled_names() -> list[str]:
    pkg = resources.files("subhull") / "specs"
    return sorted(p.name[: -len(".spec")] for p in pkg.iterdir() if p.name.endswith(".spec"))


def load_bundled(name: str) -> SubstitutionSpec:
    pkg = resources.files("subhull") / "specs"
    candidate = pkg / f"{name}.spec"
    if not candidate.is_file():
        raise FileNotFoundError(f"no bundled substitution named {name!r}")
    return parse_spec(candidate.read_text(encoding="utf-8"), filename=f"bundled:{name}")
