"""Finite presentations: parsing, serialization, symmetrization,
abelianization, and homomorphism checking against a word-problem oracle.

File format (UTF-8, line oriented): the first content line is ``gens:``
followed by space-separated generator names; every following content line
is ``rel:`` followed by one word in the standard word syntax (the literal
``1`` for an empty relator).  Lines starting with ``#`` are comments.
Relator count and order are preserved verbatim: several constructions in
this package assert exact relator cardinalities, so nothing is ever
deduplicated or simplified.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import BudgetExceeded, PresentationError
from .snf import IntMatrix, smith_normal_form
from .words import (
    EMPTY,
    GenMap,
    Word,
    format_word,
    parse_word,
    substitute,
    valid_generator_name,
)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        seen = set()
        for g in self.generators:
            if not valid_generator_name(g):
                raise PresentationError(f"invalid generator name {g!r}")
            if g in seen:
                raise PresentationError(f"duplicate generator name {g!r}")
            seen.add(g)
        for idx, rel in enumerate(self.relators):
            extra = rel.generators() - seen
            if extra:
                raise PresentationError(
                    f"relator {idx + 1} uses undeclared generator(s) "
                    f"{sorted(extra)}"
                )

    @classmethod
    def build(cls, gens: str | Sequence[str], relators: Iterable[Word | str] = ()):
        names = tuple(gens.split()) if isinstance(gens, str) else tuple(gens)
        rels = tuple(
            parse_word(r) if isinstance(r, str) else r for r in relators
        )
        return cls(names, rels)

    @property
    def rank(self) -> int:
        return len(self.generators)


def parse_presentation(text: str) -> Presentation:
    gens: tuple[str, ...] | None = None
    relators: list[Word] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("gens:"):
            if gens is not None:
                raise PresentationError(f"line {lineno}: second gens: line")
            gens = tuple(line[len("gens:") :].split())
        elif line.startswith("rel:"):
            if gens is None:
                raise PresentationError(f"line {lineno}: rel: before gens:")
            body = line[len("rel:") :].strip()
            if not body:
                raise PresentationError(f"line {lineno}: rel: without a word")
            relators.append(parse_word(body))
        else:
            raise PresentationError(f"line {lineno}: unrecognized line {line!r}")
    if gens is None:
        raise PresentationError("missing gens: line")
    return Presentation(gens, tuple(relators))


def serialize_presentation(p: Presentation) -> str:
    lines = ["gens: " + " ".join(p.generators)]
    lines.extend("rel: " + format_word(r) for r in p.relators)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# symmetrization


def symmetrize(p: Presentation, max_letters: int = 10**7) -> list[Word]:
    """All distinct cyclic permutations of each relator and of each
    relator's inverse, deduplicated.  Relators are cyclically reduced
    first.  Refuses (BudgetExceeded) when the output would hold more than
    ``max_letters`` letters."""
    total = 0
    for rel in p.relators:
        core, _ = rel.cyclic_reduce()
        total += 2 * core.letter_count * core.letter_count
        if total > max_letters:
            raise BudgetExceeded(
                f"symmetrized set would exceed {max_letters} letters"
            )
    seen: set[tuple] = set()
    out: list[Word] = []
    for rel in p.relators:
        core, _ = rel.cyclic_reduce()
        if core.is_identity:
            continue
        letters = list(core.letters())
        for arr in (letters, [(g, -s) for g, s in reversed(letters)]):
            for i in range(len(arr)):
                rot = tuple(arr[i:] + arr[:i])
                if rot not in seen:
                    seen.add(rot)
                    out.append(_letters_to_word(rot))
    return out


def _letters_to_word(letters) -> Word:
    from .words import reduce as _reduce

    return _reduce(letters)


# ---------------------------------------------------------------------------
# abelianization


@dataclass(frozen=True)
class AbelianizationResult:
    betti: int
    torsion: tuple[int, ...]

    def __post_init__(self) -> None:
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion coefficients must form a chain")


def relation_matrix(p: Presentation) -> IntMatrix:
    """Exponent-sum matrix: one row per relator, one column per generator.
    Empty relators contribute a zero row."""
    index = {g: i for i, g in enumerate(p.generators)}
    rows = []
    for rel in p.relators:
        row = [0] * len(p.generators)
        for g, s in rel.exponent_sums().items():
            row[index[g]] = s
        rows.append(row)
    return IntMatrix.from_rows(rows) if rows else IntMatrix(0, len(p.generators), ())


def abelianization(p: Presentation) -> AbelianizationResult:
    """First Betti number and elementary divisors of the abelianized
    presentation, via Smith normal form of the exponent-sum matrix."""
    if not p.relators:
        return AbelianizationResult(len(p.generators), ())
    divisors = smith_normal_form(relation_matrix(p))
    rank = len(divisors)
    torsion = tuple(d for d in divisors if d > 1)
    return AbelianizationResult(len(p.generators) - rank, torsion)


def format_abelianization(res: AbelianizationResult) -> str:
    torsion = " ".join(str(d) for d in res.torsion) if res.torsion else "none"
    return f"betti: {res.betti}\ntorsion: {torsion}\n"


# ---------------------------------------------------------------------------
# homomorphism checking


class WordVerdict(enum.Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"
    INCONCLUSIVE = "inconclusive"


class HomCheck(enum.Enum):
    WELL_DEFINED = "well-defined"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


WordOracle = Callable[[Word], WordVerdict]


def free_group_oracle() -> WordOracle:
    """Word-problem oracle for a free group: trivial iff freely reduced
    to the empty word (which every Word already is)."""

    def oracle(w: Word) -> WordVerdict:
        return WordVerdict.TRIVIAL if w.is_identity else WordVerdict.NONTRIVIAL

    return oracle


def check_hom(source: Presentation, genmap: GenMap, target_wp: WordOracle) -> HomCheck:
    """Is the generator assignment a well-defined homomorphism?

    True (WELL_DEFINED) iff the image of every relator of ``source`` is
    trivial in the target, componentwise for tuple-valued maps, as decided
    by the supplied word-problem oracle.  Surjectivity is not checked.
    An inconclusive oracle answer propagates as INCONCLUSIVE unless some
    other component already witnessed failure.
    """
    missing = [g for g in source.generators if g not in genmap.assignments]
    if missing:
        raise PresentationError(f"map does not assign generator(s) {missing}")
    saw_inconclusive = False
    for rel in source.relators:
        for component in substitute(rel, genmap):
            verdict = target_wp(component)
            if verdict is WordVerdict.NONTRIVIAL:
                return HomCheck.FAILS
            if verdict is WordVerdict.INCONCLUSIVE:
                saw_inconclusive = True
    return HomCheck.INCONCLUSIVE if saw_inconclusive else HomCheck.WELL_DEFINED
