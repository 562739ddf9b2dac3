"""Exact free-group word algebra over named alphabets.

Words are kept in canonical run-length-encoded form: a sequence of
syllables ``(generator, exponent)`` with nonzero exponents and distinct
adjacent generators.  Exponents are ordinary Python integers, so relators
with exponents in the millions cost one syllable.

Two internal refinements keep the presentation builders cheap:

* a *staircase* segment compresses the frequently occurring pattern
  ``x y^lo x y^(lo+1) ... x y^hi`` (or its inverse) into O(1) storage, so
  padding relators with 10^8 syllables are representable;
* equality and iteration always act on the underlying syllable stream, so
  a staircase word and an explicitly spelled word compare equal.

Generator names are plain strings: nonempty, over ``[A-Za-z0-9_]``, with
at least one non-digit so the empty-word literal ``1`` stays unambiguous.

Word text syntax (used by all file formats): whitespace-separated
syllables ``name^exp``; ``^exp`` may be dropped when the exponent is 1;
the empty word is the literal ``1``.  Example: ``x y^-3 x^6561``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import SubstitutionError, WordSyntaxError

Syllable = tuple[str, int]

_NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")


def valid_generator_name(name: str) -> bool:
    """True for a usable generator name (word-syntax safe)."""
    return bool(_NAME_RE.match(name)) and not name.isdigit()


def check_generator_name(name: str) -> str:
    if not valid_generator_name(name):
        raise WordSyntaxError(f"invalid generator name: {name!r}")
    return name


@dataclass(frozen=True)
class _Stair:
    """Segment encoding ``prod_(j=lo..hi) xgen^1 ygen^j`` (``inv`` reverses
    and inverts).  Requires ``1 <= lo <= hi`` and distinct generators, so
    the expansion is already freely reduced."""

    xgen: str
    ygen: str
    lo: int
    hi: int
    inv: bool = False

    def __post_init__(self) -> None:
        if self.xgen == self.ygen or self.lo < 1 or self.lo > self.hi:
            raise ValueError(f"malformed staircase {self!r}")

    @property
    def steps(self) -> int:
        return self.hi - self.lo + 1

    @property
    def syllable_count(self) -> int:
        return 2 * self.steps

    @property
    def letter_count(self) -> int:
        return self.steps + (self.lo + self.hi) * self.steps // 2

    def syllables(self) -> Iterator[Syllable]:
        if self.inv:
            for j in range(self.hi, self.lo - 1, -1):
                yield (self.ygen, -j)
                yield (self.xgen, -1)
        else:
            for j in range(self.lo, self.hi + 1):
                yield (self.xgen, 1)
                yield (self.ygen, j)

    def first_syllable(self) -> Syllable:
        return (self.ygen, -self.hi) if self.inv else (self.xgen, 1)

    def last_syllable(self) -> Syllable:
        return (self.xgen, -1) if self.inv else (self.ygen, self.hi)


Segment = tuple  # either a Syllable or a _Stair; internal


def _seg_first(seg) -> Syllable:
    return seg.first_syllable() if isinstance(seg, _Stair) else seg


def _seg_last(seg) -> Syllable:
    return seg.last_syllable() if isinstance(seg, _Stair) else seg


def _seg_syllable_count(seg) -> int:
    return seg.syllable_count if isinstance(seg, _Stair) else 1


def _seg_letter_count(seg) -> int:
    return seg.letter_count if isinstance(seg, _Stair) else abs(seg[1])


def _stair_pop_first(st: _Stair) -> tuple[Syllable, list]:
    """First syllable plus the remaining segments of a staircase."""
    if st.inv:
        rest: list = [(st.xgen, -1)]
        if st.hi - 1 >= st.lo:
            rest.append(_Stair(st.xgen, st.ygen, st.lo, st.hi - 1, True))
        return (st.ygen, -st.hi), rest
    rest = [(st.ygen, st.lo)]
    if st.lo + 1 <= st.hi:
        rest.append(_Stair(st.xgen, st.ygen, st.lo + 1, st.hi, False))
    return (st.xgen, 1), rest


def _stair_pop_last(st: _Stair) -> tuple[list, Syllable]:
    """Remaining segments plus the last syllable of a staircase."""
    if st.inv:
        rest: list = []
        if st.hi >= st.lo + 1:
            rest.append(_Stair(st.xgen, st.ygen, st.lo + 1, st.hi, True))
        rest.append((st.ygen, -st.lo))
        return rest, (st.xgen, -1)
    rest = []
    if st.hi - 1 >= st.lo:
        rest.append(_Stair(st.xgen, st.ygen, st.lo, st.hi - 1, False))
    rest.append((st.xgen, 1))
    return rest, (st.ygen, st.hi)


def _append_syllable(out: list, gen: str, exp: int) -> None:
    """Push one syllable onto a canonical segment stack, merging and
    cancelling at the boundary."""
    while exp != 0:
        if not out:
            out.append((gen, exp))
            return
        top = out[-1]
        lg, le = _seg_last(top)
        if lg != gen:
            out.append((gen, exp))
            return
        out.pop()
        if isinstance(top, _Stair):
            rest, (_, le) = _stair_pop_last(top)
            out.extend(rest)
        merged = le + exp
        if merged == 0:
            return
        exp = merged
        # loop: the merged syllable may cancel deeper


def _append_segment(out: list, seg) -> None:
    if isinstance(seg, _Stair):
        if not out or _seg_last(out[-1])[0] != seg.first_syllable()[0]:
            out.append(seg)
            return
        first, rest = _stair_pop_first(seg)
        _append_syllable(out, *first)
        for s in rest:
            _append_segment(out, s)
    else:
        _append_syllable(out, *seg)


@dataclass(frozen=True)
class Word:
    """Immutable freely reduced word.  Use :func:`reduce`, :func:`word`
    or the algebra operators to build instances."""

    segments: tuple = ()
    letter_count: int = field(init=False, compare=False)
    syllable_count: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "letter_count", sum(_seg_letter_count(s) for s in self.segments)
        )
        object.__setattr__(
            self, "syllable_count", sum(_seg_syllable_count(s) for s in self.segments)
        )

    # -- structure ---------------------------------------------------

    @property
    def is_identity(self) -> bool:
        return not self.segments

    def syllables(self) -> Iterator[Syllable]:
        """Canonical RLE syllable stream.  Expands staircases lazily."""
        for seg in self.segments:
            if isinstance(seg, _Stair):
                yield from seg.syllables()
            else:
                yield seg

    def syllable_list(self) -> list[Syllable]:
        return list(self.syllables())

    def letters(self) -> Iterator[tuple[str, int]]:
        """Stream of single letters ``(gen, +1/-1)``."""
        for gen, exp in self.syllables():
            sign = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield (gen, sign)

    def generators(self) -> set[str]:
        gens: set[str] = set()
        for seg in self.segments:
            if isinstance(seg, _Stair):
                gens.add(seg.xgen)
                gens.add(seg.ygen)
            else:
                gens.add(seg[0])
        return gens

    def exponent_sums(self) -> dict[str, int]:
        """Image in the free abelianization, as generator -> exponent sum."""
        sums: dict[str, int] = {}
        for seg in self.segments:
            if isinstance(seg, _Stair):
                sgn = -1 if seg.inv else 1
                sums[seg.xgen] = sums.get(seg.xgen, 0) + sgn * seg.steps
                ysum = (seg.lo + seg.hi) * seg.steps // 2
                sums[seg.ygen] = sums.get(seg.ygen, 0) + sgn * ysum
            else:
                sums[seg[0]] = sums.get(seg[0], 0) + seg[1]
        return sums

    def first_syllable(self) -> Syllable:
        return _seg_first(self.segments[0])

    def last_syllable(self) -> Syllable:
        return _seg_last(self.segments[-1])

    # -- algebra -----------------------------------------------------

    def __mul__(self, other: "Word") -> "Word":
        if self.is_identity:
            return other
        if other.is_identity:
            return self
        out = list(self.segments)
        for seg in other.segments:
            _append_segment(out, seg)
        return Word(tuple(out))

    def inverse(self) -> "Word":
        segs = []
        for seg in reversed(self.segments):
            if isinstance(seg, _Stair):
                segs.append(_Stair(seg.xgen, seg.ygen, seg.lo, seg.hi, not seg.inv))
            else:
                segs.append((seg[0], -seg[1]))
        return Word(tuple(segs))

    def __invert__(self) -> "Word":
        return self.inverse()

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return EMPTY
        base = self if n > 0 else self.inverse()
        n = abs(n)
        result = EMPTY
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conjugate_by(self, g: "Word") -> "Word":
        return g * self * g.inverse()

    # -- cyclic structure --------------------------------------------

    def is_cyclically_reduced(self) -> bool:
        if self.syllable_count <= 1:
            return True
        (fg, fe) = self.first_syllable()
        (lg, le) = self.last_syllable()
        return fg != lg or (fe > 0) == (le > 0)

    def cyclic_reduce(self) -> tuple["Word", "Word"]:
        """Return ``(core, conj)`` with ``self == conj * core * conj^-1``
        and ``core`` cyclically reduced."""
        core = self
        conj = EMPTY
        while not core.is_cyclically_reduced():
            g, e = core.first_syllable()
            _, le = core.last_syllable()
            k = min(abs(e), abs(le))
            head = Word(((g, k if e > 0 else -k),))
            core = head.inverse() * core * head
            conj = conj * head
        return core, conj

    # -- comparisons -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        if self.segments == other.segments:
            return True
        if (
            self.letter_count != other.letter_count
            or self.syllable_count != other.syllable_count
        ):
            return False
        for a, b in zip(self.syllables(), other.syllables()):
            if a != b:
                return False
        return True

    def __hash__(self) -> int:
        if not self.segments:
            return hash(())
        return hash(
            (
                self.letter_count,
                self.syllable_count,
                self.first_syllable(),
                self.last_syllable(),
            )
        )

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        text = format_word(self)
        if len(text) > 60:
            text = text[:57] + "..."
        return f"Word({text})"


EMPTY = Word()


def staircase(xgen: str, ygen: str, lo: int, hi: int) -> Word:
    """The word ``x y^lo x y^(lo+1) ... x y^hi`` in O(1) storage.
    An empty range (``lo > hi``) gives the identity."""
    if lo > hi:
        return EMPTY
    check_generator_name(xgen)
    check_generator_name(ygen)
    if lo < 1:
        # negative or zero exponents would need reduction; spell them out
        return reduce(
            pair for j in range(lo, hi + 1) for pair in ((xgen, 1), (ygen, j))
        )
    return Word((_Stair(xgen, ygen, lo, hi),))


def reduce(raw: Iterable[Syllable]) -> Word:
    """Canonical RLE form of a raw syllable sequence: no zero exponents,
    no adjacent equal generators."""
    out: list = []
    for gen, exp in raw:
        check_generator_name(gen)
        _append_syllable(out, gen, exp)
    return Word(tuple(out))


def invert(w: Word) -> Word:
    return w.inverse()


def concat(*ws: Word) -> Word:
    out = EMPTY
    for w in ws:
        out = out * w
    return out


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1`` (convention fixed project-wide)."""
    return u * v * u.inverse() * v.inverse()


def gen(name: str, exp: int = 1) -> Word:
    check_generator_name(name)
    return reduce([(name, exp)])


# ---------------------------------------------------------------------------
# generator maps / substitution


@dataclass(frozen=True)
class GenMap:
    """A homomorphism recipe: each source generator is assigned a tuple of
    image words, one entry per direct factor of the target (width 1 for a
    plain homomorphism)."""

    assignments: Mapping[str, tuple[Word, ...]]
    width: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        widths = {len(t) for t in self.assignments.values()}
        if len(widths) > 1:
            raise SubstitutionError(f"mixed image widths {sorted(widths)} in GenMap")
        if widths == {0}:
            raise SubstitutionError("zero-width images in GenMap")
        object.__setattr__(self, "width", widths.pop() if widths else 1)

    @classmethod
    def plain(cls, mapping: Mapping[str, Word]) -> "GenMap":
        return cls({g: (w,) for g, w in mapping.items()})

    def image(self, gen_name: str) -> tuple[Word, ...]:
        try:
            return self.assignments[gen_name]
        except KeyError:
            raise SubstitutionError(
                f"no image assigned for generator {gen_name!r}"
            ) from None

    def covers(self, gens: Iterable[str]) -> bool:
        return all(g in self.assignments for g in gens)


_IDENTITY_TUPLE_CACHE: dict[int, tuple[Word, ...]] = {}


def substitute(w: Word, images: GenMap) -> tuple[Word, ...]:
    """Componentwise substitution followed by reduction.

    Every generator of ``w`` must be assigned in ``images``; the result is
    a tuple of ``images.width`` reduced words.
    """
    k = images.width
    parts: list[list] = [[] for _ in range(k)]
    for seg in w.segments:
        if isinstance(seg, _Stair):
            ximg = images.image(seg.xgen)
            yimg = images.image(seg.ygen)
            if all(t.is_identity for t in ximg) and all(t.is_identity for t in yimg):
                continue  # whole staircase maps to the identity
            for gname, exp in seg.syllables():
                for c, target in enumerate(images.image(gname)):
                    _substitute_power(parts[c], target, exp)
        else:
            gname, exp = seg
            for c, target in enumerate(images.image(gname)):
                _substitute_power(parts[c], target, exp)
    return tuple(Word(tuple(out)) for out in parts)


def _substitute_power(out: list, target: Word, exp: int) -> None:
    if target.is_identity or exp == 0:
        return
    img = target if exp > 0 else target.inverse()
    if abs(exp) > 1 and target.syllable_count == 1:
        g, e = target.first_syllable()
        _append_syllable(out, g, e * exp)
        return
    powered = img ** abs(exp) if abs(exp) > 1 else img
    for seg in powered.segments:
        _append_segment(out, seg)


def substitute1(w: Word, images: GenMap) -> Word:
    """Width-1 substitution returning the single component."""
    result = substitute(w, images)
    if len(result) != 1:
        raise SubstitutionError(f"expected width-1 map, got width {len(result)}")
    return result[0]


# ---------------------------------------------------------------------------
# text syntax

_SYLLABLE_RE = re.compile(r"([A-Za-z0-9_]+)(?:\^(-?\d+))?\Z")


def parse_word(text: str) -> Word:
    """Parse the ``name^exp`` syllable syntax; the literal ``1`` is the
    empty word."""
    tokens = text.split()
    if not tokens:
        raise WordSyntaxError("empty word text (use the literal '1')")
    if tokens == ["1"]:
        return EMPTY
    pairs: list[Syllable] = []
    for tok in tokens:
        m = _SYLLABLE_RE.match(tok)
        if not m:
            raise WordSyntaxError(f"malformed syllable {tok!r}")
        name, exp_text = m.group(1), m.group(2)
        if not valid_generator_name(name):
            raise WordSyntaxError(f"invalid generator name in syllable {tok!r}")
        pairs.append((name, int(exp_text) if exp_text is not None else 1))
    return reduce(pairs)


word = parse_word


def format_word(w: Word) -> str:
    if w.is_identity:
        return "1"
    return " ".join(
        g if e == 1 else f"{g}^{e}" for g, e in w.syllables()
    )


# ---------------------------------------------------------------------------
# letter-indexed access (used by the periodicity test)


def letter_prefix(w: Word, n: int) -> Word:
    """The first ``n`` letters of ``w`` as a word (0 <= n <= letters)."""
    if n < 0 or n > w.letter_count:
        raise ValueError(f"prefix length {n} out of range")
    out: list = []
    remaining = n
    for seg in w.segments:
        if remaining == 0:
            break
        avail = _seg_letter_count(seg)
        if avail <= remaining:
            _append_segment(out, seg)
            remaining -= avail
            continue
        if isinstance(seg, _Stair):
            for gname, exp in seg.syllables():
                take = min(abs(exp), remaining)
                if take:
                    _append_syllable(out, gname, take if exp > 0 else -take)
                remaining -= take
                if remaining == 0:
                    break
        else:
            gname, exp = seg
            _append_syllable(out, gname, remaining if exp > 0 else -remaining)
            remaining = 0
    return Word(tuple(out))


class _LetterCursor:
    """Reads a word as a stream of runs ``(gen, sign, run_length)``,
    starting from a given letter offset.  Staircase segments are consumed
    syllable-arithmetically, never expanded."""

    def __init__(self, w: Word, start: int = 0):
        self.syls = _SegmentSyllables(w)
        self.pos = 0  # index of current syllable
        self.offset = 0  # letters consumed inside current syllable
        self.skip(start)

    def exhausted(self) -> bool:
        return self.pos >= self.syls.count

    def current_run(self) -> tuple[str, int, int]:
        g, e = self.syls[self.pos]
        sign = 1 if e > 0 else -1
        return g, sign, abs(e) - self.offset

    def advance(self, k: int) -> None:
        while k > 0:
            g, e = self.syls[self.pos]
            room = abs(e) - self.offset
            if k < room:
                self.offset += k
                return
            k -= room
            self.pos += 1
            self.offset = 0

    def skip(self, k: int) -> None:
        self.advance(k)


class _SegmentSyllables:
    """Random access to the syllable sequence of a word, with staircase
    arithmetic instead of expansion."""

    def __init__(self, w: Word):
        self.segs = w.segments
        self.starts: list[int] = []
        acc = 0
        for seg in self.segs:
            self.starts.append(acc)
            acc += _seg_syllable_count(seg)
        self.count = acc

    def __getitem__(self, idx: int) -> Syllable:
        from bisect import bisect_right

        si = bisect_right(self.starts, idx) - 1
        seg = self.segs[si]
        local = idx - self.starts[si]
        if not isinstance(seg, _Stair):
            return seg
        step, phase = divmod(local, 2)
        if seg.inv:
            j = seg.hi - step
            return (seg.ygen, -j) if phase == 0 else (seg.xgen, -1)
        j = seg.lo + step
        return (seg.xgen, 1) if phase == 0 else (seg.ygen, j)


def has_letter_period(w: Word, d: int) -> bool:
    """True iff letter i equals letter i+d for all i < L-d.

    Cost is proportional to the number of syllable-run boundaries crossed,
    which for staircase words is O(#segments): misaligned staircases
    mismatch within a run or two.
    """
    L = w.letter_count
    if d <= 0 or d > L:
        raise ValueError(f"period {d} out of range")
    if d == L:
        return True
    a = _LetterCursor(w, 0)
    b = _LetterCursor(w, d)
    remaining = L - d
    while remaining > 0:
        ga, sa, ra = a.current_run()
        gb, sb, rb = b.current_run()
        if ga != gb or sa != sb:
            return False
        k = min(ra, rb, remaining)
        a.advance(k)
        b.advance(k)
        remaining -= k
    return True
