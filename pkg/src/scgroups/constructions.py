"""Explicit presentation builders.

Every builder here has an exact relator-count contract and emits its
relators in a fixed, documented order, so serialized output is
byte-identical across runs.  Relator lists are never deduplicated or
simplified: downstream counting arguments rely on exact cardinalities.

The heavy relator families are staircase products ``x y^a x y^(a+1)
... x y^b``; these are built in O(1) through the compressed word
representation, so paper-scale parameters (m in the millions, padding
lengths in the hundreds of millions of syllables) construct instantly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterable, Mapping, Sequence

from .errors import ConstructionError, PresentationError
from .presentations import Presentation
from .words import (
    EMPTY,
    GenMap,
    Word,
    commutator,
    format_word,
    gen,
    parse_word,
    staircase,
    substitute1,
)

_MIN_M = 163  # below this the staircase exponent ranges collide


@dataclass(frozen=True)
class RipsParams:
    """Numeric skeleton of the small-cancellation thickening.

    ``m`` defaults to 3^8 * p!; ``lambda_pad`` to 100 * m * r * (total
    relator letter length), which is 0 for relator-free input.  The
    conjugation-tail offsets are ``k(d, i) = 7m(4i + d - 4)``.
    """

    p: int
    m: int
    lambda_pad: int

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ConstructionError(f"p must be positive, got {self.p}")
        if self.m < _MIN_M:
            raise ConstructionError(
                f"m = {self.m} < {_MIN_M}: padding exponent ranges would "
                "overlap the fixed base relators"
            )
        if self.lambda_pad < 0:
            raise ConstructionError("lambda_pad must be nonnegative")

    @classmethod
    def for_input(
        cls, w: Presentation, p: int = 1, m_override: int | None = None
    ) -> "RipsParams":
        if p < 1:
            raise ConstructionError(f"p must be positive, got {p}")
        m = 3**8 * factorial(p) if m_override is None else m_override
        total = sum(rel.letter_count for rel in w.relators)
        lam = 100 * m * len(w.generators) * total
        return cls(p, m, lam)

    def k(self, d: int, i: int) -> int:
        if not 1 <= d <= 4 or i < 1:
            raise ConstructionError(f"k(d={d}, i={i}) out of range")
        return 7 * self.m * (4 * i + d - 4)


def rips(
    w: Presentation,
    params: RipsParams | None = None,
    *,
    p: int = 1,
    m_override: int | None = None,
) -> tuple[Presentation, GenMap]:
    """Small-cancellation thickening of a finite presentation.

    Adds two fresh generators x, y and emits, in order: the five base
    staircase relators, one padded relator per input relator, and four
    conjugation relators per input generator.  Output size is exactly
    ``|relators| + 4*|generators| + 5`` relators on ``|generators| + 2``
    generators.  The returned map sends each input generator to itself
    and kills x and y; it realises the quotient back onto ``w``.
    """
    if params is None:
        params = RipsParams.for_input(w, p=p, m_override=m_override)
    if "x" in w.generators or "y" in w.generators:
        raise ConstructionError(
            "input presentation may not use the reserved names x, y"
        )
    m, lam = params.m, params.lambda_pad
    relators: list[Word] = [
        staircase("x", "y", 1, 81),
        staircase("x", "y", 82, 162),
        staircase("x", "y", m, 2 * m + 1),
        staircase("x", "y", 3 * m, 4 * m + 2),
        staircase("x", "y", 5 * m, 6 * m + 3),
    ]
    for j, rel in enumerate(w.relators, start=1):
        relators.append(rel * staircase("x", "y", lam * j + 1, lam * j + lam))
    for i, g in enumerate(w.generators, start=1):
        for d in range(1, 5):
            eps = 1 if d in (1, 2) else -1
            z = "x" if d in (1, 3) else "y"
            head = gen(g, eps) * gen(z) * gen(g, -eps)
            k = params.k(d, i)
            relators.append(head * staircase("x", "y", k + 1, k + 7 * m))
    gens = w.generators + ("x", "y")
    projection = GenMap.plain(
        {g: gen(g) for g in w.generators} | {"x": EMPTY, "y": EMPTY}
    )
    return Presentation(gens, tuple(relators)), projection


def theta(n: int) -> Presentation:
    """Two-generator staircase family: three relators for each stage
    k = 5..n, hence 3(n-4) relators total."""
    if n < 5:
        raise ConstructionError(f"theta requires n >= 5, got {n}")
    relators: list[Word] = []
    for k in range(5, n + 1):
        f = factorial(k)
        relators.append(staircase("x", "y", f + 1, 2 * f))
        relators.append(staircase("x", "y", 2 * f + 1, 3 * f - 1))
        relators.append(staircase("x", "y", 3 * f + 1, 4 * f + 1))
    return Presentation(("x", "y"), tuple(relators))


# ---------------------------------------------------------------------------
# the two-generator word-problem gadget


def miller_words(count: int) -> tuple[Word, Word, Word, list[Word]]:
    """The fixed words a, c, b0 and the sequence b_1..b_count over {x, y}
    used by the gadget."""
    x = gen("x")
    y = gen("y")
    bracket = commutator(y, x)
    a = y.inverse() * x * bracket
    c = x * bracket
    b0 = (
        a**-2 * x**-2 * a * x * a**2 * c**-2 * x.inverse() * c.inverse() * x * c**2
    )
    bs = [commutator(a ** (3 + i) * c ** (-3 - i), x) for i in range(1, count + 1)]
    return a, c, b0, bs


def miller_sigma(seed: Presentation, w: Word) -> list[Word]:
    """Relator set over {x, y} whose group is trivial exactly when ``w``
    lies in the normal closure of the seed's relators.

    For a seed on s generators with m relators the output is the m + 2
    words ``b0``, the relators rewritten in ``b_1..b_s``, and the closing
    word ``[w(b), x] a^3 c^-3 x^-1 c^3 a^-3``, in that order.
    """
    extra = w.generators() - set(seed.generators)
    if extra:
        raise ConstructionError(
            f"word uses generator(s) {sorted(extra)} outside the seed alphabet"
        )
    s = len(seed.generators)
    a, c, b0, bs = miller_words(s)
    x = gen("x")
    images = GenMap.plain(dict(zip(seed.generators, bs)))
    a3c3 = a**3 * c**-3 * x.inverse() * c**3 * a**-3
    out = [b0]
    out.extend(substitute1(omega, images) for omega in seed.relators)
    out.append(commutator(substitute1(w, images), x) * a3c3)
    return out


def miller_presentation(seed: Presentation, w: Word) -> Presentation:
    return Presentation(("x", "y"), tuple(miller_sigma(seed, w)))


# ---------------------------------------------------------------------------
# commuting-copies gadget


def _level_names(k: int, count: int) -> list[list[str]]:
    return [[f"y{s}_{j}" for j in range(1, count + 1)] for s in range(1, k + 1)]


def w_sigma_k(Q: Presentation, sigma: Sequence[Word], k: int) -> Presentation:
    """Presentation with k commuting shifted copies of a word family.

    Generators: Q's generators plus ``y<s>_<j>`` for level s = 1..k and
    word index j.  Relators, in order: Q's relators; for each level s all
    ordered pairs ``[sigma_j^-1 y<s>_j, y<s>_j']``; for each level pair
    s < t all ordered pairs ``[y<s>_j, y<t>_j']``.  Total count is
    ``|R| + ((k^2 + k) / 2) |sigma|^2``.
    """
    if k < 1:
        raise ConstructionError(f"k must be >= 1, got {k}")
    if not sigma:
        raise ConstructionError("sigma must be nonempty")
    qgens = set(Q.generators)
    for idx, word_ in enumerate(sigma, 1):
        extra = word_.generators() - qgens
        if extra:
            raise ConstructionError(
                f"sigma word {idx} uses undeclared generator(s) {sorted(extra)}"
            )
    levels = _level_names(k, len(sigma))
    flat = [name for level in levels for name in level]
    clash = set(flat) & qgens
    if clash:
        raise ConstructionError(f"generator name collision: {sorted(clash)}")
    relators: list[Word] = list(Q.relators)
    for s in range(k):
        for j, sig in enumerate(sigma):
            ys = gen(levels[s][j])
            for j2 in range(len(sigma)):
                relators.append(commutator(sig.inverse() * ys, gen(levels[s][j2])))
    for s in range(k):
        for t in range(s + 1, k):
            for j in range(len(sigma)):
                for j2 in range(len(sigma)):
                    relators.append(
                        commutator(gen(levels[s][j]), gen(levels[t][j2]))
                    )
    return Presentation(Q.generators + tuple(flat), tuple(relators))


def w_sigma_k_projection(Q: Presentation, sigma: Sequence[Word], k: int) -> GenMap:
    """The canonical map into the (k+1)-fold direct power of the quotient
    of Q: generators go to the diagonal, ``y<s>_<j>`` to the s-th shifted
    copy of the j-th word."""
    levels = _level_names(k, len(sigma))
    assignments: dict[str, tuple[Word, ...]] = {}
    for g in Q.generators:
        assignments[g] = tuple(gen(g) for _ in range(k + 1))
    for s in range(k):
        for j, sig in enumerate(sigma):
            images = [EMPTY] * (k + 1)
            images[s + 1] = sig
            assignments[levels[s][j]] = tuple(images)
    return GenMap(assignments)


def sigma_prime_words(
    seed: Presentation,
    w: Word,
    a_bar: Word,
    b_bar: Word,
    rprime: Sequence[Word] = (),
) -> list[Word]:
    """Gadget words pushed through x -> a_bar, y -> b_bar and prefixed
    with the extra relator list, preserving order and multiplicity."""
    images = GenMap.plain({"x": a_bar, "y": b_bar})
    pushed = [substitute1(sw, images) for sw in miller_sigma(seed, w)]
    return list(rprime) + pushed


def gamma_for_word(
    Q: Presentation,
    rprime: Sequence[Word],
    a_bar: Word,
    b_bar: Word,
    seed: Presentation,
    w: Word,
    k: int,
    *,
    p: int = 1,
    m_override: int | None = None,
) -> Presentation:
    """Full chain: gadget words for ``w``, pushed into Q's alphabet,
    wrapped in k commuting copies, then thickened.

    Relator count is ``5 + |R| + 4r + 4k|sigma'| + ((k^2+k)/2)|sigma'|^2``
    with r = rank of Q; it does not depend on ``w``.
    """
    sigma_prime = sigma_prime_words(seed, w, a_bar, b_bar, rprime)
    wsk = w_sigma_k(Q, sigma_prime, k)
    gamma, _ = rips(wsk, p=p, m_override=m_override)
    return gamma


# ---------------------------------------------------------------------------
# doubled-alphabet fiber gadget


def _xnames(count: int) -> list[str]:
    return [f"x{i}" for i in range(1, count + 1)]


def tilde(w: Word, r: int) -> Word:
    """``w(x_1..x_r) * w(x_(r+1)..x_(2r))^-1`` over the doubled alphabet."""
    if r < 0:
        raise ConstructionError("rank must be nonnegative")
    allowed = set(_xnames(r))
    extra = w.generators() - allowed
    if extra:
        raise ConstructionError(
            f"word uses generator(s) {sorted(extra)} outside x1..x{r}"
        )
    shift = GenMap.plain({f"x{i}": gen(f"x{i + r}") for i in range(1, r + 1)})
    return w * substitute1(w, shift).inverse()


@dataclass(frozen=True)
class FiberInput:
    """Data describing a short exact sequence presentation over a doubled
    rank-r alphabet with k kernel generators: relator families A (pure
    kernel words), B (conjugation images, indexed by generator i = 1..2r,
    kernel index l = 1..k, sign eps) and V (mixed words)."""

    r: int
    k: int
    a_words: tuple[Word, ...]
    b_words: Mapping[tuple[int, int, int], Word]
    v_words: tuple[Word, ...]

    def __post_init__(self) -> None:
        if self.r < 1 or self.k < 1:
            raise ConstructionError("fiber input needs r >= 1 and k >= 1")
        ynames = {f"y{j}" for j in range(1, self.k + 1)}
        for label, words in (("A", self.a_words), ("B", self.b_words.values())):
            for word_ in words:
                extra = word_.generators() - ynames
                if extra:
                    raise ConstructionError(
                        f"{label} word uses non-kernel generator(s) {sorted(extra)}"
                    )
        full = ynames | set(_xnames(2 * self.r))
        for word_ in self.v_words:
            extra = word_.generators() - full
            if extra:
                raise ConstructionError(
                    f"V word uses undeclared generator(s) {sorted(extra)}"
                )
        expected = {
            (i, l, e)
            for i in range(1, 2 * self.r + 1)
            for l in range(1, self.k + 1)
            for e in (1, -1)
        }
        if set(self.b_words) != expected:
            missing = sorted(expected - set(self.b_words))
            surplus = sorted(set(self.b_words) - expected)
            raise ConstructionError(
                f"incomplete B table: missing {missing[:4]}, surplus {surplus[:4]}"
            )


def fiber_gadget(fi: FiberInput, w: Word) -> Presentation:
    """Presentation G_w on ``2r + 2k + 1`` generators whose maps onto the
    associated fiber product exist exactly when ``w`` dies in the base
    group.  Relator count: ``1 + 2k + k^2 + 8rk + 2|A| + |V|``."""
    r, k = fi.r, fi.k
    allowed = set(_xnames(r))
    extra = w.generators() - allowed
    if extra:
        raise ConstructionError(
            f"word uses generator(s) {sorted(extra)} beyond x1..x{r}"
        )
    wt = tilde(w, r)
    t = gen("t")
    yl = [gen(f"yL{j}") for j in range(1, k + 1)]
    yr = [gen(f"yR{j}") for j in range(1, k + 1)]
    to_l = GenMap.plain({f"y{j}": yl[j - 1] for j in range(1, k + 1)})
    to_r = GenMap.plain({f"y{j}": yr[j - 1] for j in range(1, k + 1)})
    relators: list[Word] = [commutator(wt * t, t)]
    relators.extend(commutator(t, yl[m]) for m in range(k))
    relators.extend(commutator(wt * t, yr[m]) for m in range(k))
    for a in range(k):
        for b in range(k):
            relators.append(commutator(yr[a], yl[b]))
    for copy_map, ys in ((to_l, yl), (to_r, yr)):
        for i in range(1, 2 * r + 1):
            xi = gen(f"x{i}")
            for l in range(1, k + 1):
                for eps in (1, -1):
                    body = substitute1(fi.b_words[(i, l, eps)], copy_map)
                    relators.append(
                        gen(f"x{i}", eps) * ys[l - 1] * gen(f"x{i}", -eps) * body
                    )
    for a_word in fi.a_words:
        relators.append(substitute1(a_word, to_l))
        relators.append(substitute1(a_word, to_r))
    mixed = GenMap.plain(
        {f"x{i}": gen(f"x{i}") for i in range(1, 2 * r + 1)}
        | {f"y{j}": yl[j - 1] * yr[j - 1] for j in range(1, k + 1)}
    )
    relators.extend(substitute1(v, mixed) for v in fi.v_words)
    gens = (
        tuple(_xnames(2 * r))
        + tuple(f"yL{j}" for j in range(1, k + 1))
        + tuple(f"yR{j}" for j in range(1, k + 1))
        + ("t",)
    )
    return Presentation(gens, tuple(relators))


# ---------------------------------------------------------------------------
# fiber input file format: the presentation gens: line (x1..x2r then
# y1..yk), then one line per word: "A: <word>", "B <i> <l> <eps>: <word>",
# "V: <word>".  '#' comments allowed.


def parse_fiber_input(text: str) -> FiberInput:
    gens: list[str] | None = None
    a_words: list[Word] = []
    b_words: dict[tuple[int, int, int], Word] = {}
    v_words: list[Word] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("gens:"):
            if gens is not None:
                raise PresentationError(f"line {lineno}: second gens: line")
            gens = line[len("gens:") :].split()
        elif line.startswith("A:"):
            a_words.append(parse_word(line[2:].strip()))
        elif line.startswith("B"):
            head, _, body = line.partition(":")
            parts = head.split()
            if len(parts) != 4:
                raise PresentationError(f"line {lineno}: malformed B line")
            key = (int(parts[1]), int(parts[2]), int(parts[3]))
            if key in b_words:
                raise PresentationError(f"line {lineno}: duplicate B entry {key}")
            b_words[key] = parse_word(body.strip())
        elif line.startswith("V:"):
            v_words.append(parse_word(line[2:].strip()))
        else:
            raise PresentationError(f"line {lineno}: unrecognized line {line!r}")
    if gens is None:
        raise PresentationError("missing gens: line")
    xs = [g for g in gens if g.startswith("x")]
    ys = [g for g in gens if g.startswith("y")]
    if gens != xs + ys or len(xs) % 2 or not xs or not ys:
        raise PresentationError(
            "gens: must list x1..x2r followed by y1..yk"
        )
    r, k = len(xs) // 2, len(ys)
    if xs != _xnames(2 * r) or ys != [f"y{j}" for j in range(1, k + 1)]:
        raise PresentationError("gens: names must be exactly x1..x2r y1..yk")
    return FiberInput(r, k, tuple(a_words), b_words, tuple(v_words))


def serialize_fiber_input(fi: FiberInput) -> str:
    lines = [
        "gens: "
        + " ".join(_xnames(2 * fi.r) + [f"y{j}" for j in range(1, fi.k + 1)])
    ]
    lines.extend(f"A: {format_word(w)}" for w in fi.a_words)
    for i in range(1, 2 * fi.r + 1):
        for l in range(1, fi.k + 1):
            for eps in (1, -1):
                lines.append(f"B {i} {l} {eps}: {format_word(fi.b_words[(i, l, eps)])}")
    lines.extend(f"V: {format_word(w)}" for w in fi.v_words)
    return "\n".join(lines) + "\n"
