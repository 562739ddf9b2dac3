"""Independent brute-force oracles used to cross-check the main code paths.

Everything here works on fully expanded letter sequences and stays
deliberately naive; these functions are the second route of every
dual-route check in the test suite.
"""

from __future__ import annotations

from itertools import combinations
from math import gcd

Letter = tuple[str, int]  # (generator, +1 or -1)


def expand(pairs) -> list[Letter]:
    """Expand (gen, exp) pairs to single letters without any reduction."""
    out: list[Letter] = []
    for g, e in pairs:
        sign = 1 if e > 0 else -1
        out.extend((g, sign) for _ in range(abs(e)))
    return out


def naive_reduce(letters) -> list[Letter]:
    """Stack-based free reduction on single letters."""
    stack: list[Letter] = []
    for g, s in letters:
        if stack and stack[-1][0] == g and stack[-1][1] == -s:
            stack.pop()
        else:
            stack.append((g, s))
    return stack


def letters_to_pairs(letters) -> list[tuple[str, int]]:
    """Re-encode a letter list as RLE syllable pairs."""
    pairs: list[tuple[str, int]] = []
    for g, s in letters:
        if pairs and pairs[-1][0] == g:
            pairs[-1] = (g, pairs[-1][1] + s)
            if pairs[-1][1] == 0:
                pairs.pop()
        else:
            pairs.append((g, s))
    return pairs


def invert_letters(letters) -> list[Letter]:
    return [(g, -s) for g, s in reversed(letters)]


def cyclic_reduce_letters(letters) -> list[Letter]:
    out = naive_reduce(letters)
    while len(out) >= 2 and out[0][0] == out[-1][0] and out[0][1] == -out[-1][1]:
        out = out[1:-1]
    return out


def rotations(letters) -> list[tuple[Letter, ...]]:
    n = len(letters)
    return [tuple(letters[i:] + letters[:i]) for i in range(n)]


def proper_power_exponent(letters) -> int:
    """Largest k with letters = root^k (1 if primitive)."""
    n = len(letters)
    if n == 0:
        raise ValueError("empty word")
    best = 1
    for d in range(1, n):
        if n % d:
            continue
        if all(letters[i] == letters[i % d] for i in range(n)):
            best = n // d
            break
    return best


def symmetrized_words(relator_letter_lists) -> set[tuple[Letter, ...]]:
    """All distinct cyclic permutations of each relator and its inverse."""
    out: set[tuple[Letter, ...]] = set()
    for letters in relator_letter_lists:
        cyc = cyclic_reduce_letters(list(letters))
        out.update(rotations(cyc))
        out.update(rotations(invert_letters(cyc)))
    return out


def piece_arcs(relator_letter_lists) -> dict[tuple[Letter, ...], set]:
    """Map each cyclic subword to its set of occurrence arcs.

    An arc is (relator index, inverted?, cyclic offset); a full-length
    occurrence is recorded once per (relator, orientation) since every
    rotation covers the same letters.
    """
    occs: dict[tuple[Letter, ...], set] = {}
    for i, letters in enumerate(relator_letter_lists):
        cyc = cyclic_reduce_letters(list(letters))
        L = len(cyc)
        for inverted, arr in ((False, cyc), (True, invert_letters(cyc))):
            doubled = arr + arr
            for c in range(L):
                for ell in range(1, L + 1):
                    p = tuple(doubled[c : c + ell])
                    arc = (i, inverted, 0 if ell == L else c)
                    occs.setdefault(p, set()).add(arc)
    return occs


def max_piece_lengths_bruteforce(relator_letter_lists) -> list[int]:
    """Per-relator maximum piece length, from the arc enumeration."""
    occs = piece_arcs(relator_letter_lists)
    n = len(relator_letter_lists)
    best = [0] * n
    for p, arcs in occs.items():
        if len(arcs) < 2:
            continue
        for (i, _, _) in arcs:
            best[i] = max(best[i], len(p))
    return best


def pieces_bruteforce(relator_letter_lists) -> set[tuple[Letter, ...]]:
    occs = piece_arcs(relator_letter_lists)
    return {p for p, arcs in occs.items() if len(arcs) >= 2}


def snf_bruteforce(rows: list[list[int]]) -> list[int]:
    """Naive Smith normal form: repeated gcd sweeps at position (0, 0),
    no pivot strategy, recursion on the minor."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return []
    nr, nc = len(m), len(m[0])
    if all(m[i][j] == 0 for i in range(nr) for j in range(nc)):
        return []
    # move some nonzero entry to (0, 0)
    i0, j0 = next(
        (i, j) for i in range(nr) for j in range(nc) if m[i][j] != 0
    )
    m[0], m[i0] = m[i0], m[0]
    for r in m:
        r[0], r[j0] = r[j0], r[0]
    changed = True
    while changed:
        changed = False
        for i in range(1, nr):
            while m[i][0]:
                q = m[0][0] // m[i][0] if m[i][0] else 0
                if m[i][0] and abs(m[0][0]) >= abs(m[i][0]):
                    for j in range(nc):
                        m[0][j] -= q * m[i][j]
                m[0], m[i] = m[i], m[0]
                changed = True
        for j in range(1, nc):
            while m[0][j]:
                q = m[0][0] // m[0][j] if m[0][j] else 0
                if m[0][j] and abs(m[0][0]) >= abs(m[0][j]):
                    for r in m:
                        r[0] -= q * r[j]
                for r in m:
                    r[0], r[j] = r[j], r[0]
                changed = True
    d = abs(m[0][0])
    # entry must divide the rest; fix up if not
    for i in range(1, nr):
        for j in range(1, nc):
            if m[i][j] % d:
                for jj in range(nc):
                    m[0][jj] += m[i][jj]
                return snf_bruteforce(m)
    rest = snf_bruteforce([r[1:] for r in m[1:]])
    return [d] + rest


def minors_gcd(rows: list[list[int]], k: int) -> int:
    """gcd of all k x k minors (0 if none are nonzero)."""
    nr, nc = len(rows), len(rows[0]) if rows else 0
    g = 0
    for ri in combinations(range(nr), k):
        for ci in combinations(range(nc), k):
            sub = [[rows[i][j] for j in ci] for i in ri]
            g = gcd(g, determinant(sub))
    return g


def determinant(m: list[list[int]]) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    det = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        det += (-1) ** j * m[0][j] * determinant(minor)
    return det
