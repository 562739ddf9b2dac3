"""Smith normal form over the integers, exact arithmetic throughout.

Pivot strategy: the entry of smallest nonzero absolute value in the
remaining block, followed by row/column gcd reduction.  This keeps entry
growth tame on the sparse exponent-sum matrices this package produces.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for r in self.entries:
            if len(r) != self.cols:
                raise ValueError("ragged matrix")

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        entries = tuple(tuple(int(x) for x in r) for r in rows)
        ncols = len(entries[0]) if entries else 0
        return cls(len(entries), ncols, entries)


def smith_normal_form(matrix) -> list[int]:
    """Nonzero diagonal invariants d_1 | d_2 | ... of an integer matrix.

    Accepts an IntMatrix or any sequence of rows.  The returned list has
    one positive entry per unit of rank; each divides the next.
    """
    if isinstance(matrix, IntMatrix):
        m = [list(r) for r in matrix.entries]
    else:
        m = [list(r) for r in matrix]
    if not m or not m[0]:
        return []
    nr, nc = len(m), len(m[0])
    divisors: list[int] = []
    top = 0
    while top < nr and top < nc:
        pivot = _smallest_nonzero(m, top)
        if pivot is None:
            break
        pi, pj = pivot
        m[top], m[pi] = m[pi], m[top]
        for row in m:
            row[top], row[pj] = row[pj], row[top]
        while True:
            # clear the pivot column
            dirty = False
            for i in range(top + 1, nr):
                if m[i][top]:
                    q = m[i][top] // m[top][top]
                    for j in range(top, nc):
                        m[i][j] -= q * m[top][j]
                    if m[i][top]:
                        m[top], m[i] = m[i], m[top]
                        dirty = True
            if dirty:
                continue
            # clear the pivot row
            for j in range(top + 1, nc):
                if m[top][j]:
                    q = m[top][j] // m[top][top]
                    for i in range(top, nr):
                        m[i][j] -= q * m[i][top]
                    if m[top][j]:
                        for row in m:
                            row[top], row[j] = row[j], row[top]
                        dirty = True
            if not dirty:
                break
        divisors.append(abs(m[top][top]))
        top += 1
    # enforce the divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(len(divisors) - 1):
            a, b = divisors[i], divisors[i + 1]
            if b % a:
                g = _gcd(a, b)
                divisors[i], divisors[i + 1] = g, a * b // g
                changed = True
    return divisors


def _smallest_nonzero(m, top):
    best = None
    best_val = None
    for i in range(top, len(m)):
        for j in range(top, len(m[0])):
            v = abs(m[i][j])
            if v and (best_val is None or v < best_val):
                best, best_val = (i, j), v
                if v == 1:
                    return best
    return best


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)
