"""Dense exact matrices over Fractions with fraction-free elimination.

Kernel and rank go through integer Bareiss elimination after clearing row
denominators, which keeps intermediate entries as honest minors instead of
exploding gcd-free fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Rat = Fraction


class RationalMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence], cols: int | None = None):
        self.entries = [[Fraction(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else (cols or 0)
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("ragged rows")

    @staticmethod
    def zeros(rows: int, cols: int) -> "RationalMatrix":
        return RationalMatrix([[0] * cols for _ in range(rows)], cols=cols)

    @staticmethod
    def identity(n: int) -> "RationalMatrix":
        return RationalMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def diagonal(values: Sequence) -> "RationalMatrix":
        n = len(values)
        return RationalMatrix([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def column(values: Sequence) -> "RationalMatrix":
        return RationalMatrix([[v] for v in values])

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self) -> str:
        return f"RationalMatrix({self.entries!r})"

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_shape(other)
        return RationalMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
            cols=self.cols,
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_shape(other)
        return RationalMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
            cols=self.cols,
        )

    def __mul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} x {other.shape}")
            if self.cols == 0 or other.cols == 0 or self.rows == 0:
                return RationalMatrix.zeros(self.rows, other.cols)
            bt = list(zip(*other.entries))
            out = []
            for row in self.entries:
                out_row = []
                for col in bt:
                    acc = Fraction(0)
                    for a, b in zip(row, col):
                        if a and b:
                            acc += a * b
                    out_row.append(acc)
                out.append(out_row)
            return RationalMatrix(out)
        return self.scaled(other)

    def scaled(self, c) -> "RationalMatrix":
        c = Fraction(c)
        return RationalMatrix([[c * x for x in row] for row in self.entries], cols=self.cols)

    def __neg__(self) -> "RationalMatrix":
        return self.scaled(-1)

    def transpose(self) -> "RationalMatrix":
        if self.rows == 0 or self.cols == 0:
            return RationalMatrix.zeros(self.cols, self.rows)
        return RationalMatrix(list(zip(*self.entries)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def max_abs(self) -> Rat:
        worst = Fraction(0)
        for row in self.entries:
            for x in row:
                if abs(x) > worst:
                    worst = abs(x)
        return worst

    def power(self, k: int) -> "RationalMatrix":
        if self.rows != self.cols:
            raise ValueError("power of non-square matrix")
        acc = RationalMatrix.identity(self.rows)
        for _ in range(k):
            acc = acc * self
        return acc

    def _check_shape(self, other: "RationalMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")


def _integer_rows(m: RationalMatrix) -> list[list[int]]:
    out = []
    for row in m.entries:
        mult = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * mult) for x in row])
    return out


def _bareiss_echelon(a: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (matrix, pivot column list)."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    a = [row[:] for row in a]
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot_row = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            a[r], a[pivot_row] = a[pivot_row], a[r]
        for i in range(r + 1, rows):
            for j in range(cols):
                if j == c:
                    continue
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: RationalMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    _, pivots = _bareiss_echelon(_integer_rows(m))
    return len(pivots)


def kernel_basis(m: RationalMatrix) -> list[RationalMatrix]:
    """Exact basis of the right null space, as column vectors.

    One basis vector per free column, built by back substitution on the
    fraction-free echelon form; rank + len(result) == cols by construction.
    """
    cols = m.cols
    if cols == 0:
        return []
    if m.rows == 0:
        return [RationalMatrix.column([1 if j == k else 0 for j in range(cols)]) for k in range(cols)]
    ech, pivots = _bareiss_echelon(_integer_rows(m))
    pivot_set = set(pivots)
    free_cols = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * cols
        vec[free] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            acc = Fraction(0)
            for c in range(pc + 1, cols):
                if ech[r][c] and vec[c]:
                    acc += ech[r][c] * vec[c]
            vec[pc] = -acc / ech[r][pc]
        basis.append(RationalMatrix.column(vec))
    return basis
