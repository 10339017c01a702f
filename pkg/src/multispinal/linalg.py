"""Exact dense linear algebra over the rationals.

Rationals are :class:`fractions.Fraction`. No floating point is used here.
Pivoting is deterministic: the first nonzero entry in the current column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import NotSymmetric, Singular

Rational = Fraction


def to_rational(value) -> Fraction:
    """Fraction from int, Fraction or a ``"p/q"`` / ``"p"`` string. Floats are refused."""
    if isinstance(value, float):
        raise TypeError("floats are not accepted; use exact values")
    return Fraction(value)


@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise ValueError("matrix must be rectangular")

    @classmethod
    def of(cls, entries: Iterable[Iterable]) -> RationalMatrix:
        return cls(tuple(tuple(to_rational(v) for v in row) for row in entries))

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls.of([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(tuple(zip(*self.rows)))

    def is_symmetric(self) -> bool:
        return self.is_square and self.rows == self.transpose().rows

    def matvec(self, v: Sequence) -> list[Fraction]:
        return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.rows]

    def scale(self, c) -> RationalMatrix:
        c = to_rational(c)
        return RationalMatrix(tuple(tuple(c * a for a in row) for row in self.rows))

    def common_denominator(self) -> int:
        return lcm(*(a.denominator for row in self.rows for a in row))

    def integer_rows(self, scale: int) -> list[list[int]]:
        out = []
        for row in self.rows:
            ints = []
            for a in row:
                v = a * scale
                if v.denominator != 1:
                    raise ValueError("scale does not clear all denominators")
                ints.append(v.numerator)
            out.append(ints)
        return out


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant needs a square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        pivot = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot is None:
            return 0
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                row_i[j] = (akk * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1] if n else 1


def determinant(M: RationalMatrix) -> Fraction:
    if not M.is_square:
        raise ValueError("determinant needs a square matrix")
    s = M.common_denominator()
    return Fraction(bareiss_determinant(M.integer_rows(s)), s**M.nrows)


def solve(M: RationalMatrix, rhs: Sequence) -> list[Fraction]:
    """Exact solution of ``M x = rhs``; raises :class:`Singular` if ``M`` is singular."""
    if not M.is_square:
        raise ValueError("solve needs a square matrix")
    n = M.nrows
    rhs = [to_rational(v) for v in rhs]
    if len(rhs) != n:
        raise ValueError("right-hand side has the wrong length")
    aug = [list(row) + [b] for row, b in zip(M.rows, rhs)]
    for k in range(n):
        pivot = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if pivot is None:
            raise Singular("matrix is singular", column=k)
        aug[k], aug[pivot] = aug[pivot], aug[k]
        p = aug[k][k]
        aug[k] = [v / p for v in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[k])]
    x = [aug[i][n] for i in range(n)]
    if M.matvec(x) != rhs:
        raise AssertionError("nonzero residual in exact solve")
    return x


def _primitive_row(row: list[int]) -> list[int]:
    g = gcd(*row)
    return [v // g for v in row] if g > 1 else row


def rank(M: RationalMatrix) -> int:
    """Exact rank. Rows are scaled to primitive integer vectors (row scaling
    preserves rank) and eliminated with integer cross-multiplication."""
    rows = []
    for row in M.rows:
        s = lcm(*(a.denominator for a in row))
        rows.append(_primitive_row([(a * s).numerator for a in row]))
    r = 0
    for c in range(M.ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = _primitive_row([p * a - f * b for a, b in zip(rows[i], prow)])
        r += 1
        if r == len(rows):
            break
    return r


def shifted_charpoly(M: RationalMatrix) -> list[Fraction]:
    """Coefficients (constant term first) of ``det(t I + M)``.

    Evaluated at ``t = 0..n`` with integer Bareiss determinants, then
    interpolated exactly by Newton divided differences.
    """
    if not M.is_square:
        raise ValueError("characteristic polynomial needs a square matrix")
    n = M.nrows
    s = M.common_denominator()
    N = M.integer_rows(s)
    values = []
    for t in range(n + 1):
        shifted = [[N[i][j] + (t * s if i == j else 0) for j in range(n)] for i in range(n)]
        values.append(Fraction(bareiss_determinant(shifted), s**n))

    # Newton divided differences at nodes 0..n
    coef = list(values)
    for level in range(1, n + 1):
        for i in range(n, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / level
    # expand sum coef[k] * t (t-1) ... (t-k+1) into monomials (Horner form)
    poly = [coef[n]]
    for k in range(n - 1, -1, -1):
        # poly <- poly * (t - k) + coef[k]
        nxt = [Fraction(0)] * (len(poly) + 1)
        for d, c in enumerate(poly):
            nxt[d + 1] += c
            nxt[d] -= k * c
        nxt[0] += coef[k]
        poly = nxt
    if poly[n] != 1:
        raise AssertionError("det(tI + M) must be monic")
    return poly


def is_psd(M: RationalMatrix) -> bool:
    """Exact positive-semidefiniteness test for a symmetric rational matrix.

    ``det(tI + M) = prod(t + eigenvalue)`` is real-rooted for symmetric ``M``;
    all eigenvalues are ``>= 0`` exactly when every coefficient is ``>= 0``.
    """
    if not M.is_symmetric():
        raise NotSymmetric("is_psd needs a symmetric matrix")
    return all(c >= 0 for c in shifted_charpoly(M))
