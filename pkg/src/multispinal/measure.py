"""Fixed-point measures psi(g) = mu(Fix g) and the KMS-state values built on them.

For an A-agent, ``a(xw) = x · Psi(x)(a)(w)`` gives
``Fix(a) = ⋃_x x · Fix(Psi(x)(a))``, so with the uniform Bernoulli measure

    psi(a) = (1/|X|) * ( sum_{x ∉ Y} psi(Psi(x)(a)) + #{y ∈ Y : Psi(y)(a) = 1_B} ),

using ``psi(1) = 1`` and ``psi(b) = 0`` for ``b ∈ B \\ {1}`` (a free action fixes
no letter). The unknowns are indexed by ``A \\ {1}``; the system ``(I - T) psi = r``
has ``T``-row sums ``(|X| - |Y|)/|X| < 1``, so it is uniquely solvable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import engine, linalg
from .engine import Agent, Side
from .errors import InternalDefect, InternalSingular, Singular, UnknownAgent
from .linalg import RationalMatrix
from .model import MultispinalInstance


@dataclass(frozen=True)
class PsiTable:
    values: tuple[Fraction, ...]  # indexed by A's element index
    unknowns: tuple[int, ...]  # A-indices of the system's unknowns, in order
    system: RationalMatrix | None  # None when A is trivial
    rhs: tuple[Fraction, ...]

    def __getitem__(self, a: int) -> Fraction:
        return self.values[a]


def _defining_system(instance: MultispinalInstance) -> tuple[tuple[int, ...], RationalMatrix, list[Fraction]]:
    A = instance.A
    n = len(instance.X)
    unknowns = tuple(i for i in range(A.order) if i != A.identity)
    pos = {a: k for k, a in enumerate(unknowns)}
    rows, rhs = [], []
    for a in unknowns:
        row = [Fraction(0)] * len(unknowns)
        row[pos[a]] += 1
        const = Fraction(0)
        for x, h in enumerate(instance.psi):
            image = h(a)
            if x in instance.Y:
                if image == instance.B.identity:
                    const += Fraction(1, n)
            elif image == A.identity:
                const += Fraction(1, n)
            else:
                row[pos[image]] -= Fraction(1, n)
        rows.append(row)
        rhs.append(const)
    return unknowns, RationalMatrix.of(rows), rhs


def solve_psi(instance: MultispinalInstance) -> PsiTable:
    A = instance.A
    values = [Fraction(0)] * A.order
    values[A.identity] = Fraction(1)
    if A.order == 1:
        return PsiTable(tuple(values), (), None, ())

    unknowns, system, rhs = _defining_system(instance)
    for i, row in enumerate(system.rows):
        off = sum(abs(v) for j, v in enumerate(row) if j != i)
        if not abs(row[i]) > off:
            raise InternalDefect("psi system is not strictly diagonally dominant", row=i)
    try:
        solution = linalg.solve(system, rhs)
    except Singular as exc:
        raise InternalSingular("psi system is singular", **exc.witness) from exc
    for a, v in zip(unknowns, solution):
        values[a] = v
    if not all(0 <= v <= 1 for v in values):
        raise InternalDefect("psi value outside [0, 1]")
    return PsiTable(tuple(values), unknowns, system, tuple(rhs))


def psi_value(instance: MultispinalInstance, table: PsiTable, g: Agent) -> Fraction:
    if g.is_identity:
        return Fraction(1)
    if g.side is Side.PERM:
        if not 0 <= g.element < instance.B.order:
            raise UnknownAgent("no such B element", agent=g)
        return Fraction(0)
    if not 0 <= g.element < len(table.values):
        raise UnknownAgent("no such A element", agent=g)
    return table[g.element]


def kms_value(
    instance: MultispinalInstance,
    table: PsiTable,
    u: Sequence[int],
    g: Agent,
    v: Sequence[int],
) -> Fraction:
    """Value of the KMS state on ``S_u g S_v*``: zero unless ``u = v``, else ``|X|^-|u| psi(g)``."""
    if tuple(u) != tuple(v):
        return Fraction(0)
    return Fraction(1, len(instance.X) ** len(u)) * psi_value(instance, table, g)


@dataclass(frozen=True)
class TruncationCheck:
    depth: int
    count: int
    ratio: Fraction
    psi: Fraction
    gap: Fraction


def truncation_check(instance: MultispinalInstance, table: PsiTable, g: Agent, depth: int) -> TruncationCheck:
    """Compare the depth-``n`` fixed-word ratio with psi(g).

    Asserts the gap is nonnegative and no larger than at depth ``n - 1``.
    """
    count = engine.fixed_count(instance, g, depth)
    ratio = Fraction(count, len(instance.X) ** depth)
    psi = psi_value(instance, table, g)
    gap = ratio - psi
    if gap < 0:
        raise InternalDefect("truncated fixed-word ratio fell below psi", agent=g, depth=depth)
    if depth > 0:
        prev = Fraction(engine.fixed_count(instance, g, depth - 1), len(instance.X) ** (depth - 1))
        if prev - psi < gap:
            raise InternalDefect("truncation gap increased", agent=g, depth=depth)
    return TruncationCheck(depth, count, ratio, psi, gap)
