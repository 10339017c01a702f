"""Simplicity analysis: the psi-Gram matrix criterion and the kernel cross-check."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import engine, linalg, measure, model
from .engine import Agent, Side
from .errors import CriteriaDisagreement, InternalDefect
from .linalg import RationalMatrix
from .measure import PsiTable
from .model import Amenability, MultispinalInstance

SIMPLE = "Simple"
NOT_SIMPLE = "NotSimple"
CONDITIONAL_SIMPLE = "ConditionalOnAmenability-Simple"
CONDITIONAL_NOT_SIMPLE = "ConditionalOnAmenability-NotSimple"


def gram_matrix(instance: MultispinalInstance, table: PsiTable) -> RationalMatrix:
    """``[psi(a_i^-1 a_j)]`` in the declared element order of A."""
    A = instance.A
    rows = [[table[A.mul(A.inv(i), j)] for j in range(A.order)] for i in range(A.order)]
    M = RationalMatrix.of(rows)
    if not M.is_symmetric() or any(M[i, i] != 1 for i in range(A.order)):
        raise InternalDefect("Gram matrix must be symmetric with unit diagonal")
    return M


def scaled_integer_form(M: RationalMatrix) -> tuple[int, list[list[int]]]:
    scale = M.common_denominator()
    return scale, M.integer_rows(scale)


def matrix_criterion(instance: MultispinalInstance, table: PsiTable) -> bool:
    return linalg.determinant(gram_matrix(instance, table)) != 0


def kernel_matrix(instance: MultispinalInstance) -> RationalMatrix:
    """Vertical stack of the 0/1 matrices of the linear extensions of every
    ``λ ∈ B·A``: column ``a`` of a block has its single 1 in row ``λ(a)``."""
    rows = []
    for lam in model.closure_BA(instance):
        for b in range(instance.B.order):
            rows.append([int(lam(a) == b) for a in range(instance.A.order)])
    return RationalMatrix.of(rows)


def kernel_criterion(instance: MultispinalInstance) -> bool:
    """Whether the kernels of the group-algebra maps of ``B·A`` meet only in 0."""
    return linalg.rank(kernel_matrix(instance)) == instance.A.order


@dataclass(frozen=True)
class AnalysisOptions:
    truncation_depth: int | None = 12
    witness_period: int | None = 3
    witness_preperiod: int = 4
    timing: bool = False


@dataclass(frozen=True)
class WitnessInfo:
    agent: str
    period: str
    escape: str
    phases: tuple[str, ...]


@dataclass(frozen=True)
class TruncationRow:
    agent: str
    depth: int
    count: int
    ratio: Fraction
    psi: Fraction
    gap: Fraction


@dataclass(frozen=True)
class AnalysisReport:
    A_order: int
    B_order: int
    alphabet: tuple[str, ...]
    Y: tuple[str, ...]
    transitive: bool
    BA_size: int
    nucleus: tuple[str, ...]
    A_elements: tuple[str, ...]
    psi: tuple[Fraction, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    scale: int
    scaled_matrix: tuple[tuple[int, ...], ...]
    determinant: Fraction
    scaled_determinant: int
    gram_psd: bool
    kernel_rank: int
    matrix_criterion: bool
    kernel_criterion: bool
    criteria_agree: bool
    amenability: str
    verdict: str
    kirchberg: bool
    witness: WitnessInfo | None
    truncation: tuple[TruncationRow, ...] | None
    options: AnalysisOptions
    timing: tuple[tuple[str, float], ...] | None = field(default=None)

    @property
    def nucleus_size(self) -> int:
        return len(self.nucleus)


def agent_name(instance: MultispinalInstance, g: Agent) -> str:
    """Report label: ``id`` for the identity, else ``A:<label>`` or ``B:<label>``."""
    if g.is_identity:
        return "id"
    side = "A" if g.side is Side.AUT else "B"
    return f"{side}:{instance.agent_label(g)}"


def verdict_for(simple: bool, amenability: Amenability) -> str:
    if amenability is Amenability.ESTABLISHED:
        return SIMPLE if simple else NOT_SIMPLE
    return CONDITIONAL_SIMPLE if simple else CONDITIONAL_NOT_SIMPLE


def analyze(instance: MultispinalInstance, options: AnalysisOptions | None = None) -> AnalysisReport:
    options = options or AnalysisOptions()
    timings: list[tuple[str, float]] = []
    clock = time.perf_counter()

    def lap(name: str) -> None:
        nonlocal clock
        now = time.perf_counter()
        timings.append((name, now - clock))
        clock = now

    table = measure.solve_psi(instance)
    lap("solve_psi")
    gram = gram_matrix(instance, table)
    scale, scaled = scaled_integer_form(gram)
    scaled_det = linalg.bareiss_determinant(scaled)
    det = Fraction(scaled_det, scale**instance.A.order)
    if det != linalg.determinant(gram):
        raise InternalDefect("scaled determinant disagrees with the rational determinant")
    by_matrix = det != 0
    psd = linalg.is_psd(gram)
    lap("matrix_criterion")
    kmat = kernel_matrix(instance)
    krank = linalg.rank(kmat)
    by_kernel = krank == instance.A.order
    lap("kernel_criterion")
    if by_matrix != by_kernel:
        raise CriteriaDisagreement(
            "matrix and kernel criteria disagree",
            matrix_criterion=by_matrix,
            kernel_criterion=by_kernel,
        )
    amen = model.amenability_sufficient(instance)
    verdict = verdict_for(by_matrix, amen)

    witness = None
    if options.witness_period:
        w = engine.find_nonhausdorff_witness(instance, options.witness_period)
        if w is not None:
            witness = WitnessInfo(
                agent=agent_name(instance, w.agent),
                period=instance.word_label(w.period),
                escape=instance.X[w.escape],
                phases=tuple(agent_name(instance, g) for g in w.phases),
            )
        lap("witness_search")

    truncation = None
    if options.truncation_depth is not None:
        rows = []
        for g in engine.all_agents(instance):
            if g.side is Side.PERM:
                continue
            chk = measure.truncation_check(instance, table, g, options.truncation_depth)
            rows.append(TruncationRow(agent_name(instance, g), chk.depth, chk.count, chk.ratio, chk.psi, chk.gap))
        truncation = tuple(rows)
        lap("truncation")

    return AnalysisReport(
        A_order=instance.A.order,
        B_order=instance.B.order,
        alphabet=instance.X,
        Y=tuple(instance.X[y] for y in sorted(instance.Y)),
        transitive=instance.action.transitive,
        BA_size=len(instance.BA),
        nucleus=tuple(agent_name(instance, g) for g in sorted(instance.nucleus)),
        A_elements=instance.A.elements,
        psi=table.values,
        gram=gram.rows,
        scale=scale,
        scaled_matrix=tuple(tuple(r) for r in scaled),
        determinant=det,
        scaled_determinant=scaled_det,
        gram_psd=psd,
        kernel_rank=krank,
        matrix_criterion=by_matrix,
        kernel_criterion=by_kernel,
        criteria_agree=by_matrix == by_kernel,
        amenability=amen.value,
        verdict=verdict,
        kirchberg=verdict == SIMPLE,
        witness=witness,
        truncation=truncation,
        options=options,
        timing=tuple(timings) if options.timing else None,
    )
