"""Checks of the bundled fixtures against their known reference values."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from . import engine, measure
from .analyzer import analyze, AnalysisOptions
from .documents import load_instance
from .engine import IDENTITY, EventuallyPeriodicWord
from .groups import is_automorphism
from .linalg import RationalMatrix, determinant

GRIGORCHUK_MATRIX = [[7, 1, 2, 4], [1, 7, 4, 2], [2, 4, 7, 1], [4, 2, 1, 7]]
NONSIMPLE_MATRIX = [[3, 1, 0, 2], [1, 3, 2, 0], [0, 2, 3, 1], [2, 0, 1, 3]]
Z3_MATRIX = [
    [14, 1, 8, 2, 3, 1, 8, 2, 3],
    [1, 14, 3, 8, 2, 1, 2, 3, 8],
    [8, 3, 14, 1, 1, 2, 8, 3, 2],
    [2, 8, 1, 14, 1, 3, 3, 2, 8],
    [3, 2, 1, 1, 14, 8, 2, 8, 3],
    [1, 1, 2, 3, 8, 14, 3, 8, 2],
    [8, 2, 8, 3, 2, 3, 14, 1, 1],
    [2, 3, 3, 2, 8, 8, 1, 14, 1],
    [3, 8, 2, 8, 3, 2, 1, 1, 14],
]

F = Fraction


def _psi(inst, labels):
    table = measure.solve_psi(inst)
    return [table[inst.A.index(a)] for a in labels]


def _checks() -> list[tuple[str, Callable[[], bool]]]:
    g = load_instance("grigorchuk.json")
    ns = load_instance("nonsimple-variant.json")
    z = load_instance("z3xz3.json")
    opts = AnalysisOptions(truncation_depth=None, witness_period=None)
    rg, rns, rz = analyze(g, opts), analyze(ns, opts), analyze(z, opts)
    b, c, d, a = g.a("b"), g.a("c"), g.a("d"), g.b("a")
    one = g.letter("1")
    zero = g.letter("0")

    def ker0():
        return {g.A.elements[i] for i in g.kernels[zero]} == {"e", "d"}

    return [
        ("grigorchuk Psi(0)(x,y) = y is a homomorphism onto B", lambda: set(g.psi[zero].map) == {0, 1}),
        ("grigorchuk Psi(1)(x,y) = (y,x+y) is an automorphism", lambda: is_automorphism(g.psi[one])),
        ("grigorchuk kernel Psi(0) = {e, d}", ker0),
        ("grigorchuk b(0w) = 0a(w)", lambda: engine.step(g, b, zero) == (zero, a)),
        ("grigorchuk a(0w) = 1w", lambda: engine.step(g, a, zero) == (one, IDENTITY)),
        ("grigorchuk d(1w) = 1b(w)", lambda: engine.apply_word(g, d, (one,)) == ((one,), b)),
        ("grigorchuk psi = 1/7, 2/7, 4/7", lambda: _psi(g, "bcd") == [F(1, 7), F(2, 7), F(4, 7)]),
        ("grigorchuk scale 7 and reference matrix", lambda: rg.scale == 7 and [list(r) for r in rg.scaled_matrix] == GRIGORCHUK_MATRIX),
        ("grigorchuk det = 896", lambda: determinant(RationalMatrix.of(GRIGORCHUK_MATRIX)) == 896 and rg.scaled_determinant == 896),
        ("grigorchuk verdict Simple, Kirchberg", lambda: rg.verdict == "Simple" and rg.kirchberg),
        ("grigorchuk germs [d,1^inf] != [e,1^inf]", lambda: engine.decide_germ(g, d, IDENTITY, EventuallyPeriodicWord((), (one,))).kind == "DifferentGerm"),
        ("grigorchuk d = e on 1110 X^w", lambda: engine.agrees_on_cylinder(g, d, IDENTITY, g.word("1110"))),
        ("grigorchuk d(0w) = 0w: germ equal at depth 1", lambda: engine.decide_germ(g, d, IDENTITY, EventuallyPeriodicWord((), (zero,))) == engine.GermVerdict.equal(1)),
        ("grigorchuk witness (d, 1, 0)", lambda: _witness(g) == (d, (one,), zero)),
        ("nonsimple psi = 1/3, 0, 2/3", lambda: _psi(ns, "bcd") == [F(1, 3), F(0), F(2, 3)]),
        ("nonsimple det = 0 and reference matrix", lambda: rns.scaled_determinant == 0 and [list(r) for r in rns.scaled_matrix] == NONSIMPLE_MATRIX and determinant(RationalMatrix.of(NONSIMPLE_MATRIX)) == 0),
        ("nonsimple verdict NotSimple", lambda: rns.verdict == "NotSimple"),
        ("z3xz3 psi = 4/7, 1/14, 1/7, 3/14 (and inverses)", lambda: _psi(z, ["a1", "a2", "a3", "a4", "a1^-1", "a2^-1", "a3^-1", "a4^-1"]) == [F(4, 7), F(1, 14), F(1, 7), F(3, 14)] * 2),
        ("z3xz3 scale 14 and reference matrix", lambda: rz.scale == 14 and [list(r) for r in rz.scaled_matrix] == Z3_MATRIX),
        ("z3xz3 det = 634894848", lambda: rz.scaled_determinant == 634894848 and determinant(RationalMatrix.of(Z3_MATRIX)) == 634894848),
        ("z3xz3 verdict Simple", lambda: rz.verdict == "Simple"),
        ("translation actions are free and transitive", lambda: g.action.transitive and z.action.transitive),
    ]


def _witness(inst):
    w = engine.find_nonhausdorff_witness(inst)
    return None if w is None else (w.agent, w.period, w.escape)


def run_selftest() -> list[tuple[str, bool]]:
    results = []
    for name, check in _checks():
        try:
            ok = bool(check())
        except Exception:
            ok = False
        results.append((name, ok))
    return results
