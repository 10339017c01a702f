from fractions import Fraction

import pytest
import sympy

from multispinal import linalg
from multispinal.engine import IDENTITY, Side, all_agents
from multispinal.measure import kms_value, psi_value, solve_psi, truncation_check
from multispinal.randomized import random_instances

F = Fraction


def psi_of(inst, labels):
    table = solve_psi(inst)
    return [table[inst.A.index(a)] for a in labels]


def test_grigorchuk_psi(grig):
    assert psi_of(grig, "ebcd") == [1, F(1, 7), F(2, 7), F(4, 7)]


def test_nonsimple_psi(nonsimple):
    assert psi_of(nonsimple, "bcd") == [F(1, 3), 0, F(2, 3)]


def test_z3_psi(z3):
    assert psi_of(z3, ["a1", "a2", "a3", "a4"]) == [F(4, 7), F(1, 14), F(1, 7), F(3, 14)]
    assert psi_of(z3, ["a1^-1", "a2^-1", "a3^-1", "a4^-1"]) == [F(4, 7), F(1, 14), F(1, 7), F(3, 14)]


def test_z3_psi_against_sympy_system(z3):
    # the self-similarity equations for a1..a4, solved by sympy
    p1, p2, p3, p4 = sympy.symbols("p1:5")
    sol = sympy.solve(
        [
            sympy.Eq(p1, (p1 + p3 + 1) / 3),
            sympy.Eq(p2, (p3 + p2) / 3),
            sympy.Eq(p3, 2 * p4 / 3),
            sympy.Eq(p4, (p2 + p1) / 3),
        ],
        [p1, p2, p3, p4],
    )
    got = psi_of(z3, ["a1", "a2", "a3", "a4"])
    assert [F(int(sol[p].p), int(sol[p].q)) for p in (p1, p2, p3, p4)] == got


def test_system_is_retained_and_dominant(grig):
    table = solve_psi(grig)
    assert table.system.nrows == 3
    assert table.system.matvec([table[a] for a in table.unknowns]) == list(table.rhs)
    assert linalg.determinant(table.system) != 0
    for i, row in enumerate(table.system.rows):
        assert abs(row[i]) > sum(abs(v) for j, v in enumerate(row) if j != i)


def test_psi_value(grig):
    table = solve_psi(grig)
    assert psi_value(grig, table, IDENTITY) == 1
    assert psi_value(grig, table, grig.b("a")) == 0
    assert psi_value(grig, table, grig.a("d")) == F(4, 7)


def test_kms_value(grig):
    table = solve_psi(grig)
    zero, one = grig.letter("0"), grig.letter("1")
    d = grig.a("d")
    assert kms_value(grig, table, (zero,), d, (zero,)) == F(2, 7)
    assert kms_value(grig, table, (zero,), d, (one,)) == 0
    assert kms_value(grig, table, (zero,), d, (zero, zero)) == 0
    assert kms_value(grig, table, (), IDENTITY, ()) == 1


def _psi_invariants(inst):
    table = solve_psi(inst)
    A = inst.A
    assert table[A.identity] == 1
    for a in range(A.order):
        assert 0 <= table[a] <= 1
        assert table[a] == table[A.inv(a)]
        for c in range(A.order):
            conj = A.mul(A.mul(A.inv(c), a), c)
            assert table[conj] == table[a]


def test_psi_invariants_fixtures(fixtures):
    for inst in fixtures.values():
        _psi_invariants(inst)


def test_psi_invariants_random():
    for inst in random_instances(40, seed=7):
        _psi_invariants(inst)


def test_truncation_grigorchuk_b(grig):
    table = solve_psi(grig)
    chk = truncation_check(grig, table, grig.a("b"), 12)
    assert chk.count == 586
    assert chk.gap == F(586, 4096) - F(1, 7)
    assert 0 <= chk.gap <= F(1, 2048)


def test_truncation_trivial_cases(grig):
    table = solve_psi(grig)
    for n in range(6):
        assert truncation_check(grig, table, IDENTITY, n).gap == 0
    for n in range(1, 6):
        chk = truncation_check(grig, table, grig.b("a"), n)
        assert chk.ratio == 0 and chk.gap == 0


@pytest.mark.parametrize("name", ["grigorchuk", "nonsimple-variant", "z3xz3"])
def test_truncation_monotone_to_psi(fixtures, name):
    inst = fixtures[name]
    table = solve_psi(inst)
    for g in all_agents(inst):
        gaps = [truncation_check(inst, table, g, n).gap for n in range(15)]
        assert all(x >= 0 for x in gaps)
        assert all(gaps[n + 1] <= gaps[n] for n in range(14))


def test_truncation_converges(fixtures):
    # deep DP counts close in on psi for every A-agent
    for inst in fixtures.values():
        table = solve_psi(inst)
        for g in all_agents(inst):
            if g.side is Side.AUT:
                assert truncation_check(inst, table, g, 60).gap < F(1, 1000)
