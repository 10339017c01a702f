"""The self-similar action of a multispinal group as a finite-state transducer.

States ("agents") are the elements of A and B, with the two identities merged
into a single identity agent. Reading a letter ``x``:

* an A-agent ``a`` writes ``x`` and moves to ``Psi(x)(a)`` (an A-agent when
  ``Psi(x)`` is an automorphism, a B-agent when it is a homomorphism to B);
* a B-agent ``b`` writes ``b(x)`` and moves to the identity;
* the identity writes ``x`` and stays.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

from .errors import InternalDefect, SideMismatch

if TYPE_CHECKING:
    from .model import MultispinalInstance


class Side(enum.IntEnum):
    IDENTITY = 0
    AUT = 1
    PERM = 2


@dataclass(frozen=True, order=True)
class Agent:
    side: Side
    element: int = 0

    @property
    def is_identity(self) -> bool:
        return self.side is Side.IDENTITY

    def __repr__(self) -> str:
        if self.side is Side.IDENTITY:
            return "Agent(identity)"
        return f"Agent({self.side.name}, {self.element})"


IDENTITY = Agent(Side.IDENTITY, 0)


def a_agent(instance: MultispinalInstance, i: int) -> Agent:
    return IDENTITY if i == instance.A.identity else Agent(Side.AUT, i)


def b_agent(instance: MultispinalInstance, i: int) -> Agent:
    return IDENTITY if i == instance.B.identity else Agent(Side.PERM, i)


def all_agents(instance: MultispinalInstance) -> tuple[Agent, ...]:
    """Identity, then A\\{e} and B\\{e} in declared order."""
    out = [IDENTITY]
    out += [Agent(Side.AUT, i) for i in range(instance.A.order) if i != instance.A.identity]
    out += [Agent(Side.PERM, i) for i in range(instance.B.order) if i != instance.B.identity]
    return tuple(out)


def inverse(instance: MultispinalInstance, g: Agent) -> Agent:
    if g.side is Side.AUT:
        return Agent(Side.AUT, instance.A.inv(g.element))
    if g.side is Side.PERM:
        return Agent(Side.PERM, instance.B.inv(g.element))
    return g


def multiply(instance: MultispinalInstance, g: Agent, h: Agent) -> Agent:
    """Product ``g h`` of two agents on the same side (or with the identity)."""
    if g.is_identity:
        return h
    if h.is_identity:
        return g
    if g.side is not h.side:
        raise SideMismatch("agents on different sides do not multiply to an agent", g=g, h=h)
    if g.side is Side.AUT:
        return a_agent(instance, instance.A.mul(g.element, h.element))
    return b_agent(instance, instance.B.mul(g.element, h.element))


def step(instance: MultispinalInstance, g: Agent, x: int) -> tuple[int, Agent]:
    """One transducer step: ``g(x w) = y · g|_x(w)``, returned as ``(y, g|_x)``."""
    if g.side is Side.AUT:
        psi = instance.psi[x]
        image = psi(g.element)
        if x in instance.Y:
            return x, b_agent(instance, image)
        return x, a_agent(instance, image)
    if g.side is Side.PERM:
        return instance.action.act(g.element, x), IDENTITY
    return x, IDENTITY


def apply_word(instance: MultispinalInstance, g: Agent, u: Sequence[int]) -> tuple[tuple[int, ...], Agent]:
    """``(g(u), g|_u)`` for a finite word of letter indices."""
    out = []
    for x in u:
        y, g = step(instance, g, x)
        out.append(y)
    return tuple(out), g


def apply_product(
    instance: MultispinalInstance, gs: Sequence[Agent], u: Sequence[int]
) -> tuple[tuple[int, ...], list[Agent]]:
    """Apply ``g1 g2 ... gn`` to ``u`` (rightmost first).

    Returns the image and the list of restrictions ``[g1|_{u1}, ..., gn|_{un}]``
    aligned with ``gs``, where ``ui`` is the word that reaches ``gi``. Their
    product in the same order is the restriction of the composite.
    """
    word = tuple(u)
    restrictions: list[Agent] = [IDENTITY] * len(gs)
    for k in range(len(gs) - 1, -1, -1):
        word, restrictions[k] = apply_word(instance, gs[k], word)
    return word, restrictions


def fixed_count(instance: MultispinalInstance, g: Agent, n: int) -> int:
    """Number of words ``u`` of length ``n`` with ``g(u) = u``.

    Dynamic programming over agents: ``F_n(g) = sum over letters x fixed by g of
    F_{n-1}(g|_x)``, cost O(n · |agents| · |X|).
    """
    if n < 0:
        raise ValueError("depth must be nonnegative")
    agents = all_agents(instance)
    letters = range(len(instance.X))
    moves = {
        h: [nxt for x in letters for y, nxt in [step(instance, h, x)] if y == x]
        for h in agents
    }
    counts = {h: 1 for h in agents}
    for _ in range(n):
        counts = {h: sum(counts[nxt] for nxt in moves[h]) for h in agents}
    return counts[g]


def reachable_nucleus(instance: MultispinalInstance) -> frozenset[Agent]:
    """Greatest fixpoint of one-step restriction: agents reachable at every depth."""
    current = frozenset(all_agents(instance))
    while True:
        nxt = frozenset(
            step(instance, h, x)[1] for h in current for x in range(len(instance.X))
        )
        nxt &= current
        if nxt == current:
            return current
        current = nxt


# -- germs -------------------------------------------------------------------


@dataclass(frozen=True)
class EventuallyPeriodicWord:
    """The infinite word ``preperiod · period · period · ...`` (letter indices)."""

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")

    def letter(self, i: int) -> int:
        p = len(self.preperiod)
        if i < p:
            return self.preperiod[i]
        return self.period[(i - p) % len(self.period)]

    def prefix(self, m: int) -> tuple[int, ...]:
        return tuple(self.letter(i) for i in range(m))


@dataclass(frozen=True)
class GermVerdict:
    kind: str  # "Equal", "DifferentImage" or "DifferentGerm"
    depth: int | None = None
    position: int | None = None

    @classmethod
    def equal(cls, depth: int) -> GermVerdict:
        return cls("Equal", depth=depth)

    @classmethod
    def different_image(cls, position: int) -> GermVerdict:
        return cls("DifferentImage", position=position)

    @classmethod
    def different_germ(cls) -> GermVerdict:
        return cls("DifferentGerm")


def _quotient(instance: MultispinalInstance, g: Agent, h: Agent) -> Agent:
    if not (g.is_identity or h.is_identity or g.side is h.side):
        raise SideMismatch("germ comparison needs agents on the same side", g=g, h=h)
    return multiply(instance, inverse(instance, h), g)


def moving_word(instance: MultispinalInstance, g: Agent, max_depth: int) -> tuple[int, ...] | None:
    """Shortest word (up to ``max_depth``) whose image under ``g`` differs from it."""
    frontier: list[tuple[Agent, tuple[int, ...]]] = [(g, ())]
    seen = {g}
    for _ in range(max_depth):
        nxt = []
        for h, u in frontier:
            for x in range(len(instance.X)):
                y, r = step(instance, h, x)
                if y != x:
                    return u + (x,)
                if r not in seen:
                    seen.add(r)
                    nxt.append((r, u + (x,)))
        frontier = nxt
    return None


def decide_germ(instance: MultispinalInstance, g: Agent, h: Agent, w: EventuallyPeriodicWord) -> GermVerdict:
    """Compare the germs ``[g, w]`` and ``[h, w]``.

    Walks ``k = h^{-1} g`` along ``w``. A moved letter gives ``DifferentImage``;
    the restriction reaching the identity at depth ``m`` means ``g = h`` on the
    cylinder of ``w``'s length-``m`` prefix; a repeated (restriction, phase)
    state with a nontrivial restriction gives ``DifferentGerm``.
    """
    k = _quotient(instance, g, h)
    pre, per = len(w.preperiod), len(w.period)
    seen: set[tuple[Agent, int]] = set()
    depth = 0
    while True:
        if k.is_identity:
            return GermVerdict.equal(depth)
        if depth >= pre:
            state = (k, (depth - pre) % per)
            if state in seen:
                # Faithfulness means a nontrivial restriction moves some point
                # in every cylinder; spot-check that it moves some word.
                bound = 2 * len(all_agents(instance))
                if moving_word(instance, k, bound) is None:
                    raise InternalDefect("nontrivial restriction moves no word within bound", agent=k)
                return GermVerdict.different_germ()
            seen.add(state)
        x = w.letter(depth)
        y, k = step(instance, k, x)
        if y != x:
            return GermVerdict.different_image(depth)
        depth += 1


def agrees_on_cylinder(instance: MultispinalInstance, g: Agent, h: Agent, u: Sequence[int]) -> bool:
    """Whether ``g`` and ``h`` coincide on the whole cylinder ``u X^ω``."""
    k = _quotient(instance, g, h)
    image, rest = apply_word(instance, k, u)
    return image == tuple(u) and rest.is_identity


# -- non-Hausdorff witnesses -------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """An A-agent ``agent`` fixing ``period^∞`` whose germ there is nontrivial,
    although ``agent`` is trivial on the cylinders ``period^j escape X^ω`` for
    every multiple ``j`` of the cycle length; those cylinders accumulate at the
    point, so ``[agent, w]`` and ``[e, w]`` cannot be separated.

    ``phases`` is the cycle of restrictions along the period, starting at
    ``agent``; ``agent`` itself lies in the kernel of ``Psi(escape)``.
    """

    agent: Agent
    period: tuple[int, ...]
    escape: int
    phases: tuple[Agent, ...]


def _primitive(word: tuple[int, ...]) -> bool:
    n = len(word)
    return all(word != word[d:] + word[:d] for d in range(1, n) if n % d == 0)


def find_nonhausdorff_witness(instance: MultispinalInstance, max_period: int = 3) -> Witness | None:
    """Bounded search for a non-Hausdorffness witness.

    Search order: period length, then period words in lexicographic order over
    X\\Y, then nonidentity A-agents in declared order. Returns None when the
    bounded search finds nothing, which says nothing about Hausdorffness.
    """
    A = instance.A
    aut_letters = [x for x in range(len(instance.X)) if x not in instance.Y]
    kernels = [(y, instance.kernels[y]) for y in sorted(instance.Y)]
    for p in range(1, max_period + 1):
        for v in itertools.product(aut_letters, repeat=p):
            if not _primitive(v):
                continue
            for a in range(A.order):
                if a == A.identity:
                    continue
                escape = next((y for y, ker in kernels if a in ker), None)
                if escape is None:
                    continue
                cycle = _restriction_cycle(instance, a, v)
                if cycle is not None:
                    agents = tuple(Agent(Side.AUT, c) for c in cycle)
                    return Witness(agents[0], tuple(v), escape, agents)
    return None


def _restriction_cycle(instance: MultispinalInstance, a: int, v: tuple[int, ...]) -> list[int] | None:
    """Restrictions of ``a`` along ``v^∞`` up to the first return to ``(a, phase 0)``.

    None if the walk enters a cycle that avoids the start. Letters of ``v`` are
    automorphic, so every restriction stays a nontrivial A-element.
    """
    seen = set()
    cur, k, out = a, 0, []
    while True:
        state = (cur, k % len(v))
        if state in seen:
            return out if state == (a, 0) else None
        seen.add(state)
        out.append(cur)
        cur = instance.psi[v[k % len(v)]](cur)
        k += 1
