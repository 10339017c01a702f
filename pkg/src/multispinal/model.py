"""Multispinal instances: the data (A, B, X, B-action, Psi) and its derived sets."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from . import engine
from .engine import Agent
from .errors import EmptyAutPart, EmptyHomPart, InternalDefect, NotAnAutomorphism, NotFaithful, ValidationError
from .groups import FiniteAction, FiniteGroup, Homomorphism, compose, is_automorphism, kernel


class Amenability(str, enum.Enum):
    ESTABLISHED = "Established"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class MultispinalInstance:
    A: FiniteGroup
    B: FiniteGroup
    action: FiniteAction
    psi: tuple[Homomorphism, ...]
    Y: frozenset[int]
    BA: tuple[Homomorphism, ...] = field(compare=False)
    kernels: dict = field(compare=False, repr=False)
    nucleus: frozenset[Agent] = field(compare=False)

    @property
    def X(self) -> tuple[str, ...]:
        return self.action.alphabet

    def letter(self, label: str) -> int:
        return self.X.index(label)

    def word(self, text: str | Sequence[str]) -> tuple[int, ...]:
        """Letter indices for a word. A plain string is read one character per
        letter, so multi-character letters need a list."""
        return tuple(self.letter(c) for c in text)

    def word_label(self, u: Sequence[int]) -> str:
        sep = "" if all(len(x) == 1 for x in self.X) else " "
        return sep.join(self.X[x] for x in u)

    def a(self, label: str) -> Agent:
        return engine.a_agent(self, self.A.index(label))

    def b(self, label: str) -> Agent:
        return engine.b_agent(self, self.B.index(label))

    def agent_label(self, g: Agent) -> str:
        if g.side is engine.Side.AUT:
            return self.A.elements[g.element]
        if g.side is engine.Side.PERM:
            return self.B.elements[g.element]
        return self.A.elements[self.A.identity]

    @property
    def aut_letters(self) -> tuple[int, ...]:
        return tuple(x for x in range(len(self.X)) if x not in self.Y)


def build_instance(
    A: FiniteGroup,
    B: FiniteGroup,
    action: FiniteAction,
    psi: Sequence[tuple[str, Homomorphism]],
) -> MultispinalInstance:
    """Validate multispinal data and compute Y, the closure BA, and the nucleus.

    ``psi[x]`` is a tagged pair: ``("aut", h)`` with ``h`` an automorphism of A,
    or ``("hom", h)`` with ``h: A -> B``. Tags are explicit because A and B may
    be equal as groups.
    """
    if action.group != B:
        raise ValidationError("the action must be an action of B")
    if len(psi) != len(action.alphabet):
        raise ValidationError("need one Psi entry per letter", letters=len(action.alphabet), entries=len(psi))
    Y = set()
    for x, (tag, h) in enumerate(psi):
        letter = action.alphabet[x]
        if h.source != A:
            raise ValidationError("Psi(x) must be defined on A", letter=letter)
        if tag == "aut":
            if h.target != A or not is_automorphism(h):
                raise NotAnAutomorphism("Psi(x) tagged aut must be a bijection of A", letter=letter)
        elif tag == "hom":
            if h.target != B:
                raise ValidationError("Psi(x) tagged hom must land in B", letter=letter)
            Y.add(x)
        else:
            raise ValidationError(f"unknown Psi tag {tag!r}", letter=letter)
    psi = [h for _, h in psi]
    if not Y:
        raise EmptyHomPart("no letter maps A into B (Y is empty)")
    if len(Y) == len(psi):
        raise EmptyAutPart("every letter maps A into B (X \\ Y is empty)")

    Yf = frozenset(Y)
    BA = _closure(psi, Yf)
    common = frozenset(range(A.order))
    for lam in BA:
        common &= kernel(lam)
    if common != {A.identity}:
        raise NotFaithful(
            "the kernels of B·A intersect nontrivially",
            common_kernel=[A.elements[i] for i in sorted(common)],
        )

    instance = MultispinalInstance(
        A=A,
        B=B,
        action=action,
        psi=tuple(psi),
        Y=Yf,
        BA=BA,
        kernels={y: kernel(psi[y]) for y in sorted(Yf)},
        nucleus=frozenset(),
    )
    nuc = nucleus_formula(instance)
    reached = engine.reachable_nucleus(instance)
    if nuc != reached:
        raise InternalDefect("nucleus formula disagrees with the reachability fixpoint")
    object.__setattr__(instance, "nucleus", nuc)
    return instance


def _closure(psi: Sequence[Homomorphism], Y: frozenset[int]) -> tuple[Homomorphism, ...]:
    homs = [psi[y] for y in sorted(Y)]
    auts = [psi[x] for x in range(len(psi)) if x not in Y]
    out: list[Homomorphism] = []
    seen: set[tuple[int, ...]] = set()
    for h in homs:
        if h.map not in seen:
            seen.add(h.map)
            out.append(h)
    k = 0
    while k < len(out):
        for alpha in auts:
            c = compose(out[k], alpha)
            if c.map not in seen:
                seen.add(c.map)
                out.append(c)
        k += 1
    return tuple(out)


def closure_BA(instance: MultispinalInstance) -> tuple[Homomorphism, ...]:
    """The set B·A: homomorphisms ``Psi(y) ∘ Psi(x_n) ∘ ... ∘ Psi(x_1)``, ``y ∈ Y``,
    ``x_i ∉ Y``, deduplicated by their element maps, in discovery order."""
    return instance.BA


def nucleus_formula(instance: MultispinalInstance) -> frozenset[Agent]:
    """``A ∪ ⋃_{y ∈ Y} Psi(y)(A)`` as a set of agents (identities merged)."""
    out = {engine.a_agent(instance, i) for i in range(instance.A.order)}
    for y in instance.Y:
        out |= {engine.b_agent(instance, v) for v in instance.psi[y].map}
    return frozenset(out)


def nucleus(instance: MultispinalInstance) -> frozenset[Agent]:
    return instance.nucleus


def amenability_sufficient(instance: MultispinalInstance) -> Amenability:
    """Established when the B-action is transitive and the Y-images of A cover B.

    Those hypotheses make the group self-replicating with nucleus A ∪ B, and a
    contracting self-replicating group has an amenable groupoid of germs.
    Failure of the hypotheses proves nothing, hence Unknown.
    """
    covered = set()
    for y in instance.Y:
        covered |= set(instance.psi[y].map)
    if instance.action.transitive and len(covered) == instance.B.order:
        return Amenability.ESTABLISHED
    return Amenability.UNKNOWN
