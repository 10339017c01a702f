"""Finite groups given by Cayley tables, homomorphisms, and free actions.

Elements are identified by their index in the declared element list; labels
only matter for reports. Everything here is validated eagerly and immutable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    DomainMismatch,
    NotAGroup,
    NotAHomomorphism,
    NotAnAction,
    NotFree,
)

MAX_ORDER = 512


@dataclass(frozen=True)
class FiniteGroup:
    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self.inverse[i]

    def index(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise KeyError(f"unknown element label {label!r}") from None

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != self.identity:
            x = self.table[x][i]
            k += 1
        return k

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, elements={list(self.elements)})"


def validate_group(elements: Sequence[str], table: Sequence[Sequence[int]]) -> FiniteGroup:
    """Check the group axioms on a Cayley table and return the group.

    ``table[i][j]`` is the index of ``elements[i] * elements[j]``. Raises
    :class:`NotAGroup` naming the failing axiom together with a witness.
    """
    elements = tuple(str(e) for e in elements)
    n = len(elements)
    if n == 0:
        raise NotAGroup("a group has at least one element", axiom="nonempty")
    if len(set(elements)) != n:
        raise NotAGroup("element labels must be distinct", axiom="labels")
    if n > MAX_ORDER:
        raise NotAGroup(f"group order {n} exceeds the Cayley-table limit {MAX_ORDER}", axiom="size")
    if len(table) != n or any(len(row) != n for row in table):
        raise NotAGroup("Cayley table must be square over the declared elements", axiom="shape")
    rows = tuple(tuple(int(v) for v in row) for row in table)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise NotAGroup("table entry out of range", axiom="closure", witness=(i, j, v))

    full = set(range(n))
    for i, row in enumerate(rows):
        if set(row) != full:
            raise NotAGroup("table row is not a permutation", axiom="latin-square", row=elements[i])
    for j in range(n):
        if {rows[i][j] for i in range(n)} != full:
            raise NotAGroup("table column is not a permutation", axiom="latin-square", column=elements[j])

    identity = next((i for i in range(n) if rows[i] == tuple(range(n))), None)
    if identity is None or any(rows[j][identity] != j for j in range(n)):
        raise NotAGroup("no two-sided identity element", axiom="identity")

    for x, y, z in itertools.product(range(n), repeat=3):
        if rows[rows[x][y]][z] != rows[x][rows[y][z]]:
            raise NotAGroup(
                "multiplication is not associative",
                axiom="associativity",
                triple=(elements[x], elements[y], elements[z]),
            )

    # Latin square + identity: the left inverse is unique and, by associativity, two-sided.
    inverse = tuple(rows[i].index(identity) for i in range(n))
    return FiniteGroup(elements, rows, identity, inverse)


def cyclic_product(orders: Sequence[int]) -> FiniteGroup:
    """Direct product Z_{n1} x ... x Z_{nk}, elements in lexicographic order.

    Labels are ``"x"`` for a single factor and ``"(x,y,...)"`` otherwise.
    """
    orders = [int(n) for n in orders]
    if not orders or any(n < 1 for n in orders):
        raise NotAGroup("cyclic_product needs positive factor orders", axiom="shape", orders=orders)
    tuples = list(itertools.product(*(range(n) for n in orders)))
    if len(orders) == 1:
        labels = [str(t[0]) for t in tuples]
    else:
        labels = ["(" + ",".join(map(str, t)) + ")" for t in tuples]
    pos = {t: i for i, t in enumerate(tuples)}
    table = [
        [pos[tuple((a + b) % n for a, b, n in zip(s, t, orders))] for t in tuples]
        for s in tuples
    ]
    return validate_group(labels, table)


def permutation_group(generators: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> FiniteGroup:
    """Group generated by permutations (image lists), elements in BFS order from the identity.

    Composition convention: ``(p * q)(i) = p[q[i]]``.
    """
    degree = len(generators[0])
    ident = tuple(range(degree))
    gens = [tuple(g) for g in generators]
    found = [ident]
    seen = {ident: 0}
    k = 0
    while k < len(found):
        p = found[k]
        for g in gens:
            q = tuple(p[g[i]] for i in range(degree))
            if q not in seen:
                seen[q] = len(found)
                found.append(q)
                if len(found) > MAX_ORDER:
                    raise NotAGroup("generated group exceeds the Cayley-table limit", axiom="size")
        k += 1
    table = [[seen[tuple(p[q[i]] for i in range(degree))] for q in found] for p in found]
    if labels is None:
        labels = [f"g{i}" for i in range(len(found))]
    return validate_group(labels, table)


def generating_set(group: FiniteGroup) -> tuple[int, ...]:
    """Greedy generating set: scan elements in order, keep those outside the span so far."""
    span = {group.identity}
    gens: list[int] = []
    for g in range(group.order):
        if g in span:
            continue
        gens.append(g)
        frontier = list(span)
        span = set(span)
        while frontier:
            x = frontier.pop()
            for s in gens:
                y = group.mul(x, s)
                if y not in span:
                    span.add(y)
                    frontier.append(y)
    return tuple(gens)


@dataclass(frozen=True)
class Homomorphism:
    source: FiniteGroup
    target: FiniteGroup
    map: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.map[i]

    def __repr__(self) -> str:
        pairs = ", ".join(
            f"{self.source.elements[i]}->{self.target.elements[j]}" for i, j in enumerate(self.map)
        )
        return f"Homomorphism({pairs})"


def make_hom(source: FiniteGroup, target: FiniteGroup, mapping: Sequence[int]) -> Homomorphism:
    mapping = tuple(int(v) for v in mapping)
    if len(mapping) != source.order or any(not 0 <= v < target.order for v in mapping):
        raise NotAHomomorphism("map must send every source index to a target index", map=list(mapping))
    if mapping[source.identity] != target.identity:
        raise NotAHomomorphism(
            "identity is not preserved",
            image=target.elements[mapping[source.identity]],
        )
    for x in range(source.order):
        for y in range(source.order):
            if mapping[source.mul(x, y)] != target.mul(mapping[x], mapping[y]):
                raise NotAHomomorphism(
                    "map(xy) != map(x)map(y)",
                    pair=(source.elements[x], source.elements[y]),
                )
    return Homomorphism(source, target, mapping)


def identity_hom(group: FiniteGroup) -> Homomorphism:
    return Homomorphism(group, group, tuple(range(group.order)))


def trivial_hom(source: FiniteGroup, target: FiniteGroup) -> Homomorphism:
    return Homomorphism(source, target, (target.identity,) * source.order)


def is_automorphism(h: Homomorphism) -> bool:
    return h.source == h.target and len(set(h.map)) == h.source.order


def compose(h1: Homomorphism, h2: Homomorphism) -> Homomorphism:
    """``h1 ∘ h2`` (apply ``h2`` first)."""
    if h2.target != h1.source:
        raise DomainMismatch("compose(h1, h2) needs h2.target == h1.source")
    return Homomorphism(h2.source, h1.target, tuple(h1.map[v] for v in h2.map))


def kernel(h: Homomorphism) -> frozenset[int]:
    ker = frozenset(i for i, v in enumerate(h.map) if v == h.target.identity)
    g = h.source
    assert all(g.mul(x, y) in ker and g.inv(x) in ker for x in ker for y in ker)
    return ker


def extend_on_generators(
    source: FiniteGroup,
    target: FiniteGroup,
    generators: Sequence[int],
    images: Sequence[int],
) -> Homomorphism | None:
    """The homomorphism sending ``generators[k] -> images[k]``, or None if no such map exists."""
    mapping: dict[int, int] = {source.identity: target.identity}
    frontier = [source.identity]
    while frontier:
        x = frontier.pop()
        for s, t in zip(generators, images):
            y = source.mul(x, s)
            v = target.mul(mapping[x], t)
            if y not in mapping:
                mapping[y] = v
                frontier.append(y)
            elif mapping[y] != v:
                return None
    if len(mapping) != source.order:
        raise ValueError("generators do not generate the source group")
    # Consistency along every edge of the Cayley graph for the generators is enough.
    return Homomorphism(source, target, tuple(mapping[i] for i in range(source.order)))


@dataclass(frozen=True)
class FiniteAction:
    group: FiniteGroup
    alphabet: tuple[str, ...]
    perms: tuple[tuple[int, ...], ...]
    transitive: bool = field(compare=False)

    def act(self, b: int, x: int) -> int:
        return self.perms[b][x]


def validate_action(group: FiniteGroup, alphabet: Sequence[str], perms: Sequence[Sequence[int]]) -> FiniteAction:
    """Validate a free action ``perms[b][x] = b(x)`` of ``group`` on ``alphabet``."""
    alphabet = tuple(str(x) for x in alphabet)
    n = len(alphabet)
    if n == 0 or len(set(alphabet)) != n:
        raise NotAnAction("alphabet must be nonempty with distinct letters")
    if len(perms) != group.order:
        raise NotAnAction("need one permutation per group element", count=len(perms))
    perms = tuple(tuple(int(v) for v in p) for p in perms)
    for b, p in enumerate(perms):
        if sorted(p) != list(range(n)):
            raise NotAnAction("not a permutation of the alphabet", element=group.elements[b])
    if perms[group.identity] != tuple(range(n)):
        raise NotAnAction("identity must act trivially")
    for b in range(group.order):
        for c in range(group.order):
            bc = group.mul(b, c)
            for x in range(n):
                if perms[bc][x] != perms[b][perms[c][x]]:
                    raise NotAnAction(
                        "(bc)(x) != b(c(x))",
                        pair=(group.elements[b], group.elements[c]),
                        letter=alphabet[x],
                    )
    for b in range(group.order):
        if b == group.identity:
            continue
        for x in range(n):
            if perms[b][x] == x:
                raise NotFree("nontrivial element fixes a letter", element=group.elements[b], letter=alphabet[x])
    orbit = {perms[b][0] for b in range(group.order)}
    return FiniteAction(group, alphabet, perms, transitive=len(orbit) == n)


def translation_action(group: FiniteGroup) -> FiniteAction:
    """Left translation of a group on its own element labels."""
    perms = [[group.mul(b, x) for x in range(group.order)] for b in range(group.order)]
    return validate_action(group, group.elements, perms)
