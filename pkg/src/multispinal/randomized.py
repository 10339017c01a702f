"""Seeded random multispinal instances for property checks.

Every ``λ ∈ B·A`` maps into B, so faithfulness forces A to embed in a power of
B. With ``|B| <= 4`` the group B is abelian, hence A must be abelian with
exponent dividing that of B; the catalogue below lists exactly such pairs.
"""

from __future__ import annotations

import random
from typing import Iterator

from .errors import ValidationError
from .groups import (
    FiniteGroup,
    Homomorphism,
    cyclic_product,
    extend_on_generators,
    generating_set,
    is_automorphism,
    validate_action,
)
from .model import MultispinalInstance, build_instance

# (B factor orders, allowed |X| values, candidate A factor orders)
_ELEMENTARY_2 = [[2], [2, 2], [2, 2, 2], [2, 2, 2, 2]]
CATALOGUE = [
    ([2], (2, 4), _ELEMENTARY_2),
    ([2, 2], (4,), _ELEMENTARY_2),
    ([3], (3,), [[3], [3, 3]]),
    ([4], (4,), [[2], [4], [2, 2], [2, 4], [4, 4], [2, 2, 4], [2, 2, 2], [2, 2, 2, 2]]),
]


def _free_action_perms(B: FiniteGroup, copies: int) -> list[list[int]]:
    """``copies`` disjoint copies of the left regular action; letter ``k|B| + j`` is ``(k, B_j)``."""
    n = B.order
    return [[k * n + B.mul(b, j) for k in range(copies) for j in range(n)] for b in range(n)]


def random_automorphism(A: FiniteGroup, rng: random.Random, tries: int = 200) -> Homomorphism:
    gens = generating_set(A)
    by_order: dict[int, list[int]] = {}
    for g in range(A.order):
        by_order.setdefault(A.element_order(g), []).append(g)
    for _ in range(tries):
        images = [rng.choice(by_order[A.element_order(g)]) for g in gens]
        h = extend_on_generators(A, A, gens, images)
        if h is not None and is_automorphism(h):
            return h
    return Homomorphism(A, A, tuple(range(A.order)))


def random_homomorphism(A: FiniteGroup, B: FiniteGroup, rng: random.Random, tries: int = 200) -> Homomorphism:
    gens = generating_set(A)
    for _ in range(tries):
        images = []
        for g in gens:
            k = A.element_order(g)
            images.append(rng.choice([b for b in range(B.order) if k % B.element_order(b) == 0]))
        h = extend_on_generators(A, B, gens, images)
        if h is not None:
            return h
    return Homomorphism(A, B, (B.identity,) * A.order)


def random_instance(rng: random.Random, attempts: int = 100) -> MultispinalInstance:
    """A random valid instance with ``|A| <= 16``, ``|B| <= 4``, ``|X| <= 4``."""
    for _ in range(attempts):
        b_orders, x_sizes, a_choices = rng.choice(CATALOGUE)
        A = cyclic_product(rng.choice(a_choices))
        B = cyclic_product(b_orders)
        nx = rng.choice(x_sizes)
        alphabet = [str(i) for i in range(nx)]
        action = validate_action(B, alphabet, _free_action_perms(B, nx // B.order))
        n_hom = rng.randint(1, nx - 1)
        Y = set(rng.sample(range(nx), n_hom))
        psi = [
            ("hom", random_homomorphism(A, B, rng)) if x in Y else ("aut", random_automorphism(A, rng))
            for x in range(nx)
        ]
        try:
            return build_instance(A, B, action, psi)
        except ValidationError:
            continue
    raise RuntimeError("could not draw a valid instance")


def random_instances(count: int, seed: int) -> Iterator[MultispinalInstance]:
    rng = random.Random(seed)
    for _ in range(count):
        yield random_instance(rng)
