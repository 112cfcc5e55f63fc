import itertools
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from multisect.conf import settings
from multisect.freewords import Word
from multisect.presentations.groups import AbelianInvariants, GroupPresentation
from multisect.presentations.matrices import as_integer_matrix, exponent_matrix, smith_normal_form
from multisect.utils.exceptions import BoundExceededError, ValidationError

logger = logging.getLogger(__name__)

Element = Tuple[int, ...]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z/d1 + ... + Z/dr with d1 | d2 | ... | dr, elements as residue vectors."""

    factors: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if any(d <= 1 for d in self.factors):
            raise ValidationError({"factors": ["Invariant factors must exceed 1"]})
        for previous, current in zip(self.factors, self.factors[1:]):
            if current % previous:
                raise ValidationError({"factors": [f"{previous} does not divide {current}"]})

    @classmethod
    def elementary(cls, p: int, n: int) -> "FiniteAbelianGroup":
        return cls((p,) * n)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        order = 1
        for d in self.factors:
            order *= d
        return order

    @property
    def prime(self) -> Optional[int]:
        """The prime p when the group is (Z/p)^r, else None."""
        if not self.factors or len(set(self.factors)) != 1:
            return None
        p = self.factors[0]
        if all(p % q for q in range(2, int(p**0.5) + 1)):
            return p
        return None

    @cached_property
    def elements(self) -> Tuple[Element, ...]:
        return tuple(itertools.product(*(range(d) for d in self.factors)))

    def zero(self) -> Element:
        return (0,) * self.rank

    def add(self, u: Element, v: Element) -> Element:
        return tuple((a + b) % d for a, b, d in zip(u, v, self.factors))

    def neg(self, u: Element) -> Element:
        return tuple(-a % d for a, d in zip(u, self.factors))

    def scale(self, u: Element, k: int) -> Element:
        return tuple(k * a % d for a, d in zip(u, self.factors))

    def is_generated_by(self, vectors: Sequence[Element]) -> bool:
        if self.rank == 0:
            return True
        if len(vectors) < self.rank:
            return False
        p = self.prime
        if p is not None:
            return _rank_mod_p(vectors, p) == self.rank
        relations = [list(v) for v in vectors]
        relations += [[d if i == j else 0 for j in range(self.rank)] for i, d in enumerate(self.factors)]
        form = smith_normal_form(as_integer_matrix(relations))
        return form.rank == self.rank and not form.invariant_factors

    def is_quotient_of(self, invariants: AbelianInvariants) -> bool:
        """Whether this group is a quotient of Z^f + Z/t1 + ... with the given invariants."""
        ambient = list(invariants.torsion) + [0] * invariants.free_rank
        if self.rank > len(ambient):
            return False
        tail = ambient[len(ambient) - self.rank :]
        return all(e % d == 0 for d, e in zip(self.factors, tail))

    def __str__(self):
        if not self.factors:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.factors)


def _rank_mod_p(vectors: Sequence[Element], p: int) -> int:
    rows = [[a % p for a in v] for v in vectors]
    rank, cols = 0, len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inverse = pow(rows[rank][col], -1, p)
        rows[rank] = [a * inverse % p for a in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [(a - factor * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def abelian_groups_up_to(order: int, max_rank: int) -> List[FiniteAbelianGroup]:
    """Nontrivial finite abelian groups of order at most ``order``, by order then factors."""
    found = []

    def extend(chain: List[int], product: int):
        if chain:
            found.append(FiniteAbelianGroup(tuple(chain)))
        if len(chain) == max_rank:
            return
        step = chain[-1] if chain else 1
        d = step if chain else 2
        while product * d <= order:
            extend(chain + [d], product * d)
            d += step

    extend([], 1)
    return sorted(found, key=lambda G: (G.order, G.factors))


@dataclass(frozen=True)
class Surjection:
    target: FiniteAbelianGroup
    # image of each presentation generator
    images: Tuple[Element, ...]

    def __call__(self, w: Word) -> Element:
        value = self.target.zero()
        for letter in w.letters:
            image = self.images[letter.index - 1]
            value = self.target.add(value, image if letter.sign > 0 else self.target.neg(image))
        return value

    def describe(self, names: Sequence[str]) -> str:
        return ", ".join(f"{name} -> {image}" for name, image in zip(names, self.images))


def enumerate_finite_abelian_quotients(
    P: GroupPresentation,
    targets: Sequence[FiniteAbelianGroup],
    order_bound: Optional[int] = None,
    size_bound: Optional[int] = None,
) -> List[Surjection]:
    """
    Every surjection from ``P`` onto each target, found by trying all images
    of the generators in lexicographic order and keeping those that kill the
    relators and generate the target.
    """
    order_bound = settings.quotient_order_bound if order_bound is None else order_bound
    size_bound = settings.orbit_bound if size_bound is None else size_bound
    surjections = []
    for G in targets:
        if G.order > order_bound:
            raise BoundExceededError(f"Target {G} has order {G.order} above bound {order_bound}")
        if G.order**P.generator_count > size_bound:
            raise BoundExceededError(
                f"{G.order}^{P.generator_count} homomorphism candidates exceed bound {size_bound}"
            )
        surjections.extend(_surjections_onto(P, G))
    return surjections


@lru_cache(maxsize=128)
def _surjections_onto(P: GroupPresentation, G: FiniteAbelianGroup) -> Tuple[Surjection, ...]:
    A = exponent_matrix(P.relators, P.generator_count)
    factors = np.array(G.factors, dtype=object)
    found = []
    for images in itertools.product(G.elements, repeat=P.generator_count):
        if A.shape[0] and G.rank:
            values = A @ as_integer_matrix(images, shape=(P.generator_count, G.rank))
            if any((row % factors != 0).any() for row in values):
                continue
        if G.is_generated_by(images):
            found.append(Surjection(G, tuple(images)))
    logger.debug("Found %d surjections onto %s", len(found), G)
    return tuple(found)
