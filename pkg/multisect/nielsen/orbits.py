import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import sympy

from multisect.conf import settings
from multisect.nielsen.tuples import GeneratingTuple, move_elements, moves_for
from multisect.presentations.quotients import Element, FiniteAbelianGroup
from multisect.utils.exceptions import BoundExceededError, ShapeMismatchError

logger = logging.getLogger(__name__)

Elements = Tuple[Element, ...]


@dataclass(frozen=True)
class OrbitPartition:
    """Generating n-tuples of a finite abelian group grouped into Nielsen orbits."""

    group: FiniteAbelianGroup
    length: int
    # orbit id of every generating tuple: the lexicographically least member
    orbit_of: Dict[Elements, Elements] = field(compare=False, repr=False)

    def orbit_id(self, elements: Elements) -> Elements:
        return self.orbit_of[tuple(tuple(e) for e in elements)]

    @property
    def orbits(self) -> Dict[Elements, List[Elements]]:
        grouped: Dict[Elements, List[Elements]] = {}
        for elements, orbit in self.orbit_of.items():
            grouped.setdefault(orbit, []).append(elements)
        return grouped

    @property
    def sizes(self) -> List[int]:
        return sorted(len(members) for members in self.orbits.values())

    def __len__(self):
        return len(self.orbits)


def orbit_enumerate(
    G: FiniteAbelianGroup, n: int, bound: Optional[int] = None
) -> OrbitPartition:
    bound = settings.orbit_bound if bound is None else bound
    if G.order**n > bound:
        raise BoundExceededError(f"|{G}|^{n} = {G.order ** n} exceeds bound {bound}")
    return _orbit_enumerate(G, n)


@lru_cache(maxsize=64)
def _orbit_enumerate(G: FiniteAbelianGroup, n: int) -> OrbitPartition:
    generating = [
        elements
        for elements in itertools.product(G.elements, repeat=n)
        if G.is_generated_by(elements)
    ]
    admissible = set(generating)
    moves = moves_for(n)
    orbit_of: Dict[Elements, Elements] = {}
    for start in generating:
        if start in orbit_of:
            continue
        orbit_of[start] = start
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for move in moves:
                neighbour = move_elements(G, node, move)
                assert neighbour in admissible
                if neighbour not in orbit_of:
                    orbit_of[neighbour] = start
                    queue.append(neighbour)
    partition = OrbitPartition(G, n, orbit_of)
    logger.debug("%s, n=%d: %d generating tuples in orbits %s", G, n, len(orbit_of), partition.sizes)
    return partition


def determinant_invariant(t: GeneratingTuple) -> Tuple[int, ...]:
    """Determinant of the component matrix over Z/p, as the class {d, -d}."""
    p = t.group.prime
    if p is None or len(t) != t.group.rank:
        raise ShapeMismatchError(
            f"Determinant invariant needs n entries of (Z/p)^n, got {len(t)} in {t.group}"
        )
    return _determinant_class(p, t.elements)


@lru_cache(maxsize=65536)
def _determinant_class(p: int, rows: Elements) -> Tuple[int, ...]:
    d = int(sympy.Matrix([list(row) for row in rows]).det(method="bareiss")) % p
    return tuple(sorted({d, -d % p}))
