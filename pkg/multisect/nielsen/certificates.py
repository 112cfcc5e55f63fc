import enum
import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from multisect.conf import settings
from multisect.diagrams.cut_systems import project
from multisect.diagrams.multisection import MultisectionDiagram, pi1_of_diagram
from multisect.freewords import Word, format_word, free_reduce
from multisect.nielsen.orbits import determinant_invariant, orbit_enumerate
from multisect.nielsen.tuples import (
    Conjugation,
    GeneratingTuple,
    Step,
    moves_for,
    step_ints,
    word_move,
)
from multisect.presentations.groups import GroupPresentation, abelianization, tietze_simplify
from multisect.presentations.quotients import (
    Element,
    FiniteAbelianGroup,
    Surjection,
    abelian_groups_up_to,
    enumerate_finite_abelian_quotients,
)
from multisect.utils.exceptions import BoundExceededError, DiagramError, ShapeMismatchError

logger = logging.getLogger(__name__)

WordTuple = Tuple[Word, ...]

DETERMINANT = "determinant"
ORBIT = "orbit"


class CertificateVerdict(enum.Enum):
    DISTINCT = "Distinct"
    SAME_ORBIT = "SameOrbit"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class QuotientWitness:
    """A surjection onto a finite abelian group separating the images of two tuples."""

    surjection: Surjection
    images: Tuple[Tuple[Element, ...], Tuple[Element, ...]]
    invariants: Tuple[tuple, tuple]
    method: str

    @property
    def group(self) -> FiniteAbelianGroup:
        return self.surjection.target

    def replay(self, P: GroupPresentation, tuples: Tuple[WordTuple, WordTuple]) -> bool:
        G = self.group
        if any(self.surjection(r) != G.zero() for r in P.relators):
            return False
        if not G.is_generated_by(self.surjection.images):
            return False
        images = tuple(tuple(self.surjection(w) for w in t) for t in tuples)
        if images != self.images:
            return False
        invariants = tuple(_tuple_invariant(G, elements, self.method) for elements in images)
        return invariants == self.invariants and invariants[0] != invariants[1]


def _tuple_invariant(G: FiniteAbelianGroup, elements, method: str) -> tuple:
    if method == DETERMINANT:
        return determinant_invariant(GeneratingTuple(G, elements))
    return orbit_enumerate(G, len(elements)).orbit_id(elements)


@dataclass(frozen=True)
class NielsenCertificate:
    verdict: CertificateVerdict
    # simplified presentation the tuples below are written in
    presentation: GroupPresentation
    tuples: Tuple[WordTuple, WordTuple]
    moves: Tuple[Step, ...] = ()
    witness: Optional[QuotientWitness] = None
    trace: Tuple[str, ...] = ()

    def replay(self) -> bool:
        if self.verdict is CertificateVerdict.DISTINCT:
            return self.witness is not None and self.witness.replay(self.presentation, self.tuples)
        if self.verdict is CertificateVerdict.SAME_ORBIT:
            current = self.tuples[0]
            for step in self.moves:
                current = word_move(current, step)
            return current == self.tuples[1]
        return True


def _check_shapes(P: GroupPresentation, t1: Sequence[Word], t2: Sequence[Word]):
    if len(t1) != len(t2):
        raise ShapeMismatchError(f"Tuples have lengths {len(t1)} and {len(t2)}")
    for w in list(t1) + list(t2):
        if w.rank != P.generator_count:
            raise ShapeMismatchError(
                f"Word {w} has rank {w.rank}, presentation has {P.generator_count} generators"
            )


def search_moves(
    t1: WordTuple,
    t2: WordTuple,
    rank: int,
    budget: Optional[int] = None,
    max_length: Optional[int] = None,
) -> Optional[Tuple[Step, ...]]:
    """
    Breadth-first search in the free group of ``rank`` for a sequence of
    Nielsen moves and whole-tuple conjugations carrying ``t1`` to ``t2``.
    Visits at most ``budget`` tuples, none with a word longer than ``max_length``.
    """
    budget = settings.move_search_budget if budget is None else budget
    max_length = settings.max_move_word_length if max_length is None else max_length
    start = tuple(w.ints() for w in t1)
    goal = tuple(w.ints() for w in t2)
    if start == goal:
        return ()
    steps = list(moves_for(len(start)))
    steps += [Conjugation(sign * k) for k in range(1, rank + 1) for sign in (1, -1)]

    parent = {start: None}
    queue = deque([start])
    while queue and len(parent) < budget:
        node = queue.popleft()
        for step in steps:
            following = step_ints(node, step)
            if following in parent or any(len(w) > max_length for w in following):
                continue
            parent[following] = (node, step)
            if following == goal:
                path = []
                while parent[following] is not None:
                    following, step = parent[following]
                    path.append(step)
                logger.debug("Move search connected the tuples in %d steps", len(path))
                return tuple(reversed(path))
            queue.append(following)
    logger.debug("Move search gave up after %d tuples", len(parent))
    return None


def _quotient_search(
    P: GroupPresentation, t1: WordTuple, t2: WordTuple, bound: int
) -> Optional[QuotientWitness]:
    n = len(t1)
    invariants = abelianization(P)
    size_bound = settings.orbit_bound
    for G in abelian_groups_up_to(bound, n):
        if not G.is_quotient_of(invariants):
            continue
        method = DETERMINANT if G.prime is not None and G.rank == n else ORBIT
        if method == ORBIT and G.order**n > size_bound:
            logger.debug("Skipping %s: %d-tuples exceed bound %d", G, n, size_bound)
            continue
        try:
            surjections = enumerate_finite_abelian_quotients(P, [G], order_bound=bound)
        except BoundExceededError as e:
            logger.debug("Skipping %s: %s", G, e)
            continue
        for surjection in surjections:
            images = tuple(tuple(surjection(w) for w in t) for t in (t1, t2))
            if not all(G.is_generated_by(elements) for elements in images):
                continue
            classes = tuple(_tuple_invariant(G, elements, method) for elements in images)
            if classes[0] != classes[1]:
                logger.info("Separated by %s (%s): %s vs %s", G, method, *classes)
                return QuotientWitness(surjection, images, classes, method)
    return None


def distinguish(
    P: GroupPresentation,
    t1: Sequence[Word],
    t2: Sequence[Word],
    bound: Optional[int] = None,
) -> NielsenCertificate:
    """
    Compare the Nielsen classes of two generating tuples of ``P``. Distinct
    comes with a separating finite abelian quotient, SameOrbit with a move
    sequence in the free group; anything else is Inconclusive.
    """
    bound = settings.quotient_order_bound if bound is None else bound
    _check_shapes(P, t1, t2)
    t1 = tuple(free_reduce(w) for w in t1)
    t2 = tuple(free_reduce(w) for w in t2)
    if t1 == t2:
        return NielsenCertificate(CertificateVerdict.SAME_ORBIT, P, (t1, t2))

    simplified = tietze_simplify(P)
    Q = simplified.presentation
    u1 = tuple(simplified.rewrite(w) for w in t1)
    u2 = tuple(simplified.rewrite(w) for w in t2)
    tuples = (u1, u2)

    witness = _quotient_search(Q, u1, u2, bound)
    if witness is not None:
        return NielsenCertificate(
            CertificateVerdict.DISTINCT, Q, tuples, witness=witness, trace=simplified.trace
        )
    moves = search_moves(u1, u2, Q.generator_count)
    if moves is not None:
        return NielsenCertificate(
            CertificateVerdict.SAME_ORBIT, Q, tuples, moves=moves, trace=simplified.trace
        )
    return NielsenCertificate(CertificateVerdict.INCONCLUSIVE, Q, tuples, trace=simplified.trace)


def spine_tuple(d: MultisectionDiagram, sector: int) -> WordTuple:
    """
    Generators of the sector's handlebody group, carried to the surface and
    written in the duals of system 1.
    """
    pairs = d.sector_pairs()
    if not 1 <= sector <= len(pairs):
        raise DiagramError(f"Sector must lie in 1..{len(pairs)}, got {sector}")
    i, j = pairs[sector - 1]
    result = tietze_simplify(d.presentation_of_pair(i, j))
    if not result.presentation.is_free():
        raise DiagramError(f"Sector {sector} does not simplify to a free group")
    own, first = d.system(i), d.system(1)
    if not first.readable:
        raise DiagramError("System 1 has no standardizer")
    return tuple(project(own.lift(w), first) for w in result.generators)


def flip_check(b: MultisectionDiagram) -> NielsenCertificate:
    """Compare the spines of the two sectors of a bisection inside its fundamental group."""
    if b.closed or len(b.systems) != 3:
        raise DiagramError("Flip check needs a bounded diagram with two sectors")
    return distinguish(pi1_of_diagram(b), spine_tuple(b, 1), spine_tuple(b, 2))


def _format_tuple(t: WordTuple, names) -> str:
    return "(" + ", ".join(format_word(w, names) for w in t) + ")"


def _format_elements(elements) -> str:
    return "(" + ", ".join("(" + ",".join(map(str, e)) + ")" for e in elements) + ")"


def format_certificate(cert: NielsenCertificate) -> str:
    names = cert.presentation.names()
    lines = [
        f"verdict: {cert.verdict}",
        f"presentation: {cert.presentation}",
        f"tuple 1: {_format_tuple(cert.tuples[0], names)}",
        f"tuple 2: {_format_tuple(cert.tuples[1], names)}",
    ]
    if cert.witness is not None:
        witness = cert.witness
        lines += [
            f"quotient: {witness.group}",
            f"map: {witness.surjection.describe(names)}",
            f"images 1: {_format_elements(witness.images[0])}",
            f"images 2: {_format_elements(witness.images[1])}",
            f"{witness.method} 1: {witness.invariants[0]}",
            f"{witness.method} 2: {witness.invariants[1]}",
        ]
    if cert.verdict is CertificateVerdict.SAME_ORBIT:
        lines.append("moves: " + (" ".join(str(step) for step in cert.moves) or "(none)"))
    lines.append(f"replay: {'ok' if cert.replay() else 'FAILED'}")
    return "\n".join(lines) + "\n"
