import logging
from dataclasses import dataclass
from functools import cached_property

from multisect.diagrams.cut_systems import (
    CutSystem,
    SurfaceModel,
    normalize_standardizer,
    standard_system,
)
from multisect.diagrams.heegaard import GeometricHeegaardDiagram, connected_sum, mirror
from multisect.diagrams.multisection import MultisectionDiagram, reindexed
from multisect.freewords import BUILTIN, FreeAutomorphism, Word, apply, compose, shift
from multisect.presentations.groups import abelianization, verify_free_of_rank
from multisect.utils.checks import preserves_pi1, verified_construction
from multisect.utils.exceptions import ConstructionError

logger = logging.getLogger(__name__)

BISECTION = "bisection"
DOUBLE = "double"


@dataclass(frozen=True)
class DoubledSurfaceContext:
    """
    The genus ``2g`` boundary of a thickened genus ``g`` surface: side 0
    carries letters ``a0_i, b0_i`` (generators ``1..2g``) and side 1 the
    letters ``a1_i, b1_i`` (generators ``2g+1..4g``).
    """

    genus: int

    @property
    def surface(self) -> SurfaceModel:
        return SurfaceModel(2 * self.genus)

    @property
    def rank(self) -> int:
        return 4 * self.genus

    def a0(self, i: int) -> int:
        return 2 * i - 1

    def b0(self, i: int) -> int:
        return 2 * i

    def a1(self, i: int) -> int:
        return 2 * (self.genus + i) - 1

    def b1(self, i: int) -> int:
        return 2 * (self.genus + i)

    def embed(self, w: Word, side: int = 0) -> Word:
        return shift(w, side * 2 * self.genus, self.rank)

    @cached_property
    def tau(self) -> FreeAutomorphism:
        """Exchanges the sides and inverts every letter; an involution fixing no letter."""
        half = 2 * self.genus
        targets = [-(k + half) for k in range(1, half + 1)] + [-k for k in range(1, half + 1)]
        return FreeAutomorphism.relabel(self.rank, targets)

    def transport(self, w: Word) -> Word:
        return apply(self.tau, w)


def _require_standardizer(h: GeometricHeegaardDiagram):
    if h.beta_standardizer is None:
        raise ConstructionError(f"Heegaard diagram {h.name or '?'} has no standardizer")


@verified_construction
def bisection_from_heegaard(h: GeometricHeegaardDiagram) -> MultisectionDiagram:
    """
    Genus ``2g`` bisection of the product of the punctured 3-manifold with an
    interval. Alpha is the a-letters of both sides, beta the doubled cocores
    ``a0_i a1_i^-1, b0_i b1_i^-1`` and gamma the input curves on side 0
    together with their transports to side 1.
    """
    _require_standardizer(h)
    g = h.genus
    ctx = DoubledSurfaceContext(g)
    surface, rank = ctx.surface, ctx.rank

    alpha = standard_system(surface, "alpha")

    beta_curves = [surface.word([ctx.a0(i), -ctx.a1(i)]) for i in range(1, g + 1)]
    beta_curves += [surface.word([ctx.b0(i), -ctx.b1(i)]) for i in range(1, g + 1)]
    images = [Word.generator(rank, k) for k in range(1, rank + 1)]
    inverse_images = list(images)
    for i in range(1, g + 1):
        for side0, side1 in ((ctx.a0(i), ctx.a1(i)), (ctx.b0(i), ctx.b1(i))):
            images[side0 - 1] = surface.word([side0, side1])
            inverse_images[side0 - 1] = surface.word([side0, -side1])
    beta_standardizer = FreeAutomorphism.from_images(rank, images, BUILTIN, inverse_images)
    beta = CutSystem(surface, tuple(beta_curves), beta_standardizer, "beta")

    side0_curves = [ctx.embed(u) for u in h.beta_curves]
    gamma_curves = side0_curves + [ctx.transport(u) for u in side0_curves]
    sigma = FreeAutomorphism.block_sum(h.beta_standardizer, FreeAutomorphism.identity(2 * g))
    mirrored = compose(ctx.tau, compose(sigma, ctx.tau))
    gamma_standardizer = normalize_standardizer(gamma_curves, compose(mirrored, sigma))
    gamma = CutSystem(surface, tuple(gamma_curves), gamma_standardizer, "gamma")

    bisection = MultisectionDiagram(surface, (alpha, beta, gamma), False, (g, g), origin=BISECTION)
    expected = connected_sum(h, mirror(h)).abelian_invariants()
    if bisection.boundary_invariants() != expected:
        raise ConstructionError(
            f"Boundary homology {bisection.boundary_invariants()} differs from {expected}"
        )
    return bisection


def bisection_from_trisection(t: MultisectionDiagram, drop: int) -> MultisectionDiagram:
    """Remove sector ``drop`` of a closed trisection; the remaining two form a bisection of the complement."""
    if not t.closed or len(t.systems) != 3:
        raise ConstructionError("Restriction needs a closed diagram with 3 systems")
    if drop not in (1, 2, 3):
        raise ConstructionError(f"Sector index must be 1, 2 or 3, got {drop}")
    order = [(drop + k) % 3 + 1 for k in range(3)]
    types = [t.claimed_types[(drop + k) % 3] for k in range(2)]
    return reindexed(t, order, False, types, origin="trisection")


def close_boundary(d: MultisectionDiagram) -> MultisectionDiagram:
    """Cap a bounded diagram whose boundary is a connected sum of S1 x S2 by the matching 1-handlebody."""
    if d.closed:
        raise ConstructionError("Diagram is already closed")
    presentation = d.presentation_of_pair(*d.boundary_pair())
    invariants = abelianization(presentation)
    verdict = verify_free_of_rank(presentation, invariants.free_rank)
    if not verdict.verified:
        raise ConstructionError(f"Boundary is not a verified #S1xS2: {verdict}, {invariants}")
    order = list(range(1, len(d.systems) + 1))
    return reindexed(d, order, True, d.claimed_types + (invariants.free_rank,))


def flip_bisection(b: MultisectionDiagram) -> MultisectionDiagram:
    """The same decomposition with its sectors listed in the opposite order."""
    if b.closed:
        raise ConstructionError("Only bounded diagrams can be flipped")
    order = list(range(len(b.systems), 0, -1))
    return reindexed(b, order, False, tuple(reversed(b.claimed_types)), origin="flipped")


@preserves_pi1
@verified_construction
def double_bisection(b: MultisectionDiagram) -> MultisectionDiagram:
    """Closed 4-section of the double: a fourth system parallel to beta closes the diagram."""
    if b.origin != BISECTION or b.closed or len(b.systems) != 3:
        raise ConstructionError("Doubling needs a bounded bisection built from a Heegaard diagram")
    alpha, beta, gamma = b.systems
    delta = beta.relabeled("delta")
    readings = dict(b.readings)
    readings[(1, 4)] = b.reading(1, 2)
    k1, k2 = b.claimed_types
    return MultisectionDiagram(
        b.surface, (alpha, beta, gamma, delta), True, (k1, k2, k2, k1), readings, DOUBLE
    )
