import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple

from multisect.diagrams.cut_systems import (
    CutSystem,
    SurfaceModel,
    normalize_standardizer,
    standard_system,
)
from multisect.freewords import FreeAutomorphism, Word, compose, letter_inverse, shift
from multisect.mixins import PresentableMixin, ReadableMixin
from multisect.presentations.groups import GroupPresentation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeometricHeegaardDiagram(ReadableMixin, PresentableMixin):
    """
    Genus ``g`` Heegaard diagram whose alpha curves are the a-type letters;
    only the beta curves and their standardizer are stored.
    """

    genus: int
    beta_curves: Tuple[Word, ...]
    beta_standardizer: Optional[FreeAutomorphism] = None
    name: str = ""
    lens_parameters: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        object.__setattr__(self, "beta_curves", tuple(self.beta_curves))
        # builds and checks the beta system
        self.beta

    @property
    def surface(self) -> SurfaceModel:
        return SurfaceModel(self.genus)

    @cached_property
    def alpha(self) -> CutSystem:
        return standard_system(self.surface, "alpha")

    @cached_property
    def beta(self) -> CutSystem:
        return CutSystem(self.surface, self.beta_curves, self.beta_standardizer, "beta")

    @property
    def systems(self) -> Tuple[CutSystem, ...]:
        return (self.alpha, self.beta)

    def relators(self) -> Tuple[Word, ...]:
        return self.reading(1, 2)

    def fundamental_group(self) -> GroupPresentation:
        return self.presentation_of_pair(1, 2)


def _standardizer(h: GeometricHeegaardDiagram) -> Optional[FreeAutomorphism]:
    if h.beta_standardizer is None and h.genus == 0:
        return FreeAutomorphism.identity(0)
    return h.beta_standardizer


def connected_sum(
    h1: GeometricHeegaardDiagram, h2: GeometricHeegaardDiagram
) -> GeometricHeegaardDiagram:
    genus = h1.genus + h2.genus
    rank = 2 * genus
    curves = tuple(shift(c, 0, rank) for c in h1.beta_curves)
    curves += tuple(shift(c, h1.surface.rank, rank) for c in h2.beta_curves)
    standardizer = None
    first, second = _standardizer(h1), _standardizer(h2)
    if first is not None and second is not None:
        standardizer = FreeAutomorphism.block_sum(first, second)
    names = [h.name for h in (h1, h2) if h.genus]
    return GeometricHeegaardDiagram(genus, curves, standardizer, " # ".join(names))


def connected_sum_power(h: GeometricHeegaardDiagram, n: int) -> GeometricHeegaardDiagram:
    result = GeometricHeegaardDiagram(0, (), FreeAutomorphism.identity(0))
    for _ in range(n):
        result = connected_sum(result, h)
    return result


def mirror(h: GeometricHeegaardDiagram) -> GeometricHeegaardDiagram:
    """Letter-inverted curves; the standardizer is conjugated by the letter inversion."""
    curves = tuple(letter_inverse(c) for c in h.beta_curves)
    standardizer = None
    if h.beta_standardizer is not None:
        iota = FreeAutomorphism.letter_inversion(h.surface.rank)
        conjugated = compose(iota, compose(h.beta_standardizer, iota))
        standardizer = normalize_standardizer(curves, conjugated)
    name = h.name[1:] if h.name.startswith("-") else f"-{h.name}" if h.name else ""
    return GeometricHeegaardDiagram(h.genus, curves, standardizer, name, h.lens_parameters)


def stabilize(h: GeometricHeegaardDiagram) -> GeometricHeegaardDiagram:
    """Add a handle whose beta curve is the new b-type letter, cancelling the new dual."""
    genus = h.genus + 1
    rank = 2 * genus
    curves = tuple(shift(c, 0, rank) for c in h.beta_curves)
    curves += (Word.generator(rank, rank),)
    standardizer = None
    if h.beta_standardizer is not None:
        standardizer = FreeAutomorphism.block_sum(h.beta_standardizer, FreeAutomorphism.identity(2))
    return GeometricHeegaardDiagram(genus, curves, standardizer, h.name, h.lens_parameters)
