import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, Tuple

from multisect.freewords import (
    FreeAutomorphism,
    Word,
    apply,
    canonical_cyclic_form,
    compose,
    cyclic_reduce,
    substitute,
)
from multisect.presentations.matrices import exponent_matrix, smith_normal_form
from multisect.utils.exceptions import DiagramError, ValidationError
from multisect.utils.pair_exceptions import KeyedListExceptionHandler

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SurfaceModel:
    """
    Free group of the once-punctured genus ``G`` surface: generator ``2i - 1``
    is the a-type letter of the i-th symplectic pair, ``2i`` its b-type partner.
    """

    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValidationError({"genus": ["Genus must be non-negative"]})

    @property
    def rank(self) -> int:
        return 2 * self.genus

    def a(self, i: int) -> int:
        return 2 * i - 1

    def b(self, i: int) -> int:
        return 2 * i

    def pair_of(self, generator: int) -> int:
        return (generator + 1) // 2

    def partner(self, generator: int) -> int:
        return generator + 1 if generator % 2 else generator - 1

    def generator_name(self, generator: int) -> str:
        kind = "a" if generator % 2 else "b"
        return f"{kind}{self.pair_of(generator)}"

    def word(self, values: Sequence[int]) -> Word:
        return Word.from_ints(self.rank, values)


@dataclass(frozen=True)
class CutSystem:
    """
    ``G`` curve words on the central surface. With a standardizer, each curve
    is carried to a distinct positive generator (the standard letters); the
    remaining generators, in basis order, are the system's dual generators.
    """

    surface: SurfaceModel
    curves: Tuple[Word, ...]
    standardizer: Optional[FreeAutomorphism] = None
    label: str = ""

    def __post_init__(self):
        errors = {}
        object.__setattr__(self, "curves", tuple(self.curves))
        if len(self.curves) != self.surface.genus:
            raise ValidationError(
                {"curves": [f"Expected {self.surface.genus} curves, got {len(self.curves)}"]}
            )
        reduced = []
        for position, curve in enumerate(self.curves, start=1):
            with KeyedListExceptionHandler(f"curve {position}", errors):
                if curve.rank != self.surface.rank:
                    raise ValidationError(f"rank {curve.rank}, surface rank {self.surface.rank}")
                curve = cyclic_reduce(curve)
                if curve.is_identity():
                    raise ValidationError("curve word is trivial")
            reduced.append(curve)
        if errors:
            raise ValidationError({self.label or "system": errors})
        object.__setattr__(self, "curves", tuple(reduced))

        form = smith_normal_form(exponent_matrix(self.curves, self.surface.rank))
        if form.rank != self.surface.genus or form.invariant_factors:
            errors["homology"] = ["Curves are not part of a basis of first homology"]

        if self.standardizer is not None:
            with KeyedListExceptionHandler("standardizer", errors):
                self._check_standardizer()
        if errors:
            raise ValidationError({self.label or "system": errors})

    def _check_standardizer(self):
        if self.standardizer.rank != self.surface.rank:
            raise ValidationError(f"standardizer has rank {self.standardizer.rank}")
        letters = []
        for position, curve in enumerate(self.curves, start=1):
            image = cyclic_reduce(apply(self.standardizer, curve)).ints()
            if len(image) != 1 or image[0] < 0:
                raise ValidationError(f"curve {position} is not carried to a positive letter")
            letters.append(image[0])
        if len(set(letters)) != len(letters):
            raise ValidationError("standard letters are not distinct")

    @property
    def genus(self) -> int:
        return self.surface.genus

    @property
    def readable(self) -> bool:
        return self.standardizer is not None

    @cached_property
    def standard_letters(self) -> Tuple[int, ...]:
        self._require_standardizer()
        return tuple(
            cyclic_reduce(apply(self.standardizer, curve)).ints()[0] for curve in self.curves
        )

    @cached_property
    def dual_generators(self) -> Tuple[int, ...]:
        standard = set(self.standard_letters)
        return tuple(g for g in range(1, self.surface.rank + 1) if g not in standard)

    @cached_property
    def dual_names(self) -> Tuple[str, ...]:
        names = []
        for g in self.dual_generators:
            kind = "y" if g % 2 else "x"
            names.append(f"{kind}{self.surface.pair_of(g)}")
        return tuple(names)

    @cached_property
    def _projection_images(self) -> Tuple[Tuple[int, ...], ...]:
        position = {g: k for k, g in enumerate(self.dual_generators, start=1)}
        return tuple(
            (position[g],) if g in position else () for g in range(1, self.surface.rank + 1)
        )

    def _require_standardizer(self):
        if self.standardizer is None:
            raise DiagramError(f"System {self.label or '?'} has no standardizer")

    def lift(self, w: Word) -> Word:
        """Word in the dual generators carried back to the surface by the inverse standardizer."""
        self._require_standardizer()
        if self.standardizer.is_identity():
            inverse = self.standardizer
        elif self.standardizer.inverse is not None:
            inverse = self.standardizer.inverse
        else:
            raise DiagramError(f"System {self.label or '?'} records no inverse standardizer")
        images = [(g,) for g in self.dual_generators]
        lifted = Word.from_ints(self.surface.rank, substitute(w.ints(), images))
        return apply(inverse, lifted)

    def relabeled(self, label: str) -> "CutSystem":
        return CutSystem(self.surface, self.curves, self.standardizer, label)

    def parallel_to(self, other: "CutSystem") -> bool:
        return parallel(self, other)


def project(w: Word, system: CutSystem) -> Word:
    """
    Image of a surface word in the free group on the system's dual generators:
    standardize, delete the standard letters, rename the survivors.
    """
    system._require_standardizer()
    standardized = apply(system.standardizer, w)
    return Word.from_ints(
        system.genus, substitute(standardized.ints(), system._projection_images)
    )


def read_against(curve: Word, system: CutSystem) -> Word:
    return cyclic_reduce(project(curve, system))


def read_system(curves: CutSystem, against: CutSystem) -> Tuple[Word, ...]:
    return tuple(read_against(curve, against) for curve in curves.curves)


def parallel(first: CutSystem, second: CutSystem) -> bool:
    """Whether two systems consist of the same curves up to order and orientation."""
    return sorted(canonical_cyclic_form(c) for c in first.curves) == sorted(
        canonical_cyclic_form(c) for c in second.curves
    )


def normalize_standardizer(
    curves: Sequence[Word], standardizer: FreeAutomorphism
) -> FreeAutomorphism:
    """Post-compose with generator inversions so every curve lands on a positive letter."""
    negative = []
    for curve in curves:
        image = cyclic_reduce(apply(standardizer, curve)).ints()
        if len(image) == 1 and image[0] < 0:
            negative.append(-image[0])
    if not negative:
        return standardizer
    return compose(FreeAutomorphism.invert_generators(standardizer.rank, negative), standardizer)


def standard_system(surface: SurfaceModel, label: str = "alpha") -> CutSystem:
    """The a-type letters with the identity standardizer."""
    curves = tuple(surface.word([surface.a(i)]) for i in range(1, surface.genus + 1))
    return CutSystem(surface, curves, FreeAutomorphism.identity(surface.rank), label)
