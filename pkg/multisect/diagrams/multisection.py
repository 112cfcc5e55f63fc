import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from multisect.diagrams.cut_systems import CutSystem, SurfaceModel, read_system
from multisect.freewords import Word, canonical_cyclic_form
from multisect.mixins import PresentableMixin, ReadableMixin
from multisect.presentations.groups import (
    AbelianInvariants,
    GroupPresentation,
    SectorVerdict,
    VerdictStatus,
    abelianization,
    verify_free_of_rank,
)
from multisect.utils.exceptions import ValidationError
from multisect.utils.pair_exceptions import PairExceptionHandler

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]
USER = "user"


@dataclass(frozen=True)
class MultisectionDiagram(ReadableMixin, PresentableMixin):
    """
    Ordered cut systems on one central surface. Consecutive systems bound the
    sectors; a closed diagram also pairs the last system with the first, a
    bounded one keeps that pair as the Heegaard diagram of the boundary.
    """

    surface: SurfaceModel
    systems: Tuple[CutSystem, ...]
    closed: bool
    claimed_types: Tuple[int, ...]
    # curves of system j read against system i, keyed (i, j)
    readings: Dict[Pair, Tuple[Word, ...]] = field(default_factory=dict, compare=False, repr=False)
    origin: str = USER

    def __post_init__(self):
        object.__setattr__(self, "systems", tuple(self.systems))
        object.__setattr__(self, "claimed_types", tuple(self.claimed_types))
        errors = {}
        if len(self.systems) < 3:
            errors["systems"] = [f"Need at least 3 systems, got {len(self.systems)}"]
        if any(system.surface != self.surface for system in self.systems):
            errors.setdefault("systems", []).append("Systems live on different surfaces")
        if len(self.claimed_types) != len(self.sector_pairs()):
            errors["claimed_types"] = [
                f"Expected {len(self.sector_pairs())} types, got {len(self.claimed_types)}"
            ]
        elif any(not 0 <= k <= self.surface.genus for k in self.claimed_types):
            errors["claimed_types"] = [f"Types must lie in 0..{self.surface.genus}"]
        if errors:
            raise ValidationError(errors)
        object.__setattr__(self, "readings", self._complete_readings(dict(self.readings)))

    def _required_keys(self) -> List[Pair]:
        keys = [self.reading_key(*pair) for pair in self.sector_pairs()]
        keys += [(1, j) for j in range(2, len(self.systems) + 1)]
        return list(dict.fromkeys(keys))

    def _complete_readings(self, readings: Dict[Pair, Tuple[Word, ...]]):
        errors = {}
        for (i, j), words in list(readings.items()):
            words = tuple(words)
            readings[(i, j)] = words
            against = self.system(i)
            if not against.readable:
                continue
            expected = read_system(self.system(j), against)
            if [canonical_cyclic_form(w) for w in words] != [
                canonical_cyclic_form(w) for w in expected
            ]:
                errors[(i, j)] = ["Stored reading disagrees with the standardizers"]
        if errors:
            raise ValidationError(errors)
        for i, j in self._required_keys():
            if (i, j) not in readings and self.system(i).readable:
                readings[(i, j)] = read_system(self.system(j), self.system(i))
        return dict(sorted(readings.items()))

    @property
    def genus(self) -> int:
        return self.surface.genus

    @property
    def sector_count(self) -> int:
        return len(self.sector_pairs())

    @property
    def realizability_assumed(self) -> bool:
        """Curve words of user-supplied diagrams are trusted to be disjoint simple curves."""
        return self.origin == USER

    def stored_readings(self) -> Dict[Pair, Tuple[Word, ...]]:
        return self.readings

    def sector_pairs(self) -> List[Pair]:
        s = len(self.systems)
        if self.closed:
            return [(i, i % s + 1) for i in range(1, s + 1)]
        return [(i, i + 1) for i in range(1, s)]

    def boundary_pair(self) -> Optional[Pair]:
        if self.closed:
            return None
        return (len(self.systems), 1)

    def reading_key(self, i: int, j: int) -> Pair:
        if not self.closed and (i, j) == self.boundary_pair():
            return (1, i)
        return (i, j)

    def claimed_type(self, pair: Pair) -> int:
        return self.claimed_types[self.sector_pairs().index(pair)]

    def fundamental_group(self) -> GroupPresentation:
        return pi1_of_diagram(self)

    def boundary_invariants(self) -> Optional[AbelianInvariants]:
        pair = self.boundary_pair()
        if pair is None:
            return None
        return abelianization(self.presentation_of_pair(*pair))

    def labels(self) -> Tuple[str, ...]:
        return tuple(system.label for system in self.systems)


def sector_pairs(d: MultisectionDiagram) -> List[Pair]:
    return d.sector_pairs()


def boundary_pair(d: MultisectionDiagram) -> Optional[Pair]:
    return d.boundary_pair()


def presentation_of_pair(d: MultisectionDiagram, i: int, j: int) -> GroupPresentation:
    return d.presentation_of_pair(i, j)


def pi1_of_diagram(d: MultisectionDiagram) -> GroupPresentation:
    """Duals of system 1 modulo every other system read against it."""
    relators = []
    for j in range(2, len(d.systems) + 1):
        relators.extend(d.reading(1, j))
    first = d.system(1)
    names = first.dual_names if first.readable else None
    return GroupPresentation(d.genus, tuple(relators), names)


def _reverse_presentation(d: MultisectionDiagram, i: int, j: int) -> Optional[GroupPresentation]:
    against = d.system(j)
    if (j, i) not in d.readings and not against.readable:
        return None
    names = against.dual_names if against.readable else None
    return GroupPresentation(d.genus, d.reading(j, i), names)


def verify_sector(
    d: MultisectionDiagram, pair: Pair, k: int, budget: Optional[int] = None
) -> SectorVerdict:
    """
    Verdict on one sector. A pair that Tietze simplification leaves undecided
    is read again from the side of its second system.
    """
    verdict = verify_free_of_rank(d.presentation_of_pair(*pair), k, budget)
    if verdict.status is not VerdictStatus.UNKNOWN:
        return verdict
    reverse = _reverse_presentation(d, *pair)
    if reverse is None:
        return verdict
    flipped = verify_free_of_rank(reverse, k, budget)
    if flipped.verified:
        logger.debug("Sector %s verified against system %d", pair, pair[1])
        return flipped
    return verdict


@dataclass
class ValidationReport:
    verdicts: Dict[Pair, SectorVerdict] = field(default_factory=dict)
    boundary: Optional[AbelianInvariants] = None
    errors: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.errors and all(v.verified for v in self.verdicts.values())


def validate(d: MultisectionDiagram, budget: Optional[int] = None) -> ValidationReport:
    """
    Check every sector pair is a Heegaard diagram of the claimed connected sum
    of S1 x S2, and report the homology of the boundary for bounded diagrams.
    """
    report = ValidationReport()
    for pair, k in zip(d.sector_pairs(), d.claimed_types):
        with PairExceptionHandler(pair, report.errors):
            report.verdicts[pair] = verify_sector(d, pair, k, budget)
    if d.boundary_pair() is not None:
        with PairExceptionHandler(d.boundary_pair(), report.errors):
            report.boundary = d.boundary_invariants()
    logger.info(
        "Validated %d sectors: %s",
        len(report.verdicts),
        ", ".join(f"{pair}={verdict}" for pair, verdict in report.verdicts.items()),
    )
    return report


def reindexed(
    d: MultisectionDiagram,
    order: Sequence[int],
    closed: bool,
    claimed_types: Sequence[int],
    origin: Optional[str] = None,
    labels: Optional[Sequence[str]] = None,
) -> MultisectionDiagram:
    """
    New diagram on the systems ``order`` (1-based indices into ``d``), carrying
    over stored readings between systems that survive.
    """
    systems = [d.system(i) for i in order]
    if labels is not None:
        systems = [system.relabeled(label) for system, label in zip(systems, labels)]
    position = {}
    for new, old in enumerate(order, start=1):
        position.setdefault(old, new)
    readings = {}
    for (i, j), words in d.readings.items():
        if i in position and j in position:
            readings[(position[i], position[j])] = words
    return MultisectionDiagram(
        d.surface,
        tuple(systems),
        closed,
        tuple(claimed_types),
        readings,
        d.origin if origin is None else origin,
    )
