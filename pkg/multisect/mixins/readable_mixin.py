from typing import Dict, Tuple

from multisect.diagrams.cut_systems import CutSystem, SurfaceModel, read_system
from multisect.freewords import Word
from multisect.presentations.groups import GroupPresentation
from multisect.utils.exceptions import DiagramError

Pair = Tuple[int, int]


class ReadableMixin:
    """
    Readings between the numbered systems of a diagram. ``reading(i, j)`` is
    the list of curves of system ``j`` read against system ``i`` (1-based),
    taken from the stored readings when present.
    """

    surface: SurfaceModel
    systems: Tuple[CutSystem, ...]

    def stored_readings(self) -> Dict[Pair, Tuple[Word, ...]]:
        return {}

    def reading_key(self, i: int, j: int) -> Pair:
        return (i, j)

    def system(self, i: int) -> CutSystem:
        if not 1 <= i <= len(self.systems):
            raise DiagramError(f"No system {i} among {len(self.systems)}")
        return self.systems[i - 1]

    def reading(self, i: int, j: int) -> Tuple[Word, ...]:
        stored = self.stored_readings().get((i, j))
        if stored is not None:
            return stored
        against = self.system(i)
        if not against.readable:
            raise DiagramError({(i, j): [f"System {i} has no standardizer and no stored reading"]})
        return read_system(self.system(j), against)

    def presentation_of_pair(self, i: int, j: int) -> GroupPresentation:
        key = self.reading_key(i, j)
        against = self.system(key[0])
        names = against.dual_names if against.readable else None
        return GroupPresentation(self.surface.genus, self.reading(*key), names)
