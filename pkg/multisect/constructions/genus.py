from dataclasses import dataclass
from typing import Optional

from multisect.diagrams.multisection import MultisectionDiagram


@dataclass(frozen=True)
class GenusReport:
    """
    Achieved central-surface genus against the lower bounds readable from
    homology. First homology of the boundary needs at least as many
    generators as the boundary's Heegaard genus, which the central genus bounds.
    """

    achieved: int
    boundary_rank: Optional[int]
    pi1_rank: int

    @property
    def lower_bound(self) -> int:
        return max(self.boundary_rank or 0, self.pi1_rank)

    @property
    def heegaard_lower_bound(self) -> Optional[int]:
        """Bound on the Heegaard genus of M when the boundary is M # -M."""
        if self.boundary_rank is None:
            return None
        return -(-self.boundary_rank // 2)

    @property
    def minimal_certified(self) -> bool:
        return self.achieved == self.lower_bound

    def lines(self):
        yield f"achieved genus {self.achieved}"
        if self.boundary_rank is not None:
            yield f"boundary H1 rank {self.boundary_rank}"
            yield f"input Heegaard genus >= {self.heegaard_lower_bound}"
        yield f"pi1 H1 rank {self.pi1_rank}"
        yield f"lower bound {self.lower_bound}"
        yield f"minimal {'certified' if self.minimal_certified else 'not certified'}"
        yield "Heegaard genus itself is not computed"


def genus_report(d: MultisectionDiagram) -> GenusReport:
    boundary = d.boundary_invariants()
    return GenusReport(
        achieved=d.genus,
        boundary_rank=None if boundary is None else boundary.rank,
        pi1_rank=d.abelian_invariants().rank,
    )
