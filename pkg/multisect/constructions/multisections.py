import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from multisect.constructions.bisections import BISECTION, bisection_from_heegaard
from multisect.constructions.heegaard import sphere_bundle_sum_diagram
from multisect.diagrams.cut_systems import parallel, read_system
from multisect.diagrams.multisection import MultisectionDiagram, reindexed
from multisect.freewords import canonical_cyclic_form, cyclic_reduce
from multisect.presentations.groups import (
    GroupPresentation,
    abelianization,
    tietze_simplify,
    verify_free_of_rank,
)
from multisect.utils.checks import preserves_pi1, verified_construction
from multisect.utils.exceptions import (
    BoundaryMismatchError,
    ConstructionError,
    DiagramError,
    MergeRefusedError,
)

logger = logging.getLogger(__name__)

GLUED = "glued"
CAPPED = "capped"
CAP = "cap"


@preserves_pi1
def insert_parallel_sectors(
    d: MultisectionDiagram, position: int = 2, count: int = 1
) -> MultisectionDiagram:
    """
    Insert ``count`` parallel copies of system ``position`` right after it.
    Each new sector reads empty words, so its type is the full genus.
    """
    s = len(d.systems)
    if count < 0:
        raise ConstructionError(f"Cannot insert {count} copies")
    if d.closed and not 1 <= position <= s:
        raise ConstructionError(f"Position must lie in 1..{s}, got {position}")
    if not d.closed and not 1 < position < s:
        raise ConstructionError(f"Position must be an interior system 2..{s - 1}, got {position}")
    if count == 0:
        return d
    label = d.system(position).label
    order = list(range(1, position + 1)) + [position] * count + list(range(position + 1, s + 1))
    labels = [d.system(i).label for i in order]
    for k in range(1, count + 1):
        labels[position - 1 + k] = f"{label}.{k}"
    types = (
        d.claimed_types[: position - 1] + (d.genus,) * count + d.claimed_types[position - 1 :]
    )
    return reindexed(d, order, d.closed, types, labels=labels)


@dataclass(frozen=True)
class GluePlan:
    """
    Copies of one bisection glued in a chain, alternately along the alpha
    handlebody (``H1``) and the gamma handlebody (``H3``), with an optional cap.
    """

    copies: Tuple[MultisectionDiagram, ...]
    cap: Optional[MultisectionDiagram] = None

    def __post_init__(self):
        object.__setattr__(self, "copies", tuple(self.copies))
        if not self.copies:
            raise ConstructionError("A glue plan needs at least one copy")
        first = self.copies[0]
        if first.origin != BISECTION or first.closed or len(first.systems) != 3:
            raise ConstructionError("Only bisections built from a Heegaard diagram can be glued")
        if any(copy.systems != first.systems for copy in self.copies[1:]):
            raise ConstructionError("All copies must come from the same construction")

    @classmethod
    def auto(cls, b: MultisectionDiagram, m: int, capped: bool = True) -> "GluePlan":
        """``m`` copies of ``b``; capped by ``b`` itself for odd ``m``, by the sphere-bundle piece for even ``m``."""
        if m < 1:
            raise ConstructionError(f"Need at least one copy, got {m}")
        cap = None
        if capped:
            cap = b if m % 2 else sphere_bundle_cap(b)
        return cls((b,) * m, cap)

    @property
    def interfaces(self) -> Tuple[str, ...]:
        return tuple("H1" if k % 2 == 0 else "H3" for k in range(2, len(self.copies) + 1))


def sphere_bundle_cap(b: MultisectionDiagram) -> MultisectionDiagram:
    """
    Bisection of the thickened punctured #_g S1 x S2 drawn in the frame of
    ``b``: gamma, beta, gamma.
    """
    if b.origin != BISECTION:
        raise ConstructionError("The sphere-bundle cap is drawn in the frame of a bisection")
    alpha, beta, gamma = b.systems
    k1, k2 = b.claimed_types
    cap = reindexed(b, [3, 2, 3], False, (k2, k2), origin=CAP, labels=["gamma", "beta", "gamma'"])
    reference = bisection_from_heegaard(sphere_bundle_sum_diagram(b.genus // 2))
    if cap.claimed_types != reference.claimed_types or (
        cap.boundary_invariants() != reference.boundary_invariants()
    ):
        raise ConstructionError("Sphere-bundle cap does not match its reference bisection")
    return cap


def _chain(b: MultisectionDiagram, m: int) -> MultisectionDiagram:
    alpha, beta, gamma = b.systems
    k1, k2 = b.claimed_types
    systems = [gamma.relabeled("gamma@1"), beta.relabeled("beta@1"), alpha.relabeled("alpha@1")]
    types = [k2, k1]
    for k in range(2, m + 1):
        if k % 2 == 0:
            systems += [beta.relabeled(f"beta@{k}"), gamma.relabeled(f"gamma@{k}")]
            types += [k1, k2]
        else:
            systems += [beta.relabeled(f"beta@{k}"), alpha.relabeled(f"alpha@{k}")]
            types += [k2, k1]
    return MultisectionDiagram(b.surface, tuple(systems), False, tuple(types), origin=GLUED)


@verified_construction
def glue_bisections(plan: GluePlan) -> MultisectionDiagram:
    """
    Bounded diagram of the chain of copies (2m sectors). With a cap, the
    closed diagram (2m + 2 sectors) rotated to start at the first alpha system.
    """
    b = plan.copies[0]
    glued = _chain(b, len(plan.copies))
    logger.info("Glued %d copies along %s", len(plan.copies), ", ".join(plan.interfaces) or "-")
    if plan.cap is None:
        return glued
    capped = cap_off(glued, plan.cap)
    start = next(i for i, label in enumerate(capped.labels(), start=1) if label.startswith("alpha"))
    s = len(capped.systems)
    order = [(start - 1 + k) % s + 1 for k in range(s)]
    types = capped.claimed_types[start - 1 :] + capped.claimed_types[: start - 1]
    rotated = reindexed(capped, order, True, types)
    if rotated.abelian_invariants() != b.abelian_invariants():
        raise ConstructionError("Capped gluing changed the fundamental group")
    return rotated


def _invariant_list(invariants) -> List[int]:
    return list(invariants.torsion) + [0] * invariants.free_rank


def cap_off(d1: MultisectionDiagram, d2: MultisectionDiagram) -> MultisectionDiagram:
    """
    Close ``d1`` with ``d2`` along their common boundary: the first system of
    ``d2`` must match the last of ``d1`` and the last of ``d2`` the first of ``d1``.
    """
    if d1.closed or d2.closed:
        raise ConstructionError("Both diagrams must be bounded")
    if d1.surface != d2.surface:
        raise ConstructionError("Diagrams live on different central surfaces")
    left, right = d1.boundary_invariants(), d2.boundary_invariants()
    if left != right:
        raise BoundaryMismatchError(_invariant_list(left), _invariant_list(right))
    if not parallel(d2.systems[0], d1.systems[-1]) or not parallel(d2.systems[-1], d1.systems[0]):
        raise ConstructionError("Boundary systems of the two diagrams are not parallel")
    middle = [system.relabeled(f"{system.label}@{CAP}") for system in d2.systems[1:-1]]
    systems = d1.systems + tuple(middle)
    return MultisectionDiagram(
        d1.surface,
        systems,
        True,
        d1.claimed_types + d2.claimed_types,
        dict(d1.readings),
        CAPPED,
    )


def _neighbours(d: MultisectionDiagram, r: int) -> Tuple[int, int]:
    s = len(d.systems)
    if d.closed:
        if not 1 <= r <= s:
            raise MergeRefusedError(f"Interface must lie in 1..{s}, got {r}")
        if s <= 3:
            raise MergeRefusedError("A closed diagram keeps at least 3 systems")
        return (r - 2) % s + 1, r % s + 1
    if not 1 < r < s:
        raise MergeRefusedError(f"Interface must be an interior system 2..{s - 1}, got {r}")
    if s <= 3:
        raise MergeRefusedError("A bounded diagram keeps at least 3 systems")
    return r - 1, r + 1


def _reads_as_letters(d: MultisectionDiagram, i: int, j: int) -> bool:
    try:
        return all(len(w) <= 1 for w in d.reading(i, j))
    except DiagramError:
        return False


def _redundant(d: MultisectionDiagram, r: int) -> bool:
    """Whether the curves of system ``r`` are consequences of the other systems."""
    s = len(d.systems)
    base = next((i for i in range(1, s + 1) if i != r and d.system(i).readable), None)
    if base is None:
        return False
    others = [w for j in range(1, s + 1) if j not in (r, base) for w in d.reading(base, j)]
    result = tietze_simplify(GroupPresentation(d.genus, tuple(others)))
    relators = {canonical_cyclic_form(w) for w in result.presentation.relators}
    for w in d.reading(base, r):
        rewritten = cyclic_reduce(result.rewrite(w))
        if not rewritten.is_identity() and canonical_cyclic_form(rewritten) not in relators:
            return False
    return True


def _merge_allowed(d: MultisectionDiagram, r: int) -> bool:
    previous, following = _neighbours(d, r)
    removed = d.system(r)
    left, right = d.system(previous), d.system(following)
    if parallel(removed, left) or parallel(removed, right):
        return True
    # the removed curves must survive elsewhere or the fundamental group changes
    survives = any(parallel(removed, d.system(i)) for i in range(1, len(d.systems) + 1) if i != r)
    if parallel(left, right) and survives:
        return True
    return (
        _reads_as_letters(d, previous, r)
        and _reads_as_letters(d, following, r)
        and _reads_as_letters(d, previous, following)
        and _redundant(d, r)
    )


def mergeable_interfaces(d: MultisectionDiagram) -> List[int]:
    found = []
    for r in range(1, len(d.systems) + 1):
        try:
            if _merge_allowed(d, r):
                found.append(r)
        except MergeRefusedError:
            continue
    return found


@preserves_pi1
def merge_adjacent_sectors(d: MultisectionDiagram, r: int) -> MultisectionDiagram:
    """Drop interface system ``r`` and regard the two sectors around it as one."""
    if not _merge_allowed(d, r):
        raise MergeRefusedError(
            f"Sectors around system {r} ({d.system(r).label}) do not form a 1-handlebody"
        )
    previous, following = _neighbours(d, r)
    left, right = d.system(previous), d.system(following)
    merged = GroupPresentation(d.genus, read_system(right, left))
    invariants = abelianization(merged)
    verdict = verify_free_of_rank(merged, invariants.free_rank)
    if not verdict.verified:
        raise MergeRefusedError(f"Merged sector is not a verified 1-handlebody: {verdict}")

    order = [i for i in range(1, len(d.systems) + 1) if i != r]
    old_types = dict(zip(d.sector_pairs(), d.claimed_types))
    s = len(order)
    pairs = [(order[k], order[(k + 1) % s]) for k in range(s if d.closed else s - 1)]
    types = [old_types.get(pair, invariants.free_rank) for pair in pairs]
    logger.info("Merged across system %d into a sector of type %d", r, invariants.free_rank)
    return reindexed(d, order, d.closed, types)
