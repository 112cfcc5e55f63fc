import enum
import logging
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence, Tuple

from multisect.conf import settings
from multisect.freewords import (
    Word,
    canonical_cyclic_form,
    cyclic_ints,
    cyclic_reduce,
    format_word,
    parse_word,
    reduce_ints,
    substitute,
)
from multisect.presentations.matrices import exponent_matrix, smith_normal_form
from multisect.utils.exceptions import ParseError, RankMismatchError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise ValidationError({"free_rank": ["Free rank must be non-negative"]})
        for previous, current in zip(self.torsion, self.torsion[1:]):
            if current % previous:
                raise ValidationError({"torsion": [f"{previous} does not divide {current}"]})
        if any(d <= 1 for d in self.torsion):
            raise ValidationError({"torsion": ["Torsion factors must exceed 1"]})

    @property
    def rank(self) -> int:
        """Minimal number of generators."""
        return self.free_rank + len(self.torsion)

    def is_free_of_rank(self, k: int) -> bool:
        return self.free_rank == k and not self.torsion

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupPresentation:
    generator_count: int
    relators: Tuple[Word, ...] = ()
    display_names: Optional[Tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        for relator in self.relators:
            if relator.rank != self.generator_count:
                raise RankMismatchError(
                    {"relators": [f"Relator {relator} has rank {relator.rank}"]}
                )
        object.__setattr__(self, "relators", tuple(cyclic_reduce(r) for r in self.relators))
        if self.display_names is not None:
            names = tuple(self.display_names)
            if len(names) != self.generator_count:
                raise ValidationError({"display_names": ["One name per generator"]})
            object.__setattr__(self, "display_names", names)

    @classmethod
    def from_ints(cls, generator_count: int, relators: Sequence[Sequence[int]], names=None):
        return cls(
            generator_count,
            tuple(Word.from_ints(generator_count, r) for r in relators),
            names,
        )

    def names(self) -> Tuple[str, ...]:
        if self.display_names is not None:
            return self.display_names
        return tuple(f"g{k}" for k in range(1, self.generator_count + 1))

    def is_free(self) -> bool:
        return all(r.is_identity() for r in self.relators)

    def __str__(self):
        names = self.names()
        relators = ", ".join(format_word(r, names) for r in self.relators)
        return f"< {', '.join(names)} | {relators} >"


def abelianization(P: GroupPresentation) -> AbelianInvariants:
    form = smith_normal_form(exponent_matrix(P.relators, P.generator_count))
    return AbelianInvariants(P.generator_count - form.rank, form.invariant_factors)


class TietzeResult(NamedTuple):
    presentation: GroupPresentation
    trace: Tuple[str, ...]
    # each new generator as a word in the original generators
    generators: Tuple[Word, ...]
    # each original generator as a word in the new generators
    substitutions: Tuple[Word, ...]

    def rewrite(self, w: Word) -> Word:
        """Transport a word in the original generators to the simplified generators."""
        if w.rank != len(self.substitutions):
            raise RankMismatchError(f"Word of rank {w.rank} for {len(self.substitutions)} generators")
        images = [s.ints() for s in self.substitutions]
        return Word.from_ints(self.presentation.generator_count, substitute(w.ints(), images))


class _TietzeState:
    def __init__(self, P: GroupPresentation):
        n = P.generator_count
        self.count = n
        self.names = list(P.names())
        self.relators = [list(r.ints()) for r in P.relators]
        self.backward = [[k] for k in range(1, n + 1)]
        self.forward = [[k] for k in range(1, n + 1)]
        self.trace: List[str] = []

    def total_length(self, relators) -> int:
        return sum(len(r) for r in relators)

    def clean(self) -> bool:
        kept, seen = [], set()
        for relator in self.relators:
            relator = cyclic_ints(relator)
            if not relator:
                continue
            key = canonical_cyclic_form(Word.from_ints(self.count, relator))
            if key in seen:
                continue
            seen.add(key)
            kept.append(relator)
        changed = kept != self.relators
        if changed:
            self.trace.append(f"clean {len(self.relators)} -> {len(kept)} relators")
        self.relators = kept
        return changed

    def eliminate(self) -> bool:
        for position, relator in enumerate(self.relators):
            counts = {}
            for value in relator:
                counts[abs(value)] = counts.get(abs(value), 0) + 1
            once = [g for g, c in counts.items() if c == 1]
            if not once:
                continue
            generator = max(once)
            k = next(i for i, v in enumerate(relator) if abs(v) == generator)
            rotated = relator[k:] + relator[:k]
            tail = rotated[1:]
            if rotated[0] > 0:
                value = [-v for v in reversed(tail)]
            else:
                value = list(tail)
            name = self._remove_generator(generator, value, position)
            self.trace.append(f"eliminate {name} via relator {position + 1}")
            return True
        return False

    def _remove_generator(self, generator: int, value: List[int], position: int) -> str:
        def renumber(word):
            return [v - 1 if v > generator else (v + 1 if v < -generator else v) for v in word]

        images = [[k] for k in range(1, self.count + 1)]
        images[generator - 1] = value
        relators = [
            substitute(r, images) for i, r in enumerate(self.relators) if i != position
        ]
        self.relators = [renumber(r) for r in relators]
        self.forward = [renumber(substitute(f, images)) for f in self.forward]
        del self.backward[generator - 1]
        self.count -= 1
        return self.names.pop(generator - 1)

    def transvect(self) -> bool:
        current = self.total_length(self.relators)
        best = None
        for target in range(1, self.count + 1):
            for source in range(1, self.count + 1):
                if source == target:
                    continue
                for sign in (-1, 1):
                    for side in ("left", "right"):
                        image = [target, sign * source] if side == "right" else [sign * source, target]
                        images = [[k] for k in range(1, self.count + 1)]
                        images[target - 1] = image
                        relators = [cyclic_ints(substitute(r, images)) for r in self.relators]
                        length = self.total_length(relators)
                        if length < current and (best is None or length < best[0]):
                            best = (length, target, source, sign, side, images, relators)
        if best is None:
            return False
        _, target, source, sign, side, images, relators = best
        self.relators = relators
        self.forward = [substitute(f, images) for f in self.forward]
        power = self.backward[source - 1]
        if sign > 0:
            power = [-v for v in reversed(power)]
        if side == "right":
            self.backward[target - 1] = reduce_ints(self.backward[target - 1] + power)
        else:
            self.backward[target - 1] = reduce_ints(power + self.backward[target - 1])
        self.trace.append(
            f"transvect {self.names[target - 1]} by {self.names[source - 1]}^{sign} on the {side}"
        )
        return True

    def shorten(self) -> bool:
        """
        Replace a cyclic subword ``u`` of one relator by ``v^-1`` where ``u v``
        is a cyclic conjugate of another relator or its inverse and ``u`` is
        longer than ``v``.
        """
        best = None
        for b, other in enumerate(self.relators):
            inverse = [-v for v in reversed(other)]
            conjugates = [seq[k:] + seq[:k] for seq in (other, inverse) for k in range(len(seq))]
            for a, relator in enumerate(self.relators):
                if a == b:
                    continue
                n = len(relator)
                doubled = relator + relator
                for conjugate in conjugates:
                    for cut in range(len(conjugate), len(conjugate) // 2, -1):
                        u, v = conjugate[:cut], conjugate[cut:]
                        if len(u) > n:
                            continue
                        start = next(
                            (k for k in range(n) if doubled[k : k + len(u)] == u), None
                        )
                        if start is None:
                            continue
                        rest = doubled[start + len(u) : start + n]
                        replaced = cyclic_ints([-x for x in reversed(v)] + rest)
                        gain = n - len(replaced)
                        if gain > 0 and (best is None or gain > best[0]):
                            best = (gain, a, b, replaced)
                        break
        if best is None:
            return False
        _, a, b, replaced = best
        self.relators[a] = replaced
        self.trace.append(f"shorten relator {a + 1} by relator {b + 1}")
        return True


def tietze_simplify(P: GroupPresentation, budget: Optional[int] = None) -> TietzeResult:
    """
    Simplify ``P`` by isomorphism-preserving steps, each costing one unit of
    ``budget``: drop empty and duplicate relators, eliminate a generator that
    occurs exactly once in a relator, otherwise apply the generator
    transvection that most shortens the relators, and failing that replace
    more than half of one relator by the rest of another. Stops when no step
    applies or the budget runs out.
    """
    budget = settings.tietze_budget if budget is None else budget
    if budget <= 0:
        raise ValidationError({"budget": ["Budget must be positive"]})
    original_count = P.generator_count
    state = _TietzeState(P)
    steps = 0
    while steps < budget:
        if state.clean() or state.eliminate() or state.transvect() or state.shorten():
            steps += 1
            continue
        break
    logger.debug("Tietze simplification took %d steps, %d generators remain", steps, state.count)

    result = TietzeResult(
        presentation=GroupPresentation(
            state.count,
            tuple(Word.from_ints(state.count, r) for r in state.relators),
            tuple(state.names),
        ),
        trace=tuple(state.trace),
        generators=tuple(Word.from_ints(original_count, b) for b in state.backward),
        substitutions=tuple(Word.from_ints(state.count, f) for f in state.forward),
    )
    assert abelianization(result.presentation) == abelianization(P)
    return result


class VerdictStatus(enum.Enum):
    VERIFIED = "Verified"
    REFUTED_BY_HOMOLOGY = "RefutedByHomology"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SectorVerdict:
    status: VerdictStatus
    rank: Optional[int]
    invariants: AbelianInvariants
    trace: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.status is VerdictStatus.VERIFIED and not self.invariants.is_free_of_rank(
            self.rank
        ):
            raise ValidationError(
                f"Cannot verify free rank {self.rank} with invariants {self.invariants}"
            )

    @property
    def verified(self) -> bool:
        return self.status is VerdictStatus.VERIFIED

    def __str__(self):
        if self.verified:
            return f"Verified({self.rank})"
        return self.status.value


def verify_free_of_rank(
    P: GroupPresentation, k: int, budget: Optional[int] = None
) -> SectorVerdict:
    invariants = abelianization(P)
    if not invariants.is_free_of_rank(k):
        return SectorVerdict(VerdictStatus.REFUTED_BY_HOMOLOGY, k, invariants)
    result = tietze_simplify(P, budget)
    if result.presentation.generator_count == k and result.presentation.is_free():
        return SectorVerdict(VerdictStatus.VERIFIED, k, invariants, result.trace)
    return SectorVerdict(VerdictStatus.UNKNOWN, k, invariants, result.trace)


def parse_presentation(text: str) -> GroupPresentation:
    lines = [(n, line.strip()) for n, line in enumerate(text.splitlines(), start=1)]
    lines = [(n, line) for n, line in lines if line and not line.startswith("#")]
    if not lines:
        raise ParseError("empty presentation", 1)
    line_no, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "gens" or not parts[1].isdigit():
        raise ParseError("expected 'gens <n>'", line_no)
    count = int(parts[1])
    relators = tuple(parse_word(line, count, n) for n, line in lines[1:])
    return GroupPresentation(count, relators)


def format_presentation(P: GroupPresentation) -> str:
    lines = [f"gens {P.generator_count}"]
    lines += [format_word(r) for r in P.relators]
    return "\n".join(lines) + "\n"
