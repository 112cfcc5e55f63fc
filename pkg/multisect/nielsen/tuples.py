import enum
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

from multisect.freewords import Word, reduce_ints
from multisect.presentations.quotients import Element, FiniteAbelianGroup
from multisect.utils.exceptions import ValidationError


class Move(enum.Enum):
    SWAP12 = "Swap12"
    CYCLIC_PERMUTE = "CyclicPermute"
    INVERT1 = "Invert1"
    MULTIPLY12 = "Multiply12"

    @property
    def needs_pair(self) -> bool:
        return self in (Move.SWAP12, Move.MULTIPLY12)

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Conjugation:
    """Conjugate every entry of a free-group tuple by one letter (a change of basepoint path)."""

    letter: int

    def __str__(self):
        sign = "" if self.letter > 0 else "^-1"
        return f"Conjugate(g{abs(self.letter)}{sign})"


Step = Union[Move, Conjugation]


def moves_for(n: int) -> Tuple[Move, ...]:
    return tuple(move for move in Move if n >= 2 or not move.needs_pair)


def _check_length(n: int, move: Move):
    if move.needs_pair and n < 2:
        raise ValidationError({"move": [f"{move} needs at least two entries, tuple has {n}"]})


def move_elements(G: FiniteAbelianGroup, elements: Tuple[Element, ...], move: Move):
    _check_length(len(elements), move)
    if move is Move.SWAP12:
        return (elements[1], elements[0]) + elements[2:]
    if move is Move.CYCLIC_PERMUTE:
        return elements[1:] + elements[:1]
    if move is Move.INVERT1:
        return (G.neg(elements[0]),) + elements[1:]
    return (G.add(elements[0], elements[1]),) + elements[1:]


@dataclass(frozen=True)
class GeneratingTuple:
    group: FiniteAbelianGroup
    elements: Tuple[Element, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(tuple(e) for e in self.elements))
        for element in self.elements:
            if len(element) != self.group.rank:
                raise ValidationError({"elements": [f"{element} is not an element of {self.group}"]})
        if not self.group.is_generated_by(self.elements):
            raise ValidationError({"elements": [f"{self.elements} does not generate {self.group}"]})

    def __len__(self):
        return len(self.elements)


def nielsen_move(t: GeneratingTuple, move: Move) -> GeneratingTuple:
    return GeneratingTuple(t.group, move_elements(t.group, t.elements, move))


def step_ints(words: Tuple[Tuple[int, ...], ...], step: Step) -> Tuple[Tuple[int, ...], ...]:
    """Apply a move or conjugation to a tuple of reduced free-group words given as signed ints."""
    if isinstance(step, Conjugation):
        x = step.letter
        return tuple(tuple(reduce_ints((x,) + w + (-x,))) for w in words)
    _check_length(len(words), step)
    if step is Move.SWAP12:
        return (words[1], words[0]) + words[2:]
    if step is Move.CYCLIC_PERMUTE:
        return words[1:] + words[:1]
    if step is Move.INVERT1:
        return (tuple(-v for v in reversed(words[0])),) + words[1:]
    return (tuple(reduce_ints(words[0] + words[1])),) + words[1:]


def word_move(words: Sequence[Word], step: Step) -> Tuple[Word, ...]:
    rank = words[0].rank if words else 0
    result = step_ints(tuple(w.ints() for w in words), step)
    return tuple(Word.from_ints(rank, w) for w in result)
