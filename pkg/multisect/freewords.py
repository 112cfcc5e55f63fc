"""
Words and explicit automorphisms of the free group on generators ``1..rank``.

A ``Word`` is freely reduced when it is built, so equal group elements
compare equal. Relators and curves are conjugacy classes and only go through
``cyclic_reduce`` where they are declared as such.
"""
import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

import sympy

from multisect.utils.exceptions import ParseError, RankMismatchError, ValidationError

logger = logging.getLogger(__name__)

BUILTIN = "builtin"
ASSERTED = "asserted"


@dataclass(frozen=True, order=True)
class Letter:
    index: int
    sign: int = 1

    def __post_init__(self):
        if self.index < 1:
            raise ValidationError({"index": [f"Generator index must be positive, got {self.index}"]})
        if self.sign not in (1, -1):
            raise ValidationError({"sign": [f"Sign must be +1 or -1, got {self.sign}"]})

    @classmethod
    def from_int(cls, value: int) -> "Letter":
        return cls(abs(value), 1 if value > 0 else -1)

    def as_int(self) -> int:
        return self.index * self.sign

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.sign)

    def __str__(self):
        return f"g{self.index}" if self.sign == 1 else f"g{self.index}^-1"


@dataclass(frozen=True)
class Word:
    letters: Tuple[Letter, ...]
    rank: int

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.rank < 0:
            raise ValidationError({"rank": ["Rank must be non-negative"]})
        for letter in self.letters:
            if letter.index > self.rank:
                raise RankMismatchError(
                    {"letters": [f"Letter {letter} outside rank {self.rank}"]}
                )
        values = reduce_ints(letter.as_int() for letter in self.letters)
        if len(values) != len(self.letters):
            object.__setattr__(self, "letters", tuple(Letter.from_int(v) for v in values))

    @classmethod
    def from_ints(cls, rank: int, values: Iterable[int]) -> "Word":
        return cls(tuple(Letter.from_int(v) for v in values), rank)

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls((), rank)

    @classmethod
    def generator(cls, rank: int, index: int, sign: int = 1) -> "Word":
        return cls((Letter(index, sign),), rank)

    def ints(self) -> Tuple[int, ...]:
        return tuple(letter.as_int() for letter in self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def exponent_sums(self) -> list:
        sums = [0] * self.rank
        for letter in self.letters:
            sums[letter.index - 1] += letter.sign
        return sums

    def generators_used(self) -> set:
        return {letter.index for letter in self.letters}

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        _check_rank(self.rank, other.rank)
        return free_reduce(Word(self.letters + other.letters, self.rank))

    def __pow__(self, exponent: int) -> "Word":
        base = self if exponent >= 0 else invert(self)
        return free_reduce(Word(base.letters * abs(exponent), self.rank))

    def __invert__(self) -> "Word":
        return invert(self)

    def __str__(self):
        return format_word(self)


def _check_rank(left: int, right: int):
    if left != right:
        raise RankMismatchError(f"Rank {left} does not match rank {right}")


def reduce_ints(values: Iterable[int]) -> list:
    stack = []
    for value in values:
        if stack and stack[-1] == -value:
            stack.pop()
        else:
            stack.append(value)
    return stack


def cyclic_ints(values: Iterable[int]) -> list:
    reduced = reduce_ints(values)
    start, end = 0, len(reduced)
    while end - start > 1 and reduced[start] == -reduced[end - 1]:
        start += 1
        end -= 1
    return reduced[start:end]


def free_reduce(w: Word) -> Word:
    return Word.from_ints(w.rank, reduce_ints(w.ints()))


def cyclic_reduce(w: Word) -> Word:
    return Word.from_ints(w.rank, cyclic_ints(w.ints()))


def invert(w: Word) -> Word:
    return free_reduce(Word(tuple(letter.inverse() for letter in reversed(w.letters)), w.rank))


def letter_inverse(w: Word) -> Word:
    """Same letter order with every sign flipped; transports a curve word to its mirror copy."""
    return free_reduce(Word(tuple(letter.inverse() for letter in w.letters), w.rank))


def canonical_cyclic_form(w: Word) -> Tuple[int, ...]:
    """Least rotation of the cyclic reduction of ``w`` or of its inverse."""
    reduced = cyclic_ints(w.ints())
    if not reduced:
        return ()
    inverse = [-v for v in reversed(reduced)]
    rotations = [
        tuple(seq[k:] + seq[:k]) for seq in (reduced, inverse) for k in range(len(seq))
    ]
    return min(rotations)


def shift(w: Word, offset: int, rank: int) -> Word:
    """Re-embed ``w`` into a free group of ``rank`` with generator indices moved by ``offset``."""
    return Word(tuple(Letter(letter.index + offset, letter.sign) for letter in w.letters), rank)


def substitute(values: Sequence[int], images: Sequence[Sequence[int]]) -> list:
    """Signed-integer word with generator ``k`` replaced by ``images[k - 1]``, freely reduced."""
    result = []
    for value in values:
        image = images[abs(value) - 1]
        result.extend(image if value > 0 else [-v for v in reversed(image)])
    return reduce_ints(result)


def format_word(w: Word, names: Optional[Sequence[str]] = None) -> str:
    if not w.letters:
        return "1"
    tokens = []
    for letter in w.letters:
        name = names[letter.index - 1] if names else f"g{letter.index}"
        tokens.append(name if letter.sign == 1 else f"{name}^-1")
    return " ".join(tokens)


def parse_word(text: str, rank: int, line_no: int = 0) -> Word:
    text = text.strip()
    if text == "1":
        return Word.identity(rank)
    values = []
    for token in text.split():
        body, sign = token, 1
        if token.endswith("^-1"):
            body, sign = token[:-3], -1
        if not body.startswith("g") or not body[1:].isdigit():
            raise ParseError(f"bad letter {token!r}", line_no)
        index = int(body[1:])
        if not 1 <= index <= rank:
            raise ParseError(f"letter {token!r} outside rank {rank}", line_no)
        values.append(sign * index)
    if not values:
        raise ParseError("empty word, write 1 for the identity", line_no)
    return Word.from_ints(rank, values)


@dataclass(frozen=True)
class FreeAutomorphism:
    """
    Endomorphism of the free group given by the images of the positive
    generators, accepted only when its abelianization is unimodular.
    ``inverse`` holds a known inverse when one was built alongside it.
    """

    rank: int
    images: Tuple[Word, ...]
    provenance: str = field(default=BUILTIN, compare=False)
    inverse: Optional["FreeAutomorphism"] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(free_reduce(w) for w in self.images))
        if len(self.images) != self.rank:
            raise RankMismatchError(
                {"images": [f"Expected {self.rank} images, got {len(self.images)}"]}
            )
        for image in self.images:
            _check_rank(self.rank, image.rank)
        determinant = self.determinant()
        if determinant not in (1, -1):
            raise ValidationError(
                {"images": [f"Abelianized determinant is {determinant}, expected +1 or -1"]}
            )
        if self.provenance == ASSERTED:
            logger.warning("Trusting user-asserted automorphism of rank %d", self.rank)

    def determinant(self) -> int:
        if self.rank == 0:
            return 1
        return int(sympy.Matrix(self.abelianized()).det(method="bareiss"))

    def abelianized(self) -> list:
        """Integer matrix whose column ``k`` is the exponent-sum vector of image ``k``."""
        columns = [image.exponent_sums() for image in self.images]
        return [[columns[j][i] for j in range(self.rank)] for i in range(self.rank)]

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def is_identity(self) -> bool:
        return all(image.ints() == (k + 1,) for k, image in enumerate(self.images))

    def verify_inverse(self) -> bool:
        if self.inverse is None:
            return False
        return (
            _composed(self, self.inverse).is_identity()
            and _composed(self.inverse, self).is_identity()
        )

    @classmethod
    def from_images(
        cls,
        rank: int,
        images: Sequence[Word],
        provenance: str = ASSERTED,
        inverse_images: Optional[Sequence[Word]] = None,
    ) -> "FreeAutomorphism":
        if inverse_images is None:
            return cls(rank, tuple(images), provenance)
        return _paired(rank, images, inverse_images, provenance)

    @classmethod
    def identity(cls, rank: int) -> "FreeAutomorphism":
        images = [Word.generator(rank, k) for k in range(1, rank + 1)]
        return _paired(rank, images, images)

    @classmethod
    def transvection(
        cls, rank: int, target: int, source: int, sign: int = 1, side: str = "right"
    ) -> "FreeAutomorphism":
        """x_target -> x_target x_source^sign (``right``) or x_source^sign x_target (``left``)."""
        if target == source:
            raise ValidationError({"source": ["Transvection needs two distinct generators"]})
        images = [Word.generator(rank, k) for k in range(1, rank + 1)]
        inverse_images = list(images)
        if side == "right":
            images[target - 1] = Word.from_ints(rank, [target, sign * source])
            inverse_images[target - 1] = Word.from_ints(rank, [target, -sign * source])
        elif side == "left":
            images[target - 1] = Word.from_ints(rank, [sign * source, target])
            inverse_images[target - 1] = Word.from_ints(rank, [-sign * source, target])
        else:
            raise ValidationError({"side": [f"Unknown side {side!r}"]})
        return _paired(rank, images, inverse_images)

    @classmethod
    def invert_generators(cls, rank: int, indices: Iterable[int]) -> "FreeAutomorphism":
        indices = set(indices)
        images = [Word.generator(rank, k, -1 if k in indices else 1) for k in range(1, rank + 1)]
        return _paired(rank, images, images)

    @classmethod
    def letter_inversion(cls, rank: int) -> "FreeAutomorphism":
        return cls.invert_generators(rank, range(1, rank + 1))

    @classmethod
    def relabel(cls, rank: int, targets: Sequence[int]) -> "FreeAutomorphism":
        """Signed permutation sending generator ``k`` to the letter ``targets[k - 1]``."""
        if sorted(abs(t) for t in targets) != list(range(1, rank + 1)):
            raise ValidationError({"targets": ["Relabeling must be a signed permutation"]})
        images = [Word.from_ints(rank, [t]) for t in targets]
        inverse_values = [0] * rank
        for k, t in enumerate(targets, start=1):
            inverse_values[abs(t) - 1] = k if t > 0 else -k
        inverse_images = [Word.from_ints(rank, [v]) for v in inverse_values]
        return _paired(rank, images, inverse_images)

    @classmethod
    def block_sum(cls, first: "FreeAutomorphism", second: "FreeAutomorphism") -> "FreeAutomorphism":
        rank = first.rank + second.rank
        images = [shift(w, 0, rank) for w in first.images]
        images += [shift(w, first.rank, rank) for w in second.images]
        provenance = _joint_provenance(first, second)
        if first.inverse is None or second.inverse is None:
            return cls(rank, tuple(images), provenance)
        inverse_images = [shift(w, 0, rank) for w in first.inverse.images]
        inverse_images += [shift(w, first.rank, rank) for w in second.inverse.images]
        return _paired(rank, images, inverse_images, provenance)


def _joint_provenance(*automorphisms: FreeAutomorphism) -> str:
    if all(phi.provenance == BUILTIN for phi in automorphisms):
        return BUILTIN
    return ASSERTED


def _paired(rank, images, inverse_images, provenance=BUILTIN) -> FreeAutomorphism:
    phi = FreeAutomorphism(rank, tuple(images), provenance)
    phi_inverse = FreeAutomorphism(rank, tuple(inverse_images), provenance)
    object.__setattr__(phi, "inverse", phi_inverse)
    object.__setattr__(phi_inverse, "inverse", phi)
    return phi


def _composed_images(phi: FreeAutomorphism, psi: FreeAutomorphism) -> Tuple[Word, ...]:
    return tuple(apply(phi, image) for image in psi.images)


def _composed(phi: FreeAutomorphism, psi: FreeAutomorphism) -> FreeAutomorphism:
    return FreeAutomorphism(phi.rank, _composed_images(phi, psi), _joint_provenance(phi, psi))


def apply(phi: FreeAutomorphism, w: Word) -> Word:
    _check_rank(phi.rank, w.rank)
    images = [image.ints() for image in phi.images]
    return Word.from_ints(w.rank, substitute(w.ints(), images))


def compose(phi: FreeAutomorphism, psi: FreeAutomorphism) -> FreeAutomorphism:
    """The automorphism ``w -> phi(psi(w))``; known inverses compose in reverse order."""
    _check_rank(phi.rank, psi.rank)
    provenance = _joint_provenance(phi, psi)
    if phi.inverse is None or psi.inverse is None:
        return FreeAutomorphism(phi.rank, _composed_images(phi, psi), provenance)
    return _paired(
        phi.rank,
        _composed_images(phi, psi),
        _composed_images(psi.inverse, phi.inverse),
        provenance,
    )
