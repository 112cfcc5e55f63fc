import logging
from math import gcd
from typing import List

from multisect.diagrams.cut_systems import normalize_standardizer
from multisect.diagrams.heegaard import GeometricHeegaardDiagram
from multisect.freewords import FreeAutomorphism, Word, apply, compose, cyclic_reduce
from multisect.utils.exceptions import ConstructionError, ValidationError

logger = logging.getLogger(__name__)


def christoffel_word(p: int, q: int) -> List[int]:
    """
    Cutting sequence of the slope q/p line on the genus-1 surface: ``p``
    copies of b (generator 2) and ``q`` copies of a (generator 1).
    """
    n = p + q
    return [1 if (i * q) // n > ((i - 1) * q) // n else 2 for i in range(1, n + 1)]


def standardize_curve(curve: Word) -> FreeAutomorphism:
    """
    Automorphism carrying the primitive cyclic word ``curve`` to a positive
    generator, built greedily from transvections that shorten it.
    """
    rank = curve.rank
    current = cyclic_reduce(curve)
    phi = FreeAutomorphism.identity(rank)
    while len(current) > 1:
        best = None
        for target in range(1, rank + 1):
            for source in range(1, rank + 1):
                if source == target:
                    continue
                for sign in (-1, 1):
                    for side in ("left", "right"):
                        step = FreeAutomorphism.transvection(rank, target, source, sign, side)
                        image = cyclic_reduce(apply(step, current))
                        if len(image) < len(current) and (best is None or len(image) < len(best[1])):
                            best = (step, image)
        if best is None:
            raise ConstructionError(f"No transvection shortens {current}")
        phi = compose(best[0], phi)
        current = best[1]
    return normalize_standardizer([curve], phi)


def lens_diagram(p: int, q: int) -> GeometricHeegaardDiagram:
    """Genus-1 diagram of L(p, q): the beta curve winds p times along b and q times along a."""
    if p < 1 or q < 1:
        raise ValidationError({"lens": [f"p and q must be positive, got ({p}, {q})"]})
    if gcd(p, q) != 1:
        raise ValidationError({"lens": [f"p and q must be coprime, got ({p}, {q})"]})
    curve = Word.from_ints(2, christoffel_word(p, q))
    standardizer = standardize_curve(curve)
    logger.debug("L(%d, %d) curve %s", p, q, curve)
    return GeometricHeegaardDiagram(1, (curve,), standardizer, f"L({p},{q})", (p, q))


def sphere_bundle_sum_diagram(g: int) -> GeometricHeegaardDiagram:
    """#_g S1 x S2: every beta curve parallel to its alpha curve."""
    if g < 0:
        raise ValidationError({"genus": ["Genus must be non-negative"]})
    rank = 2 * g
    curves = tuple(Word.generator(rank, 2 * i - 1) for i in range(1, g + 1))
    name = f"#{g} S1xS2" if g else "S3"
    return GeometricHeegaardDiagram(g, curves, FreeAutomorphism.identity(rank), name)
