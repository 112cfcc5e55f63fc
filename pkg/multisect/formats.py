"""
Line-oriented text formats: multisection diagrams (``MSD 1``), Heegaard
diagrams (``HD 1``) and tuples of words. Words use the ``g1 g2^-1`` grammar,
``1`` for the identity.
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from multisect.diagrams.cut_systems import CutSystem, SurfaceModel
from multisect.diagrams.heegaard import GeometricHeegaardDiagram
from multisect.diagrams.multisection import USER, MultisectionDiagram
from multisect.freewords import ASSERTED, BUILTIN, FreeAutomorphism, Word, format_word, parse_word
from multisect.utils.exceptions import ParseError

logger = logging.getLogger(__name__)

MSD_HEADER = "MSD 1"
HD_HEADER = "HD 1"


class _Lines:
    """Cursor over the meaningful lines of a document, keeping 1-based line numbers."""

    def __init__(self, text: str):
        self.lines = [
            (n, line.strip())
            for n, line in enumerate(text.splitlines(), start=1)
            if line.strip() and not line.strip().startswith("#")
        ]
        self.position = 0

    @property
    def line_no(self) -> int:
        if self.position < len(self.lines):
            return self.lines[self.position][0]
        return self.lines[-1][0] + 1 if self.lines else 1

    def peek_keyword(self) -> Optional[str]:
        if self.position >= len(self.lines):
            return None
        return self.lines[self.position][1].split(maxsplit=1)[0]

    def take(self, keyword: str) -> str:
        """Consume a ``<keyword> <rest>`` line and return ``rest``."""
        if self.position >= len(self.lines):
            raise ParseError(f"expected '{keyword}', reached end of input", self.line_no)
        n, line = self.lines[self.position]
        parts = line.split(maxsplit=1)
        if parts[0] != keyword:
            raise ParseError(f"expected '{keyword}', got {parts[0]!r}", n)
        self.position += 1
        return parts[1] if len(parts) > 1 else ""

    def take_int(self, keyword: str) -> int:
        n = self.line_no
        value = self.take(keyword)
        try:
            return int(value)
        except ValueError:
            raise ParseError(f"'{keyword}' needs an integer, got {value!r}", n)

    def take_word(self, keyword: str, rank: int) -> Word:
        n = self.line_no
        return parse_word(self.take(keyword), rank, n)

    def finish(self):
        if self.position < len(self.lines):
            n, line = self.lines[self.position]
            raise ParseError(f"unexpected line {line!r}", n)


def _take_header(lines: _Lines, header: str):
    kind, _, version = header.partition(" ")
    n = lines.line_no
    if lines.take(kind) != version:
        raise ParseError(f"expected header '{header}'", n)


def _take_bool(lines: _Lines, keyword: str) -> bool:
    n = lines.line_no
    value = lines.take(keyword)
    if value not in ("true", "false"):
        raise ParseError(f"'{keyword}' must be true or false, got {value!r}", n)
    return value == "true"


def _take_standardizer(lines: _Lines, rank: int) -> Optional[FreeAutomorphism]:
    if lines.peek_keyword() != "standardizer":
        return None
    n = lines.line_no
    lines.take("standardizer")
    images = [lines.take_word("image", rank) for _ in range(rank)]
    if lines.peek_keyword() != "inverse":
        return FreeAutomorphism.from_images(rank, images, ASSERTED)
    lines.take("inverse")
    inverse_images = [lines.take_word("image", rank) for _ in range(rank)]
    phi = FreeAutomorphism.from_images(rank, images, BUILTIN, inverse_images)
    if not phi.verify_inverse():
        raise ParseError("inverse block does not invert the standardizer", n)
    return phi


def _standardizer_lines(phi: Optional[FreeAutomorphism]) -> List[str]:
    if phi is None:
        return []
    lines = ["standardizer"] + [f"image {format_word(w)}" for w in phi.images]
    if phi.inverse is not None:
        lines += ["inverse"] + [f"image {format_word(w)}" for w in phi.inverse.images]
    return lines


def parse_msd(text: str) -> MultisectionDiagram:
    lines = _Lines(text)
    _take_header(lines, MSD_HEADER)
    genus = lines.take_int("genus")
    surface = SurfaceModel(genus)
    closed = _take_bool(lines, "closed")
    n = lines.line_no
    try:
        types = tuple(int(v) for v in lines.take("types").split())
    except ValueError:
        raise ParseError("types must be integers", n)
    origin = lines.take("origin") if lines.peek_keyword() == "origin" else USER

    systems = []
    while lines.peek_keyword() == "system":
        label = lines.take("system")
        curves = tuple(lines.take_word("curve", surface.rank) for _ in range(genus))
        standardizer = _take_standardizer(lines, surface.rank)
        systems.append(CutSystem(surface, curves, standardizer, label))

    readings: Dict[Tuple[int, int], Tuple[Word, ...]] = {}
    while lines.peek_keyword() == "reading":
        n = lines.line_no
        try:
            i, j = (int(v) for v in lines.take("reading").split())
        except ValueError:
            raise ParseError("'reading' needs two system indices", n)
        if not (1 <= i <= len(systems) and 1 <= j <= len(systems)):
            raise ParseError(f"reading ({i}, {j}) refers to a missing system", n)
        readings[(i, j)] = tuple(lines.take_word("word", genus) for _ in range(genus))
    lines.finish()

    diagram = MultisectionDiagram(surface, tuple(systems), closed, types, readings, origin)
    if diagram.realizability_assumed:
        logger.warning("Assuming the curves of the parsed diagram are disjoint simple curves")
    return diagram


def serialize_msd(d: MultisectionDiagram) -> str:
    lines = [
        MSD_HEADER,
        f"genus {d.genus}",
        f"closed {'true' if d.closed else 'false'}",
        "types " + " ".join(str(k) for k in d.claimed_types),
    ]
    if d.origin != USER:
        lines.append(f"origin {d.origin}")
    for system in d.systems:
        lines.append(f"system {system.label}".rstrip())
        lines += [f"curve {format_word(curve)}" for curve in system.curves]
        lines += _standardizer_lines(system.standardizer)
    # readings the standardizers cannot reproduce
    for (i, j), words in d.readings.items():
        if d.system(i).readable:
            continue
        lines.append(f"reading {i} {j}")
        lines += [f"word {format_word(w)}" for w in words]
    return "\n".join(lines) + "\n"


def parse_hd(text: str) -> GeometricHeegaardDiagram:
    lines = _Lines(text)
    _take_header(lines, HD_HEADER)
    name = lines.take("name") if lines.peek_keyword() == "name" else ""
    genus = lines.take_int("genus")
    lens = None
    if lines.peek_keyword() == "lens":
        n = lines.line_no
        try:
            p, q = (int(v) for v in lines.take("lens").split())
        except ValueError:
            raise ParseError("'lens' needs two integers", n)
        lens = (p, q)
    rank = 2 * genus
    curves = tuple(lines.take_word("curve", rank) for _ in range(genus))
    standardizer = _take_standardizer(lines, rank)
    lines.finish()
    return GeometricHeegaardDiagram(genus, curves, standardizer, name, lens)


def serialize_hd(h: GeometricHeegaardDiagram) -> str:
    lines = [HD_HEADER]
    if h.name:
        lines.append(f"name {h.name}")
    lines.append(f"genus {h.genus}")
    if h.lens_parameters is not None:
        lines.append("lens {} {}".format(*h.lens_parameters))
    lines += [f"curve {format_word(curve)}" for curve in h.beta_curves]
    lines += _standardizer_lines(h.beta_standardizer)
    return "\n".join(lines) + "\n"


def parse_tuple(text: str, rank: int) -> Tuple[Word, ...]:
    """Comma-separated words, e.g. ``g1, g2 g2``."""
    if not text.strip():
        raise ParseError("empty tuple", 1)
    return tuple(parse_word(part, rank, 1) for part in text.split(","))


def format_tuple(t: Sequence[Word], names: Optional[Sequence[str]] = None) -> str:
    return ", ".join(format_word(w, names) for w in t)


def detect_kind(text: str) -> str:
    """``MSD`` or ``HD`` from the header line."""
    lines = _Lines(text)
    keyword = lines.peek_keyword()
    if keyword not in ("MSD", "HD"):
        raise ParseError("expected an 'MSD 1' or 'HD 1' header", lines.line_no)
    return keyword
