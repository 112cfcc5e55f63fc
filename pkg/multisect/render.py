"""
Schematic chord diagrams: the central surface is drawn as a 4G-gon with
edges a1 b1 a1^-1 b1^-1 ..., and every curve as chords between the edges its
letters cross. The picture records the words only, not an isotopy class.
"""
import logging
from collections import defaultdict
from typing import Dict, List, Tuple
from xml.sax.saxutils import escape

import numpy as np

from multisect.diagrams.multisection import MultisectionDiagram

logger = logging.getLogger(__name__)

NS_SVG = "http://www.w3.org/2000/svg"
SIZE = 400
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
DASHES = ("none", "6 3", "2 3", "8 3 2 3")


def demangle(key: str) -> str:
    return key.replace("_", "-")


def rounder(x, digits: int = 3):
    if isinstance(x, (float, np.floating)):
        x = round(float(x), digits)
        return int(x) if x == int(x) else x
    return x


def attr_value(v) -> str:
    return escape(str(rounder(v)), {'"': "&quot;"})


def props_repr(attr: dict) -> str:
    return " ".join(f'{demangle(k)}="{attr_value(v)}"' for k, v in attr.items())


class Element:
    def __init__(self, tag: str, unary: bool = False, text: str = "", **attr):
        self.tag = tag
        self.unary = unary
        self.text = text
        self.attr = attr

    def inner(self) -> str:
        return self.text

    def svg(self) -> str:
        props = props_repr(self.attr)
        pre = " " if props else ""
        if self.unary:
            return f"<{self.tag}{pre}{props} />"
        return f"<{self.tag}{pre}{props}>{self.inner()}</{self.tag}>"


class Group(Element):
    def __init__(self, children: List[Element], **attr):
        super().__init__("g", **attr)
        self.children = children

    def inner(self) -> str:
        if not self.children:
            return ""
        return "\n" + "\n".join(child.svg() for child in self.children) + "\n"


class Document(Group):
    def __init__(self, children: List[Element], size: int = SIZE):
        super().__init__(children)
        self.tag = "svg"
        self.attr = dict(width=size, height=size, xmlns=NS_SVG)


class Polygon(Element):
    def __init__(self, points: np.ndarray, **attr):
        coords = " ".join(f"{rounder(x)},{rounder(y)}" for x, y in points)
        base = dict(points=coords, fill="none", stroke="black")
        super().__init__("polygon", unary=True, **{**base, **attr})


class Line(Element):
    def __init__(self, start, end, **attr):
        (x1, y1), (x2, y2) = start, end
        super().__init__("line", unary=True, x1=x1, y1=y1, x2=x2, y2=y2, **attr)


class Text(Element):
    def __init__(self, x, y, text: str, **attr):
        base = dict(x=x, y=y, font_size="12px", font_family="monospace")
        super().__init__("text", text=escape(text), **{**base, **attr})


def polygon_vertices(genus: int, size: int = SIZE) -> np.ndarray:
    sides = 4 * genus
    if sides == 0:
        return np.zeros((0, 2))
    center, radius = size / 2, 0.4 * size
    angles = np.pi / 2 + 2 * np.pi * np.arange(sides) / sides
    return np.column_stack([center + radius * np.cos(angles), center - radius * np.sin(angles)])


def letter_edges(generator: int) -> Tuple[int, int]:
    """Polygon edges identified by a surface generator: the edge read forwards, then backwards."""
    pair = (generator + 1) // 2
    offset = 0 if generator % 2 else 1
    first = 4 * (pair - 1) + offset
    return first, first + 2


def _crossings(letter: int) -> Tuple[int, int]:
    """(exit edge, entry edge) of a curve crossing the given signed letter."""
    forwards, backwards = letter_edges(abs(letter))
    return (forwards, backwards) if letter > 0 else (backwards, forwards)


def chords(d: MultisectionDiagram) -> List[Tuple[int, int, int]]:
    """(system, start edge, end edge) for every chord, in system and curve order."""
    found = []
    for k, system in enumerate(d.systems):
        for curve in system.curves:
            letters = curve.ints()
            for position, letter in enumerate(letters):
                following = letters[(position + 1) % len(letters)]
                found.append((k, _crossings(letter)[1], _crossings(following)[0]))
    return found


def _edge_points(vertices: np.ndarray, chord_list) -> Dict[Tuple[int, int], np.ndarray]:
    """Distinct points along each edge; the identified edge uses the mirrored slot."""
    sides = len(vertices)
    uses = defaultdict(int)
    for _, start, end in chord_list:
        uses[start] += 1
        uses[end] += 1
    slots = defaultdict(int)
    points = {}
    for index, (_, start, end) in enumerate(chord_list):
        for role, edge in ((0, start), (1, end)):
            partner = edge + 2 if edge % 4 < 2 else edge - 2
            count = max(uses[edge], uses[partner])
            slot = slots[edge]
            slots[edge] += 1
            t = (slot + 1) / (count + 1)
            if edge % 4 >= 2:
                t = 1 - t
            a, b = vertices[edge % sides], vertices[(edge + 1) % sides]
            points[(index, role)] = a + t * (b - a)
    return points


def render_svg(d: MultisectionDiagram, size: int = SIZE) -> str:
    vertices = polygon_vertices(d.genus, size)
    elements: List[Element] = [Polygon(vertices, stroke_width=1.5)]
    chord_list = chords(d)
    points = _edge_points(vertices, chord_list)

    families = defaultdict(list)
    for index, (k, _, _) in enumerate(chord_list):
        families[k].append(Line(points[(index, 0)], points[(index, 1)]))
    for k, system in enumerate(d.systems):
        style = dict(
            stroke=PALETTE[k % len(PALETTE)],
            stroke_dasharray=DASHES[(k // len(PALETTE) + k) % len(DASHES)],
            stroke_width=1.2,
        )
        elements.append(Group(families[k], id=f"system-{k + 1}", **style))
        elements.append(
            Text(8, 16 + 14 * k, f"{k + 1}: {system.label or '?'}", fill=style["stroke"])
        )
    logger.debug("Rendered %d chords on a %d-gon", len(chord_list), len(vertices))
    return Document(elements, size).svg() + "\n"
