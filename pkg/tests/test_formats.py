import logging
import re

import pytest

from multisect.constructions import (
    GluePlan,
    double_bisection,
    glue_bisections,
    insert_parallel_sectors,
    lens_diagram,
)
from multisect.diagrams import (
    MultisectionDiagram,
    SurfaceModel,
    connected_sum_power,
    reindexed,
    standard_system,
    validate,
)
from multisect.formats import (
    detect_kind,
    format_tuple,
    parse_hd,
    parse_msd,
    parse_tuple,
    serialize_hd,
    serialize_msd,
)
from multisect.freewords import Word
from multisect.render import chords, letter_edges, render_svg
from multisect.utils.exceptions import ParseError

USER_DIAGRAM = """MSD 1
genus 1
closed false
types 0 1
system alpha
curve g1
standardizer
image g1
image g2
inverse
image g1
image g2
system beta
curve g2
system gamma
curve g1
reading 2 3
word 1
"""


def test_lens_bisection_round_trip(lens21_bisection):
    text = serialize_msd(lens21_bisection)
    assert text.startswith("MSD 1\ngenus 2\nclosed false\ntypes 1 1\norigin bisection\n")
    assert "reading" not in text
    assert parse_msd(text) == lens21_bisection


def test_constructed_diagrams_round_trip(lens21_bisection):
    doubled = double_bisection(lens21_bisection)
    for d in (
        doubled,
        insert_parallel_sectors(doubled, 2, 2),
        glue_bisections(GluePlan.auto(lens21_bisection, 2)),
    ):
        parsed = parse_msd(serialize_msd(d))
        assert parsed == d
        assert parsed.labels() == d.labels()
        assert validate(parsed).ok


def test_user_diagram_keeps_stored_reading(caplog):
    caplog.set_level(logging.WARNING)
    d = parse_msd(USER_DIAGRAM)
    assert d.realizability_assumed
    assert "disjoint simple curves" in caplog.text
    assert d.readings[(2, 3)] == (Word.identity(1),)
    assert validate(d).ok
    assert serialize_msd(d) == USER_DIAGRAM


def test_comments_and_blank_lines_are_skipped(lens21_bisection):
    text = "# generated\n\n" + serialize_msd(lens21_bisection).replace("\n", "\n\n", 2)
    assert parse_msd(text) == lens21_bisection


@pytest.mark.parametrize(
    "text,line_no",
    [
        ("MSD 2\n", 1),
        ("MSD 1\ngenus x\n", 2),
        ("MSD 1\ngenus 1\nclosed maybe\n", 3),
        ("MSD 1\ngenus 1\nclosed false\ntypes 0 one\n", 4),
        ("# header follows\nMSD 1\ngenus 1\nclosed false\ntypes 0 1\nsystem alpha\ncurve g3\n", 7),
        ("MSD 1\ngenus 1\nclosed false\ntypes 0 1\nreading 1 4\n", 5),
        ("MSD 1\ngenus 1\nclosed false\ntypes 0 1\nsystem alpha\n", 6),
    ],
)
def test_msd_parse_errors(text, line_no):
    with pytest.raises(ParseError) as e:
        parse_msd(text)
    assert e.value.line_no == line_no


@pytest.mark.parametrize("p,q", [(5, 2), (7, 3)])
def test_lens_heegaard_round_trip(p, q):
    h = lens_diagram(p, q)
    text = serialize_hd(h)
    assert f"lens {p} {q}" in text
    assert parse_hd(text) == h


def test_heegaard_sum_round_trip():
    h = connected_sum_power(lens_diagram(3, 1), 2)
    assert parse_hd(serialize_hd(h)) == h


def test_asserted_standardizer_without_inverse(caplog):
    caplog.set_level(logging.WARNING)
    h = parse_hd("HD 1\ngenus 1\ncurve g2\nstandardizer\nimage g2\nimage g1\n")
    assert h.beta_standardizer.inverse is None
    assert "user-asserted" in caplog.text


@pytest.mark.parametrize(
    "text,line_no",
    [
        ("HD 1\ngenus 1\nlens 2\n", 3),
        ("HD 1\ngenus 1\ncurve g2\nfoo\n", 4),
        (
            "HD 1\ngenus 1\ncurve g2\nstandardizer\nimage g2\nimage g1\n"
            "inverse\nimage g1\nimage g2\n",
            4,
        ),
    ],
)
def test_hd_parse_errors(text, line_no):
    with pytest.raises(ParseError) as e:
        parse_hd(text)
    assert e.value.line_no == line_no


def test_tuples():
    t = parse_tuple("g1, g2 g2", 2)
    assert t == (Word.generator(2, 1), Word.from_ints(2, [2, 2]))
    assert format_tuple(t) == "g1, g2 g2"
    assert format_tuple(t, ["x", "y"]) == "x, y y"
    with pytest.raises(ParseError):
        parse_tuple(" ", 2)


def test_detect_kind():
    assert detect_kind("# comment\nHD 1\n") == "HD"
    assert detect_kind(USER_DIAGRAM) == "MSD"
    with pytest.raises(ParseError):
        detect_kind("genus 1\n")


def test_letter_edges():
    assert letter_edges(1) == (0, 2)
    assert letter_edges(2) == (1, 3)
    assert letter_edges(3) == (4, 6)


def test_render_octagon(lens21_bisection):
    svg = render_svg(lens21_bisection)
    assert svg.startswith('<svg width="400" height="400" xmlns="http://www.w3.org/2000/svg">')
    points = re.search(r'<polygon points="([^"]*)"', svg).group(1)
    assert len(points.split()) == 8
    assert svg.count("<g ") == 3
    assert 'id="system-3"' in svg
    assert svg.count("<line ") == len(chords(lens21_bisection))
    assert "3: gamma" in svg


def test_render_escapes_labels(lens21_bisection):
    labels = ["a<b", "b&c", "g>h"]
    d = reindexed(lens21_bisection, [1, 2, 3], False, (1, 1), labels=labels)
    svg = render_svg(d)
    assert "1: a&lt;b" in svg
    assert "2: b&amp;c" in svg
    assert "3: g&gt;h" in svg
    assert "a<b" not in svg


def test_render_genus_zero():
    surface = SurfaceModel(0)
    sphere = standard_system(surface)
    d = MultisectionDiagram(surface, (sphere, sphere, sphere), False, (0, 0))
    svg = render_svg(d)
    assert '<polygon points=""' in svg
    assert "<line " not in svg
    assert svg.count("<g ") == 3
