import re

from splitcircle.chord import ChordModel
from splitcircle.recognize import recognize
from splitcircle.render import render_svg


def test_two_crossing_chords():
    svg = render_svg(ChordModel((0, 1, 0, 1)))
    chords = re.findall(r'<line class="chord"[^>]*x1="([\d.]+)" y1="([\d.]+)" x2="([\d.]+)" y2="([\d.]+)"', svg)
    assert len(chords) == 2
    # endpoints at 0, 90, 180, 270 degrees: one vertical and one horizontal chord
    (a, b, c, d), (e, f, g, h) = [tuple(map(float, t)) for t in chords]
    assert a == c and f == h


def test_tent_model_twelve_arc_labels(tent):
    svg = render_svg(recognize(tent).model)
    labels = re.findall(r'<text class="arc"[^>]*>([^<]+)</text>', svg)
    assert len(labels) == 12 and len(set(labels)) == 12
    assert svg.count('class="chord"') == 6


def test_render_deterministic(tent):
    m = recognize(tent).model
    assert render_svg(m) == render_svg(recognize(tent).model)


def test_render_names_escaped():
    svg = render_svg(ChordModel((0, 0)), names={0: "a<b"})
    assert "a&lt;b" in svg and svg.startswith("<?xml")
