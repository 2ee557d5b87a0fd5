from __future__ import annotations

import re
import xml.etree.ElementTree as ET

from ordpack.benchmarks import okp17
from ordpack.model import make_instance
from ordpack.realize import Placement, verify_placement
from ordpack.render import PALETTE, ascii_layout, emit_svg
from ordpack.search import greedy_upper_bound

SVG = "{http://www.w3.org/2000/svg}"


def test_single_box_is_one_rectangle_at_the_origin():
    inst = make_instance([(4, 2)], (4, 4))
    svg = emit_svg(inst, Placement(((0, 0),)), target=400, margin=10)
    rects = ET.fromstring(svg).findall(f"{SVG}rect")
    assert len(rects) == 2  # outline plus the box
    box = rects[1].attrib
    assert (box["x"], box["width"], box["height"]) == ("10", "400", "200")
    assert box["y"] == "210"  # bottom edge sits on the container floor
    assert box["fill"] == PALETTE[0]


def test_svg_is_byte_stable():
    ub, pl = greedy_upper_bound(okp17(1), 1)
    inst = okp17(1).with_size(1, ub)
    assert verify_placement(inst, pl) == []
    first = emit_svg(inst, pl)
    assert first == emit_svg(inst, pl)
    root = ET.fromstring(first)
    assert len(root.findall(f"{SVG}rect")) == inst.n + 1
    assert [t.text for t in root.findall(f"{SVG}text")] == list(inst.names)


def test_labels_are_escaped():
    inst = make_instance([(1, 1)], (2, 2), names=["<a&b>"])
    svg = emit_svg(inst, Placement(((0, 0),)))
    assert "&lt;a&amp;b&gt;" in svg
    ET.fromstring(svg)


def test_ascii_layout_small():
    inst = make_instance([(2, 1), (1, 2)], (3, 2))
    text = ascii_layout(inst, Placement(((0, 0), (2, 0))))
    assert text.splitlines()[:2] == ["..B", "AAB"]
    assert text.rstrip().endswith("(1 char = 1 unit) A=0 B=1")


def test_ascii_layout_downscales_wide_containers():
    inst = make_instance([(300, 12)], (300, 12))
    lines = ascii_layout(inst, Placement(((0, 0),)), max_cols=100).splitlines()
    assert all(len(row) <= 100 for row in lines[:-1])
    assert set("".join(lines[:-1])) == {"A"}
    assert re.search(r"1 char = 3 units", lines[-1])
