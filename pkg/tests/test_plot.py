import xml.etree.ElementTree as ET

import pytest

from twostokes import region, states
from twostokes.plot import X_RANGE, Y_RANGE, emit_svg_scatter

SVG = "{http://www.w3.org/2000/svg}"


def to_pixels(x, y, width=640, height=480, margin=50):
    # independent restatement of the plot transform
    u = margin + (x - X_RANGE[0]) * (width - 2 * margin) / (X_RANGE[1] - X_RANGE[0])
    v = margin + (Y_RANGE[1] - y) * (height - 2 * margin) / (Y_RANGE[1] - Y_RANGE[0])
    return round(u, 2), round(v, 2)


def vertices():
    return [region.RegionDataset(region.polygon_vertices(), "vertices")]


def test_svg_is_well_formed():
    root = ET.fromstring(emit_svg_scatter(vertices()).encode())
    assert root.tag == SVG + "svg"
    assert root.get("version") == "1.1"


def test_five_labeled_vertex_markers():
    root = ET.fromstring(emit_svg_scatter(vertices()).encode())
    markers = [c for c in root.iter(SVG + "circle") if c.get("class") == "vertex"]
    assert sorted(m.get("id") for m in markers) == [f"vertex-{k}" for k in "ABCDE"]
    labels = {t.text for t in root.find(f"{SVG}g[@id='vertices']").iter(SVG + "text")}
    assert labels == set("ABCDE")
    for m in markers:
        x, y = region.VERTEX_COORDS[m.get("id")[-1]]
        assert (float(m.get("cx")), float(m.get("cy"))) == pytest.approx(to_pixels(x, y), abs=0.006)


def test_werner_polyline_joins_b_and_d():
    ds = region.werner_sweep(states.bell("phi_plus"), 21)
    root = ET.fromstring(emit_svg_scatter([ds]).encode())
    line = root.find(f"{SVG}g[@class='werner']/{SVG}polyline")
    pts = [tuple(map(float, p.split(","))) for p in line.get("points").split()]
    assert len(pts) == 21
    markers = {c.get("id"): (float(c.get("cx")), float(c.get("cy"))) for c in root.iter(SVG + "circle") if c.get("id")}
    assert pts[0] == markers["vertex-B"]
    assert pts[-1] == markers["vertex-D"]


def test_output_is_deterministic():
    cloud = region.random_cloud(50, states.RandomSpec("ginibre-mixed", seed=9))
    a = emit_svg_scatter([cloud, *vertices()], title="cloud & vertices")
    b = emit_svg_scatter([cloud, *vertices()], title="cloud & vertices")
    assert a == b
    assert "cloud &amp; vertices" in a
    ET.fromstring(a.encode())


def test_empty_input_is_rejected():
    with pytest.raises(ValueError):
        emit_svg_scatter([])
