import io
import math
import re
import xml.etree.ElementTree as ET

import numpy as np

from traceless import chain, report
from traceless.pert import SINE, rho_image
from traceless.table_data import TORUS_TABLE
from traceless.torus import TorusKnot
from traceless.twobridge import TwoBridgeKnot, restriction_curve

SVG = "{http://www.w3.org/2000/svg}"


def test_empty_spec_is_frame_only():
    text = report.svg_string(report.RenderSpec())
    root = ET.fromstring(text.split("\n", 1)[1])
    assert [el.tag for el in root] == [SVG + "rect", SVG + "rect"]
    assert report.svg_string(report.RenderSpec()) == text


def test_render_to_binary_and_text_sinks_agree():
    spec = report.RenderSpec(panels=[report.Panel(layers=[
        report.PathLayer(np.array([[0.1, 0.2], [3.0, 6.0]]), report.Style("#000000", 1.0), "line")])])
    t, b = io.StringIO(), io.BytesIO()
    report.render_svg(spec, t)
    report.render_svg(spec, b)
    assert b.getvalue().decode("utf-8") == t.getvalue()


def test_trefoil_diagram_has_one_marker_per_generator():
    k = TwoBridgeKnot(-3, 1)
    rep = chain.summarize(k, samples=1024)
    panel = report.pillowcase_panel([restriction_curve(k, 1024)], [rho_image(SINE, 1024)], rep, "K")
    text = report.svg_string(report.RenderSpec(panels=[panel]))
    assert text.count('class="generator"') == 3
    assert "α′" in text
    for x, y in re.findall(r'class="generator" cx="([\d.]+)" cy="([\d.]+)"', text):
        assert 28 <= float(x) <= 268 and 28 <= float(y) <= 508


def test_polylines_split_at_fold_lines():
    lift = np.array([[0.0, 0.0], [math.pi / 2, 2 * math.pi]])
    assert len(report.pillowcase_polylines(lift)) == 1
    lift = np.array([[0.0, 0.0], [math.pi, 4 * math.pi]])
    pieces = report.pillowcase_polylines(lift)
    assert len(pieces) == 2
    for p in pieces:
        assert np.all(p[:, 0] >= -1e-9) and np.all(p[:, 0] <= math.pi + 1e-9)
        assert np.all(p[:, 1] >= -1e-9) and np.all(p[:, 1] <= 2 * math.pi + 1e-9)
    assert report.pillowcase_polylines(np.zeros((0, 2))) == []


def test_report_tsv_layout():
    rep = chain.summarize(TwoBridgeKnot(-5, 3), samples=1024)
    text = report.report_tsv(rep, ["note"])
    lines = text.splitlines()
    assert lines[0].startswith("# knot=") and "total=5" in lines[0]
    assert "# note" in lines
    body = [ln for ln in lines if not ln.startswith("#")]
    assert body[0].split("\t") == list(report._GEN_HEADER)
    assert len(body) == 6


def test_table_tsv_round_trip():
    rows = [chain.table_row(k) for k in chain.torus_knots_up_to(13)]
    rows += [chain.table_row(TorusKnot(r.p, r.q)) for r in TORUS_TABLE]
    assert report.parse_table_tsv(report.table_tsv(rows)) == rows
    tb = [chain.two_bridge_row(k) for k in chain.two_bridge_knots_up_to(11)]
    assert report.parse_table_tsv(report.table_tsv(tb)) == tb


def test_table_json_lines():
    import json

    rows = [chain.table_row(TorusKnot(4, 5)), chain.table_row(TorusKnot(2, 3))]
    recs = [json.loads(ln) for ln in report.table_json(rows).splitlines()]
    assert recs[0]["knot"] == "T(4,5)" and recs[0]["graded_hi"] == 7
    assert recs[1]["kh_reference"] == [1, 0, 1, 1]
