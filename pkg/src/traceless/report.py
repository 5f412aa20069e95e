"""Serialization of reports and tables, and SVG pillowcase diagrams.

Every writer here is deterministic.  Floats go out at fixed precision and
iteration follows input order, so identical inputs give identical bytes.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from typing import IO, Iterable, Optional, Sequence, Union

import numpy as np

from .chain import TableRow, TwoBridgeRow, parse_chain
from .generators import GeneratorReport
from .pillowcase import TWO_PI, PillowPath, _canonical, diagonal_arc

PI = math.pi

# --- SVG ---------------------------------------------------------------------------

PILLOW_FRAME = (0.0, PI, 0.0, TWO_PI)
SQUARE_FRAME = (-1.0, 1.0, -1.0, 1.0)
PALETTE = ("#1f4e9c", "#c0392b", "#27864a", "#8e44ad", "#d68910", "#17a2b8")


@dataclass(frozen=True)
class Style:
    stroke: str = "#000000"
    width: float = 1.5
    dash: Optional[str] = None


@dataclass(frozen=True)
class PathLayer:
    """A polyline; ``fold`` canonicalizes pillowcase lifts before drawing."""

    points: np.ndarray
    style: Style = Style()
    label: str = ""
    fold: bool = True


@dataclass(frozen=True)
class PointLayer:
    points: tuple[tuple[float, float], ...]
    labels: tuple[str, ...]
    color: str = "#000000"
    fold: bool = True
    css: str = "generator"


Layer = Union[PathLayer, PointLayer]


@dataclass
class Panel:
    frame: tuple[float, float, float, float] = PILLOW_FRAME
    layers: list[Layer] = field(default_factory=list)
    title: str = ""


@dataclass
class RenderSpec:
    """``width`` and ``height`` are per panel; panels sit side by side."""

    width: int = 240
    height: int = 480
    panels: list[Panel] = field(default_factory=lambda: [Panel()])
    margin: int = 28


def _fmt(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _first_wall(a: np.ndarray, b: np.ndarray) -> Optional[float]:
    """Smallest ``s`` in (0, 1) where ``a + s (b - a)`` meets a fold line."""
    best = None
    for axis, period in ((0, PI), (1, TWO_PI)):
        lo, hi = sorted((a[axis], b[axis]))
        if hi - lo == 0.0:
            continue
        for k in range(math.floor(lo / period) + 1, math.ceil(hi / period)):
            s = (k * period - a[axis]) / (b[axis] - a[axis])
            if 1e-9 < s < 1.0 and (best is None or s < best):
                best = s
    return best


def pillowcase_polylines(lift: np.ndarray) -> list[np.ndarray]:
    """Split a lift into canonical pieces where it crosses the domain boundary."""
    lift = np.asarray(lift, dtype=float).reshape(-1, 2)
    if len(lift) == 0:
        return []

    def canon(p: np.ndarray) -> np.ndarray:
        g, t = _canonical(np.array([p[0]]), np.array([p[1]]), tol=0.0)
        return np.array([g[0], t[0]])

    pieces: list[list[np.ndarray]] = [[canon(lift[0])]]
    for a, b in zip(lift[:-1], lift[1:]):
        start = a
        while True:
            s = _first_wall(start, b)
            if s is None:
                break
            hit = start + s * (b - start)
            pieces[-1].append(canon(start + (s - 1e-12) * (b - start)))
            pieces.append([canon(start + (s + 1e-12) * (b - start))])
            start = hit
        pieces[-1].append(canon(b))
    return [np.array(p) for p in pieces if len(p) >= 2]


class _Mapper:
    def __init__(self, frame, ox: float, oy: float, w: float, h: float) -> None:
        self.x0, self.x1, self.y0, self.y1 = frame
        self.ox, self.oy, self.w, self.h = ox, oy, w, h

    def __call__(self, x: float, y: float) -> tuple[str, str]:
        px = self.ox + (x - self.x0) / (self.x1 - self.x0) * self.w
        py = self.oy + (self.y1 - y) / (self.y1 - self.y0) * self.h
        return _fmt(px), _fmt(py)


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def _panel_svg(panel: Panel, m: _Mapper, out: list[str]) -> None:
    x0, y0 = m(m.x0, m.y1)
    out.append(f'<rect class="frame" x="{x0}" y="{y0}" width="{_fmt(m.w)}" height="{_fmt(m.h)}" '
               'fill="none" stroke="#000000" stroke-width="1"/>')
    if panel.title:
        tx, ty = m(0.5 * (m.x0 + m.x1), m.y1)
        out.append(f'<text x="{tx}" y="{_fmt(float(ty) - 8)}" text-anchor="middle" font-size="12">'
                   f"{_escape(panel.title)}</text>")
    for layer in panel.layers:
        if isinstance(layer, PathLayer):
            pieces = pillowcase_polylines(layer.points) if layer.fold else [np.asarray(layer.points)]
            dash = f' stroke-dasharray="{layer.style.dash}"' if layer.style.dash else ""
            attrs = (f'fill="none" stroke="{layer.style.stroke}" stroke-width="{_fmt(layer.style.width)}"'
                     f"{dash}")
            out.append(f'<g class="path" data-label="{_escape(layer.label)}">')
            for piece in pieces:
                coords = " ".join(",".join(m(float(x), float(y))) for x, y in piece)
                out.append(f'<polyline points="{coords}" {attrs}/>')
            out.append("</g>")
        else:
            for (x, y), label in zip(layer.points, layer.labels):
                if layer.fold:
                    g, t = _canonical(np.array([x]), np.array([y]))
                    x, y = float(g[0]), float(t[0])
                px, py = m(x, y)
                out.append(f'<circle class="{layer.css}" cx="{px}" cy="{py}" r="3" fill="{layer.color}"/>')
                if label:
                    out.append(f'<text x="{_fmt(float(px) + 4)}" y="{_fmt(float(py) - 4)}" font-size="9">'
                               f"{_escape(label)}</text>")


def svg_string(spec: RenderSpec) -> str:
    n = max(len(spec.panels), 1)
    mg = spec.margin
    total_w = n * (spec.width + 2 * mg)
    total_h = spec.height + 2 * mg
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total_w}" height="{total_h}" '
        f'viewBox="0 0 {total_w} {total_h}">',
        f'<rect width="{total_w}" height="{total_h}" fill="#ffffff"/>',
    ]
    for i, panel in enumerate(spec.panels):
        m = _Mapper(panel.frame, i * (spec.width + 2 * mg) + mg, mg, spec.width, spec.height)
        _panel_svg(panel, m, out)
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(spec: RenderSpec, out: IO) -> None:
    """Write the SVG document to a text or binary sink."""
    text = svg_string(spec)
    if isinstance(out, (io.RawIOBase, io.BufferedIOBase)) or "b" in getattr(out, "mode", ""):
        out.write(text.encode("utf-8"))
    else:
        out.write(text)


def generator_label(g, index: int) -> str:
    return "α′" if g.is_alpha else f"{g.source}.{index}"


def generator_layer(report: GeneratorReport) -> PointLayer:
    pts, labels = [], []
    counts: dict[tuple[int, int], int] = {}
    for g in report.generators:
        key = (g.component, g.source)
        counts[key] = counts.get(key, 0) + 1
        pts.append(g.location.as_tuple())
        labels.append(generator_label(g, counts[key]))
    return PointLayer(tuple(pts), tuple(labels), color="#000000")


def pillowcase_panel(
    paths: Sequence[PillowPath],
    circles: Sequence[PillowPath],
    report: Optional[GeneratorReport] = None,
    title: str = "",
) -> Panel:
    layers: list[Layer] = [PathLayer(diagonal_arc(512).lift, Style("#888888", 1.0, "4,3"), "diagonal")]
    for i, c in enumerate(circles):
        layers.append(PathLayer(c.lift, Style("#d68910", 1.2), c.label or f"circle {i + 1}"))
    for i, p in enumerate(paths):
        layers.append(PathLayer(p.lift, Style(PALETTE[i % len(PALETTE)], 1.6), p.label))
    if report is not None:
        layers.append(generator_layer(report))
    return Panel(PILLOW_FRAME, layers, title)


def zero_set_panel(zero_set, title: str = "") -> Panel:
    layers: list[Layer] = []
    for i, comp in enumerate(zero_set.components):
        layers.append(PathLayer(comp.points, Style(PALETTE[i % len(PALETTE)], 1.6), comp.kind, fold=False))
    marks = [(float(x), float(y)) for x, y in zero_set.junctions]
    if marks:
        layers.append(PointLayer(tuple(marks), tuple("" for _ in marks), "#555555", fold=False, css="junction"))
    fibers = [(float(x), float(y)) for x, y in zero_set.fiber_points]
    if fibers:
        layers.append(PointLayer(tuple(fibers), tuple("fiber" for _ in fibers), "#c0392b", fold=False, css="fiber"))
    return Panel(SQUARE_FRAME, layers, title)


# --- generator reports -------------------------------------------------------------

_GEN_HEADER = ("knot", "index", "label", "source", "component", "branch", "gamma", "theta", "margin")


def _g(v: float) -> str:
    return f"{v:.12g}"


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    return str(v)


def report_summary(report: GeneratorReport) -> dict:
    return {
        "knot": str(report.knot),
        "mode": report.mode,
        "epsilon": report.epsilon,
        "total": report.total,
        "graded": str(report.graded) if report.graded is not None else None,
        "grading_known": report.grading_known,
        "flags": _jsonable(report.flags),
    }


def report_tsv(report: GeneratorReport, extra: Iterable[str] = ()) -> str:
    """Generator table with the summary as leading ``#`` lines."""
    s = report_summary(report)
    lines = [f"# knot={s['knot']} mode={s['mode']} epsilon={s['epsilon']} total={s['total']}"]
    for key in sorted(s["flags"]):
        lines.append(f"# {key}={json.dumps(s['flags'][key], sort_keys=True, ensure_ascii=False)}")
    if s["graded"] is not None:
        lines.append(f"# graded={s['graded']}")
    lines.extend(f"# {e}" for e in extra)
    lines.append("\t".join(_GEN_HEADER))
    counts: dict[tuple[int, int], int] = {}
    for i, g in enumerate(report.generators):
        key = (g.component, g.source)
        counts[key] = counts.get(key, 0) + 1
        lines.append("\t".join([
            s["knot"], str(i), generator_label(g, counts[key]), str(g.source), str(g.component), str(g.branch),
            _g(g.location.gamma), _g(g.location.theta), _g(g.margin),
        ]))
    return "\n".join(lines) + "\n"


def report_json(report: GeneratorReport, extra: Optional[dict] = None) -> str:
    s = report_summary(report)
    counts: dict[tuple[int, int], int] = {}
    gens = []
    for g in report.generators:
        key = (g.component, g.source)
        counts[key] = counts.get(key, 0) + 1
        gens.append({
            "label": generator_label(g, counts[key]),
            "source": g.source,
            "component": g.component,
            "branch": g.branch,
            "gamma": g.location.gamma,
            "theta": g.location.theta,
            "margin": g.margin,
        })
    s["generators"] = gens
    if extra:
        s.update(_jsonable(extra))
    return json.dumps(s, sort_keys=True, ensure_ascii=False) + "\n"


# --- tables ----------------------------------------------------------------------

TORUS_COLUMNS = ("knot", "p", "q", "sigma", "abs_delta", "ci_total", "ci_graded", "graded_source",
                 "kh_reference", "inat_lo", "inat_hi", "graded_lo", "graded_hi", "zero_differential")
TWO_BRIDGE_COLUMNS = ("knot", "p", "q", "determinant", "ci_total", "kh_reference", "zero_differential")
_UNKNOWN = "?"


def _ranks_text(r: Optional[tuple[int, ...]]) -> str:
    return _UNKNOWN if r is None else "(" + ",".join(str(v) for v in r) + ")"


def _parse_ranks(s: str) -> Optional[tuple[int, int, int, int]]:
    if s == _UNKNOWN:
        return None
    vals = tuple(int(v) for v in s.strip("()").split(","))
    if len(vals) != 4:
        raise ValueError(f"expected four ranks, got {s!r}")
    return vals  # type: ignore[return-value]


def _torus_record(row: TableRow) -> dict:
    return {
        "knot": row.knot,
        "p": row.p,
        "q": row.q,
        "sigma": row.sigma,
        "abs_delta": row.abs_delta,
        "ci_total": row.ci_total,
        "ci_graded": str(row.ci_graded) if row.ci_graded is not None else None,
        "graded_source": row.graded_source,
        "kh_reference": list(row.kh_reference) if row.kh_reference else None,
        "inat_lo": row.inat_bounds[0],
        "inat_hi": row.inat_bounds[1],
        "graded_lo": row.graded_bounds[0],
        "graded_hi": row.graded_bounds[1],
        "zero_differential": row.zero_differential,
    }


def _two_bridge_record(row: TwoBridgeRow) -> dict:
    return {
        "knot": row.knot,
        "p": row.p,
        "q": row.q,
        "determinant": row.determinant,
        "ci_total": row.ci_total,
        "kh_reference": list(row.kh_reference) if row.kh_reference else None,
        "zero_differential": row.zero_differential,
    }


def _cell(v) -> str:
    if v is None:
        return _UNKNOWN
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return _ranks_text(tuple(v))
    return str(v)


TableRows = Sequence[Union[TableRow, TwoBridgeRow]]


def _records(rows: TableRows) -> tuple[tuple[str, ...], list[dict]]:
    if rows and isinstance(rows[0], TwoBridgeRow):
        return TWO_BRIDGE_COLUMNS, [_two_bridge_record(r) for r in rows]  # type: ignore[arg-type]
    return TORUS_COLUMNS, [_torus_record(r) for r in rows]  # type: ignore[arg-type]


def table_tsv(rows: TableRows) -> str:
    cols, recs = _records(rows)
    lines = ["\t".join(cols)]
    lines.extend("\t".join(_cell(rec[c]) for c in cols) for rec in recs)
    return "\n".join(lines) + "\n"


def table_json(rows: TableRows) -> str:
    """One JSON object per line, in input order."""
    _, recs = _records(rows)
    return "".join(json.dumps(r, sort_keys=True, ensure_ascii=False) + "\n" for r in recs)


def parse_table_tsv(text: str) -> list[Union[TableRow, TwoBridgeRow]]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = tuple(lines[0].split("\t"))
    out: list[Union[TableRow, TwoBridgeRow]] = []
    for line in lines[1:]:
        rec = dict(zip(header, line.split("\t")))
        if header == TWO_BRIDGE_COLUMNS:
            out.append(TwoBridgeRow(int(rec["p"]), int(rec["q"]), int(rec["determinant"]), int(rec["ci_total"]),
                                    _parse_ranks(rec["kh_reference"])))
            continue
        if header != TORUS_COLUMNS:
            raise ValueError("unrecognized table header")
        graded = None if rec["ci_graded"] == _UNKNOWN else parse_chain(rec["ci_graded"])
        out.append(TableRow(
            p=int(rec["p"]),
            q=int(rec["q"]),
            sigma=int(rec["sigma"]),
            abs_delta=int(rec["abs_delta"]),
            ci_total=int(rec["ci_total"]),
            ci_graded=graded,
            graded_source=None if rec["graded_source"] == _UNKNOWN else rec["graded_source"],
            kh_reference=_parse_ranks(rec["kh_reference"]),
            inat_bounds=(int(rec["inat_lo"]), int(rec["inat_hi"])),
            graded_bounds=(int(rec["graded_lo"]), int(rec["graded_hi"])),
            zero_differential=rec["zero_differential"] == "yes",
        ))
    return out
