"""Region tables, CSV emission, and log-log SVG capability diagrams.

CSV: one header row ``region_label,width,max_depth,quops,source,p_hat,
stderr,d_code`` with empty cells for absent optionals, LF endings, floats in
shortest round-trip form, and the resolved scenario echoed in a leading
``#`` comment block. Byte output is a deterministic function of the inputs.

SVG: standalone SVG 1.1 drawn by hand (no plotting framework). Axes map
x = log10(width), y = log10(depth) affinely onto the viewport; each region
becomes a step-boundary polygon where frontier point (w, d) covers the cell
[w, w+1) x (0, d]. Regions are drawn largest-first so nested regions stay
visible; frontiers exceeding the axes are clipped and flagged in the legend.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence
from xml.sax.saxutils import escape

from .model import CapabilityRegion

CSV_HEADER = "region_label,width,max_depth,quops,source,p_hat,stderr,d_code"

_SOURCES = ("analytic", "empirical", "mitigated", "qec")


@dataclass(frozen=True)
class RegionRow:
    region_label: str
    width: int
    max_depth: int
    quops: int
    source: str
    p_hat: float | None = None
    stderr: float | None = None
    d_code: int | None = None

    def __post_init__(self) -> None:
        if self.source not in _SOURCES:
            raise ValueError(f"source must be one of {_SOURCES}, got {self.source!r}")
        if self.source != "empirical" and (
            self.p_hat is not None or self.stderr is not None
        ):
            raise ValueError("p_hat/stderr only belong to empirical rows")
        if self.source != "qec" and self.d_code is not None:
            raise ValueError("d_code only belongs to qec rows")
        if self.source == "empirical" and self.max_depth > 0 and self.p_hat is None:
            raise ValueError("empirical rows with a frontier depth need p_hat/stderr")
        if self.source == "qec" and self.max_depth > 0 and self.d_code is None:
            raise ValueError("qec rows with a frontier depth need d_code")


@dataclass(frozen=True)
class RegionTable:
    """Rows sorted by (region_label, width); one table per logical grouping."""

    rows: tuple[RegionRow, ...]

    def __post_init__(self) -> None:
        keys = [(r.region_label, r.width) for r in self.rows]
        if keys != sorted(keys):
            raise ValueError("rows must be sorted by (region_label, width)")


def table_from_region(
    region: CapabilityRegion,
    cells: Mapping[tuple[int, int], tuple[float, float]] | None = None,
) -> RegionTable:
    """Frontier table for a region.

    ``cells`` maps (width, depth) to (p_hat, stderr) for empirical regions;
    the frontier row carries the statistics of its frontier cell.
    """
    d_codes = region.metadata.get("d_code", {}) if region.source == "qec" else {}
    rows = []
    for w in region.widths():
        depth = region.frontier[w]
        p_hat = stderr = None
        if region.source == "empirical" and depth > 0 and cells is not None:
            p_hat, stderr = cells.get((w, depth), (None, None))
        rows.append(
            RegionRow(
                region_label=region.label,
                width=w,
                max_depth=depth,
                quops=w * depth,
                source=region.source,
                p_hat=p_hat,
                stderr=stderr,
                d_code=d_codes.get(w) if region.source == "qec" else None,
            )
        )
    return RegionTable(rows=tuple(rows))


def cells_table(label: str, estimates: Iterable) -> RegionTable:
    """Per-cell statistics table for a benchmark run (one row per cell)."""
    rows = [
        RegionRow(
            region_label=label,
            width=e.shape.width,
            max_depth=e.shape.depth,
            quops=e.shape.quops,
            source="empirical",
            p_hat=e.p_hat,
            stderr=e.stderr,
        )
        for e in estimates
    ]
    rows.sort(key=lambda r: (r.region_label, r.width, r.max_depth))
    return RegionTable(rows=tuple(rows))


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_csv(
    tables: Sequence[RegionTable], scenario_echo: Mapping | None = None
) -> bytes:
    """Serialize tables to CSV bytes with the config echo as # comments."""
    lines = []
    if scenario_echo is not None:
        echo = json.dumps(scenario_echo, sort_keys=True, separators=(",", ":"))
        lines.append(f"# scenario: {echo}")
    lines.append(CSV_HEADER)
    for table in tables:
        for r in table.rows:
            lines.append(
                ",".join(
                    (
                        r.region_label,
                        str(r.width),
                        str(r.max_depth),
                        str(r.quops),
                        r.source,
                        _cell(r.p_hat),
                        _cell(r.stderr),
                        _cell(r.d_code),
                    )
                )
            )
    return ("\n".join(lines) + "\n").encode("utf-8")


DEFAULT_PALETTE = (
    "#4477aa",
    "#ee6677",
    "#228833",
    "#ccbb44",
    "#66ccee",
    "#aa3377",
    "#bbbbbb",
)


@dataclass(frozen=True)
class RenderStyle:
    """Axis ranges, size, and decoration for the capability diagram."""

    width_range: tuple[int, int] = (1, 10**4)
    depth_range: tuple[int, int] = (1, 10**12)
    size: tuple[int, int] = (760, 560)
    title: str = ""
    palette: tuple[str, ...] = DEFAULT_PALETTE
    quop_guides: tuple[int, ...] = ()
    show_legend: bool = True

    def __post_init__(self) -> None:
        if self.width_range[0] < 1 or self.width_range[1] <= self.width_range[0]:
            raise ValueError("width_range must satisfy 1 <= lo < hi")
        if self.depth_range[0] < 1 or self.depth_range[1] <= self.depth_range[0]:
            raise ValueError("depth_range must satisfy 1 <= lo < hi")


_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 64.0, 20.0, 40.0, 48.0


def _fmt(v: float) -> str:
    return f"{v:.2f}"


class _LogLogFrame:
    """Affine map from (log10 width, log10 depth) onto the SVG viewport."""

    def __init__(self, style: RenderStyle):
        self.style = style
        self.x0 = math.log10(style.width_range[0])
        self.x1 = math.log10(style.width_range[1])
        self.y0 = math.log10(style.depth_range[0])
        self.y1 = math.log10(style.depth_range[1])
        self.px0 = _MARGIN_L
        self.px1 = style.size[0] - _MARGIN_R
        self.py0 = style.size[1] - _MARGIN_B
        self.py1 = _MARGIN_T

    def x(self, width: float) -> float:
        lx = min(max(math.log10(width), self.x0), self.x1)
        return self.px0 + (lx - self.x0) / (self.x1 - self.x0) * (self.px1 - self.px0)

    def y(self, depth: float) -> float:
        ly = min(max(math.log10(depth), self.y0), self.y1)
        return self.py0 + (ly - self.y0) / (self.y1 - self.y0) * (self.py1 - self.py0)


def _region_polygon(region: CapabilityRegion, frame: _LogLogFrame) -> tuple[str, bool]:
    """Staircase polygon points for a region; flags clipping."""
    style = frame.style
    w_hi = style.width_range[1]
    d_hi = style.depth_range[1]
    clipped = False
    pts: list[tuple[float, float]] = []
    baseline = frame.y(style.depth_range[0])
    widths = [w for w in region.widths() if w <= w_hi]
    if any(region.frontier[w] >= 1 for w in region.widths() if w > w_hi):
        clipped = True
    first = True
    last_x = frame.x(style.width_range[0])
    for w in widths:
        depth = region.frontier[w]
        if depth > d_hi:
            clipped = True
            depth = d_hi
        y = frame.y(depth) if depth >= 1 else baseline
        x_left = frame.x(w)
        x_right = frame.x(min(w + 1, w_hi))
        if first:
            pts.append((x_left, baseline))
            first = False
        pts.append((x_left, y))
        pts.append((x_right, y))
        last_x = x_right
    if not pts:
        return "", clipped
    pts.append((last_x, baseline))
    return " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts), clipped


def _decades(lo: int, hi: int) -> list[int]:
    out = []
    e = math.ceil(math.log10(lo))
    while 10**e <= hi:
        out.append(10**e)
        e += 1
    if lo not in out:
        out.insert(0, lo)
    return out


def _exp_label(v: int) -> str:
    e = math.log10(v)
    if e == int(e):
        return f"10^{int(e)}" if e >= 3 else str(v)
    return str(v)


def render_svg(
    regions: Sequence[CapabilityRegion],
    style: RenderStyle = RenderStyle(),
    scenario_echo: Mapping | None = None,
) -> str:
    """Render regions as a standalone SVG 1.1 document (deterministic text)."""
    if not regions:
        raise ValueError("render_svg needs at least one region")
    frame = _LogLogFrame(style)
    w_px, h_px = style.size
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{w_px}" height="{h_px}" viewBox="0 0 {w_px} {h_px}">',
    ]
    if scenario_echo is not None:
        echo = json.dumps(scenario_echo, sort_keys=True, separators=(",", ":"))
        parts.append(f"<metadata>{escape(echo)}</metadata>")
    parts.append(f'<rect width="{w_px}" height="{h_px}" fill="#ffffff"/>')
    if style.title:
        parts.append(
            f'<text x="{_fmt(w_px / 2)}" y="24" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15">{escape(style.title)}</text>'
        )

    # grid + ticks
    tick_parts = []
    for wv in _decades(*style.width_range):
        x = frame.x(wv)
        tick_parts.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(frame.py0)}" x2="{_fmt(x)}" '
            f'y2="{_fmt(frame.py1)}" stroke="#dddddd" stroke-width="0.5"/>'
        )
        tick_parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(frame.py0 + 16)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_exp_label(wv)}</text>'
        )
    for dv in _decades(*style.depth_range):
        y = frame.y(dv)
        tick_parts.append(
            f'<line x1="{_fmt(frame.px0)}" y1="{_fmt(y)}" x2="{_fmt(frame.px1)}" '
            f'y2="{_fmt(y)}" stroke="#dddddd" stroke-width="0.5"/>'
        )
        tick_parts.append(
            f'<text x="{_fmt(frame.px0 - 6)}" y="{_fmt(y + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{_exp_label(dv)}</text>'
        )
    parts.extend(tick_parts)

    # constant-quop guide lines (diagonals in log-log)
    for guide in style.quop_guides:
        w_lo, w_hi = style.width_range
        d_lo, d_hi = style.depth_range
        seg = []
        for wv in (max(w_lo, guide / d_hi), min(w_hi, guide / d_lo)):
            if w_lo <= wv <= w_hi and d_lo <= guide / wv <= d_hi:
                seg.append((frame.x(wv), frame.y(guide / wv)))
        if len(seg) == 2:
            (xa, ya), (xb, yb) = seg
            parts.append(
                f'<line x1="{_fmt(xa)}" y1="{_fmt(ya)}" x2="{_fmt(xb)}" '
                f'y2="{_fmt(yb)}" stroke="#888888" stroke-width="1" '
                f'stroke-dasharray="6,4"/>'
            )
            parts.append(
                f'<text x="{_fmt(xb - 4)}" y="{_fmt(yb - 6)}" text-anchor="end" '
                f'font-family="sans-serif" font-size="11" fill="#666666">'
                f"{_exp_label(guide)} quops</text>"
            )

    # regions, largest first so nesting stays visible
    order = sorted(
        range(len(regions)),
        key=lambda i: (-regions[i].max_quops(), regions[i].label),
    )
    clipped_labels = []
    for i in order:
        region = regions[i]
        color = style.palette[i % len(style.palette)]
        points, clipped = _region_polygon(region, frame)
        if clipped:
            clipped_labels.append(region.label)
        if points:
            parts.append(
                f'<polygon id="region-{i}" points="{points}" fill="{color}" '
                f'fill-opacity="0.45" stroke="{color}" stroke-width="1.5"/>'
            )

    # axes on top
    parts.append(
        f'<line x1="{_fmt(frame.px0)}" y1="{_fmt(frame.py0)}" x2="{_fmt(frame.px1)}" '
        f'y2="{_fmt(frame.py0)}" stroke="#000000" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{_fmt(frame.px0)}" y1="{_fmt(frame.py0)}" x2="{_fmt(frame.px0)}" '
        f'y2="{_fmt(frame.py1)}" stroke="#000000" stroke-width="1"/>'
    )
    parts.append(
        f'<text x="{_fmt((frame.px0 + frame.px1) / 2)}" y="{_fmt(frame.py0 + 34)}" '
        f'text-anchor="middle" font-family="sans-serif" font-size="12">'
        f"width (qubits)</text>"
    )
    parts.append(
        f'<text x="16" y="{_fmt((frame.py0 + frame.py1) / 2)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" transform="rotate(-90 16 '
        f'{_fmt((frame.py0 + frame.py1) / 2)})">depth (layers)</text>'
    )

    if style.show_legend:
        lx = frame.px0 + 10
        ly = frame.py1 + 8
        for i, region in enumerate(regions):
            color = style.palette[i % len(style.palette)]
            label = region.label
            if label in clipped_labels:
                label += " (clipped)"
            parts.append(
                f'<rect x="{_fmt(lx)}" y="{_fmt(ly + 16 * i)}" width="12" height="12" '
                f'fill="{color}" fill-opacity="0.45" stroke="{color}"/>'
            )
            parts.append(
                f'<text x="{_fmt(lx + 18)}" y="{_fmt(ly + 16 * i + 10)}" '
                f'font-family="sans-serif" font-size="11">{escape(label)}</text>'
            )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
