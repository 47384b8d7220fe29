"""Deterministic GlyphScene -> standalone SVG serialization.

Element order is fixed (background, cells/polylines, bands/arcs, glyph
frames, blue blocks, grey bars, red blocks, red bars, labels) so that the
salient red selection marks always paint above the grey/blue context, and so
that output is byte-identical across runs for the same scene and style. All
numeric attributes use fixed 3-decimal formatting.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .scene import GLYPH_H, GLYPH_W, PC_AXIS_GAP, GlyphScene

DEFAULT_PALETTE = {
    "background": "#ffffff",
    "frame": "#b0b0b0",
    "am": "#a6cee3",
    "jm": "#e31a1c",
    "grey_bar": "#c8c8c8",
    "red_bar": "#e31a1c",
    "link": "#e31a1c",
    "missing_cell": "#e31a1c",
    "cell_low": "#404040",
    "cell_high": "#d9d9d9",
    "axis": "#808080",
    "polyline": "#9aa7b8",
    "polyline_highlight": "#e31a1c",
    "label": "#333333",
}


@dataclass
class RenderStyle:
    width: float = 960.0
    height: float = 600.0
    palette: dict = field(default_factory=dict)
    label_size: float = 10.0
    show_labels: bool = True

    def __post_init__(self):
        merged = dict(DEFAULT_PALETTE)
        merged.update(self.palette)
        self.palette = merged

    @staticmethod
    def from_json(text: str) -> "RenderStyle":
        raw = json.loads(text)
        return RenderStyle(
            width=raw.get("width", 960.0),
            height=raw.get("height", 600.0),
            palette=raw.get("palette", {}),
            label_size=raw.get("label_size", 10.0),
            show_labels=raw.get("show_labels", True),
        )


def _f(x: float) -> str:
    return f"{x:.3f}"


def _lerp_color(lo: str, hi: str, t: float) -> str:
    lo_rgb = [int(lo[i : i + 2], 16) for i in (1, 3, 5)]
    hi_rgb = [int(hi[i : i + 2], 16) for i in (1, 3, 5)]
    rgb = [round(a + (b - a) * t) for a, b in zip(lo_rgb, hi_rgb)]
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def _truncate(label: str, max_chars: int) -> str:
    if len(label) <= max_chars:
        return label
    if max_chars <= 1:
        return "…"
    return label[: max_chars - 1] + "…"


class _Transform:
    """Uniform scene-unit -> pixel mapping with margins."""

    def __init__(self, scene: GlyphScene, width: float, height: float, margin: float = 20.0):
        vw, vh = scene.viewport
        self.scale = min((width - 2 * margin) / vw, (height - 2 * margin) / vh)
        self.ox = margin
        self.oy = margin

    def x(self, sx: float) -> float:
        return self.ox + sx * self.scale

    def y(self, sy: float) -> float:
        return self.oy + sy * self.scale

    def d(self, length: float) -> float:
        return length * self.scale


def render(scene: GlyphScene, style: RenderStyle | None = None) -> str:
    style = style or RenderStyle()
    if style.width <= 0 or style.height <= 0:
        raise ValueError("viewport dimensions must be positive")
    pal = style.palette
    t = _Transform(scene, style.width, style.height)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_f(style.width)}" height="{_f(style.height)}" '
        f'viewBox="0 0 {_f(style.width)} {_f(style.height)}">',
        f'<rect class="background" x="0" y="0" width="{_f(style.width)}" '
        f'height="{_f(style.height)}" fill="{pal["background"]}"/>',
    ]

    def rect(cls, x, y, w, h, fill):
        parts.append(
            f'<rect class="{cls}" x="{_f(t.x(x))}" y="{_f(t.y(y))}" '
            f'width="{_f(t.d(w))}" height="{_f(t.d(h))}" fill="{fill}"/>'
        )

    # cells (heatmap)
    if scene.cells is not None:
        c = scene.cells
        n_rows = len(c.levels)
        n_cols = len(c.columns)
        if n_rows and n_cols:
            row_h = c.h / n_rows
            col_w = c.w / n_cols
            for r, row in enumerate(c.levels):
                for col, level in enumerate(row):
                    if level is None:
                        fill = pal["missing_cell"]
                        cls = "cell-missing"
                    else:
                        fill = _lerp_color(pal["cell_low"], pal["cell_high"], level)
                        cls = "cell"
                    rect(cls, c.x + col * col_w, c.y + r * row_h, col_w, row_h, fill)

    # polylines (pc): axes, then normal lines, then highlighted lines
    if scene.polylines:
        m = len(scene.polylines[0].ys)
        axis_top = GLYPH_H + 0.5 if scene.glyphs else 0.5
        axis_h = 4.0
        axis_x = [k * PC_AXIS_GAP for k in range(m)]
        for ax in axis_x:
            parts.append(
                f'<line class="axis" x1="{_f(t.x(ax))}" y1="{_f(t.y(axis_top))}" '
                f'x2="{_f(t.x(ax))}" y2="{_f(t.y(axis_top + axis_h))}" '
                f'stroke="{pal["axis"]}" stroke-width="1"/>'
            )

        def poly_points(p):
            pts = []
            for k, val in enumerate(p.ys):
                py = axis_top + (1.0 - val) * axis_h
                pts.append(f"{_f(t.x(axis_x[k]))},{_f(t.y(py))}")
            return " ".join(pts)

        for p in scene.polylines:
            if not p.highlight:
                parts.append(
                    f'<polyline class="item" points="{poly_points(p)}" fill="none" '
                    f'stroke="{pal["polyline"]}" stroke-width="1"/>'
                )
        for p in scene.polylines:
            if p.highlight:
                parts.append(
                    f'<polyline class="item-highlight" points="{poly_points(p)}" '
                    f'fill="none" stroke="{pal["polyline_highlight"]}" stroke-width="1"/>'
                )

    # links (arcs in linear, bands in radial)
    centres = {g.name: (g.x + g.w / 2, g.y + g.h / 2) for g in scene.glyphs}
    tops = {g.name: (g.x + g.w / 2, g.y) for g in scene.glyphs}
    max_stroke = t.d(0.4)
    for link in scene.links:
        stroke_w = max(link.weight * max_stroke, 1.0)
        if scene.layout == "radial":
            (x1, y1), (x2, y2) = centres[link.a], centres[link.b]
            parts.append(
                f'<line class="band" x1="{_f(t.x(x1))}" y1="{_f(t.y(y1))}" '
                f'x2="{_f(t.x(x2))}" y2="{_f(t.y(y2))}" '
                f'stroke="{pal["link"]}" stroke-width="{_f(stroke_w)}" opacity="0.6"/>'
            )
        else:
            (x1, y1), (x2, y2) = tops[link.a], tops[link.b]
            cx = (x1 + x2) / 2
            cy = min(y1, y2) - abs(x2 - x1) * 0.4 - 0.2
            parts.append(
                f'<path class="arc" d="M {_f(t.x(x1))} {_f(t.y(y1))} '
                f'Q {_f(t.x(cx))} {_f(t.y(cy))} {_f(t.x(x2))} {_f(t.y(y2))}" '
                f'fill="none" stroke="{pal["link"]}" stroke-width="{_f(stroke_w)}" '
                f'opacity="0.6"/>'
            )

    # glyph frames
    for g in scene.glyphs:
        stroke = pal["jm"] if g.selected else pal["frame"]
        parts.append(
            f'<rect class="frame" x="{_f(t.x(g.x))}" y="{_f(t.y(g.y))}" '
            f'width="{_f(t.d(g.w))}" height="{_f(t.d(g.h))}" fill="none" '
            f'stroke="{stroke}" stroke-width="1"/>'
        )
    # blue AM blocks (anchored at glyph bottom)
    for g in scene.glyphs:
        if g.am > 0:
            bh = g.am * g.h
            rect("am-block", g.x, g.y + g.h - bh, g.w, bh, pal["am"])
    # grey histogram bars, bin 0 at the bottom, anchored left
    for g in scene.glyphs:
        k = len(g.grey)
        if k == 0:
            continue
        bin_h = g.h / k
        for b, frac in enumerate(g.grey):
            if frac <= 0:
                continue
            rect(
                "grey-bar",
                g.x,
                g.y + g.h - (b + 1) * bin_h,
                frac * g.w / 2,
                bin_h,
                pal["grey_bar"],
            )
    # red JM blocks (selection role: painted after grey/blue)
    for g in scene.glyphs:
        if g.jm is not None and g.jm > 0:
            bh = g.jm * g.h
            rect("jm-block", g.x, g.y + g.h - bh, g.w, bh, pal["jm"])
    # red histogram bars, anchored right
    for g in scene.glyphs:
        if g.red is None:
            continue
        k = len(g.red)
        if k == 0:
            continue
        bin_h = g.h / k
        for b, frac in enumerate(g.red):
            if frac <= 0:
                continue
            bw = frac * g.w / 2
            parts.append(
                f'<rect class="red-bar" x="{_f(t.x(g.x + g.w - bw))}" '
                f'y="{_f(t.y(g.y + g.h - (b + 1) * bin_h))}" '
                f'width="{_f(t.d(bw))}" height="{_f(t.d(bin_h))}" '
                f'fill="{pal["red_bar"]}" fill-opacity="0.75" '
                f'stroke="#000000" stroke-width="0.5"/>'
            )
    # labels
    if style.show_labels:
        max_chars = max(int(t.d(GLYPH_W) / (0.6 * style.label_size)), 1)
        for g in scene.glyphs:
            label = escape(_truncate(g.name, max_chars))
            parts.append(
                f'<text class="label" x="{_f(t.x(g.x + g.w / 2))}" '
                f'y="{_f(t.y(g.y + g.h) + style.label_size + 2)}" '
                f'font-size="{_f(style.label_size)}" text-anchor="middle" '
                f'fill="{pal["label"]}">{label}</text>'
            )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
