"""Resolution-independent scene geometry for the four views: linear glyph
row, radial glyph circle, heatmap with optional glyph strip, and parallel
coordinates with optional glyph strip.

All magnitudes in a scene are fractions in [0, 1]: block heights relative to
the glyph height, histogram bar widths relative to half the glyph width
(peak-normalized per histogram by default), link weights relative to the
scene's maximum joint missingness. Coordinates use an abstract viewport with
y increasing downward; value order inside a glyph is bottom-up (bin 0 at the
bottom).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .data import CATEGORICAL, NUMERIC, Dataset
from .stats import (
    DEFAULT_BINS,
    HistogramPair,
    MissingnessSummary,
    histogram,
    histogram_pair,
    histogram_spec,
    summarize,
)

GLYPH_W = 1.0
GLYPH_H = 2.0
LINEAR_GAP = 0.5
ARC_HEADROOM = 1.5
RADIAL_RADIUS = 3.0
MIN_LINK_WEIGHT = 0.02
HEATMAP_GRID_H = 10.0
PC_AXIS_GAP = 1.5
PC_BELOW_AXIS = -0.1

PEAK = "peak"
SHARED_COUNT = "shared_count"


@dataclass
class Glyph:
    name: str
    x: float = 0.0
    y: float = 0.0
    w: float = GLYPH_W
    h: float = GLYPH_H
    am: float = 0.0
    jm: Optional[float] = None
    grey: list[float] = field(default_factory=list)
    red: Optional[list[float]] = None
    selected: bool = False


@dataclass
class Link:
    a: str
    b: str
    weight: float


@dataclass
class HeatmapCells:
    columns: list[str]
    order: list[int]              # item indices, top row first
    levels: list[list[Optional[float]]]  # row-major; None = missing (red role)
    x: float = 0.0
    y: float = 0.0
    w: float = 0.0
    h: float = 0.0


@dataclass
class Polyline:
    item: int
    ys: list[float]               # per-axis normalized value; PC_BELOW_AXIS = missing
    highlight: bool = False


@dataclass
class GlyphScene:
    layout: str                   # linear | radial | heatmap | pc
    selection: Optional[str]
    glyphs: list[Glyph]
    links: list[Link] = field(default_factory=list)
    cells: Optional[HeatmapCells] = None
    polylines: list[Polyline] = field(default_factory=list)
    viewport: tuple[float, float] = (1.0, 1.0)

    def to_json_obj(self) -> dict:
        return {
            "layout": self.layout,
            "selection": self.selection,
            "viewport": {"w": self.viewport[0], "h": self.viewport[1]},
            "glyphs": [
                {
                    "name": g.name,
                    "x": g.x,
                    "y": g.y,
                    "w": g.w,
                    "h": g.h,
                    "am": g.am,
                    "jm": g.jm,
                    "grey": list(g.grey),
                    "red": None if g.red is None else list(g.red),
                    "selected": g.selected,
                }
                for g in self.glyphs
            ],
            "links": [{"a": l.a, "b": l.b, "weight": l.weight} for l in self.links],
            "cells": None
            if self.cells is None
            else {
                "columns": self.cells.columns,
                "order": self.cells.order,
                "levels": self.cells.levels,
                "x": self.cells.x,
                "y": self.cells.y,
                "w": self.cells.w,
                "h": self.cells.h,
            },
            "polylines": [
                {"item": p.item, "ys": p.ys, "highlight": p.highlight}
                for p in self.polylines
            ],
        }


def _bar_fractions(counts, scale_max) -> list[float]:
    if scale_max <= 0:
        return [0.0 for _ in counts]
    return [float(c) / scale_max for c in counts]


def glyph_histograms(
    ds: Dataset, bins: int = DEFAULT_BINS, selection: Optional[str] = None
) -> dict[str, Optional[HistogramPair]]:
    """Per-variable histogram pairs feeding glyph construction.

    Without a selection (or for the selected variable itself) the pair
    carries a zero red side. Variables with no recorded values map to None.
    """
    out: dict[str, Optional[HistogramPair]] = {}
    for v in ds.variables:
        if len(v.recorded()) == 0:
            out[v.name] = None
            continue
        spec = histogram_spec(ds, v.name, bins)
        if selection is not None and v.name != selection:
            out[v.name] = histogram_pair(ds, v.name, selection, spec)
        else:
            grey = histogram(ds, v.name, spec)
            out[v.name] = HistogramPair(
                spec=spec,
                grey=grey,
                red=np.zeros_like(grey),
                grey_total=int(grey.sum()),
                red_total=0,
            )
    return out


def build_glyphs(
    summary: MissingnessSummary,
    histograms: dict[str, Optional[HistogramPair]],
    selection: Optional[str] = None,
    bar_scale: str = PEAK,
) -> list[Glyph]:
    """One glyph per variable: blue block height = AM, red block height = JM
    with the selection, grey/red bar widths from the histogram pair."""
    if selection is not None and selection not in summary.names:
        raise KeyError(f"unknown variable: {selection!r}")
    sel_idx = summary.names.index(selection) if selection is not None else None
    glyphs = []
    for i, name in enumerate(summary.names):
        pair = histograms.get(name)
        if pair is None:
            grey_fracs: list[float] = []
            red_fracs: Optional[list[float]] = None
        elif bar_scale == PEAK:
            grey_fracs = _bar_fractions(pair.grey, pair.grey.max(initial=0))
            red_fracs = _bar_fractions(pair.red, pair.red.max(initial=0))
        else:  # shared count scale: both sides relative to the grey peak
            grey_peak = pair.grey.max(initial=0)
            grey_fracs = _bar_fractions(pair.grey, grey_peak)
            red_fracs = _bar_fractions(pair.red, grey_peak)

        is_selected = sel_idx is not None and i == sel_idx
        if sel_idx is None or is_selected:
            jm = None
            red_fracs = None
        else:
            jm = float(summary.jm[i, sel_idx])
        glyphs.append(
            Glyph(
                name=name,
                am=float(summary.am[i]),
                jm=jm,
                grey=grey_fracs,
                red=red_fracs,
                selected=is_selected,
            )
        )
    return glyphs


def _link_weights(pairs: list[tuple[str, str, float]]) -> list[Link]:
    positive = [(a, b, jm) for a, b, jm in pairs if jm > 0]
    if not positive:
        return []
    max_jm = max(jm for _, _, jm in positive)
    return [
        Link(a=a, b=b, weight=max(jm / max_jm, MIN_LINK_WEIGHT))
        for a, b, jm in positive
    ]


def layout_linear(
    glyphs: list[Glyph],
    summary: MissingnessSummary,
    arc_mode: str = "selected",
    selection: Optional[str] = None,
) -> GlyphScene:
    if not glyphs:
        raise ValueError("layout requires at least one glyph")
    m = len(glyphs)
    for k, g in enumerate(glyphs):
        g.x = k * (GLYPH_W + LINEAR_GAP)
        g.y = ARC_HEADROOM
        g.w = GLYPH_W
        g.h = GLYPH_H

    pairs: list[tuple[str, str, float]] = []
    if arc_mode == "all":
        for a in range(m):
            for b in range(a + 1, m):
                pairs.append(
                    (summary.names[a], summary.names[b], float(summary.jm[a, b]))
                )
    elif selection is not None:
        s = summary.names.index(selection)
        for b in range(m):
            if b != s:
                pairs.append(
                    (summary.names[s], summary.names[b], float(summary.jm[s, b]))
                )
    links = _link_weights(pairs)

    width = m * GLYPH_W + (m - 1) * LINEAR_GAP
    return GlyphScene(
        layout="linear",
        selection=selection,
        glyphs=glyphs,
        links=links,
        viewport=(width, ARC_HEADROOM + GLYPH_H + 0.5),
    )


def layout_radial(
    glyphs: list[Glyph], summary: MissingnessSummary, selected: str
) -> GlyphScene:
    if selected is None:
        raise ValueError("radial layout requires a selected variable")
    if len(glyphs) < 2:
        raise ValueError("radial layout requires at least 2 variables")
    names = [g.name for g in glyphs]
    if selected not in names:
        raise KeyError(f"unknown variable: {selected!r}")

    cx = RADIAL_RADIUS + GLYPH_W
    cy = RADIAL_RADIUS + GLYPH_H
    partners = [g for g in glyphs if g.name != selected]
    centre = next(g for g in glyphs if g.name == selected)
    centre.x = cx - GLYPH_W / 2
    centre.y = cy - GLYPH_H / 2

    n = len(partners)
    for k, g in enumerate(partners):
        # 12 o'clock start, clockwise (screen coords: y down)
        phi = 2 * math.pi * k / n
        gx = cx + RADIAL_RADIUS * math.sin(phi)
        gy = cy - RADIAL_RADIUS * math.cos(phi)
        g.x = gx - GLYPH_W / 2
        g.y = gy - GLYPH_H / 2

    s = summary.names.index(selected)
    pairs = [
        (selected, g.name, float(summary.jm[s, summary.names.index(g.name)]))
        for g in partners
    ]
    links = _link_weights(pairs)
    size = 2 * (RADIAL_RADIUS + GLYPH_H)
    return GlyphScene(
        layout="radial",
        selection=selected,
        glyphs=glyphs,
        links=links,
        viewport=(size, size),
    )


def _heatmap_row_order(ds: Dataset, selected: Optional[str]) -> np.ndarray:
    if selected is None:
        return np.arange(ds.n_items)
    var = ds.variable(selected)
    if var.kind == NUMERIC:
        key = var.values.copy()
        key[var.mask] = np.inf  # missing rows last
    else:
        # categorical: order by category index, missing last
        cats = {c: i for i, c in enumerate(dict.fromkeys(var.recorded()))}
        key = np.array(
            [np.inf if var.mask[i] else cats[var.values[i]] for i in range(len(var))],
            dtype=np.float64,
        )
    return np.argsort(key, kind="stable")


def _grey_levels(ds: Dataset) -> list[list[Optional[float]]]:
    m = ds.n_variables
    per_col: list[np.ndarray] = []
    for v in ds.variables:
        levels = np.full(ds.n_items, np.nan)
        rec = ~v.mask
        if v.kind == NUMERIC:
            vals = v.values[rec]
            if len(vals):
                lo, hi = float(vals.min()), float(vals.max())
                if lo == hi:
                    levels[rec] = 0.5
                else:
                    levels[rec] = (v.values[rec] - lo) / (hi - lo)
        else:
            cats = list(dict.fromkeys(v.recorded()))
            if len(cats) == 1:
                lookup = {cats[0]: 0.5}
            else:
                lookup = {c: i / (len(cats) - 1) for i, c in enumerate(cats)}
            levels[rec] = [lookup[x] for x in v.values[rec]]
        per_col.append(levels)
    return [
        [None if math.isnan(per_col[c][i]) else float(per_col[c][i]) for c in range(m)]
        for i in range(ds.n_items)
    ]


def layout_heatmap(
    ds: Dataset,
    summary: MissingnessSummary,
    selected: Optional[str] = None,
    attach_glyphs: bool = False,
    bins: int = DEFAULT_BINS,
    bar_scale: str = PEAK,
) -> GlyphScene:
    order = _heatmap_row_order(ds, selected)
    all_levels = _grey_levels(ds)
    levels = [all_levels[i] for i in order]

    glyphs: list[Glyph] = []
    grid_y = 0.0
    if attach_glyphs:
        hists = glyph_histograms(ds, bins, selected)
        glyphs = build_glyphs(summary, hists, selected, bar_scale)
        for k, g in enumerate(glyphs):
            g.x = k * GLYPH_W
            g.y = 0.0
        grid_y = GLYPH_H + 0.2

    m = ds.n_variables
    cells = HeatmapCells(
        columns=ds.variable_names,
        order=[int(i) for i in order],
        levels=levels,
        x=0.0,
        y=grid_y,
        w=m * GLYPH_W,
        h=HEATMAP_GRID_H,
    )
    return GlyphScene(
        layout="heatmap",
        selection=selected,
        glyphs=glyphs,
        cells=cells,
        viewport=(m * GLYPH_W, grid_y + HEATMAP_GRID_H + 0.5),
    )


def layout_pc(
    ds: Dataset,
    summary: MissingnessSummary,
    selected: Optional[str] = None,
    attach_glyphs: bool = False,
    bins: int = DEFAULT_BINS,
    bar_scale: str = PEAK,
) -> GlyphScene:
    for v in ds.variables:
        if v.kind == CATEGORICAL:
            raise ValueError(
                f"parallel coordinates requires numeric variables; {v.name!r} is categorical"
            )
    sel_mask = (
        ds.variable(selected).mask if selected is not None else np.zeros(ds.n_items, bool)
    )

    norms = []
    for v in ds.variables:
        rec = v.recorded()
        if len(rec) == 0:
            norms.append((0.0, 1.0))
        else:
            lo, hi = float(rec.min()), float(rec.max())
            norms.append((lo, hi - lo if hi > lo else 1.0))

    polylines = []
    for i in range(ds.n_items):
        ys = []
        for (lo, span), v in zip(norms, ds.variables):
            if v.mask[i]:
                ys.append(PC_BELOW_AXIS)
            else:
                ys.append(float((v.values[i] - lo) / span))
        polylines.append(Polyline(item=i, ys=ys, highlight=bool(sel_mask[i])))

    glyphs: list[Glyph] = []
    if attach_glyphs:
        hists = glyph_histograms(ds, bins, selected)
        glyphs = build_glyphs(summary, hists, selected, bar_scale)
        for k, g in enumerate(glyphs):
            g.x = k * PC_AXIS_GAP - GLYPH_W / 2
            g.y = 0.0

    m = ds.n_variables
    return GlyphScene(
        layout="pc",
        selection=selected,
        glyphs=glyphs,
        polylines=polylines,
        viewport=((m - 1) * PC_AXIS_GAP + GLYPH_W, GLYPH_H + 5.0),
    )


def build_scene(
    ds: Dataset,
    layout: str,
    selection: Optional[str] = None,
    arc_mode: str = "selected",
    attach_glyphs: bool = False,
    bins: int = DEFAULT_BINS,
    bar_scale: str = PEAK,
) -> GlyphScene:
    """Convenience entry point used by the CLI and server."""
    if selection is not None:
        ds.index_of(selection)  # raises on unknown name
    summary = summarize(ds)
    if layout == "linear":
        glyphs = build_glyphs(summary, glyph_histograms(ds, bins, selection), selection, bar_scale)
        return layout_linear(glyphs, summary, arc_mode, selection)
    if layout == "radial":
        if selection is None:
            raise ValueError("radial layout requires a selected variable")
        glyphs = build_glyphs(summary, glyph_histograms(ds, bins, selection), selection, bar_scale)
        return layout_radial(glyphs, summary, selection)
    if layout == "heatmap":
        return layout_heatmap(ds, summary, selection, attach_glyphs, bins, bar_scale)
    if layout == "pc":
        return layout_pc(ds, summary, selection, attach_glyphs, bins, bar_scale)
    raise ValueError(f"unknown layout: {layout!r}")
