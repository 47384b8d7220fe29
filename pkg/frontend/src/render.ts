/**
 * Renders server-computed scene geometry into live SVG. No statistics are
 * computed here: every number shown comes straight from the /stats payload,
 * every shape from the /scene payload.
 */

import type { GlyphJson, SceneJson, StatsJson } from './api.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

export interface Palette {
  am: string;
  jm: string;
  greyBar: string;
  frame: string;
  link: string;
  missingCell: string;
  polyline: string;
  highlight: string;
}

export const SALIENT_PALETTE: Palette = {
  am: '#a6cee3',
  jm: '#e31a1c',
  greyBar: '#c8c8c8',
  frame: '#b0b0b0',
  link: '#e31a1c',
  missingCell: '#e31a1c',
  polyline: '#9aa7b8',
  highlight: '#e31a1c',
};

// on-demand/embedded contexts: missingness marks step back from full red
export const MUTED_PALETTE: Palette = {
  ...SALIENT_PALETTE,
  jm: '#c98a8a',
  link: '#c98a8a',
  missingCell: '#c98a8a',
  highlight: '#c98a8a',
};

export interface RenderOptions {
  onSelect: (variable: string) => void;
  onHover: (html: string | null) => void;
  palette?: Palette;
  width?: number;
  height?: number;
}

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
  return node;
}

function greyScale(level: number): string {
  const lo = 0x40;
  const hi = 0xd9;
  const c = Math.round(lo + (hi - lo) * level);
  const hex = c.toString(16).padStart(2, '0');
  return `#${hex}${hex}${hex}`;
}

/** Tooltip lines for a glyph; values are the stats payload's, verbatim. */
export function glyphTooltip(glyph: GlyphJson, scene: SceneJson, stats: StatsJson): string {
  const variable = stats.variables.find((v) => v.name === glyph.name);
  const lines: string[] = [`${glyph.name}`];
  if (variable) lines.push(`AM ${String(variable.am)}`);
  const sel = scene.selection;
  if (sel && sel !== glyph.name) {
    const pair = stats.pairs.find(
      (p) => (p.a === sel && p.b === glyph.name) || (p.a === glyph.name && p.b === sel),
    );
    if (pair) {
      lines.push(`JM ${String(pair.jm)}`);
      lines.push(`expected JM ${String(pair.expected_jm)}`);
      lines.push(`deviation ${String(pair.deviation)}`);
    }
    const cm = stats.cm.find((c) => c.selected === sel && c.target === glyph.name);
    if (cm && cm.defined) lines.push(`CM divergence ${String(cm.divergence)}`);
  }
  return lines.join('\n');
}

export function linkTooltip(a: string, b: string, stats: StatsJson): string {
  const pair = stats.pairs.find(
    (p) => (p.a === a && p.b === b) || (p.a === b && p.b === a),
  );
  if (!pair) return `${a} / ${b}`;
  return [
    `${a} / ${b}`,
    `JM ${String(pair.jm)}`,
    `expected JM ${String(pair.expected_jm)}`,
  ].join('\n');
}

function drawGlyph(
  glyph: GlyphJson,
  scene: SceneJson,
  stats: StatsJson,
  pal: Palette,
  opts: RenderOptions,
): SVGGElement {
  const g = el('g', { class: 'glyph' });
  g.dataset.name = glyph.name;
  const { x, y, w, h } = glyph;

  if (glyph.am > 0) {
    const bh = glyph.am * h;
    g.appendChild(el('rect', { class: 'am-block', x, y: y + h - bh, width: w, height: bh, fill: pal.am }));
  }
  const k = glyph.grey.length;
  if (k > 0) {
    const binH = h / k;
    glyph.grey.forEach((frac, b) => {
      if (frac <= 0) return;
      g.appendChild(
        el('rect', {
          class: 'grey-bar',
          x,
          y: y + h - (b + 1) * binH,
          width: (frac * w) / 2,
          height: binH,
          fill: pal.greyBar,
        }),
      );
    });
  }
  if (glyph.jm !== null && glyph.jm > 0) {
    const bh = glyph.jm * h;
    g.appendChild(el('rect', { class: 'jm-block', x, y: y + h - bh, width: w, height: bh, fill: pal.jm }));
  }
  if (glyph.red) {
    const binH = h / glyph.red.length;
    glyph.red.forEach((frac, b) => {
      if (frac <= 0) return;
      const bw = (frac * w) / 2;
      g.appendChild(
        el('rect', {
          class: 'red-bar',
          x: x + w - bw,
          y: y + h - (b + 1) * binH,
          width: bw,
          height: binH,
          fill: pal.jm,
          'fill-opacity': 0.75,
        }),
      );
    });
  }
  g.appendChild(
    el('rect', {
      class: 'frame',
      x,
      y,
      width: w,
      height: h,
      fill: 'transparent',
      stroke: glyph.selected ? pal.jm : pal.frame,
    }),
  );

  g.addEventListener('click', () => opts.onSelect(glyph.name));
  g.addEventListener('mouseenter', () => opts.onHover(glyphTooltip(glyph, scene, stats)));
  g.addEventListener('mouseleave', () => opts.onHover(null));
  return g;
}

export function renderScene(
  scene: SceneJson,
  stats: StatsJson,
  container: HTMLElement,
  opts: RenderOptions,
): SVGSVGElement {
  const pal = opts.palette ?? SALIENT_PALETTE;
  const width = opts.width ?? 960;
  const height = opts.height ?? 600;
  const svg = el('svg', {
    viewBox: `0 0 ${scene.viewport.w} ${scene.viewport.h}`,
    width,
    height,
    preserveAspectRatio: 'xMidYMid meet',
  });
  svg.dataset.layout = scene.layout;

  // heatmap cells
  if (scene.cells) {
    const c = scene.cells;
    const nRows = c.levels.length;
    const nCols = c.columns.length;
    if (nRows && nCols) {
      const rowH = c.h / nRows;
      const colW = c.w / nCols;
      const cellsGroup = el('g', { class: 'cells' });
      c.levels.forEach((row, r) => {
        row.forEach((level, col) => {
          cellsGroup.appendChild(
            el('rect', {
              class: level === null ? 'cell-missing' : 'cell',
              x: c.x + col * colW,
              y: c.y + r * rowH,
              width: colW,
              height: rowH,
              fill: level === null ? pal.missingCell : greyScale(level),
            }),
          );
        });
      });
      svg.appendChild(cellsGroup);
    }
  }

  // pc polylines, highlighted last so red paints on top
  if (scene.polylines.length) {
    const m = scene.polylines[0].ys.length;
    const axisGap = 1.5;
    const axisTop = scene.glyphs.length ? 2.5 : 0.5;
    const axisH = 4.0;
    for (let kAxis = 0; kAxis < m; kAxis += 1) {
      svg.appendChild(
        el('line', {
          class: 'axis',
          x1: kAxis * axisGap,
          y1: axisTop,
          x2: kAxis * axisGap,
          y2: axisTop + axisH,
          stroke: pal.frame,
          'stroke-width': 0.02,
        }),
      );
    }
    const ordered = [...scene.polylines].sort((a, b) => Number(a.highlight) - Number(b.highlight));
    for (const p of ordered) {
      const pts = p.ys
        .map((v, kAxis) => `${kAxis * axisGap},${axisTop + (1 - v) * axisH}`)
        .join(' ');
      svg.appendChild(
        el('polyline', {
          class: p.highlight ? 'item-highlight' : 'item',
          points: pts,
          fill: 'none',
          stroke: p.highlight ? pal.highlight : pal.polyline,
          'stroke-width': 0.015,
        }),
      );
    }
  }

  // links
  const centres = new Map(scene.glyphs.map((g) => [g.name, [g.x + g.w / 2, g.y + g.h / 2]]));
  const tops = new Map(scene.glyphs.map((g) => [g.name, [g.x + g.w / 2, g.y]]));
  for (const link of scene.links) {
    let shape: SVGElement;
    if (scene.layout === 'radial') {
      const [x1, y1] = centres.get(link.a)!;
      const [x2, y2] = centres.get(link.b)!;
      shape = el('line', {
        class: 'band',
        x1,
        y1,
        x2,
        y2,
        stroke: pal.link,
        'stroke-width': link.weight * 0.4,
        opacity: 0.6,
      });
    } else {
      const [x1, y1] = tops.get(link.a)!;
      const [x2, y2] = tops.get(link.b)!;
      const cx = (x1 + x2) / 2;
      const cy = Math.min(y1, y2) - Math.abs(x2 - x1) * 0.4 - 0.2;
      shape = el('path', {
        class: 'arc',
        d: `M ${x1} ${y1} Q ${cx} ${cy} ${x2} ${y2}`,
        fill: 'none',
        stroke: pal.link,
        'stroke-width': link.weight * 0.3,
        opacity: 0.6,
      });
    }
    shape.setAttribute('data-a', link.a);
    shape.setAttribute('data-b', link.b);
    shape.addEventListener('mouseenter', () => opts.onHover(linkTooltip(link.a, link.b, stats)));
    shape.addEventListener('mouseleave', () => opts.onHover(null));
    svg.appendChild(shape);
  }

  for (const glyph of scene.glyphs) {
    svg.appendChild(drawGlyph(glyph, scene, stats, pal, opts));
  }

  container.replaceChildren(svg);
  return svg;
}
