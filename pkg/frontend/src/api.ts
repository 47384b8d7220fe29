/**
 * Thin client for the missview HTTP API. Keeps at most one scene request in
 * flight: a newer request aborts the stale one (last-write-wins).
 */

import type { ExplorerState } from './state.js';

export interface GlyphJson {
  name: string;
  x: number;
  y: number;
  w: number;
  h: number;
  am: number;
  jm: number | null;
  grey: number[];
  red: number[] | null;
  selected: boolean;
}

export interface LinkJson {
  a: string;
  b: string;
  weight: number;
}

export interface CellsJson {
  columns: string[];
  order: number[];
  levels: (number | null)[][];
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface PolylineJson {
  item: number;
  ys: number[];
  highlight: boolean;
}

export interface SceneJson {
  layout: string;
  selection: string | null;
  viewport: { w: number; h: number };
  glyphs: GlyphJson[];
  links: LinkJson[];
  cells: CellsJson | null;
  polylines: PolylineJson[];
}

export interface StatsJson {
  variables: { name: string; kind: string; am: number; n_recorded: number }[];
  pairs: { a: string; b: string; jm: number; expected_jm: number; deviation: number }[];
  cm: { selected: string; target: string; divergence: number; defined: boolean }[];
}

export interface DatasetInfo {
  id: string;
  n_items: number;
  variables: { name: string; kind: string }[];
}

export class ApiClient {
  private inflight: AbortController | null = null;

  constructor(public baseUrl: string = '') {}

  async listDatasets(): Promise<DatasetInfo[]> {
    const res = await fetch(`${this.baseUrl}/datasets`);
    if (!res.ok) throw new Error(`GET /datasets: ${res.status}`);
    return res.json();
  }

  sceneUrl(state: ExplorerState): string {
    const params = new URLSearchParams({ layout: state.layout });
    if (state.selected) params.set('select', state.selected);
    if (state.layout === 'linear') params.set('arcs', state.arcs);
    if (state.layout === 'heatmap' || state.layout === 'pc') {
      params.set('attach', state.attachGlyphs ? 'true' : 'false');
    }
    params.set('bins', String(state.bins));
    return `${this.baseUrl}/datasets/${encodeURIComponent(state.dataset ?? '')}/scene?${params}`;
  }

  statsUrl(state: ExplorerState): string {
    const params = new URLSearchParams({ bins: String(state.bins) });
    if (state.selected) params.set('select', state.selected);
    return `${this.baseUrl}/datasets/${encodeURIComponent(state.dataset ?? '')}/stats?${params}`;
  }

  /** Fetch scene and stats for the state; aborts any stale scene fetch. */
  async fetchView(state: ExplorerState): Promise<{ scene: SceneJson; stats: StatsJson }> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    const [sceneRes, statsRes] = await Promise.all([
      fetch(this.sceneUrl(state), { signal: controller.signal }),
      fetch(this.statsUrl(state), { signal: controller.signal }),
    ]);
    if (!sceneRes.ok) throw new Error(`scene request failed: ${sceneRes.status}`);
    if (!statsRes.ok) throw new Error(`stats request failed: ${statsRes.status}`);
    return { scene: await sceneRes.json(), stats: await statsRes.json() };
  }
}
