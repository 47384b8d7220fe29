/**
 * Explorer shell: owns the state, keeps it mirrored in the URL, and rewires
 * the view whenever the dataset, layout, or selection changes. Clicking a
 * glyph selects its variable (clicking again deselects); all statistics and
 * geometry come from the server on every change.
 */

import { ApiClient, SceneJson, StatsJson } from './api.js';
import { MUTED_PALETTE, SALIENT_PALETTE, renderScene } from './render.js';
import { DEFAULT_STATE, ExplorerState, stateFromQuery, stateToQuery } from './state.js';

export class ExplorerApp {
  state: ExplorerState;
  lastScene: SceneJson | null = null;
  lastStats: StatsJson | null = null;

  private sceneHost: HTMLElement;
  private banner: HTMLElement;
  private tooltip: HTMLElement;

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    initialQuery: string = window.location.search,
  ) {
    this.state = stateFromQuery(initialQuery);
    this.root.innerHTML = `
      <div class="banner" hidden></div>
      <div class="tooltip" hidden></div>
      <div class="scene"></div>
    `;
    this.banner = root.querySelector('.banner')!;
    this.tooltip = root.querySelector('.tooltip')!;
    this.sceneHost = root.querySelector('.scene')!;
  }

  queryString(): string {
    return stateToQuery(this.state);
  }

  private syncUrl(): void {
    const query = this.queryString();
    const url = query ? `?${query}` : window.location.pathname;
    window.history.replaceState(null, '', url);
  }

  async update(patch: Partial<ExplorerState>): Promise<void> {
    this.state = { ...this.state, ...patch };
    this.syncUrl();
    if (!this.state.dataset) return;
    try {
      const { scene, stats } = await this.api.fetchView(this.state);
      this.lastScene = scene;
      this.lastStats = stats;
      this.banner.hidden = true;
      this.draw();
    } catch (err) {
      if ((err as Error).name === 'AbortError') return; // superseded request
      this.banner.textContent = `request failed: ${(err as Error).message}`;
      this.banner.hidden = false; // last scene stays on screen
    }
  }

  toggleSelect(variable: string): void {
    const next = this.state.selected === variable ? null : variable;
    // radial cannot render without a selection; fall back to linear
    if (next === null && this.state.layout === 'radial') {
      void this.update({ selected: null, layout: 'linear' });
    } else {
      void this.update({ selected: next });
    }
  }

  private showTooltip(text: string | null): void {
    if (text === null) {
      this.tooltip.hidden = true;
      return;
    }
    this.tooltip.textContent = text;
    this.tooltip.hidden = false;
  }

  draw(): void {
    if (!this.lastScene || !this.lastStats) return;
    renderScene(this.lastScene, this.lastStats, this.sceneHost, {
      onSelect: (name) => this.toggleSelect(name),
      onHover: (text) => this.showTooltip(text),
      palette: this.state.muted ? MUTED_PALETTE : SALIENT_PALETTE,
    });
  }

  async start(): Promise<void> {
    if (!this.state.dataset) {
      const datasets = await this.api.listDatasets();
      if (datasets.length) this.state.dataset = datasets[0].id;
    }
    await this.update({});
  }
}

export { DEFAULT_STATE, stateFromQuery, stateToQuery };
