/**
 * Explorer state, fully serializable to the URL query string so any view
 * (dataset, layout, selection, toggles) can be shared as a link.
 */

export type Layout = 'linear' | 'radial' | 'heatmap' | 'pc';
export type ArcMode = 'selected' | 'all';

export interface ExplorerState {
  dataset: string | null;
  layout: Layout;
  selected: string | null;
  arcs: ArcMode;
  bins: number;
  attachGlyphs: boolean;
  muted: boolean;
}

export const DEFAULT_STATE: ExplorerState = {
  dataset: null,
  layout: 'linear',
  selected: null,
  arcs: 'selected',
  bins: 10,
  attachGlyphs: false,
  muted: false,
};

const LAYOUTS: Layout[] = ['linear', 'radial', 'heatmap', 'pc'];

export function stateToQuery(state: ExplorerState): string {
  const params = new URLSearchParams();
  if (state.dataset) params.set('dataset', state.dataset);
  if (state.layout !== DEFAULT_STATE.layout) params.set('layout', state.layout);
  if (state.selected) params.set('select', state.selected);
  if (state.arcs !== DEFAULT_STATE.arcs) params.set('arcs', state.arcs);
  if (state.bins !== DEFAULT_STATE.bins) params.set('bins', String(state.bins));
  if (state.attachGlyphs) params.set('attach', '1');
  if (state.muted) params.set('muted', '1');
  return params.toString();
}

export function stateFromQuery(query: string): ExplorerState {
  const params = new URLSearchParams(query);
  const layout = params.get('layout');
  const bins = Number(params.get('bins'));
  return {
    dataset: params.get('dataset'),
    layout: LAYOUTS.includes(layout as Layout) ? (layout as Layout) : DEFAULT_STATE.layout,
    selected: params.get('select'),
    arcs: params.get('arcs') === 'all' ? 'all' : 'selected',
    bins: Number.isInteger(bins) && bins >= 1 ? bins : DEFAULT_STATE.bins,
    attachGlyphs: params.get('attach') === '1',
    muted: params.get('muted') === '1',
  };
}
