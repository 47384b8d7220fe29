import { describe, expect, it } from 'vitest';

import { DEFAULT_STATE, ExplorerState, stateFromQuery, stateToQuery } from '../src/state.js';

describe('explorer state URL serialization', () => {
  it('serializes the default state to an empty query', () => {
    expect(stateToQuery(DEFAULT_STATE)).toBe('');
    expect(stateFromQuery('')).toEqual(DEFAULT_STATE);
  });

  it('round-trips a fully non-default state', () => {
    const state: ExplorerState = {
      dataset: 'demo',
      layout: 'radial',
      selected: 'x2',
      arcs: 'all',
      bins: 7,
      attachGlyphs: true,
      muted: true,
    };
    expect(stateFromQuery(stateToQuery(state))).toEqual(state);
  });

  it('round-trips every layout and selection combination', () => {
    for (const layout of ['linear', 'radial', 'heatmap', 'pc'] as const) {
      for (const selected of [null, 'alpha']) {
        const state: ExplorerState = { ...DEFAULT_STATE, dataset: 'd', layout, selected };
        expect(stateFromQuery(stateToQuery(state))).toEqual(state);
      }
    }
  });

  it('falls back to defaults on malformed values', () => {
    const state = stateFromQuery('layout=spiral&bins=-3&arcs=sometimes');
    expect(state.layout).toBe(DEFAULT_STATE.layout);
    expect(state.bins).toBe(DEFAULT_STATE.bins);
    expect(state.arcs).toBe(DEFAULT_STATE.arcs);
  });

  it('accepts a leading question mark', () => {
    expect(stateFromQuery('?dataset=demo&select=b').dataset).toBe('demo');
    expect(stateFromQuery('?dataset=demo&select=b').selected).toBe('b');
  });
});
