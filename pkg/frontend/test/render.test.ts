import { describe, expect, it } from 'vitest';

import {
  renderDossierPanel,
  renderErrorBanner,
  renderIntermediaryPanel,
  renderSuspectList,
  renderTrustNetwork,
} from '../src/render.js';
import { emptyResponse, fixtureDossier, fixtureResponse } from './fixtures.js';

function count(haystack: string, pattern: RegExp): number {
  return (haystack.match(pattern) ?? []).length;
}

describe('renderTrustNetwork', () => {
  it('draws one element per node and edge of the response', () => {
    const svg = renderTrustNetwork(fixtureResponse);
    expect(count(svg, /<g class="node[^"]*"/g)).toBe(fixtureResponse.network!.nodes.length);
    expect(count(svg, /<g class="edge"/g)).toBe(fixtureResponse.network!.edges.length);
  });

  it('distinguishes suspects, the MI, and the MM', () => {
    const svg = renderTrustNetwork(fixtureResponse);
    expect(count(svg, /<g class="node[^"]*\bsuspect\b[^"]*"/g)).toBe(3);
    expect(count(svg, /role-mi/g)).toBeGreaterThan(0);
    expect(count(svg, /role-mm/g)).toBeGreaterThan(0);
    expect(svg).toContain('>MI</text>');
    expect(svg).toContain('>MM</text>');
    // the three markings never collide on one node in this fixture
    expect(svg).not.toMatch(/class="node[^"]*role-mi[^"]*suspect/);
  });

  it('shows hop-distance badges on suspects', () => {
    const svg = renderTrustNetwork(fixtureResponse);
    expect(svg).toContain('MI 2 · MM 1');
    // unreachable middle man renders as infinity
    expect(svg).toContain('MI 2 · MM ∞');
  });

  it('labels edges with their R-labels and contributing egos', () => {
    const svg = renderTrustNetwork(fixtureResponse);
    expect(svg).toContain('R2, R5');
    expect(svg).toContain('egos: alpha, beta');
  });

  it('renders an explicit empty state for an empty result', () => {
    const html = renderTrustNetwork(emptyResponse);
    expect(html).toContain('data-testid="empty-state"');
    expect(html).toContain('ghost@corp.test');
    expect(html).not.toContain('<svg');
  });

  it('renders an empty state when every ego was dropped', () => {
    const html = renderTrustNetwork({
      empty: false,
      k: 1,
      network: { ...fixtureResponse.network!, nodes: [], edges: [] },
      report: null,
    });
    expect(html).toContain('data-testid="empty-state"');
  });

  it('escapes addresses', () => {
    const svg = renderTrustNetwork({
      ...fixtureResponse,
      network: {
        ...fixtureResponse.network!,
        nodes: [{ address: 'a<b>@x', suspect: false, role: 'none' }],
        edges: [],
      },
    });
    expect(svg).not.toContain('a<b>@x');
    expect(svg).toContain('a&lt;b&gt;@x');
  });
});

describe('renderSuspectList', () => {
  it('flags absent and dropped suspects', () => {
    const html = renderSuspectList(
      ['alpha@corp.test', 'ghost@corp.test', 'dropout@corp.test'],
      fixtureResponse,
    );
    expect(html).toContain('data-suspect="alpha@corp.test"');
    expect(html).toMatch(/ghost@corp\.test.*absent/);
    expect(html).toMatch(/dropout@corp\.test.*dropped/);
  });
});

describe('renderIntermediaryPanel', () => {
  it('ranks intermediaries with promote buttons', () => {
    const html = renderIntermediaryPanel(fixtureResponse.report, fixtureResponse.network!.suspects);
    expect(html).toContain('data-promote="middleman@corp.test"');
    expect(html).toContain('data-promote="link@corp.test"');
    expect(html).toMatch(/middleman<\/td><td class="count">3/);
  });

  it('marks existing suspects instead of offering promote', () => {
    const html = renderIntermediaryPanel(fixtureResponse.report, [
      ...fixtureResponse.network!.suspects,
      'middleman@corp.test',
    ]);
    expect(html).not.toContain('data-promote="middleman@corp.test"');
    expect(html).toContain('already a suspect');
  });
});

describe('renderDossierPanel', () => {
  it('shows degrees and last-result membership', () => {
    const html = renderDossierPanel(fixtureDossier);
    expect(html).toContain('middleman@corp.test');
    expect(html).toContain('in 2 / out 1');
    expect(html).toContain('MM');
    expect(html).toContain('intermediary for alpha: 3');
    expect(html).toContain('no search yet');
  });
});

describe('renderErrorBanner', () => {
  it('is empty without an error and marked up with one', () => {
    expect(renderErrorBanner(null)).toBe('');
    expect(renderErrorBanner('search: boom')).toContain('role="alert"');
  });
});
