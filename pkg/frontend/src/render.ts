/** Pure markup builders for the workbench panels.
 *
 * Everything returns a string so the views are testable without a DOM;
 * main.ts assigns them into containers. All analytics (roles, hop
 * counts, intermediary rankings) come straight from the service
 * response; the client only positions and draws.
 */

import { forceLayout } from './layout.js';
import type {
  DossierResponse,
  NetworkNode,
  ReportDoc,
  SearchResponse,
  TrustNetworkDoc,
} from './types.js';

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;')
    .replace(/'/g, '&#39;');
}

function shortName(address: string): string {
  return address.split('@')[0] ?? address;
}

function nodeClass(node: NetworkNode): string {
  const classes = ['node', `role-${node.role}`];
  if (node.suspect) classes.push('suspect');
  return classes.join(' ');
}

function hopBadge(report: ReportDoc | null, address: string): string {
  if (!report) return '';
  const summary = report.suspects.find((s) => s.address === address);
  if (!summary || !summary.in_network) return '';
  const fmt = (hops: Record<string, number | null>) => {
    const values = Object.values(hops).map((h) => (h === null ? '∞' : String(h)));
    return values.join('/') || '-';
  };
  return `MI ${fmt(summary.hops_to_mi)} · MM ${fmt(summary.hops_to_mm)}`;
}

const NODE_RADIUS = 11;

/** Render the last search response as an SVG network view.
 *
 * Suspects, the MI, and the MM carry distinguishing classes and markers;
 * hovering an edge shows its R-labels and the contributing egos.
 */
export function renderTrustNetwork(response: SearchResponse, width = 960, height = 620): string {
  const network = response.network;
  if (response.empty || !network) {
    const absent = (response.absent ?? []).map(escapeHtml).join(', ');
    return `<div class="empty-state" data-testid="empty-state">No trust network: no suspect is present in this graph.${
      absent ? ` Absent: ${absent}` : ''
    }</div>`;
  }
  if (network.nodes.length === 0) {
    return '<div class="empty-state" data-testid="empty-state">The search produced an empty network (every ego subnetwork was dropped).</div>';
  }
  const points = forceLayout(network, width, height);
  const pieces: string[] = [];
  pieces.push(
    `<svg class="network" viewBox="0 0 ${width} ${height}" xmlns="http://www.w3.org/2000/svg" data-testid="network">`,
  );
  pieces.push(
    '<defs><marker id="arrow" viewBox="0 0 10 10" refX="22" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse">' +
      '<path d="M 0 0 L 10 5 L 0 10 z"/></marker></defs>',
  );
  for (const edge of network.edges) {
    const a = points.get(edge.src);
    const b = points.get(edge.dst);
    if (!a || !b) continue;
    const labels = [...new Set(edge.labels.map((t) => t.label))].sort().join(', ');
    const egos = [...new Set(edge.labels.map((t) => t.ego))].sort().map(shortName).join(', ');
    const title = `${shortName(edge.src)} → ${shortName(edge.dst)} · ${labels} · egos: ${egos}`;
    pieces.push(
      `<g class="edge" data-src="${escapeHtml(edge.src)}" data-dst="${escapeHtml(edge.dst)}">` +
        `<line x1="${a.x}" y1="${a.y}" x2="${b.x}" y2="${b.y}" marker-end="url(#arrow)"/>` +
        `<title>${escapeHtml(title)}</title></g>`,
    );
  }
  for (const node of network.nodes) {
    const p = points.get(node.address);
    if (!p) continue;
    const badge = node.suspect ? hopBadge(response.report, node.address) : '';
    pieces.push(`<g class="${nodeClass(node)}" data-address="${escapeHtml(node.address)}">`);
    pieces.push(`<circle cx="${p.x}" cy="${p.y}" r="${NODE_RADIUS}"/>`);
    if (node.role === 'mi') {
      pieces.push(`<text class="role-tag" x="${p.x}" y="${p.y - 16}" text-anchor="middle">MI</text>`);
    } else if (node.role === 'mm') {
      pieces.push(`<text class="role-tag" x="${p.x}" y="${p.y - 16}" text-anchor="middle">MM</text>`);
    }
    pieces.push(
      `<text class="label" x="${p.x}" y="${p.y + 26}" text-anchor="middle">${escapeHtml(shortName(node.address))}</text>`,
    );
    if (badge) {
      pieces.push(
        `<text class="hop-badge" x="${p.x}" y="${p.y + 40}" text-anchor="middle">${escapeHtml(badge)}</text>`,
      );
    }
    pieces.push(`<title>${escapeHtml(node.address)}</title>`);
    pieces.push('</g>');
  }
  pieces.push('</svg>');
  return pieces.join('');
}

/** Current suspect list with absence flags from the last run. */
export function renderSuspectList(suspects: string[], response: SearchResponse | null): string {
  if (suspects.length === 0) return '<p class="hint">Add suspect addresses to begin.</p>';
  const absent = new Set([
    ...(response?.absent ?? []),
    ...(response?.network?.absent ?? []),
  ]);
  const dropped = new Map((response?.network?.dropped ?? []).map((d) => [d.ego, d.reason]));
  const items = suspects.map((address) => {
    let note = '';
    if (absent.has(address)) note = ' <span class="flag absent">absent</span>';
    else if (dropped.has(address))
      note = ` <span class="flag dropped" title="${escapeHtml(dropped.get(address) ?? '')}">dropped</span>`;
    return `<li data-suspect="${escapeHtml(address)}">${escapeHtml(address)}${note}</li>`;
  });
  return `<ul class="suspects">${items.join('')}</ul>`;
}

/** Ranked intermediaries per suspect with promote buttons. */
export function renderIntermediaryPanel(report: ReportDoc | null, suspects: string[]): string {
  if (!report) return '<p class="hint">Run a search to see intermediaries.</p>';
  const suspectSet = new Set(suspects);
  const sections: string[] = [];
  for (const summary of report.suspects) {
    if (!summary.in_network || summary.top_intermediaries.length === 0) continue;
    const rows = summary.top_intermediaries.map((entry) => {
      const promote = suspectSet.has(entry.address)
        ? '<span class="flag">already a suspect</span>'
        : `<button class="promote" data-promote="${escapeHtml(entry.address)}">promote</button>`;
      return (
        `<tr data-intermediary="${escapeHtml(entry.address)}"><td>${escapeHtml(shortName(entry.address))}</td>` +
        `<td class="count">${entry.count}</td><td>${promote}</td></tr>`
      );
    });
    sections.push(
      `<section class="intermediaries" data-for="${escapeHtml(summary.address)}">` +
        `<h3>${escapeHtml(shortName(summary.address))}</h3>` +
        `<table><thead><tr><th>intermediary</th><th>count</th><th></th></tr></thead>` +
        `<tbody>${rows.join('')}</tbody></table></section>`,
    );
  }
  return sections.join('') || '<p class="hint">No intermediaries on the result paths.</p>';
}

/** Node dossier panel (degrees per graph, last-result membership). */
export function renderDossierPanel(dossier: DossierResponse | null): string {
  if (!dossier) return '<p class="hint">Click a node to inspect it.</p>';
  const rows: string[] = [];
  for (const [k, info] of Object.entries(dossier.graphs).sort()) {
    rows.push(
      `<tr><td>${k}-BCC</td><td>${info.present ? `in ${info.in_degree} / out ${info.out_degree}` : 'absent'}</td></tr>`,
    );
  }
  const resultRows: string[] = [];
  for (const [k, entry] of Object.entries(dossier.results).sort()) {
    if (!entry) {
      resultRows.push(`<tr><td>${k}-BCC</td><td>no search yet</td></tr>`);
      continue;
    }
    if (!entry.present) {
      resultRows.push(`<tr><td>${k}-BCC</td><td>not in last result</td></tr>`);
      continue;
    }
    const tags = [entry.suspect ? 'suspect' : '', entry.role !== 'none' ? entry.role.toUpperCase() : '']
      .filter(Boolean)
      .join(', ');
    const counts = Object.entries(entry.intermediary_counts)
      .map(([suspect, count]) => `${escapeHtml(shortName(suspect))}: ${count}`)
      .join(', ');
    resultRows.push(
      `<tr><td>${k}-BCC</td><td>${tags || 'plain node'}${counts ? ` · intermediary for ${counts}` : ''}</td></tr>`,
    );
  }
  return (
    `<h3>${escapeHtml(dossier.address)}</h3>` +
    `<table class="dossier-degrees"><tbody>${rows.join('')}</tbody></table>` +
    `<h4>last results</h4><table class="dossier-results"><tbody>${resultRows.join('')}</tbody></table>`
  );
}

export function renderErrorBanner(message: string | null): string {
  if (!message) return '';
  return `<div class="error-banner" role="alert">${escapeHtml(message)}</div>`;
}
