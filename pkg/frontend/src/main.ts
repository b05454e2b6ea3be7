/** Browser wiring: store + render functions onto the page shell. */

import { HttpSearchClient } from './api.js';
import {
  renderDossierPanel,
  renderErrorBanner,
  renderIntermediaryPanel,
  renderSuspectList,
  renderTrustNetwork,
} from './render.js';
import { InvestigationStore } from './state.js';
import type { DossierResponse } from './types.js';

const params = new URLSearchParams(window.location.search);
const client = new HttpSearchClient(params.get('api') ?? 'http://127.0.0.1:8000');
const store = new InvestigationStore(client);

const el = (id: string): HTMLElement => {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing #${id}`);
  return found;
};

let dossier: DossierResponse | null = null;

function redraw(): void {
  el('error').innerHTML = renderErrorBanner(store.error);
  if (store.view) el('network').innerHTML = renderTrustNetwork(store.view);
  el('suspect-list').innerHTML = renderSuspectList(store.suspects, store.view);
  el('intermediaries').innerHTML = renderIntermediaryPanel(store.view?.report ?? null, store.suspects);
  el('dossier').innerHTML = renderDossierPanel(dossier);
  (el('undo') as HTMLButtonElement).disabled = !store.canUndo;
}

async function loadGraphChoices(): Promise<void> {
  const select = el('k-select') as HTMLSelectElement;
  try {
    const body = await client.graphs();
    select.innerHTML = body.graphs
      .map((g) => `<option value="${g.k}">${g.k}-BCC (${g.nodes} nodes, ${g.edges} edges)</option>`)
      .join('');
  } catch (err) {
    el('error').innerHTML = renderErrorBanner(err instanceof Error ? err.message : String(err));
  }
}

function wire(): void {
  store.subscribe(redraw);

  el('run').addEventListener('click', () => {
    const raw = (el('suspect-input') as HTMLTextAreaElement).value;
    void store.setSuspects(raw.split(/[\n,;]+/));
  });

  el('undo').addEventListener('click', () => void store.undo());

  (el('k-select') as HTMLSelectElement).addEventListener('change', (event) => {
    const k = Number((event.target as HTMLSelectElement).value);
    void store.setK(k);
  });

  // promote buttons and node clicks arrive by delegation
  document.addEventListener('click', (event) => {
    const target = event.target as HTMLElement;
    const promote = target.closest('[data-promote]') as HTMLElement | null;
    if (promote) {
      void store.promote(promote.dataset.promote ?? '');
      return;
    }
    const node = target.closest('.node[data-address]') as HTMLElement | null;
    if (node) {
      void client
        .dossier(node.dataset.address ?? '')
        .then((body) => {
          dossier = body;
          redraw();
        })
        .catch((err) => {
          el('error').innerHTML = renderErrorBanner(err instanceof Error ? err.message : String(err));
        });
    }
  });

  void loadGraphChoices();
  redraw();
}

wire();
