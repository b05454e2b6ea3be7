/** Investigation state: suspect-list history, the last search response,
 * and the promote/undo loop.
 *
 * The rendered view is always exactly the last successful /search
 * response; a failed request leaves the previous view intact and
 * surfaces an error banner. Only one search is in flight at a time:
 * a newer submission aborts and supersedes an older one.
 */

import type { SearchClient, SearchResponse } from './types.js';

export function normalizeAddress(address: string): string {
  let out = address.trim();
  if (out.startsWith('<') && out.endsWith('>')) out = out.slice(1, -1).trim();
  return out.toLowerCase();
}

export function dedupe(addresses: string[]): string[] {
  const seen = new Set<string>();
  const out: string[] = [];
  for (const raw of addresses) {
    const address = normalizeAddress(raw);
    if (address && !seen.has(address)) {
      seen.add(address);
      out.push(address);
    }
  }
  return out;
}

export interface StoreSnapshot {
  k: number;
  history: string[][];
}

export class InvestigationStore {
  k = 1;
  singlePath = false;
  view: SearchResponse | null = null;
  error: string | null = null;

  private history: string[][] = [];
  private inflight: AbortController | null = null;
  private sequence = 0;
  private listeners: Array<() => void> = [];

  constructor(private client: SearchClient) {}

  subscribe(listener: () => void): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  get suspects(): string[] {
    const current = this.history[this.history.length - 1];
    return current ? [...current] : [];
  }

  get canUndo(): boolean {
    return this.history.length > 1;
  }

  /** Replace the suspect list (new history entry) and run the search. */
  async setSuspects(addresses: string[]): Promise<void> {
    const list = dedupe(addresses);
    if (list.length === 0) {
      this.error = 'suspect list is empty';
      this.emit();
      return;
    }
    this.history.push(list);
    await this.run();
  }

  async setK(k: number): Promise<void> {
    if (k === this.k) return;
    this.k = k;
    if (this.history.length > 0) await this.run();
    else this.emit();
  }

  /** Append a node to the suspect list and rerun; promoting an existing
   * suspect is a no-op. A failed rerun reverts the list. */
  async promote(address: string): Promise<void> {
    const candidate = normalizeAddress(address);
    const current = this.suspects;
    if (!candidate || current.includes(candidate)) return;
    this.history.push([...current, candidate]);
    const ok = await this.run();
    if (!ok) {
      this.history.pop();
      this.emit();
    }
  }

  /** Restore the previous suspect list and rerun. */
  async undo(): Promise<void> {
    if (!this.canUndo) return;
    this.history.pop();
    await this.run();
  }

  /** The whole UI state replays from (k, history). */
  snapshot(): StoreSnapshot {
    return { k: this.k, history: this.history.map((h) => [...h]) };
  }

  static async replay(client: SearchClient, snapshot: StoreSnapshot): Promise<InvestigationStore> {
    const store = new InvestigationStore(client);
    store.k = snapshot.k;
    store.history = snapshot.history.map((h) => [...h]);
    if (store.history.length > 0) await store.run();
    return store;
  }

  private async run(): Promise<boolean> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    const ticket = ++this.sequence;
    try {
      const response = await this.client.search(this.k, this.suspects, this.singlePath, controller.signal);
      if (ticket !== this.sequence) return true; // superseded; newer run owns the view
      this.view = response;
      this.error = null;
      this.emit();
      return true;
    } catch (err) {
      if (ticket !== this.sequence) return true;
      if (err instanceof DOMException && err.name === 'AbortError') return true;
      this.error = err instanceof Error ? err.message : String(err);
      this.emit();
      return false;
    }
  }
}
