/** HTTP client for the trust-search service. */

import type {
  DossierResponse,
  GraphsResponse,
  SearchClient,
  SearchResponse,
} from './types.js';

export class HttpSearchClient implements SearchClient {
  constructor(private baseUrl: string = '') {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, init);
    if (!response.ok) {
      let reason = `${response.status}`;
      try {
        const body = (await response.json()) as { stage?: string; reason?: string };
        if (body.reason) reason = `${body.stage ?? 'service'}: ${body.reason}`;
      } catch {
        // non-json error body; keep the status code
      }
      throw new Error(reason);
    }
    return (await response.json()) as T;
  }

  graphs(): Promise<GraphsResponse> {
    return this.request<GraphsResponse>('/graphs');
  }

  search(k: number, suspects: string[], singlePath: boolean, signal?: AbortSignal): Promise<SearchResponse> {
    return this.request<SearchResponse>('/search', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ k, suspects, single_path: singlePath }),
      signal: signal ?? null,
    });
  }

  dossier(address: string): Promise<DossierResponse> {
    return this.request<DossierResponse>(`/node/${encodeURIComponent(address)}`);
  }
}
