/** Wire types for the trust-search HTTP API. */

export type NodeRole = 'none' | 'mi' | 'mm';

export interface NetworkNode {
  address: string;
  suspect: boolean;
  role: NodeRole;
}

export interface EdgeTag {
  ego: string;
  label: string;
}

export interface NetworkEdge {
  src: string;
  dst: string;
  labels: EdgeTag[];
}

export interface PathSet {
  label: string;
  ego: string;
  source: string;
  target: string;
  paths: string[][];
}

export interface TrustNetworkDoc {
  format: string;
  version: number;
  nodes: NetworkNode[];
  edges: NetworkEdge[];
  suspects: string[];
  mi_mm: Record<string, { mi: string; mm: string }>;
  paths: PathSet[];
  absent: string[];
  dropped: { ego: string; reason: string }[];
}

export interface IntermediaryEntry {
  address: string;
  count: number;
}

export interface SuspectSummaryDoc {
  address: string;
  in_network: boolean;
  hops_to_mi: Record<string, number | null>;
  hops_to_mm: Record<string, number | null>;
  end_node: boolean;
  top_intermediaries: IntermediaryEntry[];
}

export interface ReportDoc {
  node_count: number;
  edge_count: number;
  mi: string[];
  mm: string[];
  suspects: SuspectSummaryDoc[];
  end_nodes: string[];
  absent: string[];
  dropped: { ego: string; reason: string }[];
}

export interface SearchResponse {
  empty: boolean;
  k: number;
  network: TrustNetworkDoc | null;
  report: ReportDoc | null;
  absent?: string[];
}

export interface GraphSummary {
  k: number;
  nodes: number;
  edges: number;
}

export interface GraphsResponse {
  graphs: GraphSummary[];
}

export interface DossierGraphEntry {
  present: boolean;
  in_degree: number;
  out_degree: number;
}

export interface DossierResultEntry {
  present: boolean;
  suspect: boolean;
  role: NodeRole;
  intermediary_counts: Record<string, number>;
}

export interface DossierResponse {
  address: string;
  graphs: Record<string, DossierGraphEntry>;
  results: Record<string, DossierResultEntry | null>;
}

/** The service surface the store depends on; mocked in tests. */
export interface SearchClient {
  graphs(): Promise<GraphsResponse>;
  search(k: number, suspects: string[], singlePath: boolean, signal?: AbortSignal): Promise<SearchResponse>;
  dossier(address: string): Promise<DossierResponse>;
}
