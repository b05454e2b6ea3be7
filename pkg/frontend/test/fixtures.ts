/** Canned service responses for the mocked-service tests. */

import type { DossierResponse, SearchResponse, TrustNetworkDoc } from '../src/types.js';

const network: TrustNetworkDoc = {
  format: 'bcc-trust-network',
  version: 1,
  nodes: [
    { address: 'alpha@corp.test', suspect: true, role: 'none' },
    { address: 'beta@corp.test', suspect: true, role: 'none' },
    { address: 'gamma@corp.test', suspect: true, role: 'none' },
    { address: 'influencer@corp.test', suspect: false, role: 'mi' },
    { address: 'middleman@corp.test', suspect: false, role: 'mm' },
    { address: 'link@corp.test', suspect: false, role: 'none' },
  ],
  edges: [
    {
      src: 'alpha@corp.test',
      dst: 'middleman@corp.test',
      labels: [{ ego: 'alpha@corp.test', label: 'R3' }],
    },
    {
      src: 'middleman@corp.test',
      dst: 'influencer@corp.test',
      labels: [
        { ego: 'alpha@corp.test', label: 'R2' },
        { ego: 'beta@corp.test', label: 'R5' },
      ],
    },
    {
      src: 'beta@corp.test',
      dst: 'link@corp.test',
      labels: [{ ego: 'beta@corp.test', label: 'R2' }],
    },
    {
      src: 'link@corp.test',
      dst: 'influencer@corp.test',
      labels: [{ ego: 'beta@corp.test', label: 'R2' }],
    },
    {
      src: 'gamma@corp.test',
      dst: 'middleman@corp.test',
      labels: [{ ego: 'gamma@corp.test', label: 'R3' }],
    },
  ],
  suspects: ['alpha@corp.test', 'beta@corp.test', 'gamma@corp.test'],
  mi_mm: {
    'alpha@corp.test': { mi: 'influencer@corp.test', mm: 'middleman@corp.test' },
    'beta@corp.test': { mi: 'influencer@corp.test', mm: 'middleman@corp.test' },
    'gamma@corp.test': { mi: 'influencer@corp.test', mm: 'middleman@corp.test' },
  },
  paths: [
    {
      label: 'R2',
      ego: 'alpha@corp.test',
      source: 'alpha@corp.test',
      target: 'influencer@corp.test',
      paths: [['alpha@corp.test', 'middleman@corp.test', 'influencer@corp.test']],
    },
  ],
  absent: ['ghost@corp.test'],
  dropped: [{ ego: 'dropout@corp.test', reason: 'mm vanished' }],
};

export const fixtureResponse: SearchResponse = {
  empty: false,
  k: 1,
  network,
  report: {
    node_count: 6,
    edge_count: 5,
    mi: ['influencer@corp.test'],
    mm: ['middleman@corp.test'],
    suspects: [
      {
        address: 'alpha@corp.test',
        in_network: true,
        hops_to_mi: { 'influencer@corp.test': 2 },
        hops_to_mm: { 'middleman@corp.test': 1 },
        end_node: false,
        top_intermediaries: [
          { address: 'middleman@corp.test', count: 3 },
          { address: 'link@corp.test', count: 1 },
        ],
      },
      {
        address: 'beta@corp.test',
        in_network: true,
        hops_to_mi: { 'influencer@corp.test': 2 },
        hops_to_mm: { 'middleman@corp.test': null },
        end_node: false,
        top_intermediaries: [{ address: 'link@corp.test', count: 2 }],
      },
      {
        address: 'gamma@corp.test',
        in_network: true,
        hops_to_mi: { 'influencer@corp.test': 3 },
        hops_to_mm: { 'middleman@corp.test': 1 },
        end_node: true,
        top_intermediaries: [],
      },
    ],
    end_nodes: ['gamma@corp.test'],
    absent: ['ghost@corp.test'],
    dropped: [{ ego: 'dropout@corp.test', reason: 'mm vanished' }],
  },
};

export const emptyResponse: SearchResponse = {
  empty: true,
  k: 1,
  network: null,
  report: null,
  absent: ['ghost@corp.test'],
};

export const fixtureDossier: DossierResponse = {
  address: 'middleman@corp.test',
  graphs: {
    '1': { present: true, in_degree: 2, out_degree: 1 },
    '2': { present: false, in_degree: 0, out_degree: 0 },
  },
  results: {
    '1': {
      present: true,
      suspect: false,
      role: 'mm',
      intermediary_counts: { 'alpha@corp.test': 3 },
    },
    '2': null,
  },
};
