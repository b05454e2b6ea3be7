/** Deterministic force-directed layout.
 *
 * The PRNG is seeded from a hash of the network content, so the same
 * trust network always lands in the same spots (stable screenshots,
 * reviewable diffs). Result networks are sparse, so the O(n^2)
 * repulsion pass is fine.
 */

import type { TrustNetworkDoc } from './types.js';

export interface Point {
  x: number;
  y: number;
}

export function networkHash(doc: TrustNetworkDoc): number {
  const parts: string[] = [];
  for (const node of doc.nodes) parts.push(node.address);
  for (const edge of doc.edges) parts.push(`${edge.src}>${edge.dst}`);
  let hash = 0x811c9dc5; // FNV-1a
  for (const part of parts) {
    for (let i = 0; i < part.length; i++) {
      hash ^= part.charCodeAt(i);
      hash = Math.imul(hash, 0x01000193);
    }
  }
  return hash >>> 0;
}

function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

const ITERATIONS = 200;
const SPRING_LENGTH = 110;
const SPRING_STRENGTH = 0.02;
const REPULSION = 5200;
const GRAVITY = 0.015;
const MAX_STEP = 18;

export function forceLayout(
  doc: TrustNetworkDoc,
  width: number,
  height: number,
): Map<string, Point> {
  const rand = mulberry32(networkHash(doc));
  const addresses = doc.nodes.map((n) => n.address);
  const index = new Map(addresses.map((a, i) => [a, i]));
  const n = addresses.length;
  const xs = new Float64Array(n);
  const ys = new Float64Array(n);
  for (let i = 0; i < n; i++) {
    xs[i] = width * (0.15 + 0.7 * rand());
    ys[i] = height * (0.15 + 0.7 * rand());
  }
  const edges: Array<[number, number]> = [];
  for (const edge of doc.edges) {
    const a = index.get(edge.src);
    const b = index.get(edge.dst);
    if (a !== undefined && b !== undefined) edges.push([a, b]);
  }

  const fx = new Float64Array(n);
  const fy = new Float64Array(n);
  for (let iter = 0; iter < ITERATIONS; iter++) {
    fx.fill(0);
    fy.fill(0);
    const cool = 1 - iter / ITERATIONS;
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = xs[i]! - xs[j]!;
        let dy = ys[i]! - ys[j]!;
        let d2 = dx * dx + dy * dy;
        if (d2 < 1e-4) {
          // deterministic nudge for coincident points
          dx = 0.01 * ((i % 3) - 1 || 1);
          dy = 0.01 * ((j % 3) - 1 || 1);
          d2 = dx * dx + dy * dy;
        }
        const force = REPULSION / d2;
        const d = Math.sqrt(d2);
        fx[i]! += (dx / d) * force;
        fy[i]! += (dy / d) * force;
        fx[j]! -= (dx / d) * force;
        fy[j]! -= (dy / d) * force;
      }
    }
    for (const [a, b] of edges) {
      const dx = xs[b]! - xs[a]!;
      const dy = ys[b]! - ys[a]!;
      const d = Math.max(1, Math.sqrt(dx * dx + dy * dy));
      const force = SPRING_STRENGTH * (d - SPRING_LENGTH);
      fx[a]! += (dx / d) * force * d * 0.02 + (dx / d) * force;
      fy[a]! += (dy / d) * force * d * 0.02 + (dy / d) * force;
      fx[b]! -= (dx / d) * force * d * 0.02 + (dx / d) * force;
      fy[b]! -= (dy / d) * force * d * 0.02 + (dy / d) * force;
    }
    for (let i = 0; i < n; i++) {
      fx[i]! += (width / 2 - xs[i]!) * GRAVITY;
      fy[i]! += (height / 2 - ys[i]!) * GRAVITY;
      const step = Math.min(MAX_STEP * cool + 0.5, Math.hypot(fx[i]!, fy[i]!));
      const mag = Math.hypot(fx[i]!, fy[i]!) || 1;
      xs[i]! += (fx[i]! / mag) * step;
      ys[i]! += (fy[i]! / mag) * step;
      xs[i] = Math.min(width - 30, Math.max(30, xs[i]!));
      ys[i] = Math.min(height - 30, Math.max(30, ys[i]!));
    }
  }

  const points = new Map<string, Point>();
  for (let i = 0; i < n; i++) {
    points.set(addresses[i]!, { x: Math.round(xs[i]! * 100) / 100, y: Math.round(ys[i]! * 100) / 100 });
  }
  return points;
}
