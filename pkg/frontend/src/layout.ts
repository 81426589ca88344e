// Deterministic force-directed layout: seeded initial circle, a fixed
// number of spring iterations, no randomness at render time.

import type { Point } from "./model.js";

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function layoutPositions(
  vertexCount: number,
  edges: [number, number][],
  width = 640,
  height = 480,
  iterations = 150,
): Point[] {
  const rng = mulberry32(vertexCount * 2654435761 + edges.length);
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) * 0.38;
  const pos: Point[] = [];
  for (let v = 0; v < vertexCount; v++) {
    const angle = (2 * Math.PI * v) / Math.max(1, vertexCount);
    pos.push({
      x: cx + radius * Math.cos(angle) + (rng() - 0.5) * 10,
      y: cy + radius * Math.sin(angle) + (rng() - 0.5) * 10,
    });
  }
  const ideal = radius * 1.2 / Math.max(1, Math.sqrt(vertexCount));
  for (let step = 0; step < iterations; step++) {
    const force: Point[] = pos.map(() => ({ x: 0, y: 0 }));
    for (let a = 0; a < vertexCount; a++) {
      for (let b = a + 1; b < vertexCount; b++) {
        const dx = pos[a].x - pos[b].x;
        const dy = pos[a].y - pos[b].y;
        const d2 = Math.max(25, dx * dx + dy * dy);
        const push = (ideal * ideal) / d2;
        force[a].x += dx * push;
        force[a].y += dy * push;
        force[b].x -= dx * push;
        force[b].y -= dy * push;
      }
    }
    for (const [u, v] of edges) {
      const dx = pos[v].x - pos[u].x;
      const dy = pos[v].y - pos[u].y;
      const d = Math.max(5, Math.hypot(dx, dy));
      const pull = (d - ideal) / d * 0.05;
      force[u].x += dx * pull;
      force[u].y += dy * pull;
      force[v].x -= dx * pull;
      force[v].y -= dy * pull;
    }
    const damp = 1 - step / iterations;
    for (let v = 0; v < vertexCount; v++) {
      pos[v].x = Math.min(width - 30, Math.max(30, pos[v].x + force[v].x * damp));
      pos[v].y = Math.min(height - 30, Math.max(30, pos[v].y + force[v].y * damp));
    }
  }
  return pos;
}
