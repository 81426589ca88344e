// Client-side board state: a strict mirror of the last server snapshot
// plus display bookkeeping derived from the event stream.  The server is
// authoritative; everything recomputed here exists only to cross-check
// what is displayed (defense in depth), never to drive the game.

import type { GameEvent, Snapshot, TraceEvent } from "./types.js";

/** Conflict lists per incidence under the incidence adjacency rule:
 * shared vertex, shared edge, or the edge joining the two vertices is one
 * of the two incidence edges.  Incidence index = 2*edge + side. */
export function conflictLists(
  vertexCount: number,
  edges: [number, number][],
): number[][] {
  const byPair = new Map<string, number>();
  edges.forEach(([u, v], e) => {
    byPair.set(u < v ? `${u},${v}` : `${v},${u}`, e);
  });
  const count = 2 * edges.length;
  const vertexOf = (i: number) => edges[i >> 1][i & 1];
  const atVertex = new Map<number, number[]>();
  for (let i = 0; i < count; i++) {
    const v = vertexOf(i);
    const list = atVertex.get(v) ?? [];
    list.push(i);
    atVertex.set(v, list);
  }
  const out: number[][] = [];
  for (let i = 0; i < count; i++) {
    const e = i >> 1;
    const x = vertexOf(i);
    const [u, v] = edges[e];
    const y = x === u ? v : u;
    const conflicts = new Set<number>();
    for (const j of atVertex.get(x) ?? []) conflicts.add(j);
    for (const j of atVertex.get(y) ?? []) conflicts.add(j);
    // far incidences of the other edges at x
    for (let f = 0; f < edges.length; f++) {
      const [a, b] = edges[f];
      if (a === x) conflicts.add(2 * f + 1);
      else if (b === x) conflicts.add(2 * f);
    }
    conflicts.delete(i);
    out.push([...conflicts].sort((p, q) => p - q));
  }
  return out;
}

/** Properness of the displayed coloring; 0 means uncolored. */
export function isProperColoring(
  coloring: number[],
  conflicts: number[][],
): boolean {
  for (let i = 0; i < coloring.length; i++) {
    if (coloring[i] === 0) continue;
    for (const j of conflicts[i]) {
      if (j > i && coloring[j] === coloring[i]) return false;
    }
  }
  return true;
}

/** Available colors recomputed from the snapshot, for comparison with the
 * server's hints (they must match exactly). */
export function availableFromSnapshot(
  snapshot: Snapshot,
  conflicts: number[][],
): Record<string, number[]> {
  const out: Record<string, number[]> = {};
  snapshot.coloring.forEach((c, i) => {
    if (c !== 0) return;
    const used = new Set<number>();
    for (const j of conflicts[i]) {
      if (snapshot.coloring[j] !== 0) used.add(snapshot.coloring[j]);
    }
    const avail: number[] = [];
    for (let color = 1; color <= snapshot.palette; color++) {
      if (!used.has(color)) avail.push(color);
    }
    out[String(i)] = avail;
  });
  return out;
}

export function sameHints(
  a: Record<string, number[]>,
  b: Record<string, number[]>,
): boolean {
  const ka = Object.keys(a).sort();
  const kb = Object.keys(b).sort();
  if (ka.length !== kb.length) return false;
  return ka.every(
    (k, idx) =>
      k === kb[idx] &&
      a[k].length === b[k].length &&
      a[k].every((c, i) => c === b[k][i]),
  );
}

export interface Point {
  x: number;
  y: number;
}

/** Incidence markers sit a quarter of the way along their edge, toward
 * their own endpoint. */
export function markerPoint(own: Point, far: Point): Point {
  return { x: own.x + (far.x - own.x) * 0.25, y: own.y + (far.y - own.y) * 0.25 };
}

export class BoardModel {
  snapshot: Snapshot;
  conflicts: number[][];
  activation = new Set<number>();
  lastTrace: TraceEvent | null = null;
  eventLog: GameEvent[] = [];

  constructor(snapshot: Snapshot) {
    this.snapshot = snapshot;
    this.conflicts = conflictLists(snapshot.vertices, snapshot.edges);
    if (!isProperColoring(snapshot.coloring, this.conflicts)) {
      throw new Error("server snapshot fails the properness check");
    }
  }

  /** Replace the mirror with a fresh authoritative snapshot. */
  applySnapshot(snapshot: Snapshot): void {
    if (!isProperColoring(snapshot.coloring, this.conflicts)) {
      throw new Error("server snapshot fails the properness check");
    }
    this.snapshot = snapshot;
  }

  incidenceIndex(vertex: number, edge: number): number {
    const [u, v] = this.snapshot.edges[edge];
    if (vertex === u) return 2 * edge;
    if (vertex === v) return 2 * edge + 1;
    throw new Error(`vertex ${vertex} is not on edge ${edge}`);
  }

  /** Fold one server event into the display state. */
  applyEvent(event: GameEvent): void {
    this.eventLog.push(event);
    if (event.type === "move") {
      const i = this.incidenceIndex(event.vertex, event.edge);
      this.snapshot.coloring[i] = event.color;
      this.snapshot.moves += 1;
      this.activation.delete(i);
      if (!isProperColoring(this.snapshot.coloring, this.conflicts)) {
        throw new Error("event stream produced an improper coloring");
      }
    } else {
      for (const x of event.activated ?? []) this.activation.add(x);
      for (const x of event.loop ?? []) this.activation.add(x);
      this.lastTrace = event;
    }
  }

  isPlayable(incidence: number): boolean {
    return (
      this.snapshot.status === "ongoing" &&
      this.snapshot.turn === "bob" &&
      this.snapshot.coloring[incidence] === 0
    );
  }
}

/** Incremental parser for a server-sent-event byte stream; returns the
 * complete data payloads and the unconsumed tail. */
export function parseSse(buffer: string): { events: GameEvent[]; rest: string } {
  const events: GameEvent[] = [];
  let rest = buffer;
  for (;;) {
    const cut = rest.indexOf("\n\n");
    if (cut < 0) break;
    const block = rest.slice(0, cut);
    rest = rest.slice(cut + 2);
    for (const line of block.split("\n")) {
      if (line.startsWith("data: ")) {
        const text = line.slice(6);
        if (text && text !== "{}") events.push(JSON.parse(text));
      }
    }
  }
  return { events, rest };
}
