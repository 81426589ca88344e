// Thin fetch wrapper around the session service; all state lives on the
// server, the client only relays.

import type { Hints, MoveReply, Snapshot } from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public reason: string,
    public detail: string,
  ) {
    super(`${reason}: ${detail}`);
  }
}

async function call<T>(
  base: string,
  path: string,
  payload?: unknown,
): Promise<T> {
  const resp = await fetch(base + path, {
    method: payload === undefined ? "GET" : "POST",
    headers: payload === undefined ? {} : { "Content-Type": "application/json" },
    body: payload === undefined ? undefined : JSON.stringify(payload),
  });
  const body = await resp.json();
  if (!resp.ok) {
    throw new ApiError(resp.status, body.error ?? "unknown", body.detail ?? "");
  }
  return body as T;
}

export class GameClient {
  constructor(public base: string) {}

  createSession(spec: {
    family?: string;
    params?: Record<string, number>;
    graph?: string;
    palette?: { rule: string; k?: number };
    seed?: number;
  }): Promise<Snapshot> {
    return call(this.base, "/sessions", spec);
  }

  getSnapshot(id: string): Promise<Snapshot> {
    return call(this.base, `/sessions/${id}`);
  }

  getHints(id: string): Promise<Hints> {
    return call(this.base, `/sessions/${id}/hints`);
  }

  submitMove(
    id: string,
    vertex: number,
    edge: number,
    color: number,
  ): Promise<MoveReply> {
    return call(this.base, `/sessions/${id}/moves`, { vertex, edge, color });
  }

  eventsUrl(id: string, from = 0): string {
    return `${this.base}/sessions/${id}/events?from=${from}`;
  }
}
