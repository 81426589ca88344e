// Wire types mirroring the session service payloads.

export interface IncidenceInfo {
  index: number;
  vertex: number;
  edge: number;
  top: boolean | null;
}

export interface Snapshot {
  id: string;
  status: "ongoing" | "alice_wins" | "bob_wins";
  turn: "alice" | "bob" | null;
  palette: number;
  coloring: number[];
  vertices: number;
  edges: [number, number][];
  incidences: IncidenceInfo[];
  forest_of: number[];
  orientation: [number, number][];
  arboricity: number;
  moves: number;
}

export interface MoveEvent {
  type: "move";
  index: number;
  mover: "alice" | "bob";
  vertex: number;
  edge: number;
  color: number;
}

export interface TraceEvent {
  type: "trace";
  move_index: number;
  rule: string;
  target: number;
  discipline: string;
  color_pool?: string;
  climb_path?: number[];
  activated?: number[];
  loop?: number[];
}

export type GameEvent = MoveEvent | TraceEvent;

export interface Hints {
  available: Record<string, number[]>;
  overlay: {
    top_of_edge: number[];
    down_of_edge: number[];
    forest_of: number[];
    orientation: [number, number][];
  };
}

export interface MoveReply {
  events: GameEvent[];
  status: Snapshot["status"];
  state: Snapshot;
}
