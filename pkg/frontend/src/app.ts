// Browser entry point: SVG board, palette picker, strategy trace panel.
// All game logic stays on the server; this file renders snapshots and
// relays clicks.

import { GameClient, ApiError } from "./api.js";
import {
  BoardModel,
  availableFromSnapshot,
  markerPoint,
  parseSse,
  sameHints,
} from "./model.js";
import { layoutPositions } from "./layout.js";
import type { Hints, Snapshot, TraceEvent } from "./types.js";

const FOREST_COLORS = ["#2563eb", "#059669", "#d97706", "#9333ea", "#dc2626"];
const PALETTE_COLORS = [
  "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4",
  "#46f0f0", "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff",
  "#9a6324", "#fffac8", "#800000", "#aaffc3", "#808000", "#ffd8b1",
  "#000075", "#808080", "#5ee0a0", "#b565a7", "#9b2335", "#55b4b0",
];

const $ = (id: string) => document.getElementById(id) as HTMLElement;

class App {
  client = new GameClient("");
  model: BoardModel | null = null;
  hints: Hints | null = null;
  positions: { x: number; y: number }[] = [];
  selected: number | null = null;
  stream: EventSource | null = null;

  async start(): Promise<void> {
    $("new-game").addEventListener("click", () => void this.createGame());
    await this.createGame();
  }

  async createGame(): Promise<void> {
    const family = ($("family") as HTMLSelectElement).value;
    const sizeText = ($("size") as HTMLInputElement).value;
    const seedText = ($("seed") as HTMLInputElement).value;
    const pasted = ($("graph-text") as HTMLTextAreaElement).value.trim();
    const spec: Parameters<GameClient["createSession"]>[0] = {
      seed: Number(seedText || "0"),
    };
    if (pasted) {
      spec.graph = pasted;
    } else {
      spec.family = family;
      spec.params = { n: Number(sizeText || "5") };
      if (family === "gnp") spec.params.p = 0.25;
      if (family === "random_forest_union") {
        spec.params.k = 2;
        spec.params.max_degree = 6;
      }
    }
    try {
      const snapshot = await this.client.createSession(spec);
      this.attach(snapshot);
    } catch (err) {
      this.say(err instanceof ApiError ? `rejected: ${err.message}` : String(err));
    }
  }

  attach(snapshot: Snapshot): void {
    this.model = new BoardModel(snapshot);
    this.positions = layoutPositions(snapshot.vertices, snapshot.edges);
    this.selected = null;
    this.openStream(snapshot.id);
    void this.refreshHints();
    this.render();
    this.say(`session ${snapshot.id}: palette ${snapshot.palette}, ` +
      `arboricity ${snapshot.arboricity}; you play the spoiler`);
  }

  openStream(id: string): void {
    this.stream?.close();
    this.stream = new EventSource(this.client.eventsUrl(id, 0));
    // the stream replays history; moves are already mirrored via fetch
    // replies, so only trace events for the panel are consumed here
    this.stream.onmessage = (msg) => {
      const { events } = parseSse(`data: ${msg.data}\n\n`);
      for (const ev of events) {
        if (ev.type === "trace" && this.model) {
          this.model.lastTrace = ev;
          for (const x of ev.activated ?? []) this.model.activation.add(x);
          for (const x of ev.loop ?? []) this.model.activation.add(x);
        }
      }
      this.renderTrace();
      this.render();
    };
  }

  async refreshHints(): Promise<void> {
    if (!this.model) return;
    this.hints = await this.client.getHints(this.model.snapshot.id);
    // defense in depth: the hints must equal a local recomputation
    const local = availableFromSnapshot(this.model.snapshot, this.model.conflicts);
    if (!sameHints(local, this.hints.available)) {
      this.say("WARNING: server hints disagree with the local recomputation");
    }
    this.renderPalette();
  }

  async clickIncidence(i: number): Promise<void> {
    if (!this.model || !this.model.isPlayable(i)) return;
    this.selected = this.selected === i ? null : i;
    this.render();
    this.renderPalette();
  }

  async pickColor(color: number): Promise<void> {
    if (!this.model || this.selected === null) return;
    const inc = this.model.snapshot.incidences[this.selected];
    try {
      const reply = await this.client.submitMove(
        this.model.snapshot.id, inc.vertex, inc.edge, color,
      );
      for (const ev of reply.events) this.model.applyEvent(ev);
      this.model.applySnapshot(reply.state);
      this.selected = null;
      await this.refreshHints();
      this.render();
      this.renderTrace();
      if (reply.status !== "ongoing") {
        this.say(reply.status === "alice_wins"
          ? "every incidence is colored: the strategy side wins"
          : "an incidence ran out of colors: you win");
      }
    } catch (err) {
      if (err instanceof ApiError) {
        this.say(`illegal move (${err.reason}): ${err.detail}`);
      } else {
        this.say(String(err));
      }
    }
  }

  say(text: string): void {
    $("status-line").textContent = text;
  }

  render(): void {
    if (!this.model) return;
    const snap = this.model.snapshot;
    const svg = $("board");
    svg.innerHTML = "";
    const ns = "http://www.w3.org/2000/svg";
    const defs = document.createElementNS(ns, "defs");
    defs.innerHTML =
      '<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" ' +
      'markerWidth="7" markerHeight="7" orient="auto-start-reverse">' +
      '<path d="M 0 0 L 10 5 L 0 10 z" fill="#94a3b8"/></marker>';
    svg.appendChild(defs);

    snap.edges.forEach((_pair, e) => {
      const [tail, head] = snap.orientation[e];
      const p = this.positions[tail];
      const q = this.positions[head];
      const line = document.createElementNS(ns, "line");
      line.setAttribute("x1", String(p.x));
      line.setAttribute("y1", String(p.y));
      line.setAttribute("x2", String(q.x));
      line.setAttribute("y2", String(q.y));
      line.setAttribute("stroke", FOREST_COLORS[snap.forest_of[e] % FOREST_COLORS.length]);
      line.setAttribute("stroke-width", "2.5");
      line.setAttribute("marker-end", "url(#arrow)");
      svg.appendChild(line);
    });

    snap.incidences.forEach((inc) => {
      const [a, b] = snap.edges[inc.edge];
      const far = inc.vertex === a ? b : a;
      const point = markerPoint(this.positions[inc.vertex], this.positions[far]);
      const box = document.createElementNS(ns, "rect");
      const size = 16;
      box.setAttribute("x", String(point.x - size / 2));
      box.setAttribute("y", String(point.y - size / 2));
      box.setAttribute("width", String(size));
      box.setAttribute("height", String(size));
      box.setAttribute("rx", inc.top ? "8" : "2");
      const color = snap.coloring[inc.index];
      box.setAttribute(
        "fill",
        color ? PALETTE_COLORS[(color - 1) % PALETTE_COLORS.length] : "#f8fafc",
      );
      box.setAttribute(
        "stroke",
        this.selected === inc.index
          ? "#111827"
          : this.model!.activation.has(inc.index)
            ? "#f59e0b"
            : "#64748b",
      );
      box.setAttribute("stroke-width", this.selected === inc.index ? "3" : "1.5");
      if (this.model!.isPlayable(inc.index)) {
        box.classList.add("playable");
        box.addEventListener("click", () => void this.clickIncidence(inc.index));
      }
      svg.appendChild(box);
      if (color) {
        const label = document.createElementNS(ns, "text");
        label.setAttribute("x", String(point.x));
        label.setAttribute("y", String(point.y + 4));
        label.setAttribute("class", "marker-label");
        label.textContent = String(color);
        svg.appendChild(label);
      }
    });

    this.positions.forEach((p, v) => {
      const circle = document.createElementNS(ns, "circle");
      circle.setAttribute("cx", String(p.x));
      circle.setAttribute("cy", String(p.y));
      circle.setAttribute("r", "11");
      circle.setAttribute("class", "vertex");
      svg.appendChild(circle);
      const label = document.createElementNS(ns, "text");
      label.setAttribute("x", String(p.x));
      label.setAttribute("y", String(p.y + 4));
      label.setAttribute("class", "vertex-label");
      label.textContent = String(v);
      svg.appendChild(label);
    });

    const banner = $("banner");
    if (snap.status === "ongoing") {
      banner.textContent = "";
      banner.className = "";
    } else {
      banner.textContent =
        snap.status === "alice_wins" ? "strategy wins" : "spoiler wins";
      banner.className = snap.status;
    }
  }

  renderPalette(): void {
    if (!this.model) return;
    const holder = $("palette");
    holder.innerHTML = "";
    const legal = new Set(
      this.selected !== null && this.hints
        ? this.hints.available[String(this.selected)] ?? []
        : [],
    );
    for (let c = 1; c <= this.model.snapshot.palette; c++) {
      const button = document.createElement("button");
      button.textContent = String(c);
      button.style.background = PALETTE_COLORS[(c - 1) % PALETTE_COLORS.length];
      button.disabled = !legal.has(c);
      button.addEventListener("click", () => void this.pickColor(c));
      holder.appendChild(button);
    }
  }

  renderTrace(): void {
    if (!this.model) return;
    const trace: TraceEvent | null = this.model.lastTrace;
    const panel = $("trace");
    if (!trace) {
      panel.textContent = "no strategy reply yet";
      return;
    }
    const parts = [`rule: ${trace.rule}`, `discipline: ${trace.discipline}`];
    if (trace.climb_path?.length) parts.push(`climb path: ${trace.climb_path.join(" > ")}`);
    if (trace.activated?.length) parts.push(`activated: ${trace.activated.join(", ")}`);
    if (trace.loop?.length) parts.push(`loop: ${trace.loop.join(" > ")}`);
    if (trace.color_pool) parts.push(`color pool: ${trace.color_pool}`);
    panel.innerHTML = parts.map((p) => `<div>${p}</div>`).join("");
  }
}

new App().start().catch((err) => {
  $("status-line").textContent = String(err);
});
