"""Interactive session service: a human plays the spoiling side over HTTP
against the activation strategy.

Endpoints (all JSON):

* ``POST /sessions`` - create a session from a graph text or a family
  spec; the strategy side moves first, so the descriptor already contains
  one colored incidence.
* ``GET /sessions/{id}`` - session snapshot.
* ``POST /sessions/{id}/moves`` - submit a move as Bob; the strategy
  reply is applied atomically with it and both events are returned.
* ``GET /sessions/{id}/hints`` - per-incidence available colors plus the
  orientation overlay (top/down classification, forest indices).
* ``GET /sessions/{id}/transcript`` - replayable JSONL transcript.
* ``GET /sessions/{id}/events`` - server-sent event stream carrying the
  same event schema as the transcript.

Sessions are in-memory; requests to one session are serialized.
"""

from __future__ import annotations

import json
import threading
import uuid
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .alice import StrategyAlice
from .bounds import arboricity_palette_bound
from .engine import (
    ALICE,
    ALICE_WINS,
    BOB,
    BOB_WINS,
    ONGOING,
    AvailabilityIndex,
    GameState,
    IllegalMove,
    Transcript,
    apply_move,
    format_graph_text,
)
from .forests import decompose, relations
from .graph import Graph, GraphError, generate, parse_graph_text

MAX_INTERACTIVE_VERTICES = 60


class ServiceError(Exception):
    def __init__(self, status: int, reason: str, detail: str = ""):
        super().__init__(reason)
        self.status = status
        self.reason = reason
        self.detail = detail


class Session:
    """One interactive game; the human plays the spoiling side, or watches
    an engine opponent in spectate mode (advanced round by round)."""

    def __init__(
        self,
        graph: Graph,
        palette_rule: dict,
        seed: int | None,
        spectate_bob: str | None = None,
    ):
        self.id = uuid.uuid4().hex[:12]
        self.lock = threading.Lock()
        self.changed = threading.Condition(self.lock)
        self.graph = graph
        self.seed = seed
        if graph.m > 0:
            self.dec = decompose(graph, "first_vertex")
            self.rel = relations(self.dec)
            arboricity = self.rel.forest_count
        else:
            self.dec = None
            self.rel = None
            arboricity = 0
        rule = palette_rule.get("rule", "theorem")
        if rule == "fixed":
            self.palette = int(palette_rule.get("k", 0))
            if self.palette < 1:
                raise ServiceError(400, "invalid_palette", "fixed rule needs k >= 1")
        elif rule == "theorem":
            self.palette = arboricity_palette_bound(graph.max_degree, arboricity)
        else:
            raise ServiceError(400, "invalid_palette", f"unknown rule {rule!r}")
        self.state = GameState(graph, self.palette)
        self.index = AvailabilityIndex(self.state)
        self.alice = StrategyAlice(self.rel) if self.rel else None
        self.bob = None
        if spectate_bob is not None:
            from .campaign import make_bob

            try:
                self.bob = make_bob(spectate_bob, self.rel, int(seed or 0))
            except GraphError as exc:
                raise ServiceError(400, "invalid_bob", str(exc)) from None
        self.events: list[dict] = []
        self.status = ONGOING if graph.num_incidences else ALICE_WINS
        if self.status == ONGOING:
            self._alice_step()

    # -- internals (caller holds the lock or is the constructor) -----------

    def _emit(self, event: dict) -> None:
        self.events.append(event)

    def _refresh_status(self) -> None:
        if self.index.dead_incidence() is not None:
            self.status = BOB_WINS
        elif self.state.colored_count() == self.graph.num_incidences:
            self.status = ALICE_WINS

    def _alice_step(self) -> None:
        assert self.alice is not None
        inc, color = self.alice.choose(self.state, self.index)
        apply_move(self.state, inc, color, ALICE)
        self.index.sync()
        move = self.state.history[-1]
        incidence = self.graph.incidence(inc)
        self._emit(
            {
                "type": "move",
                "index": move.index,
                "mover": ALICE,
                "vertex": incidence.vertex,
                "edge": incidence.edge,
                "color": color,
            }
        )
        if self.alice.last_trace:
            self._emit(
                {"type": "trace", "move_index": move.index, **self.alice.last_trace}
            )
        self._refresh_status()

    # -- public operations ---------------------------------------------------

    def submit_bob_move(self, vertex: int, edge: int, color: int) -> dict:
        with self.lock:
            if self.bob is not None:
                raise ServiceError(
                    409, "spectate_session", "use /step to advance this game"
                )
            if self.status != ONGOING:
                raise ServiceError(409, "game_over", f"status is {self.status}")
            if self.state.turn != BOB:
                raise ServiceError(409, "not_your_turn", "the strategy side moves")
            try:
                inc = self.graph.incidence_index(vertex, edge)
            except (GraphError, IndexError):
                raise ServiceError(
                    400, "unknown_incidence", f"({vertex}, edge {edge})"
                ) from None
            before = len(self.events)
            try:
                apply_move(self.state, inc, color, BOB)
            except IllegalMove as exc:
                raise ServiceError(409, exc.reason, str(exc)) from None
            self.index.sync()
            move = self.state.history[-1]
            self._emit(
                {
                    "type": "move",
                    "index": move.index,
                    "mover": BOB,
                    "vertex": vertex,
                    "edge": edge,
                    "color": color,
                }
            )
            self._refresh_status()
            if self.status == ONGOING:
                self._alice_step()
            new_events = self.events[before:]
            self.changed.notify_all()
            return {
                "events": new_events,
                "status": self.status,
                "state": self._snapshot_locked(),
            }

    def step(self) -> dict:
        """Spectate mode: play one engine round (spoiler move + reply)."""
        with self.lock:
            if self.bob is None:
                raise ServiceError(
                    409, "not_spectate", "this session takes human moves"
                )
            if self.status != ONGOING:
                raise ServiceError(409, "game_over", f"status is {self.status}")
            before = len(self.events)
            inc, color = self.bob.choose(self.state, self.index)
            apply_move(self.state, inc, color, BOB)
            self.index.sync()
            incidence = self.graph.incidence(inc)
            self._emit(
                {
                    "type": "move",
                    "index": self.state.history[-1].index,
                    "mover": BOB,
                    "vertex": incidence.vertex,
                    "edge": incidence.edge,
                    "color": color,
                }
            )
            self._refresh_status()
            if self.status == ONGOING:
                self._alice_step()
            new_events = self.events[before:]
            self.changed.notify_all()
            return {
                "events": new_events,
                "status": self.status,
                "state": self._snapshot_locked(),
            }

    def _snapshot_locked(self) -> dict:
        g = self.graph
        incidences = [
            {
                "index": inc.index,
                "vertex": inc.vertex,
                "edge": inc.edge,
                "top": bool(self.rel.is_top[inc.index]) if self.rel else None,
            }
            for inc in g.incidences()
        ]
        return {
            "id": self.id,
            "status": self.status,
            "turn": self.state.turn if self.status == ONGOING else None,
            "palette": self.palette,
            "coloring": list(self.state.coloring),
            "vertices": g.n,
            "edges": [list(e) for e in g.edges],
            "incidences": incidences,
            "forest_of": list(self.dec.forest_of) if self.dec else [],
            "orientation": [list(o) for o in self.dec.orientation] if self.dec else [],
            "arboricity": self.rel.forest_count if self.rel else 0,
            "mode": "spectate" if self.bob is not None else "play",
            "moves": len(self.state.history),
        }

    def snapshot(self) -> dict:
        with self.lock:
            return self._snapshot_locked()

    def hints(self) -> dict:
        with self.lock:
            available = {
                str(i): self.index.available(i)
                for i in range(self.graph.num_incidences)
                if self.state.coloring[i] == 0
            }
            overlay = {
                "top_of_edge": list(self.rel.top_of_edge) if self.rel else [],
                "down_of_edge": list(self.rel.down_of_edge) if self.rel else [],
                "forest_of": list(self.dec.forest_of) if self.dec else [],
                "orientation": [list(o) for o in self.dec.orientation]
                if self.dec
                else [],
            }
            return {"available": available, "overlay": overlay}

    def transcript_jsonl(self) -> str:
        with self.lock:
            t = Transcript(
                graph_text=format_graph_text(self.graph),
                palette=self.palette,
                alice_name="strategy",
                bob_name="human",
                seed=self.seed,
                decomposition_dump=self.dec.dump() if self.dec else None,
                root_policy="first_vertex" if self.dec else None,
            )
            t.events = list(self.events)
            t.result = self.status
            t.final_coloring = list(self.state.coloring)
            return t.to_jsonl()

    def wait_events(self, start: int, timeout: float = 25.0) -> list[dict]:
        with self.lock:
            if len(self.events) <= start and self.status == ONGOING:
                self.changed.wait(timeout)
            return self.events[start:]


class SessionStore:
    def __init__(self):
        self.lock = threading.Lock()
        self.sessions: dict[str, Session] = {}

    def create(self, payload: dict) -> Session:
        if "graph" in payload:
            try:
                graph = parse_graph_text(payload["graph"])
            except GraphError as exc:
                raise ServiceError(400, "invalid_graph", str(exc)) from None
        elif "family" in payload:
            try:
                graph = generate(
                    payload["family"],
                    payload.get("params", {}),
                    int(payload.get("seed", 0)),
                )
            except GraphError as exc:
                raise ServiceError(400, "invalid_family", str(exc)) from None
        else:
            raise ServiceError(400, "missing_graph", "need 'graph' or 'family'")
        if graph.n > MAX_INTERACTIVE_VERTICES:
            raise ServiceError(
                400, "too_large", f"interactive limit is {MAX_INTERACTIVE_VERTICES}"
            )
        spectate_bob = None
        if payload.get("mode") == "spectate":
            spectate_bob = payload.get("bob", "spoiler")
        session = Session(
            graph,
            payload.get("palette", {"rule": "theorem"}),
            payload.get("seed"),
            spectate_bob=spectate_bob,
        )
        with self.lock:
            self.sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self.lock:
            session = self.sessions.get(session_id)
        if session is None:
            raise ServiceError(404, "unknown_session", session_id)
        return session


class _Handler(BaseHTTPRequestHandler):
    store: SessionStore = None  # type: ignore[assignment]
    protocol_version = "HTTP/1.1"

    def log_message(self, *args):  # quiet by default
        pass

    def _json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload, sort_keys=True).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _text(self, status: int, text: str, content_type: str) -> None:
        body = text.encode()
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _read_json(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b"{}"
        try:
            payload = json.loads(raw or b"{}")
        except json.JSONDecodeError:
            raise ServiceError(400, "invalid_json", "") from None
        if not isinstance(payload, dict):
            raise ServiceError(400, "invalid_json", "expected an object")
        return payload

    def _route(self) -> tuple[str, ...]:
        path = self.path.split("?", 1)[0].strip("/")
        return tuple(p for p in path.split("/") if p)

    def _query(self) -> dict:
        if "?" not in self.path:
            return {}
        out = {}
        for pair in self.path.split("?", 1)[1].split("&"):
            key, _, value = pair.partition("=")
            out[key] = value
        return out

    def do_POST(self):
        try:
            parts = self._route()
            if parts == ("sessions",):
                session = self.store.create(self._read_json())
                self._json(201, session.snapshot())
            elif len(parts) == 3 and parts[0] == "sessions" and parts[2] == "step":
                session = self.store.get(parts[1])
                self._json(200, session.step())
            elif len(parts) == 3 and parts[0] == "sessions" and parts[2] == "moves":
                session = self.store.get(parts[1])
                payload = self._read_json()
                try:
                    vertex = int(payload["vertex"])
                    edge = int(payload["edge"])
                    color = int(payload["color"])
                except (KeyError, TypeError, ValueError):
                    raise ServiceError(
                        400, "invalid_move", "need integer vertex, edge, color"
                    ) from None
                self._json(200, session.submit_bob_move(vertex, edge, color))
            else:
                raise ServiceError(404, "unknown_endpoint", self.path)
        except ServiceError as exc:
            self._json(
                exc.status, {"error": exc.reason, "detail": exc.detail}
            )

    def do_GET(self):
        try:
            parts = self._route()
            if len(parts) == 2 and parts[0] == "sessions":
                self._json(200, self.store.get(parts[1]).snapshot())
            elif len(parts) == 3 and parts[0] == "sessions":
                session = self.store.get(parts[1])
                if parts[2] == "hints":
                    self._json(200, session.hints())
                elif parts[2] == "transcript":
                    self._text(200, session.transcript_jsonl(), "application/jsonl")
                elif parts[2] == "events":
                    self._stream_events(session)
                else:
                    raise ServiceError(404, "unknown_endpoint", self.path)
            else:
                raise ServiceError(404, "unknown_endpoint", self.path)
        except ServiceError as exc:
            self._json(exc.status, {"error": exc.reason, "detail": exc.detail})

    def _stream_events(self, session: Session) -> None:
        start = int(self._query().get("from", 0))
        self.send_response(200)
        self.send_header("Content-Type", "text/event-stream")
        self.send_header("Cache-Control", "no-cache")
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        sent = start
        try:
            while True:
                events = session.wait_events(sent, timeout=20.0)
                for ev in events:
                    data = json.dumps(ev, sort_keys=True)
                    self.wfile.write(f"data: {data}\n\n".encode())
                sent += len(events)
                self.wfile.flush()
                with session.lock:
                    finished = session.status != ONGOING
                    drained = sent >= len(session.events)
                if finished and drained:
                    self.wfile.write(b"event: end\ndata: {}\n\n")
                    self.wfile.flush()
                    return
                if not events:
                    self.wfile.write(b": keepalive\n\n")
                    self.wfile.flush()
        except (BrokenPipeError, ConnectionResetError):
            return


def make_server(host: str = "127.0.0.1", port: int = 0) -> ThreadingHTTPServer:
    handler = type("Handler", (_Handler,), {"store": SessionStore()})
    return ThreadingHTTPServer((host, port), handler)


def serve(port: int = 8765, host: str = "127.0.0.1") -> None:
    server = make_server(host, port)
    print(
        f"icgame service listening on http://{host}:{server.server_address[1]}",
        flush=True,
    )
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
