"""The interactive session service, driven by a scripted human.

Starts the HTTP service on an ephemeral port, creates a session where
the strategy side has already played its opening move, and plays the
spoiling side to the end following the legality hints.  The same
endpoints back the browser client in frontend/.
"""

import json
import threading
import urllib.request

from icgame.service import make_server

server = make_server(port=0)
threading.Thread(target=server.serve_forever, daemon=True).start()
base = f"http://{server.server_address[0]}:{server.server_address[1]}"
print(f"service at {base}")


def call(path, payload=None):
    data = json.dumps(payload).encode() if payload is not None else None
    req = urllib.request.Request(base + path, data=data,
                                 method="POST" if data else "GET")
    if data:
        req.add_header("Content-Type", "application/json")
    with urllib.request.urlopen(req, timeout=10) as resp:
        return json.loads(resp.read())


snapshot = call("/sessions", {"family": "star", "params": {"n": 4}, "seed": 2})
sid = snapshot["id"]
print(f"session {sid}: palette {snapshot['palette']}, "
      f"{sum(1 for c in snapshot['coloring'] if c)} incidence already colored "
      f"(the strategy side moves first)")

turn = 0
while snapshot["status"] == "ongoing":
    hints = call(f"/sessions/{sid}/hints")
    target = min(int(i) for i in hints["available"])
    color = hints["available"][str(target)][0]
    inc = snapshot["incidences"][target]
    reply = call(f"/sessions/{sid}/moves",
                 {"vertex": inc["vertex"], "edge": inc["edge"], "color": color})
    turn += 1
    moves = [e for e in reply["events"] if e["type"] == "move"]
    described = ", ".join(
        f"{m['mover']} (v{m['vertex']},e{m['edge']})={m['color']}" for m in moves
    )
    print(f"  round {turn}: {described}")
    snapshot = reply["state"]

print(f"final status: {snapshot['status']}")
transcript = urllib.request.urlopen(
    base + f"/sessions/{sid}/transcript", timeout=10
).read().decode()
print(f"transcript: {len(transcript.splitlines())} events, replayable offline")
server.shutdown()
