"""Golden exact game values: a frozen CSV regenerated only on demand.

The file records the solver's win vector per palette for the standard
tiny-instance set.  Tests compare fresh solver output against the file;
the file itself changes only through an explicit refresh, so solver
regressions surface as diffs instead of silently moving the baseline.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

from .graph import Graph, cycle, path, star
from .opponents import exact_ig

GOLDEN_SCHEMA = 1

GOLDEN_INSTANCES: list[tuple[str, str, int]] = [
    ("P2", "path", 2),
    ("P3", "path", 3),
    ("P4", "path", 4),
    ("P5", "path", 5),
    ("K_1_2", "star", 2),
    ("K_1_3", "star", 3),
    ("C3", "cycle", 3),
    ("C4", "cycle", 4),
    ("C5", "cycle", 5),
]

_BUILDERS = {"path": path, "star": star, "cycle": cycle}


def _instance(family: str, n: int) -> Graph:
    return _BUILDERS[family](n)


def solve_goldens() -> list[dict]:
    rows = []
    for name, family, n in GOLDEN_INSTANCES:
        result = exact_ig(_instance(family, n))
        vector = " ".join(
            f"{k}:{w}" for k, w in sorted(result.winners.items())
        )
        rows.append(
            {
                "schema": GOLDEN_SCHEMA,
                "name": name,
                "family": family,
                "n": n,
                "minimal_winning_k": result.minimal_winning_k,
                "win_vector": vector,
            }
        )
    return rows


def goldens_csv() -> str:
    rows = solve_goldens()
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def default_golden_path() -> Path:
    return Path(__file__).parent / "data" / "exact_values.csv"


def load_goldens(path: Path | None = None) -> list[dict]:
    text = (path or default_golden_path()).read_text()
    return list(csv.DictReader(io.StringIO(text)))


def verify_goldens(path: Path | None = None) -> list[str]:
    """Names whose freshly solved values disagree with the frozen file."""
    frozen = {row["name"]: row for row in load_goldens(path)}
    fresh = solve_goldens()
    bad = []
    for row in fresh:
        old = frozen.get(row["name"])
        if old is None or old["win_vector"] != row["win_vector"] or int(
            old["minimal_winning_k"]
        ) != row["minimal_winning_k"]:
            bad.append(row["name"])
    solved_names = {r["name"] for r in fresh}
    bad.extend(name for name in frozen if name not in solved_names)
    return bad


def refresh_goldens(path: Path | None = None) -> Path:
    target = path or default_golden_path()
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(goldens_csv())
    return target
