"""Campaign runner: seeded batches of strategy games with inline
monitors, deterministic CSV/JSONL reporting, and TOML configuration.

A campaign is fully determined by its configuration and seed; rerunning
writes byte-identical outputs (timings are kept out of the files).
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .alice import StrategyAlice
from .bounds import andres_bounds, arboricity_palette_bound
from .engine import ALICE_WINS, Transcript, play
from .forests import decompose, relations
from .graph import Graph, GraphError, degeneracy, generate
from .monitors import InvariantReport, MonitorSuite
from .opponents import GreedyAlice, MinimaxBob, RandomBob, SpoilerBob

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - version shim
    import tomli as tomllib

SUMMARY_SCHEMA = 1


@dataclass
class InstanceSpec:
    family: str
    params: dict
    count: int = 1


@dataclass
class ExperimentConfig:
    name: str = "campaign"
    seed: int = 1
    instances: list[InstanceSpec] = field(default_factory=list)
    bobs: list[str] = field(default_factory=lambda: ["random", "spoiler"])
    alice: str = "strategy"
    palette_rule: str = "theorem"  # or "fixed" or "sweep"
    palette_offset: int = 0
    fixed_k: int | None = None
    sweep_offsets: tuple[int, int] = (-2, 0)  # inclusive offset range
    repetitions: int = 1
    monitors: bool = True
    record_transcripts: bool = False
    output_dir: str | None = None
    max_degree_cap: int | None = None
    root_policy: str = "first_vertex"
    abort_on_loss: bool = True

    @classmethod
    def from_toml(cls, text: str) -> "ExperimentConfig":
        data = tomllib.loads(text)
        camp = data.get("campaign", {})
        pal = data.get("palette", {})
        cfg = cls(
            name=camp.get("name", "campaign"),
            seed=int(camp.get("seed", 1)),
            bobs=list(camp.get("bobs", ["random", "spoiler"])),
            alice=camp.get("alice", "strategy"),
            repetitions=int(camp.get("repetitions", 1)),
            monitors=bool(camp.get("monitors", True)),
            record_transcripts=bool(camp.get("record_transcripts", False)),
            output_dir=camp.get("output_dir"),
            max_degree_cap=camp.get("max_degree_cap"),
            root_policy=camp.get("root_policy", "first_vertex"),
            abort_on_loss=bool(camp.get("abort_on_loss", True)),
            palette_rule=pal.get("rule", "theorem"),
            palette_offset=int(pal.get("offset", 0)),
            fixed_k=pal.get("k"),
            sweep_offsets=(
                int(pal.get("from_offset", -2)),
                int(pal.get("to_offset", 0)),
            ),
        )
        for inst in data.get("instances", []):
            params = {
                k: v for k, v in inst.items() if k not in ("family", "count")
            }
            cfg.instances.append(
                InstanceSpec(inst["family"], params, int(inst.get("count", 1)))
            )
        return cfg

    @classmethod
    def from_toml_file(cls, path: str | Path) -> "ExperimentConfig":
        return cls.from_toml(Path(path).read_text())


@dataclass
class GameRow:
    game_id: str
    family: str
    n: int
    m: int
    max_degree: int
    arboricity: int
    degeneracy: int
    palette: int
    alice: str
    bob: str
    seed: int
    winner: str
    moves: int
    violations: int


@dataclass
class CampaignResult:
    config: ExperimentConfig
    rows: list[GameRow]
    report: InvariantReport
    losses: list[Transcript]
    transcripts: list[Transcript]
    aborted: bool = False

    @property
    def alice_wins(self) -> int:
        return sum(1 for r in self.rows if r.winner == ALICE_WINS)

    def win_rate_table(self) -> list[dict]:
        buckets: dict[tuple[str, str], list[GameRow]] = {}
        for r in self.rows:
            buckets.setdefault((r.family, r.bob), []).append(r)
        out = []
        for (family, bob), rows in sorted(buckets.items()):
            wins = sum(1 for r in rows if r.winner == ALICE_WINS)
            out.append(
                {
                    "family": family,
                    "bob": bob,
                    "games": len(rows),
                    "alice_wins": wins,
                    "win_rate": f"{wins / len(rows):.3f}",
                }
            )
        return out

    def improvement_table(self) -> list[dict]:
        """Strategy palette bound next to the degeneracy-based bound for
        each solved instance (one row per distinct instance)."""
        seen = set()
        out = []
        for r in self.rows:
            key = (r.family, r.n, r.m, r.max_degree, r.arboricity, r.seed)
            if key in seen:
                continue
            seen.add(key)
            out.append(
                {
                    "family": r.family,
                    "n": r.n,
                    "m": r.m,
                    "max_degree": r.max_degree,
                    "arboricity": r.arboricity,
                    "degeneracy": r.degeneracy,
                    "seed": r.seed,
                    "strategy_bound": arboricity_palette_bound(
                        r.max_degree, r.arboricity
                    ),
                    "degenerate_bound": andres_bounds(
                        r.max_degree, r.degeneracy
                    ).general,
                }
            )
        return out


def make_bob(name: str, rel, seed: int):
    if name == "random":
        return RandomBob(seed)
    if name == "spoiler":
        return SpoilerBob(rel)
    if name == "minimax":
        return MinimaxBob(rel)
    raise GraphError(f"unknown bob player {name!r}")


def make_alice(name: str, rel):
    if name == "strategy":
        return StrategyAlice(rel)
    if name == "greedy":
        return GreedyAlice()
    raise GraphError(f"unknown alice player {name!r}")


def _instance_graph(
    spec: InstanceSpec, seed: int, cap: int | None
) -> tuple[Graph, int]:
    """Generate an instance, retrying seeds until the degree cap holds."""
    attempt = seed
    for _ in range(200):
        g = generate(spec.family, spec.params, attempt)
        if g.m > 0 and (cap is None or g.max_degree <= cap):
            return g, attempt
        attempt += 1_000_003
    raise GraphError(
        f"could not generate {spec.family} {spec.params} within the degree cap"
    )


def run_campaign(config: ExperimentConfig) -> CampaignResult:
    rows: list[GameRow] = []
    total_report = InvariantReport()
    losses: list[Transcript] = []
    transcripts: list[Transcript] = []
    aborted = False
    game_no = 0
    for inst_idx, spec in enumerate(config.instances):
        for rep in range(spec.count * config.repetitions):
            base_seed = config.seed * 1_000_003 + inst_idx * 7919 + rep * 104_729
            try:
                graph, used_seed = _instance_graph(
                    spec, base_seed, config.max_degree_cap
                )
            except GraphError:
                continue
            dec = decompose(graph, config.root_policy)
            rel = relations(dec)
            bound = arboricity_palette_bound(graph.max_degree, rel.forest_count)
            if config.palette_rule == "fixed":
                palettes = [int(config.fixed_k or 0)]
            elif config.palette_rule == "sweep":
                lo, hi = config.sweep_offsets
                palettes = [max(1, bound + off) for off in range(lo, hi + 1)]
            else:
                palettes = [max(1, bound + config.palette_offset)]
            instance_degeneracy = degeneracy(graph)
            for palette, bob_name in (
                (p, b) for p in palettes for b in config.bobs
            ):
                game_no += 1
                game_id = f"{config.name}-{game_no:05d}"
                alice = make_alice(config.alice, rel)
                bob = make_bob(bob_name, rel, used_seed + game_no)
                observers = []
                suite = None
                if config.monitors:
                    suite = MonitorSuite(
                        rel,
                        palette,
                        strategy_alice=config.alice == "strategy",
                        game_id=game_id,
                    )
                    observers.append(suite)
                transcript = play(
                    graph,
                    palette,
                    alice,
                    bob,
                    seed=used_seed,
                    decomposition_dump=dec.dump(),
                    root_policy=config.root_policy,
                    observers=observers,
                )
                violations = suite.report.total_violations if suite else 0
                if suite:
                    total_report.merge(suite.report)
                rows.append(
                    GameRow(
                        game_id=game_id,
                        family=spec.family,
                        n=graph.n,
                        m=graph.m,
                        max_degree=graph.max_degree,
                        arboricity=rel.forest_count,
                        degeneracy=instance_degeneracy,
                        palette=palette,
                        alice=config.alice,
                        bob=bob_name,
                        seed=used_seed,
                        winner=transcript.result,
                        moves=len(transcript.moves()),
                        violations=violations,
                    )
                )
                if config.record_transcripts:
                    transcripts.append(transcript)
                lost = transcript.result != ALICE_WINS
                guaranteed = (
                    config.palette_rule == "theorem"
                    and config.palette_offset >= 0
                ) or (config.palette_rule == "sweep" and palette >= bound)
                if lost and config.alice == "strategy" and guaranteed:
                    losses.append(transcript)
                    if config.abort_on_loss:
                        aborted = True
                        break
            if aborted:
                break
        if aborted:
            break
    return CampaignResult(
        config=config,
        rows=rows,
        report=total_report,
        losses=losses,
        transcripts=transcripts,
        aborted=aborted,
    )


def _csv_text(rows: list[dict]) -> str:
    if not rows:
        return ""
    rows = [
        row if "schema" in row else {"schema": SUMMARY_SCHEMA, **row}
        for row in rows
    ]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def write_outputs(result: CampaignResult, out_dir: str | Path) -> dict[str, Path]:
    """Write summary.csv, invariants.csv, winrates.csv, improvement.csv and
    (optionally) transcripts.jsonl; deterministic bytes for fixed config."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths: dict[str, Path] = {}

    summary_rows = [
        {
            "schema": SUMMARY_SCHEMA,
            **{k: getattr(r, k) for k in (
                "game_id", "family", "n", "m", "max_degree", "arboricity",
                "degeneracy", "palette", "alice", "bob", "seed", "winner",
                "moves", "violations",
            )},
        }
        for r in result.rows
    ]
    paths["summary"] = out / "summary.csv"
    paths["summary"].write_text(_csv_text(summary_rows))

    paths["invariants"] = out / "invariants.csv"
    paths["invariants"].write_text(_csv_text(result.report.rows()))

    paths["winrates"] = out / "winrates.csv"
    paths["winrates"].write_text(_csv_text(result.win_rate_table()))

    paths["improvement"] = out / "improvement.csv"
    paths["improvement"].write_text(_csv_text(result.improvement_table()))

    if result.config.record_transcripts:
        paths["transcripts"] = out / "transcripts.jsonl"
        paths["transcripts"].write_text(
            "".join(t.to_jsonl() for t in result.transcripts)
        )
    if result.losses:
        paths["losses"] = out / "losses.jsonl"
        paths["losses"].write_text("".join(t.to_jsonl() for t in result.losses))
    meta = {
        "name": result.config.name,
        "seed": result.config.seed,
        "games": len(result.rows),
        "alice_wins": result.alice_wins,
        "aborted": result.aborted,
        "total_violations": result.report.total_violations,
    }
    paths["meta"] = out / "campaign.json"
    paths["meta"].write_text(json.dumps(meta, sort_keys=True, indent=2) + "\n")
    return paths


def default_output_dir() -> Path:
    return Path(os.environ.get("ICGAME_OUT", "icgame-out"))
