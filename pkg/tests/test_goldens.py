"""The frozen exact-value table and its refresh workflow."""

from __future__ import annotations

from icgame.goldens import (
    GOLDEN_INSTANCES,
    default_golden_path,
    goldens_csv,
    load_goldens,
    refresh_goldens,
    verify_goldens,
)


def test_frozen_file_exists_and_matches_the_solver():
    assert default_golden_path().exists()
    assert verify_goldens() == []


def test_frozen_rows_cover_the_instance_set():
    rows = load_goldens()
    assert [r["name"] for r in rows] == [name for name, _, _ in GOLDEN_INSTANCES]
    for row in rows:
        assert row["win_vector"]
        k = int(row["minimal_winning_k"])
        assert f"{k}:alice" in row["win_vector"]
        if k > int(row["win_vector"].split(":")[0]):
            assert f"{k - 1}:bob" in row["win_vector"]


def test_refresh_writes_identical_content_when_solver_unchanged(tmp_path):
    target = tmp_path / "goldens.csv"
    refresh_goldens(target)
    assert target.read_text() == goldens_csv()
    assert verify_goldens(target) == []


def test_stale_goldens_detected(tmp_path):
    target = tmp_path / "goldens.csv"
    target.write_text(
        goldens_csv().replace("1,P2,path,2,2", "1,P2,path,2,3")
    )
    assert "P2" in verify_goldens(target)


def test_cli_prints_and_checks(capsys):
    from icgame.cli import main

    code = main(["goldens"])
    out = capsys.readouterr().out
    assert code == 0
    assert "minimal_winning_k" in out and "C5" in out
