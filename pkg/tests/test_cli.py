"""Bench CLI surface tests (fast paths only)."""
import json

import pytest

from bciwheel.cli import DEFAULT_MAP, build_parser, main, run_episode
from bciwheel.sim import WorldMap


def test_parser_verbs():
    parser = build_parser()
    args = parser.parse_args(["synth", "--subjects", "2", "--seed", "5"])
    assert args.verb == "synth" and args.subjects == 2
    args = parser.parse_args(["simulate", "--noise-free-sensors",
                              "--episodes", "3"])
    assert args.noise_free_sensors and args.episodes == 3
    args = parser.parse_args(["report", "--snr-sweep", "1.0,0.5"])
    assert args.snr_sweep == "1.0,0.5"
    with pytest.raises(SystemExit):
        parser.parse_args([])


def test_synth_writes_segments(tmp_path):
    rc = main(["synth", "--subjects", "1", "--seed", "0",
               "--out-dir", str(tmp_path)])
    assert rc == 0
    files = sorted(p.name for p in tmp_path.glob("*.csv"))
    assert files == ["s01_baseline.csv", "s01_blink.csv",
                     "s01_left.csv", "s01_right.csv"]


def test_simulate_verb(tmp_path, capsys):
    rc = main(["simulate", "--episodes", "2", "--duration", "5",
               "--seed", "1", "--noise-free-sensors"])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["episodes"] == 2
    assert out["intrusion"] == 0
    assert out["inside_obstacle"] == 0


def test_run_episode_is_deterministic():
    world = WorldMap.load(DEFAULT_MAP)
    a = run_episode(world, seed=9, duration_s=5.0, noise_free=True)
    b = run_episode(world, seed=9, duration_s=5.0, noise_free=True)
    assert a == b
