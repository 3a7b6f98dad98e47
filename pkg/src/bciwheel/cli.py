"""Command-line bench for the decoder + simulator stack.

Verbs: synth, train, eval, report, simulate, serve.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bench
from .sim import SAFETY_DISTANCE_M, WheelchairSim, WorldMap
from .svm import TrainedModel
from .synth import Intent, IntentKind, generate

DEFAULT_MAP = Path(__file__).resolve().parents[2] / "maps" / "home.map"


def _cohort(args):
    amps = None
    if args.snr_sweep:
        amps = [float(v) for v in args.snr_sweep.split(",")]
    return bench.cohort_profiles(args.seed, args.subjects, amplitudes=amps)


def _add_cohort_flags(p):
    p.add_argument("--subjects", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--snr-sweep", type=str, default=None,
                   help="comma-separated SSVEP fundamental amplitudes (uV)")
    p.add_argument("--out-dir", type=Path, default=Path("out"))


def cmd_synth(args) -> int:
    out = args.out_dir
    out.mkdir(parents=True, exist_ok=True)
    kinds = {"left": IntentKind.LED_LEFT_13HZ, "right": IntentKind.LED_RIGHT_15HZ,
             "baseline": IntentKind.NONE, "blink": IntentKind.BLINK_TRIPLE}
    for profile in _cohort(args):
        for name, kind in kinds.items():
            seg = generate(profile, [Intent(kind, 0.0, 4.0)], 4.0)
            seg.to_csv(out / f"{profile.id}_{name}.csv")
    print(f"wrote {4 * args.subjects} segments to {out}")
    return 0


def cmd_train(args) -> int:
    out = args.out_dir
    out.mkdir(parents=True, exist_ok=True)
    summary = {}
    for profile in _cohort(args):
        data, model, cv_acc = bench.fit_subject(profile, args.seed, budget=args.budget)
        model.save(out / f"{profile.id}.model.json")
        summary[profile.id] = {"cv_accuracy": cv_acc, "n_rows": len(data.y)}
        print(f"{profile.id}: cv_acc={100 * cv_acc:.2f}% ({len(data.y)} rows)")
    (out / "train_summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True))
    return 0


def _evaluate(args, models: dict[str, tuple[TrainedModel, float]]) -> bench.ExperimentReport:
    rows = []
    for profile in _cohort(args):
        model, cv_acc = models[profile.id]
        outcomes = bench.run_online_test(model, profile, args.seed)
        rows.append(bench.row_from_outcomes(profile.id, cv_acc, outcomes))
    return bench.ExperimentReport(rows)


def _write_report(report: bench.ExperimentReport, out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.txt").write_text(report.to_text())
    (out / "report.csv").write_text(report.to_csv())
    (out / "report.json").write_text(
        json.dumps(report.to_json_dict(), indent=2, sort_keys=True))
    sys.stdout.write(report.to_text())


def cmd_eval(args) -> int:
    models_dir = args.models_dir or args.out_dir
    summary = json.loads((models_dir / "train_summary.json").read_text())
    models = {}
    for profile in _cohort(args):
        models[profile.id] = (TrainedModel.load(models_dir / f"{profile.id}.model.json"),
                              summary[profile.id]["cv_accuracy"])
    _write_report(_evaluate(args, models), args.out_dir)
    return 0


def cmd_report(args) -> int:
    """End-to-end: calibrate, tune, train and evaluate the whole cohort."""
    models = {}
    for profile in _cohort(args):
        _, model, cv_acc = bench.fit_subject(profile, args.seed, budget=args.budget)
        models[profile.id] = (model, cv_acc)
        print(f"{profile.id}: trained (cv_acc={100 * cv_acc:.2f}%)", file=sys.stderr)
    _write_report(_evaluate(args, models), args.out_dir)
    return 0


def run_episode(world: WorldMap, seed: int, duration_s: float = 30.0,
                noise_free: bool = False) -> dict:
    """One randomized command script; returns safety counters."""
    from .runtime import Command, CommandKind, CommandSource

    from .sim import point_in_any_obstacle

    rng = np.random.default_rng(seed)
    sim = WheelchairSim(world, seed=seed + 1, noise_free_sensors=noise_free)
    dt = 0.05
    n = int(duration_s / dt)
    next_cmd = 0.0
    violations = {"intrusion": 0, "inside_obstacle": 0, "bad_release": 0, "ticks": 0}
    for i in range(n):
        t = i * dt
        if t >= next_cmd:
            kind = rng.choice([CommandKind.GO, CommandKind.LEFT,
                               CommandKind.RIGHT, CommandKind.STOP],
                              p=[0.5, 0.2, 0.2, 0.1])
            was_latched = sim.state.force_latched
            sim.apply_command(Command(kind, t, CommandSource.MANUAL))
            if was_latched and not sim.state.force_latched and kind != CommandKind.GO:
                # only an explicit GO may clear a latched force-stop
                violations["bad_release"] += 1
            next_cmd = t + float(rng.uniform(0.5, 4.0))
        before = sim.state.pose
        state = sim.tick(dt)
        violations["ticks"] += 1
        if point_in_any_obstacle((state.pose.x, state.pose.y), world):
            violations["inside_obstacle"] += 1
        translated = (state.pose.x, state.pose.y) != (before.x, before.y)
        if translated and min(state.sensors) < SAFETY_DISTANCE_M:
            # translated during a tick whose pre-move scan was already inside
            # the safety envelope: the latch failed to hold the chair
            violations["intrusion"] += 1
    return violations


def cmd_simulate(args) -> int:
    world = WorldMap.load(args.map)
    totals = {"intrusion": 0, "inside_obstacle": 0, "ticks": 0}
    for ep in range(args.episodes):
        v = run_episode(world, seed=args.seed * 100003 + ep,
                        duration_s=args.duration,
                        noise_free=args.noise_free_sensors)
        for k in totals:
            totals[k] += v[k]
    print(json.dumps({"episodes": args.episodes, **totals}, sort_keys=True))
    return 0 if totals["intrusion"] == 0 and totals["inside_obstacle"] == 0 else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .gateway.app import create_app
    from .gateway.session import Session, SessionConfig, SessionDriver

    profile = bench.cohort_profiles(args.seed, 1, amplitudes=[2.5])[0]
    model = TrainedModel.load(args.model) if args.model else None
    world = WorldMap.load(args.map)
    config = SessionConfig(profile_id=profile.id, map_id=str(args.map),
                           seed=args.seed)
    session = Session(config, profile, world, model=model)
    driver = SessionDriver(session, time_scale=args.time_scale)
    driver.start()
    try:
        uvicorn.run(create_app(session), host=args.host, port=args.port)
    finally:
        driver.stop()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bciwheel")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("synth", help="write synthetic EEG segments as CSV")
    _add_cohort_flags(p)
    p.set_defaults(fn=cmd_synth)

    p = sub.add_parser("train", help="calibrate and fit per-subject models")
    _add_cohort_flags(p)
    p.add_argument("--budget", type=int, default=12)
    p.set_defaults(fn=cmd_train)

    p = sub.add_parser("eval", help="online test against saved models")
    _add_cohort_flags(p)
    p.add_argument("--models-dir", type=Path, default=None)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("report", help="full train + eval pipeline")
    _add_cohort_flags(p)
    p.add_argument("--budget", type=int, default=12)
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("simulate", help="randomized safety episodes")
    p.add_argument("--map", type=Path, default=DEFAULT_MAP)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--episodes", type=int, default=100)
    p.add_argument("--duration", type=float, default=30.0)
    p.add_argument("--noise-free-sensors", action="store_true")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("serve", help="run the HTTP/WS gateway")
    p.add_argument("--map", type=Path, default=DEFAULT_MAP)
    p.add_argument("--model", type=Path, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--host", type=str, default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--time-scale", type=float, default=1.0)
    p.set_defaults(fn=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
