"""Closed-loop session: synthetic EEG -> decoder -> simulator, on one clock.

All mutation funnels through Session.advance() / apply_*() under a single
lock; telemetry consumers get copies through a bounded per-client queue that
drops oldest non-alarm messages rather than ever blocking the loop.
"""
from __future__ import annotations

import enum
import threading
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from ..runtime import Command, CommandKind, CommandSource, DecoderRuntime, WINDOW_S, HOP_S
from ..signals import ALL_CHANNELS, EegSegment
from ..sim import AlarmEvent, WheelchairSim, WorldMap
from ..svm import TrainedModel
from ..synth import IntentKind, StreamingSynth, SubjectProfile

PHYSICS_DT = 0.05
EEG_DECIMATION = 4
QUEUE_CAP = 512


class SessionMode(str, enum.Enum):
    LIVE_SIM = "LIVE_SIM"
    REPLAY = "REPLAY"


@dataclass(frozen=True)
class SessionConfig:
    profile_id: str
    map_id: str
    seed: int
    mode: SessionMode = SessionMode.LIVE_SIM


class TelemetryHub:
    """Fan-out of typed messages to any number of slow-tolerant consumers."""

    def __init__(self):
        self._lock = threading.Lock()
        self._queues: dict[int, deque] = {}
        self._next_id = 0

    def subscribe(self) -> int:
        with self._lock:
            cid = self._next_id
            self._next_id += 1
            self._queues[cid] = deque()
            return cid

    def unsubscribe(self, cid: int) -> None:
        with self._lock:
            self._queues.pop(cid, None)

    def publish(self, message: dict) -> None:
        with self._lock:
            for q in self._queues.values():
                q.append(message)
                if len(q) > QUEUE_CAP:
                    # drop the oldest message that is not an alarm
                    for i, m in enumerate(q):
                        if m["type"] != "alarm":
                            del q[i]
                            break
                    else:
                        q.popleft()

    def drain(self, cid: int) -> list[dict]:
        with self._lock:
            q = self._queues.get(cid)
            if not q:
                return []
            out = list(q)
            q.clear()
            return out


@dataclass
class CommandRecord:
    t: float
    kind: str
    source: str
    seq: int | None = None


class Session:
    """One live or replayed closed-loop run."""

    def __init__(
        self,
        config: SessionConfig,
        profile: SubjectProfile,
        world: WorldMap,
        model: TrainedModel | None = None,
        noise_free_sensors: bool = False,
        replay_script: list[CommandRecord] | None = None,
    ):
        self.config = config
        self.profile = profile
        self.world = world
        self.mode = config.mode
        self.synth = StreamingSynth(profile)
        self.sim = WheelchairSim(world, noise_free_sensors=noise_free_sensors,
                                 seed=config.seed)
        self.runtime = DecoderRuntime(model) if model is not None else None
        self.hub = TelemetryHub()
        self.lock = threading.RLock()
        self.t = 0.0
        self.last_seq: int | None = None
        self.command_log: list[CommandRecord] = []
        self._buffer: EegSegment | None = None
        self._next_hop = HOP_S
        self._sensor_accum = 0.0
        self._alarm_seen = 0
        self._replay = sorted(replay_script or [], key=lambda r: r.t)
        self._replay_pos = 0

    # -- mutations ---------------------------------------------------------

    def set_intent(self, kind: IntentKind) -> None:
        if self.mode is not SessionMode.LIVE_SIM:
            raise RuntimeError("intent input only valid in LIVE_SIM mode")
        with self.lock:
            self.synth.set_intent(kind)

    def apply_command(self, kind: CommandKind, seq: int | None = None,
                      source: str = "MANUAL") -> dict:
        with self.lock:
            if seq is not None:
                if self.last_seq is not None and seq <= self.last_seq:
                    return {"accepted": False, "state": self.sim.state.motion.value,
                            "stale": True}
                self.last_seq = seq
            before_latched = self.sim.state.force_latched
            state = self.sim.apply_command(kind)
            accepted = not (before_latched and kind is not CommandKind.GO)
            self.command_log.append(CommandRecord(self.t, kind.value, source, seq))
            self.hub.publish({"type": "command", "ts_ms": self._ts(),
                              "kind": kind.value, "source": source,
                              "accepted": accepted})
            return {"accepted": accepted, "state": state.motion.value, "stale": False}

    # -- loop --------------------------------------------------------------

    def _ts(self) -> int:
        return int(round(self.t * 1000.0))

    def advance(self, duration: float) -> None:
        """Advance the session clock; drives physics, EEG and the decoder."""
        with self.lock:
            remaining = duration
            while remaining > 1e-9:
                dt = min(PHYSICS_DT, remaining)
                self.sim.tick(dt)
                self.t += dt
                remaining -= dt
                self._sensor_accum += dt
                self._publish_alarms()
                if self._sensor_accum >= 0.1 - 1e-9:
                    self._sensor_accum = 0.0
                    self._publish_pose()
                if self.t >= self._next_hop - 1e-9:
                    self._next_hop += HOP_S
                    self._hop()

    def _publish_alarms(self):
        alarms = [e for e in self.sim.events if isinstance(e, AlarmEvent)]
        for e in alarms[self._alarm_seen:]:
            self.hub.publish({"type": "alarm", "ts_ms": self._ts(), "t_sim": e.t})
        self._alarm_seen = len(alarms)

    def _publish_pose(self):
        s = self.sim.state
        self.hub.publish({"type": "pose", "ts_ms": self._ts(),
                          "x": s.pose.x, "y": s.pose.y, "heading": s.pose.heading,
                          "motion": s.motion.value,
                          "force_latched": s.force_latched})
        self.hub.publish({"type": "sensor", "ts_ms": self._ts(),
                          "front": s.sensors[0], "left": s.sensors[1],
                          "right": s.sensors[2]})

    def _hop(self):
        if self.mode is SessionMode.REPLAY:
            while (self._replay_pos < len(self._replay)
                   and self._replay[self._replay_pos].t <= self.t + 1e-9):
                rec = self._replay[self._replay_pos]
                self.sim.apply_command(CommandKind(rec.kind))
                self.command_log.append(CommandRecord(self.t, rec.kind, rec.source))
                self._replay_pos += 1
            return
        block = self.synth.next_block(HOP_S)
        self.hub.publish({
            "type": "eeg", "ts_ms": self._ts(),
            "channels": list(ALL_CHANNELS),
            "fs": block.fs / EEG_DECIMATION,
            "samples": [list(row) for row in block.data[:, ::EEG_DECIMATION]],
        })
        self._buffer = _append_ring(self._buffer, block, WINDOW_S)
        if self.runtime is None or self._buffer.duration < WINDOW_S - 1e-9:
            return
        if self.sim.action_done:
            self.runtime.action_completed()
        decision, command = self.runtime.step(self._buffer)
        self.hub.publish({
            "type": "decision", "ts_ms": self._ts(),
            "ssvep_class": decision.ssvep_class,
            "votes": list(decision.votes),
            "blink_gesture": decision.blink_gesture,
        })
        if command is not None:
            self.apply_command(command.kind, source=command.source.value)

    def snapshot(self) -> dict:
        with self.lock:
            s = self.sim.state
            return {
                "ts_ms": self._ts(),
                "pose": {"x": s.pose.x, "y": s.pose.y, "heading": s.pose.heading},
                "motion": s.motion.value,
                "sensors": {"front": s.sensors[0], "left": s.sensors[1],
                            "right": s.sensors[2]},
                "force_latched": s.force_latched,
            }


def _append_ring(buffer: EegSegment | None, block: EegSegment,
                 keep_s: float) -> EegSegment:
    if buffer is None:
        return block
    data = np.concatenate([buffer.data, block.data], axis=1)
    n_keep = int(round(keep_s * block.fs))
    if data.shape[1] > n_keep:
        drop = data.shape[1] - n_keep
        t0 = buffer.t0 + drop / block.fs
        data = data[:, drop:]
    else:
        t0 = buffer.t0
    return EegSegment(block.channels, block.fs, data, t0)


class SessionDriver(threading.Thread):
    """Real-time (or scaled) wall-clock driver for interactive sessions."""

    def __init__(self, session: Session, time_scale: float = 1.0,
                 step_s: float = 0.1):
        super().__init__(daemon=True)
        self.session = session
        self.time_scale = time_scale
        self.step_s = step_s
        self._stop = threading.Event()

    def run(self):
        import time

        while not self._stop.is_set():
            t0 = time.monotonic()
            self.session.advance(self.step_s)
            budget = self.step_s / self.time_scale - (time.monotonic() - t0)
            if budget > 0:
                self._stop.wait(budget)

    def stop(self):
        self._stop.set()
