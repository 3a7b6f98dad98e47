"""2D wheelchair simulation: kinematics, ultrasonic ray-cast sensors and the
latched force-stop safety system.

The chair is a point with heading; three sensors (front, +/-30 degrees) each
sweep a 30 degree cone of rays against the map polygons and the arena walls.
Any reading under the safety distance while moving latches a force stop that
only the next GO releases.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .runtime import Command, CommandKind

SAFETY_DISTANCE_M = 0.5
SENSOR_MIN_M = 0.02
SENSOR_MAX_M = 4.0
SENSOR_CONE_RAD = math.radians(30.0)
SENSOR_RAYS = 15
SENSOR_NOISE_SD_M = 0.01
SENSOR_ANGLES = (0.0, math.radians(30.0), math.radians(-30.0))  # front, left, right

FORWARD_SPEED = 0.4  # m/s
TURN_RATE = math.radians(30.0)  # rad/s -> 60 degrees in 2 s
DEFAULT_TURN_RAD = math.radians(60.0)
MAX_TURN_RAD = math.radians(60.0)


class Motion(str, enum.Enum):
    STOPPED = "STOPPED"
    FORWARD = "FORWARD"
    TURNING_LEFT = "TURNING_LEFT"
    TURNING_RIGHT = "TURNING_RIGHT"
    FORCE_STOPPED = "FORCE_STOPPED"


def wrap_angle(a: float) -> float:
    """Normalize to (-pi, pi]."""
    a = math.fmod(a + math.pi, 2.0 * math.pi)
    if a <= 0:
        a += 2.0 * math.pi
    return a - math.pi


@dataclass(frozen=True)
class Pose:
    x: float
    y: float
    heading: float

    def __post_init__(self):
        object.__setattr__(self, "heading", wrap_angle(self.heading))


@dataclass(frozen=True)
class ChairState:
    pose: Pose
    motion: Motion = Motion.STOPPED
    force_latched: bool = False
    sensors: tuple[float, float, float] = (SENSOR_MAX_M,) * 3
    turn_remaining: float = 0.0

    def __post_init__(self):
        if (self.motion is Motion.FORCE_STOPPED) != self.force_latched:
            raise ValueError("FORCE_STOPPED and force_latched must agree")


@dataclass(frozen=True)
class WorldMap:
    bounds: tuple[float, float, float, float]  # xmin, ymin, xmax, ymax
    obstacles: tuple[tuple[tuple[float, float], ...], ...]
    start: Pose

    def segments(self):
        x0, y0, x1, y1 = self.bounds
        walls = [((x0, y0), (x1, y0)), ((x1, y0), (x1, y1)),
                 ((x1, y1), (x0, y1)), ((x0, y1), (x0, y0))]
        for poly in self.obstacles:
            for i in range(len(poly)):
                walls.append((poly[i], poly[(i + 1) % len(poly)]))
        return walls

    @classmethod
    def load(cls, path) -> "WorldMap":
        """Plain-text map: bounds line, one polygon per line, start pose line."""
        lines = []
        with open(path) as fh:
            for raw in fh:
                line = raw.strip()
                if line and not line.startswith("#"):
                    lines.append(line)
        if len(lines) < 2:
            raise ValueError("map file needs a bounds line and a start line")
        bounds = tuple(float(v) for v in lines[0].split())
        if len(bounds) != 4:
            raise ValueError("bounds line must be 'xmin ymin xmax ymax'")
        sx, sy, sdeg = (float(v) for v in lines[-1].split())
        polys = []
        for line in lines[1:-1]:
            pts = tuple(tuple(float(v) for v in pair.split(",")) for pair in line.split())
            if len(pts) < 3:
                raise ValueError(f"polygon needs >= 3 vertices: {line!r}")
            polys.append(pts)
        world = cls(bounds, tuple(polys), Pose(sx, sy, math.radians(sdeg)))
        if point_in_any_obstacle((sx, sy), world):
            raise ValueError("start pose intersects an obstacle")
        return world


def point_in_polygon(p, poly) -> bool:
    x, y = p
    inside = False
    for i in range(len(poly)):
        (x1, y1), (x2, y2) = poly[i], poly[(i + 1) % len(poly)]
        if (y1 > y) != (y2 > y):
            t = (y - y1) / (y2 - y1)
            if x < x1 + t * (x2 - x1):
                inside = not inside
    return inside


def point_in_any_obstacle(p, world: WorldMap) -> bool:
    return any(point_in_polygon(p, poly) for poly in world.obstacles)


def _ray_segment(ox, oy, dx, dy, seg) -> float:
    (x1, y1), (x2, y2) = seg
    ex, ey = x2 - x1, y2 - y1
    den = dx * ey - dy * ex
    if abs(den) < 1e-12:
        return math.inf
    t = ((x1 - ox) * ey - (y1 - oy) * ex) / den
    u = ((x1 - ox) * dy - (y1 - oy) * dx) / den
    if t >= 0.0 and 0.0 <= u <= 1.0:
        return t
    return math.inf


def sense(pose: Pose, world: WorldMap, rng: np.random.Generator | None = None,
          noise: bool = True) -> tuple[float, float, float]:
    """Min ray-cast distance per sensor over its cone, clamped to the range."""
    segs = np.asarray(world.segments(), dtype=np.float64)  # (m, 2, 2)
    offsets = np.linspace(-SENSOR_CONE_RAD / 2, SENSOR_CONE_RAD / 2, SENSOR_RAYS)
    angles = (pose.heading + np.asarray(SENSOR_ANGLES)[:, None] + offsets[None, :]).ravel()
    dx, dy = np.cos(angles), np.sin(angles)  # (r,)

    ex = segs[:, 1, 0] - segs[:, 0, 0]
    ey = segs[:, 1, 1] - segs[:, 0, 1]
    px = segs[:, 0, 0] - pose.x
    py = segs[:, 0, 1] - pose.y
    den = dx[:, None] * ey[None, :] - dy[:, None] * ex[None, :]  # (r, m)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (px[None, :] * ey[None, :] - py[None, :] * ex[None, :]) / den
        u = (px[None, :] * dy[:, None] - py[None, :] * dx[:, None]) / den
    hit = (np.abs(den) > 1e-12) & (t >= 0.0) & (u >= 0.0) & (u <= 1.0)
    t = np.where(hit, t, np.inf)
    per_ray = t.min(axis=1).reshape(len(SENSOR_ANGLES), SENSOR_RAYS)
    readings = np.minimum(per_ray.min(axis=1), SENSOR_MAX_M)
    if noise and rng is not None:
        readings = readings + rng.normal(0.0, SENSOR_NOISE_SD_M, len(readings))
    readings = np.clip(readings, SENSOR_MIN_M, SENSOR_MAX_M)
    return tuple(float(v) for v in readings)


class AlarmEvent:
    """Marker appended to the event log when a force stop latches."""

    def __init__(self, t: float):
        self.t = t

    def __repr__(self):
        return f"AlarmEvent(t={self.t:.3f})"


@dataclass
class WheelchairSim:
    """Owns the chair state and the logical clock."""

    world: WorldMap
    noise_free_sensors: bool = False
    seed: int = 0
    forward_speed: float = FORWARD_SPEED
    turn_rate: float = TURN_RATE
    turn_angle: float = DEFAULT_TURN_RAD
    t: float = 0.0
    state: ChairState = None
    events: list = field(default_factory=list)
    _last_action_done: bool = True

    def __post_init__(self):
        if not 0 < self.turn_angle <= MAX_TURN_RAD + 1e-12:
            raise ValueError("turn angle must be in (0, 60] degrees")
        self.rng = np.random.default_rng(self.seed)
        if self.state is None:
            start = self.world.start
            self.state = ChairState(start, sensors=self._sense(start))

    def _sense(self, pose: Pose):
        return sense(pose, self.world, self.rng, noise=not self.noise_free_sensors)

    def apply_command(self, cmd: Command | CommandKind) -> ChairState:
        kind = cmd.kind if isinstance(cmd, Command) else cmd
        s = self.state
        if s.force_latched:
            if kind is CommandKind.GO:
                s = replace(s, motion=Motion.FORWARD, force_latched=False,
                            turn_remaining=0.0)
            else:
                self.events.append(("ignored", self.t, kind.value))
                return self.state
        elif kind is CommandKind.GO:
            s = replace(s, motion=Motion.FORWARD, turn_remaining=0.0)
        elif kind is CommandKind.STOP:
            s = replace(s, motion=Motion.STOPPED, turn_remaining=0.0)
        elif kind is CommandKind.LEFT:
            s = replace(s, motion=Motion.TURNING_LEFT, turn_remaining=self.turn_angle)
        elif kind is CommandKind.RIGHT:
            s = replace(s, motion=Motion.TURNING_RIGHT, turn_remaining=self.turn_angle)
        self.state = s
        self._last_action_done = kind in (CommandKind.GO, CommandKind.STOP)
        return self.state

    @property
    def action_done(self) -> bool:
        """True once the last timed action (turn) has finished."""
        return self._last_action_done

    def tick(self, dt: float) -> ChairState:
        if not 0.0 < dt <= 0.1:
            raise ValueError("dt must be in (0, 0.1] s")
        s = self.state
        pose = s.pose
        motion = s.motion
        turn_remaining = s.turn_remaining
        # sample sensors before integrating: the chair never moves through a
        # reading already under the safety distance
        sensors = self._sense(pose)
        if motion not in (Motion.STOPPED, Motion.FORCE_STOPPED) and min(sensors) < SAFETY_DISTANCE_M:
            self.t += dt
            self._last_action_done = True
            self.events.append(AlarmEvent(self.t))
            self.state = ChairState(pose, Motion.FORCE_STOPPED, True, sensors, 0.0)
            return self.state
        if motion is Motion.FORWARD:
            pose = Pose(pose.x + self.forward_speed * dt * math.cos(pose.heading),
                        pose.y + self.forward_speed * dt * math.sin(pose.heading),
                        pose.heading)
        elif motion in (Motion.TURNING_LEFT, Motion.TURNING_RIGHT):
            sign = 1.0 if motion is Motion.TURNING_LEFT else -1.0
            step = min(self.turn_rate * dt, turn_remaining)
            pose = Pose(pose.x, pose.y, pose.heading + sign * step)
            turn_remaining -= step
            if turn_remaining <= 1e-12:
                motion = Motion.STOPPED
                turn_remaining = 0.0
                self._last_action_done = True
        self.t += dt
        self.state = ChairState(pose, motion, s.force_latched, sensors, turn_remaining)
        return self.state
