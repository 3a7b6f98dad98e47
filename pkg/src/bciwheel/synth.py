"""Synthetic EEG conditioned on operator intent.

Stands in for recordings: occipital channels carry the flicker response at
the attended LED frequency and its first two harmonics, frontal channels
carry raised-cosine blink pulses, and every channel rides on 1/f background
noise.  Everything is a pure function of (profile, timeline, seed).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
import yaml

from .signals import ALL_CHANNELS, DEFAULT_FS, FRONTAL, OCCIPITAL, EegSegment

LED_LEFT_HZ = 13.0
LED_RIGHT_HZ = 15.0
N_HARMONICS = 3
BLINK_SPAN_S = 4.0  # the triple-blink gesture must fit in this span
BLINK_SPACING_S = 1.0
BLINK_JITTER_S = 0.1


class IntentKind(str, enum.Enum):
    LED_LEFT_13HZ = "LED_LEFT_13HZ"
    LED_RIGHT_15HZ = "LED_RIGHT_15HZ"
    NONE = "NONE"
    BLINK_TRIPLE = "BLINK_TRIPLE"


LED_FREQ = {IntentKind.LED_LEFT_13HZ: LED_LEFT_HZ, IntentKind.LED_RIGHT_15HZ: LED_RIGHT_HZ}


@dataclass(frozen=True)
class Intent:
    kind: IntentKind
    onset: float
    duration: float

    @property
    def end(self) -> float:
        return self.onset + self.duration


@dataclass(frozen=True)
class SubjectProfile:
    id: str
    ssvep_amp: tuple[float, float, float]  # uV, fundamental + 2 harmonics
    noise_amp: float  # uV RMS
    blink_amp: float = 100.0
    blink_width: float = 0.3
    channel_gain: dict = field(default_factory=lambda: {c: 1.0 for c in ALL_CHANNELS})
    seed: int = 0

    def __post_init__(self):
        amp = tuple(float(a) for a in self.ssvep_amp)
        if len(amp) != N_HARMONICS or any(a < 0 for a in amp):
            raise ValueError("ssvep_amp must be 3 non-negative amplitudes")
        object.__setattr__(self, "ssvep_amp", amp)
        if self.noise_amp <= 0:
            raise ValueError("noise_amp must be positive")
        if not 0.05 < self.blink_width < 1.0:
            raise ValueError("blink_width outside (0.05, 1.0) s")
        if set(self.channel_gain) != set(ALL_CHANNELS):
            raise ValueError(f"channel_gain must cover exactly {ALL_CHANNELS}")


def load_profiles(path) -> dict[str, SubjectProfile]:
    """Read the versioned profile config: one profile per id."""
    with open(path) as fh:
        doc = yaml.safe_load(fh)
    if not isinstance(doc, dict) or "profiles" not in doc:
        raise ValueError("profile config must contain a 'profiles' mapping")
    out = {}
    for pid, kv in doc["profiles"].items():
        out[pid] = SubjectProfile(id=pid, **kv)
    return out


def pink_noise(n: int, rng: np.random.Generator) -> np.ndarray:
    """Unit-RMS 1/f noise via spectral shaping of white noise."""
    white = rng.standard_normal(n)
    spec = np.fft.rfft(white)
    k = np.arange(len(spec), dtype=np.float64)
    spec[0] = 0.0
    spec[1:] /= np.sqrt(k[1:])
    x = np.fft.irfft(spec, n)
    return x / np.sqrt(np.mean(x ** 2))


def raised_cosine(t: np.ndarray, t_center: float, amp: float, width: float) -> np.ndarray:
    """Pulse of peak `amp` at t_center, compactly supported on +-width/2."""
    u = t - t_center
    out = np.zeros_like(t)
    mask = np.abs(u) <= width / 2
    out[mask] = 0.5 * amp * (1.0 + np.cos(2.0 * np.pi * u[mask] / width))
    return out


def blink_pulse(profile: SubjectProfile, t_center: float, fs: float = DEFAULT_FS) -> np.ndarray:
    """Single blink waveform sampled over its own support."""
    half = profile.blink_width / 2
    t = t_center + np.arange(-round(half * fs), round(half * fs) + 1) / fs
    return raised_cosine(t, t_center, profile.blink_amp, profile.blink_width)


def triple_blink_times(onset: float, rng: np.random.Generator) -> list[float]:
    jitter = rng.uniform(-BLINK_JITTER_S, BLINK_JITTER_S, 3)
    return [onset + 0.5 + i * BLINK_SPACING_S + jitter[i] for i in range(3)]


def _validate_timeline(timeline, duration):
    ordered = sorted(timeline, key=lambda it: it.onset)
    prev_end = 0.0
    for it in ordered:
        if it.onset < -1e-9 or it.end > duration + 1e-9:
            raise ValueError(f"intent {it} outside [0, {duration}]")
        if it.onset < prev_end - 1e-9:
            raise ValueError(f"overlapping intents at t={it.onset}")
        if it.kind is IntentKind.BLINK_TRIPLE and it.duration < BLINK_SPAN_S - 1e-9:
            raise ValueError("BLINK_TRIPLE intents need a 4 s span")
        prev_end = it.end
    return ordered


def generate(
    profile: SubjectProfile,
    timeline: list[Intent],
    duration: float,
    fs: float = DEFAULT_FS,
) -> EegSegment:
    """Render the intent timeline to a 5-channel segment. Deterministic in seed."""
    if duration <= 0:
        raise ValueError("duration must be positive")
    timeline = _validate_timeline(timeline, duration)
    rng = np.random.default_rng(profile.seed)
    n = int(round(duration * fs))
    t = np.arange(n) / fs
    data = np.empty((len(ALL_CHANNELS), n))
    for row in range(len(ALL_CHANNELS)):
        data[row] = pink_noise(n, rng) * profile.noise_amp

    gains = np.array([profile.channel_gain[c] for c in ALL_CHANNELS])
    occ_rows = [ALL_CHANNELS.index(c) for c in OCCIPITAL]
    fp_rows = [ALL_CHANNELS.index(c) for c in FRONTAL]

    for it in timeline:
        mask = (t >= it.onset - 1e-12) & (t < it.end - 1e-12)
        if it.kind in LED_FREQ:
            f = LED_FREQ[it.kind]
            phases = rng.uniform(0.0, 2.0 * np.pi, N_HARMONICS)
            tone = np.zeros(n)
            for h in range(1, N_HARMONICS + 1):
                tone += profile.ssvep_amp[h - 1] * np.sin(
                    2.0 * np.pi * h * f * t + phases[h - 1]
                )
            for row in occ_rows:
                data[row, mask] += gains[row] * tone[mask]
        elif it.kind is IntentKind.BLINK_TRIPLE:
            for tc in triple_blink_times(it.onset, rng):
                pulse = raised_cosine(t, tc, profile.blink_amp, profile.blink_width)
                for row in fp_rows:
                    data[row] += gains[row] * pulse
    return EegSegment(ALL_CHANNELS, fs, data)


class StreamingSynth:
    """Block-wise generator for the live gateway loop.

    Keeps SSVEP phase and scheduled blink pulses continuous across block
    boundaries; intent switches take effect from the next sample.
    """

    def __init__(self, profile: SubjectProfile, fs: float = DEFAULT_FS):
        self.profile = profile
        self.fs = fs
        self.rng = np.random.default_rng(profile.seed)
        self.t = 0.0
        self.kind = IntentKind.NONE
        self.kind_until = np.inf
        self._phases = self.rng.uniform(0.0, 2.0 * np.pi, N_HARMONICS)
        self._pending_blinks: list[float] = []

    def set_intent(self, kind: IntentKind) -> None:
        self.kind = kind
        self.kind_until = np.inf
        if kind is IntentKind.BLINK_TRIPLE:
            self._pending_blinks.extend(triple_blink_times(self.t, self.rng))
            self.kind_until = self.t + BLINK_SPAN_S  # one-shot, auto-revert
        elif kind in LED_FREQ:
            self._phases = self.rng.uniform(0.0, 2.0 * np.pi, N_HARMONICS)

    def next_block(self, duration: float) -> EegSegment:
        profile = self.profile
        n = int(round(duration * self.fs))
        t = self.t + np.arange(n) / self.fs
        data = np.empty((len(ALL_CHANNELS), n))
        for row in range(len(ALL_CHANNELS)):
            data[row] = pink_noise(n, self.rng) * profile.noise_amp
        gains = {c: profile.channel_gain[c] for c in ALL_CHANNELS}

        if self.kind in LED_FREQ:
            f = LED_FREQ[self.kind]
            tone = np.zeros(n)
            for h in range(1, N_HARMONICS + 1):
                tone += profile.ssvep_amp[h - 1] * np.sin(
                    2.0 * np.pi * h * f * t + self._phases[h - 1]
                )
            for c in OCCIPITAL:
                data[ALL_CHANNELS.index(c)] += gains[c] * tone

        block_end = self.t + duration
        keep = []
        for tc in self._pending_blinks:
            if tc + profile.blink_width / 2 < self.t:
                continue
            pulse = raised_cosine(t, tc, profile.blink_amp, profile.blink_width)
            for c in FRONTAL:
                data[ALL_CHANNELS.index(c)] += gains[c] * pulse
            if tc + profile.blink_width / 2 > block_end:
                keep.append(tc)
        self._pending_blinks = keep

        seg = EegSegment(ALL_CHANNELS, self.fs, data, self.t)
        self.t = block_end
        if self.t >= self.kind_until:
            self.kind = IntentKind.NONE
            self.kind_until = np.inf
        return seg
