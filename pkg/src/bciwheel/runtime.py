"""Online decode loop: sliding 4 s windows, 1 s hop, debounced commands.

SSVEP classification and blink detection run over the same window; a triple
blink always preempts the SSVEP result (the STOP path must never lose
arbitration).  LEFT/RIGHT fire only after two consecutive hops agree; after
any command a refractory holds until the executing action reports completion.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .blink import BlinkTemplate, bandpass, detect_blinks, is_triple_blink
from .features import extract_features
from .signals import FRONTAL, OCCIPITAL, EegSegment
from .svm import TrainedModel
from .wavelets.denoise import detrend

WINDOW_S = 4.0
HOP_S = 1.0
DEBOUNCE_AGREE = 2


class CommandKind(str, enum.Enum):
    LEFT = "LEFT"
    RIGHT = "RIGHT"
    GO = "GO"
    STOP = "STOP"


class CommandSource(str, enum.Enum):
    SSVEP = "SSVEP"
    BLINK = "BLINK"
    MANUAL = "MANUAL"


SSVEP_COMMANDS = {"LEFT_13": CommandKind.LEFT, "RIGHT_15": CommandKind.RIGHT}


@dataclass(frozen=True)
class Decision:
    window_end: float
    ssvep_class: str
    votes: tuple[int, ...]
    blink_gesture: bool


@dataclass(frozen=True)
class Command:
    kind: CommandKind
    issued_at: float
    source: CommandSource


@dataclass
class DecoderRuntime:
    """One logical decoder per session; feed it one window per hop."""

    model: TrainedModel
    template: BlinkTemplate | None = None
    blink_threshold: float = 0.6
    moving: bool = False  # GO/STOP toggle state
    _refractory: bool = field(default=False, repr=False)
    _agree: list[str] = field(default_factory=list, repr=False)

    def action_completed(self) -> None:
        """The simulator reports the last command has finished executing."""
        self._refractory = False

    def step(self, buffer: EegSegment) -> tuple[Decision, Command | None]:
        """Decode one 4 s window; returns the decision and an optional command."""
        if buffer.duration < WINDOW_S - 1e-9:
            raise ValueError("buffer underrun: need >= 4 s of samples")
        window = buffer.window(buffer.t0 + buffer.duration - WINDOW_S, WINDOW_S)
        window_end = window.t0 + WINDOW_S

        occipital = detrend(window.restrict(OCCIPITAL))
        feats = extract_features(occipital)
        ssvep_class, votes = self.model.predict(feats.values)

        frontal = bandpass(window.restrict(FRONTAL))
        events = detect_blinks(frontal, self.template, self.blink_threshold)
        gesture = is_triple_blink(events)

        decision = Decision(window_end, ssvep_class, tuple(int(v) for v in votes), gesture)

        command = None
        if gesture:
            self._agree.clear()
            if not self._refractory:
                kind = CommandKind.STOP if self.moving else CommandKind.GO
                command = Command(kind, window_end, CommandSource.BLINK)
                self.moving = not self.moving
                self._refractory = True
        elif ssvep_class in SSVEP_COMMANDS:
            if self._agree and self._agree[-1] != ssvep_class:
                self._agree.clear()
            self._agree.append(ssvep_class)
            if len(self._agree) >= DEBOUNCE_AGREE and not self._refractory:
                command = Command(SSVEP_COMMANDS[ssvep_class], window_end,
                                  CommandSource.SSVEP)
                self._agree.clear()
                self._refractory = True
        else:
            self._agree.clear()
        return decision, command


def slide_windows(seg: EegSegment, window_s: float = WINDOW_S, hop_s: float = HOP_S):
    """All full windows of a segment at the hop rate, in time order."""
    n_win = int(round(window_s * seg.fs))
    n_hop = int(round(hop_s * seg.fs))
    out = []
    start = 0
    while start + n_win <= seg.n_samples:
        data = seg.data[:, start : start + n_win]
        out.append(EegSegment(seg.channels, seg.fs, data, seg.t0 + start / seg.fs))
        start += n_hop
    return out
