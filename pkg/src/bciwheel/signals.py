"""Multichannel EEG segments: the unit all DSP stages operate on."""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

OCCIPITAL = ("O1", "O2", "Oz")
FRONTAL = ("Fp1", "Fp2")
ALL_CHANNELS = OCCIPITAL + FRONTAL

DEFAULT_FS = 1000.0


@dataclass(frozen=True)
class EegSegment:
    """Channels x samples matrix in microvolts, with labels and a time origin."""

    channels: tuple[str, ...]
    fs: float
    data: np.ndarray
    t0: float = 0.0

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 2:
            raise ValueError("data must be channels x samples")
        if data.shape[0] != len(self.channels):
            raise ValueError("row count does not match channel labels")
        if not np.all(np.isfinite(data)):
            raise ValueError("non-finite samples")
        if self.fs <= 0:
            raise ValueError("fs must be positive")
        object.__setattr__(self, "channels", tuple(self.channels))
        object.__setattr__(self, "data", data)

    @property
    def n_samples(self) -> int:
        return self.data.shape[1]

    @property
    def duration(self) -> float:
        return self.n_samples / self.fs

    def channel(self, label: str) -> np.ndarray:
        try:
            return self.data[self.channels.index(label)]
        except ValueError:
            raise KeyError(f"no channel {label!r} in {self.channels}") from None

    def restrict(self, labels) -> "EegSegment":
        rows = [self.channels.index(lb) for lb in labels]
        return EegSegment(tuple(labels), self.fs, self.data[rows], self.t0)

    def window(self, start_s: float, duration_s: float) -> "EegSegment":
        i0 = int(round((start_s - self.t0) * self.fs))
        i1 = i0 + int(round(duration_s * self.fs))
        if i0 < 0 or i1 > self.n_samples:
            raise ValueError("window outside segment")
        return EegSegment(self.channels, self.fs, self.data[:, i0:i1], start_s)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(self.channels)
            writer.writerows(self.data.T)

    @classmethod
    def from_csv(cls, path, fs: float = DEFAULT_FS, t0: float = 0.0) -> "EegSegment":
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            channels = tuple(next(reader))
            rows = [[float(v) for v in row] for row in reader]
        return cls(channels, fs, np.array(rows).T, t0)
