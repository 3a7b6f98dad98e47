"""Narrowband CCA features for a 4 s occipital window.

Per electrode: denoise, expand to a depth-6 db7 packet tree, rebuild the
three frequency-ordered subbands that contain the stimulus fundamentals and
their harmonics (bands 1, 3, 5 -> roughly 8-16, 23-31, 39-47 Hz), and score
each rebuilt band against sine/cosine references at both LED frequencies.
The 18 scores are electrode-major: (O1, O2, Oz) x (harmonic 1..3) x (13, 15).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .signals import DEFAULT_FS, OCCIPITAL, EegSegment
from .synth import LED_LEFT_HZ, LED_RIGHT_HZ, N_HARMONICS
from .wavelets.denoise import wp_denoise
from .wavelets.packet import wp_decompose, wp_reconstruct_node

STIMULI = (LED_LEFT_HZ, LED_RIGHT_HZ)
FEATURE_DIM = len(OCCIPITAL) * N_HARMONICS * len(STIMULI)
WINDOW_S = 4.0
WPD_WAVELET = "db7"
WPD_DEPTH = 6
# frequency-ordered node per harmonic: band [i, i+1] * fs/128 Hz
HARMONIC_NODES = (1, 3, 5)

FEATURE_LABELS = tuple(
    f"{el}_h{h}_{int(f)}Hz"
    for el in OCCIPITAL
    for h in range(1, N_HARMONICS + 1)
    for f in STIMULI
)


@dataclass(frozen=True)
class FeatureVector:
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != (FEATURE_DIM,):
            raise ValueError(f"expected {FEATURE_DIM} features, got {v.shape}")
        if np.any(v < -1e-12) or np.any(v > 1.0 + 1e-12):
            raise ValueError("feature values outside [0, 1]")
        object.__setattr__(self, "values", np.clip(v, 0.0, 1.0))

    def to_csv_row(self) -> str:
        return ",".join(repr(float(v)) for v in self.values)

    @classmethod
    def from_csv_row(cls, row: str) -> "FeatureVector":
        return cls(np.array([float(v) for v in row.split(",")]))


@lru_cache(maxsize=64)
def reference_basis(freq_hz: float, n_samples: int, fs: float) -> np.ndarray:
    """Orthonormal zero-mean basis of span{sin, cos} at freq_hz."""
    t = np.arange(n_samples) / fs
    cols = np.stack(
        [np.sin(2 * np.pi * freq_hz * t), np.cos(2 * np.pi * freq_hz * t)], axis=1
    )
    cols -= cols.mean(axis=0)
    q, _ = np.linalg.qr(cols)
    return q


def cca_coefficient(x: np.ndarray, freq_hz: float, fs: float = DEFAULT_FS) -> float:
    """Max correlation between x and the sin/cos span at freq_hz, in [0, 1].

    For a single channel this is the norm of the projection of the normalized
    (zero-mean) signal onto the reference plane, which equals the canonical
    correlation.
    """
    x = np.asarray(x, dtype=np.float64)
    x = x - x.mean()
    norm = np.linalg.norm(x)
    if norm == 0.0:
        return 0.0
    q = reference_basis(freq_hz, len(x), fs)
    r = np.linalg.norm(q.T @ (x / norm))
    return float(min(r, 1.0))


def extract_features(window: EegSegment) -> FeatureVector:
    """18-dimensional CCA feature vector for one 4 s window of O1/O2/Oz."""
    if set(window.channels) != set(OCCIPITAL):
        raise ValueError(f"expected channels {OCCIPITAL}, got {window.channels}")
    expected = int(round(WINDOW_S * window.fs))
    if window.n_samples != expected:
        raise ValueError(f"expected a {WINDOW_S} s window ({expected} samples)")
    values = []
    for label in OCCIPITAL:
        x = wp_denoise(window.channel(label))
        tree = wp_decompose(x, WPD_WAVELET, WPD_DEPTH)
        for harmonic, node in enumerate(HARMONIC_NODES, start=1):
            band = wp_reconstruct_node(tree, WPD_DEPTH, node)
            for f in STIMULI:
                values.append(cca_coefficient(band, harmonic * f, window.fs))
    return FeatureVector(np.array(values))
