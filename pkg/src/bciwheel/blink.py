"""Voluntary-blink detection on the frontal channels.

Normalized cross-correlation of the averaged Fp1/Fp2 trace against a stored
blink template; three peaks inside a 4 s span form the GO/STOP gesture.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
import scipy.signal

from .signals import DEFAULT_FS, FRONTAL, EegSegment
from .synth import raised_cosine

BAND_LO_HZ = 0.1
BAND_HI_HZ = 70.0
DEFAULT_CCV_THRESHOLD = 0.6
AMP_GATE_SIGMA = 5.0  # peak must clear this many robust sigmas of the trace
AMP_GATE_HALFWIDTH_S = 0.025
REFRACTORY_S = 0.2
GESTURE_WINDOW_S = 4.0
DEFAULT_TEMPLATE_WIDTH_S = 0.3


@dataclass(frozen=True)
class BlinkTemplate:
    """Unit-energy single-blink waveform used for matching."""

    waveform: np.ndarray
    fs: float
    peak_index: int

    def __post_init__(self):
        w = np.asarray(self.waveform, dtype=np.float64)
        w = w - w.mean()
        norm = np.linalg.norm(w)
        if norm == 0:
            raise ValueError("degenerate template")
        object.__setattr__(self, "waveform", w / norm)
        object.__setattr__(self, "peak_index", int(np.argmax(self.waveform)))

    @classmethod
    def ideal(cls, fs: float = DEFAULT_FS, width_s: float = DEFAULT_TEMPLATE_WIDTH_S):
        half = width_s / 2
        t = np.arange(-round(half * fs), round(half * fs) + 1) / fs
        return cls(raised_cosine(t, 0.0, 1.0, width_s), fs, 0)

    @classmethod
    def from_csv(cls, path, fs: float = DEFAULT_FS):
        with open(path, newline="") as fh:
            samples = [float(row[0]) for row in csv.reader(fh) if row]
        return cls(np.array(samples), fs, 0)


@dataclass(frozen=True)
class BlinkEvent:
    t: float
    ccv: float
    channel: str


def bandpass(seg: EegSegment, lo: float = BAND_LO_HZ, hi: float = BAND_HI_HZ) -> EegSegment:
    """Zero-phase Butterworth band-pass; output length equals input length."""
    if not 0 < lo < hi < seg.fs / 2:
        raise ValueError(f"invalid band edges ({lo}, {hi}) at fs={seg.fs}")
    sos = scipy.signal.butter(4, [lo, hi], btype="bandpass", fs=seg.fs, output="sos")
    data = scipy.signal.sosfiltfilt(sos, seg.data, axis=1)
    return EegSegment(seg.channels, seg.fs, data, seg.t0)


def _sliding_ncc(x: np.ndarray, template: np.ndarray) -> np.ndarray:
    """Correlation coefficient of every window of x against the template."""
    m = len(template)
    # template is zero-mean/unit-norm, so the numerator ignores window means
    num = np.correlate(x, template, mode="valid")
    csum = np.concatenate([[0.0], np.cumsum(x)])
    csum2 = np.concatenate([[0.0], np.cumsum(x ** 2)])
    wsum = csum[m:] - csum[:-m]
    wsum2 = csum2[m:] - csum2[:-m]
    var = np.maximum(wsum2 - wsum ** 2 / m, 0.0)
    denom = np.sqrt(var)
    out = np.zeros_like(num)
    ok = denom > 0
    out[ok] = num[ok] / denom[ok]
    return np.clip(out, -1.0, 1.0)


def detect_blinks(
    seg: EegSegment,
    template: BlinkTemplate | None = None,
    threshold: float = DEFAULT_CCV_THRESHOLD,
) -> list[BlinkEvent]:
    """Template matches on the averaged frontal trace, in time order."""
    if not 0 < threshold < 1:
        raise ValueError("threshold must be in (0, 1)")
    template = template or BlinkTemplate.ideal(seg.fs)
    trace = np.mean([seg.channel(c) for c in FRONTAL], axis=0)
    if len(trace) < len(template.waveform):
        raise ValueError("segment shorter than template")
    ncc = _sliding_ncc(trace, template.waveform)
    peaks, props = scipy.signal.find_peaks(
        ncc, height=threshold, distance=max(1, int(round(REFRACTORY_S * seg.fs)))
    )
    # shape match alone is not enough on 1/f noise: require the excursion at
    # the matched centre to dwarf the robust noise scale of the trace
    sigma = np.median(np.abs(trace - np.median(trace))) / 0.6745
    half = max(1, int(round(AMP_GATE_HALFWIDTH_S * seg.fs)))
    label = "+".join(FRONTAL)
    out = []
    for p, h in zip(peaks, props["peak_heights"]):
        c = p + template.peak_index
        local = np.max(np.abs(trace[max(0, c - half):c + half + 1]))
        if local >= AMP_GATE_SIGMA * sigma:
            out.append(BlinkEvent(seg.t0 + c / seg.fs, float(h), label))
    return out


def is_triple_blink(events: list[BlinkEvent], window: float = GESTURE_WINDOW_S) -> bool:
    """Exactly three blinks within the span; four or more is not the gesture."""
    if len(events) != 3:
        return False
    return events[-1].t - events[0].t <= window
