"""Orthogonal wavelet filter tables.

Coefficients were obtained by spectral factorization of the Daubechies
half-band polynomial (see tools/gen_wavelet_filters.py) and are stored in
decomposition (analysis) orientation.  Both tables are checked against the
quadrature-mirror identities at import time, so a corrupted edit fails fast.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

DB7_LOWPASS = (
    0.07785205408500746,
    0.3965393194819094,
    0.7291320908462239,
    0.4697822874051935,
    -0.1439060039285508,
    -0.22403618499386593,
    0.07130921926682789,
    0.08061260915108122,
    -0.038029936935012824,
    -0.016574541630666486,
    0.012550998556099402,
    0.0004295779729213947,
    -0.0018016407040474273,
    0.000353713799974506,
)

SYM9_LOWPASS = (
    0.03807794736388226,
    0.24383467461261182,
    0.6048231236901492,
    0.6572880780513041,
    0.13319738582494137,
    -0.29327378327923725,
    -0.09684078322296046,
    0.14854074933814704,
    0.030725681479335524,
    -0.06763282906133775,
    0.00025094711483888293,
    0.02236166212368418,
    -0.004723204757753266,
    -0.004281503682464039,
    0.0018476468830567604,
    0.00023038576352317364,
    -0.0002519631889427745,
    3.9347320316285846e-05,
)

QMF_TOL = 1e-10


class FilterTableError(ValueError):
    """A wavelet coefficient table violates the orthogonality identities."""


@dataclass(frozen=True)
class WaveletFilter:
    """Analysis filter pair of an orthogonal two-channel filterbank."""

    name: str
    lowpass: np.ndarray
    highpass: np.ndarray = field(init=False)

    def __post_init__(self):
        lo = np.asarray(self.lowpass, dtype=np.float64)
        object.__setattr__(self, "lowpass", lo)
        hi = lo[::-1].copy()
        hi[1::2] *= -1.0  # quadrature mirror
        object.__setattr__(self, "highpass", hi)
        _validate(self.name, lo)

    def __len__(self) -> int:
        return len(self.lowpass)

    @property
    def rec_lowpass(self) -> np.ndarray:
        return self.lowpass[::-1]

    @property
    def rec_highpass(self) -> np.ndarray:
        return self.highpass[::-1]


def _validate(name: str, lo: np.ndarray) -> None:
    if abs(lo.sum() - math.sqrt(2.0)) > QMF_TOL:
        raise FilterTableError(f"{name}: sum(lowpass) != sqrt(2)")
    if abs(np.dot(lo, lo) - 1.0) > QMF_TOL:
        raise FilterTableError(f"{name}: lowpass is not unit energy")
    for k in range(1, len(lo) // 2):
        if abs(np.dot(lo[2 * k:], lo[: -2 * k])) > QMF_TOL:
            raise FilterTableError(f"{name}: lowpass not orthogonal to shift {2 * k}")


_TABLES = {"db7": DB7_LOWPASS, "sym9": SYM9_LOWPASS}
_CACHE: dict[str, WaveletFilter] = {}


def get_filter(name: str) -> WaveletFilter:
    """Return the named filter, building and validating it on first use."""
    try:
        table = _TABLES[name]
    except KeyError:
        raise FilterTableError(f"unknown wavelet {name!r}; have {sorted(_TABLES)}") from None
    if name not in _CACHE:
        _CACHE[name] = WaveletFilter(name, np.array(table))
    return _CACHE[name]
