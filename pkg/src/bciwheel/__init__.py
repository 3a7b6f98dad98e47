"""bciwheel: hybrid SSVEP + eye-blink BCI wheelchair decoder and simulator."""

__version__ = "0.1.0"

from .wavelets.backend import BACKEND as WAVELET_BACKEND  # noqa: F401
