from .filters import WaveletFilter, get_filter  # noqa: F401
from .packet import (  # noqa: F401
    DecompositionError,
    WpTree,
    freq_to_natural,
    natural_to_freq,
    subband_edges_hz,
    wp_decompose,
    wp_reconstruct,
    wp_reconstruct_node,
)
from .denoise import sure_threshold, wp_denoise  # noqa: F401
