"""Wavelet packet trees: full decomposition, node and whole-tree synthesis.

Node addressing: internally nodes live in natural (filterbank) order; the
public reconstruction API takes frequency-ordered (sequency) indices, where
band i at level l spans [i, i+1] * fs / 2^(l+1).  The two orderings are
related by the binary-reflected Gray code.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .backend import analysis_pair, synthesis_pair
from .filters import WaveletFilter, get_filter


class DecompositionError(ValueError):
    pass


def freq_to_natural(freq_index: int) -> int:
    """Gray-code permutation: sequency position -> natural filterbank index."""
    return freq_index ^ (freq_index >> 1)


def natural_to_freq(natural_index: int) -> int:
    f = 0
    while natural_index:
        f ^= natural_index
        natural_index >>= 1
    return f


@dataclass
class WpTree:
    """Full wavelet packet tree of a single-channel signal."""

    filter: WaveletFilter
    depth: int
    input_len: int
    periodic: bool = False
    nodes: dict[tuple[int, int], np.ndarray] = field(default_factory=dict)
    level_lens: list[int] = field(default_factory=list)

    def node(self, level: int, natural_index: int) -> np.ndarray:
        return self.nodes[(level, natural_index)]

    def leaves(self):
        for i in range(2 ** self.depth):
            yield (self.depth, i), self.nodes[(self.depth, i)]


def _resolve(filt) -> WaveletFilter:
    return get_filter(filt) if isinstance(filt, str) else filt


def wp_decompose(x, filt, depth: int, periodic: bool = False) -> WpTree:
    """Expand both branches recursively down to `depth`."""
    x = np.asarray(x, dtype=np.float64)
    filt = _resolve(filt)
    L = len(filt)
    if x.ndim != 1:
        raise DecompositionError("expected a single-channel signal")
    if len(x) < L:
        raise DecompositionError(f"signal length {len(x)} < filter length {L}")
    if depth < 1:
        raise DecompositionError("depth must be >= 1")

    tree = WpTree(filter=filt, depth=depth, input_len=len(x), periodic=periodic)
    tree.nodes[(0, 0)] = x
    tree.level_lens = [len(x)]
    for level in range(depth):
        cur_len = tree.level_lens[level]
        if cur_len < L:
            raise DecompositionError(
                f"depth {depth} too deep: level-{level} nodes have only {cur_len} samples"
            )
        if periodic and cur_len % 2:
            raise DecompositionError("periodic mode requires even node lengths")
        for i in range(2 ** level):
            a, d = analysis_pair(
                tree.nodes[(level, i)], filt.lowpass, filt.highpass, periodic
            )
            tree.nodes[(level + 1, 2 * i)] = a
            tree.nodes[(level + 1, 2 * i + 1)] = d
        tree.level_lens.append(len(tree.nodes[(level + 1, 0)]))
    return tree


def wp_reconstruct(tree: WpTree) -> np.ndarray:
    """Invert the whole tree from its leaves."""
    cur = {i: tree.nodes[(tree.depth, i)] for i in range(2 ** tree.depth)}
    filt = tree.filter
    for level in range(tree.depth, 0, -1):
        out_len = tree.level_lens[level - 1]
        cur = {
            i: synthesis_pair(
                cur[2 * i], cur[2 * i + 1],
                filt.rec_lowpass, filt.rec_highpass, out_len, tree.periodic,
            )
            for i in range(2 ** (level - 1))
        }
    return cur[0]


def wp_reconstruct_node(tree: WpTree, level: int, freq_index: int) -> np.ndarray:
    """Signal of original length containing only the given subband."""
    if not 1 <= level <= tree.depth:
        raise DecompositionError(f"level {level} outside tree of depth {tree.depth}")
    if not 0 <= freq_index < 2 ** level:
        raise DecompositionError(f"freq_index {freq_index} out of range at level {level}")
    natural = freq_to_natural(freq_index)
    cur = tree.nodes[(level, natural)]
    filt = tree.filter
    for lvl in range(level, 0, -1):
        out_len = tree.level_lens[lvl - 1]
        zeros = np.zeros_like(cur)
        if natural % 2 == 0:
            cur = synthesis_pair(cur, zeros, filt.rec_lowpass, filt.rec_highpass,
                                 out_len, tree.periodic)
        else:
            cur = synthesis_pair(zeros, cur, filt.rec_lowpass, filt.rec_highpass,
                                 out_len, tree.periodic)
        natural //= 2
    return cur


def subband_edges_hz(level: int, freq_index: int, fs: float) -> tuple[float, float]:
    width = fs / 2.0 / 2 ** level
    return freq_index * width, (freq_index + 1) * width
