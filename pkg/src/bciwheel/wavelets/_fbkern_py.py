"""Pure-numpy two-channel filterbank kernels.

Fallback used when the compiled extension is unavailable (see backend.py).
Conventions match the compiled module exactly: analysis extends the input by
L-1 samples per side (half-point symmetric reflection, or periodic wrap),
convolves, and keeps the odd-indexed outputs.
"""
import numpy as np


def analysis_pair(x, lo, hi, periodic=False):
    x = np.asarray(x, dtype=np.float64)
    n, L = len(x), len(lo)
    p = L - 1
    if periodic:
        xe = np.concatenate([x[-p:], x, x[:p]])
        m = n // 2
    else:
        xe = np.concatenate([x[:p][::-1], x, x[-p:][::-1]])
        m = (n + L - 1) // 2
    a = np.convolve(xe, lo, mode="valid")[1::2][:m]
    d = np.convolve(xe, hi, mode="valid")[1::2][:m]
    return a, d


def synthesis_pair(a, d, rec_lo, rec_hi, out_len, periodic=False):
    a = np.asarray(a, dtype=np.float64)
    d = np.asarray(d, dtype=np.float64)
    L = len(rec_lo)
    ua = np.zeros(2 * len(a))
    ud = np.zeros(2 * len(d))
    ua[::2] = a
    ud[::2] = d
    y_full = np.convolve(ua, rec_lo) + np.convolve(ud, rec_hi)
    if periodic:
        y = np.zeros(out_len)
        idx = (np.arange(len(y_full)) - (L - 2)) % out_len
        np.add.at(y, idx, y_full)
        return y
    return y_full[L - 2 : L - 2 + out_len].copy()
