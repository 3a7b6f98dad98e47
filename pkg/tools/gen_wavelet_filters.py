"""Generate orthogonal wavelet filter tables (Daubechies / least-asymmetric).

Spectral factorization of the Daubechies half-band polynomial.  Roots of the
degree 2N-2 factor come in reciprocal pairs; picking all roots inside the unit
circle gives the minimum-phase (db) filter, while searching reciprocal-group
in/out assignments for the flattest phase gives the least-asymmetric (sym)
filter.  Output is meant to be pasted into the package as frozen constants.
"""
import itertools
import math

import numpy as np


def halfband_roots(n_moments):
    n = n_moments
    c = [math.comb(n - 1 + k, k) for k in range(n)]
    # q(z) = z^(n-1) * sum_k c_k * ((2 - z - 1/z)/4)^k
    base = np.array([-0.25, 0.5, -0.25])  # (2 - z - 1/z)/4 * z, coeffs of [z^0,z^1,z^2]
    q = np.zeros(2 * n - 1)
    term = np.array([1.0])
    for k in range(n):
        padded = np.zeros(2 * n - 1)
        # term has degree 2k in z after multiplying by z^k; shift so total z^(n-1) factor
        shift = n - 1 - k
        padded[shift:shift + len(term)] = term
        q += c[k] * padded
        term = np.convolve(term, base)
    roots = np.roots(q[::-1])  # np.roots wants highest degree first
    return q, roots


def polish(q, r, iters=50):
    # Newton refinement in complex128 on the polynomial q (ascending coeffs)
    p = np.polynomial.Polynomial(q)
    dp = p.deriv()
    for _ in range(iters):
        f = p(r)
        d = dp(r)
        if d == 0:
            break
        step = f / d
        r = r - step
        if abs(step) < 1e-16 * max(1.0, abs(r)):
            break
    return r


def filter_from_roots(selected, n_moments):
    poly = np.array([1.0 + 0j])
    for r in selected:
        poly = np.convolve(poly, np.array([-r, 1.0]))
    for _ in range(n_moments):
        poly = np.convolve(poly, np.array([0.5, 0.5]))
    h = poly.real
    h = h * (math.sqrt(2.0) / h.sum())
    return h


def group_reciprocal(roots):
    """Group roots into reciprocal in/out sets (conjugate-closed)."""
    inside = [r for r in roots if abs(r) < 1.0]
    groups = []
    used = np.zeros(len(inside), bool)
    for i, r in enumerate(inside):
        if used[i]:
            continue
        if abs(r.imag) < 1e-9:
            groups.append(([complex(r.real, 0.0)], None))
            used[i] = True
        else:
            j = int(np.argmin([abs(x - r.conjugate()) if not used[k] and k != i else 1e9
                               for k, x in enumerate(inside)]))
            groups.append(([r, r.conjugate()], None))
            used[i] = True
            used[j] = True
    # pair each inside group with its reciprocal (outside) twin
    out = []
    for g, _ in groups:
        recip = [1.0 / r for r in g]
        out.append((g, recip))
    return out


def phase_nonlinearity(h):
    w = np.linspace(1e-3, np.pi - 1e-3, 512)
    H = np.array([np.sum(h * np.exp(-1j * w_ * np.arange(len(h)))) for w_ in w])
    ph = np.unwrap(np.angle(H))
    A = np.vstack([w, np.ones_like(w)]).T
    coef, *_ = np.linalg.lstsq(A, ph, rcond=None)
    resid = ph - A @ coef
    return float(np.max(np.abs(resid)))


def make_db(n):
    q, roots = halfband_roots(n)
    roots = [polish(q, r) for r in roots]
    inside = [r for r in roots if abs(r) < 1.0]
    assert len(inside) == n - 1, (n, len(inside))
    return filter_from_roots(inside, n)


def make_sym(n):
    q, roots = halfband_roots(n)
    roots = [polish(q, r) for r in roots]
    groups = group_reciprocal(roots)
    best = None
    for choice in itertools.product([0, 1], repeat=len(groups)):
        sel = []
        for pick, (ins, outs) in zip(choice, groups):
            sel.extend(ins if pick == 0 else outs)
        h = filter_from_roots(sel, n)
        score = phase_nonlinearity(h)
        if best is None or score < best[0]:
            best = (score, h)
    return best[1]


def check(h, n):
    errs = {}
    errs["sum"] = abs(h.sum() - math.sqrt(2))
    errs["energy"] = abs((h ** 2).sum() - 1.0)
    shifts = max(abs(np.dot(h[2 * k:], h[:-2 * k])) for k in range(1, len(h) // 2))
    errs["orth"] = shifts
    g = h[::-1] * (-1) ** np.arange(len(h))  # qmf highpass
    moments = max(abs(np.dot(g, np.arange(len(g), dtype=float) ** m)) for m in range(n))
    errs["vanish"] = moments
    return errs


if __name__ == "__main__":
    for name, maker, n in [("db7", make_db, 7), ("sym9", make_sym, 9)]:
        h = maker(n)
        print(f"{name}: len={len(h)}  checks={check(h, n)}")
        print(f"{name.upper()}_LOWPASS = (")
        for v in h:
            print(f"    {v!r},")
        print(")")
