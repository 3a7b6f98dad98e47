"""Gaussian-process Bayesian optimization with expected improvement.

Maximizes a black-box objective over a box.  Squared-exponential kernel on
inputs normalized to the unit cube, standardized observations, and a small
jitter for observation noise.  Fully deterministic given the seed.
"""
from __future__ import annotations

import math

import numpy as np

EI_XI = 0.01
LENGTHSCALE = 0.2  # in unit-cube coordinates
NOISE_VAR = 1e-6
N_CANDIDATES = 2048


def _norm_cdf(z):
    return 0.5 * (1.0 + np.vectorize(math.erf)(z / math.sqrt(2.0)))


def _norm_pdf(z):
    return np.exp(-0.5 * z ** 2) / math.sqrt(2.0 * math.pi)


def _sq_exp(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d2 = np.sum((a[:, None, :] - b[None, :, :]) ** 2, axis=-1)
    return np.exp(-0.5 * d2 / LENGTHSCALE ** 2)


def latin_hypercube(n: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    """n space-filling points in the unit cube: one per stratum per dimension."""
    out = np.empty((n, dim))
    for d in range(dim):
        strata = (np.arange(n) + rng.uniform(0.0, 1.0, n)) / n
        out[:, d] = strata[rng.permutation(n)]
    return out


def expected_improvement(mu: np.ndarray, sd: np.ndarray, best: float) -> np.ndarray:
    sd = np.maximum(sd, 1e-12)
    z = (mu - best - EI_XI) / sd
    return sd * (z * _norm_cdf(z) + _norm_pdf(z))


def bayes_opt(objective, bounds, budget: int = 30, seed: int = 0,
              n_init: int = 5) -> tuple[np.ndarray, float]:
    """Return (argmax point, best observed value) after `budget` evaluations.

    Non-finite objective values are recorded as the worst value seen so the
    search continues away from them.
    """
    if budget < n_init:
        raise ValueError(f"budget must be >= {n_init}")
    bounds = np.asarray(bounds, dtype=np.float64)
    lo, hi = bounds[:, 0], bounds[:, 1]
    dim = len(bounds)
    rng = np.random.default_rng(seed)

    def denorm(u):
        return lo + u * (hi - lo)

    xs_u = list(latin_hypercube(n_init, dim, rng))
    ys: list[float] = []
    bad: list[int] = []
    for u in xs_u:
        v = float(objective(denorm(u)))
        if not np.isfinite(v):
            bad.append(len(ys))
            v = np.nan
        ys.append(v)

    def patched_ys():
        arr = np.array(ys, dtype=np.float64)
        finite = arr[np.isfinite(arr)]
        worst = finite.min() if len(finite) else 0.0
        arr[~np.isfinite(arr)] = worst - 1.0
        return arr

    while len(ys) < budget:
        x_arr = np.array(xs_u)
        y_arr = patched_ys()
        y_mean, y_std = y_arr.mean(), y_arr.std()
        if y_std < 1e-12:
            y_std = 1.0
        yz = (y_arr - y_mean) / y_std
        k = _sq_exp(x_arr, x_arr) + NOISE_VAR * np.eye(len(x_arr))
        chol = np.linalg.cholesky(k + 1e-10 * np.eye(len(x_arr)))
        alpha = np.linalg.solve(chol.T, np.linalg.solve(chol, yz))

        cand = rng.uniform(0.0, 1.0, (N_CANDIDATES, dim))
        # local refinement around the incumbent
        inc = x_arr[int(np.argmax(y_arr))]
        local = np.clip(inc + rng.normal(0.0, 0.05, (N_CANDIDATES // 8, dim)), 0.0, 1.0)
        cand = np.vstack([cand, local])

        kx = _sq_exp(cand, x_arr)
        mu = kx @ alpha
        v = np.linalg.solve(chol, kx.T)
        var = np.maximum(1.0 - np.sum(v ** 2, axis=0), 0.0)
        ei = expected_improvement(mu, np.sqrt(var), float(yz.max()))
        u_next = cand[int(np.argmax(ei))]

        val = float(objective(denorm(u_next)))
        xs_u.append(u_next)
        if not np.isfinite(val):
            bad.append(len(ys))
            val = np.nan
        ys.append(val)

    y_final = patched_ys()
    best_idx = int(np.argmax(y_final))
    return denorm(np.array(xs_u[best_idx])), float(y_final[best_idx])
