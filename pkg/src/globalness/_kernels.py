"""Hot numeric kernels for the entangling-power search.

The multistart simplex search evaluates the output entanglement of a product
input many thousand times per call, which dominates the package's runtime.
The kernels below are compiled with numba when it is importable; setting
``GLOBALNESS_NO_NUMBA=1`` (or running without numba installed) selects the
identical pure-numpy code path.  ``benchmarks/bench_kernels.py`` compares the
two backends end to end.
"""

import math
import os

import numpy as np

try:
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag instead
    _HAVE_NUMBA = False

USE_NUMBA = _HAVE_NUMBA and os.environ.get("GLOBALNESS_NO_NUMBA", "0") != "1"
BACKEND = "numba" if USE_NUMBA else "numpy"

if USE_NUMBA:
    def _jit(f):
        return numba.njit(f, cache=True)
else:
    def _jit(f):
        return f


@_jit
def hypersphere_state(angles, dim):
    """Unit vector from 2(dim-1) real angles.

    Layout: dim-1 polar angles then dim-1 phases; amplitude 0 is kept real,
    which fixes the (physically irrelevant) global phase.
    """
    out = np.zeros(dim, dtype=np.complex128)
    n = dim - 1
    prod = 1.0
    for k in range(n):
        amp = prod * math.cos(angles[k])
        if k == 0:
            out[0] = amp
        else:
            ph = angles[n + k - 1]
            out[k] = amp * (math.cos(ph) + 1j * math.sin(ph))
        prod *= math.sin(angles[k])
    ph = angles[2 * n - 1]
    out[dim - 1] = prod * (math.cos(ph) + 1j * math.sin(ph))
    return out


@_jit
def cut_entropy(vec, left_dim):
    """Entanglement entropy (base 2) of a pure state across left:right."""
    right_dim = vec.shape[0] // left_dim
    m = vec.reshape(left_dim, right_dim)
    s = np.linalg.svd(m)[1]
    p = s * s
    total = p.sum()
    ent = 0.0
    for k in range(p.shape[0]):
        q = p[k] / total
        if q > 1e-12:
            ent -= q * math.log2(q)
    return ent


@_jit
def product_output_entropy(u_full, dim_a, dim_b, cut_left, x):
    """Entropy generated by u_full on the product input encoded by ``x``."""
    na = 2 * (dim_a - 1)
    a = hypersphere_state(x[:na], dim_a)
    b = hypersphere_state(x[na:], dim_b)
    psi = np.empty(dim_a * dim_b, dtype=np.complex128)
    for i in range(dim_a):
        base = i * dim_b
        for j in range(dim_b):
            psi[base + j] = a[i] * b[j]
    return cut_entropy(u_full @ psi, cut_left)


@_jit
def _simplex_maximize(u_full, dim_a, dim_b, cut_left, x0, step, xtol, max_iter):
    """Nelder-Mead ascent on the product-input entropy from one start point.

    Returns (best entropy, best angles).  Standard reflection/expansion/
    contraction/shrink coefficients; terminates when the simplex collapses
    below ``xtol`` in every coordinate or after ``max_iter`` iterations.
    """
    n = x0.shape[0]
    pts = np.empty((n + 1, n))
    vals = np.empty(n + 1)
    for i in range(n + 1):
        for j in range(n):
            pts[i, j] = x0[j]
        if i > 0:
            pts[i, i - 1] += step
        vals[i] = -product_output_entropy(u_full, dim_a, dim_b, cut_left, pts[i])

    order = np.empty(n + 1, dtype=np.int64)
    for _ in range(max_iter):
        srt = np.argsort(vals)
        for i in range(n + 1):
            order[i] = srt[i]
        new_pts = np.empty((n + 1, n))
        new_vals = np.empty(n + 1)
        for i in range(n + 1):
            new_vals[i] = vals[order[i]]
            for j in range(n):
                new_pts[i, j] = pts[order[i], j]
        pts, vals = new_pts, new_vals

        spread = 0.0
        for i in range(1, n + 1):
            for j in range(n):
                dev = abs(pts[i, j] - pts[0, j])
                if dev > spread:
                    spread = dev
        if spread < xtol:
            break

        centroid = np.zeros(n)
        for i in range(n):
            for j in range(n):
                centroid[j] += pts[i, j]
        centroid /= n

        reflected = 2.0 * centroid - pts[n]
        fr = -product_output_entropy(u_full, dim_a, dim_b, cut_left, reflected)
        if fr < vals[0]:
            expanded = centroid + 2.0 * (reflected - centroid)
            fe = -product_output_entropy(u_full, dim_a, dim_b, cut_left, expanded)
            if fe < fr:
                pts[n], vals[n] = expanded, fe
            else:
                pts[n], vals[n] = reflected, fr
        elif fr < vals[n - 1]:
            pts[n], vals[n] = reflected, fr
        else:
            contracted = centroid + 0.5 * (pts[n] - centroid)
            fc = -product_output_entropy(u_full, dim_a, dim_b, cut_left, contracted)
            if fc < vals[n]:
                pts[n], vals[n] = contracted, fc
            else:
                for i in range(1, n + 1):
                    for j in range(n):
                        pts[i, j] = pts[0, j] + 0.5 * (pts[i, j] - pts[0, j])
                    vals[i] = -product_output_entropy(u_full, dim_a, dim_b, cut_left, pts[i])

    best = int(np.argmin(vals))
    return -vals[best], pts[best].copy()


@_jit
def search_best_product_input(u_full, dim_a, dim_b, cut_left, starts, step, xtol, max_iter):
    """Multistart simplex search; returns (best entropy, argmax angles,
    per-restart converged entropies)."""
    restarts = starts.shape[0]
    n = starts.shape[1]
    best_val = -1.0
    best_x = np.zeros(n)
    per_restart = np.empty(restarts)
    for r in range(restarts):
        val, x = _simplex_maximize(
            u_full, dim_a, dim_b, cut_left, starts[r], step, xtol, max_iter
        )
        per_restart[r] = val
        if val > best_val:
            best_val = val
            best_x = x
    return best_val, best_x, per_restart
