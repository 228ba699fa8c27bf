"""Deterministic derivative-free simplex minimizer (Nelder-Mead).

Coefficients: reflection 1, expansion 2, contraction 0.5, shrink 0.5.
Stops when the simplex diameter falls below ``rel_tol`` relative to the best
vertex, or after ``max_iter`` iterations.  Ties are broken by a stable sort,
so repeated runs from the same start are identical.
"""

from __future__ import annotations

import numpy as np

MAX_ITER = 2000
REL_TOL = 1e-8


def nelder_mead(fn, x0, scale, max_iter: int = MAX_ITER,
                rel_tol: float = REL_TOL) -> tuple[np.ndarray, float]:
    """Minimize ``fn`` from ``x0``; ``scale`` sets the initial vertex offsets.

    Returns (best point, best value).  The best value never exceeds fn(x0).
    """
    x0 = np.asarray(x0, dtype=np.float64)
    scale = np.asarray(scale, dtype=np.float64)
    dim = x0.shape[0]
    verts = np.tile(x0, (dim + 1, 1))
    for j in range(dim):
        verts[j + 1, j] += scale[j]
    vals = np.array([fn(verts[k]) for k in range(dim + 1)], dtype=np.float64)

    for _ in range(max_iter):
        order = np.argsort(vals, kind="stable")
        verts = verts[order]
        vals = vals[order]
        diameter = np.abs(verts[1:] - verts[0]).max()
        if diameter <= rel_tol * max(1.0, np.abs(verts[0]).max()):
            break
        centroid = verts[:-1].mean(axis=0)
        worst = verts[-1]
        reflected = centroid + 1.0 * (centroid - worst)
        f_reflected = fn(reflected)
        if f_reflected < vals[0]:
            expanded = centroid + 2.0 * (centroid - worst)
            f_expanded = fn(expanded)
            if f_expanded < f_reflected:
                verts[-1] = expanded
                vals[-1] = f_expanded
            else:
                verts[-1] = reflected
                vals[-1] = f_reflected
        elif f_reflected < vals[-2]:
            verts[-1] = reflected
            vals[-1] = f_reflected
        else:
            if f_reflected < vals[-1]:
                contracted = centroid + 0.5 * (reflected - centroid)
                f_contracted = fn(contracted)
                accepted = f_contracted <= f_reflected
            else:
                contracted = centroid + 0.5 * (worst - centroid)
                f_contracted = fn(contracted)
                accepted = f_contracted < vals[-1]
            if accepted:
                verts[-1] = contracted
                vals[-1] = f_contracted
            else:
                for j in range(1, dim + 1):
                    verts[j] = verts[0] + 0.5 * (verts[j] - verts[0])
                    vals[j] = fn(verts[j])

    order = np.argsort(vals, kind="stable")
    return verts[order[0]].copy(), float(vals[order[0]])
