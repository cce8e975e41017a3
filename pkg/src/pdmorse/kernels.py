"""Hot inner loop of the shooting integrator.

The coefficient arrays and per-step RK4 propagators are built with
vectorized numpy; the only sequential piece is the 2x2 propagation sweep
below.  It is compiled with numba when available, with a pure-Python
fallback selected automatically or forced via the environment flag
``PDMORSE_DISABLE_NUMBA=1``.  Both paths perform the identical arithmetic.
Run ``benchmarks/bench_shooting.py`` to compare them.
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit
    HAS_NUMBA = True
except ImportError:  # pragma: no cover - environment dependent
    njit = None
    HAS_NUMBA = False

_DISABLE = os.environ.get("PDMORSE_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")
USE_NUMBA = HAS_NUMBA and not _DISABLE

# Renormalization threshold; rescaling both components leaves nodes and
# log-derivatives unchanged while keeping the growing solution finite.
_RESCALE_LIMIT = 1e250


def sweep_python(m00, m01, m10, m11, phi0: float, dphi0: float):
    """Propagate (phi, phi') through per-step 2x2 matrices, counting nodes."""
    # list conversion: plain-float arithmetic is several times faster than
    # numpy scalar indexing in the interpreter
    a00 = m00.tolist()
    a01 = m01.tolist()
    a10 = m10.tolist()
    a11 = m11.tolist()
    phi = float(phi0)
    dphi = float(dphi0)
    nodes = 0
    for i in range(len(a00)):
        p = a00[i] * phi + a01[i] * dphi
        d = a10[i] * phi + a11[i] * dphi
        if (p < 0.0 and phi > 0.0) or (p > 0.0 and phi < 0.0):
            nodes += 1
        phi = p
        dphi = d
        if phi > _RESCALE_LIMIT or phi < -_RESCALE_LIMIT:
            phi *= 1e-250
            dphi *= 1e-250
    return phi, dphi, nodes


if HAS_NUMBA:
    @njit(cache=True)
    def _sweep_numba(a00, a01, a10, a11, phi0, dphi0):  # pragma: no cover - jitted
        phi = phi0
        dphi = dphi0
        nodes = 0
        for i in range(a00.shape[0]):
            p = a00[i] * phi + a01[i] * dphi
            d = a10[i] * phi + a11[i] * dphi
            if (p < 0.0 and phi > 0.0) or (p > 0.0 and phi < 0.0):
                nodes += 1
            phi = p
            dphi = d
            if phi > 1e250 or phi < -1e250:
                phi *= 1e-250
                dphi *= 1e-250
        return phi, dphi, nodes

    def sweep_numba(m00, m01, m10, m11, phi0: float, dphi0: float):
        return _sweep_numba(np.ascontiguousarray(m00), np.ascontiguousarray(m01),
                            np.ascontiguousarray(m10), np.ascontiguousarray(m11),
                            float(phi0), float(dphi0))
else:  # pragma: no cover - environment dependent
    sweep_numba = None


def sweep(m00, m01, m10, m11, phi0: float, dphi0: float):
    """Dispatch to the compiled sweep when enabled, else the Python fallback."""
    if USE_NUMBA:
        return sweep_numba(m00, m01, m10, m11, phi0, dphi0)
    return sweep_python(m00, m01, m10, m11, phi0, dphi0)


def rk4_propagators(q_nodes: np.ndarray, q_mids: np.ndarray, h: float):
    """Per-step RK4 propagator entries for the linear system phi'' = q(x) phi.

    For a linear ODE every RK4 step is a 2x2 matrix acting on (phi, phi');
    composing the stage operators vectorizes over all steps at once.
    q_nodes holds q at the sweep points (N,), q_mids at midpoints (N-1,);
    h is the signed step.  Returns four (N-1,) arrays.
    """
    qi = q_nodes[:-1]
    qm = q_mids
    qp = q_nodes[1:]
    n = qi.shape[0]
    a_i = np.zeros((n, 2, 2))
    a_i[:, 0, 1] = 1.0
    a_i[:, 1, 0] = qi
    a_m = np.zeros((n, 2, 2))
    a_m[:, 0, 1] = 1.0
    a_m[:, 1, 0] = qm
    a_p = np.zeros((n, 2, 2))
    a_p[:, 0, 1] = 1.0
    a_p[:, 1, 0] = qp
    ident = np.zeros((n, 2, 2))
    ident[:, 0, 0] = 1.0
    ident[:, 1, 1] = 1.0
    k1 = a_i
    k2 = a_m @ (ident + (h / 2.0) * k1)
    k3 = a_m @ (ident + (h / 2.0) * k2)
    k4 = a_p @ (ident + h * k3)
    m = ident + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return (np.ascontiguousarray(m[:, 0, 0]), np.ascontiguousarray(m[:, 0, 1]),
            np.ascontiguousarray(m[:, 1, 0]), np.ascontiguousarray(m[:, 1, 1]))
