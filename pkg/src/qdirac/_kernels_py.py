"""Pure-Python grid-scan kernel, used when the compiled one is unavailable."""
import math

import numpy as np

Q_TUNNELING, Q_VPLUS_SQ, Q_VMINUS_SQ, Q_ZONE = range(4)
Z_DIFFUSION, Z_EVANESCENT, Z_KLEIN, Z_BOUNDARY = range(4)

DEGENERACY_TOL = 1e-9


def _zone(E, V, w, tol):
    upper = math.hypot(w, V + 1.0)
    root_lo = math.hypot(w, V - 1.0)
    lower = root_lo if root_lo > 1.0 else 1.0
    if abs(E - upper) <= tol * upper:
        return Z_BOUNDARY
    if root_lo > 1.0 and abs(E - root_lo) <= tol * root_lo:
        return Z_BOUNDARY
    if E > upper:
        return Z_DIFFUSION
    if E > lower:
        return Z_EVANESCENT
    return Z_KLEIN


def _edge(E, a, w):
    h = math.hypot(w, a)
    return (E - h) * (E + h)


def _vel_sq(E, V, w, plus):
    p2 = (E - 1.0) * (E + 1.0)
    if V == 0.0:
        if plus or w != math.sqrt(p2):
            return p2 / (E * E)
        return math.nan
    r = math.hypot(E * V, math.sqrt(p2) * w)
    if w == 0.0:
        d = 0.0
    elif V != 0.0:
        d = p2 * w * w / (r + E * V)
    else:
        d = r
    if plus:
        qsq = (E + V) * (E + V) - 1.0 + w * w + 2.0 * d
        factor = 1.0 + (V * V + w * w) / r
    else:
        if w == 0.0:
            qsq = (E - V) * (E - V) - 1.0
        else:
            big = E * E - 1.0 + V * V + w * w + 2.0 * r
            qsq = _edge(E, V + 1.0, w) * _edge(E, V - 1.0, w) / big
        if qsq < 0.0:
            return -1.0
        s2 = V * V + w * w
        factor = (s2 * _edge(math.sqrt(p2), 0.0, math.sqrt(s2)) + V * V) / (r * (r + s2))
    if abs(factor) <= DEGENERACY_TOL:
        return math.nan
    v = math.sqrt(qsq) / (E * factor)
    return v * v


def _tunneling(V, w):
    upper = math.hypot(w, V + 1.0)
    root_lo = math.hypot(w, V - 1.0)
    return upper - (root_lo if root_lo > 1.0 else 1.0)


def scan_grid(v0s, w0s, E, m, quantity, tol):
    nx, ny = len(v0s), len(w0s)
    values = np.empty((nx, ny), dtype=np.float64)
    zones = np.empty((nx, ny), dtype=np.int8)
    Er = E / m
    for i in range(nx):
        V = float(v0s[i]) / m
        for j in range(ny):
            w = float(w0s[j]) / m
            z = _zone(Er, V, w, tol)
            zones[i, j] = z
            if quantity == Q_TUNNELING:
                values[i, j] = _tunneling(V, w) * m
            elif quantity == Q_VPLUS_SQ:
                values[i, j] = _vel_sq(Er, V, w, True)
            elif quantity == Q_VMINUS_SQ:
                values[i, j] = _vel_sq(Er, V, w, False)
            else:
                values[i, j] = z
    return values, zones
