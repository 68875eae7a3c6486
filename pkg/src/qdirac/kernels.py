"""Grid-scan kernel selection.

The compiled ``_kernels`` extension is used when importable; otherwise, or
when ``QDIRAC_PURE_PYTHON`` is set, the pure-Python twin takes over.  Both
expose ``scan_grid(v0s, w0s, E, m, quantity, tol)``.
"""
import os

import numpy as np

from . import _kernels_py

QUANTITIES = ("tunneling_range", "v_plus_sq", "v_minus_sq", "zone")
ZONE_LABELS = ("diffusion", "evanescent", "klein", "boundary")

if os.environ.get("QDIRAC_PURE_PYTHON"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    _BACKENDS["cython"] = _compiled


def available_backends():
    return tuple(_BACKENDS)


def scan_grid(v0s, w0s, E, m, quantity, tol=1e-9, backend=None):
    """Evaluate ``quantity`` over every ``(V0, |W0|)`` pair.

    ``v0s``, ``w0s``, ``E`` and ``m`` are in absolute energy units.  Returns
    ``(values, zones)`` arrays of shape ``(len(v0s), len(w0s))``; zone codes
    index :data:`ZONE_LABELS`.
    """
    if isinstance(quantity, str):
        quantity = QUANTITIES.index(quantity)
    mod = _BACKENDS[backend or BACKEND]
    v0s = np.ascontiguousarray(v0s, dtype=np.float64)
    w0s = np.ascontiguousarray(w0s, dtype=np.float64)
    return mod.scan_grid(v0s, w0s, float(E), float(m), int(quantity), float(tol))
