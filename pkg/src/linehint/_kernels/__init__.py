"""Kernel backend selection.

The compiled extension is preferred when it imported cleanly; the numpy
fallback is always available. Set LINEHINT_KERNELS=python or
LINEHINT_KERNELS=native to force a choice (forcing native raises if the
extension is missing, so benchmarks fail loudly instead of silently
comparing python with python).
"""

import os

from . import numpy_backend

_requested = os.environ.get("LINEHINT_KERNELS", "").strip().lower()

if _requested == "python":
    backend = numpy_backend
elif _requested == "native":
    from . import _native as backend  # type: ignore[no-redef]
else:
    try:
        from . import _native as backend  # type: ignore[no-redef]
    except ImportError:
        backend = numpy_backend

BACKEND_NAME: str = backend.NAME
METRIC_HUESAT: int = numpy_backend.METRIC_HUESAT
METRIC_EUCLID: int = numpy_backend.METRIC_EUCLID

pairwise = backend.pairwise
assign_points = backend.assign_points
best_medoid = backend.best_medoid
