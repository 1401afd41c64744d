"""Coincidence counting kernels: compiled extension when built, numpy otherwise.

Both implementations run the same arithmetic in the same order and return
identical integer maps, so which one ends up selected is a speed question
only.  BIPHOTON_KERNEL=python or =cython forces a choice; asking for the
extension when it is not built is an error rather than a silent fallback.
"""

import os

import numpy as np

from biphoton._kernels import _sweep_py

try:
    from biphoton._kernels import _sweep_cy

    HAVE_EXTENSION = True
except ImportError:
    _sweep_cy = None
    HAVE_EXTENSION = False

__all__ = [
    "HAVE_EXTENSION",
    "available_backends",
    "default_backend",
    "count_coincidences",
]

_IMPLS = {"python": _sweep_py.count_coincidences}
if HAVE_EXTENSION:
    _IMPLS["cython"] = _sweep_cy.count_coincidences


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_IMPLS))


def default_backend() -> str:
    forced = os.environ.get("BIPHOTON_KERNEL")
    if forced:
        if forced not in _IMPLS:
            raise RuntimeError(
                f"BIPHOTON_KERNEL={forced!r} is not available; "
                f"built backends: {', '.join(available_backends())}"
            )
        return forced
    return "cython" if HAVE_EXTENSION else "python"


def count_coincidences(
    u_a, v_a, u_b, v_b, radius, start1, step1, n1, start2, step2, n2, backend=None
):
    """Dispatch to the selected backend; see _sweep_py.count_coincidences."""
    if backend is None:
        backend = default_backend()
    try:
        impl = _IMPLS[backend]
    except KeyError:
        raise RuntimeError(
            f"unknown kernel backend {backend!r}; "
            f"built backends: {', '.join(available_backends())}"
        ) from None
    args = [np.ascontiguousarray(a, dtype=np.float64) for a in (u_a, v_a, u_b, v_b)]
    return impl(
        *args,
        float(radius),
        float(start1),
        float(step1),
        int(n1),
        float(start2),
        float(step2),
        int(n2),
    )
