"""Vectorized numpy twin of the compiled counting kernel.

Must perform the same float operations in the same order as _sweep_cy so both
backends return identical integer maps; change them together.
"""

import numpy as np


def count_coincidences(u_a, v_a, u_b, v_b, radius, start1, step1, n1, start2, step2, n2):
    """Coincidence counts over all displacement cells for a batch of events.

    u_a, v_a: per-event residuals of the detector scanned along axis 1
              (u along the scanned direction, v along the fixed one);
    u_b, v_b: the same for the detector scanned along axis 2.
    Cell (i, j) covers displacements (start1 + i * step1, start2 + j * step2).
    An event lands in cell (i, j) iff (u - o)^2 <= radius^2 - v^2 holds for
    both detectors, a pair of closed index intervals: a rectangle, applied to
    a difference array and integrated at the end.

    Returns an int64 array of shape (n1, n2).
    """
    r2 = radius * radius
    m2a = r2 - v_a * v_a
    m2b = r2 - v_b * v_b
    ok = (m2a >= 0.0) & (m2b >= 0.0)
    ua = u_a[ok]
    ub = u_b[ok]
    wa = np.sqrt(m2a[ok])
    wb = np.sqrt(m2b[ok])

    i0 = np.ceil((ua - wa - start1) / step1)
    i1 = np.floor((ua + wa - start1) / step1)
    j0 = np.ceil((ub - wb - start2) / step2)
    j1 = np.floor((ub + wb - start2) / step2)
    i0 = np.maximum(i0, 0.0)
    j0 = np.maximum(j0, 0.0)
    i1 = np.minimum(i1, n1 - 1.0)
    j1 = np.minimum(j1, n2 - 1.0)
    keep = (i0 <= i1) & (j0 <= j1)
    i0 = i0[keep].astype(np.int64)
    i1 = i1[keep].astype(np.int64)
    j0 = j0[keep].astype(np.int64)
    j1 = j1[keep].astype(np.int64)

    diff = np.zeros((n1 + 1, n2 + 1), dtype=np.int64)
    np.add.at(diff, (i0, j0), 1)
    np.add.at(diff, (i0, j1 + 1), -1)
    np.add.at(diff, (i1 + 1, j0), -1)
    np.add.at(diff, (i1 + 1, j1 + 1), 1)
    return diff.cumsum(axis=0).cumsum(axis=1)[:n1, :n2]
