from __future__ import annotations

import numpy as np

# Cap on the size of one difference block, in elements (~64 MB of int64).
_BLOCK = 1 << 23


def shift_overlaps(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    """``out[w] = |(A + w) ∩ B|`` over Z_n for every shift ``w``.

    Counts each pair ``(s, t)`` in ``A x B`` with ``t - s = w (mod n)``, so the
    cost is ``|A| * |B|`` regardless of ``n``.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = np.zeros(n, dtype=np.int64)
    if a.size == 0 or b.size == 0:
        return out
    rows = max(1, _BLOCK // b.size)
    for start in range(0, a.size, rows):
        diff = (b[None, :] - a[start:start + rows, None]) % n
        out += np.bincount(diff.ravel(), minlength=n)
    return out
