"""Dense symmetric linear solves used by Newton-family directions."""

from __future__ import annotations

import numpy as np
from scipy.linalg import get_lapack_funcs

from optlab.errors import SingularMatrix

__all__ = ["solve_symmetric"]


def solve_symmetric(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve a @ x = b for symmetric (possibly indefinite) a via a pivoted
    Bunch-Kaufman factorization. Raises SingularMatrix when the factorization
    detects singularity or the solution is non-finite."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    sysv, = get_lapack_funcs(("sysv",), (a, b))
    _, _, x, info = sysv(a, b)
    if info > 0:
        raise SingularMatrix(f"symmetric factorization failed (info={info})")
    if info < 0:
        raise ValueError(f"illegal argument to symmetric solve (info={info})")
    if not np.all(np.isfinite(x)):
        raise SingularMatrix("symmetric solve produced non-finite entries")
    return x
