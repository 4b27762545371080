"""
Short vectors of a positive definite quadratic form (Fincke-Pohst)
"""

from math import ceil, floor, sqrt
from typing import Iterator, List, Tuple

import numpy as np

REL_TOL = 1e-9


def _sign_normalized(x: List[int]) -> bool:
    """Keep one of +-x: the last nonzero coordinate must be positive."""
    for c in reversed(x):
        if c:
            return c > 0
    return False


def short_vectors(gram: np.ndarray, bound: float) -> Iterator[Tuple[Tuple[int, ...], float]]:
    """
    Enumerate nonzero integer vectors x with x^T G x <= bound, up to sign.

    The form is written as sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2 from
    the Cholesky factor and enumerated from the last coordinate down.

    Args:
        gram: Symmetric positive definite matrix
        bound: Upper bound on the form value

    Yields:
        (vector, value) pairs
    """
    G = np.asarray(gram, dtype=float)
    n = G.shape[0]
    R = np.linalg.cholesky(G).T
    d = np.diag(R)
    q_diag = d ** 2
    q = R / d[:, None]
    limit = bound * (1 + REL_TOL) + REL_TOL
    x = [0] * n

    def recurse(i: int, remaining: float) -> Iterator[Tuple[Tuple[int, ...], float]]:
        center = -sum(q[i, j] * x[j] for j in range(i + 1, n))
        radius = sqrt(max(remaining, 0.0) / q_diag[i])
        for xi in range(ceil(center - radius - REL_TOL), floor(center + radius + REL_TOL) + 1):
            used = q_diag[i] * (xi - center) ** 2
            if used > remaining + REL_TOL * max(1.0, limit):
                continue
            x[i] = xi
            if i == 0:
                if _sign_normalized(x):
                    vec = tuple(x)
                    value = float(np.asarray(vec, dtype=float) @ G @ np.asarray(vec, dtype=float))
                    if value <= limit:
                        yield vec, value
            else:
                yield from recurse(i - 1, remaining - used)
        x[i] = 0

    yield from recurse(n - 1, limit)
