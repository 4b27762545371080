"""
Fiber and counting bounds for S4 fields, evaluated with upward rounding
"""

import math
from typing import Tuple

import mpmath

from arith.factor import omega
from arith.shapes import ConductorShape, DiscriminantShape

BOUND_DPS = 30


def _round_up(value: mpmath.mpf) -> float:
    """A float >= value: one ulp above the nearest double."""
    return math.nextafter(float(value), math.inf)


def _log_squared(x: int) -> mpmath.mpf:
    return mpmath.log(mpmath.mpf(x)) ** 2


def eq_number_bound(rk3_k: int, rk2_M: int, omega_b: int, omega_c: int) -> Tuple[int, int, int]:
    """
    Bound on the number of S4 fields with a given triple.

    Returns:
        (r1, r2, 3 (3^r1 - 1)/2 (2^r2 - 1)) with r1 = rk3_k + omega_b + 2
        and r2 = rk2_M + 3 omega_c + 6
    """
    for name, value in (('rk3_k', rk3_k), ('rk2_M', rk2_M), ('omega_b', omega_b), ('omega_c', omega_c)):
        if value < 0:
            raise ValueError(f"{name} must be nonnegative, got {value}")
    r1 = rk3_k + omega_b + 2
    r2 = rk2_M + 3 * omega_c + 6
    return r1, r2, 3 * ((3 ** r1 - 1) // 2) * (2 ** r2 - 1)


def eq_number_closed_form(rk3_k: int, rk_M: int, omega_b: int, omega_c: int) -> int:
    """(3/2) 9 2^6 3^rk3_k 2^rk_M 3^omega_b 8^omega_c, an upper bound for eq_number_bound."""
    return 864 * 3 ** rk3_k * 2 ** rk_M * 3 ** omega_b * 8 ** omega_c


def corollary_fiber_bound(a: int, b: int, c: int, C: float = 1.0) -> float:
    """
    864 C sqrt(a) b log(a b^2)^2 9^omega(b) 8^omega(c).

    Raises:
        ValueError: if a b^2 < 3 or C <= 0
    """
    if C <= 0:
        raise ValueError(f"constant must be positive, got {C}")
    if a * b * b < 3:
        raise ValueError(f"a b^2 = {a * b * b} < 3: the logarithm is not positive enough")
    with mpmath.workdps(BOUND_DPS):
        value = (864 * mpmath.mpf(C) * mpmath.sqrt(a) * b * _log_squared(a * b * b)
                 * mpmath.mpf(9) ** omega(b) * mpmath.mpf(8) ** omega(c))
        return _round_up(value)


def discriminant_count_bound(shape: DiscriminantShape, C_tilde: float = 1.0) -> float:
    """C~ sqrt(d1 d3) d2 log(d1 d3 d2^2)^2 18^omega(d2) 8^omega(d3)."""
    if C_tilde <= 0:
        raise ValueError(f"constant must be positive, got {C_tilde}")
    argument = shape.d1 * shape.d3 * shape.d2 ** 2
    if argument < 3:
        raise ValueError(f"d1 d3 d2^2 = {argument} < 3")
    with mpmath.workdps(BOUND_DPS):
        value = (mpmath.mpf(C_tilde) * mpmath.sqrt(shape.d1 * shape.d3) * shape.d2 * _log_squared(argument)
                 * mpmath.mpf(18) ** omega(shape.d2) * mpmath.mpf(8) ** omega(shape.d3))
        return _round_up(value)


def conductor_count_bound(shape: ConductorShape, C: float = 1.0) -> float:
    """C 54^omega(N) N11 sqrt(N12) N2 log(N)^2."""
    if C <= 0:
        raise ValueError(f"constant must be positive, got {C}")
    N = shape.reconstruct()
    if N < 3:
        raise ValueError(f"conductor {N} < 3")
    with mpmath.workdps(BOUND_DPS):
        value = (mpmath.mpf(C) * mpmath.mpf(54) ** shape.omega() * shape.N11 * mpmath.sqrt(shape.N12)
                 * shape.N2 * _log_squared(N))
        return _round_up(value)


def rank_relation_ratio(rk3_k: int, rk2_M: int, a: int, b: int) -> float:
    """3^rk3_k 2^rk2_M / (sqrt(a) b log(a b^2)^2 3^omega(b)), the empirical rank-relation constant."""
    if a * b * b < 3:
        raise ValueError(f"a b^2 = {a * b * b} < 3")
    with mpmath.workdps(BOUND_DPS):
        value = (mpmath.mpf(3) ** rk3_k * mpmath.mpf(2) ** rk2_M
                 / (mpmath.sqrt(a) * b * _log_squared(a * b * b) * mpmath.mpf(3) ** omega(b)))
        return _round_up(value)
