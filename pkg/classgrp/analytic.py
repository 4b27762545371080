"""
Analytic class number data: truncated Euler products, exact class numbers
of quadratic fields and fundamental units of real quadratic fields
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Tuple

import mpmath
from sympy import primerange
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_from_int_poly, gf_gcd, gf_pow_mod, gf_sub
from sympy.solvers.diophantine.diophantine import diop_DN

from arith.factor import is_fundamental_discriminant, kronecker_symbol
from orders.maximal import MaximalOrder, splitting_type
from poly.intpoly import poly_discriminant

DEFAULT_EULER_BOUND = 10000
ANALYTIC_DPS = 30


def _roots_mod_p(descending, p: int) -> int:
    """Number of distinct roots in F_p, via gcd(x^p - x, f)."""
    fp = gf_from_int_poly(list(descending), p)
    xp = gf_pow_mod([ZZ(1), ZZ(0)], p, fp, p, ZZ)
    g = gf_gcd(gf_sub(xp, [ZZ(1), ZZ(0)], p, ZZ), fp, p, ZZ)
    return len(g) - 1


def _residue_degrees(order: MaximalOrder, p: int, poly_disc: int):
    f = order.defining_poly
    n = f.degree
    if poly_disc % p == 0:
        return [fi for _, fi in splitting_type(order, p).pairs]
    if n == 2:
        return [1, 1] if kronecker_symbol(order.field_disc_signed, p) == 1 else [2]
    if n == 3:
        roots = _roots_mod_p(f.descending(), p)
        return {3: [1, 1, 1], 1: [1, 2], 0: [3]}[roots]
    return [fi for _, fi in splitting_type(order, p).pairs]


@lru_cache(maxsize=4096)
def euler_product_residue(order: MaximalOrder, bound: int = DEFAULT_EULER_BOUND) -> mpmath.mpf:
    """
    Residue of the Dedekind zeta function at s = 1, approximated by
    prod_{p < bound} (1 - 1/p) / prod_{P | p} (1 - 1/N(P)).
    """
    poly_disc = poly_discriminant(order.defining_poly)
    with mpmath.workdps(ANALYTIC_DPS):
        product = mpmath.mpf(1)
        for p in primerange(2, bound):
            factor = 1 - mpmath.mpf(1) / p
            for fi in _residue_degrees(order, p, poly_disc):
                factor /= 1 - mpmath.mpf(p) ** (-fi)
            product *= factor
        return product


def hR_estimate(order: MaximalOrder, residue: mpmath.mpf, roots_of_unity: int = 2) -> mpmath.mpf:
    """h R from the class number formula: Res w sqrt|d| / (2^r1 (2 pi)^r2)."""
    r1, r2 = order.signature
    with mpmath.workdps(ANALYTIC_DPS):
        return (residue * roots_of_unity * mpmath.sqrt(order.field_disc_abs)
                / (mpmath.mpf(2) ** r1 * (2 * mpmath.pi) ** r2))


def minkowski_bound(degree: int, r2: int, field_disc_abs: int) -> float:
    """n!/n^n (4/pi)^r2 sqrt|d|."""
    with mpmath.workdps(ANALYTIC_DPS):
        value = (mpmath.mpf(factorial(degree)) / degree ** degree
                 * (4 / mpmath.pi) ** r2 * mpmath.sqrt(field_disc_abs))
        return float(value)


def _require_fundamental(D: int) -> None:
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant")


def roots_of_unity_count(D: int) -> int:
    return {-3: 6, -4: 4}.get(D, 2)


@lru_cache(maxsize=4096)
def imaginary_class_number(D: int) -> int:
    """h(D) = -(w / 2|D|) sum_{a=1}^{|D|-1} (D/a) a for D < 0."""
    _require_fundamental(D)
    if D > 0:
        raise ValueError(f"{D} is not negative")
    m = -D
    total = sum(kronecker_symbol(D, a) * a for a in range(1, m))
    h = -Fraction(roots_of_unity_count(D), 2 * m) * total
    if h.denominator != 1 or h < 1:
        raise RuntimeError(f"Dirichlet sum for {D} gave non-integral class number {h}")
    return int(h)


@lru_cache(maxsize=4096)
def real_quadratic_hR(D: int) -> mpmath.mpf:
    """h log(eps) = -1/2 sum_{a=1}^{D-1} (D/a) log sin(pi a / D) for D > 0."""
    _require_fundamental(D)
    if D < 0:
        raise ValueError(f"{D} is not positive")
    with mpmath.workdps(ANALYTIC_DPS):
        total = mpmath.mpf(0)
        for a in range(1, D):
            chi = kronecker_symbol(D, a)
            if chi:
                total += chi * mpmath.log(mpmath.sin(mpmath.pi * a / D))
        return -total / 2


@lru_cache(maxsize=4096)
def fundamental_unit(D: int) -> Tuple[int, int, int]:
    """
    Fundamental unit (x + y sqrt(D)) / 2 of the real quadratic field of
    discriminant D, as (x, y, norm).

    Candidates are the fundamental solutions of x^2 - D y^2 = +-4 and the
    doubled solutions of x^2 - D y^2 = +-1; the smallest unit > 1 is
    among them.
    """
    _require_fundamental(D)
    if D < 0:
        raise ValueError(f"{D} is not positive")
    candidates = set()
    for N, scale in ((-4, 1), (4, 1), (-1, 2), (1, 2)):
        for sol in diop_DN(D, N):
            x, y = abs(int(sol[0])) * scale, abs(int(sol[1])) * scale
            if y:
                candidates.add((x, y))
    if not candidates:
        raise RuntimeError(f"no unit found for discriminant {D}")
    with mpmath.workdps(ANALYTIC_DPS):
        x, y = min(candidates, key=lambda s: s[0] + s[1] * mpmath.sqrt(D))
    norm = (x * x - D * y * y) // 4
    if norm not in (1, -1):
        raise RuntimeError(f"candidate unit ({x}, {y}) of {D} has norm {norm}")
    return x, y, norm


def fundamental_unit_log(D: int) -> mpmath.mpf:
    x, y, _ = fundamental_unit(D)
    with mpmath.workdps(ANALYTIC_DPS):
        return mpmath.log((x + y * mpmath.sqrt(D)) / 2)


def quadratic_class_number_analytic(D: int) -> int:
    """Exact class number of Q(sqrt(D)) from Dirichlet's formula."""
    if D < 0:
        return imaginary_class_number(D)
    with mpmath.workdps(ANALYTIC_DPS):
        ratio = real_quadratic_hR(D) / fundamental_unit_log(D)
        h = int(mpmath.nint(ratio))
        if h < 1 or abs(ratio - h) > mpmath.mpf(10) ** -10:
            raise RuntimeError(f"h log(eps) / log(eps) = {ratio} is not an integer for {D}")
    return h


def narrow_class_number(D: int, h: int = None) -> int:
    """h+ = h when the fundamental unit has norm -1, else 2h (D > 0)."""
    if D < 0:
        raise ValueError("the narrow class group differs from the wide one only for D > 0")
    h = h if h is not None else quadratic_class_number_analytic(D)
    return h if fundamental_unit(D)[2] == -1 else 2 * h
