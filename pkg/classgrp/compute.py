"""
Public entry points for class groups, with an optional shared cache
"""

from typing import Dict, Optional

from arith.factor import is_fundamental_discriminant, is_square
from classgrp.analytic import (
    fundamental_unit,
    fundamental_unit_log,
    imaginary_class_number,
    narrow_class_number,
    quadratic_class_number_analytic,
)
from classgrp.forms import form_class_group
from classgrp.relations import RelationEngine
from classgrp.structure import ClassGroupData
from orders.maximal import MaximalOrder, maximal_order
from poly.intpoly import IntPolynomial, UnsupportedDegreeError
from utils.cache import Cache
from utils.config import section
from utils.logger import setup_logger

logger = setup_logger(__name__)


def cache_from_config(config: Optional[Dict]) -> Optional[Cache]:
    """A Cache when cache.enabled is set, else None."""
    options = section(config, 'cache')
    if not options.get('enabled', False):
        return None
    return Cache(options.get('directory'), options.get('ttl_hours'))


def quadratic_order(D: int) -> MaximalOrder:
    """Maximal order of Q(sqrt(D)) on x^2 - x + (1 - D)/4 or x^2 - D/4."""
    if D % 4 == 1:
        poly = IntPolynomial.from_coefficients([(1 - D) // 4, -1, 1])
    else:
        poly = IntPolynomial.from_coefficients([-D // 4, 0, 1])
    return maximal_order(poly)


def _cached(cache: Optional[Cache], key: str) -> Optional[ClassGroupData]:
    if cache is None:
        return None
    data = cache.get(key)
    if data is None:
        return None
    try:
        return ClassGroupData.from_dict(data)
    except (KeyError, ValueError) as e:
        logger.warning(f"Discarding cached class group {key}: {e}")
        return None


def quadratic_class_group(D: int, config: Optional[Dict] = None,
                          cache: Optional[Cache] = None) -> ClassGroupData:
    """
    Class group of the quadratic field of fundamental discriminant D.

    D < 0 uses reduced forms and composition; D > 0 runs the relation
    engine against the exact class number from Dirichlet's formula.
    The wide class group is returned; for D > 0 the certificate also
    records the narrow class number.

    Raises:
        ValueError: if D is a square or not fundamental
    """
    if is_square(D) or not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental quadratic discriminant")
    key = f"quadratic:{D}"
    hit = _cached(cache, key)
    if hit is not None:
        return hit

    if D < 0:
        cg = form_class_group(D)
        analytic_h = imaginary_class_number(D)
        if cg.h != analytic_h:
            raise RuntimeError(f"form count {cg.h} disagrees with Dirichlet's formula {analytic_h} for {D}")
        cg.certificate['analytic_h'] = analytic_h
    else:
        h = quadratic_class_number_analytic(D)
        x, y, norm = fundamental_unit(D)
        engine = RelationEngine(quadratic_order(D), config)
        cg = engine.compute(exact_h=h, exact_regulator=fundamental_unit_log(D))
        cg.certificate.update({
            'analytic_h': h,
            'fundamental_unit': [x, y],
            'unit_norm': norm,
            'narrow_h': narrow_class_number(D, h),
        })

    logger.debug(f"Cl(Q(sqrt({D}))) = {cg.elementary_divisors}")
    if cache is not None:
        cache.set(key, cg.to_dict())
    return cg


def cubic_class_group(order: MaximalOrder, config: Optional[Dict] = None,
                      cache: Optional[Cache] = None) -> ClassGroupData:
    """
    Certified class group of a cubic maximal order.

    Raises:
        UnsupportedDegreeError: if the order is not cubic
        CertificationError: if the relations cannot be certified
    """
    if order.degree != 3:
        raise UnsupportedDegreeError(f"cubic_class_group needs a cubic order, got degree {order.degree}")
    key = "cubic:" + ",".join(str(c) for c in order.defining_poly.coefficients)
    hit = _cached(cache, key)
    if hit is not None:
        return hit

    cg = RelationEngine(order, config).compute()
    logger.debug(f"Cl({order.defining_poly}) = {cg.elementary_divisors}")
    if cache is not None:
        cache.set(key, cg.to_dict())
    return cg
