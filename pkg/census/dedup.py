"""
Deduplication of census fields by canonical-polynomial hash, with an
isomorphism spot check among fields of equal discriminant
"""

import hashlib
from typing import Dict, List, Tuple

from orders.canonical import is_isomorphic
from orders.maximal import maximal_order
from poly.intpoly import IntPolynomial
from utils.logger import setup_logger

logger = setup_logger(__name__)


class DuplicateFieldError(RuntimeError):
    """Two census entries with different keys define isomorphic fields."""


class FieldDeduplicator:
    """Remove duplicate fields from a census"""

    def __init__(self, config: Dict):
        self.config = config
        self.check_isomorphism = config.get('isomorphism_check', True)

    def deduplicate(self, polys: List[IntPolynomial]) -> List[IntPolynomial]:
        """
        Remove repeated canonical polynomials.

        Args:
            polys: Canonical polynomials from the search

        Returns:
            Unique polynomials in input order

        Raises:
            DuplicateFieldError: if two distinct keys give isomorphic fields
        """
        if not polys:
            return []

        unique: List[IntPolynomial] = []
        seen = set()
        for f in polys:
            key = self._hash_poly(f)
            if key in seen:
                logger.debug(f"Duplicate polynomial: {f}")
                continue
            seen.add(key)
            unique.append(f)

        if self.check_isomorphism:
            self.assert_pairwise_distinct(unique)

        logger.info(f"Deduplicated {len(polys)} polynomials to {len(unique)} fields")
        return unique

    def _hash_poly(self, f: IntPolynomial) -> str:
        """Generate hash from the coefficient list"""
        return hashlib.md5(','.join(str(c) for c in f.coefficients).encode()).hexdigest()

    def assert_pairwise_distinct(self, polys: List[IntPolynomial]) -> int:
        """
        Check every pair of equal field discriminant for isomorphism.

        Returns:
            Number of pairs compared
        """
        by_disc: Dict[Tuple[int, int], List[IntPolynomial]] = {}
        for f in polys:
            by_disc.setdefault((f.degree, maximal_order(f).field_disc_signed), []).append(f)
        pairs = 0
        for group in by_disc.values():
            for i in range(len(group)):
                for j in range(i + 1, len(group)):
                    pairs += 1
                    if is_isomorphic(group[i], group[j]):
                        raise DuplicateFieldError(f"{group[i]} and {group[j]} define the same field")
        logger.debug(f"Compared {pairs} same-discriminant pairs")
        return pairs
