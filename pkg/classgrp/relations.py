"""
Certified class groups of cubic and real quadratic fields from relations
among prime ideals below the Minkowski bound
"""

from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
from sympy import Matrix, primerange
from sympy.matrices.normalforms import hermite_normal_form

from classgrp.analytic import (
    DEFAULT_EULER_BOUND,
    euler_product_residue,
    hR_estimate,
    minkowski_bound,
)
from classgrp.structure import Certification, ClassGroupData, invariants_from_relations
from orders.arithmetic import EMBEDDING_DPS, OrderArithmetic, order_arithmetic
from orders.ideals import PrimeIdeal, element_valuations, prime_ideals_above
from orders.lattice import short_vectors
from orders.maximal import MaximalOrder
from utils.config import section
from utils.logger import setup_logger

logger = setup_logger(__name__)

REGULATOR_LOWER_BOUND = 0.2
ZERO_LOG = mpmath.mpf(10) ** -20


class CertificationError(RuntimeError):
    """The relation data could not be reconciled with the analytic estimate."""


def rgcd(a, b, regulator_lower_bound: float = REGULATOR_LOWER_BOUND):
    """
    Real gcd of two multiples of the regulator.

    Euclid's algorithm on reals, stopped once the remainder drops below
    the regulator lower bound.
    """
    a, b = abs(a), abs(b)
    if a < b:
        a, b = b, a
    lower = max(regulator_lower_bound, REGULATOR_LOWER_BOUND)
    while b > lower:
        a, b = b, a - b * mpmath.floor(a / b)
    return a


def _det(rows) -> mpmath.mpf:
    return mpmath.det(mpmath.matrix(rows))


def _regulator_rank2(unit_logs: List[List], max_denominator: int = 1000) -> Optional[mpmath.mpf]:
    """
    Covolume of the lattice spanned by unit log vectors in R^2.

    Every vector is written in the basis of two short independent ones;
    the coordinates are rational with small denominators.
    """
    logs = sorted(unit_logs, key=lambda u: mpmath.norm(mpmath.matrix(u)))
    u1 = logs[0]
    u2 = next((u for u in logs[1:] if abs(_det([u1, u])) > 1e-6), None)
    if u2 is None:
        return None
    base = mpmath.matrix([u1, u2]).T
    coords: List[Tuple[Fraction, Fraction]] = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    for u in logs:
        c = mpmath.lu_solve(base, mpmath.matrix(u))
        pair = tuple(Fraction(float(x)).limit_denominator(max_denominator) for x in c)
        if any(abs(float(x) - float(q)) > 1e-8 for x, q in zip(c, pair)):
            logger.debug(f"discarding unit log {u}: coordinates {c} are not rational")
            continue
        coords.append(pair)
    denom = lcm(*(q.denominator for pair in coords for q in pair))
    M = Matrix(2, len(coords), lambda i, j: int(coords[j][i] * denom))
    H = hermite_normal_form(M)
    index = abs(int(H.det()))
    return abs(_det([u1, u2])) * index / denom ** 2


def regulator(unit_logs: List[List], rank: int,
              regulator_lower_bound: float = REGULATOR_LOWER_BOUND) -> Optional[mpmath.mpf]:
    """Regulator of the unit subgroup spanned by the given log vectors, or None below full rank."""
    if rank == 0:
        return mpmath.mpf(1)
    logs = [u for u in unit_logs if max(abs(x) for x in u) > ZERO_LOG]
    if not logs:
        return None
    if rank == 1:
        result = abs(logs[0][0])
        for u in logs[1:]:
            result = rgcd(result, u[0], regulator_lower_bound)
        return result
    if rank == 2:
        return _regulator_rank2(logs)
    raise ValueError(f"unit rank {rank} is not supported")


class RelationLattice:
    """
    Relations between factor-base primes kept in echelon form.

    Each row carries the (truncated) log embedding of its generator, so
    a row that reduces to zero leaves the log vector of a unit behind.
    """

    def __init__(self, ncols: int, unit_rank: int):
        self.ncols = ncols
        self.unit_rank = unit_rank
        self.pivots: Dict[int, Tuple[List[int], List]] = {}
        self.unit_logs: List[List] = []
        self.count = 0

    def insert(self, exps: Sequence[int], logs: Sequence) -> None:
        self.count += 1
        row, lrow = list(exps), list(logs)
        for j in range(self.ncols):
            if row[j] == 0:
                continue
            if j not in self.pivots:
                if row[j] < 0:
                    row, lrow = [-x for x in row], [-x for x in lrow]
                self.pivots[j] = (row, lrow)
                return
            prow, plog = self.pivots[j]
            while row[j]:
                q = prow[j] // row[j]
                prow = [x - q * y for x, y in zip(prow, row)]
                plog = [x - q * y for x, y in zip(plog, lrow)]
                prow, row = row, prow
                plog, lrow = lrow, plog
            if prow[j] < 0:
                prow, plog = [-x for x in prow], [-x for x in plog]
            self.pivots[j] = (prow, plog)
        if self.unit_rank and max((abs(x) for x in lrow), default=0) > ZERO_LOG:
            self.unit_logs.append(lrow)

    def is_full(self) -> bool:
        return len(self.pivots) == self.ncols

    def index(self) -> Optional[int]:
        """[Z^k : relations] once every column has a pivot."""
        if not self.is_full():
            return None
        result = 1
        for j in range(self.ncols):
            result *= self.pivots[j][0][j]
        return result

    def rows(self) -> List[List[int]]:
        return [self.pivots[j][0] for j in sorted(self.pivots)]


class RelationEngine:
    """
    Class group of a cubic or real quadratic maximal order.

    The factor base holds every prime ideal above p <= Minkowski bound.
    Relations come from the decomposition of each such p and from
    integral elements of growing T2 whose norms are smooth over the
    factor base. The relation index h' and the unit regulator R' found
    are multiples of h and R; the result is accepted once h' R' is
    within the certification ratio of the analytic estimate of h R, or,
    when the exact class number is supplied, once h' equals it.
    """

    def __init__(self, order: MaximalOrder, config: Optional[Dict] = None):
        options = section(config, 'classgroup')
        self.order = order
        self.arith: OrderArithmetic = order_arithmetic(order)
        self.n = order.degree
        self.r1, self.r2 = order.signature
        self.unit_rank = self.r1 + self.r2 - 1
        self.euler_bound = options.get('euler_prime_bound', DEFAULT_EULER_BOUND)
        self.ratio_limit = float(options.get('certification_ratio', 2 ** 0.5))
        self.max_rounds = options.get('max_rounds', 10)
        self.radius_factor = float(options.get('initial_radius_factor', 1.0))
        self.regulator_lower_bound = float(options.get('regulator_lower_bound', REGULATOR_LOWER_BOUND))

        self.minkowski = minkowski_bound(self.n, self.r2, order.field_disc_abs)
        self.rational_primes = list(primerange(2, int(self.minkowski) + 1))
        self.factor_base: List[PrimeIdeal] = []
        for p in self.rational_primes:
            self.factor_base.extend(prime_ideals_above(order, p))
        self.columns = {P.label: j for j, P in enumerate(self.factor_base)}

    def _place_weights(self) -> List[int]:
        return [1] * self.r1 + [2] * self.r2

    def _rational_prime_relation(self, p: int) -> Tuple[List[int], List]:
        exps = [0] * len(self.factor_base)
        for P in self.factor_base:
            if P.p == p:
                exps[self.columns[P.label]] = P.e
        logs = [w * mpmath.log(p) for w in self._place_weights()][:self.unit_rank]
        return exps, logs

    def _smooth(self, norm: int) -> bool:
        for p in self.rational_primes:
            while norm % p == 0:
                norm //= p
        return norm == 1

    def _element_relation(self, v: Tuple[int, ...]) -> Optional[Tuple[List[int], List]]:
        norm = abs(self.arith.norm(v))
        if norm == 0 or not self._smooth(norm):
            return None
        vals = element_valuations(self.factor_base, v, norm, self.arith)
        exps = [0] * len(self.factor_base)
        for label, k in vals.items():
            exps[self.columns[label]] = k
        logs = self.arith.log_embedding(v)[:self.unit_rank]
        return exps, logs

    def initial_radius(self) -> float:
        n = self.n
        return self.radius_factor * max(n + 1.0, n * self.minkowski ** (2.0 / n))

    def compute(self, exact_h: Optional[int] = None,
                exact_regulator: Optional[mpmath.mpf] = None) -> ClassGroupData:
        """
        Run relation rounds until the result is certified.

        Args:
            exact_h: Known class number (real quadratic fields)
            exact_regulator: Known regulator (real quadratic fields)

        Returns:
            ClassGroupData certified by ideal enumeration

        Raises:
            CertificationError: if no certificate is reached in max_rounds
                or the relations contradict the analytic estimate
        """
        with mpmath.workdps(EMBEDDING_DPS):
            return self._run(exact_h, exact_regulator)

    def _run(self, exact_h: Optional[int], exact_regulator) -> ClassGroupData:
        f = self.order.defining_poly
        certificate: Dict = {
            'minkowski_bound': self.minkowski,
            'factor_base': [P.label for P in self.factor_base],
            'witnesses': {},
        }
        if not self.factor_base:
            certificate.update({'relations': 0, 'radius': 0.0})
            logger.debug(f"{f}: Minkowski bound {self.minkowski:.3f} < 2, class group trivial")
            return ClassGroupData([], Certification.IDEAL_ENUM_CERTIFIED, certificate)

        lattice = RelationLattice(len(self.factor_base), self.unit_rank)
        for p in self.rational_primes:
            lattice.insert(*self._rational_prime_relation(p))

        estimate = None
        if exact_h is None:
            estimate = hR_estimate(self.order, euler_product_residue(self.order, self.euler_bound))
            certificate['hR_estimate'] = float(estimate)

        seen = set()
        radius = self.initial_radius()
        for round_no in range(1, self.max_rounds + 1):
            for v, _ in short_vectors(self.arith.gram, radius):
                if v in seen:
                    continue
                seen.add(v)
                relation = self._element_relation(v)
                if relation is None:
                    continue
                exps, logs = relation
                if sum(exps) == 1:
                    label = self.factor_base[exps.index(1)].label
                    certificate['witnesses'].setdefault(label, list(v))
                lattice.insert(exps, logs)

            h_comp = lattice.index()
            certificate.update({'relations': lattice.count, 'radius': radius, 'rounds': round_no})
            if h_comp is not None:
                if exact_h is not None:
                    if h_comp % exact_h:
                        raise CertificationError(f"{f}: relation index {h_comp} is not a multiple of h = {exact_h}")
                    if h_comp == exact_h:
                        if exact_regulator is not None:
                            certificate['regulator'] = float(exact_regulator)
                        return self._finish(lattice, certificate)
                else:
                    reg = regulator(lattice.unit_logs, self.unit_rank, self.regulator_lower_bound)
                    if reg is not None:
                        ratio = h_comp * reg / estimate
                        logger.debug(f"{f}: round {round_no}, h' = {h_comp}, R' = {float(reg):.6f}, "
                                     f"ratio {float(ratio):.4f}")
                        if ratio * self.ratio_limit <= 1:
                            raise CertificationError(
                                f"{f}: h'R' = {float(h_comp * reg):.6f} is below the analytic estimate "
                                f"{float(estimate):.6f} by more than the certification ratio")
                        if ratio < self.ratio_limit:
                            certificate['regulator'] = float(reg)
                            certificate['ratio'] = float(ratio)
                            return self._finish(lattice, certificate)
            radius *= 2

        raise CertificationError(
            f"{f}: no certificate after {self.max_rounds} rounds "
            f"(pivots {len(lattice.pivots)}/{lattice.ncols}, units {len(lattice.unit_logs)}, radius {radius / 2:.1f})")

    def _finish(self, lattice: RelationLattice, certificate: Dict) -> ClassGroupData:
        divisors = invariants_from_relations(lattice.rows(), lattice.ncols)
        cg = ClassGroupData(divisors, Certification.IDEAL_ENUM_CERTIFIED, certificate)
        if cg.h != lattice.index():
            raise CertificationError(f"Smith form order {cg.h} differs from relation index {lattice.index()}")
        logger.debug(f"{self.order.defining_poly}: class group {divisors} "
                     f"({certificate['relations']} relations, radius {certificate['radius']:.1f})")
        return cg

