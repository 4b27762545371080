"""
Element arithmetic in a maximal order, in integral-basis coordinates
"""

from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

import mpmath
import numpy as np
from sympy import Matrix, Rational
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from orders.maximal import MaximalOrder
from poly.intpoly import IntPolynomial, mul_mod

Vector = Tuple[int, ...]

EMBEDDING_DPS = 40


class OrderArithmetic:
    """
    Multiplication table, norms, characteristic polynomials and complex
    embeddings of a maximal order.

    Elements are integer vectors in the integral basis of the order.
    """

    def __init__(self, order: MaximalOrder):
        self.order = order
        self.n = order.degree
        self.f = order.defining_poly.coefficients
        self.basis = [list(row) for row in order.basis]
        inv = Matrix([[Rational(c.numerator, c.denominator) for c in row] for row in order.basis]).inv()
        self.basis_inv = [[Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(self.n)]
                          for i in range(self.n)]
        self.table = [[self.from_power(mul_mod(self.basis[i], self.basis[j], self.f))
                       for j in range(self.n)] for i in range(self.n)]
        self.one = self.from_power([Fraction(1)] + [Fraction(0)] * (self.n - 1))
        self._init_embeddings()

    # -- coordinates -------------------------------------------------------

    def to_power(self, v: Sequence[int]) -> List[Fraction]:
        out = [Fraction(0)] * self.n
        for i, c in enumerate(v):
            if c:
                for k in range(self.n):
                    out[k] += c * self.basis[i][k]
        return out

    def from_power(self, coeffs: Sequence[Fraction], integral: bool = True) -> Vector:
        out = [Fraction(0)] * self.n
        for k, c in enumerate(coeffs):
            if c:
                for i in range(self.n):
                    out[i] += c * self.basis_inv[k][i]
        if not integral:
            return tuple(out)
        if any(x.denominator != 1 for x in out):
            raise ValueError(f"element {list(coeffs)} is not integral in the order")
        return tuple(int(x) for x in out)

    def theta(self) -> Vector:
        """Coordinates of the root of the defining polynomial."""
        return self.from_power([Fraction(int(i == 1)) for i in range(self.n)])

    # -- ring operations ---------------------------------------------------

    def add(self, u: Sequence[int], v: Sequence[int]) -> Vector:
        return tuple(a + b for a, b in zip(u, v))

    def scale(self, c: int, v: Sequence[int]) -> Vector:
        return tuple(c * a for a in v)

    def mul(self, u: Sequence[int], v: Sequence[int]) -> Vector:
        out = [0] * self.n
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        row = self.table[i][j]
                        ab = a * b
                        for k in range(self.n):
                            out[k] += ab * row[k]
        return tuple(out)

    def power(self, v: Sequence[int], k: int) -> Vector:
        result = self.one
        for _ in range(k):
            result = self.mul(result, v)
        return result

    def evaluate(self, g: IntPolynomial, v: Sequence[int]) -> Vector:
        """g(v) by Horner's rule."""
        result = tuple(0 for _ in range(self.n))
        for c in reversed(g.coefficients):
            result = self.add(self.mul(result, v), self.scale(c, self.one))
        return result

    def mult_matrix(self, v: Sequence[int]) -> List[List[int]]:
        """Matrix of multiplication by v; column j is v * omega_j."""
        cols = [self.mul(v, tuple(int(i == j) for i in range(self.n))) for j in range(self.n)]
        return [[cols[j][i] for j in range(self.n)] for i in range(self.n)]

    def _domain_matrix(self, v: Sequence[int]) -> DomainMatrix:
        rows = self.mult_matrix(v)
        return DomainMatrix([[ZZ(x) for x in row] for row in rows], (self.n, self.n), ZZ)

    def norm(self, v: Sequence[int]) -> int:
        return int(self._domain_matrix(v).det())

    def trace(self, v: Sequence[int]) -> int:
        m = self.mult_matrix(v)
        return sum(m[i][i] for i in range(self.n))

    def charpoly(self, v: Sequence[int]) -> IntPolynomial:
        return IntPolynomial.from_descending([int(c) for c in self._domain_matrix(v).charpoly()])

    # -- embeddings --------------------------------------------------------

    def _init_embeddings(self) -> None:
        with mpmath.workdps(EMBEDDING_DPS):
            roots = mpmath.polyroots(list(reversed(self.f)), maxsteps=200, extraprec=2 * EMBEDDING_DPS)
            tol = mpmath.mpf(10) ** (-EMBEDDING_DPS // 2)
            reals = sorted(mpmath.re(r) for r in roots if abs(mpmath.im(r)) < tol)
            complexes = sorted((r for r in roots if mpmath.im(r) >= tol), key=lambda z: (mpmath.re(z), mpmath.im(z)))
            self.r1 = len(reals)
            self.r2 = len(complexes)
            if (self.r1, self.r2) != self.order.signature:
                raise RuntimeError(f"numerical roots of {self.order.defining_poly} disagree with the signature")
            self.roots = [mpmath.mpc(r) for r in reals] + list(complexes)
            # image of omega_i under each embedding
            self.basis_embeddings = [
                [sum((mpmath.mpf(c.numerator) / c.denominator) * r ** k for k, c in enumerate(row))
                 for r in self.roots]
                for row in self.basis
            ]
        emb = np.array([[complex(z) for z in row] for row in self.basis_embeddings])
        weights = np.array([1.0] * self.r1 + [2.0] * self.r2)
        self.gram = np.real((emb * weights) @ emb.conj().T)

    def embed(self, v: Sequence[int]) -> List:
        with mpmath.workdps(EMBEDDING_DPS):
            return [sum((c * self.basis_embeddings[i][j] for i, c in enumerate(v) if c), mpmath.mpc(0))
                    for j in range(self.r1 + self.r2)]

    def t2(self, v: Sequence[int]) -> float:
        x = np.asarray(v, dtype=float)
        return float(x @ self.gram @ x)

    def log_embedding(self, v: Sequence[int]) -> List:
        """(log|s_1(v)|, ..., 2 log|s_{r1+r2}(v)|); the entries sum to log|N(v)|."""
        with mpmath.workdps(EMBEDDING_DPS):
            values = self.embed(v)
            return [(1 if j < self.r1 else 2) * mpmath.log(abs(z)) for j, z in enumerate(values)]

    def is_primitive(self, v: Sequence[int]) -> bool:
        """v generates the field iff its characteristic polynomial is squarefree."""
        cp = self.charpoly(v)
        return cp.to_sympy().discriminant() != 0


@lru_cache(maxsize=2048)
def order_arithmetic(order: MaximalOrder) -> OrderArithmetic:
    return OrderArithmetic(order)
