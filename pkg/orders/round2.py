"""
Round-2 enlargement of an order at a single prime, for degrees 2 to 4
"""

from typing import List, Sequence

from sympy import Matrix, Rational, ilcm
from sympy.matrices.normalforms import hermite_normal_form
from sympy.polys.domains import GF, ZZ
from sympy.polys.matrices import DomainMatrix

from poly.intpoly import mul_mod
from utils.logger import setup_logger

logger = setup_logger(__name__)

MAX_ROUNDS = 32


def lattice_span(vectors: Sequence[Sequence], n: int) -> Matrix:
    """
    HNF basis (rows, power-basis coordinates) of the Z-span of rational vectors.

    Row j involves theta^0 .. theta^j only, and row 0 is 1 when the span
    is an order.
    """
    denom = ilcm(*[Rational(x).q for v in vectors for x in v], 1)
    M = Matrix(n, len(vectors), lambda i, j: Rational(vectors[j][i]) * denom)
    H = hermite_normal_form(M)
    if H.shape != (n, n):
        raise ValueError(f"vectors span a lattice of rank {H.shape[1]} < {n}")
    return Matrix(n, n, lambda i, j: Rational(H[j, i], denom))


def _kernel_mod_p(rows: List[List[int]], ncols: int, p: int) -> List[List[int]]:
    """Basis of {c in F_p^ncols : A c = 0}, lifted to 0 <= c_i < p."""
    A = DomainMatrix([[ZZ(x % p) for x in row] for row in rows], (len(rows), ncols), ZZ).convert_to(GF(p))
    kernel = A.nullspace().to_Matrix()
    return [[int(x) % p for x in kernel.row(i)] for i in range(kernel.rows)]


class _Order:
    """An order given by a Z-basis in power-basis coordinates, with its structure constants."""

    def __init__(self, basis: Matrix, f: Sequence[int]):
        self.n = basis.rows
        self.basis = basis
        self.f = list(f)
        self.inv = basis.inv()
        rows = [list(basis.row(i)) for i in range(self.n)]
        self.table = [[self.coords(mul_mod(rows[i], rows[j], self.f)) for j in range(self.n)]
                      for i in range(self.n)]

    def element(self, c: Sequence[int]) -> List:
        """Power-basis coordinates of sum c_i w_i."""
        return [sum((c[i] * self.basis[i, k] for i in range(self.n)), Rational(0)) for k in range(self.n)]

    def coords(self, v: Sequence) -> List[int]:
        c = Matrix([list(v)]) * self.inv
        if any(Rational(x).q != 1 for x in c):
            raise RuntimeError(f"{list(v)} does not lie in the order")
        return [int(x) for x in c]

    def mul(self, a: Sequence[int], b: Sequence[int], p: int = 0) -> List[int]:
        out = [0] * self.n
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        row = self.table[i][j]
                        for k in range(self.n):
                            out[k] += x * y * row[k]
        return [x % p for x in out] if p else out

    def power_mod(self, a: Sequence[int], e: int, p: int) -> List[int]:
        result = [1] + [0] * (self.n - 1)
        base = [x % p for x in a]
        while e:
            if e & 1:
                result = self.mul(result, base, p)
            base = self.mul(base, base, p)
            e >>= 1
        return result


def _radical(order: _Order, p: int) -> Matrix:
    """
    The p-radical {x in O : x^q in pO}, q = p^k >= n, as HNF columns in
    order coordinates. x -> x^q is F_p-linear on O/pO.
    """
    n = order.n
    q = p
    while q < n:
        q *= p
    images = [order.power_mod([int(i == j) for j in range(n)], q, p) for i in range(n)]
    rows = [[images[j][i] for j in range(n)] for i in range(n)]
    gens = [[p * int(i == j) for j in range(n)] for i in range(n)] + _kernel_mod_p(rows, n, p)
    H = hermite_normal_form(Matrix(n, len(gens), lambda i, j: gens[j][i]))
    if H.shape != (n, n):
        raise RuntimeError(f"p-radical at {p} has rank {H.shape[1]}")
    return H


def _multiplier_kernel(order: _Order, radical: Matrix, p: int) -> List[List[int]]:
    """Basis of {u in O/pO : u I in pI} for the p-radical I."""
    n = order.n
    inv = radical.inv()
    columns = []
    for i in range(n):
        unit = [int(i == j) for j in range(n)]
        col = []
        for k in range(n):
            gamma = inv * Matrix(order.mul(unit, list(radical.col(k))))
            if any(Rational(x).q != 1 for x in gamma):
                raise RuntimeError(f"p-radical at {p} is not an ideal of the order")
            col.extend(int(x) for x in gamma)
        columns.append(col)
    rows = [[columns[i][r] for i in range(n)] for r in range(n * n)]
    return _kernel_mod_p(rows, n, p)


def p_maximal_basis(basis: Matrix, f: Sequence[int], p: int) -> Matrix:
    """
    Enlarge the order with the given basis until it is p-maximal.

    Each round replaces O by the multiplier ring of its p-radical; O is
    p-maximal exactly when the multiplier ring is O itself.

    Args:
        basis: HNF rows in power-basis coordinates
        f: Monic defining polynomial, constant first
        p: Prime

    Returns:
        HNF basis of the p-maximal order containing O
    """
    n = basis.rows
    for rounds in range(MAX_ROUNDS):
        order = _Order(basis, f)
        kernel = _multiplier_kernel(order, _radical(order, p), p)
        if not kernel:
            logger.debug(f"p = {p}: p-maximal after {rounds} enlargements")
            return basis
        vectors = [list(basis.row(i)) for i in range(n)]
        vectors += [[x / p for x in order.element(c)] for c in kernel]
        basis = lattice_span(vectors, n)
    raise RuntimeError(f"no p-maximal order at p = {p} after {MAX_ROUNDS} rounds")
