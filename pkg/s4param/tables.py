"""
Local data at a tame prime p > 3 of an S4 quartic field: inertia,
decomposition group, and the exponents of p in the discriminant and the
conductor
"""

from dataclasses import dataclass
from typing import Any, Dict, FrozenSet

from orders.maximal import SplittingType


class TableViolation(RuntimeError):
    """A ramified splitting shape with non-cyclic inertia was observed."""


@dataclass(frozen=True)
class TameClass:
    p: int
    shape: tuple
    membership: FrozenSet[str]
    v_d: int
    v_N: int
    inertia: str
    decomposition: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            'p': self.p,
            'shape': [list(pair) for pair in self.shape],
            'membership': sorted(self.membership),
            'v_d': self.v_d,
            'v_N': self.v_N,
            'inertia': self.inertia,
            'decomposition': self.decomposition,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'TameClass':
        return cls(data['p'], tuple(tuple(pair) for pair in data['shape']), frozenset(data['membership']),
                   data['v_d'], data['v_N'], data['inertia'], data['decomposition'])


# inertia labels are cycle shapes of a generator
TRANSPOSITION = '(2)'
DOUBLE_TRANSPOSITION = '(2)(2)'
FOUR_CYCLE = '(4)'
THREE_CYCLE = '(3)'


def _has_degree_two_prime(split: SplittingType) -> bool:
    return any(f == 2 for _, f in split.pairs)


def classify_tame_prime(split_K: SplittingType, split_M: SplittingType, p: int) -> TameClass:
    """
    Row of the local table matching the splitting of p in K.

    The rows with two possible decomposition groups are separated by the
    splitting of p in the resolvent cubic M: complete splitting in M
    means the decomposition group lies in the Klein four-group.

    Args:
        split_K: Splitting type of p in the quartic field
        split_M: Splitting type of p in the resolvent cubic field
        p: Prime > 3, ramified in K

    Raises:
        ValueError: if p <= 3 or p is unramified in K
        TableViolation: for any other ramified shape
    """
    if p <= 3:
        raise ValueError(f"the local tables cover p > 3 only, got {p}")
    if not split_K.is_ramified():
        raise ValueError(f"{p} is unramified in K")
    shape = split_K.pairs

    def row(membership, v_d, v_N, inertia, decomposition) -> TameClass:
        return TameClass(p, shape, frozenset(membership), v_d, v_N, inertia, decomposition)

    if shape == ((2, 1), (1, 1), (1, 1)):
        return row('a', 1, 1, TRANSPOSITION, 'C2')
    if shape == ((2, 1), (1, 2)):
        return row('a', 1, 2, TRANSPOSITION, 'C2xC2')
    if shape == ((2, 2),):
        if split_M.splits_completely():
            return row('c', 2, 2, DOUBLE_TRANSPOSITION, 'C2xC2')
        if _has_degree_two_prime(split_M):
            return row('c', 2, 1, DOUBLE_TRANSPOSITION, 'C4')
    elif shape == ((2, 1), (2, 1)):
        if split_M.splits_completely():
            return row('c', 2, 1, DOUBLE_TRANSPOSITION, 'C2')
        if _has_degree_two_prime(split_M):
            return row('c', 2, 2, DOUBLE_TRANSPOSITION, 'C2xC2')
    elif shape == ((4, 1),):
        if p % 4 == 3:
            return row('ac', 3, 2, FOUR_CYCLE, 'D4')
        return row('ac', 3, 1, FOUR_CYCLE, 'C4')
    elif shape == ((3, 1), (1, 1)):
        if p % 3 == 1:
            return row('b', 2, 1, THREE_CYCLE, 'C3')
        return row('b', 2, 2, THREE_CYCLE, 'D3')

    raise TableViolation(f"p = {p}: splitting {list(shape)} in K with {list(split_M.pairs)} in M "
                         f"matches no row of the tame table")
