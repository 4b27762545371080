"""
Count statistics over a census: N(d) profiles, Galois counts and the
quadratic-field count per a
"""

from collections import Counter
from dataclasses import dataclass, field
from math import log, sqrt
from typing import Dict, List, Optional, Sequence, Tuple

from arith.factor import is_squarefree, quadratic_discriminants_for_radical
from classgrp.structure import p_rank
from poly.galois import GaloisLabel
from s4param.bounds import rank_relation_ratio
from utils.logger import setup_logger

logger = setup_logger(__name__)

DEFAULT_EPSILONS = (0.1, 0.25)


@dataclass
class CountProfile:
    """Per-discriminant and per-conductor counts of S4 fields."""
    per_disc: Dict[int, int] = field(default_factory=dict)
    per_conductor: Dict[int, int] = field(default_factory=dict)
    squarefree_max_ratio: float = 0.0
    squarefree_argmax: Optional[int] = None
    epsilon_max_ratio: Dict[float, float] = field(default_factory=dict)
    running_max: List[Tuple[int, float]] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.per_disc.values())

    def to_dict(self) -> Dict:
        return {
            'total': self.total,
            'discriminants': len(self.per_disc),
            'max_count': max(self.per_disc.values(), default=0),
            'squarefree_max_ratio': self.squarefree_max_ratio,
            'squarefree_argmax': self.squarefree_argmax,
            'epsilon_max_ratio': {str(eps): value for eps, value in sorted(self.epsilon_max_ratio.items())},
            'running_max': [[d, value] for d, value in self.running_max],
        }


def log_squared_ratio(count: int, d: int) -> float:
    """N(d) / (sqrt(d) log(d)^2)."""
    return count / (sqrt(d) * log(d) ** 2)


def scaling_profile(records: Sequence, epsilons: Sequence[float] = DEFAULT_EPSILONS) -> CountProfile:
    """
    Count S4 fields by |d| and by conductor S-part.

    Discriminants with no field are left out. The running maximum of
    N(d)/(sqrt(d) log(d)^2) over squarefree d is recorded each time it
    increases, in order of d.
    """
    s4 = [r for r in records if r.galois == GaloisLabel.S4]
    profile = CountProfile()
    profile.per_disc = dict(sorted(Counter(r.disc_abs for r in s4).items()))
    profile.per_conductor = dict(sorted(Counter(r.conductor_S for r in s4 if r.conductor_S).items()))
    profile.epsilon_max_ratio = {eps: 0.0 for eps in epsilons}

    for d, count in profile.per_disc.items():
        for eps in epsilons:
            profile.epsilon_max_ratio[eps] = max(profile.epsilon_max_ratio[eps], count / d ** (0.5 + eps))
        if not is_squarefree(d):
            continue
        ratio = log_squared_ratio(count, d)
        if ratio > profile.squarefree_max_ratio:
            profile.squarefree_max_ratio = ratio
            profile.squarefree_argmax = d
            profile.running_max.append((d, ratio))

    logger.info(f"Scaling profile: {profile.total} S4 fields over {len(profile.per_disc)} discriminants, "
                f"max squarefree ratio {profile.squarefree_max_ratio:.6g}")
    return profile


def galois_counts(records: Sequence) -> Dict[str, int]:
    counts = Counter(str(r.galois) for r in records)
    return dict(sorted(counts.items()))


def fields_per_a(records: Sequence) -> Dict[int, int]:
    """
    Number of quadratic fields k with Rad(|d_k|) = a, for every a that
    occurs as the first entry of a census triple.
    """
    values = sorted({r.triple.a for r in records if r.triple is not None and r.triple.a > 1})
    return {a: len(quadratic_discriminants_for_radical(a)) for a in values}


def max_rank_relation_ratio(records: Sequence) -> float:
    """Largest rank-relation constant over S4 records that carry class data."""
    best = 0.0
    for r in records:
        if r.triple is None or r.class_data_k is None or r.class_data_M is None:
            continue
        if r.triple.a * r.triple.b ** 2 < 3:
            continue
        ratio = rank_relation_ratio(p_rank(r.class_data_k, 3), p_rank(r.class_data_M, 2), r.triple.a, r.triple.b)
        best = max(best, float(ratio))
    return best
