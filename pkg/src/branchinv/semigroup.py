"""Numerical semigroup arithmetic by dynamic-programming sieve.

Independent of the series/echelon machinery on purpose: tests use this as the
oracle for monomial branches, and the CLI exposes it directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .errors import GcdNotOne


@dataclass(frozen=True)
class SemigroupData:
    generators: tuple[int, ...]
    gaps: tuple[int, ...]
    frobenius: int  # -1 when there are no gaps
    conductor: int
    delta: int
    symmetric: bool


def sieve(generators: Sequence[int]) -> SemigroupData:
    """Gaps, Frobenius number, conductor, delta, and symmetry of <a_1,...,a_n>.

    Requires positive generators with gcd 1.  The sieve is certified once a
    run of min(generators) consecutive values is achieved: the semigroup is
    closed under adding its least element, so everything beyond the run is
    achieved too.
    """
    gens = tuple(sorted(set(int(a) for a in generators)))
    if not gens or gens[0] <= 0:
        raise GcdNotOne("generators must be positive integers")
    g = 0
    for a in gens:
        g = gcd(g, a)
    if g != 1:
        raise GcdNotOne(f"gcd of generators is {g}, not 1")

    e = gens[0]
    if e == 1:
        return SemigroupData(gens, (), -1, 0, 0, True)

    bound = max((gens[0] - 1) * (gens[-1] - 1) + 1, gens[-1] + e + 1)
    while True:
        achieved = [False] * bound
        achieved[0] = True
        for v in range(e, bound):
            for a in gens:
                if v >= a and achieved[v - a]:
                    achieved[v] = True
                    break
        if all(achieved[bound - e : bound]):
            break
        bound *= 2  # gcd is 1, so a full run of e exists eventually

    frobenius = max(v for v in range(bound) if not achieved[v])
    c = frobenius + 1
    gaps = tuple(v for v in range(c) if not achieved[v])
    gapset = set(gaps)
    symmetric = all((v in gapset) != ((c - 1 - v) in gapset) for v in range(c))
    return SemigroupData(gens, gaps, frobenius, c, len(gaps), symmetric)
