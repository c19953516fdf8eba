"""Valuation-echelon bases of k-subspaces of k[[t]]/(t^N).

A basis is kept in fully reduced form: one monic pivot per achieved
valuation, with zero coefficients at every other pivot valuation.  Full
reduction makes the representatives canonical, so two bases span the same
subspace iff they are equal.

The closure fixpoint (:func:`close_under`) is the workhorse: it computes the
image mod t^N of the smallest span containing a seed and closed under
multiplication by given multipliers.  Because multiplication by an element of
valuation >= 0 is well defined mod t^N, the pivot valuations it reports below
N are the exact achieved valuations of the closed module, not approximations.

Rows are stored internally as primitive integer vectors (sparse dicts) and
exposed as monic rational series; exact Fraction arithmetic per element is an
order of magnitude too slow at the sizes the closure visits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import (
    InsufficientTruncation,
    NonPositiveMultiplierValuation,
    NotNested,
    UncertifiedTail,
)
from .series import TruncatedSeries

# ---------------------------------------------------------------------------
# sparse integer row helpers
#
# A row is a dict exponent -> int, content gcd 1, positive leading (lowest
# exponent) coefficient.  A working vector is (num, den): the represented
# series has coefficient num[e]/den.
# ---------------------------------------------------------------------------


def _vec_from_series(f: TruncatedSeries, cut) -> tuple[dict[int, int], int]:
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    num = {e: int(c * den) for e, c in f.terms().items() if e < cut}
    return num, den


def _content_normalize(num: dict[int, int]) -> dict[int, int]:
    num = {e: a for e, a in num.items() if a}
    if not num:
        return num
    g = 0
    for a in num.values():
        g = gcd(g, a)
    if num[min(num)] < 0:
        g = -g
    if g != 1:
        num = {e: a // g for e, a in num.items()}
    return num


def _eliminate(num: dict[int, int], den: int, row: dict[int, int], k: int) -> int:
    """Zero out num[k] against a row with leading exponent k.  Returns new den."""
    a = num[k]
    lead = row[k]
    if lead != 1:
        for e in num:
            num[e] *= lead
        den *= lead
    for e, b in row.items():
        s = num.get(e, 0) - a * b
        if s:
            num[e] = s
        else:
            num.pop(e, None)
    return den


def _reduce_vec(num: dict[int, int], den: int, rows: dict[int, dict[int, int]]):
    """Fully reduce: eliminate every pivot-position coefficient.

    Rows are fully reduced, so eliminations only introduce non-pivot keys;
    one pass over the initial pivot-position keys suffices.
    """
    for k in sorted(e for e in num if e in rows):
        if num.get(k):
            den = _eliminate(num, den, rows[k], k)
    return num, den


class _Builder:
    """Mutable echelon under construction; rows stay fully reduced throughout."""

    def __init__(self, truncation: int):
        self.truncation = truncation
        self.rows: dict[int, dict[int, int]] = {}
        self.col_index: dict[int, set[int]] = {}  # exponent -> pivot vals using it

    def insert(self, num: dict[int, int], den: int):
        """Insert a working vector; returns the new pivot valuation or None."""
        num = {e: a for e, a in num.items() if e < self.truncation and a}
        num, den = _reduce_vec(num, den, self.rows)
        num = _content_normalize(num)
        if not num:
            return None
        v = min(num)
        self.rows[v] = num
        for e in num:
            self.col_index.setdefault(e, set()).add(v)
        # back-reduce: restore full reduction in the older rows
        for w in list(self.col_index.get(v, ())):
            if w == v:
                continue
            r = self.rows[w]
            a = r[v]
            lead = num[v]
            merged = {e: b * lead for e, b in r.items()}
            for e, b in num.items():
                s = merged.get(e, 0) - a * b
                if s:
                    merged[e] = s
                else:
                    merged.pop(e, None)
            merged = _content_normalize(merged)
            for e in r:
                if e not in merged:
                    self.col_index[e].discard(w)
            for e in merged:
                if e not in r:
                    self.col_index.setdefault(e, set()).add(w)
            self.rows[w] = merged
        return v


# ---------------------------------------------------------------------------
# public value types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ValueSet:
    """Achieved valuations of a subspace, with tail certification metadata."""

    achieved: tuple[int, ...]
    window_floor: int
    truncation: int
    tail_from: int | None = None
    stable: bool = False

    def gaps_below(self, bound: int, start: int = 0) -> tuple[int, ...]:
        got = set(self.achieved)
        return tuple(v for v in range(start, bound) if v not in got)

    def __contains__(self, v: int) -> bool:
        return v in set(self.achieved)


class EchelonBasis:
    """Immutable valuation-indexed reduced basis of a subspace of k[[t]]/(t^N)."""

    def __init__(self, truncation: int, window_floor: int,
                 rows: dict[int, dict[int, int]], tail_from: int | None = None):
        self.truncation = truncation
        self.window_floor = window_floor
        self._rows = rows
        self.tail_from = tail_from

    # -- inspection --------------------------------------------------------

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def pivot_valuations(self) -> tuple[int, ...]:
        return tuple(sorted(self._rows))

    @property
    def pivots(self) -> dict[int, TruncatedSeries]:
        out = {}
        for v in sorted(self._rows):
            row = self._rows[v]
            lead = row[v]
            terms = {e: Fraction(a, lead) for e, a in row.items()}
            out[v] = TruncatedSeries.from_terms(terms, self.truncation)
        return out

    def value_set(self, stable: bool = False) -> ValueSet:
        return ValueSet(self.pivot_valuations, self.window_floor,
                        self.truncation, self.tail_from, stable)

    def observed_tail_start(self) -> int | None:
        """Least T with every integer of [T, N) a pivot valuation; None if N-1 is not."""
        if (self.truncation - 1) not in self._rows:
            return None
        t = self.truncation - 1
        while (t - 1) in self._rows:
            t -= 1
        return t

    def with_tail(self, tail_from: int) -> "EchelonBasis":
        if tail_from >= self.truncation:
            raise UncertifiedTail(
                f"tail start {tail_from} is not below truncation {self.truncation}"
            )
        for v in range(tail_from, self.truncation):
            if v not in self._rows:
                raise UncertifiedTail(f"valuation {v} missing from claimed tail [{tail_from}, {self.truncation})")
        return EchelonBasis(self.truncation, self.window_floor, self._rows, tail_from)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EchelonBasis)
            and self.truncation == other.truncation
            and self._rows == other._rows
        )

    def __repr__(self) -> str:
        return (f"EchelonBasis(truncation={self.truncation}, "
                f"pivots={list(self.pivot_valuations)})")

    # -- operations ---------------------------------------------------------

    def reduce(self, f: TruncatedSeries) -> TruncatedSeries:
        """Remainder of f after eliminating every pivot coefficient.

        The result is exact below min(truncation of f, truncation of basis)
        and is zero iff f lies in the span modulo that window.
        """
        out_trunc = min(f.truncation, self.truncation)
        num, den = _vec_from_series(f, out_trunc)
        num, den = _reduce_vec(num, den, self._rows)
        terms = {e: Fraction(a, den) for e, a in num.items() if e < out_trunc}
        return TruncatedSeries.from_terms(terms, out_trunc)

    def member(self, f: TruncatedSeries, bound: int) -> bool:
        """Is f in the span modulo t^bound?  Exact when bound is a membership threshold."""
        if f.truncation < bound:
            raise InsufficientTruncation(
                f"membership at bound {bound} needs the candidate known to t^{bound}"
            )
        if self.truncation < bound:
            raise InsufficientTruncation(
                f"membership at bound {bound} needs the basis known to t^{bound}"
            )
        r = self.reduce(f)
        return all(e >= bound for e in r.terms())

    def insert(self, f: TruncatedSeries):
        """Return (basis, changed); a new pivot is fully back-reduced into place."""
        if not f.is_zero() and f.truncation < self.truncation:
            raise InsufficientTruncation(
                f"cannot insert a series known only to t^{f.truncation} "
                f"into a basis at truncation t^{self.truncation}"
            )
        b = _Builder(self.truncation)
        b.rows = {v: dict(r) for v, r in self._rows.items()}
        for v, r in b.rows.items():
            for e in r:
                b.col_index.setdefault(e, set()).add(v)
        num, den = _vec_from_series(f, self.truncation)
        v = b.insert(num, den)
        if v is None:
            return self, False
        floor = min(self.window_floor, v)
        return EchelonBasis(self.truncation, floor, b.rows, self.tail_from), True


def close_under(seed: Sequence[TruncatedSeries], multipliers: Sequence[TruncatedSeries],
                truncation: int) -> EchelonBasis:
    """Smallest echelon span containing the seed and closed under the multipliers.

    Multipliers must have valuation >= 1 so that the fixpoint terminates.  With
    seed {1} and the ring generators as multipliers this is the ring mod t^N;
    with a module's generators as seed it is the module's R-span mod t^N.
    """
    N = int(truncation)
    seeds = [s for s in seed if not s.is_zero()]
    floor = min((int(s.valuation()) for s in seeds), default=0)

    mults = []
    for m in multipliers:
        if m.vstar() < 1:
            raise NonPositiveMultiplierValuation(
                f"multiplier {m} has valuation {m.valuation()}; need >= 1"
            )
        needed = N - min(0, floor)
        if m.truncation < needed:
            raise InsufficientTruncation(
                f"multiplier known to t^{m.truncation} but closure at t^{N} "
                f"with window floor {floor} needs t^{needed}"
            )
        mults.append(_vec_from_series(m, needed))

    for s in seeds:
        if s.truncation < N:
            raise InsufficientTruncation(
                f"seed known to t^{s.truncation} but closure runs to t^{N}"
            )

    b = _Builder(N)
    queue = [_vec_from_series(s, N) for s in seeds]
    while queue:
        num, den = queue.pop()
        v = b.insert(num, den)
        if v is None:
            continue
        row = b.rows[v]
        for mnum, mden in mults:
            prod: dict[int, int] = {}
            for e1, a in row.items():
                for e2, c in mnum.items():
                    e = e1 + e2
                    if e < N:
                        prod[e] = prod.get(e, 0) + a * c
            if prod:
                queue.append((prod, mden))
    return EchelonBasis(N, floor, b.rows)


def quotient_dim(big: EchelonBasis, small: EchelonBasis) -> int:
    """Dimension of span(big)/span(small) for nested spans with certified tails.

    Both spans contain everything above their tails, so the pivot-count
    difference is independent of the (shared) truncation.
    """
    if big.truncation != small.truncation:
        raise ValueError("quotient_dim needs both bases at the same truncation")
    if big.tail_from is None or small.tail_from is None:
        raise UncertifiedTail("quotient_dim needs certified tails on both bases")
    big_rows = big._rows
    for v, row in small._rows.items():
        if v not in big_rows:
            raise NotNested(f"small basis has valuation {v} outside the big span")
        num, den = _reduce_vec(dict(row), 1, big_rows)
        if any(a for e, a in num.items() if e < big.truncation):
            raise NotNested(f"pivot at valuation {v} is not in the big span")
    return len(big) - len(small)


# module-level aliases matching the operation names used in docs/tests
def reduce(f: TruncatedSeries, basis: EchelonBasis) -> TruncatedSeries:
    return basis.reduce(f)


def insert(basis: EchelonBasis, f: TruncatedSeries):
    return basis.insert(f)


def member(f: TruncatedSeries, basis: EchelonBasis, bound: int) -> bool:
    return basis.member(f, bound)
