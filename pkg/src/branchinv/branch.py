"""Analysis of a parametrized branch R = k[[x_1(t),...,x_n(t)]] inside k[[t]].

`analyze` validates the parametrization, computes the ring's echelon closure
mod t^N, and certifies the conductor exponent exactly: the closure's pivot
valuations below N are the true achieved valuations, and once a run of
length >= e (e the least positive achieved valuation) is observed, closure of
the value semigroup under +e proves every larger valuation is achieved.  The
optional doubling verification recomputes everything at 2N as an independent
guard.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, gcd
from typing import Sequence

from .echelon import EchelonBasis, ValueSet, close_under, quotient_dim
from .errors import (
    ImprimitiveParametrization,
    InsufficientTruncation,
    InternalInconsistency,
    NonPositiveValuationGenerator,
    OrderUndetectable,
    TruncationExhausted,
)
from .series import PolyExpr, TruncatedSeries, monomials, parse_poly

DEFAULT_MAX_TRUNCATION = 4096


@dataclass(frozen=True)
class BranchSpec:
    """A branch given by polynomial parametrizations x_i(t)."""

    generators: tuple[PolyExpr, ...]
    labels: tuple[str, ...] | None = None
    name: str | None = None

    @classmethod
    def from_strings(cls, texts: Sequence[str], name: str | None = None) -> "BranchSpec":
        return cls(tuple(parse_poly(s) for s in texts), name=name)

    def series(self) -> tuple[TruncatedSeries, ...]:
        return tuple(g.to_series() for g in self.generators)

    def label(self, i: int) -> str:
        if self.labels and i < len(self.labels):
            return self.labels[i]
        return f"generator {i + 1} ({self.generators[i]})"

    def max_degree(self) -> int:
        return max(int(g.to_series().degree()) for g in self.generators)


@dataclass(eq=False)
class RingData:
    """The analyzed branch; treat as immutable after `analyze` returns."""

    spec: BranchSpec
    truncation: int
    ring_basis: EchelonBasis
    generators: tuple[TruncatedSeries, ...]
    conductor_c: int
    delta: int
    gaps: tuple[int, ...]
    embdim_n: int
    order_s: int | None
    gorenstein: bool
    multiplicity: int
    value_set: ValueSet
    stable: bool
    max_truncation: int = DEFAULT_MAX_TRUNCATION
    _mpow: dict[int, EchelonBasis] = field(default_factory=dict, repr=False)

    @property
    def name(self) -> str | None:
        return self.spec.name

    def is_regular(self) -> bool:
        return self.embdim_n == 1


class _NeedsTruncation(InsufficientTruncation):
    """Internal retry signal: analyze doubles the truncation and tries again."""

    def __init__(self, reason: str, kind: str = "conductor", gcd_evidence: int = 0):
        super().__init__(reason)
        self.reason = reason
        self.kind = kind
        self.gcd_evidence = gcd_evidence


def _validate(spec: BranchSpec) -> tuple[TruncatedSeries, ...]:
    gens = spec.series()
    if not gens:
        raise NonPositiveValuationGenerator("a branch needs at least one generator")
    for i, g in enumerate(gens):
        if g.is_zero() or g.valuation() < 1:
            raise NonPositiveValuationGenerator(
                f"{spec.label(i)} must be nonconstant with valuation >= 1"
            )
    if len(gens) == 1:
        v = int(gens[0].valuation())
        if v > 1:
            # a single generator x(t) gives R = k[[x]], so the value set is v*N
            raise ImprimitiveParametrization(v)
    d = 0
    for g in gens:
        for e in g.terms():
            d = gcd(d, e)
    if d > 1:
        raise ImprimitiveParametrization(d)
    return gens


def _certify_conductor(achieved: set[int], limit: int, e: int) -> int | None:
    """Least c with [c, limit) achieved and a certified run of >= e values.

    The run of e consecutive achieved valuations plus closure under +e proves
    everything >= c is achieved; minimality is exact because the achieved set
    below the truncation is exact.
    """
    t = limit
    while t - 1 >= 0 and (t - 1) in achieved:
        t -= 1
    if t >= limit or limit - t < e:
        return None
    return t


def _m_power_seed(gens: Sequence[TruncatedSeries], d: int) -> list[TruncatedSeries]:
    return monomials(gens, d)


def m_power_basis(ring: RingData, d: int) -> EchelonBasis:
    """Echelon basis of m^d mod t^N (d=0 gives the ring itself), tail certified."""
    if d in ring._mpow:
        return ring._mpow[d]
    N = ring.truncation
    c, e = ring.conductor_c, ring.multiplicity
    if d == 0:
        basis = ring.ring_basis
    elif d == 1:
        rows = {v: r for v, r in ring.ring_basis._rows.items() if v != 0}
        basis = EchelonBasis(N, 1, rows).with_tail(max(c, 1))
    else:
        if c + d * e >= N:
            raise _NeedsTruncation(f"m^{d} needs truncation above {c + d * e}", kind="order")
        basis = close_under(_m_power_seed(ring.generators, d), ring.generators, N)
        basis = basis.with_tail(c + d * e)
    ring._mpow[d] = basis
    return basis


def embedding_dimension(ring: RingData) -> int:
    """dim_k m/m^2, computed from the echelon bases of m and m^2."""
    return quotient_dim(m_power_basis(ring, 1), m_power_basis(ring, 2))


def order_s(ring: RingData) -> int:
    """Largest s with dim m^d/m^(d+1) = C(n+d-1, d) for all d <= s.

    This detects the least degree s+1 of a relation among the generators: as
    long as the Hilbert function matches the ambient power-series ring's, no
    relation of that degree exists.
    """
    n = ring.embdim_n
    if n < 2:
        raise OrderUndetectable("order is defined for embedding dimension >= 2")
    d = 1
    while True:
        dim = quotient_dim(m_power_basis(ring, d), m_power_basis(ring, d + 1))
        if dim != comb(n + d - 1, d):
            if d == 1:
                raise InternalInconsistency(
                    f"dim m/m^2 = {dim} disagrees with embedding dimension {n}"
                )
            return d - 1
        d += 1
        if d > ring.truncation:
            raise OrderUndetectable("Hilbert function never left the regular pattern")


def is_gorenstein(ring: RingData) -> bool:
    """Symmetry of the value semigroup about c-1 (Kunz's criterion; valid here
    because the branch is analytically irreducible with residue field k)."""
    return _symmetric(set(ring.gaps), ring.conductor_c)


def _symmetric(gapset: set[int], c: int) -> bool:
    return all((z in gapset) != ((c - 1 - z) in gapset) for z in range(c))


def _analyze_at(spec: BranchSpec, gens: tuple[TruncatedSeries, ...], N: int,
                max_truncation: int) -> RingData:
    maxdeg = spec.max_degree()
    guard = maxdeg + 1
    e = min(int(g.valuation()) for g in gens)

    basis = close_under([TruncatedSeries.one()], gens, N)
    achieved = set(basis.pivot_valuations)
    limit = N - guard
    c = _certify_conductor(achieved, limit, e)
    if c is None:
        nonzero = sorted(achieved - {0})
        g = 0
        for v in nonzero:
            g = gcd(g, v)
        if g > 1:
            # the achieved set looks like g * (a certified semigroup); report
            # the evidence so the retry loop can confirm it across a doubling
            scaled = {v // g for v in nonzero} | {0}
            sc = _certify_conductor(scaled, limit // g, max(1, e // g))
            if sc is not None:
                raise _NeedsTruncation(
                    f"achieved valuations share gcd {g}", kind="conductor", gcd_evidence=g
                )
        raise _NeedsTruncation("no certified conductor run")
    basis = basis.with_tail(c)

    gaps = tuple(v for v in range(c) if v not in achieved)
    delta = len(gaps)

    ring = RingData(
        spec=spec,
        truncation=N,
        ring_basis=basis,
        generators=gens,
        conductor_c=c,
        delta=delta,
        gaps=gaps,
        embdim_n=0,  # filled below
        order_s=None,
        gorenstein=_symmetric(set(gaps), c),
        multiplicity=e,
        value_set=basis.value_set(),
        stable=False,
        max_truncation=max_truncation,
    )
    ring.embdim_n = embedding_dimension(ring)
    if (ring.embdim_n == 1) != (delta == 0):
        raise InternalInconsistency(
            f"embedding dimension {ring.embdim_n} inconsistent with delta {delta}"
        )
    if ring.embdim_n >= 2:
        ring.order_s = order_s(ring)
    return ring


def analyze(spec: BranchSpec, *, initial_truncation: int | None = None,
            verify_stability: bool = True,
            max_truncation: int = DEFAULT_MAX_TRUNCATION) -> RingData:
    """Full branch analysis with certified conductor and optional 2N verification."""
    gens = _validate(spec)
    maxdeg = spec.max_degree()
    N = initial_truncation if initial_truncation else max(64, 4 * maxdeg + 16)

    ring = None
    gcd_seen = 0
    while True:
        try:
            ring = _analyze_at(spec, gens, N, max_truncation)
            break
        except _NeedsTruncation as exc:
            if exc.gcd_evidence:
                # an apparently g-scaled semigroup: confirm once at a doubled
                # truncation, then reject rather than grinding to the cap
                if exc.gcd_evidence == gcd_seen or 2 * N > max_truncation:
                    raise ImprimitiveParametrization(exc.gcd_evidence) from None
                gcd_seen = exc.gcd_evidence
            elif 2 * N > max_truncation:
                err = OrderUndetectable if exc.kind == "order" else TruncationExhausted
                raise err(
                    f"no stable analysis below truncation {max_truncation} ({exc.reason})"
                ) from None
            N *= 2

    if verify_stability:
        double = _analyze_at(spec, gens, 2 * N, max(max_truncation, 2 * N))
        same = (
            double.gaps == ring.gaps
            and double.embdim_n == ring.embdim_n
            and double.order_s == ring.order_s
            and double.gorenstein == ring.gorenstein
        )
        if not same:
            raise InternalInconsistency(
                "doubling verification changed the invariants; "
                f"N={N}: gaps={ring.gaps}, 2N: gaps={double.gaps}"
            )
        ring.stable = True
        ring.value_set = ring.ring_basis.value_set(stable=True)
    return ring


def ensure_truncation(ring: RingData, needed: int) -> RingData:
    """Re-analyze at a larger truncation when downstream work needs more room."""
    if ring.truncation >= needed:
        return ring
    return analyze(
        ring.spec,
        initial_truncation=needed,
        verify_stability=ring.stable,
        max_truncation=max(ring.max_truncation, 2 * needed),
    )
