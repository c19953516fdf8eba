"""Fractional-ideal calculus over an analyzed branch.

Everything rests on two exact-membership thresholds: f belongs to R iff it
does so mod t^c (the conductor ideal t^c k[[t]] sits inside R), and f belongs
to an R-module M iff it does so mod t^(c + vmin(M)) (since t^(c+vmin) k[[t]]
is contained in the conductor times M).  These convert truncated data into
exact answers everywhere below.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .branch import RingData
from .echelon import EchelonBasis, ValueSet, close_under, quotient_dim
from .errors import (
    InsufficientTruncation,
    InternalInconsistency,
    NotAnIntegralIdeal,
    NotInNormalization,
    RingMismatch,
    ScanExhausted,
)
from .series import TruncatedSeries


@dataclass(eq=False)
class FractionalIdeal:
    """A finitely generated R-submodule of k((t)), with its closure basis."""

    ring: RingData
    generators: tuple[TruncatedSeries, ...]
    basis: EchelonBasis
    vmin: int
    value_set: ValueSet
    membership_bound: int  # conductor + vmin: membership is exact mod t^bound

    def contains(self, f: TruncatedSeries) -> bool:
        return self.basis.member(f, self.membership_bound)

    def __repr__(self) -> str:
        return (f"FractionalIdeal(vmin={self.vmin}, "
                f"gaps={list(self.value_set.gaps_below(self.membership_bound, self.vmin))})")


@dataclass(frozen=True)
class InverseData:
    v_inverse: int
    realizer: TruncatedSeries
    inverse_ideal: FractionalIdeal


def from_generators(ring: RingData, gens) -> FractionalIdeal:
    """R-span of the generators, closed under the ring's multiplication."""
    gens = tuple(gens)
    if not gens or any(g.is_zero() for g in gens):
        raise ValueError("a fractional ideal needs nonzero generators")
    N = ring.truncation
    vmin = min(int(g.valuation()) for g in gens)
    bound = ring.conductor_c + vmin
    if bound + ring.multiplicity >= N:
        raise InsufficientTruncation(
            f"ideal with vmin {vmin} needs ring truncation above "
            f"{bound + ring.multiplicity}, have {N}"
        )
    for g in gens:
        if g.truncation < N:
            raise InsufficientTruncation(
                f"generator known to t^{g.truncation} but the ring works at t^{N}"
            )
    basis = close_under(gens, ring.generators, N)
    observed = basis.observed_tail_start()
    if observed is None or observed > bound:
        raise InternalInconsistency("membership-bound tail missing from ideal closure")
    basis = basis.with_tail(observed)
    if min(basis.pivot_valuations) != vmin:
        raise InternalInconsistency("minimal pivot disagrees with generator valuations")
    return FractionalIdeal(
        ring=ring,
        generators=gens,
        basis=basis,
        vmin=vmin,
        value_set=basis.value_set(stable=ring.stable),
        membership_bound=bound,
    )


def _reduction_columns(ring: RingData, gens, w_lo: int, w_hi: int):
    """For each w in [w_lo, w_hi], the stacked remainders of t^w * g_i mod R.

    Keys are (i, exponent); a column is empty iff t^w * g_i lies in R for
    every i, i.e. iff t^w multiplies the ideal into the ring.
    """
    cols = {}
    for w in range(w_lo, w_hi + 1):
        col: dict[tuple[int, int], Fraction] = {}
        for i, g in enumerate(gens):
            if g.truncation + w < ring.conductor_c:
                raise InsufficientTruncation(
                    f"generator known to t^{g.truncation} cannot support membership "
                    f"constraints at shift {w}"
                )
            rem = ring.ring_basis.reduce(g.shift(w))
            for e, cf in rem.terms().items():
                if e < ring.conductor_c:
                    col[(i, e)] = cf
                else:
                    raise InternalInconsistency(
                        "reduction left support above the conductor; tail broken"
                    )
        cols[w] = col
    return cols


def _normalize_int_vec(vec: dict) -> dict:
    vec = {k: a for k, a in vec.items() if a}
    if not vec:
        return vec
    g = 0
    for a in vec.values():
        g = gcd(g, a)
    if g > 1:
        vec = {k: a // g for k, a in vec.items()}
    return vec


def inverse(I: FractionalIdeal) -> InverseData:
    """v(I^{-1}), a realizer attaining it, and the full inverse ideal R :_K I.

    Scans candidate valuations m upward (implemented as one incremental
    elimination from the top): level m admits alpha = t^m + higher terms with
    alpha*I inside R iff the level-m constraint column is spanned by the
    higher columns.  The top level m = c - vmin always works, so the scan
    cannot run off the end.
    """
    ring = I.ring
    c = ring.conductor_c
    vmin = I.vmin
    N = ring.truncation
    # the inverse ideal reaches valuations up to c - vmin, so its own closure
    # needs room up to (c + (c - vmin)) + multiplicity below the truncation
    needed = 2 * c - vmin + ring.multiplicity + 1
    if N < needed:
        raise InsufficientTruncation(
            f"inverse of an ideal with vmin {vmin} needs truncation at least {needed}, have {N}"
        )
    lo, hi = -vmin, c - vmin
    cols = _reduction_columns(ring, I.generators, lo, hi)

    # incremental elimination from w = hi down to lo, with augmentation
    # recording each column's expression over the original t^w candidates
    echelon: dict = {}  # pivot key -> integer vector over constraint+aug keys
    solutions: dict[int, TruncatedSeries] = {}
    for w in range(hi, lo - 1, -1):
        den = 1
        for cf in cols[w].values():
            den = den * cf.denominator // gcd(den, cf.denominator)
        vec = {("c",) + k: int(cf * den) for k, cf in cols[w].items()}
        vec[("a", w)] = den
        # stored columns are fully reduced against each other, so eliminating
        # a pivot key never introduces another pivot key: one pass suffices
        for key in sorted(k for k in vec if k[0] == "c" and k in echelon):
            a = vec.get(key)
            if not a:
                continue
            row = echelon[key]
            lead = row[key]
            if lead != 1:
                vec = {k: x * lead for k, x in vec.items()}
            for k, b in row.items():
                s = vec.get(k, 0) - a * b
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)
        vec = _normalize_int_vec(vec)
        constraint_keys = [k for k in vec if k[0] == "c"]
        if not constraint_keys:
            scale = vec.get(("a", w), 0)
            if scale == 0:
                raise InternalInconsistency("solution lost its own level coefficient")
            terms = {k[1]: Fraction(x, scale) for k, x in vec.items()}
            solutions[w] = TruncatedSeries.from_terms(terms)
        else:
            pivot = min(constraint_keys)
            if vec[pivot] < 0:
                vec = {k: -x for k, x in vec.items()}
            # back-reduce stored columns so one pass per new column suffices
            for pk, row in list(echelon.items()):
                b = row.get(pivot)
                if b:
                    lead = vec[pivot]
                    merged = {k: x * lead for k, x in row.items()}
                    for k, x in vec.items():
                        s = merged.get(k, 0) - b * x
                        if s:
                            merged[k] = s
                        else:
                            merged.pop(k, None)
                    echelon[pk] = _normalize_int_vec(merged)
            echelon[pivot] = vec

    if not solutions:
        raise ScanExhausted("no multiplier found; preconditions violated")
    v_inverse = min(solutions)
    realizer = solutions[v_inverse]
    tail = [TruncatedSeries.t_power(hi + j) for j in range(1, max(c, 1))]
    inv_gens = [solutions[w] for w in sorted(solutions)] + tail
    inverse_ideal = from_generators(ring, inv_gens)
    for g in I.generators:
        if not ring.ring_basis.member(realizer * g, ring.conductor_c):
            raise InternalInconsistency("realizer does not multiply the ideal into R")
    return InverseData(v_inverse, realizer, inverse_ideal)


def product(I: FractionalIdeal, J: FractionalIdeal) -> FractionalIdeal:
    """R-span of the pairwise products of generators."""
    if I.ring is not J.ring:
        raise RingMismatch("product needs ideals over the same analyzed ring")
    gens = tuple(g * h for g in I.generators for h in J.generators)
    out = from_generators(I.ring, gens)
    if out.vmin != I.vmin + J.vmin:
        raise InternalInconsistency("product valuation did not add up")
    return out


def trace(I: FractionalIdeal) -> FractionalIdeal:
    """The trace ideal I * I^{-1} (the sum of images of all maps I -> R)."""
    inv = inverse(I)
    out = product(I, inv.inverse_ideal)
    if out.vmin != I.vmin + inv.v_inverse:
        raise InternalInconsistency("trace valuation disagrees with scan minimum")
    return out


def colength_in_normalization(I: FractionalIdeal) -> int:
    """Number of nonnegative valuations missing from the value set (= length of k[[t]]/I)."""
    if I.vmin < 0:
        raise NotInNormalization(f"ideal has vmin {I.vmin} < 0, not inside k[[t]]")
    return len(I.value_set.gaps_below(I.membership_bound))


def h_invariant(I: FractionalIdeal) -> int:
    """Minimal colength of an integral isomorphic copy of I.

    Computed on the normalized copy t^(-vmin) I as (gaps of the copy) - delta
    + v(copy^{-1}); invariant under replacing I by any nonzero multiple.
    """
    ring = I.ring
    if I.vmin == 0:
        normalized = I
    else:
        normalized = from_generators(ring, tuple(g.shift(-I.vmin) for g in I.generators))
    lam = colength_in_normalization(normalized)
    v_inv = inverse(normalized).v_inverse
    return lam - ring.delta + v_inv


def min_generators(I: FractionalIdeal) -> int:
    """mu(I) = dim I / mI."""
    ring = I.ring
    mI = from_generators(ring, tuple(x * g for x in ring.generators for g in I.generators))
    return quotient_dim(I.basis, mI.basis)


def realizes_itself(I: FractionalIdeal) -> bool:
    """For integral I: does the identity copy attain the minimal colength?

    Equivalent to R :_K I staying inside k[[t]]; since 1 in I^{-1} forces
    v(I^{-1}) <= 0 for integral ideals, the test is v(I^{-1}) == 0.
    """
    ring = I.ring
    if I.vmin < 0:
        raise NotAnIntegralIdeal(f"vmin {I.vmin} < 0")
    for g in I.generators:
        if not ring.ring_basis.member(g, ring.conductor_c):
            raise NotAnIntegralIdeal(f"generator {g} is not in the ring")
    return inverse(I).v_inverse == 0


def conductor_ideal(ring: RingData) -> FractionalIdeal:
    """The conductor t^c k[[t]] as an R-module (generated by t^c..t^(2c-1))."""
    c = ring.conductor_c
    gens = tuple(TruncatedSeries.t_power(c + j) for j in range(max(c, 1)))
    return from_generators(ring, gens)


def normalization_ideal(ring: RingData) -> FractionalIdeal:
    """k[[t]] itself as an R-module (generated by 1, t, ..., t^(c-1))."""
    c = ring.conductor_c
    gens = tuple(TruncatedSeries.t_power(j) for j in range(max(c, 1)))
    return from_generators(ring, gens)
