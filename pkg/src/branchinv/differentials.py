"""The derivative module D = R x_1'(t) + ... + R x_n'(t) and its invariants.

D is the torsion-free image of the module of differentials, so the minimal
colength h of an integral copy of it is computed entirely inside k((t)):
h = lambda(k[[t]]/D) - delta + v(D^{-1}).  The same number is recomputed
through the conductor shift t^c D as a mandatory cross-check; disagreement
aborts the run instead of reporting anything.
"""

from __future__ import annotations

from dataclasses import dataclass

from .branch import RingData, ensure_truncation, m_power_basis
from .echelon import quotient_dim
from .errors import InternalInconsistency
from .ideals import (
    FractionalIdeal,
    colength_in_normalization,
    from_generators,
    inverse,
    min_generators,
    product,
)
from .series import TruncatedSeries, monomials


@dataclass(eq=False)
class DifferentialData:
    ring: RingData
    D: FractionalIdeal
    lambda_D: int
    v_D: int
    v_Dinv: int
    alpha: TruncatedSeries
    J_min: FractionalIdeal
    h_omega: int
    lambda_tcD: int
    maximal_torsion: bool
    in_ms: bool | None
    mu_Jmin: int
    mu_msJ: int | None
    trace_D: FractionalIdeal


def derivative_module(ring: RingData) -> FractionalIdeal:
    """The R-span of the generator derivatives x_i'(t)."""
    gens = tuple(g.derivative() for g in ring.generators)
    return from_generators(ring, gens)


def required_truncation(ring: RingData) -> int:
    c = ring.conductor_c
    maxdeg = ring.spec.max_degree()
    need = 2 * c + maxdeg + 32
    if ring.order_s is not None:
        need = max(need, c + (ring.order_s + 2) * ring.multiplicity + maxdeg + 2)
    return need


def compute(ring: RingData) -> DifferentialData:
    """All derivative-module invariants, cross-checked; may re-analyze the ring
    at a larger truncation when the conductor demands more room."""
    ring = ensure_truncation(ring, required_truncation(ring))
    c = ring.conductor_c
    delta = ring.delta

    D = derivative_module(ring)
    v_D = D.vmin
    expected_vD = min(int(g.valuation()) for g in ring.generators) - 1
    if v_D != expected_vD:
        raise InternalInconsistency(f"v(D) = {v_D}, expected {expected_vD} in characteristic 0")

    lambda_D = colength_in_normalization(D)
    if lambda_D > delta:
        raise InternalInconsistency(f"lambda_D = {lambda_D} exceeds delta = {delta}")

    inv = inverse(D)
    v_Dinv, alpha = inv.v_inverse, inv.realizer
    h = lambda_D - delta + v_Dinv
    if h < 0 or h > v_Dinv:
        raise InternalInconsistency(f"h = {h} outside [0, v(D^-1) = {v_Dinv}]")

    tcD = from_generators(ring, tuple(g.shift(c) for g in D.generators))
    lambda_tcD = quotient_dim(ring.ring_basis, tcD.basis)
    if lambda_tcD > c:
        raise InternalInconsistency(f"lambda(R/t^c D) = {lambda_tcD} exceeds c = {c}")
    if lambda_tcD - c + v_Dinv != h:
        raise InternalInconsistency(
            f"h cross-check failed: {lambda_D} - {delta} + {v_Dinv} != "
            f"{lambda_tcD} - {c} + {v_Dinv}"
        )

    J_min = from_generators(ring, tuple(alpha * g for g in D.generators))
    for g in J_min.generators:
        if not ring.ring_basis.member(g, c):
            raise InternalInconsistency("realizer times D left the ring")
    if quotient_dim(ring.ring_basis, J_min.basis) != h:
        raise InternalInconsistency("colength of the realized copy disagrees with h")

    s = ring.order_s
    mu_Jmin = min_generators(J_min)
    in_ms: bool | None = None
    mu_msJ: int | None = None
    if s is not None:
        ms = m_power_basis(ring, s)
        ms_bound = c + s * ring.multiplicity
        in_ms = all(ms.member(g, ms_bound) for g in J_min.generators)
        if in_ms:
            union_gens = tuple(J_min.generators) + tuple(monomials(ring.generators, s + 1))
            union = from_generators(ring, union_gens)
            mu_msJ = quotient_dim(ms, union.basis)

    trace_D = product(D, inv.inverse_ideal)
    if trace_D.vmin != v_D + v_Dinv:
        raise InternalInconsistency("v(trace) disagrees with v(D) + v(D^-1)")

    return DifferentialData(
        ring=ring,
        D=D,
        lambda_D=lambda_D,
        v_D=v_D,
        v_Dinv=v_Dinv,
        alpha=alpha,
        J_min=J_min,
        h_omega=h,
        lambda_tcD=lambda_tcD,
        maximal_torsion=(delta == lambda_D),
        in_ms=in_ms,
        mu_Jmin=mu_Jmin,
        mu_msJ=mu_msJ,
        trace_D=trace_D,
    )
