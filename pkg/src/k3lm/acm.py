"""ACM and initialized tests for line bundles relative to the polarization.

The chain criterion is a sufficient test: vanishing of h1 along the twists
L, L-H, ..., L-mH with H.L <= m*H^2 - 1 proves ACM.  For L with both L and
H-L mobile (two-section carriers of the polarization) the criterion is
exact and collapses to two h1 checks, which we verify against the chain.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cones import ConeOracle
from .errors import ConsistencyError, DomainError
from .lattice import DivClass


@dataclass(frozen=True)
class AcmReport:
    is_acm: bool
    is_initialized: bool
    m_used: int
    h1_chain: tuple[tuple[int, int], ...]
    shortcut_used: bool
    conclusive: bool


def is_initialized(oracle: ConeOracle, l: DivClass) -> bool:
    """Sections exist but disappear after one negative twist by H."""
    lat = oracle.lattice
    l = lat.check_class(l)
    return (oracle.h0(l) > 0
            and oracle.h0(lat.sub(l, lat.polarization)) == 0)


def is_acm_line_bundle(oracle: ConeOracle, l: DivClass) -> AcmReport:
    lat = oracle.lattice
    l = lat.check_class(l)
    if not oracle.is_effective(l):
        raise DomainError("ACM test needs an effective class")
    h = lat.polarization
    h2 = lat.h_square
    hl = lat.degree(l)
    # minimal m with H.L <= m*H^2 - 1
    m = max(1, -((-(hl + 1)) // h2))
    chain = tuple((k, oracle.cohomology(lat.sub(l, lat.scale(k, h))).h1)
                  for k in range(m + 1))
    chain_verdict = all(h1 == 0 for _, h1 in chain)
    in_carriers = (oracle.h0(l) >= 2 and oracle.h0(lat.sub(h, l)) >= 2)
    if in_carriers:
        shortcut = (oracle.cohomology(l).h1 == 0
                    and oracle.cohomology(lat.sub(h, l)).h1 == 0)
        if shortcut != chain_verdict:
            raise ConsistencyError(
                f"chain and two-term ACM tests disagree on {l}")
    conclusive = chain_verdict or in_carriers
    return AcmReport(is_acm=chain_verdict,
                     is_initialized=is_initialized(oracle, l),
                     m_used=m,
                     h1_chain=chain,
                     shortcut_used=in_carriers,
                     conclusive=conclusive)
