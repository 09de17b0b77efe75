"""Clifford index of a polarized K3 and the pencil bookkeeping behind it."""

from __future__ import annotations

from dataclasses import dataclass

from .cones import ConeOracle
from .errors import ConsistencyError, DomainError
from .lattice import DivClass


@dataclass(frozen=True)
class CliffordReport:
    genus: int
    A_L: tuple[DivClass, ...]
    mu: int | None
    A0_L: tuple[DivClass, ...]
    cliff: int
    gonality_range: tuple[int, int]
    witness: DivClass | None


def _check_preconditions(oracle: ConeOracle, l: DivClass) -> DivClass:
    lat = oracle.lattice
    l = lat.check_class(l)
    if not oracle.is_effective(l):
        raise DomainError("L must be effective")
    if lat.square(l) < 4:
        raise DomainError("L must be big: L.L >= 4")
    if not oracle.is_base_point_free(l):
        raise DomainError("L must be base point free")
    return l


def enumerate_A(oracle: ConeOracle, l: DivClass) -> list[DivClass]:
    """All classes D with h0(D) >= 2 and h0(L - D) >= 2, sorted.

    Both sides being effective pins 1 <= D.H <= L.H - 1, and the effective
    enumeration bound -2*(D.H)^2 <= D.D keeps every slice finite.
    """
    lat = oracle.lattice
    l = _check_preconditions(oracle, l)
    out = []
    for deg in range(1, lat.degree(l)):
        for d in lat.classes_with_degree(deg, -2 * deg * deg):
            if oracle.h0(d) >= 2 and oracle.h0(lat.sub(l, d)) >= 2:
                out.append(d)
    return sorted(out)


def mu(oracle: ConeOracle, l: DivClass) -> int | None:
    """min of D.(L-D) - 2 over the pencil carriers; None when none exist."""
    values = _mu_with_argmin(oracle, l)[0]
    return values


def _mu_with_argmin(oracle: ConeOracle, l: DivClass):
    lat = oracle.lattice
    carriers = enumerate_A(oracle, l)
    if not carriers:
        return None, ()
    scored = [(lat.intersect(d, lat.sub(l, d)) - 2, d) for d in carriers]
    best = min(s for s, _ in scored)
    if best < 0:
        raise ConsistencyError(f"mu(L) = {best} < 0")
    return best, tuple(d for s, d in scored if s == best)


def clifford_index(oracle: ConeOracle, l: DivClass) -> CliffordReport:
    """Clifford index min(floor((g-1)/2), mu(L)) with the generic fallback
    when no pencil carrier exists, plus the low-square witness check."""
    lat = oracle.lattice
    l = _check_preconditions(oracle, l)
    g = lat.genus(l)
    generic = (g - 1) // 2
    carriers = tuple(enumerate_A(oracle, l))
    mu_value, argmin = _mu_with_argmin(oracle, l)
    cliff = generic if mu_value is None else min(generic, mu_value)
    witness = None
    if mu_value is not None and cliff < generic:
        # some minimizer must satisfy 0 <= D^2 <= c+2 and 2 D^2 <= D.L,
        # equality in either bound only for L = 2D
        for d in argmin:
            d2 = lat.square(d)
            dl = lat.intersect(d, l)
            if not (0 <= d2 <= cliff + 2 and 2 * d2 <= dl):
                continue
            is_double = l == lat.scale(2, d)
            if (d2 == cliff + 2 or 2 * d2 == dl) and not is_double:
                continue
            witness = d
            break
        if witness is None:
            raise ConsistencyError(
                "no Clifford minimizer satisfies the low-square bounds")
    return CliffordReport(genus=g, A_L=carriers, mu=mu_value, A0_L=argmin,
                          cliff=cliff, gonality_range=(cliff + 2, cliff + 3),
                          witness=witness)
