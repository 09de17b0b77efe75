"""Numerical analysis of rank-2 Lazarsfeld-Mukai bundles.

Given the polarization H (the class of the curve C) and the pencil degree
d = c2, we enumerate every line bundle L1 that could start a
Harder-Narasimhan filtration, applying only conditions that are provably
necessary.  An empty enumeration therefore certifies slope semistability;
a nonempty one is inconclusive.  Each surviving candidate carries the
constructive ACM witness obtained by stripping base (-2)-curves from L1.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .acm import is_acm_line_bundle
from .clifford import CliffordReport, clifford_index
from .cones import ConeOracle
from .errors import ConsistencyError, DomainError
from .lattice import DivClass

CERTIFIED_SEMISTABLE = "CERTIFIED_SEMISTABLE"
INCONCLUSIVE = "INCONCLUSIVE"

STABLE = "stable"
STABILITY_UNDETERMINED = "semistable (stability undetermined)"


@dataclass(frozen=True)
class LMBundleSpec:
    """Numerical data of a rank-2 Lazarsfeld-Mukai bundle E with c1 = H,
    c2 = d, attached to a pencil on a curve of genus g = H^2/2 + 1."""

    H: DivClass
    d: int
    g: int
    r: int
    h0_E: int
    rho: int
    slope_numerator: int
    quotient_filter_valid: bool
    non_simple: bool
    H_very_ample: bool


@dataclass
class DestabCandidate:
    """A numerically admissible start (L1, L2 = H - L1) of an HN filtration,
    with the scheme length d - L1.L2 and per-criterion flags."""

    L1: DivClass
    L2: DivClass
    length_Zprime: int
    L1_nef: bool
    L1_acm_initialized: bool
    h1_L2_zero: bool
    gonality_window: bool | None
    witness_acm_line_bundle: DivClass | None


@dataclass(frozen=True)
class DMExtensionCandidate:
    """A numerically admissible Donagi-Morrison extension (M, N)."""

    M: DivClass
    N: DivClass
    length: int
    splits: bool


@dataclass
class Certificate:
    verdict: str
    candidates: list[DestabCandidate]
    filters_applied: list[str]
    stability_note: str | None
    degree_slices: tuple[int, int]


def lm_invariants(oracle: ConeOracle, h: DivClass, d: int) -> LMBundleSpec:
    lat = oracle.lattice
    h = lat.check_class(h)
    if not oracle.is_ample(h):
        raise DomainError("c1 must be ample")
    h2 = lat.square(h)
    if h2 < 4:
        raise DomainError(f"need H.H >= 4, got {h2}")
    g = h2 // 2 + 1
    if not 2 <= d <= g + 1:
        raise DomainError(
            f"pencil degree d = {d} violates 2 <= d <= g + 1 = {g + 1}")
    return LMBundleSpec(
        H=h,
        d=d,
        g=g,
        r=1,
        h0_E=g - d + 3,
        rho=2 * d - g - 2,
        slope_numerator=h2,
        quotient_filter_valid=d <= g,
        non_simple=2 * d - g - 2 < 0,
        H_very_ample=lat.square(h) >= 4 and oracle.is_very_ample(h),
    )


def _map_slices(fn, slices, parallel: bool):
    if parallel:
        with ThreadPoolExecutor() as pool:
            return list(pool.map(fn, slices))
    return [fn(s) for s in slices]


def destabilizer_scan(oracle: ConeOracle, spec: LMBundleSpec,
                      strict: bool = False, gonality_mode: bool = False,
                      parallel: bool = False) -> list[DestabCandidate]:
    """Complete list of L1 passing every applied necessary condition.

    Applied in order: slope threshold L1.H >= H^2/2 + 1 (slicing);
    base-point-free nontrivial quotient (only when d <= g); L1.L2 <= d;
    the section bound h0(L1) <= h0(E); strict adds h1(L2) = 0;
    gonality mode adds the Clifford window around mu(H).
    """
    lat = oracle.lattice
    h = spec.H
    h2 = spec.slope_numerator
    cliff: CliffordReport | None = None
    if gonality_mode:
        cliff = clifford_index(oracle, h)
        lo_g, hi_g = cliff.gonality_range
        if not lo_g <= spec.d <= hi_g:
            raise DomainError(
                f"gonality mode: d = {spec.d} is outside the gonality window "
                f"[{lo_g}, {hi_g}] of the polarization")

    def scan_slice(deg: int) -> list[DestabCandidate]:
        found = []
        for l1 in lat.classes_with_degree(deg, 2):
            cand = _examine(oracle, spec, l1, strict, cliff)
            if cand is not None:
                found.append(cand)
        return found

    slices = range(h2 // 2 + 1, h2)
    out = [c for chunk in _map_slices(scan_slice, slices, parallel)
           for c in chunk]
    out.sort(key=lambda c: (lat.degree(c.L1), c.L1))
    return out


def _examine(oracle: ConeOracle, spec: LMBundleSpec, l1: DivClass,
             strict: bool, cliff: CliffordReport | None):
    lat = oracle.lattice
    l2 = lat.sub(spec.H, l1)
    if lat.square(l1) < 2:
        return None
    if spec.quotient_filter_valid:
        # the saturated quotient is base point free and not trivial
        if lat.square(l2) < 0 or not oracle.is_effective(l2):
            return None
        if not oracle.is_nef(l2) or not oracle.is_base_point_free(l2):
            return None
    l1l2 = lat.intersect(l1, l2)
    if l1l2 > spec.d:
        return None
    if oracle.h0(l1) > spec.h0_E:
        return None
    h1_l2 = oracle.cohomology(l2).h1
    if strict and h1_l2 != 0:
        return None
    gonality_window = None
    if cliff is not None:
        mu_h = cliff.mu
        c = cliff.cliff
        gonality_window = (mu_h is not None
                           and c <= mu_h <= l1l2 - 2 <= c + 1)
        if not gonality_window:
            return None
        if l1l2 - 2 == mu_h and oracle.cohomology(l1).h1 != 0:
            raise ConsistencyError(
                f"counterexample: {l1} minimizes the pencil pairing but has "
                "h1 != 0")
    cand = DestabCandidate(
        L1=l1,
        L2=l2,
        length_Zprime=spec.d - l1l2,
        L1_nef=oracle.is_nef(l1),
        L1_acm_initialized=False,
        h1_L2_zero=h1_l2 == 0,
        gonality_window=gonality_window,
        witness_acm_line_bundle=None,
    )
    acm_report = is_acm_line_bundle(oracle, l1)
    cand.L1_acm_initialized = acm_report.is_acm and acm_report.is_initialized
    cand.witness_acm_line_bundle = acm_witness(oracle, cand)
    return cand


def acm_witness(oracle: ConeOracle, cand: DestabCandidate) -> DivClass:
    """The initialized ACM line bundle of square >= 2 sitting inside L1.

    Nef L1 is its own witness.  Otherwise base (-2)-curves are stripped
    one by one; the bookkeeping checks that the growing quotient stays
    base point free and big at every step, exactly as the inductive
    argument requires.  A square-zero residue kF is repaired by adding
    back a stripped root meeting F once.
    """
    lat = oracle.lattice
    l1, l2 = cand.L1, cand.L2
    current = l1
    quotient = l2
    stripped: list[DivClass] = []
    while True:
        if lat.is_zero(current) or not oracle.is_effective(current):
            raise ConsistencyError(
                f"witness search for {l1} lost effectivity at {current}")
        if oracle.nef_violation(current) is None:
            break
        g = oracle._reduction_root(current)
        if g is None:
            raise ConsistencyError(
                f"witness search for {l1}: non-root fixed part")
        new_quotient = lat.add(quotient, g)
        if not (oracle.is_effective(new_quotient)
                and lat.square(new_quotient) > 0
                and oracle.is_nef(new_quotient)
                and oracle.is_base_point_free(new_quotient)):
            raise ConsistencyError(
                f"witness search for {l1}: quotient {new_quotient} is not "
                "base point free and big")
        current = lat.sub(current, g)
        quotient = new_quotient
        stripped.append(g)
    witness = current
    if lat.square(witness) == 0:
        k, f = lat.primitive_part(witness)
        if k < 2:
            raise ConsistencyError(
                f"witness search for {l1}: elliptic residue with k = {k}")
        bridge = next((g for g in stripped if lat.intersect(f, g) == 1), None)
        if bridge is None:
            raise ConsistencyError(
                f"witness search for {l1}: no stripped (-2)-curve meets the "
                "elliptic fiber once")
        witness = lat.add(witness, bridge)
    report = is_acm_line_bundle(oracle, witness)
    rest = lat.sub(l1, witness)
    if not (lat.square(witness) >= 2
            and report.is_acm
            and report.is_initialized
            and (lat.is_zero(rest) or oracle.is_effective(rest))):
        raise ConsistencyError(
            f"witness {witness} for {l1} violates its contract")
    return witness


def semistable_certificate(oracle: ConeOracle, spec: LMBundleSpec,
                           strict: bool = False, gonality_mode: bool = False,
                           parallel: bool = False) -> Certificate:
    """Empty scan => certified slope semistable; otherwise inconclusive
    (the filters are necessary conditions only)."""
    candidates = destabilizer_scan(oracle, spec, strict=strict,
                                   gonality_mode=gonality_mode,
                                   parallel=parallel)
    filters = ["slope_threshold", "square_bound", "c2_bound", "section_bound"]
    if spec.quotient_filter_valid:
        filters.insert(1, "bpf_quotient")
    if strict:
        filters.append("h1_L2_zero")
    if gonality_mode:
        filters.append("gonality_window")
    verdict = CERTIFIED_SEMISTABLE if not candidates else INCONCLUSIVE
    note = None
    if verdict == CERTIFIED_SEMISTABLE:
        note = STABILITY_UNDETERMINED
        if _rank_one_stability(oracle, spec):
            note = STABLE
    h2 = spec.slope_numerator
    return Certificate(verdict=verdict, candidates=candidates,
                       filters_applied=filters, stability_note=note,
                       degree_slices=(h2 // 2 + 1, h2 - 1))


def _rank_one_stability(oracle: ConeOracle, spec: LMBundleSpec) -> bool:
    """Rank-1 lattice refinement: a semistable-but-unstable bundle would
    have an equal-slope base-point-free nontrivial quotient of degree
    H^2/2, which the degree arithmetic can rule out mechanically."""
    lat = oracle.lattice
    if lat.rank != 1 or not spec.quotient_filter_valid:
        return False
    if not spec.H_very_ample:
        return False
    half = spec.slope_numerator // 2
    if half < 3:
        # a base point free nontrivial class on an embedded K3 has degree >= 3
        return True
    for q in lat.classes_with_degree(half, -2 * half * half):
        if not oracle.is_effective(q) or lat.is_zero(q):
            continue
        if oracle.is_nef(q) and oracle.is_base_point_free(q):
            return False
    return True


def dm_extension_scan(oracle: ConeOracle, spec: LMBundleSpec,
                      parallel: bool = False) -> list[DMExtensionCandidate]:
    """All Donagi-Morrison extension shapes (M, N): M + N = H, both with
    two sections, N base point free, M.N <= d.  Pairs whose vanishing
    h0(M - N) = 0 would force an empty subscheme are dropped when the
    length is positive.  The splits flag applies the vanishing criterion
    on either side of a length-zero extension."""
    lat = oracle.lattice
    h = spec.H

    def scan_slice(deg: int) -> list[DMExtensionCandidate]:
        found = []
        for m in lat.classes_with_degree(deg, -2 * deg * deg):
            n = lat.sub(h, m)
            if oracle.h0(m) < 2 or oracle.h0(n) < 2:
                continue
            if not oracle.is_nef(n) or not oracle.is_base_point_free(n):
                continue
            mn = lat.intersect(m, n)
            if mn > spec.d:
                continue
            length = spec.d - mn
            m_minus_n_sections = oracle.h0(lat.sub(m, n))
            if m_minus_n_sections == 0 and length > 0:
                continue
            splits = (m_minus_n_sections == 0
                      or (length == 0 and oracle.h0(lat.sub(n, m)) == 0))
            found.append(DMExtensionCandidate(M=m, N=n, length=length,
                                              splits=splits))
        return found

    out = [c for chunk in
           _map_slices(scan_slice, range(1, lat.square(h)), parallel)
           for c in chunk]
    out.sort(key=lambda c: (lat.degree(c.M), c.M))
    return out
