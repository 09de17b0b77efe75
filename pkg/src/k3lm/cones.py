"""Cone membership tests and line bundle cohomology on a K3 Picard lattice.

Everything here is a pure query over an immutable PicardLattice plus
idempotent memo tables, so an oracle can be shared across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConsistencyError, DomainError
from .lattice import DivClass, PicardLattice


@dataclass(frozen=True)
class CohomologyProfile:
    """(h0, h1, h2) of a class together with its fixed/mobile decomposition.

    The decomposition fields are None when the class has no sections.
    ``elliptic_multiple`` is (k, F) when the mobile part is k times a
    primitive elliptic class F; then h1 = k - 1.
    """

    h0: int
    h1: int
    h2: int
    fixed_part: DivClass | None
    mobile_part: DivClass | None
    elliptic_multiple: tuple[int, DivClass] | None = None


@dataclass(frozen=True)
class ConeFlags:
    """Per-cone verdicts for one class.  Predicates whose preconditions do
    not hold are None.  ``witnesses`` maps a flag name to the violating
    class (or tuple of classes) when the flag is False."""

    effective: bool
    nef: bool | None
    base_point_free: bool | None
    ample: bool
    very_ample: bool | None
    witnesses: dict


class ConeOracle:
    """Decision procedures for the effective/nef/ample cones and h^i."""

    def __init__(self, lattice: PicardLattice):
        self.lattice = lattice
        self._effective: dict[DivClass, bool] = {}
        self._irreducible: dict[DivClass, bool] = {}
        self._roots_at_degree: dict[int, list[DivClass]] = {}
        self._eff_at_degree: dict[int, list[DivClass]] = {}
        self._h0: dict[DivClass, tuple] = {}

    # -- effectivity ---------------------------------------------------------

    def is_effective(self, d: DivClass) -> bool:
        """Membership in the effective monoid.

        The zero class counts as effective (h0 = 1).  Classes with
        D.D >= -2 and positive degree are effective by Riemann-Roch
        (chi >= 1 and h2 = 0).  The remaining classes are decided by
        peeling off effective roots, which is complete because every
        component of an effective class with D.D < -2 region must ride
        on a (-2)-curve of smaller degree.
        """
        lat = self.lattice
        d = lat.check_class(d)
        cached = self._effective.get(d)
        if cached is not None:
            return cached
        if lat.is_zero(d):
            result = True
        else:
            deg = lat.degree(d)
            if deg <= 0:
                result = False
            elif lat.square(d) >= -2:
                result = True
            else:
                result = any(self.is_effective(lat.sub(d, g))
                             for g in self.effective_roots_up_to(deg))
        self._effective[d] = result
        return result

    def effective_roots_up_to(self, degree_cap: int) -> list[DivClass]:
        """All roots G with G.G = -2 and 0 < G.H <= degree_cap, sorted
        lexicographically.  Such a root is automatically effective."""
        if degree_cap < 1:
            raise DomainError("degree cap must be positive")
        out = []
        for deg in range(1, degree_cap + 1):
            out.extend(self._roots_at(deg))
        out.sort()
        return out

    def _roots_at(self, degree: int) -> list[DivClass]:
        cached = self._roots_at_degree.get(degree)
        if cached is None:
            cached = [v for v in self.lattice.classes_with_degree(degree, -2)
                      if self.lattice.square(v) == -2]
            self._roots_at_degree[degree] = cached
        return cached

    def effective_classes_with_degree(self, degree: int) -> list[DivClass]:
        """All effective classes of the given positive degree.

        Completeness: a decomposition into irreducible curves C_i with
        C_i^2 >= -2 and sum of degrees equal to ``degree`` forces
        D.D >= -2*degree^2, the documented enumeration lower bound.
        """
        if degree < 1:
            raise DomainError("degree must be positive")
        cached = self._eff_at_degree.get(degree)
        if cached is None:
            cached = [v for v in
                      self.lattice.classes_with_degree(degree, -2 * degree * degree)
                      if self.is_effective(v)]
            self._eff_at_degree[degree] = cached
        return cached

    def is_irreducible_root(self, g: DivClass) -> bool:
        """True when the root admits no split into two nonzero effective
        classes.  Both summands would have smaller positive degree."""
        lat = self.lattice
        g = lat.check_class(g)
        if lat.square(g) != -2 or not self.is_effective(g):
            raise DomainError("is_irreducible_root needs an effective root")
        cached = self._irreducible.get(g)
        if cached is not None:
            return cached
        deg = lat.degree(g)
        result = True
        for part_deg in range(1, deg):
            for a in self.effective_classes_with_degree(part_deg):
                if self.is_effective(lat.sub(g, a)):
                    result = False
                    break
            if not result:
                break
        self._irreducible[g] = result
        return result

    # -- nef / base point free / ample --------------------------------------

    def nef_violation(self, d: DivClass) -> DivClass | None:
        """A root met negatively by an effective class, or None.

        Soundness of the degree cap: a violating irreducible (-2)-curve is
        a component of D, hence its degree under the ample polarization is
        at most deg D.
        """
        lat = self.lattice
        d = lat.check_class(d)
        if not self.is_effective(d):
            raise DomainError("nefness is only decided for effective classes")
        if lat.is_zero(d):
            raise DomainError("the zero class is not analyzed by cone tests")
        for g in self.effective_roots_up_to(lat.degree(d)):
            if lat.intersect(d, g) < 0:
                return g
        return None

    def is_nef(self, d: DivClass) -> bool:
        return self.nef_violation(d) is None

    def bpf_obstruction(self, d: DivClass):
        """Saint-Donat obstruction (k, F, G) with D = kF + G, F.G = 1,
        k >= 2, F elliptic and nef, G an irreducible root; None if base
        point free."""
        lat = self.lattice
        d = lat.check_class(d)
        if lat.is_zero(d):
            raise DomainError("the zero class is not analyzed by cone tests")
        if not self.is_nef(d):
            raise DomainError("base point freeness needs a nef class")
        for g in self.effective_roots_up_to(lat.degree(d)):
            m = lat.sub(d, g)
            if lat.is_zero(m):
                continue
            k, f = lat.primitive_part(m)
            if k < 2 or lat.square(f) != 0 or lat.degree(f) <= 0:
                continue
            if lat.intersect(f, g) != 1:
                continue
            if not self.is_nef(f):
                continue
            if not self.is_irreducible_root(g):
                continue
            return k, f, g
        return None

    def is_base_point_free(self, d: DivClass) -> bool:
        return self.bpf_obstruction(d) is None

    def ample_violation(self, d: DivClass):
        """Reason D fails to be ample, or None."""
        lat = self.lattice
        d = lat.check_class(d)
        if lat.is_zero(d) or lat.square(d) <= 0 or lat.degree(d) <= 0:
            return ("numerical", d)
        g = self.nef_violation(d)
        if g is not None:
            return ("root", g)
        orth = lat.roots_orthogonal_to(d)
        if orth:
            effective = [g for g in orth if lat.degree(g) > 0]
            return ("orthogonal_root", effective[0] if effective else orth[0])
        return None

    def is_ample(self, d: DivClass) -> bool:
        return self.ample_violation(d) is None

    def very_ample_violation(self, d: DivClass):
        lat = self.lattice
        d = lat.check_class(d)
        if lat.square(d) < 4:
            raise DomainError("very-ampleness test needs D.D >= 4")
        if not self.is_nef(d):
            raise DomainError("very-ampleness test needs a nef class")
        # (i) elliptic classes of degree 1 or 2 against D
        for e in lat.classes_with_small_pairing(d, 0, 2):
            if lat.degree(e) > 0:
                return ("elliptic_low_degree", e)
        # (ii) D twice a class of square 2
        if all(c % 2 == 0 for c in d):
            e = tuple(c // 2 for c in d)
            if lat.square(e) == 2:
                return ("double_class", e)
        # (iii) roots orthogonal to D
        orth = lat.roots_orthogonal_to(d)
        if orth:
            effective = [g for g in orth if lat.degree(g) > 0]
            return ("orthogonal_root", effective[0] if effective else orth[0])
        return None

    def is_very_ample(self, d: DivClass) -> bool:
        return self.very_ample_violation(d) is None

    # -- cohomology ----------------------------------------------------------

    def _h0_decomposition(self, d: DivClass):
        """(h0, fixed, mobile, elliptic_multiple) of a class.

        Sections are counted by stripping base (-2)-curves: subtracting an
        irreducible root met negatively does not change h0, and once the
        residue M is nef its sections are chi(M) for M^2 > 0, k+1 for an
        elliptic multiple kF, and 1 for M = 0.
        """
        lat = self.lattice
        d = lat.check_class(d)
        cached = self._h0.get(d)
        if cached is not None:
            return cached
        if not self.is_effective(d):
            result = (0, None, None, None)
        elif lat.is_zero(d):
            result = (1, lat.zero, lat.zero, None)
        else:
            mobile = d
            while True:
                violation = self.nef_violation(mobile)
                if violation is None:
                    break
                step = self._reduction_root(mobile)
                if step is None:
                    raise ConsistencyError(
                        f"fixed part of {d} is not a union of (-2)-curves: "
                        f"root {violation} violates nefness but no "
                        "irreducible root does")
                mobile = lat.sub(mobile, step)
                if lat.is_zero(mobile):
                    break
                if not self.is_effective(mobile):
                    raise ConsistencyError(
                        f"reduction of {d} produced the non-effective "
                        f"residue {mobile}")
            fixed = lat.sub(d, mobile)
            if lat.is_zero(mobile):
                result = (1, fixed, mobile, None)
            elif lat.square(mobile) > 0:
                result = (lat.square(mobile) // 2 + 2, fixed, mobile, None)
            else:
                k, f = lat.primitive_part(mobile)
                result = (k + 1, fixed, mobile, (k, f))
        self._h0[d] = result
        return result

    def _reduction_root(self, m: DivClass) -> DivClass | None:
        """Irreducible root met negatively by m, smallest degree first,
        lexicographic tie-break."""
        lat = self.lattice
        for deg in range(1, lat.degree(m) + 1):
            for g in self._roots_at(deg):
                if lat.intersect(m, g) < 0 and self.is_irreducible_root(g):
                    return g
        return None

    def h0(self, d: DivClass) -> int:
        return self._h0_decomposition(d)[0]

    def cohomology(self, d: DivClass) -> CohomologyProfile:
        lat = self.lattice
        d = lat.check_class(d)
        h0, fixed, mobile, elliptic = self._h0_decomposition(d)
        h2 = self.h0(lat.neg(d))
        h1 = h0 + h2 - lat.euler_char(d)
        if h1 < 0:
            raise ConsistencyError(
                f"h1({d}) = {h1} < 0: chi bookkeeping is inconsistent")
        return CohomologyProfile(h0=h0, h1=h1, h2=h2, fixed_part=fixed,
                                 mobile_part=mobile,
                                 elliptic_multiple=elliptic)

    # -- aggregate -----------------------------------------------------------

    def cone_flags(self, d: DivClass, full: bool = False) -> ConeFlags:
        """Evaluate all cone predicates whose preconditions hold.

        ``full`` additionally runs the base-point-free and very-ample
        tests (both need a nef class)."""
        lat = self.lattice
        d = lat.check_class(d)
        if lat.is_zero(d):
            raise DomainError("the zero class is not analyzed by cone tests")
        witnesses: dict = {}
        effective = self.is_effective(d)
        nef = None
        bpf = None
        very = None
        if effective:
            violation = self.nef_violation(d)
            nef = violation is None
            if violation is not None:
                witnesses["nef"] = violation
        ample_violation = self.ample_violation(d)
        ample = ample_violation is None
        if ample_violation is not None:
            witnesses["ample"] = ample_violation
        if full and nef:
            obstruction = self.bpf_obstruction(d)
            bpf = obstruction is None
            if obstruction is not None:
                witnesses["base_point_free"] = obstruction
            if lat.square(d) >= 4:
                va = self.very_ample_violation(d)
                very = va is None
                if va is not None:
                    witnesses["very_ample"] = va
        flags = ConeFlags(effective=effective, nef=nef, base_point_free=bpf,
                          ample=ample, very_ample=very, witnesses=witnesses)
        if flags.very_ample and not flags.ample:
            raise ConsistencyError("very ample class failed the ample test")
        if (flags.ample or flags.base_point_free) and not flags.nef:
            raise ConsistencyError("cone inclusion chain violated")
        return flags
