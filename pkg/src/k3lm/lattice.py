"""Even hyperbolic lattices of signature (1, rho-1) with an ample polarization.

The lattice is the ambient arithmetic world: every other module works
through the exact integer pairing defined here.  Divisor classes are plain
integer tuples in the chosen basis; Python's unbounded integers make
overflow impossible by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

from .errors import DomainError, LatticeError
from .shortvec import short_vectors

DivClass = tuple[int, ...]


def _char_poly(matrix) -> list[int]:
    """Integer coefficients [1, c1, ..., cn] of det(xI - A), via the
    Faddeev-LeVerrier recursion over exact rationals."""
    n = len(matrix)
    a = [[Fraction(matrix[i][j]) for j in range(n)] for i in range(n)]
    prev = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    coeffs = [Fraction(1)]
    for k in range(1, n + 1):
        am = [[sum(a[i][t] * prev[t][j] for t in range(n)) for j in range(n)]
              for i in range(n)]
        ck = -sum(am[i][i] for i in range(n)) / k
        coeffs.append(ck)
        prev = [[am[i][j] + (ck if i == j else 0) for j in range(n)]
                for i in range(n)]
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise LatticeError("characteristic polynomial is not integral")
        out.append(c.numerator)
    return out


def _sign_changes(seq) -> int:
    signs = [1 if c > 0 else -1 for c in seq if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _signature(gram) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts of a symmetric integer
    matrix.  All roots of the characteristic polynomial are real, so
    Descartes' rule of signs is exact."""
    coeffs = _char_poly(gram)
    n = len(gram)
    pos = _sign_changes(coeffs)
    neg = _sign_changes(c * (-1) ** k for k, c in enumerate(coeffs))
    return pos, neg, n - pos - neg


@dataclass(frozen=True)
class PicardLattice:
    """Even lattice of signature (1, rho-1) with a distinguished ample class.

    ``gram`` is the pairing in the basis; ``polarization`` the coordinates
    of the ample class H.  Construction validates everything and fails with
    LatticeError otherwise; instances are immutable and safe to share.
    """

    gram: tuple[tuple[int, ...], ...]
    polarization: DivClass
    basis_names: tuple[str, ...] | None = None

    @classmethod
    def from_data(cls, gram, polarization, basis_names=None) -> "PicardLattice":
        g = tuple(tuple(int(x) for x in row) for row in gram)
        h = tuple(int(x) for x in polarization)
        names = tuple(str(s) for s in basis_names) if basis_names else None
        return cls(g, h, names)

    def __post_init__(self):
        n = len(self.gram)
        if n == 0:
            raise LatticeError("empty Gram matrix")
        for row in self.gram:
            if len(row) != n:
                raise LatticeError("Gram matrix is not square")
        for i in range(n):
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise LatticeError("Gram matrix is not symmetric")
            if self.gram[i][i] % 2 != 0:
                raise LatticeError(
                    f"odd diagonal entry {self.gram[i][i]} at position {i}; "
                    "a K3 Picard lattice is even")
        pos, neg, zero = _signature(self.gram)
        if (pos, neg, zero) != (1, n - 1, 0):
            raise LatticeError(
                f"signature is ({pos},{neg}) with {zero} zero eigenvalue(s); "
                f"expected (1,{n - 1})")
        if self.basis_names is not None and len(self.basis_names) != n:
            raise LatticeError("basis_names length does not match rank")
        if len(self.polarization) != n:
            raise LatticeError("polarization length does not match rank")
        h = self.polarization
        h2 = self.intersect(h, h)
        if h2 <= 0:
            raise LatticeError(f"polarization has H.H = {h2} <= 0")
        # H is ample iff additionally no (-2)-class is orthogonal to it:
        # such a class (or its negative) would be an effective curve met
        # in degree zero.
        orth = self.roots_orthogonal_to(h)
        if orth:
            raise LatticeError(
                f"polarization is not ample: root {orth[0]} is orthogonal to H")

    # -- basic arithmetic ---------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def zero(self) -> DivClass:
        return (0,) * self.rank

    @cached_property
    def h_square(self) -> int:
        return self.intersect(self.polarization, self.polarization)

    def check_class(self, v) -> DivClass:
        w = tuple(int(x) for x in v)
        if len(w) != self.rank:
            raise DomainError(
                f"class has length {len(w)}, lattice rank is {self.rank}")
        return w

    def intersect(self, d1: DivClass, d2: DivClass) -> int:
        d1 = self.check_class(d1)
        d2 = self.check_class(d2)
        return sum(d1[i] * self.gram[i][j] * d2[j]
                   for i in range(self.rank) for j in range(self.rank))

    def square(self, d: DivClass) -> int:
        s = self.intersect(d, d)
        assert s % 2 == 0, "self-intersection must be even on an even lattice"
        return s

    def degree(self, d: DivClass) -> int:
        """Pairing against the polarization."""
        return self.intersect(d, self.polarization)

    def add(self, d1: DivClass, d2: DivClass) -> DivClass:
        return tuple(a + b for a, b in zip(self.check_class(d1),
                                           self.check_class(d2)))

    def sub(self, d1: DivClass, d2: DivClass) -> DivClass:
        return tuple(a - b for a, b in zip(self.check_class(d1),
                                           self.check_class(d2)))

    def neg(self, d: DivClass) -> DivClass:
        return tuple(-a for a in self.check_class(d))

    def scale(self, k: int, d: DivClass) -> DivClass:
        return tuple(k * a for a in self.check_class(d))

    def is_zero(self, d: DivClass) -> bool:
        return all(a == 0 for a in self.check_class(d))

    def euler_char(self, d: DivClass) -> int:
        """chi(D) = D^2/2 + 2 by Riemann-Roch on a K3."""
        return self.square(d) // 2 + 2

    def genus(self, d: DivClass) -> int:
        """Arithmetic genus D^2/2 + 1 of a member of |D|; needs D^2 >= -2."""
        s = self.square(d)
        if s < -2:
            raise DomainError(f"genus undefined: D.D = {s} < -2")
        return s // 2 + 1

    def primitive_part(self, d: DivClass) -> tuple[int, DivClass]:
        """Write D = k*F with k >= 1 and F primitive (coordinate gcd 1)."""
        d = self.check_class(d)
        if self.is_zero(d):
            raise DomainError("the zero class has no primitive part")
        k = gcd(*d) if len(d) > 1 else abs(d[0])
        return k, tuple(a // k for a in d)

    # -- bounded enumeration ------------------------------------------------

    def _positive_form(self, d: DivClass):
        """Integer Gram matrix of Q_D(v) = 2(v.D)^2 - (D.D)(v.v).

        Positive definite whenever D.D > 0, by the signature (1, rho-1):
        on D-perp it equals -(D.D) times a negative definite form, and it is
        positive on D itself.
        """
        d2 = self.square(d)
        if d2 <= 0:
            raise DomainError("reference class must have positive square")
        gd = [sum(self.gram[i][j] * d[j] for j in range(self.rank))
              for i in range(self.rank)]
        return [[2 * gd[i] * gd[j] - d2 * self.gram[i][j]
                 for j in range(self.rank)] for i in range(self.rank)]

    def classes_with_degree(self, degree: int, min_square: int) -> list[DivClass]:
        """All classes D with D.H = degree and D.D >= min_square, sorted.

        Finite because Q_H(D) = 2(D.H)^2 - (H.H)(D.D) is positive definite:
        the constraints pin Q_H(D) <= 2*degree^2 - (H.H)*min_square.
        """
        key = (degree, min_square)
        cached = self._enum_cache.get(key)
        if cached is not None:
            return cached
        bound = 2 * degree * degree - self.h_square * min_square
        found = [v for v in short_vectors(self._h_form, bound)
                 if self.degree(v) == degree]
        self._enum_cache[key] = found
        return found

    def roots_orthogonal_to(self, d: DivClass) -> list[DivClass]:
        """All roots (both signs) orthogonal to a class with D.D > 0.

        They live in the negative definite orthogonal complement, so
        Q_D(v) = 2*(D.D) pins the search.
        """
        d = self.check_class(d)
        form = self._positive_form(d)
        out = [v for v in short_vectors(form, 2 * self.square(d))
               if self.square(v) == -2 and self.intersect(v, d) == 0]
        return sorted(out)

    def classes_with_small_pairing(self, d: DivClass, square: int,
                                   max_pairing: int) -> list[DivClass]:
        """All v with v.v = square and 1 <= v.D <= max_pairing, for D.D > 0.

        Used for the very-ampleness obstruction search (square = 0,
        max_pairing = 2).  Finite since Q_D(v) <= 2*max_pairing^2 - D.D*square.
        """
        d = self.check_class(d)
        form = self._positive_form(d)
        bound = 2 * max_pairing * max_pairing - self.square(d) * square
        return sorted(v for v in short_vectors(form, bound)
                      if self.square(v) == square
                      and 1 <= self.intersect(v, d) <= max_pairing)

    @cached_property
    def _h_form(self):
        return self._positive_form(self.polarization)

    @cached_property
    def _enum_cache(self) -> dict:
        return {}
