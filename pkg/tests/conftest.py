import itertools
import random

import pytest

from k3lm import ConeOracle, LatticeError, PicardLattice


@pytest.fixture(scope="session")
def dm_lattice():
    """Degree-2 cover of the plane polarized by 3H', H'^2 = 2."""
    return PicardLattice.from_data([[2]], [3])


@pytest.fixture(scope="session")
def quartic_lattice():
    return PicardLattice.from_data([[4]], [1])


@pytest.fixture(scope="session")
def u_lattice():
    """Hyperbolic plane with polarization (1, 2)."""
    return PicardLattice.from_data([[0, 1], [1, 0]], [1, 2])


@pytest.fixture(scope="session")
def dm_oracle(dm_lattice):
    return ConeOracle(dm_lattice)


@pytest.fixture(scope="session")
def quartic_oracle(quartic_lattice):
    return ConeOracle(quartic_lattice)


@pytest.fixture(scope="session")
def u_oracle(u_lattice):
    return ConeOracle(u_lattice)


def random_rank2_lattices(count=5, seed=20240817, max_h_square=20):
    """Randomized even rank-2 lattices of signature (1,1) with an ample
    polarization of square >= 4, reproducible from the seed."""
    rng = random.Random(seed)
    found = []
    seen = set()
    while len(found) < count:
        a = rng.randint(-2, 3)
        c = rng.randint(-2, 3)
        b = rng.randint(0, 4)
        if 4 * a * c - b * b >= 0:
            continue
        gram = ((2 * a, b), (b, 2 * c))
        candidates = sorted(itertools.product(range(-4, 5), repeat=2),
                            key=lambda v: (abs(v[0]) + abs(v[1]), v))
        for h in candidates:
            try:
                lat = PicardLattice.from_data(gram, h)
            except LatticeError:
                continue
            if not 4 <= lat.h_square <= max_h_square:
                continue
            key = (gram, lat.polarization)
            if key in seen:
                break
            seen.add(key)
            found.append(lat)
            break
    return found


def brute_effective_sets(lattice, max_degree):
    """Independent effectivity oracle: the effective classes of degree
    <= max_degree are exactly the sums of Riemann-Roch-effective classes
    (square >= -2, positive degree).  Built degree by degree."""
    rr = {}
    for deg in range(1, max_degree + 1):
        rr[deg] = set(lattice.classes_with_degree(deg, -2))
    eff = {deg: set(rr[deg]) for deg in range(1, max_degree + 1)}
    for deg in range(2, max_degree + 1):
        for part in range(1, deg):
            for u in eff[deg - part]:
                for r in rr[part]:
                    eff[deg].add(lattice.add(u, r))
    return eff
