import pytest

from k3lm import (CERTIFIED_SEMISTABLE, INCONCLUSIVE, ConeOracle, DomainError,
                  acm_witness, destabilizer_scan, dm_extension_scan,
                  is_acm_line_bundle, is_initialized, lm_invariants,
                  semistable_certificate)

from conftest import random_rank2_lattices


def test_lm_invariants_dm(dm_oracle):
    spec = lm_invariants(dm_oracle, (3,), 5)
    assert (spec.g, spec.h0_E, spec.rho) == (10, 8, -2)
    assert spec.non_simple
    assert spec.quotient_filter_valid


def test_lm_invariants_quartic(quartic_oracle):
    spec = lm_invariants(quartic_oracle, (1,), 3)
    assert (spec.g, spec.h0_E, spec.rho) == (3, 3, 1)
    assert not spec.non_simple


def test_lm_invariants_rejections(dm_oracle, quartic_oracle):
    with pytest.raises(DomainError):
        lm_invariants(quartic_oracle, (1,), 5)  # d = g + 2
    with pytest.raises(DomainError):
        lm_invariants(dm_oracle, (3,), 1)
    with pytest.raises(DomainError):
        lm_invariants(dm_oracle, (-3,), 5)  # not ample


def test_scan_quartic_is_empty(quartic_oracle):
    spec = lm_invariants(quartic_oracle, (1,), 3)
    assert destabilizer_scan(quartic_oracle, spec) == []
    cert = semistable_certificate(quartic_oracle, spec)
    assert cert.verdict == CERTIFIED_SEMISTABLE
    assert cert.stability_note == "stable"


def test_scan_dm_candidates(dm_oracle):
    for d in (4, 5, 6, 7):
        spec = lm_invariants(dm_oracle, (3,), d)
        cands = destabilizer_scan(dm_oracle, spec)
        assert len(cands) == 1
        c = cands[0]
        assert (c.L1, c.L2, c.length_Zprime) == ((2,), (1,), d - 4)
        assert c.L1_nef and c.L1_acm_initialized and c.h1_L2_zero
        assert c.witness_acm_line_bundle == (2,)
    for d in (8, 9, 10):
        spec = lm_invariants(dm_oracle, (3,), d)
        assert destabilizer_scan(dm_oracle, spec) == []


def test_certificate_dm_inconclusive(dm_oracle):
    spec = lm_invariants(dm_oracle, (3,), 6)
    cert = semistable_certificate(dm_oracle, spec)
    assert cert.verdict == INCONCLUSIVE
    assert len(cert.candidates) == 1
    spec = lm_invariants(dm_oracle, (3,), 9)
    assert semistable_certificate(dm_oracle, spec).verdict == \
        CERTIFIED_SEMISTABLE


def test_scan_u_lattice(u_oracle):
    spec = lm_invariants(u_oracle, (1, 2), 3)
    cands = destabilizer_scan(u_oracle, spec)
    assert len(cands) == 1
    c = cands[0]
    assert (c.L1, c.L2, c.length_Zprime) == ((1, 1), (0, 1), 2)
    assert c.witness_acm_line_bundle == (1, 1)


def test_scan_filter_monotonicity(dm_oracle, u_oracle):
    for oracle, h, d in ((dm_oracle, (3,), 5), (u_oracle, (1, 2), 3)):
        spec = lm_invariants(oracle, h, d)
        plain = {tuple(c.L1) for c in destabilizer_scan(oracle, spec)}
        strict = {tuple(c.L1) for c in
                  destabilizer_scan(oracle, spec, strict=True)}
        assert strict <= plain
        try:
            gonal = {tuple(c.L1) for c in
                     destabilizer_scan(oracle, spec, gonality_mode=True)}
        except DomainError:
            continue  # polarization not bpf or d outside the window
        assert gonal <= plain


def test_gonality_mode_rejects_off_window_degree(dm_oracle):
    spec = lm_invariants(dm_oracle, (3,), 7)  # gonality window is [4, 5]
    with pytest.raises(DomainError):
        destabilizer_scan(dm_oracle, spec, gonality_mode=True)


def test_gonality_mode_dm(dm_oracle):
    for d in (4, 5):
        spec = lm_invariants(dm_oracle, (3,), d)
        cands = destabilizer_scan(dm_oracle, spec, gonality_mode=True)
        assert len(cands) == 1
        assert cands[0].gonality_window


def test_parallel_scan_is_identical(dm_oracle):
    spec = lm_invariants(dm_oracle, (3,), 5)
    assert destabilizer_scan(dm_oracle, spec) == \
        destabilizer_scan(dm_oracle, spec, parallel=True)
    assert dm_extension_scan(dm_oracle, spec) == \
        dm_extension_scan(dm_oracle, spec, parallel=True)


def test_dm_extension_scan(dm_oracle, quartic_oracle):
    lat = dm_oracle.lattice
    spec = lm_invariants(dm_oracle, (3,), 4)
    cands = dm_extension_scan(dm_oracle, spec)
    degrees = {(lat.degree(c.M), lat.degree(c.N)) for c in cands}
    assert degrees == {(6, 12), (12, 6)}
    assert all(lat.intersect(c.M, c.N) == 4 for c in cands)
    assert all(c.length == 0 and c.splits for c in cands)

    spec = lm_invariants(dm_oracle, (3,), 5)
    cands = dm_extension_scan(dm_oracle, spec)
    assert len(cands) == 1
    assert (cands[0].M, cands[0].N, cands[0].length) == ((2,), (1,), 1)

    spec = lm_invariants(quartic_oracle, (1,), 3)
    assert dm_extension_scan(quartic_oracle, spec) == []


def test_witness_contract_over_random_lattices():
    lattices = random_rank2_lattices(count=5)
    assert len(lattices) >= 5
    total = 0
    for lat in lattices:
        oracle = ConeOracle(lat)
        g = lat.h_square // 2 + 1
        for d in range(2, g + 2):
            spec = lm_invariants(oracle, lat.polarization, d)
            modes = [dict(), dict(strict=True)]
            modes.append(dict(gonality_mode=True))
            for kwargs in modes:
                try:
                    cands = destabilizer_scan(oracle, spec, **kwargs)
                except DomainError:
                    continue
                for c in cands:
                    total += 1
                    w = c.witness_acm_line_bundle
                    assert w is not None
                    assert lat.square(w) >= 2
                    report = is_acm_line_bundle(oracle, w)
                    assert report.is_acm and report.is_initialized
                    rest = lat.sub(c.L1, w)
                    assert lat.is_zero(rest) or oracle.is_effective(rest)
                    # replay the candidate inequalities
                    assert lat.add(c.L1, c.L2) == lat.polarization
                    assert lat.degree(c.L1) >= lat.h_square // 2 + 1
                    assert lat.square(c.L1) >= 2
                    assert lat.square(c.L2) >= 0 or not \
                        spec.quotient_filter_valid
                    assert lat.intersect(c.L1, c.L2) <= d
                    assert c.length_Zprime == d - lat.intersect(c.L1, c.L2)
    assert total > 0  # the suite must actually exercise candidates


def test_witness_recomputation_matches(dm_oracle):
    spec = lm_invariants(dm_oracle, (3,), 5)
    for c in destabilizer_scan(dm_oracle, spec):
        assert acm_witness(dm_oracle, c) == c.witness_acm_line_bundle
