import pytest

from k3lm import DomainError, is_acm_line_bundle, is_initialized


def test_acm_examples(dm_oracle):
    assert is_acm_line_bundle(dm_oracle, (2,)).is_acm
    assert is_acm_line_bundle(dm_oracle, (1,)).is_acm
    report = is_acm_line_bundle(dm_oracle, (3,))  # L = H
    assert not report.is_initialized


def test_acm_rejects_non_effective(dm_oracle):
    with pytest.raises(DomainError):
        is_acm_line_bundle(dm_oracle, (-1,))


def test_is_initialized(dm_oracle):
    assert is_initialized(dm_oracle, (2,))
    assert is_initialized(dm_oracle, (0,))  # the trivial bundle
    assert not is_initialized(dm_oracle, (3,))  # L = H
    assert not is_initialized(dm_oracle, (-1,))  # no sections at all


def test_minimal_twist_count(dm_oracle, quartic_oracle):
    # H.L = 12, H.H = 18: one twist suffices
    assert is_acm_line_bundle(dm_oracle, (2,)).m_used == 1
    # H.L = 12, H.H = 4: need m = 4 (12 <= 4m - 1)
    assert is_acm_line_bundle(quartic_oracle, (3,)).m_used == 4


def test_chain_records_h1_values(dm_oracle):
    report = is_acm_line_bundle(dm_oracle, (2,))
    assert report.h1_chain == ((0, 0), (1, 0))
    assert report.conclusive


def _carriers_of_polarization(oracle):
    """D with h0(D) >= 2 and h0(H - D) >= 2, by exhaustive degree slices."""
    lat = oracle.lattice
    h = lat.polarization
    out = []
    for deg in range(1, lat.h_square):
        for d in lat.classes_with_degree(deg, -2 * deg * deg):
            if oracle.h0(d) >= 2 and oracle.h0(lat.sub(h, d)) >= 2:
                out.append(d)
    return out


def test_shortcut_agrees_on_all_carriers(dm_oracle, u_oracle):
    for oracle in (dm_oracle, u_oracle):
        carriers = _carriers_of_polarization(oracle)
        assert carriers
        for d in carriers:
            report = is_acm_line_bundle(oracle, d)
            assert report.shortcut_used
            assert report.conclusive
            # every carrier of H is initialized
            assert report.is_initialized
