import pytest
from hypothesis import given, strategies as st

from arithdyn import arithfun as af
from arithdyn import preimage as pre
from arithdyn.config import DEFAULT_CONFIG
from arithdyn.factorint import BudgetExceeded, to_integer


def brute_fibre(f, m, bound):
    return tuple(x for x in range(1, bound + 1) if af.evaluate_int(f, x) == m)


def test_psi_fibres_match_brute_force():
    # psi(4) = psi(5) = 6 and psi(8) = psi(9) = 12, so these fibres are
    # bigger than a naive guess; the scan is the oracle
    assert pre.preimage_expansive(af.PSI, 12).members == (6, 8, 9, 11)
    assert pre.preimage_expansive(af.PSI, 6).members == (4, 5)
    assert pre.preimage_expansive(af.PSI, 1).members == (1,)
    assert pre.preimage_expansive(af.SIGMA1, 2).members == ()
    for m in range(1, 200):
        assert pre.preimage_expansive(af.PSI, m).members == brute_fibre(af.PSI, m, m)


def test_preimage_expansive_rejects_phi():
    with pytest.raises(pre.NotExpansive):
        pre.preimage_expansive(af.PHI, 4)
    with pytest.raises(pre.NotExpansive):
        pre.preimage_expansive(af.PHI_STAR, 4)


def test_preimage_bounded_for_phi_star():
    res = pre.preimage_bounded(af.PHI_STAR, 6, 100)
    assert res.completeness == pre.BOUNDED_SEARCH
    assert res.search_bound == 100
    assert res.members == brute_fibre(af.PHI_STAR, 6, 100)
    assert all(af.evaluate_int(af.PHI_STAR, x) == 6 for x in res.members)


def test_phi_bound_examples():
    assert to_integer(pre.phi_bound(1)) == 2
    assert to_integer(pre.phi_bound(2)) == 36
    # containment of the real fibre in the certificate
    assert max(pre.inverse_phi(2).members) == 6 <= 36


def test_inverse_phi_examples():
    assert pre.inverse_phi(1).members == (1, 2)
    assert pre.inverse_phi(4).members == (5, 8, 10, 12)
    assert pre.inverse_phi(3).members == ()
    assert pre.inverse_phi(2).members == (3, 4, 6)
    assert pre.inverse_phi(1).completeness == pre.COMPLETE


def test_inverse_phi_against_brute_scan():
    table = af.value_table(af.PHI, 20_000)
    fibres = {}
    for x in range(1, 20_001):
        fibres.setdefault(table[x], []).append(x)
    for m in range(1, 301):
        assert pre.inverse_phi(m).members == tuple(fibres.get(m, []))


def test_inverse_phi_budget():
    tiny = DEFAULT_CONFIG.replace(inverse_phi_budget=100)
    with pytest.raises(BudgetExceeded):
        pre.inverse_phi(1000, tiny)


def test_phi_bound_containment():
    for m in range(1, 31):
        cert = to_integer(pre.phi_bound(m))
        for x in pre.inverse_phi(m).members:
            assert x <= cert


@given(st.integers(min_value=1, max_value=300))
def test_expansive_members_at_most_m(m):
    assert all(x <= m for x in pre.preimage_expansive(af.PSI, m).members)


@given(st.integers(min_value=1, max_value=120),
       st.integers(min_value=1, max_value=120))
def test_fibre_disjointness(m1, m2):
    if m1 == m2:
        return
    a = set(pre.inverse_phi(m1).members)
    b = set(pre.inverse_phi(m2).members)
    assert not (a & b)


def test_nonfinite_fibre_witnesses():
    assert pre.nonfinite_fibre_witness(af.BIG_OMEGA, 1, 4) == [2, 3, 5, 7]
    assert pre.nonfinite_fibre_witness(af.D, 2, 3) == [2, 3, 5]
    assert pre.nonfinite_fibre_witness(af.SMALL_OMEGA, 1, 1) == [2]
    assert pre.nonfinite_fibre_witness(af.divisor_count(3), 3, 2) == [2, 3]
    with pytest.raises(ValueError):
        pre.nonfinite_fibre_witness(af.BIG_OMEGA, 2, 3)
    with pytest.raises(pre.NotFiniteFibre):
        pre.nonfinite_fibre_witness(af.PSI, 1, 3)
    # every witness really sits in the fibre
    for p in pre.nonfinite_fibre_witness(af.divisor_count(4), 4, 50):
        assert af.evaluate_int(af.divisor_count(4), p) == 4


def test_complete_preimage_dispatch():
    assert pre.complete_preimage(af.PHI, 4) == (5, 8, 10, 12)
    assert pre.complete_preimage(af.PSI, 12) == (6, 8, 9, 11)
    with pytest.raises(pre.NotFiniteFibre):
        pre.complete_preimage(af.BIG_OMEGA, 1)
    with pytest.raises(pre.NotFiniteFibre):
        pre.complete_preimage(af.PHI_STAR, 6)


def test_preimage_table():
    table = pre.preimage_table(af.PSI, 200)
    for y in range(1, 201):
        assert tuple(table[y]) == brute_fibre(af.PSI, y, 200)


def test_expansive_containment_to_1e4():
    # fibre members never exceed their target, verified across the window
    for f in (af.PSI, af.jordan(2), af.SIGMA1):
        table = pre.preimage_table(f, 10_000)
        for y in range(1, 10_001):
            assert all(x <= y for x in table[y])


def test_result_validation():
    with pytest.raises(ValueError):
        pre.PreimageResult(3, (2, 1), pre.COMPLETE)
    with pytest.raises(ValueError):
        pre.PreimageResult(3, (1, 2), pre.BOUNDED_SEARCH)
    with pytest.raises(ValueError):
        pre.PreimageResult(3, (1, 2), "PARTIAL")
