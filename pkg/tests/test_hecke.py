import math

import pytest
from hypothesis import given, strategies as st

from oracles import naive_mul
from tcorelab import etaq, hecke, qseries
from tcorelab.hecke import HeckeError, HeckeForm, apply_Tp
from tcorelab.qseries import TruncatedSeries


def form(coeffs, modulus=0, weight=2, kernel=1, level=1):
    return HeckeForm(TruncatedSeries(coeffs, modulus), weight, kernel, level)


def tp_by_definition(coeffs, p, weight, kernel, modulus=0):
    chi = etaq.kronecker(kernel, p)
    out = []
    for n in range(len(coeffs) // p):
        c = coeffs[p * n] + (chi * p ** (weight - 1) * coeffs[n // p] if n % p == 0 else 0)
        out.append(c % modulus if modulus else c)
    return out


def test_constant_series():
    # a(0) picks up (1 + chi(p) p^(k-1))
    out = apply_Tp(form([1] + [0] * 99, weight=2), 5)
    assert out.series.tolist() == [6] + [0] * 19


def test_q_to_the_p_goes_to_q():
    c = [0] * 100
    c[7] = 1
    out = apply_Tp(form(c, modulus=8, weight=3, kernel=-1), 7).series
    assert out.tolist()[:3] == [0, 1, 0] and out.nnz() == 1


def test_all_ones_T2_pattern():
    out = apply_Tp(form([1] * 40, weight=1, kernel=1), 2).series.tolist()
    assert out == [2 if n % 2 == 0 else 1 for n in range(20)]


def test_errors():
    with pytest.raises(HeckeError):
        apply_Tp(form([1] * 10), 4)
    with pytest.raises(HeckeError):
        apply_Tp(form([1] * 10, level=10), 5)
    with pytest.raises(HeckeError):
        apply_Tp(form([1] * 3), 5)
    with pytest.raises(HeckeError):
        form([1], weight=0)


@given(st.lists(st.integers(-50, 50), min_size=60, max_size=60),
       st.lists(st.integers(-50, 50), min_size=60, max_size=60),
       st.integers(-5, 5), st.sampled_from([5, 7, 11, 13]), st.sampled_from([0, 4, 9, 2**40 + 15]))
def test_linearity(a, b, lam, p, mod):
    fa, fb = form(a, mod, 3, -1), form(b, mod, 3, -1)
    combo = form([lam * x + y for x, y in zip(a, b)], mod, 3, -1)
    lhs = apply_Tp(combo, p).series
    rhs = qseries.scalar_mul(apply_Tp(fa, p).series, lam) + apply_Tp(fb, p).series
    assert lhs == rhs


@given(st.lists(st.integers(-10**6, 10**6), min_size=30, max_size=200),
       st.sampled_from([0, 2, 8, 1009, 2**31 - 1, 2**40 + 15, 2**61 + 1]),
       st.sampled_from([5, 7, 11]), st.integers(1, 6), st.sampled_from([1, -1, 3, -3, 5]))
def test_matches_definition(coeffs, mod, p, k, kernel):
    if len(coeffs) < p:
        return
    f = form(coeffs, mod, k, kernel)
    expected = tp_by_definition([c % mod if mod else c for c in coeffs], p, k, kernel, mod)
    assert apply_Tp(f, p).series.tolist() == expected


def test_support_stays_on_multiples_of_24():
    f = HeckeForm.from_eta(etaq.family_F(1, 1, 2), 24 * 600, 8)
    for p in (5, 7, 11):
        s = apply_Tp(f, p).series
        # p^2 = 1 mod 24, so pn and n/p keep the residue class
        assert all(c == 0 for n, c in enumerate(s.tolist()) if n % 24)


def test_truncation_is_floor():
    f = form([1] * 101, 2)
    assert apply_Tp(f, 5).series.trunc == 20
    assert hecke.apply_chain(f, [5, 7]).series.trunc == 2


def test_commuting_primes():
    f = HeckeForm.from_eta(etaq.family_F(1, 1, 1), 20000, 16)
    assert hecke.apply_chain(f, [5, 7]).series == hecke.apply_chain(f, [7, 5]).series


def test_zero_series_depth_zero():
    r = hecke.annihilation_depth(form([0] * 1000, 2), (5, 7))
    assert r.depth == 0 and not r.exhausted
    assert r.verdict == "annihilated at depth 0"


def test_exhaustion_flag():
    r = hecke.annihilation_depth(form([1] * 400, 2, level=3), (5, 7, 11))
    assert r.depth is None and r.exhausted
    assert r.to_dict()["truncationExhausted"] is True


def test_depth_requires_every_subset():
    import itertools

    c = [0] * 3000
    c[11] = 1
    primes = (5, 7, 11)
    r = hecke.annihilation_depth(form(c, 2, level=3), primes, min_terms=2)

    def killed(subset):
        cur = c
        for p in subset:
            cur = tp_by_definition(cur, p, 2, 1, 2)
        return not any(cur)

    expected = next(n for n in range(4) if all(killed(s) for s in itertools.combinations(primes, n)))
    assert r.depth == expected
    assert r.checked[1] is False


def test_nilpotency_depth_grows_with_v():
    r1 = hecke.nilpotency_search(1, 1, (5, 7, 11, 13), 30000)
    r2 = hecke.nilpotency_search(1, 2, (5, 7, 11, 13), 30000)
    assert r1.depth == 1 and r2.depth == 2
    assert r2.depth >= r1.depth


def test_depth_matches_bbar_vanishing():
    # F(1,1,1) = q^24 sum bbar_3(n) q^(24n) mod 4, so T_5 T_7 on it is read off bbar_3
    f = hecke.f11k_form(1, 2, 24 * 3000)
    g = hecke.apply_chain(f, [5, 7]).series
    assert g.nnz() == 0


def test_arguments():
    args = hecke.theorem7_arguments([5], 60)
    assert args[0] == (24, 4)
    assert all((5 * n - 24) % 24 == 0 and math.gcd(n, 5) == 1 for n, _ in args)


def test_verify_instance():
    check = hecke.verify_theorem7_instance([5], 1, 2000)
    assert check.passed and check.tested > 0
    assert check.to_dict()["counterexamples"] == []


def test_vacuous_instance():
    # every admissible n must be a multiple of 24; nmax below that leaves nothing
    check = hecke.verify_theorem7_instance([5, 7], 2, 23)
    assert check.vacuous and not check.passed


def test_verify_with_supplied_coefficients():
    zero = qseries.make_constant(0, 5000, 4)
    assert hecke.verify_theorem7_instance([5, 7], 2, 2000, coefficients=zero).passed
    ones = TruncatedSeries([1] * 5000, 4)
    check = hecke.verify_theorem7_instance([5, 7], 2, 2000, coefficients=ones)
    assert not check.passed and check.counterexamples
    with pytest.raises(HeckeError):
        hecke.verify_theorem7_instance([5, 7], 2, 2000, coefficients=TruncatedSeries([0] * 10, 4))


def test_verify_errors():
    with pytest.raises(HeckeError):
        hecke.verify_theorem7_instance([3], 1, 100)
    with pytest.raises(HeckeError):
        hecke.verify_theorem7_instance([5, 5], 1, 100)
    with pytest.raises(HeckeError):
        hecke.verify_theorem7_instance([5], 0, 100)
