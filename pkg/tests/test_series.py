from __future__ import annotations

import random

import pytest

from braidgrowth.errors import InsufficientCoefficientsError
from braidgrowth.series import (
    RationalFn,
    expand,
    find_fit,
    format_poly,
    pade_fit,
    parse_poly,
    poly_mul,
    read_series,
    verify,
    write_series,
)

B3_DUAL_S = [1, 6, 20, 54, 134, 318, 734, 1662, 3710, 8190, 17918, 38910, 83966, 180222, 385022, 819198,
             1736702, 3670014, 7733246, 16252926, 34078718, 71303166]
B3_DUAL_G = [1, 6, 30, 126, 498, 1926, 7410, 28566, 110658, 431046, 1687890, 6639606, 26216418, 103827366,
             412169970, 1639212246, 6528347778, 26027690886, 103853269650, 414639810486, 1656237864738,
             6617984181606]
B4_ARTIN_S = [1, 6, 26, 98, 338, 1110, 3542, 11098, 34362, 105546, 322400, 980904, 2975728, 9007466, 27218486,
              82133734, 247557852, 745421660, 2242595598, 6741618346, 20252254058, 60800088680, 182422321452,
              547032036564, 1639548505920, 4911638066620]
B4_ARTIN_G = [1, 6, 30, 142, 646, 2870, 12558, 54026, 229338, 963570, 4016674, 16641454, 68614150, 281799158,
              1153638466, 4710108514, 19186676438, 78004083510, 316591341866, 1283041428650, 5193053664554,
              20994893965398, 84795261908498, 342173680884002, 1379691672165334, 5559241797216166]

S_B3_DUAL = RationalFn.from_factors([[1, 1], [-1, 0, 2]], [[-1, 1], [-1, 2], [-1, 2]])
G_B3_DUAL = RationalFn.from_factors([[-1, 3, -2, 12]], [[-1, 2], [-1, 3], [-1, 4]])
S_B4_DUAL = RationalFn.from_factors(
    [[1, 1], [1, -3, -4, 11, -3, -10, 10]], [[-1, 1], [1, -5, 5], [1, -8, 19, -20, 10]], sign=-1
)


def test_expand_geometric():
    assert expand(RationalFn((1,), (1, -2)), 4) == [1, 2, 4, 8, 16]


def test_expand_b3_dual_conjecture():
    assert expand(S_B3_DUAL, 5) == [1, 6, 20, 54, 134, 318]


def test_expand_b4_dual_conjecture():
    assert expand(S_B4_DUAL, 4) == [1, 12, 84, 478, 2500]


def test_fit_b3_dual_spherical_window():
    fn = pade_fit(B3_DUAL_S[:16], 3, 3)
    assert fn == S_B3_DUAL.canonical()
    assert fn.num == (1, 1, -2, -2) and fn.den == (1, -5, 8, -4)


def test_fit_constant_series():
    assert pade_fit([1, 1, 1], 0, 1) == RationalFn((1,), (1, -1))
    assert find_fit([1] * 6, 4).fn == RationalFn((1,), (1, -1))


def test_no_small_fit_for_b4_artin():
    assert find_fit(B4_ARTIN_S, 12) is None
    assert find_fit(B4_ARTIN_G, 12) is None


def test_insufficient_coefficients():
    with pytest.raises(InsufficientCoefficientsError):
        pade_fit([1, 2, 3], 1, 1)


def test_inconsistent_data_gives_none():
    # 1/(1-t) for five terms, then a break
    assert pade_fit([1, 1, 1, 1, 1, 7], 0, 1) is None


def test_verify_reports():
    assert verify(B3_DUAL_G, G_B3_DUAL).ok
    assert verify(B3_DUAL_G, G_B3_DUAL).checked == 22
    bad = B3_DUAL_S[:10] + [0]
    rep = verify(bad, S_B3_DUAL)
    assert rep.first_mismatch == 10 and rep.expected == 17918 and rep.actual == 0


def test_sabalka_formulas_start():
    s = RationalFn.from_factors([[1, 1], [-1, 1, -1, 2]], [[-1, 1], [-1, 2], [-1, 1, 1]])
    g = RationalFn.from_factors([[1, 1, 0, 3, 1]], [[-1, 2, 1], [-1, 1, 1]])
    assert expand(s, 4) == [1, 4, 12, 30, 68]
    assert expand(g, 4) == [1, 4, 12, 36, 96]


def test_canonical_form():
    r = RationalFn((-2, -2), (-2, 2)).canonical()  # (1 + t) / (1 - t) after dividing by -2
    assert r == RationalFn((1, 1), (1, -1))
    # common factor removed
    r = RationalFn(tuple(poly_mul([1, 1], [1, 3])), tuple(poly_mul([1, 1], [1, -2]))).canonical()
    assert r == RationalFn((1, 3), (1, -2))


def random_rational(rng):
    while True:
        dn, dd = rng.randrange(0, 4), rng.randrange(1, 4)
        num = [rng.randint(-5, 5) for _ in range(dn + 1)]
        den = [1] + [rng.randint(-5, 5) for _ in range(dd)]
        if any(num) and den[-1] != 0:
            return RationalFn(tuple(num), tuple(den)).canonical()


def test_fit_recovers_random_functions():
    rng = random.Random(7)
    for _ in range(100):
        r = random_rational(rng)
        dn, dd = r.degrees
        coeffs = expand(r, dn + dd + 5)
        fit = pade_fit(coeffs, dn, dd)
        assert fit == r
        assert expand(fit, len(coeffs) - 1) == coeffs


def test_canonical_result_independent_of_window():
    fits = {pade_fit(B3_DUAL_G[:k], 3, 3) for k in range(9, 23)}
    assert fits == {G_B3_DUAL.canonical()}


def test_series_file_round_trip(tmp_path):
    path = tmp_path / "s.txt"
    write_series(path, B3_DUAL_S)
    assert read_series(path).coeffs == B3_DUAL_S
    path.write_text("1\nx\n")
    with pytest.raises(ValueError):
        read_series(path)


def test_poly_text():
    assert parse_poly("1, -2,0") == [1, -2]
    assert format_poly([1, -5, 8, -4]) == "1 - 5*t + 8*t^2 - 4*t^3"
    assert format_poly([0, -1]) == "-t"
