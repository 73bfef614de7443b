import pytest

from tracelab.covers import EtaleDoubleCover, two_torsion_points
from tracelab.curves import Divisor, parse_curve, place_of_degree_count, places_of_degree, point_count
from tracelab.errors import EvenCharacteristic, NotTwoTorsion, UnsupportedCurve
from tracelab.picard import picard_group


E5 = parse_curve("ell:q=5;a=-1;b=0")  # y^2 = x^3 - x, full 2-torsion over F_5


def cover5():
    return EtaleDoubleCover(E5, (0, 0))


def test_two_torsion_enumeration():
    assert two_torsion_points(E5) == [(0, 0), (1, 0), (4, 0)]


def test_cover_counts_match():
    cov = cover5()
    # the isogenous curve has the same number of points; 8 for this curve
    assert point_count(E5, 1) == point_count(cov.cover, 1) == 8
    assert point_count(E5, 2) == point_count(cov.cover, 2)


def test_cover_rejects_bad_torsion():
    with pytest.raises(NotTwoTorsion):
        EtaleDoubleCover(E5, (2, 1))  # a point of odd order is not 2-torsion
    with pytest.raises(NotTwoTorsion):
        EtaleDoubleCover(E5, (3, 0))  # not even on the curve
    with pytest.raises(UnsupportedCurve):
        EtaleDoubleCover(parse_curve("ell:q=3;a=1;b=0"), (0, 0))
    with pytest.raises((EvenCharacteristic, UnsupportedCurve)):
        EtaleDoubleCover(parse_curve("ell2:q=2;f=x^3"), (0, 0))


def test_involution_is_free_order_two():
    cov = cover5()
    for n in (1, 2):
        for pt in cov.cover.affine_points(n) + [None]:
            tw = cov.involution_point(n, pt)
            assert tw != pt
            assert cov.involution_point(n, tw) == pt


def test_fibers_split_or_inert_never_ramified():
    cov = cover5()
    for n in (1, 2, 3):
        for place in places_of_degree(cov.base, n):
            above = cov.places_above(place)
            degs = sorted(p.degree for p in above)
            assert degs in ([n, n], [2 * n]), (n, degs)


def test_place_counts_balance_in_cover():
    cov = cover5()
    # sum over base places of (number of cover places above) equals the
    # cover's place count at each degree
    for n in (1, 2):
        splits = 0
        for place in places_of_degree(cov.base, n):
            if len(cov.places_above(place)) == 2:
                splits += 2
        inerts_below = 0
        if n % 2 == 0:
            for place in places_of_degree(cov.base, n // 2):
                if len(cov.places_above(place)) == 1:
                    inerts_below += 1
        assert splits + inerts_below == place_of_degree_count(cov.cover, n)


def test_pushforward_pullback_degrees():
    cov = cover5()
    for place in places_of_degree(cov.base, 1) + places_of_degree(cov.base, 2):
        D = Divisor.of_place(place)
        up = cov.pullback_divisor(D)
        assert up.degree == 2 * D.degree
        down = cov.pushforward_divisor(up)
        assert down.degree == 2 * D.degree
        # pushforward of pullback is multiplication by 2 on the nose
        assert down == D * 2


def test_pushforward_preserves_degree():
    cov = cover5()
    for place in places_of_degree(cov.cover, 1) + places_of_degree(cov.cover, 2):
        D = Divisor.of_place(place)
        assert cov.pushforward_divisor(D).degree == D.degree


def test_involution_on_divisors_preserves_pushforward():
    cov = cover5()
    for place in places_of_degree(cov.cover, 2):
        D = Divisor.of_place(place)
        tw = cov.apply_involution(D)
        assert tw.degree == D.degree
        assert cov.pushforward_divisor(tw) == cov.pushforward_divisor(D)


def test_norm_of_pullback_is_doubling():
    cov = cover5()
    pic = picard_group(cov.base)
    for el in pic.elements():
        assert cov.norm_class(cov.pullback_class(el)) == pic.mul(2, el)


def test_pullback_then_involution_fixed():
    # pulled-back divisors are involution-stable
    cov = cover5()
    for place in places_of_degree(cov.base, 2):
        up = cov.pullback_divisor(Divisor.of_place(place))
        assert cov.apply_involution(up) == up


def test_cover_character_detects_splitting():
    cov = cover5()
    chi = cov.cover_character()
    assert chi.order_on_pic0() == 2
    assert chi.degree_value == 0
    for n in (1, 2, 3):
        for place in places_of_degree(cov.base, n):
            above = cov.places_above(place)
            split = len(above) == 2
            val = chi.value_of_place(place)
            assert (val == 0) == split, (place, val)
