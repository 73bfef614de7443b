import random

import pytest

from tracelab.curves import parse_curve
from tracelab.picard import characters, picard_group
from tracelab.ring import GroupRing
from tracelab.systems import (
    GradedLocalSystem,
    GradedSummand,
    adjoint_grading_system,
    constant_sheaf_eigenvalue,
    frobenius_datum,
    l_series_cohomological,
    l_series_product,
    leading_term_dimension,
    sym_power_trace,
    trivial_system,
    weight_graded_h2_datum,
)
from tracelab.zeta import sym_power_point_count


E3 = parse_curve("ell:q=3;a=1;b=0")
E2 = parse_curve("ell2:q=2;f=x^3")
P1_2 = parse_curve("p1:q=2")
P1_3 = parse_curve("p1:q=3")
HYP = parse_curve("hyp:q=3;f=x^5+2*x")


def nontrivial_characters(curve):
    pic = picard_group(curve)
    return [c for c in characters(pic) if not c.is_trivial_on_pic0()]


# -- frobenius data -------------------------------------------------------------


def test_frobenius_datum_trivial_character():
    datum = frobenius_datum(trivial_system(E3))
    degrees = sorted(d for d, _ in datum.pieces)
    assert degrees == [0, 1, 2]
    h1 = dict(datum.pieces)[1]
    R = datum.ring
    assert h1 == [R.one, R.zero, R.integer(3)]  # 1 + 3t^2


def test_frobenius_datum_order4_character():
    chi = [c for c in nontrivial_characters(E3) if c.order_on_pic0() == 4][0]
    system = GradedLocalSystem(E3, [GradedSummand(chi)])
    datum = frobenius_datum(system)
    assert len(datum.pieces) == 1
    deg, coeffs = datum.pieces[0]
    assert deg == 1
    assert coeffs == [datum.ring.one]  # degree 2g-2 = 0 forces the constant 1


def test_frobenius_datum_euler_characteristic():
    # deg(odd) - deg(even) = (2g - 2) * rank for unshifted summands
    for curve in (E3, HYP):
        g = curve.genus
        pic = picard_group(curve)
        for chi in characters(pic)[:4]:
            system = GradedLocalSystem(curve, [GradedSummand(chi)])
            datum = frobenius_datum(system)
            assert datum.euler_characteristic_degree() == 2 * g - 2
        chis = characters(pic)
        pair = GradedLocalSystem(curve, [GradedSummand(chis[0]), GradedSummand(chis[-1])])
        assert frobenius_datum(pair).euler_characteristic_degree() == 2 * (2 * g - 2)


def test_frobenius_datum_order2_character_genus2():
    chi = [c for c in nontrivial_characters(HYP) if c.order_on_pic0() == 2][0]
    system = GradedLocalSystem(HYP, [GradedSummand(chi)])
    datum = frobenius_datum(system)
    (deg, coeffs), = datum.pieces
    assert deg == 1
    assert len(coeffs) - 1 == 2  # L-polynomial of degree 2g-2 = 2


# -- the two L-series routes ------------------------------------------------------


def test_l_series_product_p1_trivial():
    series = l_series_product(trivial_system(P1_2), 3)
    assert [c.as_integer() for c in series] == [1, 3, 7, 15]


def test_l_series_product_divisor_counts():
    series = l_series_product(trivial_system(E3), 4)
    assert [c.as_integer() for c in series] == [1, 4, 16, 52, 160]


def test_l_series_product_orthogonality():
    for chi in nontrivial_characters(E3):
        series = l_series_product(GradedLocalSystem(E3, [GradedSummand(chi)]), 3)
        assert series[1].is_zero()


def test_l_series_cohomological_p1():
    datum = frobenius_datum(trivial_system(P1_3))
    series = l_series_cohomological(datum, 3)
    assert [c.as_integer() for c in series] == [1, 4, 13, 40]


@pytest.mark.parametrize("curve", [P1_3, E3, E2, HYP], ids=lambda c: c.descriptor())
def test_two_route_equality_all_characters(curve):
    d_max = 2 * curve.genus + 4
    pic = picard_group(curve)
    for chi in characters(pic):
        system = GradedLocalSystem(curve, [GradedSummand(chi)])
        route1 = l_series_product(system, d_max)
        route2 = l_series_cohomological(frobenius_datum(system), d_max)
        assert route1 == route2, repr(chi)


def test_two_route_equality_with_twists_and_shifts():
    chi = nontrivial_characters(E3)[0]
    trivial = characters(picard_group(E3))[0]
    system = GradedLocalSystem(
        E3,
        [GradedSummand(chi, 2, 1), GradedSummand(trivial, -1, 0), GradedSummand(chi, 0, -2)],
    )
    d_max = 6
    assert l_series_product(system, d_max) == l_series_cohomological(
        frobenius_datum(system), d_max
    )


def test_degree_twisted_trivial_character_routes():
    # trivial on Pic^0 but nontrivial in the degree direction
    pic = picard_group(E3)
    twisted = [
        c for c in characters(pic, 2) if c.is_trivial_on_pic0() and c.degree_value
    ][0]
    system = GradedLocalSystem(E3, [GradedSummand(twisted)])
    d_max = 5
    assert l_series_product(system, d_max) == l_series_cohomological(
        frobenius_datum(system), d_max
    )


# -- symmetric-power calculus ------------------------------------------------------


def test_sym_power_trace_basics():
    datum = frobenius_datum(trivial_system(E3))
    assert sym_power_trace(datum, 0) == datum.ring.one
    assert sym_power_trace(datum, 2) == datum.ring.integer(16)


def test_sym_power_trace_matches_series():
    datum = frobenius_datum(trivial_system(HYP))
    series = l_series_cohomological(datum, 6)
    for d in range(7):
        assert sym_power_trace(datum, d) == series[d]


def test_sym_power_trace_exterior_truncation():
    # H^0 = H^2 = 1 and H^1 of degree 2: zero beyond degree 2
    chi = [c for c in nontrivial_characters(HYP) if c.order_on_pic0() == 2][0]
    datum = frobenius_datum(GradedLocalSystem(HYP, [GradedSummand(chi)]))
    assert not sym_power_trace(datum, 2).is_zero()
    for d in (3, 4, 5, 6):
        assert sym_power_trace(datum, d).is_zero()


def test_sym_power_random_systems_match_series():
    rng = random.Random(20240817)
    pool_curves = [E3, E2]
    for _ in range(50):
        curve = rng.choice(pool_curves)
        pic = picard_group(curve)
        chis = characters(pic)
        summands = [
            GradedSummand(
                rng.choice(chis),
                rng.randrange(-4, 5),      # half twists |2w| <= 4, i.e. |w| <= 2
                rng.randrange(-2, 3),
            )
            for _ in range(rng.randrange(1, 4))
        ]
        system = GradedLocalSystem(curve, summands)
        datum = frobenius_datum(system)
        series = l_series_cohomological(datum, 6)
        for d in range(7):
            assert sym_power_trace(datum, d) == series[d]


def test_vanishing_bound_rank_one():
    for curve, bound in [(E3, 0), (HYP, 2)]:
        for chi in nontrivial_characters(curve):
            datum = frobenius_datum(GradedLocalSystem(curve, [GradedSummand(chi)]))
            for d in range(bound + 1, bound + 4):
                assert sym_power_trace(datum, d).is_zero(), (curve.descriptor(), d)


def test_sl2_adjoint_vanishing():
    # order-2 character at shifts -2, 0, 2 with twists -1, 0, 1:
    # all summand cohomology is odd, so the series is a polynomial of
    # degree 3*(2g-2) and every higher trace vanishes
    for curve in (E3, HYP):
        chi = [c for c in nontrivial_characters(curve) if c.order_on_pic0() == 2][0]
        system = GradedLocalSystem(
            curve,
            [GradedSummand(chi, -2, -2), GradedSummand(chi, 0, 0), GradedSummand(chi, 2, 2)],
        )
        datum = frobenius_datum(system)
        bound = 3 * (2 * curve.genus - 2)
        series = l_series_cohomological(datum, bound + 4)
        for d in range(bound + 1, bound + 5):
            assert series[d].is_zero()
            assert sym_power_trace(datum, d).is_zero()
        # and the two routes agree out there as well
        assert l_series_product(system, bound + 4) == series


# -- constant-sheaf gradings --------------------------------------------------------


def test_constant_sheaf_plain_zeta():
    for d in range(5):
        got = constant_sheaf_eigenvalue([(0, 1)], E3, d)
        assert got == GroupRing(1).integer(sym_power_point_count(E3, d))


def test_constant_sheaf_gl2_grading():
    got = constant_sheaf_eigenvalue([(-1, 1), (1, 1)], P1_3, 1)
    R = GroupRing(1)
    assert got == R.term(0, 1, 4) + R.term(0, -1, 4)  # (3+1)(v + 1/v)


@pytest.mark.parametrize("curve", [P1_3, E3], ids=lambda c: c.descriptor())
def test_constant_sheaf_adjoint_equals_graded_route(curve):
    system = adjoint_grading_system(curve)
    datum = frobenius_datum(system)
    for d in range(6):
        zeta_route = constant_sheaf_eigenvalue([(-2, 1), (0, 1), (2, 1)], curve, d)
        graded_route = sym_power_trace(datum, d)
        assert zeta_route.lift(datum.ring) == graded_route, d


# -- leading term -------------------------------------------------------------------


def test_leading_term_dimension_values():
    assert leading_term_dimension(1, 5) == 1
    assert leading_term_dimension(2, 3) == 4
    assert leading_term_dimension(3, 2) == 6


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_leading_term_matches_weight_graded_datum(m):
    datum = weight_graded_h2_datum(m, extra_h1=[1, -2, 3])
    R = datum.ring
    for d in range(7):
        trace = sym_power_trace(datum, d)
        top = trace.weight_part(2 * d)
        assert top == R.term(0, 2 * d, leading_term_dimension(m, d)), (m, d)
        assert max(trace.weights()) == 2 * d
