import pytest

from tracelab.curves import effective_divisors, parse_curve, places_of_degree
from tracelab.errors import UnsupportedCurve
from tracelab.fields import Poly
from tracelab.funcfield import CurveFunction, divisor_of_function
from tracelab.picard import characters, ell_mul, picard_group
from tracelab.ring import GroupRing


def test_picard_p1_trivial():
    pic = picard_group(parse_curve("p1:q=5"))
    assert pic.order == 1
    assert pic.invariant_factors == []
    assert pic.exponent == 1


def test_picard_e3_is_z4():
    curve = parse_curve("ell:q=3;a=1;b=0")
    pic = picard_group(curve)
    assert pic.order == 4
    assert pic.invariant_factors == [4]
    # (2, 1) has order 4 and doubles to (0, 0)
    P = (2, 1)
    assert ell_mul(curve, curve.field, lambda c: c, 2, P) == (0, 0)
    assert ell_mul(curve, curve.field, lambda c: c, 4, P) is None


def test_picard_e2_is_z3():
    pic = picard_group(parse_curve("ell2:q=2;f=x^3"))
    assert pic.order == 3
    assert pic.invariant_factors == [3]


def test_picard_e5_full_two_torsion():
    # y^2 = x^3 - x over F_5 has order 8 with full 2-torsion: Z/4 x Z/2
    pic = picard_group(parse_curve("ell:q=5;a=-1;b=0"))
    assert pic.order == 8
    assert pic.invariant_factors == [4, 2]


def test_picard_genus2():
    pic = picard_group(parse_curve("hyp:q=3;f=x^5+2*x"))
    assert pic.order == pic.zeta.class_number() == 8
    # divisibility chain and total order
    total = 1
    for n in pic.invariant_factors:
        total *= n
    assert total == 8


def test_picard_rejects_even_model_jacobian():
    with pytest.raises(UnsupportedCurve):
        picard_group(parse_curve("hyp:q=5;f=x^6+x+1"))


@pytest.mark.parametrize("desc", ["ell:q=3;a=1;b=0", "ell2:q=2;f=x^3", "hyp:q=3;f=x^5+2*x"])
def test_group_axioms_and_dlog(desc):
    pic = picard_group(parse_curve(desc))
    els = pic.elements()
    zero = pic.zero_element()
    for a in els:
        assert pic.add(a, pic.neg(a)) == zero
        assert pic.add(a, zero) == a
        vec = pic.dlog(a)
        rebuilt = zero
        for g, c in zip(pic.generators, vec):
            rebuilt = pic.add(rebuilt, pic.mul(c, g))
        assert rebuilt == a
    for a in els[:6]:
        for b in els[:6]:
            assert pic.add(a, b) == pic.add(b, a)
            for c in els[:4]:
                assert pic.add(pic.add(a, b), c) == pic.add(a, pic.add(b, c))


@pytest.mark.parametrize("desc", ["ell:q=3;a=1;b=0", "ell2:q=2;f=x^3", "hyp:q=3;f=x^5+2*x"])
def test_principal_divisors_have_trivial_class(desc):
    curve = parse_curve(desc)
    pic = picard_group(curve)
    F = curve.field
    x = Poly.x(F)
    probes = [
        CurveFunction(curve, x),
        CurveFunction(curve, Poly.zero(F), Poly.one(F)),
        CurveFunction(curve, x + Poly.one(F), Poly.one(F)),
        CurveFunction(curve, Poly.one(F), Poly.one(F), x),
    ]
    for fn in probes:
        div = divisor_of_function(curve, fn)
        assert pic.class_of_divisor(div) == pic.zero_element(), str(fn)


def test_class_map_is_additive_on_divisors():
    curve = parse_curve("ell:q=3;a=1;b=0")
    pic = picard_group(curve)
    divs = list(effective_divisors(curve, 2))
    for D in divs[:8]:
        for E in divs[:4]:
            lhs = pic.class_of_divisor(D + E)
            rhs = pic.add(pic.class_of_divisor(D), pic.class_of_divisor(E))
            assert lhs == rhs


def test_degree_one_classes_biject_elliptic():
    # on an elliptic curve, P -> [P - O] is a bijection onto Pic^0
    curve = parse_curve("ell:q=3;a=1;b=0")
    pic = picard_group(curve)
    classes = {pic.class_of_place(pl) for pl in places_of_degree(curve, 1)}
    assert len(classes) == pic.order


def test_characters_counts():
    pic0 = picard_group(parse_curve("p1:q=3"))
    assert len(characters(pic0, 1)) == 1
    assert characters(pic0, 1)[0].is_trivial()
    pic = picard_group(parse_curve("ell:q=3;a=1;b=0"))
    assert len(characters(pic, 1)) == 4
    assert len(characters(pic, 2)) == 8


def test_characters_are_homomorphisms():
    curve = parse_curve("hyp:q=3;f=x^5+2*x")
    pic = picard_group(curve)
    for chi in characters(pic):
        els = pic.elements()
        for a in els[:5]:
            for b in els[:5]:
                s = chi.value_of_class(pic.add(a, b))
                assert s == (chi.value_of_class(a) + chi.value_of_class(b)) % chi.modulus


def test_characters_well_defined_on_divisor_classes():
    curve = parse_curve("ell:q=3;a=1;b=0")
    pic = picard_group(curve)
    chi = [c for c in characters(pic) if not c.is_trivial()][0]
    fn = CurveFunction(curve, Poly.x(curve.field))
    shift = divisor_of_function(curve, fn)
    for D in list(effective_divisors(curve, 2))[:10]:
        assert chi.value_of_divisor(D) == chi.value_of_divisor(D + shift)


def test_character_orthogonality():
    curve = parse_curve("ell:q=3;a=1;b=0")
    pic = picard_group(curve)
    for chi in characters(pic):
        R = GroupRing(chi.modulus)
        total = R.zero
        for el in pic.elements():
            total = total + R.term(chi.value_of_class(el))
        if chi.is_trivial_on_pic0():
            assert total == R.integer(pic.order)
        else:
            assert total == R.zero


def test_character_powers():
    pic = picard_group(parse_curve("ell:q=3;a=1;b=0"))
    chis = characters(pic)
    order4 = [c for c in chis if c.order_on_pic0() == 4][0]
    sq = order4.power(2)
    assert sq.order_on_pic0() == 2
    for el in pic.elements():
        assert sq.value_of_class(el) == (2 * order4.value_of_class(el)) % 4
