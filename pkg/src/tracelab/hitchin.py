"""The rank-2 Hitchin-like base over P^1 and elliptic curves.

A base point is a pair (D, b) with D an effective divisor of degree d and
b a section of L(D); the associated spectral data is the double cover with
trace b and constant determinant, whose singularity is measured by the
discriminant divisor div(b^2 - 4) + 2D of degree 2d.  The module computes
discriminants, the delta invariant, component classification of the
regular centralizer, stratification histograms over field towers (through
the enumeration kernels), fiber-product counts over the Picard variety,
and the multiplicative-group torsor identity on the nonzero-trace locus.

Odd characteristic is required throughout: in characteristic 2 the section
b^2 - 4 = b^2 is a square and the discriminant calculus degenerates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .curves import Curve, Divisor, effective_divisors
from .errors import (
    CapExceeded,
    EvenCharacteristic,
    NonReducedSpectralCurve,
    SingularSpectralCurve,
    UnsupportedCurve,
)
from .fields import Poly, RationalFunction
from .funcfield import CurveFunction, divisor_of_function, riemann_roch_space
from .kernels import delta_histogram_p1
from .picard import picard_group
from .zeta import sym_power_point_count, zeta_from_counts


def _require_odd(curve: Curve):
    if curve.field.p == 2:
        raise EvenCharacteristic("the discriminant calculus needs odd characteristic")
    if curve.kind not in ("p1", "elliptic"):
        raise UnsupportedCurve("base curves are P^1 or elliptic")


@dataclass
class HitchinBasePoint:
    curve: Curve
    divisor: Divisor
    section: object  # RationalFunction on P^1, CurveFunction on elliptic curves

    def section_is_zero(self) -> bool:
        return self.section.is_zero()


@dataclass
class DiscriminantReport:
    point: HitchinBasePoint
    discriminant: Divisor
    multiplicity_free_part: Divisor
    square_part: Divisor
    delta: int


def _two(curve: Curve):
    if curve.kind == "p1":
        return RationalFunction.from_poly(Poly.constant(curve.field, 2))
    return CurveFunction.const(curve, 2 % curve.field.p)


def _section_squared_minus_four(point: HitchinBasePoint):
    b = point.section
    if point.curve.kind == "p1":
        four = Poly.constant(point.curve.field, 4)
        num = b.num * b.num - four * b.den * b.den
        return RationalFunction(num, b.den * b.den)
    return b * b - CurveFunction.const(point.curve, 4 % point.curve.field.p)


def discriminant(point: HitchinBasePoint) -> DiscriminantReport:
    """div(b^2 - 4) + 2D, split as D_1 + 2 D_2 with D_1 multiplicity free."""
    _require_odd(point.curve)
    w = _section_squared_minus_four(point)
    if w.is_zero():
        raise NonReducedSpectralCurve("b = +-2 gives a non-reduced spectral curve")
    disc = divisor_of_function(point.curve, w) + point.divisor * 2
    assert disc.is_effective() or disc.is_zero()
    assert disc.degree == 2 * point.divisor.degree
    d1_items = {}
    d2_items = {}
    for place, m in disc.items():
        if m % 2:
            d1_items[place] = 1
        if m // 2:
            d2_items[place] = m // 2
    d1 = Divisor(point.curve, d1_items)
    d2 = Divisor(point.curve, d2_items)
    return DiscriminantReport(point, disc, d1, d2, d2.degree)


def delta_invariant(point: HitchinBasePoint) -> int:
    """deg D_2 = sum of floor(n_x / 2) weighted by place degrees."""
    report = discriminant(point)
    other = sum(
        (m // 2) * place.degree for place, m in report.discriminant.items()
    )
    assert other == report.delta
    return report.delta


@dataclass
class Pi0Report:
    geometric: str                 # "zero" | "two_torsion" | "full_z"
    arithmetic_split: bool | None  # squareness over F_q itself (full_z only)


def pi0_classify(point: HitchinBasePoint) -> Pi0Report:
    """Component class of the regular centralizer of the spectral datum.

    Odd multiplicity anywhere (a unibranch point) gives the trivial class;
    if all multiplicities are even, the class is full Z when b^2 - 4 is a
    square of a function over the algebraic closure (reducible spectral
    curve) and Z/2 otherwise (smooth unramified normalization).  Over P^1
    the Z/2 class cannot occur and this is asserted.  The arithmetic flag
    records whether the square decomposition exists over F_q itself.
    """
    curve = point.curve
    report = discriminant(point)
    if not report.multiplicity_free_part.is_zero():
        return Pi0Report("zero", None)
    if curve.kind == "p1":
        # b^2 - 4 = c * (rational function)^2 with c the leading constant
        w = _section_squared_minus_four(point)
        lead = curve.field.div(w.num.leading(), 1)
        is_square = curve.field.is_square(lead)
        return Pi0Report("full_z", bool(is_square))
    # elliptic base: even multiplicities leave a 2-torsion obstruction class
    pic = picard_group(curve)
    half = report.square_part - point.divisor  # div(b^2-4) = 2*(D_2 - D)
    cls = pic.class_of_divisor(half)
    if cls != pic.zero_element():
        two_cls = pic.mul(2, cls)
        assert two_cls == pic.zero_element(), "obstruction class must be 2-torsion"
        return Pi0Report("two_torsion", None)
    # geometric square: scan L(-W) for g with b^2 - 4 = c * g^2 exactly
    basis = riemann_roch_space(curve, -half)
    assert len(basis) == 1, "degree-zero trivial class has a one-dimensional space"
    g = basis[0]
    w = _section_squared_minus_four(point)
    ratio = _constant_ratio(curve, w, g * g)
    return Pi0Report("full_z", curve.field.is_square(ratio))


def _constant_ratio(curve: Curve, w: CurveFunction, g2: CurveFunction) -> int:
    """The constant c with w = c * g2 (both stored in reduced form)."""
    for cand in curve.field.elements():
        if cand and g2.scale(cand) == w:
            return cand
    raise AssertionError("no constant ratio found")


# -- base enumeration ---------------------------------------------------------


def hitchin_base_size(curve: Curve, d: int, cap: int = 1 << 24) -> int:
    """|A_d(F_q)| = sum over X_d of q^(dim L(D)), computed in closed form."""
    _require_odd(curve)
    q = curve.field.q
    if curve.kind == "p1":
        return sum(q**e for e in range(d + 1)) * q ** (d + 1)
    if d == 0:
        return q
    total = sym_power_point_count(curve, d) * q**d
    if total > cap:
        raise CapExceeded(f"base size {total} exceeds cap {cap}")
    return total


def hitchin_base_enumerate(curve: Curve, d: int, cap: int = 1 << 22):
    """Yield every (D, b) with D in X_d and b in L(D)."""
    _require_odd(curve)
    est = hitchin_base_size(curve, d)
    if est > cap:
        raise CapExceeded(f"base of size {est} exceeds cap {cap}")
    q = curve.field.q
    for D in effective_divisors(curve, d, cap=cap):
        basis = riemann_roch_space(curve, D)
        for combo in range(q ** len(basis)):
            coeffs = []
            c = combo
            for _ in basis:
                coeffs.append(c % q)
                c //= q
            section = None
            for coeff, fn in zip(coeffs, basis):
                if coeff:
                    piece = fn.scale(coeff) if hasattr(fn, "scale") else _scale_rat(fn, coeff)
                    section = piece if section is None else section + piece
            if section is None:
                section = (
                    RationalFunction.from_poly(Poly.zero(curve.field))
                    if curve.kind == "p1"
                    else CurveFunction.zero(curve)
                )
            yield HitchinBasePoint(curve, D, section)


def _scale_rat(fn: RationalFunction, c: int) -> RationalFunction:
    return RationalFunction(fn.num.scale(c), fn.den)


# -- stratification ------------------------------------------------------------


@dataclass
class StratumLevel:
    q: int
    histogram: dict
    nonreduced: int
    total: int


@dataclass
class StratificationReport:
    curve: Curve
    d: int
    levels: list[StratumLevel]
    exponents: dict          # delta -> growth exponent from the last tower step
    expected: dict           # delta -> 2d - g + 1 - delta
    passes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.passes.values())


def stratify(curve: Curve, d: int, tower: int, cap: int = 1 << 25) -> StratificationReport:
    """Delta histograms over F_q, ..., F_(q^tower) with growth exponents.

    The estimated dimension of each stratum (log-ratio of the last two
    levels) must sit within +-0.5 of 2d - g + 1 - delta for every delta up
    to d - 2g + 1; total counts must partition the reduced locus exactly.
    """
    _require_odd(curve)
    if tower < 2:
        raise ValueError("a tower of at least two fields is needed for exponents")
    g = curve.genus
    levels = []
    for n in range(1, tower + 1):
        ext_curve = curve.base_change(n)
        size = hitchin_base_size(ext_curve, d)
        if size > cap:
            raise CapExceeded(f"stratification level q^{n} has size {size}")
        if curve.kind == "p1":
            hist, nonred, total = delta_histogram_p1(ext_curve.field, d)
        else:
            hist, nonred, total = _delta_histogram_object(ext_curve, d, cap)
        assert total == size
        assert sum(hist.values()) + nonred == total
        levels.append(StratumLevel(ext_curve.field.q, hist, nonred, total))
    top, prev = levels[-1], levels[-2]
    exponents = {}
    for delta, count in top.histogram.items():
        before = prev.histogram.get(delta)
        if before:
            exponents[delta] = math.log(count / before) / math.log(curve.field.q)
    expected = {delta: 2 * d - g + 1 - delta for delta in exponents}
    report = StratificationReport(curve, d, levels, exponents, expected)
    for delta in sorted(exponents):
        if delta <= d - 2 * g + 1:
            report.passes[delta] = abs(exponents[delta] - expected[delta]) <= 0.5
    return report


def _delta_histogram_object(curve: Curve, d: int, cap: int):
    hist: dict[int, int] = {}
    nonreduced = 0
    total = 0
    for pt in hitchin_base_enumerate(curve, d, cap=cap):
        total += 1
        try:
            delta = discriminant(pt).delta
        except NonReducedSpectralCurve:
            nonreduced += 1
            continue
        hist[delta] = hist.get(delta, 0) + 1
    return hist, nonreduced, total


# -- fiber products and the torsor identity ----------------------------------------


def martens_fiber_count(curve: Curve, d: int, n: int, cap: int = 1 << 22) -> int:
    """#{(D, D') in X_d x X_d : D ~ D'} over F_{q^n}, by class bucketing."""
    ext_curve = curve.base_change(n)
    if curve.kind == "p1":
        return sym_power_point_count(ext_curve, d) ** 2
    pic = picard_group(ext_curve)
    buckets: dict = {}
    for D in effective_divisors(ext_curve, d, cap=cap):
        key = pic.dlog(pic.class_of_divisor(D))
        buckets[key] = buckets.get(key, 0) + 1
    return sum(v * v for v in buckets.values())


def gm_torsor_check(curve: Curve, d: int, cap: int = 1 << 22):
    """#A^x = (q - 1) * #(X_d x_Pic X_d), both sides exact."""
    _require_odd(curve)
    q = curve.field.q
    lhs = hitchin_base_size(curve, d) - sym_power_point_count(curve, d)
    rhs = (q - 1) * martens_fiber_count(curve, d, 1, cap=cap)
    return lhs, rhs, lhs == rhs


# -- fibers over smooth spectral data ------------------------------------------------


@dataclass
class SpectralCurve:
    """The double cover w^2 = h(x) attached to a base point over P^1."""

    base: Curve
    h: Poly
    genus: int


def spectral_curve_p1(point: HitchinBasePoint) -> SpectralCurve:
    curve = point.curve
    assert curve.kind == "p1"
    b = point.section
    four = Poly.constant(curve.field, 4)
    # clearing the square denominator: (w * den)^2 = num^2 - 4 den^2 =: h
    h = b.num * b.num - four * b.den * b.den
    genus = (h.degree - 1) // 2 if h.degree >= 1 else 0
    return SpectralCurve(curve, h, max(genus, 0))


def hitchin_fiber_count(point: HitchinBasePoint, cap: int = 1 << 20) -> int:
    """#M over a smooth spectral curve: the norm-one class count.

    Over P^1 the norm map lands in a trivial degree-zero group, so the
    norm-one classes are the whole of Pic^0 of the spectral curve and the
    count is its class number; simple transitivity of the symmetry group
    makes #M = #P.  Requires a multiplicity-free discriminant.
    """
    curve = point.curve
    if curve.kind != "p1":
        raise UnsupportedCurve("fiber counts are implemented over P^1 bases")
    report = discriminant(point)
    if report.delta != 0:
        raise SingularSpectralCurve(f"delta = {report.delta} > 0")
    spec = spectral_curve_p1(point)
    if spec.genus == 0:
        return 1
    if spec.genus > 2:
        raise CapExceeded("spectral genus above 2 is out of scope")
    counts = [
        _double_cover_count(curve, spec.h, n) for n in range(1, 2 * spec.genus + 1)
    ]
    z = zeta_from_counts(counts, curve.field.q, spec.genus)
    return z.class_number()


def _double_cover_count(curve: Curve, h: Poly, n: int) -> int:
    """Points of the smooth model of w^2 = h(x) over F_{q^n}."""
    ext, emb = curve.ext_field(n)
    h_ext = h.map_coeffs(ext, emb)
    total = 0
    for x in ext.elements():
        v = h_ext(x)
        if v == 0:
            total += 1
        elif ext.is_square(v):
            total += 2
    if h.degree % 2:
        total += 1
    elif ext.is_square(emb(h.leading())):
        total += 2
    return total
