"""Graded rank-1 systems on a curve and their exact spectral data.

A graded system is a finite list of summands (chi, 2w, i): a finite-order
character chi of the Picard group, a Tate half-twist exponent 2w (so the
Frobenius eigenvalues pick up v^(2w) per degree), and a cohomological shift
i.  Its generating series of supertraces over the symmetric powers X_d can
be computed two independent ways:

- as an Euler product over the places of the curve (l_series_product), and
- from the Frobenius characteristic polynomials on the cohomology of the
  curve (l_series_cohomological / sym_power_trace),

and the package's tests insist the two agree coefficientwise in the exact
coefficient ring.  Pieces sitting in odd total degree contribute exterior
powers with sign, even ones symmetric powers, which at the series level is
the numerator/denominator split.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .curves import Curve, effective_divisors, places_up_to
from .picard import TorusCharacter, picard_group
from .ring import (
    GroupRing,
    RingElement,
    common_ring,
    series_inverse,
    series_mul,
    series_one,
)
from .zeta import zeta_of_curve


@dataclass(frozen=True)
class GradedSummand:
    character: TorusCharacter
    half_twist: int = 0  # 2w: eigenvalues scale by v^(2w * deg)
    shift: int = 0       # cohomological shift i: curve cohomology lands in i, i+1, i+2


class GradedLocalSystem:
    """A formal direct sum of rank-1 summands on a common curve."""

    def __init__(self, curve: Curve, summands):
        self.curve = curve
        self.summands = list(summands)
        mods = [GroupRing(s.character.modulus) for s in self.summands] or [GroupRing(1)]
        self.ring = common_ring(*mods)

    @property
    def rank(self) -> int:
        return len(self.summands)

    def term_for(self, chi: TorusCharacter, value: int, w: int = 0, c: int = 1) -> RingElement:
        scale = self.ring.modulus // chi.modulus
        return self.ring.term(value * scale, w, c)


def trivial_system(curve: Curve, half_twist: int = 0, shift: int = 0) -> GradedLocalSystem:
    from .picard import characters

    pic = picard_group(curve)
    trivial = characters(pic, 1)[0]
    assert trivial.is_trivial()
    return GradedLocalSystem(curve, [GradedSummand(trivial, half_twist, shift)])


class FrobeniusDatum:
    """Reversed characteristic polynomials of Frobenius, by total degree.

    pieces: list of (total_degree, coeffs) with coeffs[0] = 1 in the ring;
    a piece in even total degree sits in the denominator of the generating
    series, an odd one in the numerator.
    """

    def __init__(self, ring: GroupRing, pieces):
        self.ring = ring
        self.pieces = [(d, list(cs)) for d, cs in pieces]
        for _d, cs in self.pieces:
            assert cs[0] == ring.one, "piece polynomials are normalized at 1"

    def parity_polys(self):
        """(even_product, odd_product) as plain coefficient lists."""
        even = [self.ring.one]
        odd = [self.ring.one]
        for d, cs in self.pieces:
            if d % 2 == 0:
                even = _poly_mul(even, cs)
            else:
                odd = _poly_mul(odd, cs)
        return even, odd

    def euler_characteristic_degree(self) -> int:
        """deg(odd) - deg(even), the net H^1 size."""
        even, odd = self.parity_polys()
        return (len(odd) - 1) - (len(even) - 1)


def _poly_mul(A: list[RingElement], B: list[RingElement]) -> list[RingElement]:
    ring = A[0].ring
    out = [ring.zero] * (len(A) + len(B) - 1)
    for i, a in enumerate(A):
        if a.is_zero():
            continue
        for j, b in enumerate(B):
            if not b.is_zero():
                out[i + j] = out[i + j] + a * b
    return out


def character_l_polynomial(system: GradedLocalSystem, chi: TorusCharacter) -> list[RingElement]:
    """L-polynomial of a character nontrivial on Pic^0, by divisor sums.

    The coefficients are sum_{D in X_j} e_{chi(D)} for j <= 2g-2; the next
    two coefficients are computed as well and checked to vanish, which is
    the termination statement for the polynomial route.
    """
    curve = system.curve
    g = curve.genus
    out = []
    for j in range(0, 2 * g + 1):
        acc = system.ring.zero
        for D in effective_divisors(curve, j):
            acc = acc + system.term_for(chi, chi.value_of_divisor(D))
        out.append(acc)
    for j in range(2 * g - 1, 2 * g + 1):
        assert out[j].is_zero(), "character L-series failed to terminate"
    return out[: 2 * g - 1]


def frobenius_datum(system: GradedLocalSystem) -> FrobeniusDatum:
    """Exact Frobenius data of the system on H^0, H^1, H^2 of the curve."""
    ring = system.ring
    curve = system.curve
    zdata = zeta_of_curve(curve)
    q = curve.field.q
    pieces = []
    for s in system.summands:
        chi, hw, i = s.character, s.half_twist, s.shift
        if chi.is_trivial_on_pic0():
            a = chi.degree_value
            scale = ring.modulus // chi.modulus
            h0 = [ring.one, -ring.term(a * scale, hw)]
            h1 = [
                ring.term(j * a * scale, j * hw, zdata.numerator[j])
                for j in range(2 * curve.genus + 1)
            ]
            h2 = [ring.one, -ring.term(a * scale, hw, q)]
            pieces.append((i, h0))
            if curve.genus > 0:
                pieces.append((i + 1, h1))
            pieces.append((i + 2, h2))
        else:
            lpoly = character_l_polynomial(system, chi)
            pieces.append((i + 1, [c * ring.term(0, j * hw) for j, c in enumerate(lpoly)]))
    return FrobeniusDatum(ring, pieces)


def l_series_product(
    system: GradedLocalSystem, d_max: int, cap: int = 1 << 20
) -> list[RingElement]:
    """Euler product over places of degree <= d_max, coefficientwise exact."""
    ring = system.ring
    prec = d_max + 1
    series = series_one(ring, prec)
    places = places_up_to(system.curve, d_max, cap=cap)
    for s in system.summands:
        chi, hw, i = s.character, s.half_twist, s.shift
        sign_odd = i % 2 != 0
        for place in places:
            n = place.degree
            c = system.term_for(chi, chi.value_of_place(place), hw * n)
            if sign_odd:
                # factor (1 - c t^n)
                for k in range(prec - 1, n - 1, -1):
                    series[k] = series[k] - c * series[k - n]
            else:
                # factor (1 - c t^n)^(-1)
                for k in range(n, prec):
                    series[k] = series[k] + c * series[k - n]
    return series


def l_series_cohomological(datum: FrobeniusDatum, d_max: int) -> list[RingElement]:
    """Series expansion of odd(t) / even(t) through t^d_max."""
    prec = d_max + 1
    even, odd = datum.parity_polys()
    num = (odd + [datum.ring.zero] * prec)[:prec]
    if len(even) == 1:
        return num
    den_inv = series_inverse((even + [datum.ring.zero] * prec)[:prec], prec)
    return series_mul(num, den_inv, prec)


def _power_sums_from_charpoly(coeffs: list[RingElement], n_max: int) -> list[RingElement]:
    """Power sums of the eigenvalue multiset with det(1 - tF) = sum coeffs t^j."""
    ring = coeffs[0].ring
    deg = len(coeffs) - 1
    p: list[RingElement] = []
    for n in range(1, n_max + 1):
        acc = ring.zero
        for i in range(1, min(n - 1, deg) + 1):
            if not coeffs[i].is_zero():
                acc = acc + coeffs[i] * p[n - i - 1]
        acc = -acc
        if n <= deg:
            acc = acc - coeffs[n] * n
        p.append(acc)
    return p


def _divide_exact(el: RingElement, n: int) -> RingElement:
    out = {}
    for k, c in el.terms.items():
        assert c % n == 0, "inexact division in Newton recursion"
        out[k] = c // n
    return RingElement(el.ring, out)


def sym_power_trace(datum: FrobeniusDatum, d: int) -> RingElement:
    """Supertrace of Frobenius on the degree-d symmetric-power cohomology.

    Symmetric powers act on the even-degree eigenvalues (complete homogeneous
    functions h_a, computed through Newton's relations from the power sums)
    and exterior powers with sign on the odd-degree ones (the coefficients of
    the odd characteristic polynomial).  Must match the t^d coefficient of
    l_series_cohomological.
    """
    ring = datum.ring
    even, odd = datum.parity_polys()
    p = _power_sums_from_charpoly(even, d)
    h = [ring.one]
    for n in range(1, d + 1):
        acc = ring.zero
        for i in range(1, n + 1):
            if not h[n - i].is_zero():
                acc = acc + p[i - 1] * h[n - i]
        h.append(_divide_exact(acc, n))
    total = ring.zero
    for b in range(0, min(d, len(odd) - 1) + 1):
        if not odd[b].is_zero():
            total = total + h[d - b] * odd[b]
    return total


def constant_sheaf_eigenvalue(grading, curve: Curve, d: int) -> RingElement:
    """t^d coefficient of prod_i Z(v^(2i) t)^(dim_i) for a half-integer grading.

    grading: iterable of (twice_i, dim) pairs; twice_i = 2i is an integer.
    """
    ring = GroupRing(1)
    prec = d + 1
    zcoeffs = zeta_of_curve(curve).series_coefficients(d)
    series = series_one(ring, prec)
    for twice_i, dim in grading:
        twisted = [ring.term(0, twice_i * m, zcoeffs[m]) for m in range(prec)]
        for _ in range(dim):
            series = series_mul(series, twisted, prec)
    return series[d]


def adjoint_grading_system(curve: Curve) -> GradedLocalSystem:
    """The trivial-character system with twists -1, 0, 1 and shifts -2, 0, 2."""
    from .picard import characters

    pic = picard_group(curve)
    trivial = characters(pic, 1)[0]
    return GradedLocalSystem(
        curve,
        [
            GradedSummand(trivial, -2, -2),
            GradedSummand(trivial, 0, 0),
            GradedSummand(trivial, 2, 2),
        ],
    )


def leading_term_dimension(m: int, d: int) -> int:
    """binom(d + m - 1, m - 1): the top-weight multiplicity from an
    m-dimensional trivial part of H^2."""
    if m < 1 or d < 0:
        raise ValueError("need m >= 1 and d >= 0")
    return math.comb(d + m - 1, m - 1)


def weight_graded_h2_datum(m: int, extra_h1=None) -> FrobeniusDatum:
    """A datum with an m-dimensional weight-rendered trivial H^2.

    The H^2 eigenvalues are written as v^2 (the formal stand-in for q), so
    the top v-weight of sym_power_trace picks out exactly the symmetric
    powers of H^2; any integer-weight H^1 part supplied through extra_h1
    stays below the top weight.
    """
    ring = GroupRing(1)
    h2 = [ring.one]
    for _ in range(m):
        h2 = _poly_mul(h2, [ring.one, -ring.term(0, 2)])
    pieces = [(2, h2), (0, [ring.one, -ring.one])]
    if extra_h1:
        pieces.append((1, [ring.integer(c) for c in extra_h1]))
    return FrobeniusDatum(ring, pieces)
