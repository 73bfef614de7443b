"""Picard groups of the supported curves and their finite-order characters.

Pic^0(F_q) is realized concretely: trivially for P^1, as the rational point
group for elliptic models, and through Cantor composition on reduced Mumford
pairs for genus-2 curves y^2 = f(x) with deg f = 5.  A fixed degree-1 place
splits degrees, so Pic = Pic^0 x Z and a character is a homomorphism
Pic^0 -> Z/N together with a finite-order value on the degree-1 class.

The group order is always cross-checked against the zeta numerator at t = 1.
"""

from __future__ import annotations

import itertools
from math import gcd

from .curves import Curve, Divisor, Place, places_of_degree
from .errors import UnsupportedCurve
from .fields import FiniteField, Poly, poly_xgcd
from .funcfield import ext_decomposer, rref
from .curves import _section
from .zeta import zeta_of_curve


# -- elliptic point arithmetic -------------------------------------------------


def elliptic_params(curve: Curve):
    """(a2, a3, a4, a6) with y^2 + a3*y = x^3 + a2*x^2 + a4*x + a6, as codes."""
    f = curve.f
    if curve.kind == "elliptic":
        return (0, 0, curve.a, curve.b)
    if curve.kind == "elliptic2":
        return (f[2], 1, f[1], f[0])
    raise UnsupportedCurve("not an elliptic model")


def ell_neg(curve: Curve, F: FiniteField, emb, P):
    if P is None:
        return None
    _, a3, _, _ = elliptic_params(curve)
    x, y = P
    return (x, F.sub(F.neg(y), emb(a3) if a3 else 0))


def ell_add(curve: Curve, F: FiniteField, emb, P, Q):
    """Chord-tangent addition over any extension F of the base field."""
    if P is None:
        return Q
    if Q is None:
        return P
    a2, a3, a4, _ = elliptic_params(curve)
    ea2 = emb(a2) if a2 else 0
    ea3 = emb(a3) if a3 else 0
    ea4 = emb(a4)
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y2 == F.sub(F.neg(y1), ea3):
            return None
        # doubling: lambda = (3x^2 + 2 a2 x + a4) / (2y + a3)
        num = F.add(
            F.add(F.mul(3 % F.p, F.mul(x1, x1)), F.mul(2 % F.p, F.mul(ea2, x1))), ea4
        )
        den = F.add(F.add(y1, y1), ea3)
        lam = F.div(num, den)
    else:
        lam = F.div(F.sub(y2, y1), F.sub(x2, x1))
    x3 = F.sub(F.sub(F.sub(F.mul(lam, lam), ea2), x1), x2)
    y3 = F.sub(F.sub(F.mul(lam, F.sub(x1, x3)), y1), ea3)
    return (x3, y3)


def ell_mul(curve: Curve, F: FiniteField, emb, n: int, P):
    if n < 0:
        return ell_mul(curve, F, emb, -n, ell_neg(curve, F, emb, P))
    acc = None
    base = P
    while n:
        if n & 1:
            acc = ell_add(curve, F, emb, acc, base)
        base = ell_add(curve, F, emb, base, base)
        n >>= 1
    return acc


def elliptic_points(curve: Curve) -> list:
    """E(F_q) including the point at infinity (None)."""
    return [None] + curve.affine_points(1)


# -- Mumford arithmetic for genus-2 odd-degree models ---------------------------


class MumfordGroup:
    """Jacobian arithmetic on y^2 = f(x), deg f = 5, via Cantor's algorithm."""

    def __init__(self, curve: Curve):
        assert curve.kind == "hyperelliptic" and curve.f.degree == 5
        if not curve.f.is_monic():
            raise UnsupportedCurve("genus-2 arithmetic needs a monic degree-5 model")
        self.curve = curve
        self.F = curve.field
        self.f = curve.f
        self.genus = 2

    def zero(self):
        F = self.F
        return (Poly.one(F).coeffs, Poly.zero(F).coeffs)

    def _wrap(self, u: Poly, v: Poly):
        return (u.coeffs, v.coeffs)

    def _unwrap(self, el):
        return Poly(self.F, el[0]), Poly(self.F, el[1])

    def neg(self, el):
        u, v = self._unwrap(el)
        return self._wrap(u, (-v) % u if u.degree > 0 else -v)

    def add(self, el1, el2):
        F = self.F
        u1, v1 = self._unwrap(el1)
        u2, v2 = self._unwrap(el2)
        # composition (Cantor): d = gcd(u1, u2, v1 + v2)
        d1, e1, e2 = poly_xgcd(u1, u2)
        d, c1, c2 = poly_xgcd(d1, v1 + v2)
        s1, s2, s3 = c1 * e1, c1 * e2, c2
        u = (u1 * u2) // (d * d)
        num = s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + self.f)
        v = (num // d) % u
        return self._wrap(*self._reduce(u.monic(), v))

    def _reduce(self, u: Poly, v: Poly):
        while u.degree > self.genus:
            u = ((self.f - v * v) // u).monic()
            v = (-v) % u
        return u, v % u if u.degree > 0 else Poly.zero(self.F)

    def semi_reduced_from(self, u: Poly, v: Poly):
        """Reduce a semi-reduced pair (u | v^2 - f) to canonical form."""
        assert ((v * v - self.f) % u).is_zero()
        return self._wrap(*self._reduce(u.monic(), v % u))

    def elements(self) -> list:
        """All reduced Mumford pairs, enumerated exhaustively."""
        F = self.F
        out = [self.zero()]
        # weight one: u = x - r, v = const with v^2 = f(r)
        for r in F.elements():
            fr = self.f(r)
            ys = self.curve.y_solutions(1, fr)
            for y in ys:
                out.append(((F.neg(r), 1), (y,) if y else ()))
        # weight two: u monic quadratic, v = v1*x + v0 with u | v^2 - f
        for u0 in F.elements():
            for u1 in F.elements():
                u = Poly(F, (u0, u1, 1))
                for v0 in F.elements():
                    for v1 in F.elements():
                        v = Poly(F, (v0, v1))
                        if ((v * v - self.f) % u).is_zero():
                            out.append((u.coeffs, v.coeffs))
        return out


# -- abstract finite abelian group structure -----------------------------------


class PicardGroup:
    """Pic^0(X)(F_q) with explicit composition, structure, and discrete logs."""

    def __init__(self, curve: Curve):
        self.curve = curve
        kind = curve.kind
        if kind == "p1":
            self._impl = "trivial"
        elif kind in ("elliptic", "elliptic2"):
            self._impl = "elliptic"
        elif kind == "hyperelliptic" and curve.genus == 2 and curve.f.degree == 5:
            self._impl = "mumford"
            self._mumford = MumfordGroup(curve)
        else:
            raise UnsupportedCurve(f"no Picard arithmetic for {curve.descriptor()!r}")
        self.base_place = self._find_base_place()
        self._elements = self._enumerate()
        self.order = len(self._elements)
        zdata = zeta_of_curve(curve)
        assert self.order == zdata.class_number(), (
            f"enumerated order {self.order} != P(1) = {zdata.class_number()}"
        )
        self.zeta = zdata
        self._build_structure()
        self._place_class_cache: dict[Place, object] = {}

    # -- composition -----------------------------------------------------

    def zero_element(self):
        if self._impl == "trivial":
            return ()
        if self._impl == "elliptic":
            return None
        return self._mumford.zero()

    def add(self, a, b):
        if self._impl == "trivial":
            return ()
        if self._impl == "elliptic":
            return ell_add(self.curve, self.curve.field, lambda c: c, a, b)
        return self._mumford.add(a, b)

    def neg(self, a):
        if self._impl == "trivial":
            return ()
        if self._impl == "elliptic":
            return ell_neg(self.curve, self.curve.field, lambda c: c, a)
        return self._mumford.neg(a)

    def mul(self, n: int, a):
        if n < 0:
            return self.mul(-n, self.neg(a))
        acc = self.zero_element()
        base = a
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc

    def elements(self) -> list:
        return list(self._elements)

    # -- structure ---------------------------------------------------------

    def _enumerate(self) -> list:
        if self._impl == "trivial":
            return [()]
        if self._impl == "elliptic":
            return elliptic_points(self.curve)
        return self._mumford.elements()

    def _order_of(self, a) -> int:
        n = 1
        cur = a
        zero = self.zero_element()
        while cur != zero:
            cur = self.add(cur, a)
            n += 1
        return n

    def _build_structure(self):
        zero = self.zero_element()
        span = {self._key(zero): ()}
        gens: list = []
        factors: list[int] = []
        while len(span) < self.order:
            best, best_ord = None, 0
            for el in self._elements:
                # order in the quotient by the current span
                cur = el
                k = 1
                while self._key(cur) not in span:
                    cur = self.add(cur, el)
                    k += 1
                if k > best_ord:
                    best, best_ord = el, k
            # adjust the lift so its absolute order equals its quotient order
            lift = best
            if factors:
                fixed = None
                for combo in itertools.product(*[range(n) for n in factors]):
                    cand = best
                    for g, c in zip(gens, combo):
                        if c:
                            cand = self.add(cand, self.mul(c, g))
                    if self._order_of(cand) == best_ord:
                        fixed = cand
                        break
                assert fixed is not None, "no clean generator lift found"
                lift = fixed
            gens.append(lift)
            factors.append(best_ord)
            # rebuild the span with discrete logs
            span = {}
            for combo in itertools.product(*[range(n) for n in factors]):
                el = zero
                for g, c in zip(gens, combo):
                    if c:
                        el = self.add(el, self.mul(c, g))
                span[self._key(el)] = combo
        self.generators = gens
        self.invariant_factors = factors
        self.exponent = factors[0] if factors else 1
        self._dlog = span
        assert all(
            factors[i] % factors[i + 1] == 0 for i in range(len(factors) - 1)
        ), f"invariant factors {factors} are not a divisibility chain"

    @staticmethod
    def _key(el):
        return el

    def dlog(self, el) -> tuple:
        """Exponent vector of an element with respect to the generators."""
        return self._dlog[self._key(el)]

    # -- divisor classes ------------------------------------------------------

    def _find_base_place(self) -> Place:
        for pl in places_of_degree(self.curve, 1):
            if pl.is_infinite():
                return pl
        raise UnsupportedCurve("curve has no rational place at infinity")

    def class_of_place(self, place: Place):
        """The class of [P] - deg(P) * [base] in Pic^0."""
        got = self._place_class_cache.get(place)
        if got is not None:
            return got
        if self._impl == "trivial":
            out = ()
        elif place.is_infinite():
            out = self.zero_element()
        elif self._impl == "elliptic":
            out = self._elliptic_place_class(place)
        else:
            out = self._mumford_place_class(place)
        self._place_class_cache[place] = out
        return out

    def _elliptic_place_class(self, place: Place) -> object:
        curve = self.curve
        n = place.degree
        ext, emb = curve.ext_field(n)
        pt = place.point()
        acc = None
        cur = pt
        for _ in range(n):
            acc = ell_add(curve, ext, emb, acc, cur)
            cur = curve.frobenius_point(ext, cur)
        if acc is None:
            return None
        sec = _section(curve.field, ext)
        return (sec[acc[0]], sec[acc[1]])

    def _mumford_place_class(self, place: Place):
        curve = self.curve
        F = curve.field
        n = place.degree
        ext, emb = curve.ext_field(n)
        xi, eta = place.point()
        # minimal polynomial of xi over F_q
        xs = []
        cur = xi
        while cur not in xs:
            xs.append(cur)
            cur = ext.pow(cur, F.q)
        m = len(xs)
        upoly = [1]
        for r in xs:
            nxt = [0] * (len(upoly) + 1)
            for i, c in enumerate(upoly):
                nxt[i + 1] = ext.add(nxt[i + 1], c)
                nxt[i] = ext.sub(nxt[i], ext.mul(c, r))
            upoly = nxt
        sec = _section(F, ext)
        u = Poly(F, [sec[c] for c in upoly])
        if m < n:
            # the orbit covers both sheets over each x: the place is the full
            # fiber of u(x), which is principal up to multiples of the base
            return self.zero_element()
        # interpolate v with v(xi) = eta in the basis 1, xi, ..., xi^{n-1}
        if eta == 0:
            v = Poly.zero(F)
        else:
            dec = ext_decomposer(F, ext)
            cols = []
            powxi = 1
            for _ in range(n):
                cols.append(dec.coords(powxi))
                powxi = ext.mul(powxi, xi)
            rhs = dec.coords(eta)
            mat = [[cols[c][r] for c in range(n)] + [rhs[r]] for r in range(n)]
            piv = rref(F, mat)
            assert len(piv) == n, "x-coordinate powers must be independent"
            v = Poly(F, [mat[r][n] for r in range(n)])
        return self._mumford.semi_reduced_from(u, v)

    def class_of_divisor(self, D: Divisor):
        """The class of [D] - deg(D) * [base] in Pic^0."""
        acc = self.zero_element()
        for place, m in D.items():
            acc = self.add(acc, self.mul(m, self.class_of_place(place)))
        return acc


def picard_group(curve: Curve) -> PicardGroup:
    got = _PICARD_CACHE.get(curve.descriptor())
    if got is None:
        got = _PICARD_CACHE[curve.descriptor()] = PicardGroup(curve)
    return got


_PICARD_CACHE: dict[str, PicardGroup] = {}


# -- characters -----------------------------------------------------------------


class TorusCharacter:
    """A character Pic -> Z/N: a homomorphism on Pic^0 plus a degree value."""

    __slots__ = ("pic", "modulus", "gen_values", "degree_value")

    def __init__(self, pic: PicardGroup, modulus: int, gen_values, degree_value: int):
        self.pic = pic
        self.modulus = modulus
        self.gen_values = tuple(v % modulus for v in gen_values)
        self.degree_value = degree_value % modulus
        for v, n in zip(self.gen_values, pic.invariant_factors):
            assert (v * n) % modulus == 0, "character value has wrong order"

    def value_of_class(self, el) -> int:
        vec = self.pic.dlog(el)
        return sum(v * c for v, c in zip(self.gen_values, vec)) % self.modulus

    def value_of_place(self, place: Place) -> int:
        cls = self.pic.class_of_place(place)
        return (self.value_of_class(cls) + place.degree * self.degree_value) % self.modulus

    def value_of_divisor(self, D: Divisor) -> int:
        cls = self.pic.class_of_divisor(D)
        return (self.value_of_class(cls) + D.degree * self.degree_value) % self.modulus

    def power(self, m: int) -> "TorusCharacter":
        return TorusCharacter(
            self.pic,
            self.modulus,
            [v * m for v in self.gen_values],
            self.degree_value * m,
        )

    def is_trivial_on_pic0(self) -> bool:
        return all(v == 0 for v in self.gen_values)

    def is_trivial(self) -> bool:
        return self.is_trivial_on_pic0() and self.degree_value == 0

    def order_on_pic0(self) -> int:
        n = 1
        for v in self.gen_values:
            if v:
                n = n * (self.modulus // gcd(v, self.modulus)) // gcd(
                    n, self.modulus // gcd(v, self.modulus)
                )
        return n

    def key(self) -> tuple:
        return (self.gen_values, self.degree_value, self.modulus)

    def __eq__(self, other) -> bool:
        return isinstance(other, TorusCharacter) and self.key() == other.key() and self.pic is other.pic

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"TorusCharacter(vals={self.gen_values}, deg={self.degree_value}, N={self.modulus})"


def characters(pic: PicardGroup, degree_order: int = 1) -> list[TorusCharacter]:
    """All characters of Pic^0 crossed with degree values of the given order.

    The modulus is lcm(exponent, degree_order); the list is deterministic
    and has size |Pic^0| * degree_order.
    """
    if degree_order < 1:
        raise ValueError("degree_order must be >= 1")
    N = pic.exponent
    N = N * degree_order // gcd(N, degree_order)
    out = []
    choice_sets = [range(0, N, N // n) if n > 1 else [0] for n in pic.invariant_factors]
    for vec in itertools.product(*choice_sets):
        for dv in range(0, N, N // degree_order):
            out.append(TorusCharacter(pic, N, vec, dv))
    return out
