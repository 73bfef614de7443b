"""Function-field machinery on the supported curve models.

Functions on a double cover y^2 + h*y = f(x) are stored as (a + b*y)/c with
a, b, c univariate polynomials, gcd(a, b, c) = 1 and c monic.  Orders of
vanishing at places are read off exact local power-series expansions in a
uniformizer, which is also how Riemann-Roch spaces impose their vanishing
conditions.

Riemann-Roch bases:

- P^1: explicit partial-fraction numerators.
- elliptic models: embed L(D) into L(N*[infinity]) by clearing finite poles
  with minimal polynomials of x-coordinates, then cut out the image by
  exact local vanishing conditions and take a reduced-echelon nullspace.
- hyperelliptic: divisors supported at infinity only (monomial bases).
"""

from __future__ import annotations

import math

from .errors import UnsupportedCurve, UnsupportedDivisor, ZeroFunction
from .fields import (
    FiniteField,
    Poly,
    RationalFunction,
    embedding,
    factor,
    poly_gcd,
    poly_roots,
)
from .curves import Curve, Divisor, Place, _section


class CurveFunction:
    """An element (a + b*y)/c of the function field of a double cover."""

    __slots__ = ("curve", "a", "b", "c")

    def __init__(self, curve: Curve, a: Poly, b: Poly = None, c: Poly = None):
        F = curve.field
        if b is None:
            b = Poly.zero(F)
        if c is None:
            c = Poly.one(F)
        if c.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(poly_gcd(a, b), c)
        if g.degree > 0:
            a, b, c = a // g, b // g, c // g
        lc = c.leading()
        if lc != 1:
            inv = F.inv(lc)
            a, b, c = a.scale(inv), b.scale(inv), c.scale(inv)
        self.curve = curve
        self.a, self.b, self.c = a, b, c

    @classmethod
    def zero(cls, curve: Curve) -> "CurveFunction":
        return cls(curve, Poly.zero(curve.field))

    @classmethod
    def one(cls, curve: Curve) -> "CurveFunction":
        return cls(curve, Poly.one(curve.field))

    @classmethod
    def const(cls, curve: Curve, code: int) -> "CurveFunction":
        return cls(curve, Poly(curve.field, (code,)))

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def is_constant(self) -> bool:
        return self.b.is_zero() and self.a.degree <= 0 and self.c.degree == 0

    def constant_code(self) -> int:
        assert self.is_constant()
        return self.a[0]

    def __add__(self, other: "CurveFunction") -> "CurveFunction":
        a = self.a * other.c + other.a * self.c
        b = self.b * other.c + other.b * self.c
        return CurveFunction(self.curve, a, b, self.c * other.c)

    def __neg__(self) -> "CurveFunction":
        return CurveFunction(self.curve, -self.a, -self.b, self.c)

    def __sub__(self, other: "CurveFunction") -> "CurveFunction":
        return self + (-other)

    def __mul__(self, other: "CurveFunction") -> "CurveFunction":
        cv = self.curve
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        # y^2 = f - h*y
        aa = a1 * a2 + b1 * b2 * cv.f
        bb = a1 * b2 + a2 * b1
        if cv.h:
            bb = bb - b1 * b2
        return CurveFunction(cv, aa, bb, self.c * other.c)

    def scale(self, code: int) -> "CurveFunction":
        return CurveFunction(self.curve, self.a.scale(code), self.b.scale(code), self.c)

    def norm_numerator(self) -> Poly:
        """The polynomial (a + b*y)(a + b*conj(y)) = a^2 - h*a*b - f*b^2."""
        n = self.a * self.a - self.b * self.b * self.curve.f
        if self.curve.h:
            n = n - self.a * self.b
        return n

    def evaluate(self, n: int, pt) -> int:
        """Value at an affine point over F_{q^n} (denominator must not vanish)."""
        ext, emb = self.curve.ext_field(n)
        x, y = pt
        num = ext.add(self.a.eval_in(ext, emb, x), ext.mul(self.b.eval_in(ext, emb, x), y))
        return ext.div(num, self.c.eval_in(ext, emb, x))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CurveFunction)
            and self.curve == other.curve
            and (self.a, self.b, self.c) == (other.a, other.b, other.c)
        )

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c))

    def __str__(self) -> str:
        from .curves import format_poly_short

        num = format_poly_short(self.a)
        if not self.b.is_zero():
            num = f"{num}+({format_poly_short(self.b)})*y"
        if self.c.degree == 0:
            return num
        return f"({num})/({format_poly_short(self.c)})"

    def __repr__(self) -> str:
        return f"CurveFunction({self})"


# -- truncated power series over an extension field ---------------------------


def _ser_mul(F: FiniteField, A, B, prec: int):
    out = [0] * prec
    for i, ca in enumerate(A):
        if i >= prec:
            break
        if ca:
            top = min(prec - i, len(B))
            for j in range(top):
                cb = B[j]
                if cb:
                    out[i + j] = F.add(out[i + j], F.mul(ca, cb))
    return out


def _ser_add(F: FiniteField, A, B):
    n = max(len(A), len(B))
    return [F.add(A[i] if i < len(A) else 0, B[i] if i < len(B) else 0) for i in range(n)]


def _ser_scale(F: FiniteField, A, c: int):
    return [F.mul(a, c) for a in A]


def _poly_on_series(F: FiniteField, coeffs, xser, prec: int):
    """Evaluate a polynomial (coeff codes over F) on a series, truncated."""
    acc = [0] * prec
    for c in reversed(coeffs):
        acc = _ser_mul(F, acc, xser, prec)
        acc[0] = F.add(acc[0], c)
    return acc


_EXPANSION_CACHE: dict[tuple, "PlaceExpansion"] = {}


def place_expansion(place: Place, prec: int) -> "PlaceExpansion":
    """Cached expansions; reuses any cached precision that is large enough."""
    key = (place.curve.descriptor(), place.degree, place.data[1:])
    got = _EXPANSION_CACHE.get(key)
    if got is None or got.prec < prec:
        got = _EXPANSION_CACHE[key] = PlaceExpansion(place, max(prec, 8))
    return got


class PlaceExpansion:
    """Exact power-series expansions of x and y at an affine place."""

    def __init__(self, place: Place, prec: int):
        curve = place.curve
        assert place.data[0] == "aff"
        m = place.degree
        ext, emb = curve.ext_field(m)
        xi, eta = place.point()
        f_ext = [emb(c) for c in curve.f.coeffs]
        h = curve.h
        lead = ext.add(ext.add(eta, eta), 1 if h else 0)  # 2*eta + h
        self.ext, self.emb, self.prec = ext, emb, prec
        if lead != 0:
            # uniformizer t = x - xi
            xser = ([xi, 1] + [0] * prec)[:prec]
            fser = _taylor_shift(ext, f_ext, xi, prec)
            y = [eta]
            inv_lead = ext.inv(lead)
            for k in range(1, prec):
                ys = y + [0]
                y2 = _ser_mul(ext, ys, ys, k + 1)
                if h:
                    y2 = _ser_add(ext, y2, ys)
                resid = ext.sub(y2[k], fser[k] if k < len(fser) else 0)
                y = y + [ext.mul(ext.neg(resid), inv_lead)]
            self.x, self.y = xser, y
        else:
            # ramified point of the x-cover (odd characteristic, eta = -h/2 = 0)
            assert curve.field.p != 2 and eta == 0
            # uniformizer t = y; solve f(x(t)) = t^2 with x(0) = xi
            fprime = [0] * max(0, len(f_ext) - 1)
            p = ext.p
            for i in range(1, len(f_ext)):
                fprime[i - 1] = ext.mul(i % p, f_ext[i])
            dinv = ext.inv(_horner(ext, fprime, xi))
            x = [xi]
            for k in range(1, prec):
                xs = x + [0]
                fx = _poly_on_series(ext, f_ext, xs, k + 1)
                target = 1 if k == 2 else 0
                resid = ext.sub(fx[k], target)
                x = x + [ext.mul(ext.neg(resid), dinv)]
            self.x = x
            self.y = [0, 1] + [0] * max(0, prec - 2)
            self.y = self.y[:prec]

    def series_of(self, a: Poly, b: Poly):
        """Series of a(x) + b(x)*y at the place."""
        ext, emb, prec = self.ext, self.emb, self.prec
        sa = _poly_on_series(ext, [emb(c) for c in a.coeffs], self.x, prec)
        if b.is_zero():
            return sa
        sb = _poly_on_series(ext, [emb(c) for c in b.coeffs], self.x, prec)
        return _ser_add(ext, sa, _ser_mul(ext, sb, self.y, prec))

    def series_of_poly(self, c: Poly):
        return _poly_on_series(
            self.ext, [self.emb(cc) for cc in c.coeffs], self.x, self.prec
        )


def _horner(F: FiniteField, coeffs, at: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, at), c)
    return acc


def _taylor_shift(F: FiniteField, coeffs, xi: int, prec: int):
    """Coefficients of f(xi + t) up to t^(prec-1)."""
    n = len(coeffs)
    out = [0] * prec
    for m in range(min(prec, n)):
        acc = 0
        powxi = 1
        for i in range(m, n):
            binom = math.comb(i, m) % F.p
            if binom:
                acc = F.add(acc, F.mul(F.mul(binom, coeffs[i]), powxi))
            powxi = F.mul(powxi, xi)
        out[m] = acc
    return out


def _valuation(series) -> int | None:
    for i, c in enumerate(series):
        if c:
            return i
    return None


def function_valuation(place: Place, func: CurveFunction, hint: int = 8) -> int:
    """ord_P of a nonzero function at an affine place."""
    if func.is_zero():
        raise ZeroFunction("valuation of the zero function")
    prec = hint
    while True:
        expn = place_expansion(place, prec)
        vnum = _valuation(expn.series_of(func.a, func.b))
        vden = _valuation(expn.series_of_poly(func.c))
        if vnum is not None and vden is not None:
            return vnum - vden
        prec *= 2
        if prec > 4096:
            raise AssertionError("valuation did not stabilize")


# -- places over the x-line ---------------------------------------------------


_ABOVE_CACHE: dict[tuple, list] = {}


def places_above_x_poly(curve: Curve, u: Poly) -> list[tuple[Place, int]]:
    """Places of a double cover above the monic irreducible u(x).

    Returns (place, e) pairs, e being the ramification index of the
    x-covering at the place (2 exactly at odd-characteristic branch points).
    """
    cache_key = (curve.descriptor(), u.coeffs)
    got = _ABOVE_CACHE.get(cache_key)
    if got is not None:
        return got
    out = _places_above_x_poly(curve, u)
    _ABOVE_CACHE[cache_key] = out
    return out


def _places_above_x_poly(curve: Curve, u: Poly) -> list[tuple[Place, int]]:
    m = u.degree
    ext, emb = curve.ext_field(m)
    xi = poly_roots(u.map_coeffs(ext, emb))[0]
    f_ext = curve.f.map_coeffs(ext, emb)
    v = f_ext(xi)
    ys = curve.y_solutions(m, v)
    if curve.h == 0 and v == 0:
        return [(Place.from_point(curve, m, (xi, 0)), 2)]
    if len(ys) == 2:
        return [(Place.from_point(curve, m, (xi, y)), 1) for y in ys]
    # inert in the cover: one place of degree 2m
    up = curve.tower_embedding(m, 2 * m)
    xi2 = up(xi)
    ys2 = curve.y_solutions(2 * m, up(v))
    assert ys2, "y must exist over the quadratic extension"
    place = Place.from_point(curve, 2 * m, (xi2, ys2[0]))
    assert place.degree == 2 * m
    return [(place, 1)]


def minimal_x_poly(curve: Curve, place: Place) -> Poly:
    """Minimal polynomial over F_q of the x-coordinate of an affine place."""
    assert place.data[0] == "aff"
    m = place.degree
    ext, _ = curve.ext_field(m)
    xi, _eta = place.point()
    xs = []
    cur = xi
    q = curve.field.q
    while cur not in xs:
        xs.append(cur)
        cur = ext.pow(cur, q)
    poly = [1]
    for r in xs:  # product of (X - r)
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] = ext.add(nxt[i + 1], c)
            nxt[i] = ext.sub(nxt[i], ext.mul(c, r))
        poly = nxt
    sec = _section(curve.field, ext)
    return Poly(curve.field, [sec[c] for c in poly])


def x_poly_divisor(curve: Curve, place: Place) -> tuple[Poly, Divisor]:
    """u_P and its divisor P (+ conjugate) - deg*(x poles) for an affine place."""
    u = minimal_x_poly(curve, place)
    m = place.degree
    xi, eta = place.point()
    ext, _ = curve.ext_field(m)
    conj_y = ext.neg(eta) if curve.h == 0 else ext.add(eta, 1)
    inf = _infty_place(curve)
    if conj_y == eta:
        fin = Divisor(curve, {place: 2})
    else:
        pbar = Place.from_point(curve, m, (xi, conj_y))
        if pbar == place:
            fin = Divisor(curve, {place: 1})
        else:
            fin = Divisor(curve, {place: 1, pbar: 1})
    return u, fin - Divisor(curve, {inf: 2 * u.degree})


def _infty_place(curve: Curve) -> Place:
    if curve.kind == "hyperelliptic" and curve.f.degree % 2 == 0:
        raise UnsupportedCurve("even-degree models have two places at infinity")
    return Place.at_infinity(curve)


# -- divisors of functions ----------------------------------------------------


def divisor_of_function(curve: Curve, func) -> Divisor:
    """The principal divisor div(f), a degree-zero divisor."""
    if curve.kind == "p1":
        return _divisor_p1(curve, func)
    if curve.kind == "hyperelliptic" and curve.f.degree % 2 == 0:
        raise UnsupportedCurve("divisors of functions on even-degree models")
    if isinstance(func, RationalFunction):
        func = CurveFunction(curve, func.num, c=func.den)
    elif isinstance(func, Poly):
        func = CurveFunction(curve, func)
    if func.is_zero():
        raise ZeroFunction("the zero function has no divisor")
    inf = _infty_place(curve)
    wy = curve.y_pole_order
    parts: dict[Place, int] = {}
    seen_u: set = set()
    for source in (func.norm_numerator(), func.c):
        if source.degree <= 0:
            continue
        for u, _mult in factor(source)[1]:
            if u in seen_u:
                continue
            seen_u.add(u)
            for place, _e in places_above_x_poly(curve, u):
                hint = 2 * max(source.degree, curve.f.degree) + 4
                order = function_valuation(place, func, hint=hint)
                if order:
                    parts[place] = order
    # order at the single place over infinity
    if func.a.is_zero():
        onum = -wy - 2 * func.b.degree
    elif func.b.is_zero():
        onum = -2 * func.a.degree
    else:
        onum = min(-2 * func.a.degree, -wy - 2 * func.b.degree)
    oden = -2 * func.c.degree
    if onum != oden:
        parts[inf] = onum - oden
    div = Divisor(curve, parts)
    assert div.degree == 0, f"principal divisor has degree {div.degree}"
    return div


def _divisor_p1(curve: Curve, func) -> Divisor:
    if isinstance(func, Poly):
        func = RationalFunction.from_poly(func)
    if func.is_zero():
        raise ZeroFunction("the zero function has no divisor")
    parts: dict[Place, int] = {}
    for poly, sign in ((func.num, 1), (func.den, -1)):
        if poly.degree <= 0:
            continue
        for u, m in factor(poly)[1]:
            place = Place.p1_finite(curve, u)
            parts[place] = parts.get(place, 0) + sign * m
    dinf = func.den.degree - func.num.degree
    if dinf:
        parts[Place.at_infinity(curve)] = dinf
    div = Divisor(curve, parts)
    assert div.degree == 0
    return div


# -- linear algebra over a finite field ---------------------------------------


def rref(F: FiniteField, rows: list[list[int]]):
    """Reduced row echelon form in place; returns pivot column list."""
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, v) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                fac = rows[i][c]
                rows[i] = [F.sub(rows[i][j], F.mul(fac, rows[r][j])) for j in range(ncols)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def nullspace(F: FiniteField, rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Canonical basis of the right nullspace (reduced echelon convention)."""
    work = [list(r) for r in rows if any(r)]
    pivots = rref(F, work)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = F.neg(work[r][fc])
        basis.append(vec)
    return basis


class ExtDecomposer:
    """Coordinates of F_{q^n} over F_q in the basis 1, T, ..., T^(n-1)."""

    def __init__(self, base: FiniteField, ext: FiniteField):
        self.base, self.ext = base, ext
        self.n = ext.k // base.k
        emb = embedding(base, ext)
        p, kn = base.p, ext.k
        cols = []
        for j in range(self.n):
            tj = ext.pow(ext.gen() if ext.k > 1 else 1, j)
            for i in range(base.k):
                si = emb(base.pow(base.gen() if base.k > 1 else 1, i))
                cols.append(ext.element_digits(ext.mul(tj, si)))
        # invert the (kn x kn) matrix over F_p
        Fp = FiniteField(p)
        mat = [[cols[c][r] for c in range(kn)] + _unit(kn, r) for r in range(kn)]
        piv = rref(Fp, mat)
        assert len(piv) == kn, "basis matrix must be invertible"
        self.inv = [row[kn:] for row in mat]

    def coords(self, z: int) -> list[int]:
        """Base-field codes c_j with z = sum emb(c_j) * T^j."""
        digits = self.ext.element_digits(z)
        p = self.base.p
        raw = [
            sum(self.inv[r][c] * digits[c] for c in range(len(digits))) % p
            for r in range(len(digits))
        ]
        k = self.base.k
        out = []
        for j in range(self.n):
            out.append(self.base.element_from_digits(raw[j * k : (j + 1) * k]))
        return out


def _unit(n: int, i: int) -> list[int]:
    row = [0] * n
    row[i] = 1
    return row


_DECOMPOSERS: dict[tuple, ExtDecomposer] = {}


def ext_decomposer(base: FiniteField, ext: FiniteField) -> ExtDecomposer:
    key = (base.p, base.k, ext.k)
    got = _DECOMPOSERS.get(key)
    if got is None:
        got = _DECOMPOSERS[key] = ExtDecomposer(base, ext)
    return got


# -- Riemann-Roch spaces -------------------------------------------------------


def riemann_roch_space(curve: Curve, D: Divisor) -> list:
    """A canonical basis of L(D) = {f : div(f) + D >= 0} (plus zero)."""
    if curve.kind == "p1":
        return _rr_p1(curve, D)
    if curve.kind == "hyperelliptic":
        return _rr_hyperelliptic_infinity(curve, D)
    return _rr_elliptic(curve, D)


def _rr_p1(curve: Curve, D: Divisor) -> list[RationalFunction]:
    F = curve.field
    U = Poly.one(F)
    V = Poly.one(F)
    n_inf = 0
    for place, m in D.items():
        if place.is_infinite():
            n_inf = m
        elif m > 0:
            U = U * place.data[1] ** m
        else:
            V = V * place.data[1] ** (-m)
    top = U.degree + n_inf - V.degree
    if top < 0:
        return []
    x = Poly.x(F)
    return [RationalFunction(V * x**j, U) for j in range(top + 1)]


def _rr_hyperelliptic_infinity(curve: Curve, D: Divisor) -> list[CurveFunction]:
    if curve.f.degree % 2 == 0:
        if not D.is_zero():
            raise UnsupportedDivisor("even-degree hyperelliptic models support only D = 0")
        return [CurveFunction.one(curve)]
    m = 0
    for place, mult in D.items():
        if not place.is_infinite():
            raise UnsupportedDivisor("hyperelliptic divisors must be supported at infinity")
        m = mult
    if m < 0:
        return []
    wy = curve.f.degree
    F = curve.field
    basis = [CurveFunction(curve, Poly.monomial(F, i)) for i in range(m // 2 + 1) if 2 * i <= m]
    basis += [
        CurveFunction(curve, Poly.zero(F), Poly.monomial(F, i))
        for i in range((m - wy) // 2 + 1)
        if 2 * i + wy <= m
    ]
    return basis


def _rr_elliptic(curve: Curve, D: Divisor) -> list[CurveFunction]:
    F = curve.field
    inf = _infty_place(curve)
    U = Poly.one(F)
    div_u_total = Divisor.zero(curve)
    n_inf = 0
    for place, m in D.items():
        if place.is_infinite():
            n_inf = m
        elif m > 0:
            u, div_u = x_poly_divisor(curve, place)
            U = U * u**m
            div_u_total = div_u_total + div_u * m
    dd = D - div_u_total
    N = dd.multiplicity(inf)
    if N < 0:
        return []
    wy = curve.y_pole_order
    monomials = [(i, 0) for i in range(N // 2 + 1)]
    monomials += [(i, 1) for i in range((N - wy) // 2 + 1) if 2 * i + wy <= N]
    conditions = [
        (place, -m) for place, m in dd.items() if not place.is_infinite() and m < 0
    ]
    rows: list[list[int]] = []
    for place, order in conditions:
        expn = place_expansion(place, order)
        dec = ext_decomposer(F, expn.ext)
        per_mono = []
        for i, j in monomials:
            a = Poly.monomial(F, i) if j == 0 else Poly.zero(F)
            b = Poly.monomial(F, i) if j == 1 else Poly.zero(F)
            per_mono.append(expn.series_of(a, b))
        for t in range(order):
            for coord in range(dec.n):
                rows.append([dec.coords(per_mono[c][t])[coord] for c in range(len(monomials))])
    vectors = nullspace(F, rows, len(monomials)) if rows else [
        _unit(len(monomials), i) for i in range(len(monomials))
    ]
    out = []
    for vec in vectors:
        a = Poly.zero(F)
        b = Poly.zero(F)
        for (i, j), coeff in zip(monomials, vec):
            if coeff:
                if j == 0:
                    a = a + Poly.monomial(F, i, coeff)
                else:
                    b = b + Poly.monomial(F, i, coeff)
        out.append(CurveFunction(curve, a, b, U))
    return out
