"""Curve models over finite fields: places, divisors, point counting.

Supported models:

- ``p1``             the projective line
- ``elliptic``       y^2 = x^3 + a x + b, odd characteristic
- ``elliptic2``      y^2 + y = f(x), f monic cubic, characteristic 2
- ``hyperelliptic``  y^2 = f(x), f squarefree of degree 2g+1 or 2g+2, odd char

The last three are all double covers of the x-line, handled uniformly as
y^2 + h*y = f with h = 0 or h = 1.  A place (closed point) is a Frobenius
orbit; places are stored by a canonical orbit representative over the
extension field of their exact degree, so places constructed along
different routes compare equal structurally.
"""

from __future__ import annotations

import functools

from .errors import CapExceeded, DescriptorError, UnsupportedCurve
from .fields import (
    DEFAULT_FIELD_CAP,
    FieldEmbedding,
    FiniteField,
    Poly,
    embedding,
    format_poly,
    make_field,
    monic_irreducibles,
    parse_poly,
    poly_gcd,
)

DEFAULT_ENUM_CAP = 1 << 22


def format_poly_short(f: Poly) -> str:
    """Compact rendering with implicit unit coefficients (used in labels)."""
    if f.is_zero():
        return "0"
    terms = []
    for d in range(f.degree, -1, -1):
        c = f[d]
        if c == 0:
            continue
        if d == 0:
            terms.append(str(c))
        else:
            head = "" if c == 1 else f"{c}*"
            terms.append(f"{head}x" if d == 1 else f"{head}x^{d}")
    return "+".join(terms)


class Curve:
    """A smooth projective geometrically connected curve in one of the models."""

    def __init__(self, kind: str, field: FiniteField, **params):
        self.kind = kind
        self.field = field
        self._ext_cache: dict[int, tuple[FiniteField, object]] = {}
        self._places_cache: dict[int, list] = {}
        self._as_cache: dict[int, dict] = {}
        if kind == "p1":
            self.h = None
            self.f = None
        elif kind == "elliptic":
            if field.p == 2:
                raise UnsupportedCurve("short Weierstrass model needs odd characteristic")
            a, b = params["a"] % field.q, params["b"] % field.q
            self.a, self.b = a, b
            x = Poly.x(field)
            self.f = x**3 + Poly(field, (a,)) * x + Poly(field, (b,))
            self.h = 0
            disc = field.add(
                field.mul(4 % field.p, field.pow(a, 3)),
                field.mul(27 % field.p, field.mul(b, b)),
            )
            if disc == 0:
                raise UnsupportedCurve("singular Weierstrass model (4a^3+27b^2 = 0)")
        elif kind == "elliptic2":
            if field.p != 2:
                raise UnsupportedCurve("y^2+y = f(x) model needs characteristic 2")
            f = params["f"]
            if f.degree != 3 or not f.is_monic():
                raise UnsupportedCurve("elliptic2 needs a monic cubic f")
            self.f = f
            self.h = 1
        elif kind == "hyperelliptic":
            if field.p == 2:
                raise UnsupportedCurve("hyperelliptic model needs odd characteristic")
            f = params["f"]
            if f.degree < 5:
                raise UnsupportedCurve("hyperelliptic model needs deg f >= 5")
            d = f.derivative()
            if d.is_zero() or poly_gcd(f, d).degree > 0:
                raise UnsupportedCurve("hyperelliptic f must be squarefree")
            self.f = f
            self.h = 0
        else:
            raise UnsupportedCurve(f"unknown curve kind {kind!r}")

    # -- basic invariants ------------------------------------------------

    @property
    def genus(self) -> int:
        if self.kind == "p1":
            return 0
        if self.kind in ("elliptic", "elliptic2"):
            return 1
        return (self.f.degree - 1) // 2

    def is_quadratic_model(self) -> bool:
        return self.kind != "p1"

    @property
    def y_pole_order(self) -> int:
        """Pole order of y at a place over infinity (odd-degree models)."""
        if self.kind in ("elliptic", "elliptic2"):
            return 3
        return self.f.degree if self.f.degree % 2 else self.f.degree // 2

    def descriptor(self) -> str:
        q = self.field.q
        if self.kind == "p1":
            return f"p1:q={q}"
        if self.kind == "elliptic":
            return f"ell:q={q};a={self.a};b={self.b}"
        if self.kind == "elliptic2":
            return f"ell2:q={q};f={format_poly(self.f)}"
        return f"hyp:q={q};f={format_poly(self.f)}"

    def __repr__(self) -> str:
        return f"Curve({self.descriptor()!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Curve) and self.descriptor() == other.descriptor()

    def __hash__(self) -> int:
        return hash(self.descriptor())

    # -- extension fields ---------------------------------------------------

    def ext_field(self, n: int, cap: int = DEFAULT_FIELD_CAP):
        """Return (F_{q^n}, embedding of the base field into it)."""
        got = self._ext_cache.get(n)
        if got is not None:
            return got
        F = self.field
        ext = make_field(F.p, F.k * n, cap=cap)
        emb = embedding(F, ext)
        self._ext_cache[n] = (ext, emb)
        return ext, emb

    def base_change(self, n: int, cap: int = DEFAULT_FIELD_CAP) -> "Curve":
        """The same equation over F_{q^n}."""
        ext, emb = self.ext_field(n, cap=cap)
        if self.kind == "p1":
            return Curve("p1", ext)
        if self.kind == "elliptic":
            return Curve("elliptic", ext, a=emb(self.a), b=emb(self.b))
        return Curve(self.kind, ext, f=self.f.map_coeffs(ext, emb))

    def tower_embedding(self, m: int, n: int):
        """F_{q^m} -> F_{q^n} (m | n) commuting with the base embeddings.

        Among the roots of the degree-m modulus in F_{q^n}, the least one
        whose induced map carries the embedded base generator of F_{q^m}
        onto the embedded base generator of F_{q^n} is chosen; for a prime
        base field every root qualifies and the least is taken.
        """
        assert n % m == 0
        key = ("tower", m, n)
        got = self._ext_cache.get(key)
        if got is not None:
            return got
        small, emb_small = self.ext_field(m)
        big, emb_big = self.ext_field(n)
        if m == 1:
            out = emb_big
        else:
            base_gen = self.field.gen()
            want = emb_big(base_gen)
            chosen = None
            for root in FieldEmbedding.candidate_roots(small, big):
                cand = FieldEmbedding(small, big, gen_image=root)
                if cand(emb_small(base_gen)) == want:
                    chosen = cand
                    break
            assert chosen is not None, "no base-compatible tower embedding"
            out = chosen
        self._ext_cache[key] = out
        return out

    def tower_section(self, m: int, n: int) -> dict:
        """Inverse lookup of tower_embedding on its image (cached)."""
        key = ("section", m, n)
        got = self._ext_cache.get(key)
        if got is None:
            emb = self.tower_embedding(m, n)
            small, _ = self.ext_field(m)
            got = {emb(a): a for a in small.elements()}
            self._ext_cache[key] = got
        return got

    def frobenius_point(self, ext: FiniteField, pt):
        """Base-field Frobenius (q-power) on a point over an extension."""
        q = self.field.q
        x, y = pt
        return (ext.pow(x, q), ext.pow(y, q))

    # -- affine point solving -------------------------------------------------

    def _as_solutions(self, n: int) -> dict:
        """For characteristic 2: map v -> smallest y with y^2 + y = v over F_{q^n}."""
        got = self._as_cache.get(n)
        if got is not None:
            return got
        ext, _ = self.ext_field(n)
        sol: dict[int, int] = {}
        for y in ext.elements():
            v = ext.add(ext.mul(y, y), y)
            if v not in sol:
                sol[v] = y
        self._as_cache[n] = sol
        return sol

    def y_solutions(self, n: int, v: int) -> list[int]:
        """Solutions of y^2 + h*y = v over F_{q^n}, ascending codes."""
        ext, _ = self.ext_field(n)
        if self.h == 1:
            sol = self._as_solutions(n).get(v)
            if sol is None:
                return []
            other = ext.add(sol, 1)
            return sorted((sol, other))
        if v == 0:
            return [0]
        r = ext.sqrt(v)
        if r is None:
            return []
        return sorted((r, ext.neg(r)))

    def affine_points(self, n: int):
        """All affine points over F_{q^n} (deterministic order)."""
        ext, emb = self.ext_field(n)
        f_ext = self.f.map_coeffs(ext, emb)
        out = []
        for x in ext.elements():
            v = f_ext(x)
            for y in self.y_solutions(n, v):
                out.append((x, y))
        return out

    def infinity_count(self, n: int) -> int:
        """Number of points at infinity on the smooth model over F_{q^n}."""
        if self.kind == "p1":
            return 1
        if self.kind in ("elliptic", "elliptic2"):
            return 1
        if self.f.degree % 2:
            return 1
        ext, emb = self.ext_field(n)
        return 2 if ext.is_square(emb(self.f.leading())) else 0


def parse_curve(text: str, cap: int = DEFAULT_FIELD_CAP) -> Curve:
    """Parse a curve descriptor such as "ell:q=3;a=1;b=0"."""
    kind, _, rest = text.partition(":")
    fields = {}
    if rest:
        for item in rest.split(";"):
            key, eq, val = item.partition("=")
            if not eq:
                raise DescriptorError(f"bad descriptor item {item!r} in {text!r}")
            fields[key.strip()] = val.strip()
    if "q" not in fields:
        raise DescriptorError(f"descriptor {text!r} is missing q=")
    try:
        q = int(fields["q"])
    except ValueError:
        raise DescriptorError(f"bad field size in {text!r}") from None
    p, k = _split_prime_power(q, text)
    field = make_field(p, k, cap=cap)
    try:
        if kind == "p1":
            return Curve("p1", field)
        if kind == "ell":
            return Curve("elliptic", field, a=int(fields["a"]), b=int(fields["b"]))
        if kind == "ell2":
            return Curve("elliptic2", field, f=parse_poly(field, fields["f"]))
        if kind == "hyp":
            return Curve("hyperelliptic", field, f=parse_poly(field, fields["f"]))
    except KeyError as e:
        raise DescriptorError(f"descriptor {text!r} is missing {e}") from None
    except ValueError as e:
        raise DescriptorError(f"bad descriptor {text!r}: {e}") from None
    raise DescriptorError(f"unknown curve kind {kind!r}")


def _split_prime_power(q: int, ctx: str):
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            if q != 1:
                raise DescriptorError(f"{ctx!r}: field size is not a prime power")
            return p, k
    raise DescriptorError(f"{ctx!r}: bad field size")


class Place:
    """A closed point of a curve, keyed by a canonical orbit representative."""

    __slots__ = ("curve", "degree", "data")

    def __init__(self, curve: Curve, degree: int, data: tuple):
        self.curve = curve
        self.degree = degree
        self.data = data

    @classmethod
    def p1_finite(cls, curve: Curve, poly: Poly) -> "Place":
        return cls(curve, poly.degree, ("fin", poly))

    @classmethod
    def at_infinity(cls, curve: Curve, branch: int = 0, degree: int = 1) -> "Place":
        return cls(curve, degree, ("inf", branch))

    @classmethod
    def from_point(cls, curve: Curve, n: int, pt) -> "Place":
        """The place of an affine point over F_{q^n} (any orbit size dividing n)."""
        ext, _ = curve.ext_field(n)
        orbit = [pt]
        cur = curve.frobenius_point(ext, pt)
        while cur != pt:
            orbit.append(cur)
            cur = curve.frobenius_point(ext, cur)
        m = len(orbit)
        if m == n:
            return cls(curve, m, ("aff", m, min(orbit)))
        # re-encode the representative over the canonical field of degree m,
        # through the base-compatible tower section
        down = curve.tower_section(m, n)
        reduced = [(down[x], down[y]) for (x, y) in orbit]
        return cls(curve, m, ("aff", m, min(reduced)))

    def is_infinite(self) -> bool:
        return self.data[0] == "inf"

    def point(self):
        """The canonical representative point (affine places only)."""
        assert self.data[0] == "aff"
        return self.data[2]

    def label(self) -> str:
        tag = self.data[0]
        if tag == "fin":
            return format_poly_short(self.data[1])
        if tag == "inf":
            if self.curve.kind == "hyperelliptic" and self.curve.f.degree % 2 == 0:
                if self.degree == 2:
                    return "inf"
                return "inf+" if self.data[1] == 0 else "inf-"
            return "inf"
        _, m, (x, y) = self.data
        return f"pt({x},{y};{m})"

    def sort_key(self) -> tuple:
        tag = self.data[0]
        if tag == "fin":
            return (0, self.degree, self.data[1].sort_key())
        if tag == "aff":
            return (0, self.degree, self.data[2])
        return (1, self.degree, self.data[1])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Place)
            and self.curve == other.curve
            and self.degree == other.degree
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.degree,) + _hashable(self.data))

    def __repr__(self) -> str:
        return f"Place[{self.label()};deg{self.degree}]"


def _hashable(data):
    return tuple(x if not isinstance(x, Poly) else x.coeffs for x in data)


@functools.lru_cache(maxsize=None)
def _section(small: FiniteField, big: FiniteField) -> dict:
    emb = embedding(small, big)
    return {emb(a): a for a in small.elements()}


class Divisor:
    """A finite formal integer combination of places of one curve."""

    __slots__ = ("curve", "_m")

    def __init__(self, curve: Curve, items=()):
        self.curve = curve
        m: dict[Place, int] = {}
        for place, mult in dict(items).items():
            if mult:
                m[place] = mult
        self._m = m

    @classmethod
    def zero(cls, curve: Curve) -> "Divisor":
        return cls(curve)

    @classmethod
    def of_place(cls, place: Place, mult: int = 1) -> "Divisor":
        return cls(place.curve, {place: mult})

    def multiplicity(self, place: Place) -> int:
        return self._m.get(place, 0)

    def items(self):
        return sorted(self._m.items(), key=lambda kv: kv[0].sort_key())

    def support(self):
        return [p for p, _ in self.items()]

    @property
    def degree(self) -> int:
        return sum(m * p.degree for p, m in self._m.items())

    def is_effective(self) -> bool:
        return all(m > 0 for m in self._m.values())

    def is_zero(self) -> bool:
        return not self._m

    def __add__(self, other: "Divisor") -> "Divisor":
        m = dict(self._m)
        for p, k in other._m.items():
            m[p] = m.get(p, 0) + k
        return Divisor(self.curve, m)

    def __neg__(self) -> "Divisor":
        return Divisor(self.curve, {p: -k for p, k in self._m.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, n: int) -> "Divisor":
        return Divisor(self.curve, {p: n * k for p, k in self._m.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Divisor)
            and self.curve == other.curve
            and self._m == other._m
        )

    def __hash__(self) -> int:
        return hash(frozenset((hash(p), k) for p, k in self._m.items()))

    def text(self) -> str:
        if not self._m:
            return "0"
        return "+".join(f"{m}*[{p.label()}]" for p, m in self.items())

    def __repr__(self) -> str:
        return f"Divisor({self.text()})"


# -- point counting and places ------------------------------------------------


def point_count(curve: Curve, n: int, cap: int = DEFAULT_FIELD_CAP) -> int:
    """#X(F_{q^n}) by exhaustive enumeration (plus points at infinity)."""
    if curve.field.q**n > cap:
        raise CapExceeded(f"point enumeration over q^{n} exceeds cap {cap}")
    if curve.kind == "p1":
        return curve.field.q**n + 1
    ext, emb = curve.ext_field(n, cap=cap)
    f_ext = curve.f.map_coeffs(ext, emb)
    total = curve.infinity_count(n)
    if curve.h == 1:
        for x in ext.elements():
            if ext.trace_to_prime(f_ext(x)) == 0:
                total += 2
        return total
    for x in ext.elements():
        v = f_ext(x)
        if v == 0:
            total += 1
        elif ext.is_square(v):
            total += 2
    return total


def places_of_degree(curve: Curve, n: int, cap: int = DEFAULT_FIELD_CAP) -> list:
    """All places of degree exactly n, deterministically ordered."""
    cached = curve._places_cache.get(n)
    if cached is not None:
        return list(cached)
    if curve.field.q**n > cap:
        raise CapExceeded(f"place enumeration at degree {n} exceeds cap {cap}")
    out = []
    if curve.kind == "p1":
        if n == 1:
            out.append(Place.at_infinity(curve))
        out.extend(Place.p1_finite(curve, f) for f in monic_irreducibles(curve.field, n))
    else:
        if curve.kind == "hyperelliptic" and curve.f.degree % 2 == 0:
            if curve.field.is_square(curve.f.leading()):
                if n == 1:
                    out.append(Place.at_infinity(curve, 0))
                    out.append(Place.at_infinity(curve, 1))
            elif n == 2:
                out.append(Place.at_infinity(curve, 0, degree=2))
        elif n == 1:
            out.append(Place.at_infinity(curve))
        ext, _ = curve.ext_field(n, cap=cap)
        seen: set = set()
        for pt in curve.affine_points(n):
            if pt in seen:
                continue
            orbit = [pt]
            cur = curve.frobenius_point(ext, pt)
            while cur != pt:
                orbit.append(cur)
                cur = curve.frobenius_point(ext, cur)
            seen.update(orbit)
            if len(orbit) == n:
                out.append(Place(curve, n, ("aff", n, min(orbit))))
    out.sort(key=lambda p: p.sort_key())
    curve._places_cache[n] = out
    return list(out)


def place_of_degree_count(curve: Curve, n: int, cap: int = DEFAULT_FIELD_CAP) -> int:
    """Number of degree-n places from point counts alone (Moebius recursion)."""
    total = point_count(curve, n, cap=cap)
    for e in range(1, n):
        if n % e == 0:
            total -= e * place_of_degree_count(curve, e, cap=cap)
    assert total % n == 0
    return total // n


def places_up_to(curve: Curve, d: int, cap: int = DEFAULT_FIELD_CAP) -> list:
    out = []
    for n in range(1, d + 1):
        out.extend(places_of_degree(curve, n, cap=cap))
    return out


def effective_divisor_count(curve: Curve, d: int, cap: int = DEFAULT_FIELD_CAP) -> int:
    """Number of effective divisors of degree d, by direct DP over place counts.

    This is independent of the zeta machinery and doubles as the size
    estimate used to enforce enumeration caps.
    """
    if d < 0:
        return 0
    counts = [0] * (d + 1)
    for n in range(1, d + 1):
        counts[n] = len(places_of_degree(curve, n, cap=cap))
    # coefficients of prod_n (1 - t^n)^(-a_n) up to degree d
    series = [1] + [0] * d
    for n in range(1, d + 1):
        for _ in range(counts[n]):
            for i in range(n, d + 1):
                series[i] += series[i - n]
    return series[d]


def effective_divisors(curve: Curve, d: int, cap: int = DEFAULT_ENUM_CAP):
    """Iterate all effective divisors of degree d, deterministically.

    Raises CapExceeded first when the DP count estimate exceeds the cap.
    """
    if d < 0:
        return
    est = effective_divisor_count(curve, d)
    if est > cap:
        raise CapExceeded(f"{est} divisors of degree {d} exceed cap {cap}")
    places = places_up_to(curve, d)
    places.sort(key=lambda p: p.sort_key())

    def rec(i: int, remaining: int, acc: list):
        if remaining == 0:
            yield Divisor(curve, dict(acc))
            return
        if i == len(places):
            return
        p = places[i]
        top = remaining // p.degree
        for m in range(top, -1, -1):
            if m:
                acc.append((p, m))
            yield from rec(i + 1, remaining - m * p.degree, acc)
            if m:
                acc.pop()

    yield from rec(0, d, [])
