"""Exact arithmetic in small finite fields and univariate polynomial rings.

Elements of F_q, q = p^k, are encoded as integers in [0, q): the residue
class c_0 + c_1*s + ... + c_{k-1}*s^{k-1} (s = the class of x modulo the
defining polynomial) is encoded as the integer c_0 + c_1*p + ... in base p.
Prime-field elements are therefore their least nonnegative residues, and
equality of elements is equality of integers.  All arithmetic is exact.

Polynomials are immutable tuples of element codes, little-endian, with no
trailing zeros; the zero polynomial is the empty tuple.  The canonical text
form is "c_d*x^d+...+c_0" with coefficients printed as least nonnegative
residues of their constant digit (prime fields) or as packed codes.
"""

from __future__ import annotations

import functools
import itertools

from .errors import (
    CapExceeded,
    DescriptorError,
    EvenCharacteristic,
    NotPrime,
    ZeroPolynomial,
)

DEFAULT_FIELD_CAP = 1 << 20

# exp/log tables are built lazily for fields up to this size
_TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class FiniteField:
    """F_{p^k} with the lexicographically least irreducible modulus.

    The modulus convention makes every field construction reproducible:
    among monic irreducibles of degree k over F_p, the one whose
    coefficient word (highest degree first) is smallest is chosen.
    """

    def __init__(self, p: int, k: int = 1, cap: int = DEFAULT_FIELD_CAP):
        if not is_prime(p):
            raise NotPrime(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        q = p**k
        if q > cap:
            raise CapExceeded(f"field size {p}^{k} exceeds cap {cap}")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = self._least_irreducible_modulus()
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if q <= _TABLE_LIMIT and k > 1:
            self._build_tables()

    # -- construction helpers ------------------------------------------------

    def _least_irreducible_modulus(self) -> tuple[int, ...]:
        p, k = self.p, self.k
        if k == 1:
            return (0, 1)  # the polynomial x
        for low in range(p**k):
            digits = _digits(low, p, k)
            cand = tuple(digits) + (1,)
            if _is_irreducible_prime_field(cand, p):
                return cand
        raise AssertionError("no irreducible modulus found")  # unreachable

    def _build_tables(self) -> None:
        g = self._find_generator()
        exp = [1] * (self.q - 1)
        acc = 1
        for i in range(1, self.q - 1):
            acc = self._mul_generic(acc, g)
            exp[i] = acc
        log = [0] * self.q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp, self._log = exp, log

    def _find_generator(self) -> int:
        n = self.q - 1
        prime_divs = list(_factorize(n))
        for cand in range(2, self.q):
            if all(self._pow_generic(cand, n // r) != 1 for r in prime_divs):
                return cand
        raise AssertionError("no multiplicative generator found")

    # -- element codecs ------------------------------------------------------

    def element_digits(self, a: int) -> tuple[int, ...]:
        return tuple(_digits(a, self.p, self.k))

    def element_from_digits(self, digits) -> int:
        a = 0
        for c in reversed(list(digits)):
            a = a * self.p + (c % self.p)
        return a

    def elements(self):
        return range(self.q)

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def gen(self) -> int:
        """The class of x modulo the defining polynomial (equals p as a code)."""
        return self.p if self.k > 1 else 1

    # -- arithmetic ----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.k == 1:
            return (a + b) % p
        out = 0
        mult = 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if self.k == 1:
            return (-a) % p
        out = 0
        mult = 1
        while a:
            out += (-a % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if self._exp is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._mul_generic(a, b)

    def _mul_generic(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da = _digits(a, p, k)
        db = _digits(b, p, k)
        prod = [0] * (2 * k - 1)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    prod[i + j] = (prod[i + j] + ca * cb) % p
        mod = self.modulus
        for i in range(len(prod) - 1, k - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(k):
                    prod[i - k + j] = (prod[i - k + j] - c * mod[j]) % p
        out = 0
        for c in reversed(prod[:k]):
            out = out * p + c
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp is not None:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return self._pow_generic(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        if self.k == 1:
            return pow(a, n, self.p)
        if self._exp is not None:
            if a == 0:
                return 0 if n else 1
            return self._exp[(self._log[a] * n) % (self.q - 1)]
        return self._pow_generic(a, n)

    def _pow_generic(self, a: int, n: int) -> int:
        out = 1
        base = a
        while n:
            if n & 1:
                out = self._mul_generic(out, base)
            base = self._mul_generic(base, base)
            n >>= 1
        return out

    def frobenius(self, a: int) -> int:
        """The p-power map, a field automorphism of order k."""
        return self.pow(a, self.p)

    def pth_root(self, a: int) -> int:
        """Inverse of the p-power map (unique in a finite field)."""
        return self.pow(a, self.p ** (self.k - 1))

    # -- quadratic structure (odd characteristic) -----------------------------

    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        if self.p == 2:
            return True
        if self._log is not None:
            return self._log[a] % 2 == 0
        return self.pow(a, (self.q - 1) // 2) == 1

    def sqrt(self, a: int) -> int | None:
        """Canonical square root: the smaller of the two codes, or None.

        Only defined in odd characteristic (in characteristic 2 the square
        map is a bijection, but no canonical-pair convention is needed here).
        """
        if self.p == 2:
            raise EvenCharacteristic("canonical square roots need odd characteristic")
        if a == 0:
            return 0
        if self._log is not None:
            l = self._log[a]
            if l % 2:
                return None
            r = self._exp[l // 2]
            return min(r, self.neg(r))
        if not self.is_square(a):
            return None
        # Tonelli-Shanks on the cyclic group of order q-1
        q1 = self.q - 1
        s = 0
        m = q1
        while m % 2 == 0:
            m //= 2
            s += 1
        z = next(c for c in range(2, self.q) if not self.is_square(c))
        c = self.pow(z, m)
        x = self.pow(a, (m + 1) // 2)
        t = self.pow(a, m)
        while t != 1:
            i = 0
            t2 = t
            while t2 != 1:
                t2 = self.mul(t2, t2)
                i += 1
            b = self.pow(c, 1 << (s - i - 1))
            x = self.mul(x, b)
            c = self.mul(b, b)
            t = self.mul(t, c)
            s = i
        return min(x, self.neg(x))

    def trace_to_prime(self, a: int) -> int:
        """Absolute trace down to F_p (an element of the prime field)."""
        acc = a
        cur = a
        for _ in range(self.k - 1):
            cur = self.frobenius(cur)
            acc = self.add(acc, cur)
        return acc

    # -- misc ----------------------------------------------------------------

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteField)
            and self.p == other.p
            and self.k == other.k
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k))


def _digits(a: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(a % p)
        a //= p
    return out


def _is_irreducible_prime_field(coeffs: tuple[int, ...], p: int) -> bool:
    # direct test over F_p used only while bootstrapping a field's modulus
    tmp = FiniteField.__new__(FiniteField)
    tmp.p, tmp.k, tmp.q = p, 1, p
    tmp.modulus = (0, 1)
    tmp._exp = tmp._log = None
    return is_irreducible(Poly(tmp, coeffs))


@functools.lru_cache(maxsize=None)
def _field_cache(p: int, k: int, cap: int) -> FiniteField:
    return FiniteField(p, k, cap)


def make_field(p: int, k: int = 1, cap: int = DEFAULT_FIELD_CAP) -> FiniteField:
    """Return F_{p^k} with the deterministic modulus choice (cached)."""
    return _field_cache(p, k, cap)


class Poly:
    """Dense univariate polynomial over a FiniteField.

    Coefficients are stored little-endian as element codes with no trailing
    zeros, so structural equality decides polynomial equality.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, field) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field) -> "Poly":
        return cls(field, (1,))

    @classmethod
    def constant(cls, field, c: int) -> "Poly":
        """Constant polynomial; an int argument is read as a prime residue."""
        return cls(field, (c % field.p,))

    @classmethod
    def x(cls, field) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def monomial(cls, field, d: int, c: int = 1) -> "Poly":
        return cls(field, (0,) * d + (c,))

    # -- basic structure ---------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial assigned degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.k, self.coeffs))

    def sort_key(self) -> tuple:
        """Lexicographic key: degree first, then high-to-low coefficients."""
        return (len(self.coeffs), tuple(reversed(self.coeffs)))

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        F = self.field
        if isinstance(other, int):
            # int scalars are prime residues; use .scale() for packed codes
            return Poly(F, [F.mul(c, other % F.p) for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F, ())
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] = F.add(out[i + j], F.mul(ca, cb))
        return Poly(F, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(c, a) for a in self.coeffs])

    def __divmod__(self, other: "Poly"):
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.degree
        inv_lead = F.inv(other.leading())
        qs = [0] * max(0, len(r) - d)
        for i in range(len(r) - 1, d - 1, -1):
            c = r[i]
            if c:
                fac = F.mul(c, inv_lead)
                qs[i - d] = fac
                for j, oc in enumerate(other.coeffs):
                    r[i - d + j] = F.sub(r[i - d + j], F.mul(fac, oc))
        return Poly(F, qs), Poly(F, r)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __pow__(self, n: int) -> "Poly":
        out = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def powmod(self, n: int, mod: "Poly") -> "Poly":
        out = Poly.one(self.field) % mod
        base = self % mod
        while n:
            if n & 1:
                out = (out * base) % mod
            base = (base * base) % mod
            n >>= 1
        return out

    def monic(self) -> "Poly":
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(self.field.inv(self.leading()))

    def derivative(self) -> "Poly":
        F = self.field
        p = F.p
        return Poly(
            F,
            [F.mul(i % p, c) for i, c in enumerate(self.coeffs)][1:],
        )

    def shift(self, n: int) -> "Poly":
        """Multiply by x^n."""
        if self.is_zero():
            return self
        return Poly(self.field, (0,) * n + self.coeffs)

    def __call__(self, a: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def eval_in(self, ext: "FiniteField", embed, point: int) -> int:
        """Evaluate at a point of an extension, mapping coefficients through embed."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = ext.add(ext.mul(acc, point), embed(c))
        return acc

    def map_coeffs(self, ext: "FiniteField", embed) -> "Poly":
        return Poly(ext, [embed(c) for c in self.coeffs])

    def pth_root(self) -> "Poly":
        """Inverse of f -> f^p on polynomials whose derivative vanishes."""
        F = self.field
        p = F.p
        out = []
        for i in range(0, len(self.coeffs), p):
            out.append(F.pth_root(self.coeffs[i]))
        return Poly(F, out)

    # -- text form -------------------------------------------------------

    def __repr__(self) -> str:
        return f"Poly({self.field!r}, '{format_poly(self)}')"

    def __str__(self) -> str:
        return format_poly(self)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_xgcd(a: Poly, b: Poly):
    """Return (g, s, t) with g = gcd monic and s*a + t*b = g."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    c = F.inv(r0.leading())
    return r0.scale(c), s0.scale(c), t0.scale(c)


def squarefree_decompose(f: Poly):
    """Write f = lc * prod A_m^m with the A_m monic squarefree and coprime.

    Returns (lc, parts) where parts is a list of (A_m, m) sorted by m,
    omitting trivial A_m = 1.  Handles p-th power parts by Frobenius
    descent on the coefficients, so it is correct in every characteristic.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot decompose the zero polynomial")
    F = f.field
    lc = f.leading()
    f = f.monic()
    acc: dict[int, Poly] = {}

    def record(g: Poly, m: int):
        if g.degree > 0:
            acc[m] = acc[m] * g if m in acc else g

    def walk(g: Poly, scale: int):
        if g.degree <= 0:
            return
        d = g.derivative()
        if d.is_zero():
            walk(g.pth_root(), scale * F.p)
            return
        a = poly_gcd(g, d)
        b = g // a  # product of the factors with multiplicity prime to p
        i = 1
        while b.degree > 0:
            c = poly_gcd(a, b)
            piece = b // c
            record(piece, i * scale)
            b = c
            a = a // c
            i += 1
        walk(a, scale)  # leftover: p-th power part

    walk(f, 1)
    parts = sorted(acc.items())
    return lc, [(g, m) for m, g in parts]


def perfect_square_root(f: Poly) -> Poly | None:
    """Return g with g^2 = f (canonical leading coefficient), or None.

    The canonical choice makes g monic times the canonical square root of
    f's leading coefficient.  Odd characteristic only.
    """
    F = f.field
    if F.p == 2:
        raise EvenCharacteristic("perfect square roots need odd characteristic")
    if f.is_zero():
        return Poly.zero(F)
    if f.degree % 2:
        return None
    r = F.sqrt(f.leading())
    if r is None:
        return None
    _, parts = squarefree_decompose(f)
    g = Poly(F, (r,))
    for a, m in parts:
        if m % 2:
            return None
        g = g * a**(m // 2)
    if not (g * g == f):
        return None
    return g


def is_irreducible(f: Poly) -> bool:
    """Rabin test: x^(q^n) = x mod f and gcd(x^(q^(n/l)) - x, f) = 1."""
    F = f.field
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    if f.coeffs[0] == 0:
        return False  # divisible by x
    x = Poly.x(F)
    frob = [x % f]  # frob[j] = x^(q^j) mod f
    for _ in range(n):
        frob.append(frob[-1].powmod(F.q, f))
    if frob[n] != x % f:
        return False
    for l in _factorize(n):
        g = poly_gcd(frob[n // l] - x, f)
        if g.degree != 0:
            return False
    return True


def monic_irreducibles(field: FiniteField, n: int):
    """Yield every monic irreducible of degree n, lexicographically.

    Order: coefficient words compared highest degree first, which is the
    ascending order of the packed low-coefficient integer.  Small spaces
    are tested candidate by candidate; large ones are sieved by marking
    every product (irreducible of degree <= n/2) * (monic complement).
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    q = field.q
    if n == 1:
        for c in range(q):
            yield Poly(field, (c, 1))
        return
    if q**n > 50000:
        yield from _sieved_irreducibles(field, n)
        return
    for low in range(q**n):
        digits = []
        a = low
        for _ in range(n):
            digits.append(a % q)
            a //= q
        if digits[0] == 0:
            continue
        f = Poly(field, tuple(digits) + (1,))
        if is_irreducible(f):
            yield f


def _sieved_irreducibles(field: FiniteField, n: int):
    q = field.q
    reducible = bytearray(q**n)
    mul = field.mul
    add = field.add
    for j in range(1, n // 2 + 1):
        complement = n - j
        comp_count = q**complement
        for pi in monic_irreducibles_list(field, j):
            pc = pi.coeffs
            for gcode in range(comp_count):
                gd = []
                a = gcode
                for _ in range(complement):
                    gd.append(a % q)
                    a //= q
                gd.append(1)
                prod = [0] * (n + 1)
                for i, ci in enumerate(pc):
                    if ci:
                        for k, ck in enumerate(gd):
                            if ck:
                                prod[i + k] = add(prod[i + k], mul(ci, ck))
                code = 0
                for c in reversed(prod[:n]):
                    code = code * q + c
                reducible[code] = 1
    for low in range(q**n):
        if not reducible[low]:
            digits = []
            a = low
            for _ in range(n):
                digits.append(a % q)
                a //= q
            yield Poly(field, tuple(digits) + (1,))


def irreducible_count(q: int, n: int) -> int:
    """Necklace count (1/n) sum_{e | n} mu(e) q^(n/e)."""
    total = 0
    for e in range(1, n + 1):
        if n % e == 0:
            total += _moebius(e) * q ** (n // e)
    assert total % n == 0
    return total // n


def _moebius(n: int) -> int:
    fac = _factorize(n)
    if any(m > 1 for m in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


_IRREDUCIBLE_LISTS: dict[tuple, list] = {}


def monic_irreducibles_list(field: FiniteField, n: int) -> list:
    """Cached list form of monic_irreducibles (shared by the factorizer)."""
    key = (field.p, field.k, n)
    got = _IRREDUCIBLE_LISTS.get(key)
    if got is None:
        got = _IRREDUCIBLE_LISTS[key] = list(monic_irreducibles(field, n))
    return got


def factor(f: Poly):
    """Full factorization by trial division against monic irreducibles.

    Adequate at desk scale (small q, small degree); returns (lc, [(p, m)])
    with the irreducible factors sorted lexicographically.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    F = f.field
    lc = f.leading()
    f = f.monic()
    out = []
    d = 1
    while f.degree > 0:
        if 2 * d > f.degree:
            out.append((f, 1))
            break
        for cand in monic_irreducibles_list(F, d):
            if f.degree < d:
                break
            m = 0
            while True:
                q, r = divmod(f, cand)
                if r.is_zero():
                    f = q
                    m += 1
                else:
                    break
            if m:
                out.append((cand, m))
        d += 1
    out.sort(key=lambda t: (t[0].degree, t[0].sort_key()))
    return lc, out


def poly_roots(f: Poly) -> list[int]:
    """Distinct roots of f in its own coefficient field, ascending codes."""
    F = f.field
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has every root")
    if f.degree == 0:
        return []
    if F.q <= 4096:
        return [a for a in range(F.q) if f(a) == 0]
    x = Poly.x(F)
    xq = x.powmod(F.q, f)
    g = poly_gcd(xq - x, f)
    return sorted(_split_linear(g))


def _split_linear(g: Poly) -> list[int]:
    # g is a product of distinct linear factors; extract the roots
    F = g.field
    if g.degree <= 0:
        return []
    if g.degree == 1:
        c0, c1 = g.coeffs
        return [F.neg(F.div(c0, c1))]
    x = Poly.x(F)
    if F.p == 2:
        # additive splitting by absolute traces of a*x
        bits = F.k
        for a in itertools.count(1):
            if a >= F.q:
                break
            ax = Poly(F, (0, a % F.q))
            tr = Poly.zero(F)
            cur = ax % g
            for _ in range(bits):
                tr = (tr + cur) % g
                cur = (cur * cur) % g  # squaring = Frobenius step over F_2
            h = poly_gcd(tr, g)
            if 0 < h.degree < g.degree:
                return _split_linear(h) + _split_linear(g // h)
        raise AssertionError("splitting failed")
    half = (F.q - 1) // 2
    for c in range(F.q):
        shifted = x + Poly(F, (c,))
        w = shifted.powmod(half, g) - Poly.one(F)
        h = poly_gcd(w, g)
        if 0 < h.degree < g.degree:
            return _split_linear(h) + _split_linear(g // h)
    raise AssertionError("splitting failed")


# -- canonical text form -------------------------------------------------


def format_element(field: FiniteField, a: int) -> str:
    if field.k == 1:
        return str(a)
    return str(a)  # packed code; digits recoverable from the field


def format_poly(f: Poly) -> str:
    """Canonical text "c_d*x^d+...+c_0" with explicit coefficients."""
    if f.is_zero():
        return "0"
    terms = []
    for d in range(f.degree, -1, -1):
        c = f[d]
        if c == 0:
            continue
        cs = format_element(f.field, c)
        if d == 0:
            terms.append(cs)
        elif d == 1:
            terms.append(f"{cs}*x")
        else:
            terms.append(f"{cs}*x^{d}")
    return "+".join(terms)


def parse_poly(field: FiniteField, text: str) -> Poly:
    """Parse the canonical form; also accepts implicit-1 coefficients and '-'."""
    s = text.replace(" ", "")
    if not s:
        raise DescriptorError("empty polynomial text")
    if s == "0":
        return Poly.zero(field)
    s = s.replace("-", "+-")
    if s.startswith("+"):
        s = s[1:]
    coeffs: dict[int, int] = {}
    for term in s.split("+"):
        if not term:
            raise DescriptorError(f"bad polynomial text {text!r}")
        neg = term.startswith("-")
        if neg:
            term = term[1:]
        if "x" in term:
            head, _, tail = term.partition("x")
            if head in ("", "*"):
                c = 1
            else:
                if head.endswith("*"):
                    head = head[:-1]
                c = _parse_int(head, text)
            if tail == "":
                d = 1
            elif tail.startswith("^"):
                d = _parse_int(tail[1:], text)
            else:
                raise DescriptorError(f"bad polynomial term in {text!r}")
        else:
            c = _parse_int(term, text)
            d = 0
        c %= field.q
        if neg:
            c = field.neg(c)
        coeffs[d] = field.add(coeffs.get(d, 0), c)
    out = [0] * (max(coeffs) + 1)
    for d, c in coeffs.items():
        out[d] = c
    return Poly(field, out)


def _parse_int(s: str, ctx: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise DescriptorError(f"bad integer {s!r} in {ctx!r}") from None


class RationalFunction:
    """Reduced fraction of polynomials with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        c = den.leading()
        if c != 1:
            inv = num.field.inv(c)
            num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, f: Poly) -> "RationalFunction":
        return cls(f, Poly.one(f.field))

    @property
    def field(self) -> FiniteField:
        return self.num.field

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other) -> "RationalFunction":
        if isinstance(other, Poly):
            other = RationalFunction.from_poly(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __str__(self) -> str:
        if self.den.degree == 0:
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


class FieldEmbedding:
    """An F_p-algebra embedding of F_{p^k} into F_{p^(k*m)}.

    By default the image of the source generator is the lexicographically
    least root of the source modulus in the target, which pins the
    embedding down deterministically; an explicit root can be supplied to
    build tower-compatible embeddings.
    """

    def __init__(self, src: FiniteField, dst: FiniteField, gen_image: int | None = None):
        if src.p != dst.p or dst.k % src.k != 0:
            raise ValueError(f"no embedding {src!r} -> {dst!r}")
        self.src = src
        self.dst = dst
        if src.k == 1:
            self.gen_image = 1
            self._powers = [1]
        else:
            if gen_image is None:
                gen_image = self.candidate_roots(src, dst)[0]
            pw = [1]
            for _ in range(src.k - 1):
                pw.append(dst.mul(pw[-1], gen_image))
            self.gen_image = gen_image
            self._powers = pw
        self._cache: dict[int, int] = {}

    @staticmethod
    def candidate_roots(src: FiniteField, dst: FiniteField) -> list[int]:
        """All roots of the source modulus in the target, ascending."""
        mod = Poly(src, src.modulus).map_coeffs(dst, lambda c: c)
        roots = poly_roots(mod)
        assert roots, "source modulus must split in the target"
        return roots

    def __call__(self, a: int) -> int:
        if self.src.k == 1:
            return a
        got = self._cache.get(a)
        if got is not None:
            return got
        dst = self.dst
        out = 0
        for c, pw in zip(self.src.element_digits(a), self._powers):
            if c:
                out = dst.add(out, dst.mul(c, pw))
        self._cache[a] = out
        return out


@functools.lru_cache(maxsize=None)
def embedding(src: FiniteField, dst: FiniteField) -> FieldEmbedding:
    return FieldEmbedding(src, dst)
