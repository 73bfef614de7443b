"""The exact coefficient ring Z[zeta_N][v, v^-1].

The symbols e_a (a in Z/N) are N-th roots of unity, e_a * e_b = e_{a+b},
subject to the N-th cyclotomic relation; elements are kept in the canonical
reduced form supported on e_0, ..., e_{phi(N)-1}, so structural equality of
the stored terms decides ring equality.  (Without the cyclotomic relation,
root-of-unity sums such as character orthogonality would not vanish.)
The unit v is a formal half twist: v^2 plays the role of the field size q
in weight bookkeeping.  All arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _cyclotomic(n: int) -> list[int]:
    """Integer coefficients of the n-th cyclotomic polynomial."""
    # divide x^n - 1 by the cyclotomic polynomials of the proper divisors
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            phi_d = _cyclotomic(d)
            poly = _exact_div(poly, phi_d)
    return poly


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        assert c % den[-1] == 0
        out[i] = c // den[-1]
        for j, dc in enumerate(den):
            num[i + j] -= out[i] * dc
    assert all(c == 0 for c in num)
    return out


class GroupRing:
    """Z[zeta_N][v, v^-1] for a fixed modulus N >= 1, canonically reduced."""

    def __init__(self, modulus: int):
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        self.modulus = modulus
        phi = _cyclotomic(modulus)
        self.reduced_degree = len(phi) - 1
        # power table: zeta^a as a combination of zeta^b, b < phi(N)
        top = {j: -phi[j] for j in range(self.reduced_degree) if phi[j]}
        table: list[dict[int, int]] = [{a: 1} for a in range(self.reduced_degree)]
        for a in range(self.reduced_degree, modulus):
            prev = table[a - 1]
            nxt: dict[int, int] = {}
            for b, c in prev.items():
                if b + 1 < self.reduced_degree:
                    nxt[b + 1] = nxt.get(b + 1, 0) + c
                else:
                    for j, r in top.items():
                        nxt[j] = nxt.get(j, 0) + c * r
            table.append({b: c for b, c in nxt.items() if c})
        self._power_table = table

    def element(self, terms) -> "RingElement":
        clean: dict = {}
        for (a, w), c in dict(terms).items():
            if not c:
                continue
            for b, r in self._power_table[a % self.modulus].items():
                key = (b, w)
                n = clean.get(key, 0) + c * r
                if n:
                    clean[key] = n
                else:
                    clean.pop(key, None)
        return RingElement(self, clean)

    def term(self, a: int = 0, w: int = 0, c: int = 1) -> "RingElement":
        """The single term c * e_a * v^w (reduced)."""
        if c == 0:
            return self.zero
        return self.element({(a % self.modulus, w): c})

    def integer(self, n: int) -> "RingElement":
        return self.term(0, 0, n)

    @property
    def zero(self) -> "RingElement":
        return RingElement(self, {})

    @property
    def one(self) -> "RingElement":
        return RingElement(self, {(0, 0): 1})

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRing) and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash(("GroupRing", self.modulus))

    def __repr__(self) -> str:
        return f"GroupRing(Z/{self.modulus})"


class RingElement:
    """An element of a GroupRing; immutable once built."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: GroupRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "RingElement") -> "RingElement":
        assert self.ring == other.ring, "ring mismatch"
        out = dict(self.terms)
        for k, c in other.terms.items():
            n = out.get(k, 0) + c
            if n:
                out[k] = n
            else:
                out.pop(k, None)
        return RingElement(self.ring, out)

    def __neg__(self) -> "RingElement":
        return RingElement(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other) -> "RingElement":
        if isinstance(other, int):
            if other == 0:
                return self.ring.zero
            return RingElement(self.ring, {k: c * other for k, c in self.terms.items()})
        assert self.ring == other.ring, "ring mismatch"
        N = self.ring.modulus
        raw: dict = {}
        for (a1, w1), c1 in self.terms.items():
            for (a2, w2), c2 in other.terms.items():
                k = ((a1 + a2) % N, w1 + w2)
                raw[k] = raw.get(k, 0) + c1 * c2
        return self.ring.element(raw)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingElement)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.ring.modulus, frozenset(self.terms.items())))

    # -- structure probes --------------------------------------------------

    def weights(self) -> list[int]:
        return sorted({w for (_, w) in self.terms})

    def weight_part(self, w: int) -> "RingElement":
        """The sub-sum of terms with v-exponent exactly w."""
        return RingElement(
            self.ring, {k: c for k, c in self.terms.items() if k[1] == w}
        )

    def as_integer(self) -> int:
        """The value, when the element is a plain integer (e_0 * v^0)."""
        if not self.terms:
            return 0
        if set(self.terms) == {(0, 0)}:
            return self.terms[(0, 0)]
        raise ValueError(f"not an integer element: {self!r}")

    def lift(self, bigger: GroupRing) -> "RingElement":
        """Map into Z/M via a -> a*M/N (M a multiple of N)."""
        M, N = bigger.modulus, self.ring.modulus
        assert M % N == 0, "target modulus must be a multiple"
        s = M // N
        return bigger.element({(a * s, w): c for (a, w), c in self.terms.items()})

    def evaluate_weights(self, q: int) -> dict:
        """Collapse v^2 -> q; requires every v-exponent to be even.

        Returns {a: Fraction} over Z/N, the image in Z[1/q][Z/N].
        """
        out: dict[int, Fraction] = {}
        for (a, w), c in self.terms.items():
            if w % 2:
                raise ValueError("odd v-exponent cannot be collapsed to a power of q")
            val = Fraction(c) * (Fraction(q) ** (w // 2))
            out[a] = out.get(a, Fraction(0)) + val
        return {a: v for a, v in out.items() if v}

    # -- canonical forms -----------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def serialize(self) -> dict:
        return {
            "terms": [
                {"a": a, "w": w, "c": c} for (a, w), c in self.sorted_terms()
            ]
        }

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (a, w), c in self.sorted_terms():
            head = f"{c}" if c != 1 else ""
            body = []
            if a:
                body.append(f"e{a}")
            if w:
                body.append(f"v^{w}" if w != 1 else "v")
            if not body:
                body = ["1"] if c == 1 else []
            star = "*".join(([head] if head else []) + body)
            bits.append(star or "1")
        return "+".join(bits).replace("+-", "-")


def common_ring(*rings: GroupRing) -> GroupRing:
    """The smallest group ring every argument lifts into."""
    m = 1
    for r in rings:
        m = m * r.modulus // gcd(m, r.modulus)
    return GroupRing(m)


# -- truncated power series with RingElement coefficients ---------------------


def series_one(ring: GroupRing, prec: int) -> list[RingElement]:
    return [ring.one] + [ring.zero] * (prec - 1)


def series_mul(A: list[RingElement], B: list[RingElement], prec: int) -> list[RingElement]:
    ring = A[0].ring
    out = [ring.zero] * prec
    for i, ca in enumerate(A[:prec]):
        if ca.is_zero():
            continue
        for j, cb in enumerate(B[: prec - i]):
            if not cb.is_zero():
                out[i + j] = out[i + j] + ca * cb
    return out


def series_mul_binomial(A: list[RingElement], c: RingElement, n: int, prec: int):
    """A(t) * (1 - c*t^n), truncated."""
    out = list(A[:prec])
    for i in range(prec - 1, n - 1, -1):
        out[i] = out[i] - c * A[i - n]
    return out


def series_div_binomial(A: list[RingElement], c: RingElement, n: int, prec: int):
    """A(t) / (1 - c*t^n), truncated (cumulative geometric sum)."""
    out = list(A[:prec])
    for i in range(n, prec):
        out[i] = out[i] + c * out[i - n]
    return out


def series_inverse(A: list[RingElement], prec: int) -> list[RingElement]:
    """Inverse of a series whose constant term is 1."""
    ring = A[0].ring
    assert A[0] == ring.one, "series inversion needs constant term 1"
    out = [ring.one] + [ring.zero] * (prec - 1)
    for i in range(1, prec):
        acc = ring.zero
        for j in range(1, min(i, len(A) - 1) + 1):
            if j < len(A) and not A[j].is_zero():
                acc = acc + A[j] * out[i - j]
        out[i] = -acc
    return out


def poly_eval_series(coeffs: list[RingElement], prec: int) -> list[RingElement]:
    """Pad polynomial coefficients to series precision."""
    ring = coeffs[0].ring
    out = list(coeffs[:prec])
    out += [ring.zero] * (prec - len(out))
    return out
