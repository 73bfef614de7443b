"""Enumeration kernels with a compiled core and a pure-Python fallback.

The hot loop of the whole package is the rank-2 base stratification over
the projective line: for every pair (u, a) with u monic of degree <= d and
deg a <= d it needs the singularity weight of h = a^2 - 4u^2.  The compiled
extension (tracelab._core, built from Cython) walks gcd chains per pair;
the fallback below instead factors every polynomial of degree <= d once and
merges factor multiplicities through the splitting h = (a-2u)(a+2u), which
keeps the pure path inside the acceptance budget.  Having two genuinely
different algorithms behind one interface also gives the test suite a
differential oracle.
"""

from __future__ import annotations

from .fields import FiniteField

try:  # compiled core, if the extension was built
    from . import _core as _compiled
except ImportError:  # pragma: no cover - exercised only without the extension
    _compiled = None

HAVE_COMPILED = _compiled is not None

_TABLE_Q_LIMIT = 1024


def _field_tables(F: FiniteField):
    q = F.q
    add = [[F.add(a, b) for b in range(q)] for a in range(q)]
    mul = [[F.mul(a, b) for b in range(q)] for a in range(q)]
    return add, mul


def delta_histogram_p1(
    F: FiniteField, d: int, force_python: bool = False
) -> tuple[dict[int, int], int, int]:
    """Histogram of the singularity weight over the degree-d base of P^1.

    Returns (hist, nonreduced, total): hist[delta] counts pairs (D, b) with
    reduced spectral data and the given delta; nonreduced counts b = +-2;
    total = hist mass + nonreduced = the full point count of the base.
    """
    if F.p == 2:
        raise ValueError("stratification needs odd characteristic")
    if _compiled is not None and not force_python and F.q <= _TABLE_Q_LIMIT:
        add, mul = _field_tables(F)
        import numpy as np

        hist_arr, nonred, total = _compiled.delta_histogram_p1(
            F.q,
            d,
            np.array(add, dtype=np.int32),
            np.array(mul, dtype=np.int32),
            np.array([F.pth_root(a) for a in range(F.q)], dtype=np.int32),
            F.p,
        )
        hist = {i: int(c) for i, c in enumerate(hist_arr) if c}
        return hist, int(nonred), int(total)
    return _delta_histogram_python(F, d)


def _delta_histogram_python(F: FiniteField, d: int):
    q = F.q
    add, mul = _field_tables(F)
    n_codes = q ** (d + 1)

    def digits(code: int) -> list[int]:
        out = []
        for _ in range(d + 1):
            out.append(code % q)
            code //= q
        return out

    deg_of = [-1] * n_codes
    for code in range(n_codes):
        dg = -1
        c = code
        i = 0
        while c:
            if c % q:
                dg = i
            c //= q
            i += 1
        deg_of[code] = dg

    # factor data for every monic polynomial of degree <= d:
    #   self_half[w] = sum floor(m/2) * deg over the factorization of w
    #   odd_part[w]  = frozenset of (factor code, deg) with odd multiplicity
    monic_codes = _monic_codes(q, d)
    self_half, odd_part = _factor_tables(F, d, monic_codes, deg_of)

    # normalize arbitrary codes to their monic code (constants dropped)
    inv = [0] * q
    for a in range(1, q):
        inv[a] = F.inv(a)
    monic_of = [0] * n_codes
    for code in range(1, n_codes):
        dg = deg_of[code]
        lead = digits(code)[dg]
        if lead == 1:
            monic_of[code] = code
        else:
            il = inv[lead]
            mc = 0
            mult = 1
            c = code
            for _ in range(dg + 1):
                mc += mul[c % q][il] * mult
                c //= q
                mult *= q
            monic_of[code] = mc

    hist: dict[int, int] = {}
    nonreduced = 0
    total = 0
    four = 4 % F.p
    # u monic of degree e <= d; a arbitrary of degree <= d, via s = a - 2u
    fours = []
    for e in range(d + 1):
        for u in range(q**e, 2 * q**e):
            # u encodes a monic polynomial of degree e
            fu = 0
            mult = 1
            c = u
            for _ in range(e + 1):
                fu += mul[c % q][four] * mult
                c //= q
                mult *= q
            fours.append(fu)
    for s in range(n_codes):
        sd = digits(s)
        s_monic = monic_of[s]
        s_half = self_half[s_monic] if s else 0
        s_odd = odd_part[s_monic] if s else None
        s_deg = deg_of[s]
        for fu in fours:
            # t = s + 4u, digitwise
            t = 0
            mult = 1
            c = fu
            for i in range(d + 1):
                t += add[sd[i]][c % q] * mult
                c //= q
                mult *= q
            total += 1
            if s == 0 or t == 0:
                nonreduced += 1
                continue
            t_monic = monic_of[t]
            fin = s_half + self_half[t_monic]
            so, to = s_odd, odd_part[t_monic]
            if so and to:
                for fac in so & to:
                    fin += fac[1]
            delta = fin + (2 * d - s_deg - deg_of[t]) // 2
            hist[delta] = hist.get(delta, 0) + 1
    return hist, nonreduced, total


def _monic_codes(q: int, d: int) -> list[int]:
    out = [1]  # the constant 1 (degree 0)
    for e in range(1, d + 1):
        out.extend(range(q**e, 2 * q**e))
    return out


def _factor_tables(F: FiniteField, d: int, monic_codes, deg_of):
    """Factorizations of all monic codes by smallest-root peeling."""
    q = F.q

    def decode(code: int):
        out = []
        while code:
            out.append(code % q)
            code //= q
        return out

    def encode(coeffs) -> int:
        out = 0
        for c in reversed(coeffs):
            out = out * q + c
        return out

    def eval_at(coeffs, x: int) -> int:
        acc = 0
        for c in reversed(coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def divide_linear(coeffs, r: int):
        # synthetic division by (x - r); exact by construction
        out = []
        acc = 0
        for c in reversed(coeffs):
            acc = F.add(F.mul(acc, r), c)
            out.append(acc)
        rem = out.pop()
        assert rem == 0
        return list(reversed(out))

    factorization: dict[int, tuple] = {1: ()}
    self_half = {}
    odd_part = {}
    for code in monic_codes:
        if code == 1:
            self_half[1] = 0
            odd_part[1] = frozenset()
            continue
        coeffs = decode(code)
        factors: dict[int, int] = {}
        work = coeffs
        while len(work) > 1:
            root = None
            for x in range(q):
                if eval_at(work, x) == 0:
                    root = x
                    break
            if root is None:
                break
            lin = encode([F.neg(root), 1])
            factors[lin] = factors.get(lin, 0) + 1
            work = divide_linear(work, root)
        if len(work) > 1:
            rest = encode(work)
            known = factorization.get(rest)
            if known is None:
                # rootless of degree 2 or 3 is irreducible; higher degrees
                # split off a rootless factor found among smaller codes
                sub = _rootless_factor(F, work, encode, decode, factorization)
                for fc, m in sub:
                    factors[fc] = factors.get(fc, 0) + m
            else:
                for fc, m in known:
                    factors[fc] = factors.get(fc, 0) + m
        factorization[code] = tuple(sorted(factors.items()))
        half = 0
        odd = set()
        for fc, m in factors.items():
            dg = deg_of[fc] if fc < len(deg_of) else len(decode(fc)) - 1
            half += (m // 2) * dg
            if m % 2:
                odd.add((fc, dg))
        self_half[code] = half
        odd_part[code] = frozenset(odd)
    return self_half, odd_part


def _rootless_factor(F: FiniteField, work, encode, decode, factorization):
    """Factor a rootless monic polynomial of degree <= 2d (d small)."""
    deg = len(work) - 1
    if deg <= 3:
        return (((encode(work)), 1),)
    # trial division by rootless irreducible quadratics / cubics
    from .fields import Poly, monic_irreducibles

    f = Poly(F, work)
    out = []
    for sub_deg in range(2, deg // 2 + 1):
        for cand in monic_irreducibles(F, sub_deg):
            m = 0
            while True:
                qt, r = divmod(f, cand)
                if r.is_zero():
                    f = qt
                    m += 1
                else:
                    break
            if m:
                out.append((encode(list(cand.coeffs)), m))
            if f.degree < sub_deg:
                break
        if f.degree < 2 * (sub_deg + 1):
            break
    if f.degree > 0:
        out.append((encode(list(f.coeffs)), 1))
    return tuple(out)
