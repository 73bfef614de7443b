"""Zeta functions of curves from point counts, with exact consistency checks.

Z(X, t) = P(t) / ((1-t)(1-qt)) with P of degree 2g; the numerator is
recovered from the counts N_1, ..., N_{2g} by Newton's identities on the
power sums q^n + 1 - N_n.  Construction fails loudly whenever the counts
are not consistent with a genus-g curve (non-integral elementary symmetric
functions, a broken functional equation, or a mismatched extra count).
"""

from __future__ import annotations

import functools

from .curves import Curve, point_count
from .errors import InconsistentCounts


class ZetaData:
    """Numerator P(t) of the zeta function plus its consistency facts."""

    def __init__(self, q: int, genus: int, numerator: list[int], counts: tuple):
        self.q = q
        self.genus = genus
        self.numerator = list(numerator)
        self.counts = tuple(counts)

    # -- derived quantities --------------------------------------------------

    def class_number(self) -> int:
        """P(1) = #Pic^0(F_q)."""
        return sum(self.numerator)

    def point_count(self, n: int) -> int:
        """N_n recovered from the numerator (q^n + 1 - power sum)."""
        return self.q**n + 1 - _power_sums(self.numerator, n)[n - 1]

    def series_coefficients(self, d_max: int) -> list[int]:
        """Coefficients of Z(t) = P(t)/((1-t)(1-qt)) through t^d_max.

        The d-th coefficient counts effective divisors of degree d.
        """
        out = [0] * (d_max + 1)
        geo = [0] * (d_max + 1)  # coefficients of 1/((1-t)(1-qt))
        for m in range(d_max + 1):
            geo[m] = (self.q ** (m + 1) - 1) // (self.q - 1)
        for j, a in enumerate(self.numerator):
            if a == 0 or j > d_max:
                continue
            for m in range(j, d_max + 1):
                out[m] += a * geo[m - j]
        return out

    def functional_equation_ok(self) -> bool:
        g, q = self.genus, self.q
        a = self.numerator
        return all(a[2 * g - j] == a[j] * q ** (g - j) for j in range(g, 2 * g + 1))

    def __repr__(self) -> str:
        return f"ZetaData(q={self.q}, g={self.genus}, P={self.numerator})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ZetaData)
            and (self.q, self.genus, self.numerator)
            == (other.q, other.genus, other.numerator)
        )


def zeta_from_counts(counts, q: int, genus: int) -> ZetaData:
    """Build ZetaData from N_1, N_2, ... (at least 2g counts required)."""
    counts = tuple(counts)
    if len(counts) < 2 * genus:
        raise InconsistentCounts(
            f"need at least {2 * genus} point counts for genus {genus}"
        )
    # Newton's identities for elementary symmetric functions of the
    # inverse roots, from the power sums p_n = q^n + 1 - N_n.
    p = [q ** (n + 1) + 1 - counts[n] for n in range(len(counts))]
    e = [1]
    for k in range(1, 2 * genus + 1):
        # k * e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
        s = 0
        for i in range(1, k + 1):
            s += (-1) ** (i - 1) * e[k - i] * p[i - 1]
        if s % k:
            raise InconsistentCounts(f"counts give a non-integral coefficient at degree {k}")
        e.append(s // k)
    numerator = [(-1) ** j * e[j] for j in range(2 * genus + 1)]
    data = ZetaData(q, genus, numerator, counts)
    if not data.functional_equation_ok():
        raise InconsistentCounts("functional equation fails for these counts")
    if data.class_number() <= 0:
        raise InconsistentCounts("numerator evaluates nonpositively at t = 1")
    for n in range(1, len(counts) + 1):
        if data.point_count(n) != counts[n - 1]:
            raise InconsistentCounts(f"count N_{n} is inconsistent with the numerator")
    return data


def _power_sums(numerator: list[int], n_max: int) -> list[int]:
    """Power sums of the inverse roots of P via Newton's forward recursion."""
    deg = len(numerator) - 1
    e = [(-1) ** j * numerator[j] for j in range(deg + 1)]
    p: list[int] = []
    for n in range(1, n_max + 1):
        s = 0
        for i in range(1, min(n, deg) + 1):
            s += (-1) ** (i - 1) * e[i] * (p[n - i - 1] if n - i >= 1 else 0)
        if n <= deg:
            s += (-1) ** (n - 1) * e[n] * n
        p.append(s)
    return p


@functools.lru_cache(maxsize=None)
def zeta_of_curve(curve: Curve) -> ZetaData:
    """ZetaData of a supported curve by exhaustive point counting."""
    g = curve.genus
    n_needed = max(1, 2 * g)
    counts = tuple(point_count(curve, n) for n in range(1, n_needed + 1))
    return zeta_from_counts(counts, curve.field.q, g)


def sym_power_point_count(curve: Curve, d: int) -> int:
    """#X_d(F_q): the t^d coefficient of the zeta series."""
    if d < 0:
        return 0
    return zeta_of_curve(curve).series_coefficients(d)[d]
