"""The acceptance battery: every headline identity at its stated tolerance.

Each criterion returns a CriterionResult with one row per sub-check; the
CLI `suite` command and the test suite both run these functions, so a
green acceptance run means the same thing in both places.  Randomized
sweeps take an explicit seed and echo it in their rows.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .covers import EtaleDoubleCover
from .curves import parse_curve, point_count
from .hecke import (
    eigenvalue_check,
    gl1_relative_trace,
    hecke_components_H,
    rho_h_factorization_check,
    twisted_hitchin_base_count,
    twisted_torus_bundles,
    twisted_torus_parameters,
    vanishing_scan,
)
from .hitchin import gm_torsor_check, martens_fiber_count, stratify
from .picard import characters, picard_group
from .systems import (
    GradedLocalSystem,
    GradedSummand,
    adjoint_grading_system,
    constant_sheaf_eigenvalue,
    frobenius_datum,
    l_series_cohomological,
    l_series_product,
    leading_term_dimension,
    sym_power_trace,
    weight_graded_h2_datum,
)
from .zeta import zeta_of_curve

P1_CURVES = ["p1:q=2", "p1:q=3", "p1:q=5", "p1:q=7"]
ELLIPTIC_CURVES = [
    "ell2:q=2;f=x^3",
    "ell2:q=2;f=x^3+x^2+1",
    "ell:q=3;a=1;b=0",
    "ell:q=3;a=2;b=1",
    "ell:q=5;a=-1;b=0",
]
GENUS2_CURVE = "hyp:q=3;f=x^5+2*x"
TWISTED_BASE = "ell:q=5;a=-1;b=0"
DEFAULT_SEED = 20240817


@dataclass
class CriterionResult:
    number: int
    name: str
    rows: list = field(default_factory=list)

    def add(self, ok: bool, **data):
        self.rows.append({"ok": bool(ok), **data})

    @property
    def ok(self) -> bool:
        return all(r["ok"] for r in self.rows)


def criterion_1_zeta(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Zeta numerators match brute-force counts and the functional equation."""
    res = CriterionResult(1, "zeta-correctness")
    for desc in P1_CURVES:
        z = zeta_of_curve(parse_curve(desc))
        res.add(z.numerator == [1], curve=desc, numerator=z.numerator)
    for desc in ELLIPTIC_CURVES:
        curve = parse_curve(desc)
        z = zeta_of_curve(curve)
        ok = (
            z.functional_equation_ok()
            and z.point_count(1) == point_count(curve, 1)
            and z.point_count(2) == point_count(curve, 2)
        )
        res.add(ok, curve=desc, numerator=z.numerator)
    return res


def criterion_2_two_routes(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Euler product equals the cohomological route for every character."""
    res = CriterionResult(2, "two-route-l-series")
    for desc in ["p1:q=3", "ell:q=3;a=1;b=0", GENUS2_CURVE]:
        curve = parse_curve(desc)
        d_max = 2 * curve.genus + 4
        for idx, chi in enumerate(characters(picard_group(curve))):
            system = GradedLocalSystem(curve, [GradedSummand(chi)])
            lhs = l_series_product(system, d_max)
            rhs = l_series_cohomological(frobenius_datum(system), d_max)
            res.add(lhs == rhs, curve=desc, chi=idx, d_max=d_max)
    return res


def criterion_3_eigenvalues(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Enumeration sums equal L-series coefficients for all (chi, m, d)."""
    res = CriterionResult(3, "hecke-eigenvalues")
    for desc in ["ell2:q=2;f=x^3", "ell:q=3;a=1;b=0"]:
        curve = parse_curve(desc)
        for idx, chi in enumerate(characters(picard_group(curve))):
            for m in (0, 1, 2):
                for d in range(0, 6):
                    chk = eigenvalue_check(chi, m, d)
                    res.add(chk.equal, curve=desc, chi=idx, m=m, d=d)
    return res


def criterion_4_vanishing(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Nontrivial characters vanish beyond degree 2g - 2."""
    res = CriterionResult(4, "vanishing-bound")
    cases = [("ell2:q=2;f=x^3", 0), ("ell:q=3;a=1;b=0", 0), (GENUS2_CURVE, 2)]
    for desc, bound in cases:
        curve = parse_curve(desc)
        for idx, chi in enumerate(characters(picard_group(curve))):
            for m in (1, 2):
                if chi.power(m).is_trivial_on_pic0():
                    continue
                nonzero = vanishing_scan(chi, m, range(0, bound + 4))
                res.add(
                    all(d <= bound for d in nonzero),
                    curve=desc,
                    chi=idx,
                    m=m,
                    nonzero=nonzero,
                )
    return res


def criterion_5_gl1_trace(seed: int = DEFAULT_SEED) -> CriterionResult:
    """The abelian relative trace equals q - 1 on every supported curve."""
    res = CriterionResult(5, "gl1-relative-trace")
    for desc in P1_CURVES + ELLIPTIC_CURVES + [GENUS2_CURVE]:
        curve = parse_curve(desc)
        value = gl1_relative_trace(curve)
        res.add(value == curve.field.q - 1, curve=desc, value=value)
    return res


def criterion_6_sym_powers(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Random graded systems match the series route; leading weights are binomial."""
    res = CriterionResult(6, "symmetric-power-calculus")
    rng = random.Random(seed)
    pool = [parse_curve("ell:q=3;a=1;b=0"), parse_curve("ell2:q=2;f=x^3")]
    for trial in range(50):
        curve = rng.choice(pool)
        chis = characters(picard_group(curve))
        summands = [
            GradedSummand(rng.choice(chis), rng.randrange(-4, 5), rng.randrange(-2, 3))
            for _ in range(rng.randrange(1, 4))
        ]
        system = GradedLocalSystem(curve, summands)
        datum = frobenius_datum(system)
        series = l_series_cohomological(datum, 6)
        ok = all(sym_power_trace(datum, d) == series[d] for d in range(7))
        res.add(ok, trial=trial, curve=curve.descriptor(), rank=len(summands), seed=seed)
    for m in range(1, 5):
        datum = weight_graded_h2_datum(m, extra_h1=[1, -1, 2])
        for d in range(0, 7):
            top = sym_power_trace(datum, d).weight_part(2 * d)
            want = datum.ring.term(0, 2 * d, leading_term_dimension(m, d))
            res.add(top == want, m=m, d=d, binomial=leading_term_dimension(m, d))
    return res


def criterion_7_constant_sheaf(seed: int = DEFAULT_SEED) -> CriterionResult:
    """The adjoint zeta-product route equals the graded-system route."""
    res = CriterionResult(7, "constant-sheaf-eigenvalue")
    for desc in ["p1:q=3", "ell:q=3;a=1;b=0"]:
        curve = parse_curve(desc)
        system = adjoint_grading_system(curve)
        datum = frobenius_datum(system)
        for d in range(0, 6):
            zeta_route = constant_sheaf_eigenvalue([(-2, 1), (0, 1), (2, 1)], curve, d)
            graded = sym_power_trace(datum, d)
            res.add(zeta_route.lift(datum.ring) == graded, curve=desc, d=d)
    return res


def criterion_8_sl2_vanishing(seed: int = DEFAULT_SEED) -> CriterionResult:
    """The adjoint-with-order-2-twist datum vanishes beyond 3(2g - 2)."""
    res = CriterionResult(8, "sl2-adjoint-vanishing")
    for desc in ["ell:q=3;a=1;b=0", GENUS2_CURVE]:
        curve = parse_curve(desc)
        chis = [
            c
            for c in characters(picard_group(curve))
            if c.order_on_pic0() == 2
        ]
        chi = chis[0]
        system = GradedLocalSystem(
            curve,
            [GradedSummand(chi, -2, -2), GradedSummand(chi, 0, 0), GradedSummand(chi, 2, 2)],
        )
        datum = frobenius_datum(system)
        bound = 3 * (2 * curve.genus - 2)
        for d in range(bound + 1, bound + 5):
            res.add(sym_power_trace(datum, d).is_zero(), curve=desc, d=d, bound=bound)
    return res


def criterion_9_stratification(seed: int = DEFAULT_SEED) -> CriterionResult:
    """P^1/F_3, d = 2, tower (3, 9, 27): exponents within 0.5 of 2d + 1 - delta."""
    res = CriterionResult(9, "hitchin-stratification")
    report = stratify(parse_curve("p1:q=3"), 2, 3)
    for delta in sorted(report.passes):
        res.add(
            report.passes[delta],
            delta=delta,
            exponent=round(report.exponents[delta], 4),
            expected=report.expected[delta],
        )
    for level in report.levels:
        total_ok = sum(level.histogram.values()) + level.nonreduced == level.total
        res.add(total_ok, q=level.q, total=level.total, nonreduced=level.nonreduced)
    return res


def criterion_10_torsor(seed: int = DEFAULT_SEED) -> CriterionResult:
    """#A^x = (q - 1) #(X_d x_Pic X_d) exactly."""
    res = CriterionResult(10, "gm-torsor")
    for desc in ["p1:q=3", "ell:q=3;a=1;b=0"]:
        curve = parse_curve(desc)
        for d in (0, 1, 2):
            lhs, rhs, ok = gm_torsor_check(curve, d)
            res.add(ok, curve=desc, d=d, lhs=lhs, rhs=rhs)
    return res


def criterion_11_martens(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Fiber-product growth exponent within 0.5 of 2d - 1 on an elliptic base."""
    import math

    res = CriterionResult(11, "martens-growth")
    curve = parse_curve("ell:q=3;a=1;b=0")
    for d in (1, 2):
        c1 = martens_fiber_count(curve, d, 1)
        c2 = martens_fiber_count(curve, d, 2)
        exponent = math.log(c2 / c1) / math.log(curve.field.q)
        ok = abs(exponent - (2 * d - 1)) <= 0.5
        res.add(ok, d=d, counts=[c1, c2], exponent=round(exponent, 4))
    return res


def criterion_12_twisted_torus(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Component group, odd-degree emptiness, and the rank factorization."""
    res = CriterionResult(12, "twisted-torus")
    cover = EtaleDoubleCover(parse_curve(TWISTED_BASE), (0, 0))
    bundles = twisted_torus_bundles(cover)
    res.add(bundles.component_count == 2, check="component-group", count=bundles.component_count)
    for d1 in (1, 3):
        value = twisted_hitchin_base_count(cover, 0, d1)
        res.add(value == 0, check="odd-degree-empty", d1=d1, value=value)
    for idx, sigma in enumerate(twisted_torus_parameters(cover)):
        _lhs, _rhs, ok = rho_h_factorization_check(cover, sigma, 4)
        res.add(ok, check="rho-factorization", sigma=idx, d_max=4)
    recs = hecke_components_H(cover, 2, m_max=3)
    res.add(bool(recs), check="hecke-components", count=len(recs))
    return res


ALL_CRITERIA = [
    criterion_1_zeta,
    criterion_2_two_routes,
    criterion_3_eigenvalues,
    criterion_4_vanishing,
    criterion_5_gl1_trace,
    criterion_6_sym_powers,
    criterion_7_constant_sheaf,
    criterion_8_sl2_vanishing,
    criterion_9_stratification,
    criterion_10_torsor,
    criterion_11_martens,
    criterion_12_twisted_torus,
]


def run_all(seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    return [fn(seed) for fn in ALL_CRITERIA]
