import pytest

from tracelab.fields import make_field
from tracelab.kernels import HAVE_COMPILED, delta_histogram_p1


FROZEN = {
    # q, d -> (histogram, nonreduced, total); cross-checked against the
    # object-level discriminant route in test_hitchin.py
    (3, 1, 2): ({0: 96, 1: 192, 2: 37}, 26, 351),
    (5, 1, 2): ({0: 1920, 1: 1680, 2: 213}, 62, 3875),
    (3, 1, 3): ({0: 816, 1: 1344, 2: 864, 3: 136}, 80, 3240),
}


@pytest.mark.parametrize("p,k,d", sorted(FROZEN))
def test_python_kernel_frozen_values(p, k, d):
    assert delta_histogram_p1(make_field(p, k), d, force_python=True) == FROZEN[(p, k, d)]


@pytest.mark.parametrize("p,k,d", [(3, 1, 2), (5, 1, 2), (3, 2, 2), (3, 1, 3), (7, 1, 2), (3, 1, 4)])
def test_compiled_and_python_agree(p, k, d):
    F = make_field(p, k)
    python_result = delta_histogram_p1(F, d, force_python=True)
    compiled_result = delta_histogram_p1(F, d)
    assert python_result == compiled_result
    hist, nonreduced, total = python_result
    # partition and mass facts independent of either implementation
    q = F.q
    assert total == sum(q**e for e in range(d + 1)) * q ** (d + 1)
    assert nonreduced == 2 * sum(q**e for e in range(d + 1))
    assert sum(hist.values()) + nonreduced == total


def test_compiled_extension_present():
    # the build is expected to produce the extension; the pure fallback is
    # exercised above either way
    assert HAVE_COMPILED


def test_even_characteristic_rejected():
    with pytest.raises(ValueError):
        delta_histogram_p1(make_field(2, 2), 2)
