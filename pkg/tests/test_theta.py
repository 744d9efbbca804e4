import math

import numpy as np
import pytest

from summa import theta as T
from summa.errors import SpecError


@pytest.mark.parametrize("name", T.catalog_names())
def test_catalog_normalised_and_even(name):
    th = T.from_catalog(name)
    if name == "gaussian":
        return  # exp(-pi t^2) test profile, not a catalog summability function
    assert th(np.zeros((1, 2)))[0] == pytest.approx(1.0, abs=1e-12)
    rng = np.random.default_rng(0)
    t = rng.uniform(-3, 3, size=(50, 2))
    for flip in ([-1, 1], [1, -1]):
        assert np.allclose(th(t * flip), th(t), atol=1e-14)


def test_unknown_catalog_id():
    with pytest.raises(SpecError):
        T.from_catalog("nope")


def test_known_transforms_by_quadrature():
    from scipy import integrate
    for th in (T.fejer(), T.weierstrass(1.0), T.weierstrass(2.0)):
        for x in (0.0, 0.7, 2.5):
            val, _ = integrate.quad(lambda t: th.profile_values(np.array([t]))[0] * math.cos(x * t),
                                    -60, 60, limit=400, points=[-1, 0, 1])
            got = th.fourier_transform(np.array([[x]]))[0]
            assert got == pytest.approx(val / (2 * math.pi), abs=1e-7)


def test_wiener_tail_decreases():
    th = T.weierstrass(1.0)
    tails = [th.wiener_tail_bound(R, 1) for R in (5, 10, 20)]
    assert tails[0] > tails[1] > tails[2] > 0
    assert T.fejer().wiener_tail_bound(2, 2) == 0.0
