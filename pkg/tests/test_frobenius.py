import numpy as np
import pytest

from libxostar.core.errors import InvariantViolation, MissingCoefficientError
from libxostar.tools.math import ntheory
from libxostar.tools.modular import frobenius, star
from libxostar.tools.modular.frobenius import FrobeniusPoly

from conftest import AP_37A, make_orbit


def test_newton_power_sums():
    # x^2 + 2x + 2: roots -1 +- i
    assert frobenius.newton_power_sums([2, 2, 1], 4) == [2, -2, 0, 4, -8]


def test_newton_power_sums_against_roots():
    coeffs = [9, 0, 4, 0, 1]
    roots = np.roots(list(reversed(coeffs)))
    sums = frobenius.newton_power_sums(coeffs, 6)
    for k in range(1, 7):
        assert sums[k] == pytest.approx(np.sum(roots**k).real, abs=1e-6)


def test_rational_orbit_factor():
    orbit = make_orbit(37, "a", (0, 1), {37: 1}, [(a,) for a in AP_37A])
    assert frobenius.orbit_factor(orbit, 2) == (2, 2, 1)
    assert frobenius.orbit_factor(orbit, 3) == (3, 3, 1)
    with pytest.raises(MissingCoefficientError):
        frobenius.orbit_factor(orbit, 101)


def test_quadratic_orbit_factor():
    # Hecke field Q(sqrt 2) with a_p = sqrt 2 at every prime
    orbit = make_orbit(
        23, "a", (-2, 0, 1), {23: 1}, [(0, 1)] * 4, bound=10
    )
    assert frobenius.orbit_factor(orbit, 3) == (9, 0, 4, 0, 1)


def test_frobenius_poly_checks():
    fp = FrobeniusPoly(37, 3, (9, 0, 4, 0, 1))
    assert fp.g == 2
    assert fp.satisfies_functional_equation()
    fp.check()
    bad = FrobeniusPoly(37, 3, (8, 0, 4, 0, 1))
    with pytest.raises(InvariantViolation):
        bad.check()
    with pytest.raises(ValueError):
        FrobeniusPoly(37, 3, (9, 0, 2))


def test_star_points_37(newform_db):
    space = star.star_space(37, newform_db)
    fp = frobenius.frobenius_poly(37, 2, space)
    assert fp.coeffs == (2, 2, 1)
    assert frobenius.count_star_points(fp, 1) == 5
    assert frobenius.count_star_points(fp, 2) == 5
    with pytest.raises(ValueError):
        frobenius.frobenius_poly(37, 37, space)
    with pytest.raises(ValueError):
        frobenius.count_star_points(fp, 0)


def test_elliptic_traces(elliptic_db):
    tr = frobenius.elliptic_ap(elliptic_db["37a"], 5)
    assert tr.a_p == -2
    assert frobenius.count_elliptic_points(tr, 1) == 8
    assert frobenius.count_elliptic_points(tr, 2) == 25 + 1 - (4 - 10)
    assert frobenius.max_elliptic_points(5, 2) == 36
    with pytest.raises(ValueError):
        frobenius.elliptic_ap(elliptic_db["37a"], 37)
    assert frobenius.reduction_ap(elliptic_db["37a"], 37) == -1


def test_weil_bounds_on_sample_orbits(derived_orbits):
    for orbit in derived_orbits:
        if not orbit.is_star():
            continue
        space = star.StarSpace(orbit.level, [star.StarFactor(orbit, (1,))])
        for p in ntheory.primes_upto(47):
            if orbit.level % p == 0:
                continue
            fp = frobenius.frobenius_poly(orbit.level, p, space)
            fp.check(k_max=8)
            roots = np.roots(list(reversed(fp.coeffs)))
            assert np.allclose(np.abs(roots), np.sqrt(p))
            assert frobenius.count_star_points(fp, 1) > 0
