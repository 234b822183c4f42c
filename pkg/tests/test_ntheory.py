import pytest

from libxostar.core.errors import InvariantViolation
from libxostar.tools.math import ntheory


@pytest.mark.parametrize("N, g", [
    (37, 2), (106, 12), (129, 13), (370, 53), (2310, 561),
])
def test_genus_x0(N, g):
    assert ntheory.genus_x0(N) == g


@pytest.mark.parametrize("N, psi", [(1365, 2688), (390, 1008), (1, 1)])
def test_psi(N, psi):
    assert ntheory.psi(N) == psi


def test_level():
    level = ntheory.SquareFreeLevel(129)
    assert level.primes == (3, 43)
    assert level.n == 2
    assert level.str_factorization() == "129=3·43"
    assert ntheory.SquareFreeLevel(37).str_factorization() == "37"
    assert level.quotient(3) == 43
    assert ntheory.assume_level(level) is level
    with pytest.raises(ValueError):
        level.quotient(5)


@pytest.mark.parametrize("N", [0, 12, 98])
def test_level_rejects(N):
    with pytest.raises(ValueError):
        ntheory.SquareFreeLevel(N)


def test_square_free_levels():
    assert [lv.N for lv in ntheory.square_free_levels(1, 10)] == [
        1, 2, 3, 5, 6, 7, 10
    ]
    assert [lv.N for lv in ntheory.square_free_levels(1, 10, parity="odd")] == [
        1, 3, 5, 7
    ]
    assert [lv.N for lv in ntheory.square_free_levels(
        1, 30, min_factors=3
    )] == [30]


def test_elliptic_points():
    assert ntheory.elliptic_points(37) == (2, 2)
    assert ntheory.elliptic_points(6) == (0, 0)


def test_riemann_hurwitz():
    assert ntheory.riemann_hurwitz_fixed_points(37, 1) == 2
    with pytest.raises(InvariantViolation):
        ntheory.riemann_hurwitz_fixed_points(37, 3)


def test_moebius_and_primes():
    assert ntheory.moebius(30) == -1
    assert ntheory.moebius(12) == 0
    assert ntheory.moebius(1) == 1
    assert ntheory.first_primes(5) == [2, 3, 5, 7, 11]
    assert ntheory.primes_upto(12) == [2, 3, 5, 7, 11]
    assert ntheory.next_prime(13) == 17
    assert ntheory.divisors_coprime_split(6) == [1, 2, 3, 6]


@pytest.mark.parametrize("m, n", [
    (2, 3), (5, 7), (6, 35), (11, 13 * 17), (30, 77), (1, 43),
])
def test_multiplicativity(m, n):
    assert ntheory.psi(m * n) == ntheory.psi(m) * ntheory.psi(n)
    assert ntheory.moebius(m * n) == ntheory.moebius(m) * ntheory.moebius(n)
    if m > 1:
        assert ntheory.moebius(m * m * n) == 0


def test_moebius_sums_vanish():
    for n in range(2, 60):
        assert sum(ntheory.moebius(d) for d in range(1, n + 1)
                   if n % d == 0) == 0
