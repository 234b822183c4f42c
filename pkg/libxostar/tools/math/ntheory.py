"""
Elementary number theory for square-free levels.
"""

from fractions import Fraction

from sympy import divisors, factorint, isprime, nextprime, prime, primerange

from libxostar.core.errors import InvariantViolation


###############################################################################
# Square-free levels
###############################################################################


def is_squarefree(m):
    """
    Whether a positive integer is square-free.
    """
    if m < 1:
        return False
    return all(e == 1 for e in factorint(m).values())


class SquareFreeLevel(object):

    """
    Square-free level `N` with its prime factorization.

    Parameters
    ----------
    N : `int`
        Positive square-free integer.

    Raises
    ------
    ValueError
        If `N` is not a positive square-free integer.
    """

    def __init__(self, N):
        N = int(N)
        if N < 1:
            raise ValueError("invalid level ({:d})".format(N))
        fac = factorint(N)
        if any(e > 1 for e in fac.values()):
            raise ValueError("not square-free ({:d})".format(N))
        self._N = N
        self._primes = tuple(sorted(int(p) for p in fac))

    @property
    def N(self):
        return self._N

    @property
    def primes(self):
        return self._primes

    @property
    def n(self):
        return len(self._primes)

    def __int__(self):
        return self._N

    def __index__(self):
        return self._N

    def __eq__(self, other):
        if isinstance(other, SquareFreeLevel):
            return self._N == other._N
        return self._N == other

    def __hash__(self):
        return hash(self._N)

    def __lt__(self, other):
        return self._N < int(other)

    def __repr__(self):
        return "SquareFreeLevel({:d})".format(self._N)

    def __str__(self):
        return str(self._N)

    def divides(self, m):
        return m % self._N == 0

    def quotient(self, p):
        """
        Level `N/p` for a prime `p | N`.
        """
        if p not in self._primes:
            raise ValueError("prime does not divide level ({:d}, {:d})"
                             .format(p, self._N))
        return SquareFreeLevel(self._N // p)

    def str_factorization(self, sep="·"):
        """
        Formats as `"129=3·43"` (prime levels as `"37"`).
        """
        if self.n <= 1:
            return str(self._N)
        return "{:d}={:s}".format(
            self._N, sep.join(str(p) for p in self._primes)
        )


def assume_level(N):
    """
    Converts an `int` to `SquareFreeLevel` (identity on levels).
    """
    if isinstance(N, SquareFreeLevel):
        return N
    return SquareFreeLevel(N)


def square_free_levels(n_min, n_max, min_factors=1, parity=None):
    """
    Iterates over square-free levels in a range.

    Parameters
    ----------
    n_min, n_max : `int`
        Inclusive bounds.
    min_factors : `int`
        Minimal number of prime factors.
    parity : `None` or `"odd"` or `"even"`
        Restricts to odd or even levels.

    Yields
    ------
    level : `SquareFreeLevel`
        Levels in ascending order.
    """
    for N in range(max(1, n_min), n_max + 1):
        if parity == "odd" and N % 2 == 0:
            continue
        if parity == "even" and N % 2 == 1:
            continue
        if not is_squarefree(N):
            continue
        level = SquareFreeLevel(N)
        if level.n >= min_factors:
            yield level


###############################################################################
# Arithmetic functions
###############################################################################


def primes_upto(n):
    """
    Primes `p <= n` in ascending order.
    """
    return [int(p) for p in primerange(2, n + 1)]


def next_prime(p):
    return int(nextprime(p))


def is_prime(p):
    return bool(isprime(p))


def psi(N):
    """
    Dedekind psi function of a square-free level, `prod (p+1)`.

    Examples
    --------
    >>> psi(SquareFreeLevel(1365))
    2688
    """
    res = 1
    for p in assume_level(N).primes:
        res *= p + 1
    return res


def moebius(m):
    """
    Moebius function.
    """
    if m < 1:
        raise ValueError("invalid argument ({:d})".format(m))
    fac = factorint(m)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def chi_m4(p):
    """
    Kronecker symbol `(-4/p)` at a prime.
    """
    if p == 2:
        return 0
    return 1 if p % 4 == 1 else -1


def chi_m3(p):
    """
    Kronecker symbol `(-3/p)` at a prime.
    """
    if p == 3:
        return 0
    return 1 if p % 3 == 1 else -1


def elliptic_points(N):
    """
    Numbers of elliptic points of orders 2 and 3 on `X_0(N)`.

    Returns
    -------
    nu2, nu3 : `int`
        `prod (1 + (-4/p))` and `prod (1 + (-3/p))` over `p | N`.
    """
    nu2, nu3 = 1, 1
    for p in assume_level(N).primes:
        nu2 *= 1 + chi_m4(p)
        nu3 *= 1 + chi_m3(p)
    return nu2, nu3


def genus_x0(N):
    """
    Genus of `X_0(N)` for square-free `N`.

    Parameters
    ----------
    N : `SquareFreeLevel` or `int`
        Level.

    Returns
    -------
    g : `int`
        `1 + psi/12 - nu2/4 - nu3/3 - 2^(n-1)`.

    Raises
    ------
    ValueError
        If `N` is not square-free.

    Examples
    --------
    >>> genus_x0(129)
    13
    """
    level = assume_level(N)
    nu2, nu3 = elliptic_points(level)
    g = (
        1 + Fraction(psi(level), 12) - Fraction(nu2, 4) - Fraction(nu3, 3)
        - Fraction(2**level.n, 2)
    )
    if g.denominator != 1 or g < 0:
        raise InvariantViolation("non-integral genus ({:d}: {:s})"
                                 .format(level.N, str(g)))
    return int(g)


def divisors_coprime_split(N):
    """
    Divisors `d | N` with `gcd(d, N/d) = 1`; all `2^n` divisors for
    square-free `N`, ascending.
    """
    return [int(d) for d in divisors(int(assume_level(N)))]


def riemann_hurwitz_fixed_points(N, g_star):
    """
    Ramification implied by the quotient map `X_0(N) -> X_0^*(N)`.

    Returns
    -------
    r : `int`
        `2 g_N - 2 - 2^n (2 g* - 2)`.

    Raises
    ------
    InvariantViolation
        If `r` is negative or odd.
    """
    level = assume_level(N)
    r = 2 * genus_x0(level) - 2 - 2**level.n * (2 * g_star - 2)
    if r < 0 or r % 2:
        raise InvariantViolation(
            "Riemann-Hurwitz violated ({:d}: g*={:d}, r={:d})"
            .format(level.N, g_star, r)
        )
    return r


def factorint_dict(m):
    """
    Prime factorization as ascending `dict(int->int)`.
    """
    return {int(p): int(e) for p, e in sorted(factorint(m).items())}


def first_primes(k):
    """
    The first `k` primes.
    """
    return [int(prime(i)) for i in range(1, k + 1)]
