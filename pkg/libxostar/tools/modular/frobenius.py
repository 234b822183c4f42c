"""
Frobenius on the Jacobian of X_0^*(N) and point counts over F_{p^k}.

The characteristic polynomial of Frobenius is assembled from the `a_p`
of the invariant newform orbits: an orbit with Hecke polynomial `m(y)` and
`a_p = phi(y)` contributes `Res_y(m(y), x^2 - phi(y) x + p)`. Point counts
follow from the power sums of its roots, obtained exactly by Newton's
identities.
"""

import functools
import math

import sympy

from libxostar import env
from libxostar.core.errors import (
    InvariantViolation, MissingCoefficientError, InsufficientDepthError,
    ValidationError
)
from libxostar.core.io.base import FileBase
from libxostar.tools.math import finite, ntheory, poly

LOGGER = env.logging.get_logger("libxostar.tools.modular.frobenius")

FROB_VAR = sympy.Symbol("x")
_HECKE_VAR = sympy.Symbol("a")


###############################################################################
# Newton's identities
###############################################################################


def newton_power_sums(coeffs, k_max):
    """
    Power sums of the roots of a monic integer polynomial.

    Parameters
    ----------
    coeffs : `Iter[int]`
        Monic polynomial, lowest degree first.
    k_max : `int`
        Largest power.

    Returns
    -------
    sums : `list(int)`
        `[s_0, s_1, ..., s_k_max]` with `s_0` the degree.
    """
    d = len(coeffs) - 1
    # c[i] is the coefficient of x^(d-i)
    c = list(reversed(coeffs))
    s = [d]
    for k in range(1, k_max + 1):
        val = -sum(c[i] * s[k - i] for i in range(1, min(k - 1, d) + 1))
        if k <= d:
            val -= k * c[k]
        s.append(val)
    return s


###############################################################################
# Frobenius polynomial of X_0^*(N)
###############################################################################


class FrobeniusPoly(FileBase):

    """
    Characteristic polynomial `R_p(x)` of Frobenius on `J_0^*(N)`.

    Parameters
    ----------
    level : `SquareFreeLevel`
        Level `N`.
    p : `int`
        Good prime.
    coeffs : `Iter[int]`
        Monic integer polynomial of degree `2 g*`, lowest degree first.
    """

    SER_KEYS = FileBase.SER_KEYS + ("level", "p", "coeffs")

    def __init__(self, level, p, coeffs):
        self.level = ntheory.assume_level(level)
        self.p = int(p)
        self.coeffs = tuple(int(c) for c in coeffs)
        if len(self.coeffs) % 2 != 1 or self.coeffs[-1] != 1:
            raise ValueError("invalid Frobenius polynomial ({:s})"
                             .format(str(self.coeffs)))
        self._sums = [len(self.coeffs) - 1]

    @property
    def g(self):
        return (len(self.coeffs) - 1) // 2

    def __repr__(self):
        return "<FrobeniusPoly N={:d} p={:d} deg={:d}>".format(
            self.level.N, self.p, 2 * self.g
        )

    def poly(self):
        return poly.uni_poly(self.coeffs, FROB_VAR)

    def power_sum(self, k):
        """
        `s_k = sum alpha_i^k` (cached).
        """
        if k >= len(self._sums):
            self._sums = newton_power_sums(self.coeffs, k)
        return self._sums[k]

    def satisfies_functional_equation(self):
        """
        Whether `x^(2g) R(p/x) = p^g R(x)`, i.e. `c_i = p^(g-i) c_(2g-i)`.
        """
        g, c = self.g, self.coeffs
        return all(
            c[i] == self.p**(g - i) * c[2 * g - i] for i in range(g + 1)
        )

    def satisfies_weil_bound(self, k):
        """
        Whether `|s_k| <= 2 g p^(k/2)`, checked as `s_k^2 <= 4 g^2 p^k`.
        """
        s = self.power_sum(k)
        return s * s <= 4 * self.g**2 * self.p**k

    def check(self, k_max=4):
        """
        Raises
        ------
        InvariantViolation
            If the functional equation or a Weil bound up to `k_max` fails.
        """
        if not self.satisfies_functional_equation():
            raise InvariantViolation(
                "functional equation violated (N={:d}, p={:d})"
                .format(self.level.N, self.p)
            )
        for k in range(1, k_max + 1):
            if not self.satisfies_weil_bound(k):
                raise InvariantViolation(
                    "Weil bound violated (N={:d}, p={:d}, k={:d})"
                    .format(self.level.N, self.p, k)
                )


@functools.lru_cache(maxsize=8192)
def _orbit_factor(minpoly, ap, p):
    field_poly = poly.uni_poly(minpoly, _HECKE_VAR)
    phi = poly.uni_poly(ap, _HECKE_VAR).as_expr()
    quad = sympy.Poly(FROB_VAR**2 - phi * FROB_VAR + p,
                      FROB_VAR, _HECKE_VAR)
    res = poly.resultant(
        sympy.Poly(field_poly.as_expr(), FROB_VAR, _HECKE_VAR),
        quad, _HECKE_VAR
    )
    coeffs = poly.uni_coeffs(sympy.Poly(res.as_expr(), FROB_VAR))
    if any(c.denominator != 1 for c in coeffs):
        return None
    return tuple(int(c) for c in coeffs)


def orbit_factor(orbit, p):
    """
    Frobenius factor `Res_y(m(y), x^2 - a_p(y) x + p)` of one orbit.

    Returns
    -------
    coeffs : `tuple(int)`
        Monic integer polynomial of degree `2 dim`, lowest degree first.

    Raises
    ------
    MissingCoefficientError
        If `a_p` is not in the data.
    ValidationError
        If the factor is not integral.
    """
    try:
        ap = orbit.a(p)
    except InsufficientDepthError:
        raise MissingCoefficientError(
            "a_{:d} missing for {:s} (depth {:d})"
            .format(p, orbit.name, orbit.depth)
        )
    res = _orbit_factor(orbit.hecke_minpoly, tuple(ap), p)
    if res is None:
        raise ValidationError(orbit.name, "integral Frobenius factor",
                              "p={:d}".format(p))
    return res


def _mul_coeffs(a, b):
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] += x * y
    return res


def frobenius_poly(N, p, star_space):
    """
    Builds `R_p(x)` for `X_0^*(N)`.

    Parameters
    ----------
    N : `SquareFreeLevel` or `int`
        Level.
    p : `int`
        Prime not dividing `N`.
    star_space : `StarSpace`
        Invariant factors of `J_0^*(N)`.

    Returns
    -------
    fp : `FrobeniusPoly`
        Product of the orbit factors, degree `2 g*`.

    Raises
    ------
    ValueError
        If `p` divides `N` or is not prime.
    MissingCoefficientError
        If some orbit lacks `a_p`.
    """
    level = ntheory.assume_level(N)
    if not ntheory.is_prime(p):
        raise ValueError("not a prime ({:d})".format(p))
    if level.N % p == 0:
        raise ValueError("prime divides level ({:d}, {:d})"
                         .format(p, level.N))
    coeffs = [1]
    for factor in star_space.factors:
        coeffs = _mul_coeffs(coeffs, orbit_factor(factor.orbit, p))
    return FrobeniusPoly(level, p, coeffs)


def count_star_points(fp, k):
    """
    `|X_0^*(N)(F_{p^k})| = p^k + 1 - s_k`.
    """
    if k < 1:
        raise ValueError("invalid extension degree ({:d})".format(k))
    return fp.p**k + 1 - fp.power_sum(k)


###############################################################################
# Elliptic curves
###############################################################################


def reduction_ap(curve, p):
    """
    `p + 1 - |E~(F_p)|` for the reduction of the minimal model, counting
    a singular point once: the trace at good `p` and `+1`, `-1`, `0` for
    split, non-split and additive reduction.
    """
    return p + 1 - finite.count_weierstrass_points(curve.ainvs, p)


class EllipticTrace(FileBase):

    """
    Frobenius trace of an elliptic curve at a good prime.

    Parameters
    ----------
    curve : `EllipticCurveRec`
        Curve.
    p : `int`
        Prime of good reduction.
    a_p : `int`
        Trace, `|a_p| <= 2 sqrt(p)`.
    """

    SER_KEYS = FileBase.SER_KEYS + ("p", "a_p")

    def __init__(self, curve, p, a_p):
        self.curve = curve
        self.p = int(p)
        self.a_p = int(a_p)
        if self.a_p * self.a_p > 4 * self.p:
            raise InvariantViolation(
                "Hasse bound violated ({:s}, p={:d}, a_p={:d})"
                .format(curve.label, self.p, self.a_p)
            )

    def __repr__(self):
        return "<EllipticTrace {:s} p={:d} a_p={:d}>".format(
            self.curve.label, self.p, self.a_p
        )

    def power_sum(self, k):
        s0, s1 = 2, self.a_p
        if k == 0:
            return s0
        for _ in range(k - 1):
            s0, s1 = s1, self.a_p * s1 - self.p * s0
        return s1


def elliptic_ap(curve, p):
    """
    Trace of Frobenius by exhaustive point counting on the reduction.

    Raises
    ------
    ValueError
        On bad reduction (`p` divides the conductor).
    """
    if not ntheory.is_prime(p):
        raise ValueError("not a prime ({:d})".format(p))
    if curve.conductor % p == 0:
        raise ValueError("bad reduction ({:s}, p={:d})"
                         .format(curve.label, p))
    return EllipticTrace(curve, p, reduction_ap(curve, p))


def count_elliptic_points(tr, k):
    """
    `|E(F_{p^k})| = p^k + 1 - s_k` with `s_k = a_p s_(k-1) - p s_(k-2)`.
    """
    if k < 1:
        raise ValueError("invalid extension degree ({:d})".format(k))
    return tr.p**k + 1 - tr.power_sum(k)


def max_elliptic_points(p, k):
    """
    Upper bound `p^k + 1 + 2 p^(k/2)` (rounded down) on `|E(F_{p^k})|`;
    `(p + 1)^2` for `k = 2`.
    """
    return p**k + 1 + math.isqrt(4 * p**k)
