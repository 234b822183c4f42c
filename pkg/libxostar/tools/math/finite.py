"""
Exhaustive point counts over prime fields (vectorized with `numpy`).
"""

import functools
from fractions import Fraction

import numpy as np


def _mod_p(c, p):
    c = Fraction(c)
    den = c.denominator % p
    if den == 0:
        raise ZeroDivisionError("denominator divisible by p ({:s}, {:d})"
                                .format(str(c), p))
    return (c.numerator % p) * pow(den, -1, p) % p


def _eval_mod_p(coeffs, x, p):
    """
    Evaluates a polynomial (lowest degree first) on an integer array
    modulo `p` by Horner's rule.
    """
    res = np.zeros_like(x)
    for c in reversed(coeffs):
        res = (res * x + c) % p
    return res


@functools.lru_cache(maxsize=4096)
def count_weierstrass_points(ainvs, p):
    """
    Number of projective points of the reduction of a Weierstrass cubic.

    Counts `y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6` over `F_p`
    plus the point at infinity. A singular reduction is counted with its
    singular point, so that `p + 1 - count` is `1`, `-1` or `0` for split
    multiplicative, non-split multiplicative or additive reduction.

    Parameters
    ----------
    ainvs : `tuple(int)`
        Weierstrass coefficients `(a1, a2, a3, a4, a6)`.
    p : `int`
        Prime.

    Returns
    -------
    count : `int`
        Number of `F_p`-points.
    """
    a1, a2, a3, a4, a6 = [int(a) % p for a in ainvs]
    x = np.arange(p, dtype=np.int64)[:, None]
    y = np.arange(p, dtype=np.int64)[None, :]
    lhs = (y * y + a1 * x * y + a3 * y) % p
    rhs = _eval_mod_p([a6, a4, a2, 1], x, p)
    return int(np.count_nonzero(lhs == rhs)) + 1


def is_square_mod(a, p):
    """
    Whether `a` is a nonzero square modulo an odd prime `p`.
    """
    a %= p
    return a != 0 and pow(a, (p - 1) // 2, p) == 1


def count_hyperelliptic_points(coeffs, scale, p):
    """
    Number of points of the smooth model of `scale * y^2 = P(x)` over
    `F_p`, `p` odd.

    The affine solutions are counted exhaustively. At infinity there are
    2 points if `deg P = 6` and `scale * lead(P)` is a nonzero square,
    0 if it is a non-square, and 1 if `deg P = 5`.

    Parameters
    ----------
    coeffs : `list(int or Fraction)`
        Coefficients of `P`, lowest degree first, degree 5 or 6.
    scale : `int` or `Fraction`
        Coefficient of `y^2`.
    p : `int`
        Odd prime not dividing the denominators, `scale` and `lead(P)`.

    Returns
    -------
    count : `int`
        Number of `F_p`-points.
    """
    if p == 2:
        raise ValueError("characteristic 2 not supported")
    deg = len(coeffs) - 1
    if deg not in (5, 6):
        raise ValueError("invalid degree ({:d})".format(deg))
    cs = [_mod_p(c, p) for c in coeffs]
    c = _mod_p(scale, p)
    if c == 0 or cs[-1] == 0:
        raise ValueError("bad reduction at p ({:d})".format(p))
    x = np.arange(p, dtype=np.int64)[:, None]
    y = np.arange(p, dtype=np.int64)[None, :]
    lhs = (c * y * y) % p
    rhs = _eval_mod_p(cs, x, p)
    affine = int(np.count_nonzero(lhs == rhs))
    if deg == 5:
        return affine + 1
    return affine + (2 if is_square_mod(c * cs[-1], p) else 0)
