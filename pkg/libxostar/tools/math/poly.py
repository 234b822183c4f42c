"""
Polynomials over the rationals.

Univariate and multivariate polynomials are `sympy.Poly` objects over
`QQ`. This module adds the conversions to and from exact coefficient
sequences, the Sylvester-matrix resultant and the integer printing used
for generators and models.
"""

import itertools
from fractions import Fraction

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from libxostar.core.util import misc


###############################################################################
# Conversions
###############################################################################


def cv_rational(val):
    """
    Converts a `sympy` rational (or `int`/`Fraction`) to `Fraction`.
    """
    if isinstance(val, Fraction):
        return val
    if isinstance(val, int):
        return Fraction(val)
    val = sympy.Rational(val)
    return Fraction(int(val.p), int(val.q))


def _sympy_rational(val):
    val = Fraction(val)
    return sympy.Rational(val.numerator, val.denominator)


def uni_poly(coeffs, gen):
    """
    Creates a univariate polynomial from its coefficients.

    Parameters
    ----------
    coeffs : `Iter[int or Fraction]`
        Coefficients, lowest degree first.
    gen : `sympy.Symbol`
        Variable.

    Returns
    -------
    poly : `sympy.Poly`
        Polynomial over `QQ`.
    """
    coeffs = [_sympy_rational(c) for c in coeffs]
    return sympy.Poly(list(reversed(coeffs)) or [0], gen, domain=QQ)


def uni_coeffs(poly):
    """
    Gets the coefficients of a univariate polynomial.

    Returns
    -------
    coeffs : `list(Fraction)`
        Coefficients, lowest degree first, without trailing zeros
        (empty for the zero polynomial).
    """
    if poly.is_zero:
        return []
    return [cv_rational(c) for c in reversed(poly.all_coeffs())]


def multi_poly(terms, gens):
    """
    Creates a multivariate polynomial from an exponent map.

    Parameters
    ----------
    terms : `dict(tuple(int)->int or Fraction)`
        Map from exponent vectors to coefficients. Zero coefficients
        are dropped.
    gens : `Iter[sympy.Symbol]`
        Variables, one per exponent vector entry.
    """
    gens = tuple(gens)
    rep = {}
    for exp, c in terms.items():
        if len(exp) != len(gens):
            raise ValueError("exponent length mismatch ({:d} != {:d})"
                             .format(len(exp), len(gens)))
        if c:
            rep[tuple(exp)] = _sympy_rational(c)
    if not rep:
        return sympy.Poly(0, *gens, domain=QQ)
    return sympy.Poly.from_dict(rep, *gens, domain=QQ)


def poly_terms(poly):
    """
    Gets the terms of a polynomial in graded lexicographic order.

    Returns
    -------
    terms : `list((tuple(int), Fraction))`
        Exponent vectors and nonzero coefficients, leading term first.
    """
    return [(tuple(m), cv_rational(c))
            for m, c in poly.terms(order="grlex")]


def monomials(nvars, degree):
    """
    Exponent vectors of all monomials of a given degree, in graded
    lexicographic order with the first variable largest.

    Returns
    -------
    exps : `list(tuple(int))`
        `C(nvars + degree - 1, degree)` exponent vectors.
    """
    exps = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        exps.append(tuple(e))
    return exps


###############################################################################
# Polynomial properties
###############################################################################


def is_squarefree(poly):
    """
    Whether a nonzero polynomial has no repeated factor.
    """
    return not poly.is_zero and poly.is_sqf


def is_irreducible(poly):
    """
    Whether a polynomial of positive degree is irreducible over `QQ`.
    """
    return poly.degree() > 0 and poly.is_irreducible


def discriminant(poly):
    """
    Discriminant of a univariate polynomial as `Fraction`.
    """
    return cv_rational(poly.discriminant())


###############################################################################
# Resultants
###############################################################################


def resultant(a, b, var):
    """
    Resultant of two polynomials with respect to one variable.

    Computed as the determinant of the Sylvester matrix whose entries are
    polynomials in the remaining variables (fraction-free Bareiss
    determinant over `QQ[others]`).

    Parameters
    ----------
    a, b : `sympy.Poly`
        Polynomials containing `var` among their generators.
    var : `sympy.Symbol`
        Eliminated variable.

    Returns
    -------
    res : `sympy.Poly`
        Resultant in the remaining variables (in `var` itself if there
        are none, then a constant).

    Raises
    ------
    ValueError
        If either input is zero.

    Examples
    --------
    >>> x, y = sympy.symbols("x y")
    >>> resultant(sympy.Poly(y**2 - 2, x, y), sympy.Poly(x - y, x, y), y)
    Poly(x**2 - 2, x, domain='QQ')
    """
    if a.is_zero or b.is_zero:
        raise ValueError("zero polynomial in resultant")
    gens = []
    for g in tuple(a.gens) + tuple(b.gens):
        if g not in gens:
            gens.append(g)
    if var not in gens:
        raise ValueError("variable not among generators ({:s})"
                         .format(str(var)))
    others = [g for g in gens if g != var]
    K = QQ.poly_ring(*others) if others else QQ
    pa = sympy.Poly(a.as_expr(), var)
    pb = sympy.Poly(b.as_expr(), var)
    ca = [K.from_sympy(c) for c in pa.all_coeffs()]
    cb = [K.from_sympy(c) for c in pb.all_coeffs()]
    m, n = len(ca) - 1, len(cb) - 1
    size = m + n
    out_gens = others if others else [var]
    if size == 0:
        return sympy.Poly(1, *out_gens, domain=QQ)
    rows = []
    for i in range(n):
        rows.append([K.zero] * i + ca + [K.zero] * (n - 1 - i))
    for i in range(m):
        rows.append([K.zero] * i + cb + [K.zero] * (m - 1 - i))
    det = DomainMatrix(rows, (size, size), K).det()
    return sympy.Poly(K.to_sympy(det), *out_gens, domain=QQ)


###############################################################################
# Printing
###############################################################################


def variable_names(nvars):
    """
    Printing names of canonical coordinates: `x, y, z, t` up to four
    variables, `x1, ..., xg` beyond.
    """
    if nvars <= 4:
        return ["x", "y", "z", "t"][:nvars]
    return ["x{:d}".format(i + 1) for i in range(nvars)]


def str_poly(poly, names=None):
    """
    Formats a polynomial with exact coefficients in graded lexicographic
    order, e.g. `"x^4 - 10*x^2*y^2 + 9*y^4"`.

    Parameters
    ----------
    poly : `sympy.Poly`
        Polynomial.
    names : `list(str)` or `None`
        Variable names, defaults to the generator names.
    """
    if names is None:
        names = [str(g) for g in poly.gens]
    terms = poly_terms(poly)
    if not terms:
        return "0"
    s = ""
    for k, (exp, c) in enumerate(terms):
        mono = []
        for name, e in zip(names, exp):
            if e == 1:
                mono.append(name)
            elif e > 1:
                mono.append("{:s}^{:d}".format(name, e))
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mono:
            body = "*".join(mono)
            if mag != 1:
                body = misc.str_fraction(mag) + "*" + body
        else:
            body = misc.str_fraction(mag)
        if k == 0:
            s = ("-" if c < 0 else "") + body
        else:
            s += " {:s} {:s}".format(sign, body)
    return s


def coordinate_symbols(nvars):
    """
    `sympy` symbols named by `variable_names`.
    """
    return sympy.symbols(variable_names(nvars))
