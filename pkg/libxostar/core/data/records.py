"""
Record types of the two ingested datasets: Galois orbits of newforms and
elliptic curve isogeny classes.
"""

from fractions import Fraction

import sympy
from sympy import factorint
from sympy.polys.domains import QQ

from libxostar.core.errors import InsufficientDepthError, ValidationError
from libxostar.core.io.base import FileBase
from libxostar.core.util import misc


###############################################################################
# Hecke fields
###############################################################################


HECKE_GEN = sympy.Symbol("a")


class HeckeField(object):

    """
    Number field `Q[a]/(m(a))` with elements stored as power-basis
    coordinate tuples.

    Parameters
    ----------
    minpoly : `Iter[int]`
        Monic integer minimal polynomial, lowest degree first.
    """

    def __init__(self, minpoly):
        minpoly = tuple(int(c) for c in minpoly)
        if len(minpoly) < 2 or minpoly[-1] != 1:
            raise ValueError("minimal polynomial not monic of positive degree "
                             "({:s})".format(str(minpoly)))
        self._minpoly = minpoly
        self._poly = sympy.Poly(list(reversed(minpoly)), HECKE_GEN, domain=QQ)

    @property
    def minpoly(self):
        return self._minpoly

    @property
    def degree(self):
        return len(self._minpoly) - 1

    def poly(self):
        """
        Minimal polynomial as `sympy.Poly` in the generator `a`.
        """
        return self._poly

    def __eq__(self, other):
        return isinstance(other, HeckeField) and self._minpoly == other._minpoly

    def __hash__(self):
        return hash(self._minpoly)

    def zero(self):
        return tuple(Fraction(0) for _ in range(self.degree))

    def one(self):
        return (Fraction(1),) + tuple(Fraction(0) for _ in range(self.degree - 1))

    def from_rational(self, c):
        return (Fraction(c),) + tuple(Fraction(0) for _ in range(self.degree - 1))

    def to_poly(self, elem):
        return sympy.Poly(
            [sympy.Rational(c.numerator, c.denominator)
             for c in reversed(elem)] or [0],
            HECKE_GEN, domain=QQ
        )

    def from_poly(self, poly):
        rem = poly.rem(self._poly)
        coeffs = [] if rem.is_zero else list(reversed(rem.all_coeffs()))
        res = [Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q))
               for c in coeffs]
        return tuple(res + [Fraction(0)] * (self.degree - len(res)))

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def scale(self, a, c):
        c = Fraction(c)
        return tuple(c * x for x in a)

    def mul(self, a, b):
        if self.degree == 1:
            return (a[0] * b[0],)
        return self.from_poly(self.to_poly(a) * self.to_poly(b))

    def is_rational(self, a):
        """
        Whether an element lies in `Q` (all non-constant coordinates zero).
        """
        return all(x == 0 for x in a[1:])


###############################################################################
# Newform orbits
###############################################################################


class NewformOrbit(FileBase):

    """
    Galois orbit of weight 2 newforms at a square-free level.

    Parameters
    ----------
    level : `int`
        Level `M`.
    label : `str`
        Orbit label at the level (e.g. `"a"`).
    dim : `int`
        Degree `r` of the Hecke field.
    hecke_minpoly : `Iter[int]`
        Monic integer minimal polynomial, lowest degree first.
    al_signs : `dict(int->int)`
        Atkin-Lehner eigenvalue for every prime `q | M`.
    coeffs : `Iter[Iter[Fraction]]`
        `coeffs[n-1]` is `a_n` in the power basis, `n = 1, ..., depth`.
    source : `str`
        Coefficient kind the record was read from (`"an"` or `"ap"`).
    """

    SER_KEYS = FileBase.SER_KEYS + (
        "level", "label", "dim", "hecke_minpoly", "al_signs", "depth"
    )

    def __init__(
        self, level, label, dim, hecke_minpoly, al_signs, coeffs, source="an"
    ):
        self.level = int(level)
        self.label = str(label)
        self.dim = int(dim)
        self.field = HeckeField(hecke_minpoly)
        self.hecke_minpoly = self.field.minpoly
        self.al_signs = {int(q): int(s) for q, s in sorted(al_signs.items())}
        self.coeffs = tuple(tuple(Fraction(c) for c in v) for v in coeffs)
        self.source = source

    @property
    def key(self):
        return (self.level, self.label)

    @property
    def name(self):
        """
        Printing name, e.g. `"183b"` (or `"183:b"` for multi-letter labels
        ending in digits).
        """
        if self.label.isalpha():
            return "{:d}{:s}".format(self.level, self.label)
        return "{:d}:{:s}".format(self.level, self.label)

    @property
    def depth(self):
        return len(self.coeffs)

    def __repr__(self):
        return "<NewformOrbit {:s} dim={:d} depth={:d}>".format(
            self.name, self.dim, self.depth
        )

    def is_star(self):
        """
        Whether all Atkin-Lehner signs are `+1` (the orbit lies in
        `New*_M`).
        """
        return all(s == 1 for s in self.al_signs.values())

    def require_depth(self, n):
        """
        Raises
        ------
        InsufficientDepthError
            If `a_n` is not known.
        """
        if n > self.depth:
            raise InsufficientDepthError(self.name, self.depth, n)

    def a(self, n):
        """
        Coefficient `a_n` as Hecke-field element.
        """
        if n < 1:
            raise ValueError("invalid index ({:d})".format(n))
        self.require_depth(n)
        return self.coeffs[n - 1]

    def a_rational(self, n):
        """
        Coefficient `a_n` of a dimension-1 orbit as `int` or `Fraction`.
        """
        if self.dim != 1:
            raise ValueError("orbit not rational ({:s})".format(self.name))
        c = self.a(n)[0]
        return c.numerator if c.denominator == 1 else c

    def component(self, j, n_max):
        """
        Coefficients of the `j`-th power-basis component series,
        `[c_0, c_1, ..., c_{n_max}]` with `c_0 = 0`.
        """
        self.require_depth(n_max)
        return [Fraction(0)] + [self.coeffs[n - 1][j]
                               for n in range(1, n_max + 1)]


###############################################################################
# Elliptic curves
###############################################################################


class EllipticCurveRec(FileBase):

    """
    Elliptic curve isogeny class represented by its optimal curve.

    Parameters
    ----------
    label : `str`
        Class label, e.g. `"43a"` (a trailing curve number is accepted
        and dropped).
    conductor : `int`
        Conductor `M`.
    ainvs : `Iter[int]`
        Minimal Weierstrass model `[a1, a2, a3, a4, a6]`.
    rank : `int`
        Mordell-Weil rank.
    modular_degree : `int`
        Degree `D` of the optimal parametrization `X_0(M) -> E`.

    Raises
    ------
    ValidationError
        If the label does not parse or a curve invariant is violated.
    """

    SER_KEYS = FileBase.SER_KEYS + (
        "label", "conductor", "ainvs", "rank", "modular_degree"
    )
    LABEL_REGEX = r"(\d+)([a-z]+)(\d*)"

    def __init__(self, label, conductor, ainvs, rank, modular_degree):
        try:
            num, cls, _ = misc.extract(
                label, self.LABEL_REGEX, group=(1, 2, 3)
            )
        except KeyError:
            raise ValidationError(label, "label format")
        self.label = num + cls
        self.iso_letter = cls
        self.conductor = int(conductor)
        self.ainvs = tuple(int(a) for a in ainvs)
        self.rank = int(rank)
        self.modular_degree = int(modular_degree)
        if len(self.ainvs) != 5:
            raise ValidationError(self.label, "five Weierstrass coefficients")
        if int(num) != self.conductor:
            raise ValidationError(self.label, "conductor matches label",
                                  "{:d}".format(self.conductor))
        self.validate()

    def __repr__(self):
        return "<EllipticCurveRec {:s} {:s}>".format(
            self.label, str(list(self.ainvs))
        )

    def __eq__(self, other):
        return (
            isinstance(other, EllipticCurveRec)
            and self.attributes() == other.attributes()
        )

    def __hash__(self):
        return hash((self.label, self.ainvs))

    # ++++ Invariants ++++

    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = a1 * a3 + 2 * a4
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    def c4(self):
        b2, b4, _, _ = self.b_invariants()
        return b2 * b2 - 24 * b4

    def discriminant(self):
        b2, b4, b6, b8 = self.b_invariants()
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def j_invariant(self):
        """
        j-invariant `c4^3 / Delta` as exact rational.
        """
        return Fraction(self.c4()**3, self.discriminant())

    def validate(self):
        """
        Checks the curve invariants.

        Raises
        ------
        ValidationError
            On zero discriminant, conductor primes not dividing the
            discriminant, negative rank or nonpositive modular degree.
        """
        disc = self.discriminant()
        if disc == 0:
            raise ValidationError(self.label, "nonzero discriminant")
        bad = set(factorint(abs(disc)).keys())
        for q in factorint(self.conductor).keys():
            if q not in bad:
                raise ValidationError(
                    self.label, "conductor primes divide discriminant",
                    "{:d} does not divide {:d}".format(int(q), disc)
                )
        if self.rank < 0:
            raise ValidationError(self.label, "non-negative rank")
        if self.modular_degree < 1:
            raise ValidationError(self.label, "positive modular degree")


def hecke_expand(field, level, ap, bound):
    """
    Fills `a_n` for `n <= bound` from prime coefficients.

    Uses `a_mn = a_m a_n` for coprime `m, n`, the recursion
    `a_{p^k} = a_p a_{p^(k-1)} - p a_{p^(k-2)}` for `p` not dividing the
    level and `a_{p^k} = a_p^k` otherwise.

    Parameters
    ----------
    field : `HeckeField`
        Coefficient field.
    level : `int`
        Level of the newform.
    ap : `dict(int->tuple(Fraction))`
        `a_p` for every prime `p <= bound`.
    bound : `int`
        Largest index.

    Returns
    -------
    coeffs : `list(tuple(Fraction))`
        `a_1, ..., a_bound`.
    """
    a = {1: field.one()}
    for n in range(2, bound + 1):
        fac = factorint(n)
        p, k = min((int(q), int(e)) for q, e in fac.items())
        if len(fac) > 1:
            q = p**k
            a[n] = field.mul(a[q], a[n // q])
        elif k == 1:
            a[n] = tuple(Fraction(c) for c in ap[p])
        elif level % p == 0:
            a[n] = field.mul(a[p], a[n // p])
        else:
            a[n] = field.sub(
                field.mul(a[p], a[n // p]),
                field.scale(a[n // (p * p)], p)
            )
    return [a[n] for n in range(1, bound + 1)]
