"""
Invariant newform spaces and the isogeny decomposition of `J_0^*(N)`.

For square-free `N`, the Jacobian of `X_0^*(N)` is isogenous to the
product of the abelian varieties `A_f` over the Galois orbits `f` of
newforms at levels `M | N` whose Atkin-Lehner signs are all `+1`.
"""

import functools

from libxostar import env
from libxostar.core.data.records import HeckeField, NewformOrbit, hecke_expand
from libxostar.core.errors import ValidationError
from libxostar.core.io.base import FileBase
from libxostar.tools.math import ntheory
from libxostar.tools.modular import frobenius

LOGGER = env.logging.get_logger("libxostar.tools.modular.star")

# Good primes compared when linking a curve to its newform orbit
LINK_PRIME_BOUND = 50


###############################################################################
# Star space
###############################################################################


class StarFactor(FileBase):

    """
    One simple factor `A_f` of `J_0^*(N)`.

    Parameters
    ----------
    orbit : `NewformOrbit`
        Invariant orbit at level `M`.
    lifts : `tuple(int)`
        Divisors `d | N/M` through which the orbit lifts to level `N`.
    """

    SER_KEYS = FileBase.SER_KEYS + ("name", "level", "dim", "lifts")

    def __init__(self, orbit, lifts):
        self.orbit = orbit
        self.lifts = tuple(lifts)

    @property
    def name(self):
        return self.orbit.name

    @property
    def level(self):
        return self.orbit.level

    @property
    def dim(self):
        return self.orbit.dim

    def __repr__(self):
        return "<StarFactor {:s} dim={:d}>".format(self.name, self.dim)


def factor_sort_key(factor):
    """
    Splitting order: elliptic factors first, then higher-dimensional ones,
    each by ascending level and then label.
    """
    return (factor.dim > 1, factor.level, len(factor.orbit.label),
            factor.orbit.label)


class StarSpace(FileBase):

    """
    Invariant newform decomposition of `J_0^*(N)`.

    Parameters
    ----------
    level : `SquareFreeLevel`
        Level `N`.
    factors : `Iter[StarFactor]`
        Simple factors, stored in splitting order.
    """

    SER_KEYS = FileBase.SER_KEYS + ("level", "g_star", "factors")

    def __init__(self, level, factors):
        self.level = ntheory.assume_level(level)
        self.factors = tuple(sorted(factors, key=factor_sort_key))
        for f in self.factors:
            if not f.orbit.is_star():
                raise ValidationError(f.name, "all Atkin-Lehner signs +1")

    @property
    def g_star(self):
        return sum(f.dim for f in self.factors)

    @property
    def dims(self):
        return tuple(f.dim for f in self.factors)

    def __len__(self):
        return len(self.factors)

    def __repr__(self):
        return "<StarSpace N={:d} g*={:d} factors={:s}>".format(
            self.level.N, self.g_star,
            str([f.name for f in self.factors])
        )

    def min_depth(self):
        """
        Smallest coefficient depth over all orbits (`None` if empty).
        """
        if not self.factors:
            return None
        return min(f.orbit.depth for f in self.factors)


def star_space(N, newform_db):
    """
    Collects the invariant orbits at every level `M | N`.

    Parameters
    ----------
    N : `SquareFreeLevel` or `int`
        Level.
    newform_db : `NewformDB`
        Orbit table.

    Returns
    -------
    space : `StarSpace`
        Decomposition with `g*` the sum of orbit dimensions.

    Raises
    ------
    MissingLevelError
        If the table does not cover a divisor level.

    Examples
    --------
    With the full table, `star_space(370, db).dims == (1, 1, 1, 1)`.
    """
    level = ntheory.assume_level(N)
    factors = []
    for M in ntheory.divisors_coprime_split(level):
        # No weight 2 cusp forms at level 1
        if M == 1:
            continue
        lifts = ntheory.divisors_coprime_split(level.N // M)
        for orbit in newform_db.orbits_at(M):
            if orbit.is_star():
                factors.append(StarFactor(orbit, lifts))
    space = StarSpace(level, factors)
    LOGGER.debug("star space {:s}".format(repr(space)))
    return space


###############################################################################
# Elliptic curves and their newforms
###############################################################################


def curve_al_signs(curve):
    """
    Atkin-Lehner signs of the newform of a curve, `w_q = -a_q` at the
    multiplicative primes `q` of the conductor.

    Raises
    ------
    ValidationError
        If the reduction at a conductor prime is additive.
    """
    signs = {}
    for q in ntheory.factorint_dict(curve.conductor):
        a_q = frobenius.reduction_ap(curve, q)
        if a_q == 0:
            raise ValidationError(curve.label, "multiplicative reduction",
                                  "q={:d}".format(q))
        signs[q] = -a_q
    return signs


def attached_orbit(curve, newform_db, p_bound=LINK_PRIME_BOUND):
    """
    Finds the dimension-1 orbit of a curve by `a_p` agreement.

    Parameters
    ----------
    curve : `EllipticCurveRec`
        Curve.
    newform_db : `NewformDB`
        Orbit table covering the conductor.
    p_bound : `int`
        Compares the good primes `p <= p_bound` known to the orbit.

    Returns
    -------
    orbit : `NewformOrbit` or `None`
        Matching orbit.

    Raises
    ------
    ValidationError
        If several orbits match, or if the matching orbit's Atkin-Lehner
        signs disagree with the signs read off the curve.
    """
    M = curve.conductor
    matches = []
    for orbit in newform_db.orbits_at(M):
        if orbit.dim != 1:
            continue
        primes = [p for p in ntheory.primes_upto(min(p_bound, orbit.depth))
                  if M % p]
        if all(orbit.a_rational(p) == frobenius.elliptic_ap(curve, p).a_p
               for p in primes):
            matches.append(orbit)
    if len(matches) > 1:
        raise ValidationError(curve.label, "unique attached orbit",
                              str([o.name for o in matches]))
    if not matches:
        return None
    orbit = matches[0]
    if orbit.al_signs != curve_al_signs(curve):
        raise ValidationError(
            curve.label, "Atkin-Lehner signs agree with orbit",
            "{:s}: {:s}".format(orbit.name, str(orbit.al_signs))
        )
    return orbit


def candidate_quotients(N, elliptic_db, newform_db=None):
    """
    Elliptic curves `E` of conductor `M | N` whose newform is invariant
    under all Atkin-Lehner involutions of level `M`.

    Parameters
    ----------
    N : `SquareFreeLevel` or `int`
        Level.
    elliptic_db : `EllipticDB`
        Curve table.
    newform_db : `NewformDB` or `None`
        If given and covering `M`, the attached orbit is located and its
        signs are cross-checked.

    Returns
    -------
    curves : `list(EllipticCurveRec)`
        One curve per isogeny class, sorted by conductor and label.
    """
    level = ntheory.assume_level(N)
    res = []
    for M in ntheory.divisors_coprime_split(level):
        for curve in elliptic_db.by_conductor(M):
            signs = curve_al_signs(curve)
            if newform_db is not None and newform_db.covers(M):
                if attached_orbit(curve, newform_db) is None:
                    LOGGER.warning("no newform orbit found for {:s}"
                                   .format(curve.label))
            if all(s == 1 for s in signs.values()):
                res.append(curve)
    return sorted(res, key=lambda c: (c.conductor, len(c.iso_letter),
                                      c.iso_letter))


def derive_orbits(elliptic_db, p_max=LINK_PRIME_BOUND):
    """
    Builds dimension-1 orbit records from elliptic curves by point
    counting.

    Parameters
    ----------
    elliptic_db : `EllipticDB`
        Curve table.
    p_max : `int`
        Largest prime whose `a_p` is computed.

    Returns
    -------
    orbits : `list(NewformOrbit)`
        One orbit per curve, labeled by the isogeny class letter, with
        `a_n` up to the prime following `p_max`, minus one.
    """
    field = HeckeField((0, 1))
    primes = ntheory.primes_upto(p_max)
    bound = ntheory.next_prime(p_max) - 1
    orbits = []
    for curve in elliptic_db:
        signs = curve_al_signs(curve)
        ap = {p: (frobenius.reduction_ap(curve, p),) for p in primes}
        coeffs = hecke_expand(field, curve.conductor, ap, bound)
        orbits.append(NewformOrbit(
            curve.conductor, curve.iso_letter, 1, (0, 1), signs, coeffs,
            source="ap"
        ))
        LOGGER.debug("derived orbit {:s}".format(orbits[-1].name))
    return orbits


@functools.lru_cache(maxsize=16384)
def star_genus(N, newform_db):
    """
    `g*_N` (cached per table).
    """
    return star_space(N, newform_db).g_star
