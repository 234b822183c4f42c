"""
Canonical models of nonhyperelliptic X_0^*(N).

A basis of regular differentials is given by q-expansions of invariant
cusp forms. Homogeneous relations of degree `i` among them (the graded
pieces `L_i` of the canonical ideal) are kernels of monomial evaluation
matrices. Involutions act on the simple factors of the Jacobian by signs,
so an involution corresponds to a factor-level sign pattern stabilizing
every piece.
"""

import itertools
import math

from libxostar import env
from libxostar.core.errors import (
    DimensionMismatchError, InvariantViolation, PrecisionError,
    RelationNotFoundError
)
from libxostar.core.io.base import FileBase
from libxostar.tools.math import linalg, ntheory, poly
from libxostar.tools.math.series import PowerSeries

LOGGER = env.logging.get_logger("libxostar.tools.modular.canonical")


###############################################################################
# Differential basis
###############################################################################


class DifferentialBasis(FileBase):

    """
    Integral basis of weight 2 invariant cusp forms of level `N`.

    Parameters
    ----------
    level : `SquareFreeLevel`
        Level `N`.
    factors : `tuple(StarFactor)`
        Simple factors in splitting order.
    series : `tuple(PowerSeries)`
        Cusp forms `c_1 q + c_2 q^2 + ...` with integer coefficients,
        contiguous per factor.
    factor_index : `tuple(int)`
        Factor ordinal of every basis position.
    """

    SER_KEYS = FileBase.SER_KEYS + ("level", "prec", "blocks", "leading")

    def __init__(self, level, factors, series, factor_index):
        self.level = ntheory.assume_level(level)
        self.factors = tuple(factors)
        self.series = tuple(series)
        self.factor_index = tuple(factor_index)
        if len(self.series) != len(self.factor_index):
            raise ValueError("factor index length mismatch")

    @property
    def g(self):
        return len(self.series)

    @property
    def prec(self):
        return min(s.prec for s in self.series) if self.series else 0

    @property
    def blocks(self):
        """
        Basis positions per factor.
        """
        res = [[] for _ in self.factors]
        for pos, fi in enumerate(self.factor_index):
            res[fi].append(pos)
        return [tuple(b) for b in res]

    @property
    def leading(self):
        """
        First coefficients `[c_1, ..., c_5]` of every series.
        """
        return [list(s.coeffs[1:6]) for s in self.series]

    def shifted(self, prec=None):
        """
        Series divided by `q`, truncated to `prec` coefficients.
        """
        res = [s.shift(1) for s in self.series]
        if prec is not None:
            res = [s.truncate(prec) for s in res]
        return res

    def provenance(self):
        """
        Text lines naming the factor behind every basis position.
        """
        lines = []
        for pos, fi in enumerate(self.factor_index):
            f = self.factors[fi]
            lines.append("w{:d}: {:s} (dim {:d}, lifts {:s})".format(
                pos + 1, f.name, f.dim,
                ",".join(str(d) for d in f.lifts)
            ))
        return lines


def lifted_component(orbit, lifts, j, prec):
    """
    `sum_{d} d f_j(q^d)` for the `j`-th power-basis component `f_j` of an
    orbit, with `prec` coefficients.
    """
    f = PowerSeries(orbit.component(j, prec - 1))
    total = PowerSeries([0] * prec)
    for d in lifts:
        total = total + f.substitute_power(d).truncate(prec).scale(d)
    return total


def _integral_block(block_series):
    rows = []
    for s in block_series:
        den = 1
        for c in s.coeffs:
            if not isinstance(c, int):
                den = den * c.denominator // math.gcd(den, c.denominator)
        rows.append([int(c * den) for c in s.coeffs[1:]])
    return rows


def build_basis(N, space, prec):
    """
    Builds the saturated differential basis.

    Elliptic factors contribute their lifted newform; a factor of
    dimension `r` contributes the lifted power-basis component series.
    Each factor block is replaced by the Hermite basis of its saturated
    coefficient lattice.

    Parameters
    ----------
    N : `SquareFreeLevel` or `int`
        Level.
    space : `StarSpace`
        Decomposition of `J_0^*(N)`.
    prec : `int`
        Number of coefficients `q^0, ..., q^(prec-1)`.

    Returns
    -------
    basis : `DifferentialBasis`
        Basis of `g*` integral series.

    Raises
    ------
    InsufficientDepthError
        If some orbit lacks `a_n` for `n < prec`.
    InvariantViolation
        If a block is linearly dependent at this precision.
    """
    level = ntheory.assume_level(N)
    series, index = [], []
    for fi, factor in enumerate(space.factors):
        orbit = factor.orbit
        orbit.require_depth(prec - 1)
        block = [lifted_component(orbit, factor.lifts, j, prec)
                 for j in range(orbit.dim)]
        if orbit.dim == 1:
            hnf = _integral_block(block)
        else:
            hnf = linalg.hnf_row_basis(_integral_block(block))
            if len(hnf) != orbit.dim:
                raise InvariantViolation(
                    "dependent block {:s} at precision {:d}"
                    .format(factor.name, prec)
                )
        for row in hnf:
            series.append(PowerSeries([0] + list(row)))
            index.append(fi)
    return DifferentialBasis(level, space.factors, series, index)


###############################################################################
# Graded pieces
###############################################################################


def expected_dim(g, i):
    """
    Dimension of `L_i` for a nonhyperelliptic canonical curve of genus
    `g >= 3`: `C(g+i-1, i) - (2i-1)(g-1)` for `i >= 2`.

    Examples
    --------
    >>> [expected_dim(g, 2) for g in range(3, 8)]
    [0, 1, 3, 6, 10]
    """
    if i < 2:
        return 0
    return math.comb(g + i - 1, i) - (2 * i - 1) * (g - 1)


def vanishing_bound(g, i):
    """
    `i (2g - 2)`: a nonzero section of `K^i` vanishes to at most this
    order at a point.
    """
    return i * (2 * g - 2)


class MonomialEvaluator(object):

    """
    Products of the shifted basis series, cached by exponent vector.
    """

    def __init__(self, shifted):
        self.shifted = list(shifted)
        self.g = len(self.shifted)
        self.prec = min(s.prec for s in self.shifted)
        self._cache = {}

    def __call__(self, exp):
        exp = tuple(exp)
        if exp in self._cache:
            return self._cache[exp]
        if sum(exp) == 0:
            res = PowerSeries([1], prec=self.prec)
        else:
            j = max(k for k, e in enumerate(exp) if e)
            lower = list(exp)
            lower[j] -= 1
            res = self(lower) * self.shifted[j]
        self._cache[exp] = res
        return res

    def evaluate(self, exps, vec):
        """
        Series of `sum vec[k] * monomial(exps[k])`.
        """
        acc = [0] * self.prec
        for exp, c in zip(exps, vec):
            if c:
                for n, x in enumerate(self(exp).coeffs):
                    if x:
                        acc[n] += c * x
        return PowerSeries(acc)


class GradedPiece(FileBase):

    """
    Degree `i` part `L_i` of the canonical ideal.

    Parameters
    ----------
    degree : `int`
        Degree `i`.
    g : `int`
        Number of variables.
    exps : `list(tuple(int))`
        Monomial exponent vectors in graded lexicographic order.
    generators : `list(tuple(int))`
        Primitive integer coefficient vectors over `exps`.
    """

    SER_KEYS = FileBase.SER_KEYS + (
        "degree", "dim", "expected_dim", "polynomials"
    )

    def __init__(self, degree, g, exps, generators):
        self.degree = degree
        self.g = g
        self.exps = list(exps)
        self.generators = [tuple(v) for v in generators]

    @property
    def dim(self):
        return len(self.generators)

    @property
    def expected_dim(self):
        return expected_dim(self.g, self.degree)

    def polys(self, gens=None):
        """
        Generators as `sympy.Poly` in the canonical coordinates.
        """
        if gens is None:
            gens = poly.coordinate_symbols(self.g)
        return [
            poly.multi_poly(dict(zip(self.exps, v)), gens)
            for v in self.generators
        ]

    @property
    def polynomials(self):
        names = poly.variable_names(self.g)
        return [poly.str_poly(p, names) for p in self.polys()]

    def __repr__(self):
        return "<GradedPiece i={:d} dim={:d}>".format(self.degree, self.dim)

    def apply_signs(self, signs):
        """
        Generator vectors of `Q(s_1 x_1, ..., s_g x_g)`.
        """
        res = []
        for v in self.generators:
            res.append(tuple(
                c * _monomial_sign(exp, signs)
                for exp, c in zip(self.exps, v)
            ))
        return res


def _monomial_sign(exp, signs):
    s = 1
    for e, sg in zip(exp, signs):
        if sg < 0 and e % 2:
            s = -s
    return s


def graded_piece(basis, i, margin=8, verify_factor=2):
    """
    Computes `L_i` as the kernel of the monomial evaluation matrix.

    Parameters
    ----------
    basis : `DifferentialBasis`
        Basis with `g >= 3` series.
    i : `int`
        Degree.
    margin : `int`
        Extra q-orders beyond the vanishing bound used in the matrix.
    verify_factor : `int`
        Relations are verified through `verify_factor` times the vanishing
        window, or through the available precision if that is shorter.

    Returns
    -------
    piece : `GradedPiece`
        Piece with primitive integer generators.

    Raises
    ------
    PrecisionError
        If the basis is too short for the window or a relation fails the
        verification.
    DimensionMismatchError
        If the dimension differs from the nonhyperelliptic value.
    """
    g = basis.g
    window = vanishing_bound(g, i) + 1
    rows = window + margin
    avail = basis.prec - 1
    if avail < rows:
        raise PrecisionError(
            "basis precision {:d} below window {:d} (i={:d})"
            .format(avail, rows, i)
        )
    verify = min(avail, max(rows, verify_factor * window))
    ev = MonomialEvaluator(basis.shifted(verify))
    exps = poly.monomials(g, i)
    cols = [ev(e).coeffs for e in exps]
    m = linalg.RatMatrix.from_rows(
        [[cols[k][n] for k in range(len(exps))] for n in range(rows)],
        cols=len(exps)
    )
    gens = linalg.kernel_basis(m)
    for v in gens:
        if not ev.evaluate(exps, v).is_zero():
            raise PrecisionError(
                "relation of degree {:d} fails verification to order {:d}"
                .format(i, verify)
            )
    piece = GradedPiece(i, g, exps, gens)
    if piece.dim != piece.expected_dim:
        raise DimensionMismatchError(
            "dim L_{:d} = {:d}, expected {:d} (N={:d}, g={:d})".format(
                i, piece.dim, piece.expected_dim, basis.level.N, g
            )
        )
    LOGGER.debug("N={:d}: dim L_{:d} = {:d}".format(basis.level.N, i,
                                                   piece.dim))
    return piece


def piece_degrees(g):
    """
    Degrees of the pieces computed up front: `(4,)` for `g = 3`, `(2, 3)`
    for `g = 4, 5, 6` and `(2,)` beyond (cubics are added on demand).
    """
    if g == 3:
        return (4,)
    if g <= 6:
        return (2, 3)
    return (2,)


def required_precision(g, degrees, margin=8, verify_factor=2):
    """
    Number of series coefficients needed for the given pieces, including
    verification.
    """
    i = max(degrees)
    window = vanishing_bound(g, i) + 1
    return max(window + margin, verify_factor * window) + 1


###############################################################################
# Stability under sign changes
###############################################################################


def stable_subspace_dim(piece, flip):
    """
    Dimension of the generators invariant under negating coordinates.

    Parameters
    ----------
    piece : `GradedPiece`
        Piece.
    flip : `Iter[int]`
        Zero-based coordinates to negate.

    Returns
    -------
    dim : `int`
        `dim {Q in L_i : Q(..., -x_j, ...) = Q}`, the kernel of the
        odd-part extraction restricted to the piece.
    """
    flip = set(flip)
    if not flip or not piece.generators:
        return piece.dim
    signs = [-1 if j in flip else 1 for j in range(piece.g)]
    odd = []
    for v in piece.generators:
        odd.append([
            c if _monomial_sign(exp, signs) < 0 else 0
            for exp, c in zip(piece.exps, v)
        ])
    # Combinations of generators with vanishing odd part
    m = linalg.RatMatrix.from_rows(odd, cols=len(piece.exps))
    return piece.dim - linalg.rank(m)


def is_piece_stable(piece, signs):
    """
    Whether `Q(s_1 x_1, ..., s_g x_g)` lies in `L_i` for every generator.
    """
    if not piece.generators:
        return True
    stacked = piece.generators + piece.apply_signs(signs)
    return linalg.rank(linalg.RatMatrix.from_rows(stacked)) == piece.dim


###############################################################################
# Sign patterns
###############################################################################


class SignPattern(FileBase):

    """
    Factor-level signs of an involution on the differentials.

    Parameters
    ----------
    epsilons : `tuple(int)`
        `+1` or `-1` per simple factor, oriented so that `+1` marks the
        invariant differentials.
    dims : `tuple(int)`
        Factor dimensions.
    """

    SER_KEYS = FileBase.SER_KEYS + ("epsilons", "fixed_genus")

    def __init__(self, epsilons, dims):
        self.epsilons = tuple(int(e) for e in epsilons)
        self.dims = tuple(dims)
        if len(set(self.epsilons)) < 2:
            raise ValueError("trivial sign pattern ({:s})"
                             .format(str(self.epsilons)))

    @property
    def fixed_genus(self):
        return sum(d for e, d in zip(self.epsilons, self.dims) if e > 0)

    def negated(self):
        return SignPattern([-e for e in self.epsilons], self.dims)

    def fixed_factors(self):
        return [k for k, e in enumerate(self.epsilons) if e > 0]

    def coordinate_signs(self, factor_index):
        return [self.epsilons[fi] for fi in factor_index]

    def flip_coordinates(self, factor_index):
        return [j for j, fi in enumerate(factor_index)
                if self.epsilons[fi] < 0]

    def class_vector(self):
        """
        `GF(2)` vector of the pattern class, normalized to a zero first
        entry.
        """
        ref = self.epsilons[0]
        return tuple(0 if e == ref else 1 for e in self.epsilons)

    def __eq__(self, other):
        return (isinstance(other, SignPattern)
                and self.epsilons == other.epsilons)

    def __hash__(self):
        return hash(self.epsilons)

    def __repr__(self):
        return "<SignPattern {:s} g_u={:d}>".format(
            "".join("+" if e > 0 else "-" for e in self.epsilons),
            self.fixed_genus
        )

    def __str__(self):
        return "".join("+" if e > 0 else "-" for e in self.epsilons)


def pattern_classes(dims):
    """
    Representatives of the `2^(k-1) - 1` nontrivial pattern classes
    `{e, -e}`, with the first factor's sign `+1`.
    """
    k = len(dims)
    res = []
    for tail in itertools.product((1, -1), repeat=k - 1):
        eps = (1,) + tail
        if all(e == 1 for e in eps):
            continue
        res.append(SignPattern(eps, dims))
    return res


def _allowed_fixed_genus(g, g_u):
    # Riemann-Hurwitz: 2g - 2 >= 2 (2 g_u - 2)
    if g_u < 1 or 2 * g - 2 < 2 * (2 * g_u - 2):
        return False
    if g == 3 and g_u == 2:
        return False
    return True


class InvolutionVerdict(FileBase):

    """
    A sign pattern stabilizing every computed piece.

    Parameters
    ----------
    pattern : `SignPattern`
        Oriented pattern (`+1` on the invariant factors).
    bielliptic_factor : `int` or `None`
        Index of the single elliptic factor fixed, if the involution is
        bielliptic.
    resolution : `str`
        How the invariant side was chosen.
    """

    SER_KEYS = FileBase.SER_KEYS + (
        "pattern", "fixed_genus", "bielliptic", "resolution"
    )

    def __init__(self, pattern, bielliptic_factor, resolution):
        self.pattern = pattern
        self.bielliptic_factor = bielliptic_factor
        self.resolution = resolution

    @property
    def fixed_genus(self):
        return self.pattern.fixed_genus

    @property
    def bielliptic(self):
        return self.bielliptic_factor is not None

    def __repr__(self):
        return "<InvolutionVerdict {:s} g_u={:d}{:s}>".format(
            str(self.pattern), self.fixed_genus,
            " bielliptic" if self.bielliptic else ""
        )


def _side_has_genus2_relation(basis, pattern):
    """
    Whether the two invariant differentials of a pattern satisfy a
    relation `c y^2 = P(x)` with `x = w_2/w_1`, `y = dx/w_1`.
    """
    from libxostar.tools.modular import models
    positions = [j for j, fi in enumerate(basis.factor_index)
                 if pattern.epsilons[fi] > 0]
    if len(positions) != 2:
        return False
    w1, w2 = (basis.series[j] for j in positions)
    try:
        models.find_genus2_relation(w1, w2)
    except RelationNotFoundError:
        return False
    return True


def orient_pattern(basis, pattern):
    """
    Chooses the invariant side of a surviving pattern class.

    Returns
    -------
    pattern : `SignPattern`
        Oriented pattern.
    resolution : `str`
        `"riemann-hurwitz"`, `"genus-2 relation"` or `"ambiguous"`.
    """
    g = basis.g
    candidates = [
        p for p in (pattern, pattern.negated())
        if _allowed_fixed_genus(g, p.fixed_genus)
    ]
    if len(candidates) == 1:
        return candidates[0], "riemann-hurwitz"
    if not candidates:
        raise InvariantViolation(
            "no admissible invariant side for {:s} (N={:d})"
            .format(str(pattern), basis.level.N)
        )
    with_relation = [p for p in candidates if p.fixed_genus == 2
                     and _side_has_genus2_relation(basis, p)]
    if len(with_relation) == 1:
        return with_relation[0], "genus-2 relation"
    LOGGER.warning("ambiguous invariant side for {:s} (N={:d})"
                   .format(str(pattern), basis.level.N))
    return candidates[0], "ambiguous"


def detect_involutions(N, basis, pieces, margin=8, verify_factor=2):
    """
    Searches the factor-level sign patterns stabilizing the canonical
    ideal.

    Parameters
    ----------
    N : `SquareFreeLevel` or `int`
        Level.
    basis : `DifferentialBasis`
        Basis with `g >= 3`.
    pieces : `dict(int->GradedPiece)`
        Computed pieces by degree; for `g >= 7` the cubic piece is added
        here when a pattern survives the quadrics.
    margin, verify_factor : `int`
        Precision parameters for pieces computed on demand.

    Returns
    -------
    verdicts : `list(InvolutionVerdict)`
        Surviving patterns, oriented, in enumeration order.

    Raises
    ------
    DimensionMismatchError
        If the pieces indicate a hyperelliptic curve.
    """
    level = ntheory.assume_level(N)
    g = basis.g
    if g < 3:
        raise ValueError("canonical route requires g >= 3 ({:d})".format(g))
    for piece in pieces.values():
        if piece.dim != piece.expected_dim:
            raise DimensionMismatchError(
                "hyperelliptic input (N={:d}, dim L_{:d} = {:d})"
                .format(level.N, piece.degree, piece.dim)
            )
    dims = tuple(f.dim for f in basis.factors)
    if len(dims) < 2:
        return []
    survivors = []
    for pattern in pattern_classes(dims):
        signs = pattern.coordinate_signs(basis.factor_index)
        if all(is_piece_stable(pc, signs) for pc in pieces.values()):
            survivors.append(pattern)
    if survivors and g >= 7 and 3 not in pieces:
        pieces[3] = graded_piece(basis, 3, margin=margin,
                                 verify_factor=verify_factor)
        survivors = [
            p for p in survivors
            if is_piece_stable(pieces[3],
                               p.coordinate_signs(basis.factor_index))
        ]
    verdicts = []
    for pattern in survivors:
        oriented, resolution = orient_pattern(basis, pattern)
        fixed = oriented.fixed_factors()
        bielliptic = None
        if oriented.fixed_genus == 1 and len(fixed) == 1:
            bielliptic = fixed[0]
        verdicts.append(InvolutionVerdict(oriented, bielliptic, resolution))
        LOGGER.info("N={:d}: involution {:s}".format(level.N,
                                                     repr(verdicts[-1])))
    if g >= 6 and sum(v.bielliptic for v in verdicts) > 1:
        raise InvariantViolation(
            "several bielliptic involutions at genus {:d} (N={:d})"
            .format(g, level.N)
        )
    return verdicts


def aut_group_order(N, survivors):
    """
    Order of the automorphism group generated by the surviving
    involutions, `2^m` with `m` the `GF(2)` rank of their pattern classes.

    Parameters
    ----------
    N : `SquareFreeLevel` or `int`
        Level (for logging).
    survivors : `Iter[InvolutionVerdict or SignPattern]`
        Surviving patterns.

    Returns
    -------
    order : `int`
        Power of two.
    """
    vecs = []
    for s in survivors:
        pattern = s.pattern if isinstance(s, InvolutionVerdict) else s
        vecs.append(int("".join(str(b) for b in pattern.class_vector()), 2))
    # Gaussian elimination over GF(2) on bit masks
    basis = []
    for v in vecs:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    order = 2**len(basis)
    LOGGER.debug("N={:d}: |Aut| = {:d}".format(int(N), order))
    return order
