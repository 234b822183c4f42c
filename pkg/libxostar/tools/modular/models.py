"""
Explicit equations: genus 2 models of `X_0^*(N)`, equations of quotient
curves and j-invariants of genus one quotients.
"""

from fractions import Fraction

import sympy

from libxostar import env
from libxostar.core.errors import (
    InvariantViolation, MatchError, PrecisionError, RelationNotFoundError
)
from libxostar.core.io.base import FileBase
from libxostar.tools.math import finite, linalg, ntheory, poly
from libxostar.tools.math.series import series_ratio

LOGGER = env.logging.get_logger("libxostar.tools.modular.models")

# A nonzero function of degree <= 12 vanishes to order <= 12 at the cusp
GENUS2_WINDOW = 13
GENUS2_MARGIN = 8
GENUS2_PRECISION = 64

_X = sympy.Symbol("x")


###############################################################################
# Genus 2 models
###############################################################################


class HyperellipticModel(FileBase):

    """
    Model `c y^2 = P(x)` of a genus 2 curve.

    Parameters
    ----------
    level : `SquareFreeLevel` or `int`
        Level `N` of the curve (or of the covering curve for quotients).
    coeffs : `Iter[int]`
        `P`, lowest degree first, degree 5 or 6.
    scale : `int`
        Coefficient `c` of `y^2`.
    provenance : `str`
        Functions used for `x` and `y`.

    Raises
    ------
    ValueError
        If `P` has wrong degree or a repeated factor.
    """

    SER_KEYS = FileBase.SER_KEYS + (
        "level", "scale", "coeffs", "equation", "provenance"
    )

    def __init__(self, level, coeffs, scale, provenance=""):
        self.level = ntheory.assume_level(level)
        self.coeffs = tuple(coeffs)
        self.scale = scale
        self.provenance = provenance
        if self.degree not in (5, 6):
            raise ValueError("invalid genus 2 degree ({:d})"
                             .format(self.degree))
        if not poly.is_squarefree(self.poly()):
            raise ValueError("repeated factor in genus 2 model ({:s})"
                             .format(self.equation))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def poly(self):
        return poly.uni_poly(self.coeffs, _X)

    @property
    def equation(self):
        lhs = "y^2" if self.scale == 1 else "{:s}*y^2".format(str(self.scale))
        return "{:s} = {:s}".format(lhs, poly.str_poly(self.poly()))

    def __repr__(self):
        return "<HyperellipticModel N={:d}: {:s}>".format(
            self.level.N, self.equation
        )

    def is_even(self):
        """
        Whether `P(x) = R(x^2)` with `deg P = 6`.
        """
        return self.degree == 6 and not any(self.coeffs[1::2])

    def count_points(self, p):
        """
        Number of points over `F_p` of the smooth model.
        """
        return finite.count_hyperelliptic_points(
            list(self.coeffs), self.scale, p
        )


def find_genus2_relation(w1, w2, y_scale=1, margin=GENUS2_MARGIN):
    """
    Finds `c y^2 = P(x)` for `x = w2 / w1`, `y = y_scale * (q dx/dq) / w1`.

    Parameters
    ----------
    w1, w2 : `PowerSeries`
        Cusp forms with `ord(w1) <= ord(w2)`.
    y_scale : `int`
        Factor applied to `y`.
    margin : `int`
        Rows beyond the vanishing window used in the kernel computation.

    Returns
    -------
    scale : `int`
        Positive coefficient `c`.
    coeffs : `list(int)`
        `P`, lowest degree first, squarefree of degree 5 or 6.

    Raises
    ------
    PrecisionError
        If the series are too short or the relation fails on the
        remaining coefficients.
    RelationNotFoundError
        If there is no unique relation of this shape.
    """
    x = series_ratio(w2, w1)
    y = series_ratio(x.theta(), w1).scale(y_scale)
    prec = min(x.prec, y.prec)
    rows = GENUS2_WINDOW + margin
    if prec < rows:
        raise PrecisionError("series precision {:d} below window {:d}"
                             .format(prec, rows))
    x, y = x.truncate(prec), y.truncate(prec)
    cols = [(y * y).coeffs]
    xk = x ** 0
    for _ in range(7):
        cols.append(xk.coeffs)
        xk = xk * x
    m = linalg.RatMatrix.from_rows(
        [[c[n] for c in cols] for n in range(rows)], cols=len(cols)
    )
    kernel = linalg.kernel_basis(m)
    if len(kernel) != 1 or kernel[0][0] == 0:
        raise RelationNotFoundError(
            "no unique genus 2 relation ({:d} candidates)".format(len(kernel))
        )
    vec = kernel[0]
    for n in range(rows, prec):
        if sum(v * c[n] for v, c in zip(vec, cols)):
            raise PrecisionError(
                "genus 2 relation fails at order {:d}".format(n)
            )
    scale = vec[0]
    coeffs = [-v for v in vec[1:]]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) - 1 not in (5, 6):
        raise RelationNotFoundError("relation of degree {:d}"
                                    .format(len(coeffs) - 1))
    if not poly.is_squarefree(poly.uni_poly(coeffs, _X)):
        raise RelationNotFoundError("relation with repeated factor")
    return scale, coeffs


def genus2_model(N, space, prec=GENUS2_PRECISION):
    """
    Genus 2 model of `X_0^*(N)` from ratios of invariant cusp forms.

    With two elliptic factors, let `f` be the form of the larger level and
    `h` the lifted form of the smaller one. For odd `N` the model uses
    `x = h / f`, `y = q dx/dq / f`; for even `N` it uses `x = f / h`,
    `y = 2 q dx/dq / h`. A simple two-dimensional factor uses the
    Hermite basis `w1, w2` with `x = w2 / w1`, `y = q dx/dq / w1`.

    Parameters
    ----------
    N : `SquareFreeLevel` or `int`
        Level with `g* = 2`.
    space : `StarSpace`
        Decomposition of `J_0^*(N)`.
    prec : `int`
        Series precision, capped by the available coefficient depth.

    Returns
    -------
    model : `HyperellipticModel`
        Model with primitive integer coefficients.

    Raises
    ------
    ValueError
        If `g*` is not 2.
    RelationNotFoundError, PrecisionError
        If no relation is found at this precision.
    """
    from libxostar.tools.modular import canonical
    level = ntheory.assume_level(N)
    if space.g_star != 2:
        raise ValueError("genus 2 route requires g* = 2 ({:d})"
                         .format(space.g_star))
    prec = min(prec, space.min_depth() + 1)
    basis = canonical.build_basis(level, space, prec)
    names = [f.name for f in space.factors]
    if len(space.factors) == 2:
        low, high = basis.series
        if level.N % 2:
            w1, w2, y_scale = high, low, 1
            provenance = "x = {1:s}/{0:s}, y = dx/{0:s}".format(*names[::-1])
        else:
            w1, w2, y_scale = low, high, 2
            provenance = "x = {1:s}/{0:s}, y = 2 dx/{0:s}".format(*names)
    else:
        w1, w2 = basis.series
        y_scale = 1
        provenance = "x = w2/w1, y = dx/w1 ({:s})".format(names[0])
    scale, coeffs = find_genus2_relation(w1, w2, y_scale=y_scale)
    model = HyperellipticModel(level, coeffs, scale, provenance)
    LOGGER.info("N={:d}: {:s}".format(level.N, model.equation))
    return model


def quotient_genus2_model(basis, pattern):
    """
    Genus 2 model of the quotient by a sign pattern fixing two
    coordinates, with `x = w2 / w1`, `y = q dx/dq / w1`.

    Raises
    ------
    ValueError
        If the invariant side does not have dimension 2.
    RelationNotFoundError
        If the invariant differentials satisfy no genus 2 relation.
    """
    positions = [j for j, fi in enumerate(basis.factor_index)
                 if pattern.epsilons[fi] > 0]
    if len(positions) != 2:
        raise ValueError("invariant side of dimension {:d} (expected 2)"
                         .format(len(positions)))
    w1, w2 = (basis.series[j] for j in positions)
    scale, coeffs = find_genus2_relation(w1, w2)
    names = poly.variable_names(basis.g)
    provenance = "x = w{:d}/w{:d}, y = dx/w{:d} ({:s}, {:s})".format(
        positions[1] + 1, positions[0] + 1, positions[0] + 1,
        names[positions[0]], names[positions[1]]
    )
    return HyperellipticModel(basis.level, coeffs, scale, provenance)


###############################################################################
# Genus one quotients
###############################################################################


class QuarticModel(FileBase):

    """
    Genus one curve `w^2 = q(y)` with `deg q` 3 or 4.

    Parameters
    ----------
    coeffs : `Iter[int or Fraction]`
        `q`, lowest degree first.
    origin : `str`
        Construction of the model.
    """

    SER_KEYS = FileBase.SER_KEYS + ("equation", "origin")

    def __init__(self, coeffs, origin=""):
        coeffs = [Fraction(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) - 1 not in (3, 4):
            raise ValueError("invalid quartic degree ({:d})"
                             .format(len(coeffs) - 1))
        self.coeffs = tuple(
            c.numerator if c.denominator == 1 else c for c in coeffs
        )
        self.origin = origin

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def equation(self):
        return "w^2 = {:s}".format(poly.str_poly(
            poly.uni_poly(self.coeffs, sympy.Symbol("y"))
        ))

    def __repr__(self):
        return "<QuarticModel {:s}>".format(self.equation)

    def invariants(self):
        """
        Invariants `(I, J)` of the binary quartic.
        """
        e, d, c, b, a = (list(self.coeffs) + [0])[:5]
        I = 12 * a * e - 3 * b * d + c * c
        J = (72 * a * c * e + 9 * b * c * d - 27 * a * d * d
             - 27 * b * b * e - 2 * c**3)
        return I, J


class EllipticInvariant(FileBase):

    """
    j-invariant of a genus one curve with an optional class label.
    """

    SER_KEYS = FileBase.SER_KEYS + ("j", "label")

    def __init__(self, j, label=None):
        self.j = Fraction(j)
        self.label = label

    def __repr__(self):
        return "<EllipticInvariant j={:s}{:s}>".format(
            str(self.j), "" if self.label is None else " " + self.label
        )


def quartic_jacobian(q):
    """
    j-invariant of the Jacobian of `w^2 = q(y)`.

    For `q = a y^4 + b y^3 + c y^2 + d y + e` with invariants
    `I = 12ae - 3bd + c^2` and
    `J = 72ace + 9bcd - 27ad^2 - 27b^2e - 2c^3`, the Jacobian is
    `Y^2 = X^3 - 27 I X - 27 J` and `j = 1728 * 4 I^3 / (4 I^3 - J^2)`.

    Parameters
    ----------
    q : `QuarticModel`
        Quartic.

    Returns
    -------
    inv : `EllipticInvariant`
        j-invariant without label.

    Raises
    ------
    ValueError
        If the quartic has a repeated root (`4 I^3 = J^2`).

    Examples
    --------
    >>> quartic_jacobian(QuarticModel([1, 0, 0, 0, 1])).j
    Fraction(1728, 1)
    """
    I, J = q.invariants()
    den = 4 * I**3 - J * J
    if den == 0:
        raise ValueError("singular quartic ({:s})".format(q.equation))
    return EllipticInvariant(Fraction(1728 * 4 * I**3, den))


def match_label(inv, N, elliptic_db):
    """
    Finds the class of conductor dividing `N` with the given j-invariant.

    Returns
    -------
    label : `str`
        Class label.

    Raises
    ------
    MatchError
        If no or several classes match.
    """
    level = ntheory.assume_level(N)
    matches = []
    for M in ntheory.divisors_coprime_split(level):
        for curve in elliptic_db.by_conductor(M):
            if curve.j_invariant() == inv.j:
                matches.append(curve.label)
    if not matches:
        raise MatchError("no class with j = {:s} at level {:d}"
                         .format(str(inv.j), level.N))
    if len(matches) > 1:
        raise MatchError("ambiguous j = {:s} at level {:d} ({:s})"
                         .format(str(inv.j), level.N, ", ".join(matches)),
                         candidates=matches)
    return matches[0]


class Genus2BiellipticVerdict(FileBase):

    """
    Bielliptic test of a genus 2 model `c y^2 = R(x^2)`.

    Parameters
    ----------
    model : `HyperellipticModel`
        Model.
    quotients : `list(QuarticModel)`
        Quotients by `(x, y) -> (-x, y)` and `(x, y) -> (-x, -y)`.
    invariants : `list(EllipticInvariant)`
        Their j-invariants.
    """

    SER_KEYS = FileBase.SER_KEYS + (
        "bielliptic", "aut_order", "quotients", "invariants"
    )

    def __init__(self, model, quotients, invariants):
        self.model = model
        self.quotients = list(quotients)
        self.invariants = list(invariants)

    @property
    def bielliptic(self):
        return len(self.quotients) > 0

    @property
    def aut_order(self):
        return 4 if self.bielliptic else 2


def genus2_bielliptic(model):
    """
    Tests a genus 2 model for the bielliptic involutions `x -> -x`.

    If `P(x) = R(x^2)` with `R` cubic, the quotients are `w^2 = c R(t)`
    (invariants `t = x^2`, `w = c y`) and `w^2 = c t R(t)` (`w = c x y`).
    Other shapes are reported as not bielliptic by this criterion.

    Parameters
    ----------
    model : `HyperellipticModel`
        Model.

    Returns
    -------
    verdict : `Genus2BiellipticVerdict`
        Quotients with j-invariants; automorphism order 4 if bielliptic,
        2 otherwise.
    """
    if not model.is_even():
        LOGGER.info("N={:d}: model not even, not bielliptic by criterion"
                    .format(model.level.N))
        return Genus2BiellipticVerdict(model, [], [])
    c = Fraction(model.scale)
    cubic = [c * a for a in model.coeffs[0::2]]
    quotients = [
        QuarticModel(cubic, origin="(x, y) -> (-x, y)"),
        QuarticModel([0] + cubic, origin="(x, y) -> (-x, -y)"),
    ]
    invariants = [quartic_jacobian(q) for q in quotients]
    return Genus2BiellipticVerdict(model, quotients, invariants)


###############################################################################
# Quotients of canonical curves
###############################################################################


class QuotientEquation(FileBase):

    """
    Equations of the quotient of a canonical curve by a bielliptic
    involution.

    Parameters
    ----------
    level : `SquareFreeLevel`
        Level `N`.
    pattern : `SignPattern`
        Involution.
    route : `str`
        `"plane quartic"` (`g = 3`) or `"trigonal"` (`g = 4`).
    affine : `str`
        Affine equation of the quotient after substituting the square of
        the coordinate of the fixed factor (`T^2 -> T` for `g = 4`).
    quartic : `QuarticModel`
        Genus one model `w^2 = q(y)`.
    invariant : `EllipticInvariant`
        j-invariant of the quotient.
    plane_model : `str` or `None`
        Resultant plane model `P(T, Y)` of the curve itself (`g = 4`).
    plane_cubic : `str` or `None`
        Affine cubic of the ideal free of the fixed coordinate (`g = 4`).
    """

    SER_KEYS = FileBase.SER_KEYS + (
        "route", "affine", "plane_model", "plane_cubic", "quartic",
        "invariant"
    )

    def __init__(self, level, pattern, route, affine, quartic, invariant,
                 plane_model=None, plane_cubic=None):
        self.level = level
        self.pattern = pattern
        self.route = route
        self.affine = affine
        self.quartic = quartic
        self.invariant = invariant
        self.plane_model = plane_model
        self.plane_cubic = plane_cubic

    def __repr__(self):
        return "<QuotientEquation N={:d} {:s} j={:s}>".format(
            self.level.N, self.route, str(self.invariant.j)
        )


def _primitive_poly(p):
    terms = poly.poly_terms(p)
    vec = linalg.primitive_vector([c for _, c in terms])
    if terms and vec[0] * terms[0][1] < 0:
        vec = [-v for v in vec]
    return poly.multi_poly(
        {exp: v for (exp, _), v in zip(terms, vec)}, p.gens
    )


def _is_even_in(expr, var):
    return sympy.expand(expr.subs(var, -var) - expr) == 0


def _fixed_coordinate(basis, pattern):
    """
    Position of the single coordinate on which the oriented pattern is
    `+1`. Up to scaling the involution negates exactly this coordinate.
    """
    fixed = [j for j, fi in enumerate(basis.factor_index)
             if pattern.epsilons[fi] > 0]
    if len(fixed) != 1:
        raise ValueError("pattern not bielliptic ({:s})".format(str(pattern)))
    return fixed[0]


def _plane_quartic_quotient(level, basis, pattern, piece):
    gens = poly.coordinate_symbols(basis.g)
    names = poly.variable_names(basis.g)
    vi = _fixed_coordinate(basis, pattern)
    v = gens[vi]
    others = [k for k in range(basis.g) if k != vi]
    expr = piece.polys(gens)[0].as_expr()
    if not _is_even_in(expr, v):
        raise ValueError("quartic not even in {:s}".format(names[vi]))
    in_v = sympy.Poly(expr, v)
    a = sympy.Rational(in_v.coeff_monomial(v**4))
    B = in_v.coeff_monomial(v**2)
    C = in_v.coeff_monomial(1)
    if a == 0:
        raise RelationNotFoundError("quartic without {:s}^4 term"
                                    .format(names[vi]))
    disc = sympy.expand(B**2 - 4 * a * C)
    # Dehomogenize at y, or at z if y is the fixed coordinate
    unit = 1 if vi != 1 else 2
    keep = [k for k in others if k != unit][0]
    quartic = None
    for keep, unit in ((keep, unit), (unit, keep)):
        dehom = sympy.Poly(disc.subs(gens[unit], 1), gens[keep])
        coeffs = poly.uni_coeffs(dehom)
        if len(coeffs) - 1 in (3, 4):
            quartic = QuarticModel(coeffs, origin="B^2 - 4aC, {:s} = 1"
                                   .format(names[unit]))
            break
    if quartic is None:
        raise RelationNotFoundError("degenerate discriminant quartic")
    unit = 1 if vi != 1 else 2
    keep = [k for k in others if k != unit][0]
    s = sympy.Symbol("s")
    affine = sympy.expand((a * s**2 + B * s + C).subs(gens[unit], 1))
    affine = _primitive_poly(sympy.Poly(affine, s, gens[keep]))
    return QuotientEquation(
        level, pattern, "plane quartic",
        poly.str_poly(affine, [names[vi], names[keep]]),
        quartic, quartic_jacobian(quartic)
    )


def _free_cubic(piece, vi):
    """
    Combination of the cubic generators free of the variable `vi`.
    """
    v_cols = [k for k, exp in enumerate(piece.exps) if exp[vi]]
    m = linalg.RatMatrix.from_rows(
        [[gen[k] for gen in piece.generators] for k in v_cols],
        cols=piece.dim
    )
    kernel = linalg.kernel_basis(m)
    if not kernel:
        raise RelationNotFoundError("no cubic free of the fixed coordinate")
    if len(kernel) > 1:
        LOGGER.debug("{:d} free cubics, using the first".format(len(kernel)))
    vec = [0] * len(piece.exps)
    for c, gen in zip(kernel[0], piece.generators):
        vec = [x + c * y for x, y in zip(vec, gen)]
    return dict(zip(piece.exps, linalg.primitive_vector(vec)))


def cubic_to_quartic(cubic, gens, point):
    """
    Projects a plane cubic from a rational point on it.

    Lines through `point` meet the cubic in two further points, the roots
    of `c2 u^2 + c1 u v + c0 v^2`; the curve is birational to
    `w^2 = c1^2 - 4 c0 c2` over the line parameter.

    Parameters
    ----------
    cubic : `sympy.Expr`
        Homogeneous cubic in `gens`.
    gens : `list(sympy.Symbol)`
        Three coordinates.
    point : `list(int or Fraction)`
        Smooth rational point on the cubic.

    Returns
    -------
    quartic : `QuarticModel`
        Genus one model.

    Raises
    ------
    InvariantViolation
        If `point` is not on the cubic.
    RelationNotFoundError
        If `point` is singular.
    """
    point = [sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
             for c in point]
    at_point = dict(zip(gens, point))
    if cubic.subs(at_point) != 0:
        raise InvariantViolation("projection point not on cubic")
    if all(sympy.diff(cubic, g).subs(at_point) == 0 for g in gens):
        raise RelationNotFoundError("projection point is singular")
    k = next(i for i, c in enumerate(point) if c != 0)
    e = [[int(i == j) for j in range(3)] for i in range(3) if i != k]
    u, w, m = sympy.symbols("u w m")
    sub = {
        g: u * point[i] + w * (e[0][i] + m * e[1][i])
        for i, g in enumerate(gens)
    }
    line = sympy.Poly(sympy.expand(cubic.subs(sub, simultaneous=True)), u, w)
    c2 = line.coeff_monomial(u**2 * w)
    c1 = line.coeff_monomial(u * w**2)
    c0 = line.coeff_monomial(w**3)
    disc = sympy.Poly(sympy.expand(c1**2 - 4 * c0 * c2), m)
    return QuarticModel(poly.uni_coeffs(disc),
                        origin="projection from the cusp")


def _halve_exponents(p, index):
    """
    Substitutes `x^2 -> x` for the generator at `index` of a polynomial
    even in it.
    """
    terms = {}
    for exp, c in poly.poly_terms(p):
        exp = list(exp)
        exp[index] //= 2
        terms[tuple(exp)] = c
    return poly.multi_poly(terms, p.gens)


def _trigonal_quotient(level, basis, pattern, pieces):
    gens = poly.coordinate_symbols(basis.g)
    names = poly.variable_names(basis.g)
    vi = _fixed_coordinate(basis, pattern)
    others = [k for k in range(basis.g) if k != vi]
    quadric = pieces[2].polys(gens)[0].as_expr()
    cubic = poly.multi_poly(_free_cubic(pieces[3], vi), gens).as_expr()
    # Image of the cusp: leading coefficients of the basis
    cusp = [basis.series[k].coeffs[1] for k in others]
    quartic = cubic_to_quartic(cubic, [gens[k] for k in others], cusp)
    X, Y, Z, T = (gens[others[0]], gens[others[1]], gens[others[2]],
                  gens[vi])
    res = poly.resultant(
        sympy.Poly(quadric.subs(Z, 1), X, Y, T),
        sympy.Poly(cubic.subs(Z, 1), X, Y, T), X
    )
    res = _primitive_poly(sympy.Poly(res.as_expr(), T, Y))
    plane_model = poly.str_poly(res, ["T", "Y"])
    if not _is_even_in(res.as_expr(), T):
        raise InvariantViolation("plane model not even in T")
    # T^2 -> T: the quotient as a genus one plane curve
    affine = poly.str_poly(_primitive_poly(_halve_exponents(res, 0)),
                           ["T", "Y"])
    plane_cubic = poly.str_poly(
        _primitive_poly(sympy.Poly(cubic.subs(Z, 1), X, Y)),
        [names[others[0]], names[others[1]]]
    )
    return QuotientEquation(
        level, pattern, "trigonal", affine, quartic,
        quartic_jacobian(quartic), plane_model=plane_model,
        plane_cubic=plane_cubic
    )


def quotient_equation(N, basis, pattern, pieces):
    """
    Equations of the elliptic quotient for a bielliptic sign pattern.

    For `g = 3` the quartic is `a v^4 + B v^2 + C` in the coordinate `v`
    of the fixed elliptic factor; the quotient is `w^2 = B^2 - 4aC`
    dehomogenized. For `g = 4` the cubic of the ideal free of `v` defines
    the quotient as a plane cubic, projected from the image of the cusp
    to a quartic model; the resultant plane model `P(T, Y)` of the curve
    is emitted as well, and `P` with `T^2` replaced by `T` is the affine
    equation of the quotient.

    Parameters
    ----------
    N : `SquareFreeLevel` or `int`
        Level.
    basis : `DifferentialBasis`
        Basis with `g` 3 or 4.
    pattern : `SignPattern`
        Oriented pattern fixing a single elliptic factor.
    pieces : `dict(int->GradedPiece)`
        `{4: L_4}` for `g = 3`, `{2: L_2, 3: L_3}` for `g = 4`.

    Returns
    -------
    equation : `QuotientEquation`
        Quotient equations and j-invariant.

    Raises
    ------
    ValueError
        If the pattern is not bielliptic, the relevant generator is not
        even or the genus is unsupported.
    """
    level = ntheory.assume_level(N)
    if basis.g == 3:
        res = _plane_quartic_quotient(level, basis, pattern, pieces[4])
    elif basis.g == 4:
        res = _trigonal_quotient(level, basis, pattern, pieces)
    else:
        raise ValueError("no quotient equation route for genus {:d}"
                         .format(basis.g))
    LOGGER.info("N={:d}: quotient j = {:s}".format(level.N,
                                                   str(res.invariant.j)))
    return res
