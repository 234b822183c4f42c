from fractions import Fraction

import pytest

from libxostar.core.errors import (
    DimensionMismatchError, InvariantViolation, PrecisionError
)
from libxostar.core.io import records as rio
from libxostar.tools.math import poly
from libxostar.tools.math.series import PowerSeries
from libxostar.tools.modular import canonical, star
from libxostar.tools.modular.canonical import (
    DifferentialBasis, GradedPiece, SignPattern
)

from conftest import AP_37A, make_orbit


def _fourth_root_series(prec):
    """
    `(1 - t^4)^(1/4)` to `prec` coefficients.
    """
    coeffs = [Fraction(0)] * prec
    binom = Fraction(1)
    k = 0
    while 4 * k < prec:
        coeffs[4 * k] = binom * (-1)**k
        binom = binom * (Fraction(1, 4) - k) / (k + 1)
        k += 1
    return coeffs


def _times_q(coeffs):
    return PowerSeries([0] + list(coeffs[:-1]))


@pytest.fixture
def factors(derived_orbits):
    return tuple(star.StarFactor(o, (1,)) for o in derived_orbits[:3])


def fermat_basis(factors, prec=40, third=None):
    """
    Branch `(t, (1 - t^4)^(1/4), 1)` of `x^4 + y^4 = z^4` as cusp forms
    `q * u_j(q)`.
    """
    u1 = [0, 1] + [0] * (prec - 2)
    u2 = _fourth_root_series(prec)
    u3 = [1] + [0] * (prec - 1) if third is None else third
    series = [_times_q(u) for u in (u1, u2, u3)]
    return DifferentialBasis(37, factors, series, (0, 1, 2))


def _piece_from(expr_terms, g=3, degree=4):
    exps = poly.monomials(g, degree)
    return GradedPiece(degree, g, exps,
                       [tuple(expr_terms.get(e, 0) for e in exps)])


# x^3*y + z^4 has no coordinate sign symmetry
ASYMMETRIC = {(3, 1, 0): 1, (0, 0, 4): 1}


@pytest.mark.parametrize("g, i, dim", [
    (3, 2, 0), (4, 2, 1), (5, 2, 3), (6, 2, 6), (7, 2, 10),
    (3, 4, 1), (4, 3, 5), (3, 1, 0),
])
def test_expected_dim(g, i, dim):
    assert canonical.expected_dim(g, i) == dim


def test_piece_degrees_and_precision():
    assert canonical.piece_degrees(3) == (4,)
    assert canonical.piece_degrees(5) == (2, 3)
    assert canonical.piece_degrees(9) == (2,)
    assert canonical.vanishing_bound(3, 4) == 16
    assert canonical.required_precision(3, (4,)) == 35
    assert canonical.required_precision(7, (2,), margin=8, verify_factor=1) \
        == 34


def test_build_basis_rational(newform_db):
    space = star.star_space(37, newform_db)
    basis = canonical.build_basis(37, space, 10)
    assert basis.g == 1
    assert basis.series[0].coeffs == (0, 1, -2, -3, 2, -2, 6, -1, 0, 6)
    assert basis.leading == [[1, -2, -3, 2, -2]]
    assert basis.provenance() == ["w1: 37a (dim 1, lifts 1)"]


def test_build_basis_blocks():
    forms = [
        make_orbit(37, "a", (0, 1), {37: 1}, [(a,) for a in AP_37A]),
        make_orbit(23, "a", (-2, 0, 1), {23: 1}, [(0, 1)] * 4, bound=10),
    ]
    db = rio.NewformDB(forms, coverage=[(1, 1000)])
    space = star.star_space(851, db)
    basis = canonical.build_basis(851, space, 10)
    assert basis.g == 3
    assert basis.factor_index == (0, 1, 1)
    assert basis.blocks == [(0,), (1, 2)]
    assert basis.series[1].coeffs[:5] == (0, 1, 0, 0, 0)
    assert basis.series[2].coeffs[:5] == (0, 0, 1, 1, 0)
    assert basis.prec == 10
    assert [s.prec for s in basis.shifted(5)] == [5, 5, 5]


def test_fermat_quartic(factors):
    basis = fermat_basis(factors)
    piece = canonical.graded_piece(basis, 4)
    assert piece.dim == 1
    assert piece.polynomials == ["x^4 + y^4 - z^4"]


def test_graded_piece_precision(factors):
    basis = fermat_basis(factors, prec=20)
    with pytest.raises(PrecisionError):
        canonical.graded_piece(basis, 4)


def test_graded_piece_dimension_mismatch(factors):
    # third coordinate equal to the first: a linear relation
    basis = fermat_basis(factors, third=[0, 1] + [0] * 38)
    with pytest.raises(DimensionMismatchError):
        canonical.graded_piece(basis, 4)


def test_sign_stability(factors):
    piece = canonical.graded_piece(fermat_basis(factors), 4)
    assert canonical.is_piece_stable(piece, [1, -1, 1])
    assert canonical.stable_subspace_dim(piece, [0, 2]) == 1
    other = _piece_from(ASYMMETRIC)
    assert not canonical.is_piece_stable(other, [-1, 1, 1])
    assert canonical.is_piece_stable(other, [-1, -1, 1])
    assert canonical.stable_subspace_dim(other, [1]) == 0


def test_sign_pattern():
    p = SignPattern((1, -1, 1, 1), (1, 1, 2, 1))
    assert p.fixed_genus == 4
    assert str(p) == "+-++"
    assert p.negated().fixed_genus == 1
    assert p.negated().class_vector() == p.class_vector() == (0, 1, 0, 0)
    assert p.fixed_factors() == [0, 2, 3]
    assert p.coordinate_signs((0, 1, 2, 2, 3)) == [1, -1, 1, 1, 1]
    assert p.flip_coordinates((0, 1, 2, 2, 3)) == [1]
    with pytest.raises(ValueError):
        SignPattern((1, 1), (1, 1))


def test_pattern_classes():
    classes = canonical.pattern_classes((1, 1, 1))
    assert [c.epsilons for c in classes] == [
        (1, 1, -1), (1, -1, 1), (1, -1, -1)
    ]
    assert len(canonical.pattern_classes((1, 2, 1, 1))) == 7


def test_detect_involutions_fermat(factors):
    basis = fermat_basis(factors)
    pieces = {4: canonical.graded_piece(basis, 4)}
    verdicts = canonical.detect_involutions(37, basis, pieces)
    assert [str(v.pattern) for v in verdicts] == ["--+", "-+-", "+--"]
    assert [v.bielliptic_factor for v in verdicts] == [2, 1, 0]
    assert all(v.resolution == "riemann-hurwitz" for v in verdicts)
    assert canonical.aut_group_order(37, verdicts) == 4


def test_detect_involutions_none(factors):
    basis = fermat_basis(factors)
    verdicts = canonical.detect_involutions(
        37, basis, {4: _piece_from(ASYMMETRIC)}
    )
    assert verdicts == []
    assert canonical.aut_group_order(37, verdicts) == 1


def test_detect_involutions_rejects_hyperelliptic(factors):
    basis = fermat_basis(factors)
    empty = GradedPiece(4, 3, poly.monomials(3, 4), [])
    with pytest.raises(DimensionMismatchError):
        canonical.detect_involutions(37, basis, {4: empty})


def test_orient_pattern_without_admissible_side(factors):
    basis = fermat_basis(factors)
    pattern = SignPattern((1, -1, -1), (1, 1, 1))
    assert canonical.orient_pattern(basis, pattern) == (
        pattern, "riemann-hurwitz"
    )
    # both sides of genus 2 on a genus 3 curve
    wide = SignPattern((1, -1), (2, 2))
    with pytest.raises(InvariantViolation):
        canonical.orient_pattern(basis, wide)


def test_aut_group_order_rank():
    dims = (1, 1, 1, 1)
    patterns = [SignPattern(e, dims) for e in [
        (1, -1, 1, 1), (1, 1, -1, 1), (1, -1, -1, 1)
    ]]
    assert canonical.aut_group_order(1, patterns) == 4
    assert canonical.aut_group_order(1, patterns[:1]) == 2
