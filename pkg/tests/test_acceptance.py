"""
Checks against the complete newform and elliptic curve tables.

Run with the full tables installed as `data/newforms.nfd` and
`data/curves.ecd`, or with `XOSTAR_NEWFORM_DB` and `XOSTAR_CURVE_DB`
pointing to them; skipped otherwise.
"""

import os
from fractions import Fraction

import pytest

from libxostar import env
from libxostar.core import cfg as cfg_mod
from libxostar.core.io import records as rio
from libxostar.tools.modular import models, pipeline, sieve, star
from libxostar.tools.modular.canonical import SignPattern
from libxostar.tools.modular.models import HyperellipticModel, QuotientEquation


def _full_tables():
    if os.environ.get(env.ENV_NEWFORM_DB) and os.environ.get(env.ENV_CURVE_DB):
        return True
    return all(os.path.isfile(os.path.join(env.DIR_DATAROOT, name))
               for name in ("newforms.nfd", "curves.ecd"))


pytestmark = [
    pytest.mark.acceptance,
    pytest.mark.skipif(not _full_tables(),
                       reason="full tables not installed"),
]

BIELLIPTIC = {
    2: [106, 122, 129, 158, 166, 215, 390],
    3: [178, 183, 246, 249, 258, 290, 303, 318, 430, 455, 510],
    4: [370],
}

GAMMA2_INFINITE = [
    67, 73, 85, 93, 103, 106, 107, 115, 122, 129, 133, 134, 146, 154, 158,
    161, 165, 166, 167, 170, 177, 178, 183, 186, 191, 205, 206, 209, 213,
    215, 221, 230, 246, 249, 255, 258, 266, 285, 286, 287, 290, 299, 303,
    318, 330, 357, 370, 390, 430, 455, 510,
]

TRIVIAL_AUT = [
    185, 202, 259, 262, 267, 282, 301, 305, 310, 354, 393, 394, 395, 399,
    426, 427, 445, 458, 462, 546, 570, 581, 582, 602, 710, 786, 795, 903,
    1001, 1015,
]

CHECK_PRIMES = [101, 103, 107, 109, 113]


@pytest.fixture(scope="module")
def cfg():
    return cfg_mod.load_classifier_cfg(use_user_config=False)


@pytest.fixture(scope="module")
def full_dbs(cfg):
    return rio.load_databases(cfg.newform_path(), cfg.curve_path())


@pytest.fixture(scope="module")
def theorem1(cfg, full_dbs):
    return pipeline.reproduce_theorem1(cfg, full_dbs)


def _same_curve(model, coeffs, scale=1):
    other = HyperellipticModel(model.level, coeffs, scale)
    return all(model.count_points(p) == other.count_points(p)
               for p in CHECK_PRIMES)


###############################################################################


def test_theorem1(theorem1):
    table, _ = theorem1
    res = {int(row["genus"]): list(row["N"]) for _, row in table.iterrows()}
    assert res == BIELLIPTIC


def test_theorem2(cfg, full_dbs, theorem1):
    _, reports = theorem1
    assert pipeline.reproduce_theorem2(cfg, full_dbs, reports) \
        == GAMMA2_INFINITE


def test_trivial_aut(cfg, full_dbs, theorem1):
    _, reports = theorem1
    trivial, _ = pipeline.reproduce_trivial_aut(cfg, full_dbs, reports)
    assert set(TRIVIAL_AUT) <= set(trivial)


@pytest.mark.parametrize("N, p, k_max, q", [
    (259, 2, 4, 17),
    (394, 3, 4, 25),
    (458, 5, 7, 36),
    (305, 2, 3, 15),
])
def test_gonzalez_cells(full_dbs, N, p, k_max, q):
    counter = sieve.StarCounter(star.star_space(N, full_dbs.newform_db))
    qs, entry = sieve.gonzalez_q(N, p, k_max, counter)
    assert qs[-1] == q
    assert entry.discards


@pytest.mark.parametrize("N, label, p, k, n", [
    (385, "77a", 3, 2, 3),
    (1590, "53a", 7, 2, 54),
    (290, "58a", 3, 2, 5),
    (555, "185c", 2, 1, 1),
])
def test_two_cover_cells(full_dbs, N, label, p, k, n):
    counter = sieve.StarCounter(star.star_space(N, full_dbs.newform_db))
    curve = full_dbs.elliptic_db[label]
    assert sieve.two_cover_value(counter, curve, p, k) == n


@pytest.mark.parametrize("N, j", [
    (183, Fraction(-912673, 61)),
    (510, Fraction(1771561, 612)),
    (370, Fraction(15438249, 2960)),
])
def test_quotient_j_invariants(cfg, full_dbs, N, j):
    report = pipeline.classify(N, cfg, full_dbs)
    assert report.bielliptic
    equations = [m for m in report.quotient_models
                 if isinstance(m, QuotientEquation)]
    assert j in [eq.invariant.j for eq in equations]


@pytest.mark.parametrize("N, coeffs, scale", [
    (129, [-9, 0, 35, 0, -11, 0, 1], 4),
    (106, [1, 0, -6, 0, 17, 0, 4], 1),
    (215, [25, 0, -3, 0, -5, 0, -1], None),
])
def test_genus2_models(full_dbs, N, coeffs, scale):
    space = star.star_space(N, full_dbs.newform_db)
    model = models.genus2_model(N, space)
    assert model.is_even()
    if scale is None:
        assert list(model.coeffs) == coeffs
    else:
        assert _same_curve(model, coeffs, scale)
    assert models.genus2_bielliptic(model).bielliptic


def test_genus2_quotient_366(cfg, full_dbs):
    report = pipeline.classify(366, cfg, full_dbs)
    quotients = [m for m in report.quotient_models
                 if isinstance(m, HyperellipticModel)]
    assert any(_same_curve(m, [4, -24, 53, -42, 23, -6, 1])
               for m in quotients)


def test_plane_quartic_183(cfg, full_dbs):
    space = star.star_space(183, full_dbs.newform_db)
    basis, pieces, verdicts = pipeline.petri_analysis(183, space, cfg)
    assert pieces[4].dim == 1
    assert any(v.bielliptic for v in verdicts)
    assert all(isinstance(v.pattern, SignPattern) for v in verdicts)
