import json

import pytest

from libxostar import env
from libxostar.core import cfg as cfg_mod
from libxostar.core.errors import InvariantViolation, MissingLevelError
from libxostar.core.io import records as rio
from libxostar.tools.math import ntheory
from libxostar.tools.math.series import PowerSeries
from libxostar.tools.modular import models, pipeline, sieve, star
from libxostar.tools.modular.canonical import (
    DifferentialBasis, InvolutionVerdict, SignPattern
)
from libxostar.tools.modular.models import (
    EllipticInvariant, HyperellipticModel, QuarticModel, QuotientEquation
)
from libxostar.tools.modular.sieve import CandidatePair, SieveEntry

from conftest import AP_37A, make_orbit


@pytest.fixture
def cfg():
    return cfg_mod.ClassifierCfg()


@pytest.fixture(scope="module")
def covered_dbs(derived_orbits, elliptic_db):
    return rio.Databases(rio.NewformDB(derived_orbits, [(1, 100)]),
                         elliptic_db)


def test_out_of_scope(cfg, dbs):
    report = pipeline.classify(37, cfg, dbs)
    assert report.route == pipeline.ROUTE_OUT_OF_SCOPE
    assert not report.in_scope
    assert (report.N, report.g_N, report.g_star) == (37, 2, 1)
    assert report.pairs == []
    assert report.aut_order is None


def test_missing_level(cfg, dbs):
    with pytest.raises(MissingLevelError):
        pipeline.classify(74, cfg, dbs)


def test_report_row(cfg, dbs):
    row = pipeline.report_row(pipeline.classify(37, cfg, dbs))
    assert row["N"] == "37"
    assert row["bielliptic"] == "out-of-scope"
    assert row["M"] == "" and row["label"] == ""
    assert row["aut"] is None


def test_emit_tsv(cfg, dbs):
    lines = pipeline.emit(pipeline.classify(37, cfg, dbs)).split("\n")
    assert lines[0] == "\t".join(pipeline.REPORT_COLUMNS)
    assert lines[1] == "37\t2\t1\t\t\tout-of-scope\t\t-\t-"


def test_emit_structured(cfg, dbs):
    report = pipeline.classify(37, cfg, dbs)
    ser = json.loads(pipeline.emit([report], fmt="structured"))
    assert ser["__meta__"]["version_libxostar"] == env.XOSTAR_VERSION
    data = ser["__data__"]
    assert len(data) == 1
    assert data[0]["N"] == 37
    assert data[0]["route"] == "out-of-scope"
    assert data[0]["digest"] == report.digest
    with pytest.raises(ValueError):
        pipeline.emit(report, fmt="yaml")


def test_digest_is_deterministic(cfg, dbs):
    a = pipeline.classify(37, cfg, dbs)
    b = pipeline.classify(37, cfg, dbs)
    assert a.digest == b.digest
    b.notes.append("edited")
    assert a.digest != b.digest


def test_classify_many_orders_levels(cfg, covered_dbs):
    reports = pipeline.classify_many([61, 37, 43], cfg, covered_dbs)
    assert [r.N for r in reports] == [37, 43, 61]
    assert all(r.g_star == 1 for r in reports)
    assert all(not r.in_scope for r in reports)


def test_emit_table():
    assert pipeline.emit_table([1, 2]) == "1\n2"
    assert json.loads(pipeline.emit_table([1, 2], fmt="structured"))[
        "__data__"] == [1, 2]


def test_survivor_table(elliptic_db):
    level = ntheory.SquareFreeLevel(37 * 43)
    report = pipeline.ClassificationReport(level, 41, 3, pipeline.ROUTE_SIEVE)
    report.pairs = [CandidatePair(level, elliptic_db["37a"]),
                    CandidatePair(level, elliptic_db["43a"])]
    report.pairs[1].trail.append(
        SieveEntry("two_cover", {"q": 2}, {"n": 1}, sieve.DISCARD)
    )
    small = pipeline.ClassificationReport(ntheory.SquareFreeLevel(74), 8, 2,
                                          pipeline.ROUTE_HYPERELLIPTIC)
    table = pipeline.survivor_table([report, small])
    assert list(table.columns) == ["N", "g*_N", "E"]
    assert len(table) == 1
    assert (table.iloc[0]["N"], table.iloc[0]["E"]) == (1591, "37a")


###############################################################################
# Routes on synthetic tables
###############################################################################


@pytest.fixture(scope="module")
def star851_dbs(elliptic_db):
    forms = [
        make_orbit(37, "a", (0, 1), {37: 1}, [(a,) for a in AP_37A]),
        make_orbit(23, "a", (-2, 0, 1), {23: 1}, [(0, 1)] * 4, bound=10),
        make_orbit(23, "b", (0, 1), {23: -1}, [(0,)] * 4, bound=10),
    ]
    return rio.Databases(rio.NewformDB(forms, coverage=[(1, 1000)]),
                         elliptic_db)


@pytest.fixture(scope="module")
def star129_dbs(derived_orbits, elliptic_db):
    ap = [(0,)] * 15
    ap[1] = ap[13] = (-1,)
    forms = [o for o in derived_orbits if o.level == 43] + [
        make_orbit(129, "a", (0, 1), {3: 1, 43: 1}, ap),
    ]
    return rio.Databases(rio.NewformDB(forms, coverage=[(1, 1000)]),
                         elliptic_db)


def _gonzalez_trail(verdict):
    evidence = {"bound": 8, "index": 3, "Q": 9 if verdict == sieve.DISCARD
                else 4}
    return sieve.SieveTrail([
        SieveEntry("gonzalez", {"p": 3, "k_max": 7}, evidence, verdict)
    ])


@pytest.fixture
def fake_sieves(monkeypatch):
    """
    Replaces the point-count sieves: pairs stay alive and the level trail
    carries one entry with the given verdict.
    """
    def _install(verdict):
        monkeypatch.setattr(
            sieve, "run_level_gonzalez",
            lambda level, cfg, counter: _gonzalez_trail(verdict)
        )
        monkeypatch.setattr(sieve, "run_pair_sieves",
                            lambda pair, cfg, dbs, counter=None: pair)
    return _install


def _bielliptic_analysis(level, dbs):
    space = star.star_space(level, dbs.newform_db)
    basis = DifferentialBasis(level, space.factors,
                              [PowerSeries([0, 1, 0])] * 3, (0, 1, 1))
    pattern = SignPattern((1, -1), space.dims)
    return basis, {}, [InvolutionVerdict(pattern, 0, "sign pattern")]


def _fixed_quotient(j):
    def _quotient_equation(N, basis, pattern, pieces):
        quartic = QuarticModel([1, 0, 0, 0, 1])
        return QuotientEquation(ntheory.assume_level(N), pattern,
                                "plane quartic", "x", quartic,
                                EllipticInvariant(j))
    return _quotient_equation


def test_classify_canonical_route(cfg, star851_dbs, elliptic_db,
                                  fake_sieves, monkeypatch):
    fake_sieves(sieve.PASS)
    monkeypatch.setattr(
        pipeline, "petri_analysis",
        lambda N, space, cfg: _bielliptic_analysis(851, star851_dbs)
    )
    monkeypatch.setattr(models, "quotient_equation", _fixed_quotient(
        elliptic_db["37a"].j_invariant()
    ))
    report = pipeline.classify(851, cfg, star851_dbs)
    assert (report.g_star, report.route) == (3, pipeline.ROUTE_CANONICAL)
    assert [p.label for p in report.pairs] == ["37a"]
    assert report.bielliptic
    assert report.quotients == ["37a"]
    assert report.aut_order == 2
    assert report.pairs[0].certified == "sign pattern"
    assert report.quotient_models[0].invariant.label == "37a"
    assert report.gamma2_infinite
    assert report.gamma2_reason == pipeline.GAMMA2_BIELLIPTIC
    assert report.notes == []


def test_classify_canonical_route_mismatched_j(cfg, star851_dbs, elliptic_db,
                                               fake_sieves, monkeypatch):
    fake_sieves(sieve.PASS)
    monkeypatch.setattr(
        pipeline, "petri_analysis",
        lambda N, space, cfg: _bielliptic_analysis(851, star851_dbs)
    )
    # no curve of conductor dividing 851 has the j-invariant of 43a
    monkeypatch.setattr(models, "quotient_equation", _fixed_quotient(
        elliptic_db["43a"].j_invariant()
    ))
    report = pipeline.classify(851, cfg, star851_dbs)
    assert report.bielliptic
    assert report.quotient_models[0].invariant.label is None
    assert len(report.notes) == 1


def test_classify_no_involution_discards_pairs(cfg, star851_dbs, fake_sieves,
                                               monkeypatch):
    fake_sieves(sieve.DISCARD)

    def _unreachable(N, space, cfg):
        raise AssertionError("canonical route after a level kill")

    monkeypatch.setattr(pipeline, "petri_analysis", _unreachable)
    report = pipeline.classify(851, cfg, star851_dbs)
    assert report.route == pipeline.ROUTE_SIEVE
    assert report.aut_order == 1
    assert not report.bielliptic
    assert report.level_trail.discarded
    pair = report.pairs[0]
    assert not pair.alive
    assert pair.trail.first_failure().sieve == "gonzalez"
    assert pair.status.startswith("discarded(gonzalez")
    assert report.gamma2_infinite is False
    assert pipeline.report_row(report)["aut"] == 1


def test_classify_no_involution_cross_check(cfg, star851_dbs, fake_sieves,
                                            monkeypatch):
    fake_sieves(sieve.DISCARD)
    cfg["sieve.exhaustive"] = True
    monkeypatch.setattr(
        pipeline, "petri_analysis",
        lambda N, space, cfg: _bielliptic_analysis(851, star851_dbs)
    )
    with pytest.raises(InvariantViolation):
        pipeline.classify(851, cfg, star851_dbs)
    monkeypatch.setattr(pipeline, "petri_analysis",
                        lambda N, space, cfg: (None, {}, []))
    report = pipeline.classify(851, cfg, star851_dbs)
    assert report.route == pipeline.ROUTE_CANONICAL
    assert report.aut_order == 1
    assert not report.pairs[0].alive


def test_classify_hyperelliptic_route(cfg, star129_dbs, monkeypatch):
    monkeypatch.setattr(
        models, "genus2_model",
        lambda N, space, prec=None: HyperellipticModel(
            129, [-9, 0, 35, 0, -11, 0, 1], 4
        )
    )
    report = pipeline.classify(129, cfg, star129_dbs)
    assert (report.g_star, report.route) == (2,
                                             pipeline.ROUTE_HYPERELLIPTIC)
    assert [p.label for p in report.pairs] == ["43a"]
    assert report.pairs[0].trail.find("degree")[0].verdict == sieve.VACUOUS
    assert report.bielliptic
    assert report.aut_order == 4
    assert report.quotients[0] == "43a"
    assert report.pairs[0].certified == "genus 2 model"
    assert report.model.equation == "4*y^2 = x^6 - 11*x^4 + 35*x^2 - 9"
    assert report.gamma2_reason == pipeline.GAMMA2_HYPERELLIPTIC
    assert len(report.level_trail) == 0


def test_classify_hyperelliptic_sieve_only(cfg, star129_dbs, monkeypatch):
    def _unreachable(N, space, prec=None):
        raise AssertionError("model built without the canonical route")

    monkeypatch.setattr(models, "genus2_model", _unreachable)
    report = pipeline.classify(129, cfg, star129_dbs, canonical_route=False)
    assert report.route == pipeline.ROUTE_HYPERELLIPTIC
    assert report.aut_order is None
    assert report.pairs[0].alive
    assert report.gamma2_infinite
