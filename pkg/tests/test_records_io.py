from fractions import Fraction

import pytest

from libxostar.core.data.records import (
    EllipticCurveRec, HeckeField, hecke_expand
)
from libxostar.core.errors import (
    DataError, MissingLevelError, ParseError, ValidationError
)
from libxostar.core.io import records as rio

from conftest import AP_37A, SAMPLE_CURVES, SAMPLE_NEWFORMS

LINE_37A = "37:a:1:0,1:37=+1:ap:" + ";".join(str(a) for a in AP_37A)


def test_sample_curves(elliptic_db):
    assert len(elliptic_db) == 10
    assert "43a" in elliptic_db
    e = elliptic_db["37a"]
    assert e.j_invariant() == Fraction(110592, 37)
    assert elliptic_db["43a"].j_invariant() == Fraction(-4096, 43)
    assert [c.label for c in elliptic_db.by_conductor(37)] == ["37a"]
    assert elliptic_db.by_conductor(38) == []


def test_sample_newforms():
    db = rio.load_newform_db(SAMPLE_NEWFORMS)
    assert db.covers(30) and db.covers(37) and not db.covers(38)
    assert db.orbits_at(30) == []
    orbit = db.orbits_at(37)[0]
    assert orbit.name == "37a"
    assert orbit.is_star()
    assert orbit.a_rational(4) == 2
    assert orbit.a_rational(6) == 6
    with pytest.raises(MissingLevelError):
        db.orbits_at(43)


def test_curve_label_and_invariants():
    e = EllipticCurveRec("37a1", 37, [0, 0, 1, -1, 0], 1, 2)
    assert e.label == "37a"
    with pytest.raises(ValidationError):
        EllipticCurveRec("37a", 43, [0, 0, 1, -1, 0], 1, 2)
    with pytest.raises(ValidationError):
        EllipticCurveRec("37a", 37, [0, 0, 0, 0, 0], 1, 2)
    with pytest.raises(ValidationError):
        EllipticCurveRec("37a", 37, [0, 0, 1, -1, 0], 1, 0)


def test_hecke_expand():
    field = HeckeField((0, 1))
    ap = {p: (a,) for p, a in zip([2, 3, 5, 7], AP_37A)}
    coeffs = hecke_expand(field, 37, ap, 10)
    assert [c[0] for c in coeffs] == [1, -2, -3, 2, -2, 6, -1, 0, 6, 4]


def test_hecke_field_arithmetic():
    field = HeckeField((-2, 0, 1))
    a = (Fraction(0), Fraction(1))
    assert field.mul(a, a) == (Fraction(2), Fraction(0))
    assert not field.is_rational(a)
    with pytest.raises(ValueError):
        HeckeField((1, 2))


def test_missing_header(write_file):
    path = write_file("x.nfd", LINE_37A + "\n")
    with pytest.raises(ParseError):
        rio.load_newform_db(path)


def test_missing_file(tmp_path):
    with pytest.raises(DataError):
        rio.load_elliptic_db(str(tmp_path / "none.ecd"))


def test_malformed_line_reports_line_number(write_file):
    path = write_file("x.ecd", "!ecd 1\n# comment\n37a:37:0,0,1,-1,0:1\n")
    with pytest.raises(ParseError) as exc:
        rio.load_elliptic_db(path)
    assert exc.value.line_no == 3


def test_duplicate_curve(write_file):
    line = "37a:37:0,0,1,-1,0:1:2\n"
    path = write_file("x.ecd", "!ecd 1\n" + line + line)
    with pytest.raises(ValidationError):
        rio.load_elliptic_db(path)
    assert len(rio.load_elliptic_db(path, strict=False)) == 1


def test_atkin_lehner_sign_checked(write_file):
    bad = LINE_37A.replace("37=+1", "37=-1")
    path = write_file("x.nfd", "!nfd 1\n" + bad + "\n")
    with pytest.raises(ValidationError) as exc:
        rio.load_newform_db(path)
    assert exc.value.invariant == "a_q = -w_q at q | level"
    assert len(rio.load_newform_db(path, strict=False)) == 0


def test_multiplicativity_checked(write_file):
    an = [1, -2, -3, 2, -2, 7]
    line = "37:a:1:0,1:37=+1:an:" + ";".join(str(a) for a in an)
    path = write_file("x.nfd", "!nfd 1\n" + line + "\n")
    with pytest.raises(ValidationError) as exc:
        rio.load_newform_db(path)
    assert exc.value.invariant == "multiplicativity"


def test_unknown_directive(write_file):
    path = write_file("x.nfd", "!nfd 1\n!levels one-two\n")
    with pytest.raises(ParseError):
        rio.load_newform_db(path)


def test_dump_newform_db(tmp_path):
    db = rio.load_newform_db(SAMPLE_NEWFORMS)
    path = str(tmp_path / "out.nfd")
    rio.dump_newform_db(path, list(db), coverage=[(1, 37)])
    again = rio.load_newform_db(path)
    assert again.coverage == db.coverage
    assert again[37, "a"].coeffs == db[37, "a"].coeffs


def test_dump_elliptic_db(tmp_path, elliptic_db):
    path = str(tmp_path / "out.ecd")
    rio.dump_elliptic_db(path, list(elliptic_db))
    again = rio.load_elliptic_db(path)
    assert [c.label for c in again] == [c.label for c in elliptic_db]
    assert again["82a"].ainvs == elliptic_db["82a"].ainvs
    assert again["82a"].modular_degree == 2


def test_load_databases():
    dbs = rio.load_databases(SAMPLE_NEWFORMS, SAMPLE_CURVES)
    assert len(dbs.newform_db) == 1
    assert len(dbs.elliptic_db) == 10
