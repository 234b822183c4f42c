import os

import pytest

from libxostar import env
from libxostar.core.data.records import HeckeField, NewformOrbit, hecke_expand
from libxostar.core.io import records as rio
from libxostar.tools.math import ntheory
from libxostar.tools.modular import star

SAMPLE_DIR = os.path.join(env.DIR_DATAROOT, "sample")
SAMPLE_CURVES = os.path.join(SAMPLE_DIR, "curves.ecd")
SAMPLE_NEWFORMS = os.path.join(SAMPLE_DIR, "newforms.nfd")

# a_p of 37a for p = 2, 3, ..., 47
AP_37A = [-2, -3, -2, -1, -5, -2, 0, 0, 2, 6, -4, -1, -9, 2, -9]


@pytest.fixture(autouse=True)
def _no_env_databases(monkeypatch, request):
    if "acceptance" not in request.keywords:
        monkeypatch.delenv(env.ENV_NEWFORM_DB, raising=False)
        monkeypatch.delenv(env.ENV_CURVE_DB, raising=False)


def make_orbit(level, label, minpoly, al_signs, ap, bound=None):
    """
    Builds an orbit from prime coefficients (power-basis vectors).
    """
    field = HeckeField(minpoly)
    primes = ntheory.first_primes(len(ap))
    if bound is None:
        bound = ntheory.next_prime(primes[-1]) - 1
    coeffs = hecke_expand(field, level, dict(zip(primes, ap)), bound)
    return NewformOrbit(level, label, field.degree, minpoly, al_signs,
                        coeffs, source="ap")


@pytest.fixture(scope="session")
def elliptic_db():
    return rio.load_elliptic_db(SAMPLE_CURVES)


@pytest.fixture(scope="session")
def derived_orbits(elliptic_db):
    return star.derive_orbits(elliptic_db)


@pytest.fixture(scope="session")
def newform_db(derived_orbits):
    return rio.NewformDB(derived_orbits)


@pytest.fixture(scope="session")
def dbs(newform_db, elliptic_db):
    return rio.Databases(newform_db, elliptic_db)


@pytest.fixture
def write_file(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write
