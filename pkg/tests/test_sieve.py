import pytest

from libxostar.core import cfg as cfg_mod
from libxostar.core.data.records import EllipticCurveRec
from libxostar.core.errors import InvariantViolation
from libxostar.core.io import records as rio
from libxostar.tools.modular import sieve, star
from libxostar.tools.modular.sieve import CandidatePair, SieveEntry


@pytest.fixture
def counter37(newform_db):
    return sieve.StarCounter(star.star_space(37, newform_db))


@pytest.fixture
def pair37(elliptic_db):
    return CandidatePair(37, elliptic_db["37a"])


def test_closed_point_parities():
    # projective line over F_2
    assert sieve.closed_point_parities([3, 5, 9]) == [1, 1, 0]
    with pytest.raises(InvariantViolation):
        sieve.closed_point_parities([3, 4])


def test_counter(counter37):
    assert [counter37.count(2, k) for k in range(1, 6)] == [5, 5, 5, 25, 25]


def test_gonzalez_passes_on_elliptic_curve(counter37):
    qs, entry = sieve.gonzalez_q(37, 2, 2, counter37)
    assert qs == [1, 1, 1]
    assert entry.verdict == sieve.PASS
    assert entry.evidence["bound"] == 4
    with pytest.raises(ValueError):
        sieve.gonzalez_q(37, 37, 2, counter37)


def test_two_cover(pair37, counter37):
    n, entry = sieve.two_cover_sieve(pair37, 2, 1, counter37)
    assert n == -5
    assert entry.verdict == sieve.PASS
    assert entry.params == {"q": 2}


def test_degree_check(pair37):
    entry = sieve.lemma_degree_check(pair37)
    assert entry.verdict == sieve.PASS
    assert entry.evidence == {"D": 2, "2^(n+1)": 4}
    curve = EllipticCurveRec("37a", 37, [0, 0, 1, -1, 0], 1, 3)
    assert sieve.lemma_degree_check(CandidatePair(37, curve)).discards


def test_degree_check_vacuous(elliptic_db):
    pair = CandidatePair(37 * 43, elliptic_db["37a"])
    assert sieve.lemma_degree_check(pair).verdict == sieve.VACUOUS


def test_psi_check(elliptic_db, newform_db):
    entry = sieve.lemma_psi_check(37, elliptic_db["37a"], 2, newform_db)
    assert entry.verdict == sieve.PASS
    assert entry.params == {"p": 2, "e": "E", "branch": "i"}
    assert entry.evidence["e2"] == 5
    assert entry.evidence["a"] == (19, 108)
    entry = sieve.lemma_psi_check(37, elliptic_db["37a"], 37, newform_db)
    assert entry.verdict == sieve.VACUOUS
    entry = sieve.lemma_psi_check(37, None, 2, newform_db)
    assert entry.params["e"] == "worst"
    assert entry.evidence["e2"] == 9


def test_prime_powers():
    assert sieve.prime_powers(9) == [
        (2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)
    ]
    assert sieve.prime_powers(10, exclude=6) == [(5, 1), (7, 1)]


def test_candidate_pair(elliptic_db, pair37):
    assert pair37.alive
    assert pair37.status == "alive"
    pair37.trail.append(SieveEntry("two_cover", {"q": 2}, {"n": 1},
                                   sieve.DISCARD))
    assert not pair37.alive
    assert pair37.status == "discarded(two_cover(q=2) discard [n=1])"
    assert len(pair37.trail.find("two_cover", q=2)) == 1
    with pytest.raises(ValueError):
        CandidatePair(37, elliptic_db["43a"])


def test_candidate_table(newform_db, pair37):
    table = sieve.candidate_table([pair37], newform_db)
    assert list(table.columns) == ["N", "g_N", "g*_N", "M", "label"]
    row = table.iloc[0]
    assert (row["N"], row["g_N"], row["g*_N"], row["M"], row["label"]) == (
        "37", 2, 1, "N", "a"
    )


def test_run_pair_sieves(dbs, pair37):
    cfg = cfg_mod.ClassifierCfg()
    cfg.sieve.cover_max_power = 20
    sieve.run_pair_sieves(pair37, cfg, dbs)
    assert pair37.alive
    assert [e.sieve for e in pair37.trail][:7] == ["psi"] * 6 + ["degree"]
    assert len(pair37.trail.find("two_cover")) == len(sieve.prime_powers(20))


def test_run_level_gonzalez(counter37):
    cfg = cfg_mod.ClassifierCfg()
    cfg.sieve.q_primes = [2, 3, 37]
    cfg.sieve.q_max_index = 7
    trail = sieve.run_level_gonzalez(counter37.level, cfg, counter37)
    assert len(trail) == 2
    assert not trail.discarded


def test_bad_prime_reduction(elliptic_db, newform_db):
    pair = CandidatePair(37 * 43, elliptic_db["37a"])
    n, entry = sieve.bad_prime_reduction(pair, 43, 1, newform_db)
    assert n is None
    assert entry.verdict == sieve.VACUOUS
    assert entry.params == {"p": 43, "k": 1, "N/p": 37}
    with pytest.raises(ValueError):
        sieve.bad_prime_reduction(pair, 37, 1, newform_db)
    with pytest.raises(ValueError):
        sieve.bad_prime_reduction(pair, 2, 1, newform_db)


def test_enumerate_candidates_small_range(derived_orbits, elliptic_db):
    dbs = rio.Databases(rio.NewformDB(derived_orbits, [(1, 100)]),
                        elliptic_db)
    cfg = cfg_mod.ClassifierCfg()
    cfg.range.n_min, cfg.range.n_max = 1, 100
    # No level up to 100 has g* >= 2 with only these orbits
    assert sieve.enumerate_candidates(cfg, dbs) == []
    assert sieve.enumerate_levels(1, 100, [2], dbs.newform_db) == []


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_gonzalez_sums_are_monotone(counter37, p):
    qs, entry = sieve.gonzalez_q(37, p, 7, counter37)
    assert len(qs) == 8
    assert qs == sorted(qs)
    assert entry.discards == (qs[-1] > entry.evidence["bound"])
    for k in range(7):
        assert sieve.gonzalez_q(37, p, k, counter37)[0] == qs[:k + 1]
