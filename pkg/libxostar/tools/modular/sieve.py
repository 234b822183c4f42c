"""
Elimination sieves for pairs `(N, E)` of a level and a candidate
bielliptic quotient.

All sieves are necessary conditions: a pair discarded here cannot be
bielliptic. Every check appends an entry with its numeric evidence to
the pair's :py:class:`SieveTrail`.
"""

from fractions import Fraction

from libxostar import env
from libxostar.core.data.sequences import DataSequence
from libxostar.core.errors import InvariantViolation
from libxostar.core.io.base import FileBase
from libxostar.tools.math import ntheory
from libxostar.tools.modular import frobenius, star

LOGGER = env.logging.get_logger("libxostar.tools.modular.sieve")

PASS = "pass"
DISCARD = "discard"
VACUOUS = "vacuous"


###############################################################################
# Trail
###############################################################################


class SieveEntry(FileBase):

    """
    One sieve evaluation.

    Parameters
    ----------
    sieve : `str`
        Sieve name (`"psi"`, `"degree"`, `"two_cover"`, `"gonzalez"`,
        `"bad_prime"`).
    params : `dict`
        Parameters, e.g. `{"p": 2, "k": 1}`.
    evidence : `dict`
        Numeric evidence.
    verdict : `str`
        `"pass"`, `"discard"` or `"vacuous"`.
    """

    SER_KEYS = FileBase.SER_KEYS + ("sieve", "params", "evidence", "verdict")

    def __init__(self, sieve, params, evidence, verdict):
        self.sieve = sieve
        self.params = dict(params)
        self.evidence = dict(evidence)
        self.verdict = verdict

    @property
    def discards(self):
        return self.verdict == DISCARD

    def __repr__(self):
        return "<SieveEntry {:s} {:s} {:s}>".format(
            self.sieve, str(self.params), self.verdict
        )

    def str_line(self):
        params = ",".join("{:s}={:s}".format(k, str(v))
                          for k, v in self.params.items())
        evidence = ",".join(
            "{:s}={:s}".format(k, _str_evidence(v))
            for k, v in self.evidence.items()
        )
        return "{:s}({:s}) {:s} [{:s}]".format(
            self.sieve, params, self.verdict, evidence
        )


def _str_evidence(v):
    if isinstance(v, (list, tuple)):
        return "(" + ",".join(_str_evidence(x) for x in v) + ")"
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else str(v)
    return str(v)


class SieveTrail(FileBase):

    """
    Ordered sequence of sieve evaluations of one pair or level.
    """

    SER_KEYS = FileBase.SER_KEYS + ("entries",)

    def __init__(self, entries=()):
        self.entries = list(entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def append(self, entry):
        self.entries.append(entry)
        return entry

    @property
    def discarded(self):
        return any(e.discards for e in self.entries)

    def first_failure(self):
        for e in self.entries:
            if e.discards:
                return e
        return None

    def find(self, sieve, **params):
        """
        Entries of a sieve whose parameters contain `params`.
        """
        return [
            e for e in self.entries if e.sieve == sieve
            and all(e.params.get(k) == v for k, v in params.items())
        ]


class CandidatePair(FileBase):

    """
    Level `N` with a candidate quotient `E` of conductor `M | N`.

    Parameters
    ----------
    level : `SquareFreeLevel`
        Level `N`.
    curve : `EllipticCurveRec`
        Candidate quotient.
    """

    SER_KEYS = FileBase.SER_KEYS + ("level", "label", "status", "trail")

    def __init__(self, level, curve, trail=None):
        self.level = ntheory.assume_level(level)
        self.curve = curve
        if self.level.N % curve.conductor:
            raise ValueError("conductor does not divide level ({:s}, {:d})"
                             .format(curve.label, self.level.N))
        self.trail = SieveTrail() if trail is None else trail
        self.certified = None

    @property
    def key(self):
        return (self.level.N, self.curve.label)

    @property
    def label(self):
        return self.curve.label

    @property
    def alive(self):
        return not self.trail.discarded

    @property
    def status(self):
        if self.alive:
            return "alive"
        e = self.trail.first_failure()
        return "discarded({:s})".format(e.str_line())

    def __repr__(self):
        return "<CandidatePair N={:d} E={:s} {:s}>".format(
            self.level.N, self.curve.label,
            "alive" if self.alive else "discarded"
        )


###############################################################################
# Point counter
###############################################################################


class StarCounter(object):

    """
    Point counts of `X_0^*(N)` over `F_{p^k}` with the Frobenius
    polynomials cached per prime.

    Parameters
    ----------
    space : `StarSpace`
        Decomposition of `J_0^*(N)`.
    """

    def __init__(self, space):
        self.space = space
        self._frob = {}

    @property
    def level(self):
        return self.space.level

    def frobenius(self, p):
        if p not in self._frob:
            fp = frobenius.frobenius_poly(self.level, p, self.space)
            fp.check()
            self._frob[p] = fp
        return self._frob[p]

    def count(self, p, k):
        return frobenius.count_star_points(self.frobenius(p), k)


###############################################################################
# Bound checks
###############################################################################


def _e2_bound(curve, p):
    """
    `|E(F_{p^2})|` if `p` does not divide the conductor, the worst case
    `(p+1)^2` without a curve and `p^2 + 1` if `p` divides the conductor.
    """
    if curve is None:
        return (p + 1)**2, "worst"
    if curve.conductor % p == 0:
        return p * p + 1, "p|M"
    tr = frobenius.elliptic_ap(curve, p)
    return frobenius.count_elliptic_points(tr, 2), "E"


def _psi_inequalities(level, g, g_star, e2, p, power):
    psi_lhs = Fraction(ntheory.psi(level), 2**(power - 1))
    psi_rhs = Fraction(12 * (2 * e2 - 1), p - 1)
    gs_rhs = Fraction(2 * e2, p - 1)
    g_rhs = Fraction(2**power * e2, p - 1)
    return {
        "a": (psi_lhs, psi_rhs),
        "b": (g_star, gs_rhs),
        "c": (g, g_rhs),
    }


def lemma_psi_check(N, curve, p, newform_db):
    """
    Bound screening of a pair at a prime.

    For `p` not dividing `N`, with `e = |E(F_{p^2})|`::

        psi(N)/2^n <= 12 (2e - 1)/(p - 1),
        g*_N <= 2e/(p - 1),   g_N <= 2^(n+1) e/(p - 1).

    For `p | N` either `g*_{N/p} <= 1` or the same inequalities hold for
    `N/p` (with `2^(n-1)` and `2^n`), where `e` is replaced by `p^2 + 1`
    when `p` divides the conductor of `E`.

    Parameters
    ----------
    N : `SquareFreeLevel` or `int`
        Level.
    curve : `EllipticCurveRec` or `None`
        Candidate quotient; `None` uses the worst case `e = (p+1)^2`.
    p : `int`
        Prime.
    newform_db : `NewformDB`
        Orbit table for `g*`.

    Returns
    -------
    entry : `SieveEntry`
        Verdict with both sides of every inequality.

    Examples
    --------
    The worst case at `p = 2` bounds `psi(N)/2^n` by `12 * 17 = 204`.
    """
    level = ntheory.assume_level(N)
    if not ntheory.is_prime(p):
        raise ValueError("not a prime ({:d})".format(p))
    e2, source = _e2_bound(curve, p)
    params = {"p": p, "e": source}
    if level.N % p:
        ineq = _psi_inequalities(
            level, ntheory.genus_x0(level), star.star_genus(level, newform_db),
            e2, p, level.n + 1
        )
        branch = "i"
    else:
        sub = level.quotient(p)
        gs_sub = star.star_genus(sub, newform_db)
        if gs_sub <= 1:
            return SieveEntry("psi", dict(params, branch="ii"),
                              {"g*_N/p": gs_sub}, VACUOUS)
        ineq = _psi_inequalities(
            sub, ntheory.genus_x0(sub), gs_sub, e2, p, level.n
        )
        branch = "ii"
    params["branch"] = branch
    ok = all(lhs <= rhs for lhs, rhs in ineq.values())
    evidence = {"e2": e2}
    evidence.update(ineq)
    return SieveEntry("psi", params, evidence, PASS if ok else DISCARD)


def lemma_degree_check(pair):
    """
    Modular-degree divisibility: if the conductor of `E` equals `N`, the
    degree `D` of the optimal parametrization divides `2^(n+1)`.
    """
    level, curve = pair.level, pair.curve
    if curve.conductor != level.N:
        return SieveEntry("degree", {}, {"M": curve.conductor}, VACUOUS)
    bound = 2**(level.n + 1)
    ok = bound % curve.modular_degree == 0
    return SieveEntry(
        "degree", {}, {"D": curve.modular_degree, "2^(n+1)": bound},
        PASS if ok else DISCARD
    )


###############################################################################
# Point-count sieves
###############################################################################


def closed_point_parities(counts):
    """
    Parities of the numbers of closed points of each degree.

    Parameters
    ----------
    counts : `list(int)`
        `counts[d-1] = |X(F_{p^d})|`, `d = 1, ..., n_max`.

    Returns
    -------
    parities : `list(int)`
        `P(n) = (sum_{d|n} mu(n/d) |X(F_{p^d})| / n) mod 2`.

    Raises
    ------
    InvariantViolation
        If a Moebius sum is not divisible by `n`.
    """
    res = []
    for n in range(1, len(counts) + 1):
        total = sum(
            ntheory.moebius(n // d) * counts[d - 1]
            for d in range(1, n + 1) if n % d == 0
        )
        if total % n:
            raise InvariantViolation(
                "closed point count not integral (n={:d}, sum={:d})"
                .format(n, total)
            )
        res.append((total // n) % 2)
    return res


def gonzalez_q(N, p, k_max, counter):
    """
    Involution-parity sums.

    With `P(n)` the parity of the number of degree-`n` closed points,
    `Q(2k+1) = sum_{j<=k} (2j+1) P(2j+1)`. A curve with an involution
    over `Q` satisfies `Q(2k+1) <= 2 g* + 2` for all `k`.

    Parameters
    ----------
    N : `SquareFreeLevel` or `int`
        Level.
    p : `int`
        Prime not dividing `N`.
    k_max : `int`
        Computes `Q(1), Q(3), ..., Q(2 k_max + 1)`.
    counter : `StarCounter`
        Point counts of `X_0^*(N)`.

    Returns
    -------
    qs : `list(int)`
        `Q(2k+1)` for `k = 0, ..., k_max`.
    entry : `SieveEntry`
        Discards as soon as some `Q(2k+1) > 2 g* + 2`.
    """
    level = ntheory.assume_level(N)
    if level.N % p == 0:
        raise ValueError("prime divides level ({:d}, {:d})"
                         .format(p, level.N))
    n_max = 2 * k_max + 1
    counts = [counter.count(p, d) for d in range(1, n_max + 1)]
    parities = closed_point_parities(counts)
    qs, acc = [], 0
    for k in range(k_max + 1):
        acc += (2 * k + 1) * parities[2 * k]
        qs.append(acc)
    bound = 2 * counter.space.g_star + 2
    evidence = {"bound": bound}
    verdict = PASS
    for k, q in enumerate(qs):
        if q > bound:
            evidence["index"] = 2 * k + 1
            evidence["Q"] = q
            verdict = DISCARD
            break
    if verdict == PASS:
        evidence["Q"] = qs[-1]
        evidence["index"] = n_max
    return qs, SieveEntry("gonzalez", {"p": p, "k_max": k_max},
                          evidence, verdict)


def two_cover_value(counter, curve, p, k):
    """
    `n(N, E, p^k) = |X_0^*(N)(F_{p^k})| - 2 |E(F_{p^k})|`.
    """
    tr = frobenius.elliptic_ap(curve, p)
    return counter.count(p, k) - 2 * frobenius.count_elliptic_points(tr, k)


def two_cover_sieve(pair, p, k, counter):
    """
    Degree-2 cover point-count sieve.

    Parameters
    ----------
    pair : `CandidatePair`
        Pair `(N, E)`.
    p : `int`
        Prime not dividing `N`.
    k : `int`
        Extension degree.
    counter : `StarCounter`
        Point counts of `X_0^*(N)`.

    Returns
    -------
    n : `int` or `None`
        `|X(F_{p^k})| - 2 |E(F_{p^k})|`, `None` if vacuous (`g* = 0`).
    entry : `SieveEntry`
        Discards when `n > 0`.
    """
    if pair.level.N % p == 0:
        raise ValueError("prime divides level ({:d}, {:d})"
                         .format(p, pair.level.N))
    params = {"q": p**k}
    if counter.space.g_star == 0:
        return None, SieveEntry("two_cover", params, {}, VACUOUS)
    n = two_cover_value(counter, pair.curve, p, k)
    return n, SieveEntry("two_cover", params, {"n": n},
                         DISCARD if n > 0 else PASS)


def bad_prime_reduction(pair, p, k, newform_db, counter=None):
    """
    Two-cover sieve at a prime dividing `N`.

    The normalization of the reduction of `X_0^*(N)` at `p | N` is the
    reduction of `X_0^*(N/p)`, so `n(N/p, E, p^k) > 0` discards `(N, E)`.

    Parameters
    ----------
    pair : `CandidatePair`
        Pair `(N, E)`.
    p : `int`
        Prime dividing `N` but not the conductor of `E`.
    k : `int`
        Extension degree.
    newform_db : `NewformDB`
        Orbit table for `X_0^*(N/p)`.
    counter : `StarCounter` or `None`
        Counter of `X_0^*(N/p)` if already built.

    Returns
    -------
    n : `int` or `None`
        `n(N/p, E, p^k)`, `None` if vacuous.
    entry : `SieveEntry`
        Discards when `n > 0`.

    Raises
    ------
    ValueError
        If `p` does not divide `N` or divides the conductor.
    """
    level, curve = pair.level, pair.curve
    if level.N % p:
        raise ValueError("prime does not divide level ({:d}, {:d})"
                         .format(p, level.N))
    if curve.conductor % p == 0:
        raise ValueError("prime divides conductor ({:d}, {:s})"
                         .format(p, curve.label))
    sub = level.quotient(p)
    params = {"p": p, "k": k, "N/p": sub.N}
    if counter is None:
        counter = StarCounter(star.star_space(sub, newform_db))
    if counter.space.g_star <= 1:
        return None, SieveEntry("bad_prime", params,
                                {"g*_N/p": counter.space.g_star}, VACUOUS)
    n = two_cover_value(counter, curve, p, k)
    return n, SieveEntry("bad_prime", params, {"n": n},
                         DISCARD if n > 0 else PASS)


###############################################################################
# Enumeration and per-pair runs
###############################################################################


def prime_powers(q_max, exclude=1):
    """
    Prime powers `(p, k)` with `p^k <= q_max` and `p` not dividing
    `exclude`, ordered by `p^k`.
    """
    res = []
    for p in ntheory.primes_upto(q_max):
        if exclude % p == 0:
            continue
        q, k = p, 1
        while q <= q_max:
            res.append((p, k))
            q, k = q * p, k + 1
    return sorted(res, key=lambda pk: pk[0]**pk[1])


def passes_worst_case(level, primes, newform_db):
    """
    Whether a level passes the worst-case bound screen at all scheduled
    primes.
    """
    return not any(
        lemma_psi_check(level, None, p, newform_db).discards for p in primes
    )


def enumerate_levels(n_min, n_max, primes, newform_db, parity=None):
    """
    Levels with at least two prime factors, `g* >= 2` and passing the
    worst-case screen.

    Parameters
    ----------
    n_min, n_max : `int`
        Inclusive range.
    primes : `list(int)`
        Screening primes.
    newform_db : `NewformDB`
        Orbit table covering the range.
    parity : `None` or `"odd"` or `"even"`
        Restriction on `N`.

    Returns
    -------
    levels : `list(SquareFreeLevel)`
        Surviving levels, ascending.
    """
    res = []
    for level in ntheory.square_free_levels(n_min, n_max, min_factors=2,
                                            parity=parity):
        if star.star_genus(level, newform_db) < 2:
            continue
        if passes_worst_case(level, primes, newform_db):
            res.append(level)
    LOGGER.info("{:d} levels in [{:d}, {:d}] pass the bound screen"
                .format(len(res), n_min, n_max))
    return res


def enumerate_candidates(cfg, dbs, parity=None):
    """
    Candidate pairs over the configured level range.

    Parameters
    ----------
    cfg : `ClassifierCfg`
        Uses `range` and `sieve.psi_primes`.
    dbs : `Databases`
        Loaded tables.
    parity : `None` or `"odd"` or `"even"`
        Restriction on `N`.

    Returns
    -------
    pairs : `list(CandidatePair)`
        Pairs ordered by level, conductor and label.
    """
    pairs = []
    for level in enumerate_levels(cfg.range.n_min, cfg.range.n_max,
                                  cfg.sieve.psi_primes, dbs.newform_db,
                                  parity=parity):
        for curve in star.candidate_quotients(level, dbs.elliptic_db,
                                              dbs.newform_db):
            pairs.append(CandidatePair(level, curve))
    return pairs


def candidate_table(pairs, newform_db):
    """
    Table with the columns `N, g_N, g*_N, M, label`.
    """
    rows = []
    for pair in pairs:
        rows.append({
            "N": pair.level.str_factorization(),
            "g_N": ntheory.genus_x0(pair.level),
            "g*_N": star.star_genus(pair.level, newform_db),
            "M": "N" if pair.curve.conductor == pair.level.N
                 else pair.curve.conductor,
            "label": pair.curve.iso_letter,
        })
    return DataSequence.from_rows(rows, ["N", "g_N", "g*_N", "M", "label"])


def run_pair_sieves(pair, cfg, dbs, counter=None):
    """
    Runs the per-pair sieves in the order psi, degree, two-cover,
    bad-prime.

    Stops at the first discarding entry unless `cfg.sieve.exhaustive`.

    Parameters
    ----------
    pair : `CandidatePair`
        Pair whose trail is extended.
    cfg : `ClassifierCfg`
        Schedules.
    dbs : `Databases`
        Loaded tables.
    counter : `StarCounter` or `None`
        Counter of `X_0^*(N)`.

    Returns
    -------
    pair : `CandidatePair`
        The same pair.
    """
    level, curve = pair.level, pair.curve
    exhaustive = cfg.sieve.exhaustive
    if counter is None:
        counter = StarCounter(star.star_space(level, dbs.newform_db))

    def _record(entry):
        pair.trail.append(entry)
        if entry.discards:
            LOGGER.info("N={:d} E={:s} discarded by {:s}".format(
                level.N, curve.label, entry.str_line()
            ))
        return entry.discards and not exhaustive

    for p in cfg.sieve.psi_primes:
        if _record(lemma_psi_check(level, curve, p, dbs.newform_db)):
            return pair
    if _record(lemma_degree_check(pair)):
        return pair
    for p, k in prime_powers(cfg.sieve.cover_max_power, exclude=level.N):
        _, entry = two_cover_sieve(pair, p, k, counter)
        if _record(entry):
            return pair
    sub_counters = {}
    for p in level.primes:
        if curve.conductor % p == 0:
            continue
        k = 1
        while p**k <= cfg.sieve.bad_prime_max_power:
            if p not in sub_counters:
                sub_counters[p] = StarCounter(
                    star.star_space(level.quotient(p), dbs.newform_db)
                )
            _, entry = bad_prime_reduction(pair, p, k, dbs.newform_db,
                                           counter=sub_counters[p])
            if _record(entry):
                return pair
            k += 1
    return pair


def run_level_gonzalez(level, cfg, counter):
    """
    Involution-parity sieve at the scheduled primes not dividing `N`.

    Returns
    -------
    trail : `SieveTrail`
        One entry per prime (stops after a kill unless exhaustive).
    """
    trail = SieveTrail()
    k_max = (cfg.sieve.q_max_index - 1) // 2
    for p in cfg.sieve.q_primes:
        if level.N % p == 0:
            continue
        _, entry = gonzalez_q(level, p, k_max, counter)
        trail.append(entry)
        if entry.discards:
            LOGGER.info("N={:d} has no involution: {:s}".format(
                level.N, entry.str_line()
            ))
            if not cfg.sieve.exhaustive:
                break
    return trail
