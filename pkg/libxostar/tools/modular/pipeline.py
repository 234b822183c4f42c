"""
End-to-end classification of `X_0^*(N)` and the aggregated tables.

A level is dispatched by `g*`: levels with `g* <= 1` are reported as out
of scope, genus 2 curves go through explicit hyperelliptic models, and
higher genera go through the point-count sieves and then the canonical
ideal. Ranges are classified on a process pool; results are collected in
level order, so the output does not depend on the schedule.
"""

import concurrent.futures
import time

from libxostar import env
from libxostar.core.data import types
from libxostar.core.data.sequences import DataSequence
from libxostar.core.errors import (
    InvariantViolation, MatchError, RelationNotFoundError
)
from libxostar.core.io import base as io
from libxostar.tools.math import ntheory
from libxostar.tools.modular import canonical, models, sieve, star

LOGGER = env.logging.get_logger("libxostar.tools.modular.pipeline")

ROUTE_OUT_OF_SCOPE = "out-of-scope"
ROUTE_HYPERELLIPTIC = "hyperelliptic"
ROUTE_SIEVE = "sieve"
ROUTE_CANONICAL = "canonical"

GAMMA2_HYPERELLIPTIC = "hyperelliptic-genus-2"
GAMMA2_BIELLIPTIC = "bielliptic-rank>=1"
GAMMA2_FINITE = "finite"


###############################################################################
# Report
###############################################################################


class ClassificationReport(types.AttrHashBase, io.FileBase):

    """
    Classification result of one level.

    Parameters
    ----------
    level : `SquareFreeLevel`
        Level `N`.
    g_N, g_star : `int`
        Genera of `X_0(N)` and `X_0^*(N)`.
    route : `str`
        `"out-of-scope"`, `"hyperelliptic"`, `"sieve"` or `"canonical"`.

    Notes
    -----
    `aut_order` is `None` when the automorphism group was not determined
    (all candidate pairs sieved out and no involution test concluded).
    """

    SER_KEYS = io.FileBase.SER_KEYS + (
        "N", "g_N", "g_star", "route", "pairs", "level_trail", "bielliptic",
        "quotients", "aut_order", "gamma2_infinite", "gamma2_reason",
        "model", "involutions", "quotient_models", "notes"
    )
    HASH_KEYS = types.AttrHashBase.HASH_KEYS | {
        "N", "route", "bielliptic", "quotients", "aut_order"
    }

    def __init__(self, level, g_N, g_star, route):
        self.level = level
        self.g_N = g_N
        self.g_star = g_star
        self.route = route
        self.pairs = []
        self.level_trail = sieve.SieveTrail()
        self.bielliptic = False
        self.quotients = []
        self.aut_order = None
        self.gamma2_infinite = None
        self.gamma2_reason = None
        self.model = None
        self.involutions = []
        self.quotient_models = []
        self.notes = []

    @property
    def N(self):
        return self.level.N

    @property
    def in_scope(self):
        return self.route != ROUTE_OUT_OF_SCOPE

    def body(self):
        return io.ObjEncoder.serialize(self.attributes())

    @property
    def digest(self):
        """
        `xxh64` digest of the serialized report.
        """
        return types.digest_hex(io.dumps(self.body(), indent=None))

    def __repr__(self):
        return "<ClassificationReport N={:d} {:s} bielliptic={:s}>".format(
            self.N, self.route, str(self.bielliptic)
        )


###############################################################################
# Classification
###############################################################################


def _quotient_rank(label, elliptic_db):
    try:
        return elliptic_db[label].rank
    except KeyError:
        return None


def _attach_gamma2(report, elliptic_db):
    if report.g_star == 2:
        report.gamma2_infinite = True
        report.gamma2_reason = GAMMA2_HYPERELLIPTIC
        return
    ranks = [_quotient_rank(label, elliptic_db) for label in report.quotients]
    if report.bielliptic and any(r is not None and r >= 1 for r in ranks):
        report.gamma2_infinite = True
        report.gamma2_reason = GAMMA2_BIELLIPTIC
        return
    if report.bielliptic:
        LOGGER.warning("N={:d}: bielliptic with quotient rank {:s}, "
                       "expected rank 1".format(report.N, str(ranks)))
        report.notes.append("quotient rank {:s}".format(str(ranks)))
    report.gamma2_infinite = False
    report.gamma2_reason = GAMMA2_FINITE


def _match_quietly(inv, level, elliptic_db, report):
    try:
        inv.label = models.match_label(inv, level, elliptic_db)
    except MatchError as e:
        LOGGER.warning("N={:d}: {:s}".format(level.N, str(e)))
        report.notes.append(str(e))
    return inv.label


def _certify(report, label, how):
    for pair in report.pairs:
        if pair.label == label:
            if not pair.alive:
                raise InvariantViolation(
                    "N={:d}: bielliptic toward {:s} but {:s}".format(
                        report.N, label, pair.status
                    )
                )
            pair.certified = how
            return True
    LOGGER.warning("N={:d}: quotient {:s} not among candidate pairs"
                   .format(report.N, label))
    return False


def _classify_genus2(report, space, dbs):
    model = models.genus2_model(report.level, space)
    verdict = models.genus2_bielliptic(model)
    report.model = model
    report.aut_order = verdict.aut_order
    report.bielliptic = verdict.bielliptic
    for inv in verdict.invariants:
        label = _match_quietly(inv, report.level, dbs.elliptic_db, report)
        if label is not None:
            report.quotients.append(label)
            _certify(report, label, "genus 2 model")
    report.quotient_models = verdict.invariants


def _canonical_precision(g, cfg):
    degrees = canonical.piece_degrees(g)
    if g >= 7:
        degrees = degrees + (3,)
    return canonical.required_precision(
        g, degrees, margin=cfg.petri.margin,
        verify_factor=cfg.petri.verify_factor
    )


def _minimal_precision(g, cfg):
    i = max(canonical.piece_degrees(g) + ((3,) if g >= 7 else ()))
    return canonical.vanishing_bound(g, i) + 1 + cfg.petri.margin + 1


def petri_analysis(N, space, cfg):
    """
    Basis, graded pieces and surviving involutions of a curve of genus
    `g* >= 3`.

    Returns
    -------
    basis : `DifferentialBasis`
        Saturated basis.
    pieces : `dict(int->GradedPiece)`
        Computed pieces.
    verdicts : `list(InvolutionVerdict)`
        Surviving sign patterns.
    """
    level = ntheory.assume_level(N)
    g = space.g_star
    prec = min(_canonical_precision(g, cfg),
               max(space.min_depth() + 1, _minimal_precision(g, cfg)))
    basis = canonical.build_basis(level, space, prec)
    pieces = {
        i: canonical.graded_piece(basis, i, margin=cfg.petri.margin,
                                  verify_factor=cfg.petri.verify_factor)
        for i in canonical.piece_degrees(g)
    }
    verdicts = canonical.detect_involutions(
        level, basis, pieces, margin=cfg.petri.margin,
        verify_factor=cfg.petri.verify_factor
    )
    return basis, pieces, verdicts


def _classify_canonical(report, space, cfg, dbs):
    basis, pieces, verdicts = petri_analysis(report.level, space, cfg)
    report.route = ROUTE_CANONICAL
    report.involutions = verdicts
    if verdicts and report.level_trail.discarded:
        raise InvariantViolation(
            "N={:d}: involution {:s} survives but {:s}".format(
                report.N, str(verdicts[0].pattern),
                report.level_trail.first_failure().str_line()
            )
        )
    report.aut_order = canonical.aut_group_order(report.level, verdicts)
    for v in verdicts:
        if v.bielliptic:
            factor = basis.factors[v.bielliptic_factor]
            label = "{:d}{:s}".format(factor.level, factor.orbit.label)
            report.bielliptic = True
            report.quotients.append(label)
            _certify(report, label, "sign pattern")
            if basis.g in (3, 4):
                _check_quotient_equation(report, basis, v, pieces, label,
                                         dbs)
        elif v.fixed_genus == 2:
            try:
                report.quotient_models.append(
                    models.quotient_genus2_model(basis, v.pattern)
                )
            except RelationNotFoundError as e:
                report.notes.append(str(e))


def _check_quotient_equation(report, basis, verdict, pieces, label, dbs):
    try:
        eq = models.quotient_equation(report.level, basis, verdict.pattern,
                                      pieces)
    except (ValueError, RelationNotFoundError) as e:
        LOGGER.warning("N={:d}: no quotient equation ({:s})"
                       .format(report.N, str(e)))
        report.notes.append(str(e))
        return
    report.quotient_models.append(eq)
    matched = _match_quietly(eq.invariant, report.level, dbs.elliptic_db,
                             report)
    if matched is not None and matched != label:
        raise InvariantViolation(
            "N={:d}: pattern fixes {:s} but j matches {:s}".format(
                report.N, label, matched
            )
        )


def classify(N, cfg, dbs, full_aut=True, canonical_route=True):
    """
    Classifies `X_0^*(N)`.

    Parameters
    ----------
    N : `SquareFreeLevel` or `int`
        Level.
    cfg : `ClassifierCfg`
        Configuration.
    dbs : `Databases`
        Newform and curve tables covering the divisors of `N`.
    full_aut : `bool`
        Whether the canonical route also runs when every candidate pair
        is sieved out (to determine the automorphism group).
    canonical_route : `bool`
        Whether to run the canonical route at all; otherwise the report
        stops after the sieves.

    Returns
    -------
    report : `ClassificationReport`
        Verdicts with sieve trails.

    Raises
    ------
    DataError
        If the tables do not cover `N`.
    InvariantViolation
        If independent checks disagree.
    """
    t0 = time.perf_counter()
    level = ntheory.assume_level(N)
    space = star.star_space(level, dbs.newform_db)
    report = ClassificationReport(level, ntheory.genus_x0(level),
                                  space.g_star, ROUTE_SIEVE)
    if space.g_star <= 1:
        report.route = ROUTE_OUT_OF_SCOPE
        return report
    report.pairs = [
        sieve.CandidatePair(level, curve)
        for curve in star.candidate_quotients(level, dbs.elliptic_db,
                                              dbs.newform_db)
    ]
    if space.g_star == 2:
        report.route = ROUTE_HYPERELLIPTIC
        for pair in report.pairs:
            pair.trail.append(sieve.lemma_degree_check(pair))
        if canonical_route:
            _classify_genus2(report, space, dbs)
        _attach_gamma2(report, dbs.elliptic_db)
        return report
    counter = sieve.StarCounter(space)
    report.level_trail = sieve.run_level_gonzalez(level, cfg, counter)
    for pair in report.pairs:
        sieve.run_pair_sieves(pair, cfg, dbs, counter=counter)
    kill = report.level_trail.first_failure()
    if kill is not None:
        # no involution at all: every pair of the level is discarded
        for pair in report.pairs:
            if pair.alive or cfg.sieve.exhaustive:
                pair.trail.append(kill)
        report.aut_order = 1
        if canonical_route and cfg.sieve.exhaustive:
            _classify_canonical(report, space, cfg, dbs)
    elif canonical_route and (full_aut or any(p.alive for p in report.pairs)):
        _classify_canonical(report, space, cfg, dbs)
    _attach_gamma2(report, dbs.elliptic_db)
    LOGGER.debug("N={:d} classified in {:.2f} s".format(
        level.N, time.perf_counter() - t0
    ))
    return report


###############################################################################
# Worker pool
###############################################################################


_WORKER_STATE = {}


def _init_worker(cfg, dbs):
    _WORKER_STATE["cfg"] = cfg
    _WORKER_STATE["dbs"] = dbs


def _classify_worker(args):
    N, kwargs = args
    return classify(N, _WORKER_STATE["cfg"], _WORKER_STATE["dbs"], **kwargs)


def classify_many(levels, cfg, dbs, **kwargs):
    """
    Classifies several levels, in parallel if `cfg.run.workers > 1`.

    Returns
    -------
    reports : `list(ClassificationReport)`
        Reports ordered by level.
    """
    levels = sorted(ntheory.assume_level(N) for N in levels)
    workers = max(1, int(cfg.run.workers))
    if workers == 1 or len(levels) <= 1:
        return [classify(N, cfg, dbs, **kwargs) for N in levels]
    LOGGER.info("classifying {:d} levels on {:d} workers"
                .format(len(levels), workers))
    with concurrent.futures.ProcessPoolExecutor(
        max_workers=workers, initializer=_init_worker, initargs=(cfg, dbs)
    ) as pool:
        reports = list(pool.map(
            _classify_worker, [(N.N, kwargs) for N in levels]
        ))
    return sorted(reports, key=lambda r: r.N)


###############################################################################
# Tables
###############################################################################


def _parity_levels(cfg, dbs, parity):
    return sieve.enumerate_levels(
        cfg.range.n_min, cfg.range.n_max, cfg.sieve.psi_primes,
        dbs.newform_db, parity=parity
    )


def _screened(report):
    """
    Pairs surviving the bound and degree screens; a genus 2 level is kept
    only if all its elliptic quotients do.
    """
    screens = ("psi", "degree")
    res = []
    for pair in report.pairs:
        e = pair.trail.first_failure()
        res.append((pair, e is None or e.sieve not in screens))
    if report.g_star == 2 and not all(ok for _, ok in res):
        return []
    return [pair for pair, ok in res if ok]


def survey(cfg, dbs, parity=None, canonical_route=False, full_aut=False):
    """
    Reports of all levels passing the worst-case screen.
    """
    return classify_many(_parity_levels(cfg, dbs, parity), cfg, dbs,
                         canonical_route=canonical_route, full_aut=full_aut)


def screening_table(reports, newform_db):
    """
    Pairs surviving the bound and degree screens (columns
    `N, g_N, g*_N, M, label`).
    """
    pairs = [p for r in reports for p in _screened(r)]
    return sieve.candidate_table(pairs, newform_db)


def survivor_table(reports):
    """
    Pairs of levels with `g* >= 3` surviving every sieve (columns
    `N, g*_N, E`), ordered by `g*`.
    """
    rows = []
    for r in reports:
        if r.g_star < 3 or r.level_trail.discarded:
            continue
        for pair in r.pairs:
            if pair.alive:
                rows.append({"N": r.N, "g*_N": r.g_star, "E": pair.label})
    table = DataSequence.from_rows(rows, ["N", "g*_N", "E"])
    if len(table):
        table = table.sort_values(["g*_N", "N"], kind="stable")
        table.reset_index(drop=True, inplace=True)
    return table


def tables(which, cfg, dbs):
    """
    Tables 1 to 4: the screened candidate pairs and the sieve survivors
    for odd (1, 2) and even (3, 4) levels.
    """
    if which not in (1, 2, 3, 4):
        raise ValueError("invalid table ({:s})".format(str(which)))
    parity = "odd" if which in (1, 2) else "even"
    reports = survey(cfg, dbs, parity=parity)
    if which in (1, 3):
        return screening_table(reports, dbs.newform_db)
    return survivor_table(reports)


def reproduce_theorem1(cfg, dbs, reports=None):
    """
    Bielliptic levels grouped by genus.

    Returns
    -------
    table : `DataSequence`
        Columns `genus, N` (comma separated levels).
    reports : `list(ClassificationReport)`
        Reports of the examined levels.
    """
    if reports is None:
        reports = survey(cfg, dbs, canonical_route=True, full_aut=False)
    groups = {}
    for r in reports:
        if r.bielliptic:
            groups.setdefault(r.g_star, []).append(r.N)
    rows = [{"genus": g, "N": sorted(groups[g])} for g in sorted(groups)]
    return DataSequence.from_rows(rows, ["genus", "N"]), reports


def appendix_lists(cfg, dbs):
    """
    Square-free levels `N > 1` in the configured range with `g* = 0, 1, 2`.

    Returns
    -------
    lists : `dict(int->list(int))`
        Levels by `g*`.
    """
    res = {0: [], 1: [], 2: []}
    for level in ntheory.square_free_levels(max(2, cfg.range.n_min),
                                            cfg.range.n_max):
        gs = star.star_genus(level, dbs.newform_db)
        if gs in res:
            res[gs].append(level.N)
    return res


def reproduce_theorem2(cfg, dbs, reports=None):
    """
    Levels with infinitely many quadratic points: all `g* = 2` levels and
    the bielliptic levels with a quotient of positive rank.
    """
    if reports is None:
        _, reports = reproduce_theorem1(cfg, dbs)
    res = set(appendix_lists(cfg, dbs)[2])
    for r in reports:
        if r.g_star >= 3 and r.gamma2_infinite:
            res.add(r.N)
    return sorted(res)


def reproduce_trivial_aut(cfg, dbs, reports=None):
    """
    Automorphism groups of the examined non-hyperelliptic levels.

    Returns
    -------
    trivial : `list(int)`
        Levels with trivial automorphism group.
    nontrivial : `dict(int->(int, list(int)))`
        Non-bielliptic levels with nontrivial group: order and quotient
        genera.
    """
    if reports is None:
        _, reports = reproduce_theorem1(cfg, dbs)
    trivial, nontrivial = [], {}
    for r in reports:
        if r.g_star < 3 or r.aut_order is None:
            continue
        if r.aut_order == 1:
            trivial.append(r.N)
        elif not r.bielliptic:
            nontrivial[r.N] = (
                r.aut_order, [v.fixed_genus for v in r.involutions]
            )
    return sorted(trivial), nontrivial


###############################################################################
# Output
###############################################################################


REPORT_COLUMNS = ["N", "g_N", "g*_N", "M", "label", "bielliptic",
                  "quotients", "aut", "gamma2"]


def report_row(report):
    """
    Tabular row of a report, compatible with the screening tables.
    """
    if not report.in_scope:
        verdict = ROUTE_OUT_OF_SCOPE
    else:
        verdict = report.bielliptic
    return {
        "N": report.level.str_factorization(),
        "g_N": report.g_N,
        "g*_N": report.g_star,
        "M": "/".join(str(p.curve.conductor) for p in report.pairs),
        "label": "/".join(p.curve.iso_letter for p in report.pairs),
        "bielliptic": verdict,
        "quotients": list(report.quotients),
        "aut": report.aut_order,
        "gamma2": report.gamma2_reason,
    }


def emit(reports, fmt="tsv"):
    """
    Formats reports as text.

    Parameters
    ----------
    reports : `ClassificationReport` or `list(ClassificationReport)`
        Reports.
    fmt : `str`
        `"tsv"` (one row per level) or `"structured"` (json with
        metadata and digests).
    """
    if isinstance(reports, ClassificationReport):
        reports = [reports]
    if fmt == "tsv":
        table = DataSequence.from_rows([report_row(r) for r in reports],
                                       REPORT_COLUMNS)
        return table.str_table()
    elif fmt == "structured":
        ser = []
        for r in reports:
            d = r.body()
            d["digest"] = r.digest
            ser.append(d)
        return io.dumps(ser, meta=True)
    raise ValueError("invalid format ({:s})".format(str(fmt)))


def emit_table(table, fmt="tsv"):
    """
    Formats a `DataSequence` (or a plain object) in the output format.
    """
    if fmt == "tsv":
        if isinstance(table, DataSequence):
            return table.str_table()
        return "\n".join(str(x) for x in table)
    elif fmt == "structured":
        return io.dumps(table, meta=True)
    raise ValueError("invalid format ({:s})".format(str(fmt)))
