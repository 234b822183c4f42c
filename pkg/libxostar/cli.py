"""
Command line interface `xostar`.

Exit codes: 0 on success, 1 on data errors (malformed, inconsistent or
missing tables and files), 2 on internal invariant violations and
unexpected failures.
"""

import argparse
import sys

from libxostar import env
from libxostar.core import cfg as cfg_mod
from libxostar.core.errors import DataError
from libxostar.core.io import base as io
from libxostar.core.io import records as rio
from libxostar.tools.math import ntheory, poly
from libxostar.tools.modular import (
    canonical, frobenius, models, pipeline, sieve, star
)

LOGGER = env.logging.get_logger("libxostar.cli")

EXIT_OK = 0
EXIT_DATA = 1
EXIT_INTERNAL = 2


###############################################################################
# Argument types
###############################################################################


def _level(s):
    try:
        return ntheory.SquareFreeLevel(int(s))
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _prime(s):
    p = int(s)
    if not ntheory.is_prime(p):
        raise argparse.ArgumentTypeError("not a prime ({:d})".format(p))
    return p


def _positive(s):
    k = int(s)
    if k < 1:
        raise argparse.ArgumentTypeError("not positive ({:d})".format(k))
    return k


###############################################################################
# Context
###############################################################################


class Context(object):

    """
    Configuration and lazily loaded tables of one invocation.
    """

    def __init__(self, args):
        self.args = args
        self.cfg = cfg_mod.load_classifier_cfg(
            getattr(args, "config", None),
            use_user_config=not getattr(args, "no_user_config", False)
        )
        if args.newform_db is not None:
            self.cfg.data.newform_db = args.newform_db
        if args.curve_db is not None:
            self.cfg.data.curve_db = args.curve_db
        if args.workers is not None:
            self.cfg.run.workers = args.workers
        if args.exhaustive:
            self.cfg.sieve.exhaustive = True
        if args.format is not None:
            self.cfg.run.format = args.format
        rng = getattr(args, "range", None)
        if rng:
            self.cfg.range.n_min, self.cfg.range.n_max = rng
        self._dbs = None

    @property
    def fmt(self):
        return self.cfg.run.format

    @property
    def dbs(self):
        if self._dbs is None:
            self._dbs = rio.load_databases(self.cfg.newform_path(),
                                           self.cfg.curve_path())
        return self._dbs

    def out(self, text):
        print(text)


def _emit_mapping(ctx, d):
    if ctx.fmt == "structured":
        ctx.out(io.dumps(d, meta=True))
    else:
        for k, v in d.items():
            ctx.out("{:s}\t{:s}".format(str(k), _str_value(v)))


def _str_value(v):
    if isinstance(v, (list, tuple)):
        return ",".join(_str_value(x) for x in v)
    return str(io.ObjEncoder.serialize(v))


###############################################################################
# Commands
###############################################################################


def cmd_classify(ctx):
    args = ctx.args
    if args.level is not None:
        reports = [pipeline.classify(args.level, ctx.cfg, ctx.dbs)]
    else:
        levels = [
            lv for lv in ntheory.square_free_levels(
                max(2, ctx.cfg.range.n_min), ctx.cfg.range.n_max
            )
        ]
        reports = pipeline.classify_many(levels, ctx.cfg, ctx.dbs)
    ctx.out(pipeline.emit(reports, fmt=ctx.fmt))


def cmd_table(ctx):
    table = pipeline.tables(ctx.args.table, ctx.cfg, ctx.dbs)
    ctx.out(pipeline.emit_table(table, fmt=ctx.fmt))


def cmd_theorem1(ctx):
    table, _ = pipeline.reproduce_theorem1(ctx.cfg, ctx.dbs)
    ctx.out(pipeline.emit_table(table, fmt=ctx.fmt))


def cmd_theorem2(ctx):
    levels = pipeline.reproduce_theorem2(ctx.cfg, ctx.dbs)
    _emit_mapping(ctx, {"count": len(levels), "N": levels})


def cmd_trivial_aut(ctx):
    trivial, nontrivial = pipeline.reproduce_trivial_aut(ctx.cfg, ctx.dbs)
    d = {"trivial": trivial}
    for N, (order, genera) in nontrivial.items():
        d["{:d}".format(N)] = "order {:d}, quotient genus {:s}".format(
            order, ",".join(str(g) for g in genera)
        )
    _emit_mapping(ctx, d)


def cmd_appendix(ctx):
    lists = pipeline.appendix_lists(ctx.cfg, ctx.dbs)
    _emit_mapping(ctx, {"g*={:d}".format(k): v for k, v in lists.items()})


def cmd_genus(ctx):
    level = ctx.args.level
    space = star.star_space(level, ctx.dbs.newform_db)
    _emit_mapping(ctx, {
        "N": level.str_factorization(),
        "g_N": ntheory.genus_x0(level),
        "g*_N": space.g_star,
        "psi": ntheory.psi(level),
        "factors": [f.name for f in space.factors],
        "dims": list(space.dims),
        "fixed_points": ntheory.riemann_hurwitz_fixed_points(
            level, space.g_star
        ),
    })


def cmd_points(ctx):
    args = ctx.args
    space = star.star_space(args.level, ctx.dbs.newform_db)
    fp = frobenius.frobenius_poly(args.level, args.p, space)
    fp.check()
    _emit_mapping(ctx, {
        "N": args.level.N, "p": args.p, "k": args.k,
        "R_p": poly.str_poly(fp.poly()),
        "points": frobenius.count_star_points(fp, args.k),
    })


def cmd_sieve(ctx):
    args = ctx.args
    report = pipeline.classify(args.level, ctx.cfg, ctx.dbs,
                               canonical_route=False)
    pairs = [p for p in report.pairs
             if args.label is None or p.label == args.label]
    if args.label is not None and not pairs:
        raise DataError("no candidate pair {:s} at level {:d}"
                        .format(args.label, args.level.N))
    if ctx.fmt == "structured":
        ctx.out(io.dumps({"level_trail": report.level_trail, "pairs": pairs},
                         meta=True))
        return
    for entry in report.level_trail:
        ctx.out("{:d}\t-\t{:s}".format(report.N, entry.str_line()))
    for pair in pairs:
        for entry in pair.trail:
            ctx.out("{:d}\t{:s}\t{:s}".format(report.N, pair.label,
                                              entry.str_line()))
        ctx.out("{:d}\t{:s}\t{:s}".format(report.N, pair.label, pair.status))


def cmd_petri(ctx):
    level = ctx.args.level
    space = star.star_space(level, ctx.dbs.newform_db)
    if space.g_star < 3:
        raise DataError("canonical model requires g* >= 3 ({:d}, g*={:d})"
                        .format(level.N, space.g_star))
    basis, pieces, verdicts = pipeline.petri_analysis(level, space, ctx.cfg)
    if ctx.fmt == "structured":
        ctx.out(io.dumps({
            "basis": basis, "pieces": [pieces[i] for i in sorted(pieces)],
            "involutions": verdicts,
            "aut_order": canonical.aut_group_order(level, verdicts),
        }, meta=True))
        return
    for line in basis.provenance():
        ctx.out(line)
    for i in sorted(pieces):
        ctx.out("L_{:d}: dim {:d}".format(i, pieces[i].dim))
        for s in pieces[i].polynomials:
            ctx.out("  " + s)
    for v in verdicts:
        ctx.out("involution {:s}: g_u={:d}{:s} ({:s})".format(
            str(v.pattern), v.fixed_genus,
            ", bielliptic" if v.bielliptic else "", v.resolution
        ))
    ctx.out("aut order {:d}".format(
        canonical.aut_group_order(level, verdicts)
    ))


def cmd_model(ctx):
    level = ctx.args.level
    dbs = ctx.dbs
    space = star.star_space(level, dbs.newform_db)
    res = {"N": level.N}
    if space.g_star == 2:
        model = models.genus2_model(level, space)
        verdict = models.genus2_bielliptic(model)
        res["model"] = model.equation
        res["bielliptic"] = verdict.bielliptic
        for q, inv in zip(verdict.quotients, verdict.invariants):
            try:
                inv.label = models.match_label(inv, level, dbs.elliptic_db)
            except LookupError as e:
                LOGGER.warning(str(e))
            res[q.origin] = "{:s}; j = {:s}; {:s}".format(
                q.equation, str(inv.j), str(inv.label)
            )
    elif space.g_star >= 3:
        basis, pieces, verdicts = pipeline.petri_analysis(level, space,
                                                          ctx.cfg)
        for v in verdicts:
            key = "involution {:s}".format(str(v.pattern))
            if v.bielliptic:
                eq = models.quotient_equation(level, basis, v.pattern,
                                              pieces)
                try:
                    eq.invariant.label = models.match_label(
                        eq.invariant, level, dbs.elliptic_db
                    )
                except LookupError as e:
                    LOGGER.warning(str(e))
                res[key] = "{:s} = 0; {:s}; j = {:s}; {:s}".format(
                    eq.affine, eq.quartic.equation, str(eq.invariant.j),
                    str(eq.invariant.label)
                )
                if eq.plane_model is not None:
                    res["plane model"] = eq.plane_model
                if eq.plane_cubic is not None:
                    res["plane cubic"] = eq.plane_cubic
            elif v.fixed_genus == 2:
                res[key] = models.quotient_genus2_model(
                    basis, v.pattern
                ).equation
    else:
        raise DataError("no model for g* = {:d} (N={:d})"
                        .format(space.g_star, level.N))
    _emit_mapping(ctx, res)


def cmd_enumerate(ctx):
    parity = "odd" if ctx.args.odd else ("even" if ctx.args.even else None)
    pairs = sieve.enumerate_candidates(ctx.cfg, ctx.dbs, parity=parity)
    table = sieve.candidate_table(pairs, ctx.dbs.newform_db)
    ctx.out(pipeline.emit_table(table, fmt=ctx.fmt))


def cmd_validate_db(ctx):
    newform_db = rio.load_newform_db(ctx.cfg.newform_path(), strict=True)
    elliptic_db = rio.load_elliptic_db(ctx.cfg.curve_path(), strict=True)
    for curve in elliptic_db:
        if newform_db.covers(curve.conductor):
            star.attached_orbit(curve, newform_db)
    _emit_mapping(ctx, {
        "orbits": len(newform_db), "levels": len(newform_db.levels()),
        "curves": len(elliptic_db), "status": "ok",
    })


def cmd_derive_newforms(ctx):
    args = ctx.args
    elliptic_db = rio.load_elliptic_db(args.curves or ctx.cfg.curve_path())
    orbits = star.derive_orbits(elliptic_db, p_max=args.p_max)
    rio.dump_newform_db(args.output, orbits, kind="ap")
    LOGGER.info("wrote {:d} orbits to {:s}".format(len(orbits), args.output))


###############################################################################
# Parser
###############################################################################


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="json or ini configuration file")
    common.add_argument("--no-user-config", action="store_true",
                        help="ignore ~/.libxostar/config.json")
    common.add_argument("--newform-db", help="newforms.nfd path")
    common.add_argument("--curve-db", help="curves.ecd path")
    common.add_argument("--format", choices=("tsv", "structured"))
    common.add_argument("--workers", type=_positive)
    common.add_argument("--exhaustive", action="store_true",
                        help="run every sieve instead of stopping early")
    common.add_argument("-v", "--verbose", action="count", default=0)
    common.add_argument("-q", "--quiet", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="xostar",
        description="Bielliptic quotient modular curves X_0^*(N)."
    )
    parser.add_argument("--version", action="version",
                        version=env.XOSTAR_VERSION)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common])
    p.add_argument("level", type=_level, nargs="?")
    p.add_argument("--range", type=int, nargs=2, metavar=("A", "B"))
    p.set_defaults(func=cmd_classify)
    for k in (1, 2, 3, 4):
        p = sub.add_parser("table{:d}".format(k), parents=[common])
        p.add_argument("--range", type=int, nargs=2, metavar=("A", "B"))
        p.set_defaults(func=cmd_table, table=k)
    for name, func in (("theorem1", cmd_theorem1),
                       ("theorem2", cmd_theorem2),
                       ("trivial-aut", cmd_trivial_aut),
                       ("appendix", cmd_appendix)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--range", type=int, nargs=2, metavar=("A", "B"))
        p.set_defaults(func=func)
    for name, func in (("genus", cmd_genus), ("petri", cmd_petri),
                       ("model", cmd_model)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("level", type=_level)
        p.set_defaults(func=func)
    p = sub.add_parser("points", parents=[common])
    p.add_argument("level", type=_level)
    p.add_argument("p", type=_prime)
    p.add_argument("k", type=_positive)
    p.set_defaults(func=cmd_points)
    p = sub.add_parser("sieve", parents=[common])
    p.add_argument("level", type=_level)
    p.add_argument("label", nargs="?")
    p.set_defaults(func=cmd_sieve)
    p = sub.add_parser("enumerate", parents=[common])
    group = p.add_mutually_exclusive_group()
    group.add_argument("--odd", action="store_true")
    group.add_argument("--even", action="store_true")
    p.add_argument("--range", type=int, nargs=2, metavar=("A", "B"))
    p.set_defaults(func=cmd_enumerate)
    p = sub.add_parser("validate-db", parents=[common])
    p.set_defaults(func=cmd_validate_db)
    p = sub.add_parser("derive-newforms", parents=[common])
    p.add_argument("curves", nargs="?", help="curves.ecd (default: config)")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--p-max", type=_positive, default=star.LINK_PRIME_BOUND)
    p.set_defaults(func=cmd_derive_newforms)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    verbosity = args.verbose - args.quiet
    if verbosity > 0:
        env.logging.set_level("DEBUG")
    elif verbosity < 0:
        env.logging.set_level("ERROR")
    if args.command == "classify" and (args.level is None) == (
        args.range is None
    ):
        parser.error("classify takes either N or --range A B")
    try:
        ctx = Context(args)
        args.func(ctx)
    except (DataError, OSError) as e:
        LOGGER.error(str(e))
        return EXIT_DATA
    except Exception as e:
        LOGGER.error("{:s}: {:s}".format(type(e).__name__, str(e)))
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
