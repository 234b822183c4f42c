"""
Line-oriented dataset files.

Both formats are UTF-8 text with one record per line, `#` comments, `:`
separated fields, comma-separated vectors and rationals written `p/q`.
The first content line is the format header, further `!` lines are
directives.

`newforms.nfd`::

    !nfd 1
    !levels 1-3000
    # level:label:dim:minpoly:al_signs:kind:coefficients
    37:a:1:0,1:37=+1:ap:-2;-3;-2;-1;-5;-2;0;0;2;6;-4;-1;-9;2;-9

* `minpoly` lists the monic integer Hecke polynomial, lowest degree first
  (`0,1` is the field `Q`).
* `al_signs` lists `q=+1` / `q=-1` for every prime `q | level`.
* `kind` is `an` (coefficients `a_1, a_2, ...`) or `ap` (coefficients
  `a_p` for the consecutive primes `2, 3, 5, ...`).
* `coefficients` are `;`-separated Hecke-field elements, each a
  comma-separated power-basis vector.

`curves.ecd`::

    !ecd 1
    # label:conductor:ainvs:rank:modular_degree
    37a:37:0,0,1,-1,0:1:2
"""

import math
import os

from libxostar import env
from libxostar.core.data.records import (
    EllipticCurveRec, HeckeField, NewformOrbit, hecke_expand
)
from libxostar.core.errors import (
    DataError, MissingLevelError, ParseError, ValidationError
)
from libxostar.core.util import misc
from libxostar.tools.math import ntheory, poly

LOGGER = env.logging.get_logger("libxostar.core.io.records")

NFD_HEADER = "!nfd 1"
ECD_HEADER = "!ecd 1"


###############################################################################
# Generic line reader
###############################################################################


def iter_lines(file_path, header):
    """
    Iterates over the content lines of a dataset file.

    Parameters
    ----------
    file_path : `str`
        Dataset file.
    header : `str`
        Required format header line.

    Yields
    ------
    line_no : `int`
        One-based line number.
    line : `str`
        Stripped content line (directives keep their leading `!`).

    Raises
    ------
    ParseError
        If the header is missing or wrong.
    """
    if not os.path.isfile(file_path):
        raise DataError("file not found ({:s})".format(str(file_path)))
    seen_header = False
    with open(file_path, "r", encoding="utf-8") as f:
        for line_no, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if not seen_header:
                if line != header:
                    raise ParseError(
                        "missing format header {:s}".format(header),
                        file_path, line_no
                    )
                seen_header = True
                continue
            yield line_no, line
    if not seen_header:
        raise ParseError("missing format header {:s}".format(header),
                         file_path)


def _parse_int(s, what, file_path, line_no):
    try:
        return int(s)
    except ValueError:
        raise ParseError("invalid {:s} ({:s})".format(what, s),
                         file_path, line_no)


def _parse_vector(s, file_path, line_no):
    try:
        return [misc.cv_fraction(x) for x in misc.split_strip(s, ",")]
    except ValueError as e:
        raise ParseError(str(e), file_path, line_no)


###############################################################################
# Newform orbits
###############################################################################


class NewformDB(object):

    """
    Immutable table of newform orbits indexed by `(level, label)`.

    Parameters
    ----------
    orbits : `Iter[NewformOrbit]`
        Orbits; keys must be unique.
    coverage : `Iter[(int, int)]`
        Inclusive level ranges for which the table is complete.
        If empty, exactly the levels carrying a record count as covered.
    """

    def __init__(self, orbits, coverage=()):
        self._orbits = {}
        self._by_level = {}
        for o in orbits:
            if o.key in self._orbits:
                raise ValidationError(o.name, "unique orbit key")
            self._orbits[o.key] = o
            self._by_level.setdefault(o.level, []).append(o)
        for level in self._by_level:
            self._by_level[level].sort(key=lambda o: o.label)
        self.coverage = tuple(sorted((int(a), int(b)) for a, b in coverage))

    def __len__(self):
        return len(self._orbits)

    def __iter__(self):
        for key in sorted(self._orbits):
            yield self._orbits[key]

    def __getitem__(self, key):
        return self._orbits[key]

    def covers(self, level):
        if self.coverage:
            return any(a <= level <= b for a, b in self.coverage)
        return level in self._by_level

    def orbits_at(self, level):
        """
        All orbits at a level, sorted by label.

        Raises
        ------
        MissingLevelError
            If the level is not covered.
        """
        level = int(level)
        if not self.covers(level):
            raise MissingLevelError(level)
        return list(self._by_level.get(level, []))

    def levels(self):
        return sorted(self._by_level)


def _check_orbit(orbit, check_multiplicativity):
    field = orbit.field
    if not poly.is_irreducible(field.poly()):
        raise ValidationError(orbit.name, "irreducible Hecke polynomial")
    if orbit.dim != field.degree:
        raise ValidationError(orbit.name, "dimension equals Hecke degree")
    if not ntheory.is_squarefree(orbit.level):
        raise ValidationError(orbit.name, "square-free level")
    primes = list(ntheory.factorint_dict(orbit.level).keys())
    if sorted(orbit.al_signs) != sorted(primes):
        raise ValidationError(orbit.name, "Atkin-Lehner sign per prime",
                              str(sorted(orbit.al_signs)))
    if any(s not in (1, -1) for s in orbit.al_signs.values()):
        raise ValidationError(orbit.name, "Atkin-Lehner signs are +-1")
    for v in orbit.coeffs:
        if len(v) != orbit.dim:
            raise ValidationError(orbit.name, "coefficient vector length")
    if orbit.depth < 1 or orbit.coeffs[0] != field.one():
        raise ValidationError(orbit.name, "a_1 = 1")
    for q, s in orbit.al_signs.items():
        if q <= orbit.depth and orbit.a(q) != field.from_rational(-s):
            raise ValidationError(orbit.name, "a_q = -w_q at q | level",
                                  "q={:d}".format(q))
    if check_multiplicativity:
        depth = orbit.depth
        for m in range(2, math.isqrt(depth) + 1):
            for n in range(m + 1, depth // m + 1):
                if math.gcd(m, n) != 1:
                    continue
                if field.mul(orbit.a(m), orbit.a(n)) != orbit.a(m * n):
                    raise ValidationError(
                        orbit.name, "multiplicativity",
                        "a_{:d} a_{:d} != a_{:d}".format(m, n, m * n)
                    )


def parse_newform_line(line, file_path=None, line_no=None):
    """
    Parses one orbit record.

    Returns
    -------
    orbit : `NewformOrbit`
        Parsed, not yet validated orbit.
    """
    fields = misc.split_strip(line, ":")
    if len(fields) != 7:
        raise ParseError("expected 7 fields, got {:d}".format(len(fields)),
                         file_path, line_no)
    level = _parse_int(fields[0], "level", file_path, line_no)
    label = fields[1]
    if not label:
        raise ParseError("empty label", file_path, line_no)
    dim = _parse_int(fields[2], "dimension", file_path, line_no)
    minpoly = [_parse_int(c, "minpoly coefficient", file_path, line_no)
               for c in misc.split_strip(fields[3], ",")]
    al_signs = {}
    for item in misc.split_strip(fields[4], ","):
        try:
            q, s = misc.extract(item, r"(\d+)=([+-]1)", group=(1, 2),
                                cv_func=int)
        except KeyError:
            raise ParseError("invalid Atkin-Lehner sign ({:s})".format(item),
                             file_path, line_no)
        al_signs[q] = s
    kind = fields[5]
    vectors = [_parse_vector(v, file_path, line_no)
               for v in misc.split_strip(fields[6], ";")]
    try:
        field = HeckeField(minpoly)
    except ValueError as e:
        raise ParseError(str(e), file_path, line_no)
    if any(len(v) != field.degree for v in vectors):
        raise ValidationError("{:d}:{:s}".format(level, label),
                              "coefficient vector length")
    if kind == "an":
        coeffs = vectors
    elif kind == "ap":
        primes = ntheory.first_primes(len(vectors))
        ap = {p: tuple(v) for p, v in zip(primes, vectors)}
        bound = ntheory.next_prime(primes[-1]) - 1 if primes else 1
        coeffs = hecke_expand(field, level, ap, bound)
    else:
        raise ParseError("invalid coefficient kind ({:s})".format(kind),
                         file_path, line_no)
    return NewformOrbit(level, label, dim, minpoly, al_signs, coeffs,
                        source=kind)


def load_newform_db(file_path, strict=True):
    """
    Loads and validates a newform orbit table.

    Parameters
    ----------
    file_path : `str`
        `newforms.nfd` file.
    strict : `bool`
        Whether to raise on the first invalid record. Otherwise invalid
        records are logged and skipped.

    Returns
    -------
    db : `NewformDB`
        Orbit table.

    Raises
    ------
    ParseError
        Malformed line (with line number).
    ValidationError
        Record violating an invariant (naming orbit and invariant).
    """
    orbits, coverage = [], []
    seen = set()
    for line_no, line in iter_lines(file_path, NFD_HEADER):
        if line.startswith("!"):
            try:
                a, b = misc.extract(line, r"!levels\s+(\d+)-(\d+)",
                                    group=(1, 2), cv_func=int)
            except KeyError:
                raise ParseError("unknown directive ({:s})".format(line),
                                 file_path, line_no)
            coverage.append((a, b))
            continue
        try:
            orbit = parse_newform_line(line, file_path, line_no)
            if orbit.key in seen:
                raise ValidationError(orbit.name, "unique orbit key")
            _check_orbit(orbit, check_multiplicativity=orbit.source == "an")
        except ValidationError as e:
            if strict:
                raise ValidationError(
                    e.record, e.invariant, "line {:d}".format(line_no)
                )
            LOGGER.warning("skipping record ({:s})".format(str(e)))
            continue
        seen.add(orbit.key)
        orbits.append(orbit)
    LOGGER.info("loaded {:d} orbits from {:s}".format(len(orbits), file_path))
    return NewformDB(orbits, coverage)


def _str_vector(v):
    return ",".join(misc.str_fraction(c) for c in v)


def dump_newform_db(file_path, orbits, coverage=(), kind="an"):
    """
    Writes orbits in `newforms.nfd` format.

    Parameters
    ----------
    file_path : `str`
        Output file.
    orbits : `Iter[NewformOrbit]`
        Orbits to write.
    coverage : `Iter[(int, int)]`
        Level ranges written as `!levels` directives.
    kind : `str`
        `"an"` writes every known `a_n`, `"ap"` the prime coefficients.
    """
    with open(file_path, "w", encoding="utf-8") as f:
        f.write(NFD_HEADER + "\n")
        for a, b in coverage:
            f.write("!levels {:d}-{:d}\n".format(a, b))
        f.write("# level:label:dim:minpoly:al_signs:kind:coefficients\n")
        for o in orbits:
            if kind == "an":
                vecs = o.coeffs
            else:
                vecs = [o.a(p) for p in ntheory.primes_upto(o.depth)]
            f.write(":".join([
                str(o.level), o.label, str(o.dim),
                ",".join(str(c) for c in o.hecke_minpoly),
                ",".join("{:d}={:+d}".format(q, s)
                         for q, s in o.al_signs.items()),
                kind,
                ";".join(_str_vector(v) for v in vecs),
            ]) + "\n")


###############################################################################
# Elliptic curves
###############################################################################


class EllipticDB(object):

    """
    Immutable table of elliptic curve classes indexed by label.
    """

    def __init__(self, records):
        self._records = {}
        self._by_conductor = {}
        for r in records:
            if r.label in self._records:
                raise ValidationError(r.label, "unique label")
            self._records[r.label] = r
            self._by_conductor.setdefault(r.conductor, []).append(r)
        for rs in self._by_conductor.values():
            rs.sort(key=lambda r: (len(r.iso_letter), r.iso_letter))

    def __len__(self):
        return len(self._records)

    def __iter__(self):
        for r in sorted(self._records.values(),
                        key=lambda r: (r.conductor, len(r.iso_letter),
                                       r.iso_letter)):
            yield r

    def __getitem__(self, label):
        return self._records[label]

    def __contains__(self, label):
        return label in self._records

    def by_conductor(self, M):
        return list(self._by_conductor.get(int(M), []))


def parse_curve_line(line, file_path=None, line_no=None):
    """
    Parses one elliptic curve record.
    """
    fields = misc.split_strip(line, ":")
    if len(fields) != 5:
        raise ParseError("expected 5 fields, got {:d}".format(len(fields)),
                         file_path, line_no)
    ainvs = [_parse_int(a, "Weierstrass coefficient", file_path, line_no)
             for a in misc.split_strip(fields[2], ",")]
    return EllipticCurveRec(
        fields[0],
        _parse_int(fields[1], "conductor", file_path, line_no),
        ainvs,
        _parse_int(fields[3], "rank", file_path, line_no),
        _parse_int(fields[4], "modular degree", file_path, line_no),
    )


def load_elliptic_db(file_path, strict=True):
    """
    Loads and validates an elliptic curve table.

    Parameters
    ----------
    file_path : `str`
        `curves.ecd` file.
    strict : `bool`
        Whether to raise on the first invalid record.

    Returns
    -------
    db : `EllipticDB`
        Curve table.
    """
    records, seen = [], set()
    for line_no, line in iter_lines(file_path, ECD_HEADER):
        if line.startswith("!"):
            raise ParseError("unknown directive ({:s})".format(line),
                             file_path, line_no)
        try:
            rec = parse_curve_line(line, file_path, line_no)
            if rec.label in seen:
                raise ValidationError(rec.label, "unique label")
        except ValidationError as e:
            if strict:
                raise ValidationError(
                    e.record, e.invariant, "line {:d}".format(line_no)
                )
            LOGGER.warning("skipping record ({:s})".format(str(e)))
            continue
        seen.add(rec.label)
        records.append(rec)
    LOGGER.info("loaded {:d} curves from {:s}".format(len(records), file_path))
    return EllipticDB(records)


def dump_elliptic_db(file_path, records):
    """
    Writes curve records in `curves.ecd` format.
    """
    with open(file_path, "w", encoding="utf-8") as f:
        f.write(ECD_HEADER + "\n")
        f.write("# label:conductor:ainvs:rank:modular_degree\n")
        for r in records:
            f.write("{:s}:{:d}:{:s}:{:d}:{:d}\n".format(
                r.label, r.conductor, ",".join(str(a) for a in r.ainvs),
                r.rank, r.modular_degree
            ))


###############################################################################
# Dataset bundle
###############################################################################


class Databases(object):

    """
    The two loaded tables, shared read-only by all computations.
    """

    def __init__(self, newform_db, elliptic_db):
        self.newform_db = newform_db
        self.elliptic_db = elliptic_db

    def __repr__(self):
        return "<Databases orbits={:d} curves={:d}>".format(
            len(self.newform_db), len(self.elliptic_db)
        )


def load_databases(newform_path, curve_path, strict=True):
    """
    Loads both tables.
    """
    return Databases(
        load_newform_db(newform_path, strict=strict),
        load_elliptic_db(curve_path, strict=strict),
    )
