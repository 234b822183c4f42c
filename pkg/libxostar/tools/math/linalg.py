"""
Exact linear algebra over the rationals and integer lattices.

Kernels are computed by fraction-free row reduction over the integers
(`sympy.polys.matrices.DomainMatrix.rref_den`), lattice saturation uses
left kernels modulo the primes dividing the Hermite pivots.
"""

import math
from fractions import Fraction

import numpy as np
from sympy import factorint
from sympy.polys.domains import ZZ, GF
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form

from libxostar import env

LOGGER = env.logging.get_logger("libxostar.tools.math.linalg")


###############################################################################
# Vector normalization
###############################################################################


def _as_rational(val):
    if isinstance(val, int):
        return val
    val = Fraction(val)
    return val.numerator if val.denominator == 1 else val


def primitive_vector(vec):
    """
    Scales a rational vector to a primitive integer vector.

    The denominators are cleared by their lcm, the entries divided by
    their gcd and the sign fixed such that the first nonzero entry is
    positive.

    Parameters
    ----------
    vec : `Iter[int or Fraction]`
        Rational vector.

    Returns
    -------
    vec : `tuple(int)`
        Primitive integer vector. The zero vector is returned unchanged.
    """
    vec = [Fraction(v) for v in vec]
    den = 1
    for v in vec:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g == 0:
        return tuple(ints)
    ints = [v // g for v in ints]
    for v in ints:
        if v != 0:
            if v < 0:
                ints = [-w for w in ints]
            break
    return tuple(ints)


###############################################################################
# Matrix type
###############################################################################


class RatMatrix(object):

    """
    Immutable dense matrix of rationals.

    Parameters
    ----------
    rows, cols : `int`
        Shape.
    entries : `Iter[int or Fraction]`
        Row-major entries, `rows * cols` of them.

    Raises
    ------
    ValueError
        If the number of entries does not match the shape.
    """

    def __init__(self, rows, cols, entries):
        entries = tuple(_as_rational(e) for e in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ValueError("invalid matrix shape ({:d}x{:d}, {:d} entries)"
                             .format(rows, cols, len(entries)))
        self._rows = rows
        self._cols = cols
        self._entries = entries

    @classmethod
    def from_rows(cls, rows, cols=None):
        """
        Constructs a matrix from a sequence of equal-length rows.

        Parameters
        ----------
        rows : `Iter[Iter[int or Fraction]]`
            Matrix rows.
        cols : `int`
            Column count, required if `rows` is empty.
        """
        rows = [tuple(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("column count required for empty matrix")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows ({:d} != {:d})"
                                 .format(len(r), cols))
        return cls(len(rows), cols, [e for r in rows for e in r])

    @property
    def rows(self):
        return self._rows

    @property
    def cols(self):
        return self._cols

    @property
    def shape(self):
        return (self._rows, self._cols)

    @property
    def entries(self):
        return self._entries

    def __getitem__(self, key):
        i, j = key
        return self._entries[i * self._cols + j]

    def row(self, i):
        return self._entries[i * self._cols:(i + 1) * self._cols]

    def row_list(self):
        return [self.row(i) for i in range(self._rows)]

    def __eq__(self, other):
        return (
            isinstance(other, RatMatrix) and self.shape == other.shape
            and self._entries == other._entries
        )

    def __hash__(self):
        return hash((self.shape, self._entries))

    def __repr__(self):
        return "<RatMatrix {:d}x{:d}>".format(self._rows, self._cols)

    def to_numpy(self):
        """
        Gets an object-dtype `numpy` array of the exact entries.
        """
        ar = np.empty(self.shape, dtype=object)
        for i in range(self._rows):
            for j in range(self._cols):
                ar[i, j] = self[i, j]
        return ar

    def apply(self, vec):
        """
        Multiplies the matrix with a column vector.

        Returns
        -------
        res : `tuple(int or Fraction)`
            Exact product.
        """
        vec = list(vec)
        if len(vec) != self._cols:
            raise ValueError("vector length mismatch ({:d} != {:d})"
                             .format(len(vec), self._cols))
        res = []
        for i in range(self._rows):
            s = 0
            for a, b in zip(self.row(i), vec):
                if a and b:
                    s += a * b
            res.append(_as_rational(s))
        return tuple(res)

    def transpose(self):
        return RatMatrix.from_rows(
            [[self[i, j] for i in range(self._rows)]
             for j in range(self._cols)],
            cols=self._rows
        )

    def integer_rows(self):
        """
        Gets the rows scaled to primitive integer vectors (zero rows
        dropped). The row space and the kernel are unchanged.
        """
        res = []
        for r in self.row_list():
            if any(r):
                res.append(primitive_vector(r))
        return res


###############################################################################
# Row reduction
###############################################################################


def _rref_den(int_rows, cols):
    """
    Fraction-free reduced row echelon form of an integer matrix.

    Returns
    -------
    rref : `list(list(int))`
        Reduced rows (pivot entries equal `den`).
    den : `int`
        Common denominator.
    pivots : `tuple(int)`
        Pivot columns.
    """
    dm = DomainMatrix(
        [[ZZ(int(x)) for x in r] for r in int_rows], (len(int_rows), cols), ZZ
    )
    rref, den, pivots = dm.rref_den()
    rows = [[int(x) for x in r] for r in rref.to_list()]
    return rows, int(den), tuple(pivots)


def rank(m):
    """
    Rank of a rational matrix.

    Parameters
    ----------
    m : `RatMatrix`
        Matrix.

    Returns
    -------
    r : `int`
        Rank.
    """
    int_rows = m.integer_rows()
    if not int_rows:
        return 0
    _, _, pivots = _rref_den(int_rows, m.cols)
    return len(pivots)


def kernel_basis(m):
    """
    Basis of the right null space of a rational matrix.

    The basis is read off the fraction-free reduced row echelon form:
    one vector per free column, ordered by free column. Each vector is
    scaled to a primitive integer vector with positive first nonzero
    entry, so the output is deterministic.

    Parameters
    ----------
    m : `RatMatrix`
        Matrix.

    Returns
    -------
    basis : `list(tuple(int))`
        Kernel basis vectors of length `m.cols`.

    Examples
    --------
    >>> kernel_basis(RatMatrix(1, 2, [1, 2]))
    [(2, -1)]
    """
    cols = m.cols
    int_rows = m.integer_rows()
    if not int_rows:
        return [tuple(int(i == j) for i in range(cols)) for j in range(cols)]
    rref, den, pivots = _rref_den(int_rows, cols)
    pivot_set = set(pivots)
    basis = []
    for f in range(cols):
        if f in pivot_set:
            continue
        vec = [0] * cols
        vec[f] = den
        for i, pc in enumerate(pivots):
            vec[pc] = -rref[i][f]
        basis.append(primitive_vector(vec))
    return basis


###############################################################################
# Integer lattices
###############################################################################


def hnf_rows(rows):
    """
    Row-style Hermite normal form of the lattice spanned by integer rows.

    Nonzero rows are returned in echelon order, each pivot is positive and
    the entries above a pivot are reduced to `[0, pivot)`.

    The rows are written as the columns of a matrix with reversed
    coordinates, so that the column-style form of
    `sympy.polys.matrices.normalforms.hermite_normal_form` (pivots at the
    bottom, zero columns dropped) reads back as the row-style form.

    Parameters
    ----------
    rows : `Iter[Iter[int]]`
        Integer vectors of equal length.

    Returns
    -------
    hnf : `list(tuple(int))`
        Hermite basis of the spanned lattice.

    Raises
    ------
    ValueError
        If the rows have different lengths.

    Examples
    --------
    >>> hnf_rows([(2, 0), (0, 2), (1, 1)])
    [(1, 1), (0, 2)]
    """
    a = [[int(x) for x in r] for r in rows]
    if not a:
        return []
    ncols = len(a[0])
    for r in a:
        if len(r) != ncols:
            raise ValueError("ragged rows ({:d} != {:d})".format(len(r), ncols))
    if ncols == 0 or not any(any(r) for r in a):
        return []
    dm = DomainMatrix(
        [[ZZ(r[ncols - 1 - i]) for r in a] for i in range(ncols)],
        (ncols, len(a)), ZZ
    )
    hnf = hermite_normal_form(dm)
    cols = hnf.transpose().to_list()
    return [tuple(int(x) for x in reversed(c)) for c in reversed(cols)]


def _pivots(hnf):
    res = []
    for row in hnf:
        for x in row:
            if x != 0:
                res.append(x)
                break
    return res


def _left_kernel_mod(hnf, p):
    """
    Basis of `{c in F_p^r : c * hnf = 0 mod p}` as integer vectors.
    """
    K = GF(p)
    r, ncols = len(hnf), len(hnf[0])
    dm = DomainMatrix([[K(x % p) for x in row] for row in hnf], (r, ncols), K)
    ns = dm.transpose().nullspace()
    return [[int(K.to_int(x)) % p for x in row] for row in ns.to_list()]


def saturate(rows):
    """
    Saturation of an integer lattice: the intersection of its rational
    span with the integer lattice, in Hermite normal form.

    The index of the lattice in its saturation divides the product of the
    Hermite pivots. For every prime dividing a pivot, vectors `c * hnf / p`
    with `c` in the left kernel modulo `p` are added until the kernel
    is trivial.

    Parameters
    ----------
    rows : `Iter[Iter[int]]`
        Integer vectors of equal length.

    Returns
    -------
    hnf : `list(tuple(int))`
        Hermite basis of the saturated lattice.
    """
    hnf = hnf_rows(rows)
    if not hnf:
        return []
    primes = set()
    for d in _pivots(hnf):
        primes.update(factorint(abs(d)).keys())
    for p in sorted(primes):
        while True:
            kernel = _left_kernel_mod(hnf, p)
            if not kernel:
                break
            c = kernel[0]
            vec = [0] * len(hnf[0])
            for ci, row in zip(c, hnf):
                if ci:
                    vec = [v + ci * x for v, x in zip(vec, row)]
            vec = [v // p for v in vec]
            LOGGER.debug("saturating at p={:d}".format(p))
            hnf = hnf_rows(hnf + [tuple(vec)])
    return hnf


def hnf_row_basis(rows):
    """
    Saturated HNF: the Hermite normal form of the saturation of the
    lattice spanned by integer rows, so a non-primitive generator is
    replaced by its primitive part.

    Examples
    --------
    >>> hnf_row_basis([(2, 4)])
    [(1, 2)]
    """
    rows = [tuple(int(x) for x in r) for r in rows]
    if not rows:
        return []
    length = len(rows[0])
    for r in rows:
        if len(r) != length:
            raise ValueError("ragged rows ({:d} != {:d})".format(len(r), length))
    return saturate(rows)
