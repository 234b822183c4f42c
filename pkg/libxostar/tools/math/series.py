"""
Truncated power series in `q` with exact coefficients.

Coefficients are Python `int` where integral and `Fraction` otherwise.
Every series carries its precision (the number of known coefficients
`q^0, ..., q^(prec-1)`); results never claim more precision than their
operands.
"""

from fractions import Fraction

from libxostar.core.errors import PrecisionError


def _norm(c):
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class PowerSeries(object):

    """
    Immutable truncated power series.

    Parameters
    ----------
    coeffs : `Iter[int or Fraction]`
        Coefficients indexed by the exponent of `q`, starting at 0.
        Missing coefficients up to `prec` are zero.
    prec : `int` or `None`
        Number of known coefficients. Defaults to `len(coeffs)`.
        Coefficients beyond `prec` are dropped.

    Examples
    --------
    >>> f = PowerSeries([0, 1, 1], prec=3)
    >>> g = PowerSeries([0, 1], prec=3)
    >>> series_ratio(f, g).coeffs
    (1, 1)
    """

    def __init__(self, coeffs, prec=None):
        coeffs = [_norm(c) for c in coeffs]
        if prec is None:
            prec = len(coeffs)
        if prec < 0:
            raise ValueError("negative precision ({:d})".format(prec))
        coeffs = coeffs[:prec] + [0] * max(0, prec - len(coeffs))
        self._coeffs = tuple(coeffs)

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def prec(self):
        return len(self._coeffs)

    def __getitem__(self, n):
        if n >= self.prec:
            raise PrecisionError("coefficient beyond precision ({:d} >= {:d})"
                                 .format(n, self.prec))
        return self._coeffs[n]

    def __eq__(self, other):
        return isinstance(other, PowerSeries) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return "<PowerSeries prec={:d} {:s}>".format(
            self.prec, str(self._coeffs[:6])
        )

    # ++++ Properties ++++

    def order(self):
        """
        Order of vanishing at `q = 0`.

        Returns
        -------
        v : `int` or `None`
            Index of the first nonzero coefficient, `None` if the series
            vanishes to working precision.
        """
        for i, c in enumerate(self._coeffs):
            if c != 0:
                return i
        return None

    def is_zero(self):
        return self.order() is None

    def is_integral(self):
        return all(isinstance(c, int) for c in self._coeffs)

    # ++++ Arithmetic ++++

    def __neg__(self):
        return PowerSeries([-c for c in self._coeffs])

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            return self + PowerSeries([other], prec=self.prec)
        prec = min(self.prec, other.prec)
        return PowerSeries(
            [a + b for a, b in zip(self._coeffs[:prec], other._coeffs[:prec])]
        )

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        """
        Multiplies by a scalar.
        """
        c = _norm(c)
        return PowerSeries([c * a for a in self._coeffs])

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return self.scale(other)
        prec = min(self.prec, other.prec)
        a, b = self._coeffs[:prec], other._coeffs[:prec]
        nz_b = [(j, y) for j, y in enumerate(b) if y != 0]
        res = [0] * prec
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in nz_b:
                if i + j >= prec:
                    break
                res[i + j] += x * y
        return PowerSeries(res)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("invalid exponent ({:s})".format(str(k)))
        res = PowerSeries([1], prec=self.prec)
        base = self
        while k:
            if k & 1:
                res = res * base
            k >>= 1
            if k:
                base = base * base
        return res

    # ++++ Operators ++++

    def truncate(self, prec):
        """
        Restricts to a lower precision.

        Raises
        ------
        PrecisionError
            If `prec` exceeds the known precision.
        """
        if prec > self.prec:
            raise PrecisionError("cannot raise precision ({:d} > {:d})"
                                 .format(prec, self.prec))
        return PowerSeries(self._coeffs[:prec])

    def shift(self, k):
        """
        Divides by `q^k`; the first `k` coefficients must vanish.
        """
        if k > self.prec:
            raise PrecisionError("shift beyond precision ({:d} > {:d})"
                                 .format(k, self.prec))
        if any(self._coeffs[:k]):
            raise ValueError("series not divisible by q^{:d}".format(k))
        return PowerSeries(self._coeffs[k:])

    def theta(self):
        """
        Applies `q d/dq`.
        """
        return PowerSeries([n * c for n, c in enumerate(self._coeffs)])

    def substitute_power(self, d):
        """
        Gets `f(q^d)`; the precision becomes `d * (prec - 1) + 1`.
        """
        if d < 1:
            raise ValueError("invalid power ({:d})".format(d))
        if self.prec == 0:
            return PowerSeries([])
        prec = d * (self.prec - 1) + 1
        res = [0] * prec
        for n, c in enumerate(self._coeffs):
            res[n * d] = c
        return PowerSeries(res)


def series_ratio(num, den):
    """
    Quotient of two power series.

    Both series are divided by `q^v` with `v` the order of `den`, the
    result has precision `min(precisions) - v`.

    Parameters
    ----------
    num, den : `PowerSeries`
        Numerator and denominator with `order(den) <= order(num)`.

    Returns
    -------
    ratio : `PowerSeries`
        Exact quotient to the output precision.

    Raises
    ------
    PrecisionError
        If `den` vanishes to working precision.
    ValueError
        If `num` vanishes to lower order than `den`.
    """
    v = den.order()
    if v is None:
        raise PrecisionError("division by series vanishing to working "
                             "precision ({:d})".format(den.prec))
    prec = min(num.prec, den.prec)
    n = num.truncate(prec).shift(v)
    d = den.truncate(prec).shift(v)
    d0 = Fraction(d[0])
    out = []
    for k in range(n.prec):
        s = n[k]
        for j in range(1, k + 1):
            if d._coeffs[j]:
                s -= d._coeffs[j] * out[k - j]
        out.append(_norm(Fraction(s) / d0))
    return PowerSeries(out)
