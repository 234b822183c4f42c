import re
from fractions import Fraction


###############################################################################
# Rationals
###############################################################################


def cv_fraction(text):
    """
    Converts a `"p/q"` or `"p"` string to an exact rational.

    Parameters
    ----------
    text : `str`
        Rational string. Whitespace is ignored, decimal points are not
        accepted.

    Returns
    -------
    val : `Fraction`
        Rational in lowest terms.

    Raises
    ------
    ValueError
        If the string is not a rational literal.
    """
    s = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
        raise ValueError("invalid rational ({:s})".format(text))
    return Fraction(s)


def str_fraction(val):
    """
    Formats a rational as `"p/q"`, or `"p"` for integers.
    """
    val = Fraction(val)
    if val.denominator == 1:
        return str(val.numerator)
    return "{:d}/{:d}".format(val.numerator, val.denominator)


###############################################################################
# String functions
###############################################################################


def split_strip(s, delim=",", strip=" \t\n\r"):
    """
    Splits a given string and strips each list element from given characters.

    Parameters
    ----------
    s : `str`
        String to be split.
    delim : `str` or `None`
        String delimiter. If None, string will not be split.
    strip : `str`
        Strip characters.

    Returns
    -------
    ls : `list(str)` or `str`
        Returns stripped (list of) string depending on delim
        parameter. An empty (or whitespace) string splits into an
        empty list.
    """
    if delim is None:
        return s.strip(strip)
    if not s.strip(strip):
        return []
    return [item.strip(strip) for item in s.split(delim)]


def extract(s, regex, group=1, cv_func=None, flags=0):
    """
    Extracts part of a string.
    Serves as convenience function to `re.fullmatch`.

    Parameters
    ----------
    s : `str`
        String from which to extract.
    regex : `str`
        Regular expression matching the whole string.
        Findings should be enclosed in parentheses `()`.
    group : `int` or `tuple(int)`
        Group index of search results. Tuples return tuples.
    cv_func : `callable` or `None`
        Conversion function applied to search results (e.g. int).
    flags : `int`
        Flags parameter passed to `re.fullmatch`.

    Raises
    ------
    KeyError
        If extraction failed.
    """
    match = re.fullmatch(regex, s, flags=flags)
    if match is None:
        raise KeyError("no match found ({:s})".format(s))
    groups = group if isinstance(group, tuple) else (group,)
    result = []
    for group_index in groups:
        _extracted = match.group(group_index)
        if callable(cv_func):
            _extracted = cv_func(_extracted)
        result.append(_extracted)
    if isinstance(group, tuple):
        return tuple(result)
    return result[0]


def cv_iter_to_str(_iter, fmt=None, join=", ", prefix="[", suffix="]"):
    """
    Converts an iterable to a single string.

    Parameters
    ----------
    _iter : `Iter[Any]`
        Iterable to be converted.
    fmt : `str` or `callable` or `None`
        Formatter string, e.g.: `"{:d}"`, or formatting function.
        If `None`, the items in `_iter` are converted by `str()`.
    join : `str`
        Characters used to join the items.
    prefix, suffix : `str`
        Prefix/suffix prepended/appended to the joined string.
    """
    if fmt is None:
        s = [str(i) for i in _iter]
    elif callable(fmt):
        s = [fmt(i) for i in _iter]
    else:
        s = [fmt.format(i) for i in _iter]
    return prefix + join.join(s) + suffix
