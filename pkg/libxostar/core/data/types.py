import functools
import operator
from fractions import Fraction

import numpy as np
from xxhash import xxh64_intdigest


###############################################################################
# Hashing
###############################################################################


def hash_combine_ordered(*hval):
    """
    Combines multiple hash values (asymmetric).
    """
    if len(hval) == 1:
        return hval[0]
    return xxh64_intdigest(b"".join(
        int(h).to_bytes(8, "little", signed=False) for h in hval
    ))


def hash_combine_xor(*hval):
    """
    Combines multiple hash values by xor (symmetric).
    """
    return functools.reduce(operator.xor, hval, 0)


def hash_xostar(val):
    """
    Process-independent 64 bit hash.

    * `str`, `bytes`, `int`, `Fraction` and `None` via `xxh64` of a
      canonical text form.
    * `numpy` arrays via `xxh64` of the contiguous buffer.
    * Mappings unordered in their items, other iterables ordered.
    * :py:class:`AttrHashBase` objects via their hash keys.
    """
    if isinstance(val, AttrHashBase):
        return val._hash_xostar()
    elif isinstance(val, np.ndarray):
        return xxh64_intdigest(np.ascontiguousarray(val))
    elif isinstance(val, (bytes, bytearray)):
        return xxh64_intdigest(bytes(val))
    elif isinstance(val, str):
        return xxh64_intdigest(val.encode("utf-8"))
    elif val is None or isinstance(val, (bool, int, Fraction)):
        return xxh64_intdigest(
            "{:s}:{:s}".format(type(val).__name__, str(val)).encode("utf-8")
        )
    elif isinstance(val, dict):
        return hash_combine_xor(*(
            hash_combine_ordered(hash_xostar(k), hash_xostar(val[k]))
            for k in val
        ))
    elif isinstance(val, (set, frozenset)):
        return hash_combine_xor(*(hash_xostar(v) for v in val))
    else:
        return hash_combine_ordered(
            hash_xostar(len(val)), *(hash_xostar(v) for v in val)
        )


def digest_hex(val):
    """
    Hex string of :py:func:`hash_xostar`.
    """
    return "{:016x}".format(hash_xostar(val))


class AttrHashBase:

    """
    Base class for attribute hashing.

    For a given set of attributes (:py:attr:`HASH_KEYS`), constructs a hash
    value that is unordered in the hash keys, includes the attribute names
    and the class name and is stable across processes.

    Examples
    --------
    >>> class Point(AttrHashBase):
    ...     HASH_KEYS = AttrHashBase.HASH_KEYS | {"x", "y"}
    ...     def __init__(self):
    ...         self.x = 1
    ...         self.y = 2
    >>> hash(Point()) == hash(Point())
    True
    """

    HASH_KEYS = set()

    def _hash_xostar(self):
        hash_name = hash_xostar(self.__class__.__name__)
        hash_vals = (
            hash_combine_ordered(hash_xostar(k), hash_xostar(getattr(self, k)))
            for k in self.HASH_KEYS
        )
        return hash_combine_xor(hash_name, *hash_vals)

    def __hash__(self):
        return self._hash_xostar()
