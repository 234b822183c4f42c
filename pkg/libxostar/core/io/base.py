import json
from fractions import Fraction

import pandas as pd

from libxostar import env
from libxostar.core.util import misc

LOGGER = env.logging.get_logger("libxostar.core.io")


###############################################################################


def type_is_primitive(obj):
    """
    Returns whether the given object is of primitive type.
    """
    return obj is None or type(obj) in (bool, int, float, str)


###############################################################################


class ObjEncoder(object):

    """
    Serializes an object to a json-compatible structure.

    Rationals become `"p/q"` strings, tuples become lists, objects
    deriving from :py:class:`FileBase` are serialized through
    :py:meth:`FileBase.attributes` in `SER_KEYS` order. Dictionary order
    is preserved, so the output is stable for stable inputs.

    Raises
    ------
    NotImplementedError
        If class of object to be serialized is not supported.
    """

    @classmethod
    def _serialize_pandas_dataframe(cls, obj):
        return {
            "columns": [str(c) for c in obj.columns],
            "data": cls.serialize(obj.to_numpy().tolist()),
        }

    @classmethod
    def serialize(cls, obj):
        if isinstance(obj, bool) or type_is_primitive(obj):
            return obj
        elif isinstance(obj, Fraction):
            return misc.str_fraction(obj)
        elif isinstance(obj, int) or hasattr(obj, "__index__"):
            return obj.__index__()
        elif isinstance(obj, (list, tuple)):
            return [cls.serialize(item) for item in obj]
        elif isinstance(obj, (set, frozenset)):
            return [cls.serialize(item) for item in sorted(obj)]
        elif isinstance(obj, dict):
            return {str(k): cls.serialize(v) for k, v in obj.items()}
        elif isinstance(obj, FileBase):
            d = {"__cls__": obj.__class__.__name__}
            d.update(cls.serialize(obj.attributes()))
            return d
        elif isinstance(obj, pd.DataFrame):
            return cls._serialize_pandas_dataframe(obj)
        else:
            raise NotImplementedError("invalid object ({:s})"
                                      .format(repr(obj)))

    @classmethod
    def encode(cls, obj):
        """
        Encodes an object including package metadata.

        The metadata carries no timestamp so that repeated runs produce
        identical output.

        Returns
        -------
        ser : `dict`
            Object serialized into a dictionary.
        """
        return {
            "__meta__": {"version_libxostar": env.XOSTAR_VERSION},
            "__data__": cls.serialize(obj),
        }


def dumps(obj, enc=ObjEncoder, meta=False, indent=2):
    """
    Serializes an object to structured (json) text.

    Parameters
    ----------
    obj : `object`
        Object to be serialized.
    enc : `ObjEncoder`
        Serialization class.
    meta : `bool`
        Whether to wrap the data with package metadata.
    indent : `int` or `None`
        Json indentation.
    """
    ser = enc.encode(obj) if meta else enc.serialize(obj)
    return json.dumps(ser, indent=indent, ensure_ascii=False)


###############################################################################


def get_file_format(file_path, fmt=None):
    """
    Deduces the file format (or returns the format if given).

    Raises
    ------
    KeyError
        If format deduction error occured.
    """
    if fmt is None:
        parts = str(file_path).split(".")
        if len(parts) < 2:
            raise KeyError("could not deduce file format ({:s})"
                           .format(str(file_path)))
        fmt = parts[-1]
    return fmt.lower()


def save(file_path, obj, enc=ObjEncoder, fmt=None, **kwargs):
    """
    Serializes and saves an object to file.

    Parameters
    ----------
    file_path : `str`
        Saved file path.
    obj : `object`
        Object to be serialized and saved.
    enc : `ObjEncoder`
        Serialization class.
    fmt : `str`
        File format: `"json"`, `"tsv"`, `"csv"`. Tabular formats require
        a `pandas.DataFrame`.
    **kwargs
        Keyword arguments passed to the respective write functions.
    """
    fmt = get_file_format(file_path, fmt=fmt)
    if "json" in fmt:
        kwargs.setdefault("indent", 2)
        with open(file_path, "w", encoding="utf-8") as f:
            json.dump(enc.encode(obj), f, ensure_ascii=False, **kwargs)
    elif "tsv" in fmt or "csv" in fmt:
        sep = "\t" if "tsv" in fmt else ","
        pd.DataFrame(obj).to_csv(file_path, sep=sep, index=False, **kwargs)
    else:
        raise NotImplementedError("format {:s} not supported".format(fmt))


class FileBase(object):

    """
    Base class for object serialization.

    * Subclasses list the serialized attribute names in the class
      variable `SER_KEYS`, a tuple fixing the output field order, e.g.
      `SER_KEYS = FileBase.SER_KEYS + ("ATTR0", "ATTR1")`.
    * Alternatively, the :py:meth:`attributes` method itself can be
      overwritten to obtain more customizability.
    """

    SER_KEYS = ()

    def save(self, file_path, **kwargs):
        """
        Wrapper for :py:func:`save` function.
        """
        save(file_path, self, **kwargs)

    def attributes(self):
        """
        Default saved attributes getter.

        Returns
        -------
        attrs : `dict(str->object)`
            Saved attributes dictionary mapping the attribute name
            to the attribute value.
        """
        return {k: getattr(self, k) for k in self.SER_KEYS}
