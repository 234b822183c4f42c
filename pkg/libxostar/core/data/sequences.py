import pandas as pd

from libxostar.core.util import misc


###############################################################################


class DataSequence(pd.DataFrame):

    """
    Result table stored as a pandas data frame.

    Cells may hold arbitrary objects (levels, orbit names, rationals).
    Use :py:meth:`from_rows` to build a table from a list of mappings.

    Parameters
    ----------
    *args
        Arguments passed to the `pandas.DataFrame` constructor,
        particularly, includes the tabular data.
    """

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)

    @property
    def _constructor(self):
        return DataSequence

    @classmethod
    def from_rows(cls, rows, columns):
        """
        Builds a table from row mappings with a fixed column order.
        """
        return cls([{c: row.get(c) for c in columns} for row in rows],
                   columns=list(columns), dtype=object)

    def str_table(self, sep="\t", fmt=None):
        """
        Formats the table as separated text with a header line.

        Parameters
        ----------
        sep : `str`
            Cell separator.
        fmt : `callable` or `None`
            Cell formatter, defaults to :py:func:`format_cell`.
        """
        fmt = format_cell if fmt is None else fmt
        lines = [sep.join(str(c) for c in self.columns)]
        for _, row in self.iterrows():
            lines.append(sep.join(fmt(row[c]) for c in self.columns))
        return "\n".join(lines)


def format_cell(val):
    """
    Text form of a table cell: rationals as `p/q`, sequences comma-joined,
    `None` as `-`.
    """
    if val is None or (isinstance(val, float) and val != val):
        return "-"
    if isinstance(val, bool):
        return "yes" if val else "no"
    if isinstance(val, (list, tuple)):
        return misc.cv_iter_to_str(val, fmt=format_cell, join=",",
                                   prefix="", suffix="")
    try:
        return misc.str_fraction(val)
    except (TypeError, ValueError, AttributeError):
        return str(val)
