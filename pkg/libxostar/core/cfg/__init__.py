import configparser
import json
import os

from libxostar import env
from libxostar.env import logging
from libxostar.core import io

LOGGER = logging.get_logger("libxostar.core.cfg")


###############################################################################


INI_DEFAULT_SECTION = configparser.DEFAULTSECT


class CfgBase(io.FileBase):

    """
    Configuration file base class.

    Attributes must be of built-in/primitive types or (subclasses of)
    `CfgBase`.
    """

    LOGGER = logging.get_logger("libxostar.core.cfg.CfgBase")

    def __init__(self, **kwargs):
        super().__init__()
        for k, v in kwargs.items():
            setattr(self, k, v)

    def _get_cfg_depth(self, serialize_all=False):
        """
        Gets the configuration nest level.
        """
        max_depth = 0
        for k in self.__dict__.keys() if serialize_all else self.SER_KEYS:
            v = getattr(self, k)
            if isinstance(v, CfgBase):
                _depth = 1 + v._get_cfg_depth(serialize_all=serialize_all)
                if max_depth < _depth:
                    max_depth = _depth
        return max_depth

    def __getitem__(self, key):
        keys = str.split(key, ".")
        obj = getattr(self, keys[0])
        if len(keys) > 1:
            obj = obj[".".join(keys[1:])]
        return obj

    def __setitem__(self, key, val):
        keys = str.split(key, ".")
        if len(keys) > 1:
            getattr(self, keys[0])[".".join(keys[1:])] = val
        else:
            setattr(self, keys[0], val)

    def __iter__(self):
        for k, v in self.__dict__.items():
            yield (k, v)

    def _to_dict(self, serialize_all=False):
        """
        Serializes the serializable attributes to a dict.

        Parameters
        ----------
        serialize_all : `bool`
            Flag whether to serialize all attributes or only the
            ones stated in `SER_KEYS`.

        Returns
        -------
        d : `dict`
            Serialized attributes.
        """
        if serialize_all:
            d = {k: v for k, v in self.__dict__.items()}
        else:
            d = self.attributes()
        for k, v in d.items():
            if isinstance(v, CfgBase):
                d[k] = v._to_dict(serialize_all=serialize_all)
        return d

    def _from_dict(self, d):
        """
        Sets attributes according to the given dict.

        Parameters
        ----------
        d : `dict`
            Serialized attributes.
        """
        for k, v in d.items():
            if isinstance(v, dict):
                if k not in self.__dict__:
                    setattr(self, k, CfgBase())
                getattr(self, k)._from_dict(v)
            else:
                setattr(self, k, v)

    def __str__(self):
        d = self._to_dict(serialize_all=False)
        if len(d) == 0:
            d = self._to_dict(serialize_all=True)
        return str(d)

    def __repr__(self):
        return f"<'{self.__class__.__name__}' at {hex(id(self))}>\n{str(self)}"

    def save_cfg(self, file_path, fmt=None, serialize_all=False, **kwargs):
        """
        Saves the configuration object to a text file.

        Parameters
        ----------
        file_path : `str`
            Save file path.
        fmt : `str`
            File format: `"json"`, `"ini"`.
        serialize_all : `bool`
            Flag whether to serialize all attributes or only the
            ones stated in `SER_KEYS`.
        **kwargs
            Keyword arguments passed to parsers. Notable arguments include:
            `"json"`: `indent`.
        """
        fmt = io.get_file_format(file_path, fmt=fmt)
        d = self._to_dict(serialize_all=serialize_all)
        if "json" in fmt:
            with open(file_path, "w") as f:
                json.dump(d, f, **kwargs)
        elif "ini" in fmt:
            _cfg_depth = self._get_cfg_depth(serialize_all=serialize_all)
            if _cfg_depth > 1:
                raise ValueError("maximum ini file depth exceeded ({:d})"
                                 .format(_cfg_depth))
            # Depth == 1 required for ini file, thus create dummy section
            dd = d.copy()
            d[INI_DEFAULT_SECTION] = {}
            for k, v in dd.items():
                if not isinstance(v, dict):
                    d[INI_DEFAULT_SECTION][k] = v
                    del d[k]
            if len(d[INI_DEFAULT_SECTION]) == 0:
                del d[INI_DEFAULT_SECTION]
            cp = configparser.ConfigParser(**kwargs)
            cp.read_dict({
                s: {k: json.dumps(v) for k, v in items.items()}
                for s, items in d.items()
            })
            with open(file_path, "w") as f:
                cp.write(f)
        else:
            raise ValueError("invalid format ({:s})".format(fmt))

    def load_cfg(self, file_path, fmt=None, preserve_case=True, **kwargs):
        """
        Loads a configuration text file to object.

        Parameters
        ----------
        file_path : `str`
            Load file path.
        fmt : `str`
            File format: `"json"`, `"ini"`. Ini values are parsed as
            json literals where possible.
        """
        fmt = io.get_file_format(file_path, fmt=fmt)
        if "json" in fmt:
            with open(file_path, "r") as f:
                d = json.load(f, **kwargs)
        elif "ini" in fmt:
            cp = configparser.ConfigParser(**kwargs)
            if preserve_case is True:
                cp.optionxform = str
            with open(file_path, "r") as f:
                cp.read_file(f)
            d = {s: {k: _parse_ini_value(v) for k, v in cp.items(s)}
                 for s in cp.sections()}
            # Parse dummy section
            for k, v in cp.defaults().items():
                d[k] = _parse_ini_value(v)
        else:
            raise ValueError("invalid format ({:s})".format(fmt))
        self._from_dict(d)


def _parse_ini_value(s):
    try:
        return json.loads(s)
    except ValueError:
        return s


###############################################################################
# Classifier configuration
###############################################################################


class DataCfg(CfgBase):

    """
    Dataset paths. `None` selects `newforms.nfd` and `curves.ecd` in the
    data directory if installed there, the shipped sample otherwise.
    """

    SER_KEYS = CfgBase.SER_KEYS + ("newform_db", "curve_db")

    def __init__(self, newform_db=None, curve_db=None, **kwargs):
        super().__init__(**kwargs)
        self.newform_db = newform_db
        self.curve_db = curve_db


class RangeCfg(CfgBase):

    """
    Inclusive level range used by enumeration and the table reproductions.
    """

    SER_KEYS = CfgBase.SER_KEYS + ("n_min", "n_max")

    def __init__(self, n_min=1, n_max=3000, **kwargs):
        super().__init__(**kwargs)
        self.n_min = n_min
        self.n_max = n_max


class SieveCfg(CfgBase):

    """
    Sieve schedules.

    Parameters
    ----------
    psi_primes : `list(int)`
        Primes at which the worst-case bound screen is applied.
    q_primes : `list(int)`
        Primes of the involution-parity sieve.
    q_max_index : `int`
        Largest odd index `2k+1` of the parity sums.
    cover_max_power : `int`
        Largest prime power `p^k` of the two-cover sieve.
    bad_prime_max_power : `int`
        Largest prime power of the bad-prime reduction.
    exhaustive : `bool`
        Whether every sieve is recorded even after the first kill.
    """

    SER_KEYS = CfgBase.SER_KEYS + (
        "psi_primes", "q_primes", "q_max_index", "cover_max_power",
        "bad_prime_max_power", "exhaustive"
    )

    def __init__(
        self, psi_primes=(2, 3, 5, 7, 11, 13), q_primes=(2, 3, 5, 7, 11, 13),
        q_max_index=15, cover_max_power=50, bad_prime_max_power=8,
        exhaustive=False, **kwargs
    ):
        super().__init__(**kwargs)
        self.psi_primes = list(psi_primes)
        self.q_primes = list(q_primes)
        self.q_max_index = q_max_index
        self.cover_max_power = cover_max_power
        self.bad_prime_max_power = bad_prime_max_power
        self.exhaustive = exhaustive


class PetriCfg(CfgBase):

    """
    Canonical-model precision: `margin` extra coefficients beyond the
    vanishing bound, verification at `verify_factor` times the window.
    """

    SER_KEYS = CfgBase.SER_KEYS + ("margin", "verify_factor")

    def __init__(self, margin=8, verify_factor=2, **kwargs):
        super().__init__(**kwargs)
        self.margin = margin
        self.verify_factor = verify_factor


class RunCfg(CfgBase):

    SER_KEYS = CfgBase.SER_KEYS + ("workers", "format")

    def __init__(self, workers=1, format="tsv", **kwargs):
        super().__init__(**kwargs)
        self.workers = workers
        self.format = format


class ClassifierCfg(CfgBase):

    """
    Configuration tree of the classifier.

    Examples
    --------
    >>> cfg = ClassifierCfg()
    >>> cfg["sieve.q_max_index"]
    15
    """

    SER_KEYS = CfgBase.SER_KEYS + ("data", "range", "sieve", "petri", "run")

    def __init__(self, **kwargs):
        super().__init__()
        self.data = DataCfg()
        self.range = RangeCfg()
        self.sieve = SieveCfg()
        self.petri = PetriCfg()
        self.run = RunCfg()
        for k, v in kwargs.items():
            self[k] = v

    def _from_dict(self, d):
        for k, v in d.items():
            if isinstance(v, dict) and k in self.SER_KEYS:
                sub = getattr(self, k)
                for kk, vv in v.items():
                    if kk not in sub.SER_KEYS:
                        raise ValueError("invalid configuration key ({:s})"
                                         .format(k + "." + kk))
                    setattr(sub, kk, vv)
            else:
                raise ValueError("invalid configuration key ({:s})"
                                 .format(str(k)))

    def newform_path(self):
        return _resolve_data_path(self.data.newform_db, "newforms.nfd")

    def curve_path(self):
        return _resolve_data_path(self.data.curve_db, "curves.ecd")


def _resolve_data_path(path, default_name):
    if path is None:
        installed = os.path.join(env.DIR_DATAROOT, default_name)
        if os.path.isfile(installed):
            return installed
        return os.path.join(env.DIR_DATAROOT, "sample", default_name)
    return os.path.abspath(os.path.expanduser(path))


def load_classifier_cfg(file_path=None, use_user_config=True):
    """
    Assembles the classifier configuration.

    Lookup order: built-in defaults, user config file, explicit
    configuration file, environment variables (dataset paths only).

    Parameters
    ----------
    file_path : `str` or `None`
        Explicit json or ini configuration file.
    use_user_config : `bool`
        Whether to read `~/.libxostar/config.json`.

    Returns
    -------
    cfg : `ClassifierCfg`
        Configuration.
    """
    cfg = ClassifierCfg()
    if use_user_config:
        d = env.READ_USER_CONFIG()
        if d:
            LOGGER.debug("reading user configuration ({:s})"
                         .format(env.FILE_CONFIG))
            cfg._from_dict(d)
    if file_path is not None:
        if not os.path.isfile(file_path):
            raise FileNotFoundError("configuration file not found ({:s})"
                                    .format(file_path))
        cfg.load_cfg(file_path)
    newform_db = env.GET_ENV_PATH(env.ENV_NEWFORM_DB)
    if newform_db is not None:
        cfg.data.newform_db = newform_db
    curve_db = env.GET_ENV_PATH(env.ENV_CURVE_DB)
    if curve_db is not None:
        cfg.data.curve_db = curve_db
    return cfg
