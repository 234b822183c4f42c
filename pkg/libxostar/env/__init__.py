import inspect
import json
import os
import sys

from . import logging


###############################################################################
# Utility functions
###############################################################################


def READ_JSON(file_path, obj=None):
    if obj is None:
        obj = {}
    if os.path.isfile(file_path) and os.path.getsize(file_path) > 0:
        with open(file_path, "r") as f:
            obj.update(json.load(f))
    return obj


###############################################################################
# Package metadata
###############################################################################


XOSTAR_VERSION_MAJOR = 0
XOSTAR_VERSION_MINOR = 3
XOSTAR_VERSION_DEV = "a"
XOSTAR_VERSION = (
    str(XOSTAR_VERSION_MAJOR) + "."
    + str(XOSTAR_VERSION_MINOR)
    + XOSTAR_VERSION_DEV
)
short_version = str(XOSTAR_VERSION_MAJOR) + "." + str(XOSTAR_VERSION_MINOR)
__version__ = XOSTAR_VERSION


###############################################################################
# Directories
###############################################################################


# Current working directory
DIR_CWD = os.getcwd()

# Source code
DIR_SRCROOT = os.path.dirname(os.path.dirname(os.path.abspath(
    inspect.getfile(inspect.currentframe())
)))
DIR_PKGROOT = os.path.dirname(DIR_SRCROOT)
DIR_DATAROOT = os.path.join(DIR_PKGROOT, "data")

# User environment
DIR_USER = (os.environ["USERPROFILE"] if sys.platform == "win32"
            else os.path.expanduser("~"))
DIR_XOSTAR = os.path.join(DIR_USER, ".libxostar")
FILE_CONFIG = os.path.join(DIR_XOSTAR, "config.json")


###############################################################################
# Environment variables
###############################################################################


# Only the database paths may be overridden from the environment
ENV_NEWFORM_DB = "XOSTAR_NEWFORM_DB"
ENV_CURVE_DB = "XOSTAR_CURVE_DB"


def GET_ENV_PATH(var_name):
    """
    Gets a file path from an environment variable.

    Returns
    -------
    path : `str` or `None`
        Expanded path, `None` if the variable is unset or empty.
    """
    path = os.environ.get(var_name, "").strip()
    if not path:
        return None
    return os.path.abspath(os.path.expanduser(path))


def READ_USER_CONFIG():
    """
    Reads the user configuration file if it exists (never creates it).
    """
    return READ_JSON(FILE_CONFIG)
