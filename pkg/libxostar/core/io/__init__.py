from .base import *  # noqa
from . import records
