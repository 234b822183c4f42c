from . import records
from . import sequences
from . import types
