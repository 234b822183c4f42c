from . import errors
from . import util
from . import io
from . import cfg
from . import data
