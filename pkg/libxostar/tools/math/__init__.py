from . import finite
from . import linalg
from . import ntheory
from . import poly
from . import series
