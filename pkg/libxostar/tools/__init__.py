from . import math
from . import modular
