from . import star
from . import frobenius
from . import sieve
from . import canonical
from . import models
from . import pipeline
