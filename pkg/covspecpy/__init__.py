from .errors import * # noqa ignore=F405
from .numbers import * # noqa ignore=F405
from .rng import * # noqa ignore=F405
from .utils import * # noqa ignore=F405
from .graphs import * # noqa ignore=F405
from .free_group import * # noqa ignore=F405
from .covers import * # noqa ignore=F405
from .spectra import * # noqa ignore=F405
from .homotopy import * # noqa ignore=F405
from .zoo import * # noqa ignore=F405
from .gh import * # noqa ignore=F405
from .files import * # noqa ignore=F405
from .version import __version__
