from ._yamacone import *  # noqa: F401,F403
from ._yamacone import __version__, __doc__  # noqa: F401
