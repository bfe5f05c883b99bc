from ._core import *  # noqa: F401,F403
from ._core import __version__, CurvgaugeError  # noqa: F401
