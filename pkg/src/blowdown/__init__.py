"""
Exact bookkeeping for rational blowdowns of plumbings found in blown-up CP2
"""

__version__ = "0.1.0"

from . import utils  # noqa: F401
from . import kernel  # noqa: F401
from . import field  # noqa: F401
from . import blowup  # noqa: F401
from . import plumbing  # noqa: F401
from . import surgery  # noqa: F401
from . import scenario  # noqa: F401
