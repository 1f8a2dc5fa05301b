from .base import *  # noqa: F401, F403
from .ensembles import *  # noqa: F401, F403
from .reductions import *  # noqa: F401, F403
from .streams import *  # noqa: F401, F403
