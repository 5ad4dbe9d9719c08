from kdirac import (
    cache,
    checks,
    cli,
    clifford,
    config,
    consts,
    dirac,
    exactla,
    exceptions,
    liealg,
    partitions,
    polydiff,
    report,
    syzygy,
    utils,
)
from kdirac.cache import *  # noqa: F401,F403
from kdirac.checks import *  # noqa: F401,F403
from kdirac.cli import *  # noqa: F401,F403
from kdirac.clifford import *  # noqa: F401,F403
from kdirac.config import *  # noqa: F401,F403
from kdirac.consts import *  # noqa: F401,F403
from kdirac.dirac import *  # noqa: F401,F403
from kdirac.exactla import *  # noqa: F401,F403
from kdirac.exceptions import *  # noqa: F401,F403
from kdirac.liealg import *  # noqa: F401,F403
from kdirac.partitions import *  # noqa: F401,F403
from kdirac.polydiff import *  # noqa: F401,F403
from kdirac.report import *  # noqa: F401,F403
from kdirac.syzygy import *  # noqa: F401,F403
from kdirac.utils import *  # noqa: F401,F403

__all__ = [
    name
    for module in (
        cache,
        checks,
        cli,
        clifford,
        config,
        consts,
        dirac,
        exactla,
        exceptions,
        liealg,
        partitions,
        polydiff,
        report,
        syzygy,
        utils,
    )
    for name in module.__all__
]
