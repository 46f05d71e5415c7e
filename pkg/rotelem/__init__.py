# -*- encoding: utf-8 -*-

"""
Rotelem
"""

from pathlib import Path

from .errors import *
from .words import *
from .graphs import *
from .vmap import *
from .detector import *
from .oracle import *
from .specfile import *
from .reports import *

__version__ = "0.1.0"


def fixture_path(name: str) -> Path:
    """Return the path of one of the spec files in the ``data`` directory"""
    return Path(__file__).parent.parent / "data" / name
