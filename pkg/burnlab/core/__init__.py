#  ./burnlab/core/__init__.py

from .BurnEngine import BurnEngine
from .PkFree import PkFree
from .Variants import Variants
from .Gadget import Gadget
from . import Acceptance
