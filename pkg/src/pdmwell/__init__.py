"""Exactly solvable semi-infinite quantum wells for the mass M(x) = (1 + x/a)^-2."""
from .errors import (
    BoundStateError,
    ConfigurationError,
    ConstructionError,
    ConvergenceError,
    DomainError,
)
from .models import HarmonicPdmWell, MorseSource, RosenMorse2Source, SechPdmWell
from .pct import MassProfile, PctMap

__version__ = "0.1.0"
