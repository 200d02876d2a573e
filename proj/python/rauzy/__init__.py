"""Rauzy noise of digit sequences: predictors, generators, the marker codec and Markov measures."""

from ._core import *  # noqa: F401,F403
from ._core import (
    AmbiguityError,
    CodecParams,
    DigitSeq,
    Orientation,
    ParseError,
    RefusalError,
)

__version__ = "0.3.0"
