"""Exact computation in Grigorchuk-type tree groups and their product
replacement graphs: reduced-word arithmetic, rigid-stabilizer witnesses,
Schreier traversals, cubic-tuple growth certificates, ball censuses and
seeded random walks."""

__version__ = "0.1.0"

from .omega import CLASSICAL_OMEGA, OmegaSequence
from .words import TreeWord, identity, level_strings, reduce_letters, same_action, word

__all__ = [
    "CLASSICAL_OMEGA",
    "OmegaSequence",
    "TreeWord",
    "identity",
    "level_strings",
    "reduce_letters",
    "same_action",
    "word",
    "__version__",
]
