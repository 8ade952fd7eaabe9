"""Avoidability of finite sets of partial words."""
from .decider import (
    Avoidable,
    Unavoidable,
    Unknown,
    Verdict,
    WindowGraphConfig,
    decide,
    decide_bounded_period,
    decide_exact,
)
from .words import (
    HOLE,
    Alphabet,
    PartialWord,
    PeriodicWord,
    UniformSet,
    avoids_set,
    build_X0,
    compatible,
    meets,
    parse_set_text,
    read_set_file,
    rename_letters,
    word,
)

__version__ = "0.1.0"

__all__ = [
    "HOLE",
    "Alphabet",
    "Avoidable",
    "PartialWord",
    "PeriodicWord",
    "Unavoidable",
    "UniformSet",
    "Unknown",
    "Verdict",
    "WindowGraphConfig",
    "avoids_set",
    "build_X0",
    "compatible",
    "decide",
    "decide_bounded_period",
    "decide_exact",
    "meets",
    "parse_set_text",
    "read_set_file",
    "rename_letters",
    "word",
]
