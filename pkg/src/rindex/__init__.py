"""Dynamic r-index over a text that grows one symbol at a time.

Main entry points: ``DynamicIndex`` (count/locate under extension),
``Lz77Parser`` (online LZ77), ``FrozenIndex`` (matching statistics) and the
``rrix`` command line tool.
"""
from .errors import RIndexError
from .lz77 import Lz77Parser, Lz77Phrase, parse as lz77_parse
from .ms import FrozenIndex, MatchingStatistics, Side, mems, minimal_absent
from .rindex import BoundarySet, DynamicIndex
from .rlbwt import DynamicRlbwt, Interval
from .runs import RunSequence
from .text import END, Alphabet, Text, ingest, sentinel
from .toehold import AugmentedRlbwt, ToeholdCursor

__all__ = [
    "Alphabet", "AugmentedRlbwt", "BoundarySet", "DynamicIndex", "DynamicRlbwt", "END",
    "FrozenIndex", "Interval", "Lz77Parser", "Lz77Phrase", "MatchingStatistics",
    "RIndexError", "RunSequence", "Side", "Text", "ToeholdCursor", "ingest", "lz77_parse",
    "mems", "minimal_absent", "sentinel",
]
