"""Strategies, verifiers and table search for the GKS game."""

from .block import CodeBlockStrategy, code_block_strategy, structural_verify_block
from .code_table import (
    CodeTable,
    Codeword,
    Exact,
    NoMatch,
    OneError,
    canonical_table,
    decode,
    load_table,
    lookup_by_underline,
    parse_table,
    serialize_table,
    verify_table,
)
from .compose import ComposedStrategy, compose, exponent, measured_k, theorem2
from .game import (
    FixedAdversary,
    FloodStrategy,
    RandomAdversary,
    Sampled,
    SweepAdversary,
    flood_strategy,
    run_game,
    verify_augmented,
    verify_exhaustive,
)
from .report import VerificationReport

__version__ = "0.1.0"
