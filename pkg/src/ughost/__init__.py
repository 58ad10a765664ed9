"""Utility Ghost: turn-based district assignment as a two-player game.

Subpackages cover the generic game engine (`core`), state graphs and
admissible-map enumeration (`districts`), the balanced balls-and-bins game
(`balanced`), the votes--seats experiments (`experiments`), and the HTTP
play service (`service`).
"""

from ughost.core import (
    EmptyLanguage,
    GameValue,
    GhostError,
    InvalidPrefix,
    LanguageOracle,
    StrategyIllegalMove,
    TerminalPrefix,
    best_move,
    legal_moves,
    play_out,
    solve,
    solve_alpha_beta,
    trie_language,
)

__version__ = "0.1.0"

__all__ = [
    "EmptyLanguage",
    "GameValue",
    "GhostError",
    "InvalidPrefix",
    "LanguageOracle",
    "StrategyIllegalMove",
    "TerminalPrefix",
    "best_move",
    "legal_moves",
    "play_out",
    "solve",
    "solve_alpha_beta",
    "trie_language",
]
