"""Alternating-move engine for finite word games with terminal utilities.

A game instance is a finite language ``L`` together with a utility pair for
every complete word.  Two players extend a string one symbol at a time; a
symbol is legal exactly when the extended string still starts some word of
``L``, so illegal strings are rejected at the boundary and never scored.
Completing a word ends the game and pays ``(u1, u2)``.

``solve`` computes exact backward-induction values.  The mover at each node
maximizes its own terminal utility; ties are broken first by minimizing the
opponent's utility and then by the smallest symbol under the language's
declared ordering.  That makes values, principal moves, and engine play-outs
fully deterministic.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Mapping

Symbol = Any
Prefix = tuple
# A strategy maps (prefix, mover) -> legal symbol, where mover is 1 or 2.
Strategy = Callable[[Prefix, int], Symbol]


class GhostError(Exception):
    """Base class for engine errors."""


class InvalidPrefix(GhostError):
    """The given string is not a prefix of any word in the language."""


class TerminalPrefix(GhostError):
    """A non-terminal prefix was required (e.g. asking for a move at the end)."""


class EmptyLanguage(GhostError):
    """A language needs at least one word."""


class StrategyIllegalMove(GhostError):
    """A strategy returned a symbol that is not legal at its prefix."""

    def __init__(self, player: int, prefix: Prefix, symbol: Symbol):
        super().__init__(
            f"player {player} returned illegal move {symbol!r} after {list(prefix)!r}"
        )
        self.player = player
        self.symbol = symbol


@dataclass(frozen=True)
class GameValue:
    """Backward-induction value of a position.

    ``principal_move`` is None exactly at terminal prefixes; otherwise it is
    the mover's canonical optimal move under the global tie-break rule.
    """

    u1: float
    u2: float
    principal_move: Symbol | None = None


class LanguageOracle:
    """Finite language plus terminal utilities.

    Subclasses must keep ``legal_moves`` deterministic and sorted under the
    language's symbol ordering; the solver's lexicographic tie-break relies
    on that order.  ``canonical_key`` may identify prefixes whose subgames
    are provably identical (e.g. the same partial assignment reached in a
    different move order); the default keys each prefix by itself, which is
    always sound.

    ``zero_sum_total`` is the constant value of ``u1 + u2`` when the language
    guarantees one, else None.  Declaring it enables the pruned solver.
    """

    zero_sum_total: float | None = None

    def legal_moves(self, prefix: Prefix) -> tuple:
        raise NotImplementedError

    def is_terminal(self, prefix: Prefix) -> bool:
        raise NotImplementedError

    def utilities(self, prefix: Prefix) -> tuple[float, float]:
        raise NotImplementedError

    def is_prefix(self, prefix: Prefix) -> bool:
        raise NotImplementedError

    def canonical_key(self, prefix: Prefix) -> Hashable:
        return tuple(prefix)


def _require_prefix(prefix, lang: LanguageOracle) -> Prefix:
    prefix = tuple(prefix)
    if not lang.is_prefix(prefix):
        raise InvalidPrefix(f"not a prefix of any word in the language: {list(prefix)!r}")
    return prefix


def legal_moves(prefix, lang: LanguageOracle) -> tuple:
    """All symbols that keep the prefix completable; empty iff terminal."""
    return tuple(lang.legal_moves(_require_prefix(prefix, lang)))


def _value(prefix: Prefix, lang: LanguageOracle, table: dict | None) -> tuple[float, float]:
    """Utility pair under optimal play from ``prefix`` (assumed valid)."""
    if lang.is_terminal(prefix):
        return tuple(lang.utilities(prefix))
    if table is not None:
        key = lang.canonical_key(prefix)
        hit = table.get(key)
        if hit is not None:
            return hit
    me = len(prefix) % 2
    best = None
    best_own = best_opp = 0.0
    for sym in lang.legal_moves(prefix):
        child = _value(prefix + (sym,), lang, table)
        own, opp = child[me], child[1 - me]
        if best is None or own > best_own or (own == best_own and opp < best_opp):
            best, best_own, best_opp = child, own, opp
    if best is None:
        raise GhostError(f"language reported a dead non-terminal prefix: {list(prefix)!r}")
    if table is not None:
        table[key] = best
    return best


def solve(prefix, lang: LanguageOracle, memo: dict | bool | None = None) -> GameValue:
    """Exact value and principal move at ``prefix``.

    ``memo`` may be a dict shared across calls within one solving session,
    None for a fresh per-call table, or False to disable memoization
    entirely.  The principal move is always selected in the real symbol
    space (memo entries store only utility pairs), so canonical-state
    sharing never disturbs the lexicographic tie-break.
    """
    prefix = _require_prefix(prefix, lang)
    table = {} if memo is None else (None if memo is False else memo)
    if lang.is_terminal(prefix):
        u1, u2 = lang.utilities(prefix)
        return GameValue(u1, u2, None)
    me = len(prefix) % 2
    move = None
    pair = (0.0, 0.0)
    best_own = best_opp = 0.0
    for sym in lang.legal_moves(prefix):
        child = _value(prefix + (sym,), lang, table)
        own, opp = child[me], child[1 - me]
        if move is None or own > best_own or (own == best_own and opp < best_opp):
            move, pair, best_own, best_opp = sym, child, own, opp
    if move is None:
        raise GhostError(f"language reported a dead non-terminal prefix: {list(prefix)!r}")
    return GameValue(pair[0], pair[1], move)


def best_move(prefix, lang: LanguageOracle, memo: dict | bool | None = None) -> Symbol:
    """Principal move at ``prefix``; raises TerminalPrefix at complete words."""
    value = solve(prefix, lang, memo)
    if value.principal_move is None:
        raise TerminalPrefix(f"no move at terminal prefix {list(prefix)!r}")
    return value.principal_move


def play_out(prefix, lang: LanguageOracle, s1: Strategy, s2: Strategy):
    """Alternate ``s1``/``s2`` from ``prefix`` until a word is complete.

    The mover is implied by prefix length (player 1 moves at even lengths).
    Returns ``(word, u1, u2, trace)`` where trace lists every (mover, symbol)
    appended by this play-out.  Raises StrategyIllegalMove, identifying the
    offending player, if a strategy steps outside the language.
    """
    prefix = _require_prefix(prefix, lang)
    trace = []
    while not lang.is_terminal(prefix):
        mover = len(prefix) % 2 + 1
        strategy = s1 if mover == 1 else s2
        sym = strategy(prefix, mover)
        if sym not in lang.legal_moves(prefix):
            raise StrategyIllegalMove(mover, prefix, sym)
        prefix = prefix + (sym,)
        trace.append((mover, sym))
    u1, u2 = lang.utilities(prefix)
    return prefix, u1, u2, trace


def minimax_strategy(lang: LanguageOracle, memo: dict | None = None) -> Strategy:
    """Strategy wrapper around ``best_move`` with a shared memo table."""
    table: dict = {} if memo is None else memo

    def strategy(prefix, mover):
        return best_move(prefix, lang, table)

    return strategy


def first_legal_strategy(lang: LanguageOracle) -> Strategy:
    """Plays the smallest legal symbol; useful as a termination baseline."""

    def strategy(prefix, mover):
        moves = lang.legal_moves(tuple(prefix))
        if not moves:
            raise TerminalPrefix(f"no move at terminal prefix {list(prefix)!r}")
        return moves[0]

    return strategy


def scripted_strategy(moves: Iterable[Symbol]) -> Strategy:
    """Replays a fixed move list; each call consumes the next entry."""
    queue = list(moves)

    def strategy(prefix, mover):
        if not queue:
            raise GhostError("scripted strategy ran out of moves")
        return queue.pop(0)

    return strategy


def principal_variation(prefix, lang: LanguageOracle, memo: dict | None = None):
    """Canonical optimal line from ``prefix`` to a terminal word.

    Returns (final GameValue at ``prefix``, list of (mover, symbol)).
    """
    prefix = _require_prefix(prefix, lang)
    table = {} if memo is None else memo
    root = solve(prefix, lang, table)
    line = []
    while not lang.is_terminal(prefix):
        mover = len(prefix) % 2 + 1
        sym = solve(prefix, lang, table).principal_move
        line.append((mover, sym))
        prefix = prefix + (sym,)
    return root, line


def _ab(prefix: Prefix, lang: LanguageOracle, alpha: float, beta: float) -> float:
    """Fail-soft alpha-beta on u1; exact whenever the true value is inside the window."""
    if lang.is_terminal(prefix):
        return lang.utilities(prefix)[0]
    maximizing = len(prefix) % 2 == 0
    best = None
    for sym in lang.legal_moves(prefix):
        v = _ab(prefix + (sym,), lang, alpha, beta)
        if maximizing:
            if best is None or v > best:
                best = v
            if best > alpha:
                alpha = best
            if alpha >= beta:
                break
        else:
            if best is None or v < best:
                best = v
            if best < beta:
                beta = best
            if alpha >= beta:
                break
    if best is None:
        raise GhostError(f"language reported a dead non-terminal prefix: {list(prefix)!r}")
    return best


def solve_alpha_beta(prefix, lang: LanguageOracle) -> GameValue:
    """Pruned solve for zero-sum languages.

    Requires ``lang.zero_sum_total``.  Children are scanned in symbol order
    and the incumbent is replaced only on strict improvement, so the root
    value and principal move match the unpruned solver: in a zero-sum game
    the opponent-utility tie-break never discriminates, and fail-soft
    bounds returned by non-improving children never exceed the incumbent.
    """
    if lang.zero_sum_total is None:
        raise GhostError("alpha-beta requires a language that declares itself zero-sum")
    prefix = _require_prefix(prefix, lang)
    total = lang.zero_sum_total
    if lang.is_terminal(prefix):
        u1, u2 = lang.utilities(prefix)
        return GameValue(u1, u2, None)
    maximizing = len(prefix) % 2 == 0
    alpha, beta = float("-inf"), float("inf")
    best = None
    move = None
    for sym in lang.legal_moves(prefix):
        v = _ab(prefix + (sym,), lang, alpha, beta)
        if maximizing:
            if best is None or v > best:
                best, move = v, sym
                alpha = best
        else:
            if best is None or v < best:
                best, move = v, sym
                beta = best
    if move is None:
        raise GhostError(f"language reported a dead non-terminal prefix: {list(prefix)!r}")
    return GameValue(best, total - best, move)


class TrieLanguage(LanguageOracle):
    """Language given by an explicit word list.

    Words are sequences of single-character symbols.  A word that extends a
    shorter word can never be reached (play stops the moment a word is
    complete), so such words are pruned at construction with a warning.
    Utilities default to classic Ghost scoring: whoever completes a word
    loses one point to the other player.
    """

    def __init__(self, utilities: Mapping[str, tuple[float, float]]):
        if not utilities:
            raise EmptyLanguage("word list is empty")
        self._utilities = dict(utilities)
        self._root: dict = {}
        for word in self._utilities:
            node = self._root
            for letter in word:
                node = node.setdefault(letter, {})
        sums = {u1 + u2 for u1, u2 in self._utilities.values()}
        self.zero_sum_total = sums.pop() if len(sums) == 1 else None

    @property
    def words(self) -> frozenset:
        return frozenset(self._utilities)

    def _node(self, prefix: Prefix):
        node = self._root
        for letter in prefix:
            if not isinstance(node, dict) or letter not in node:
                return None
            node = node[letter]
        return node

    def is_prefix(self, prefix: Prefix) -> bool:
        return self._node(prefix) is not None

    def is_terminal(self, prefix: Prefix) -> bool:
        node = self._node(prefix)
        return node is not None and not node

    def legal_moves(self, prefix: Prefix) -> tuple:
        node = self._node(prefix)
        if node is None:
            raise InvalidPrefix(f"not a prefix of any word: {''.join(prefix)!r}")
        return tuple(sorted(node))

    def utilities(self, prefix: Prefix) -> tuple[float, float]:
        word = "".join(prefix)
        if word not in self._utilities:
            raise TerminalPrefix(f"utilities requested at non-terminal prefix {word!r}")
        return self._utilities[word]


def _ghost_default_utility(word: str) -> tuple[float, float]:
    # The player who appends the final letter completes the word and loses.
    return (-1.0, 1.0) if len(word) % 2 == 1 else (1.0, -1.0)


def trie_language(
    words: Iterable[str] | Mapping[str, tuple[float, float]],
    utilities: Mapping[str, tuple[float, float]] | None = None,
) -> TrieLanguage:
    """Build a TrieLanguage from a word list.

    ``words`` may itself be a mapping word -> (u1, u2); otherwise an
    optional ``utilities`` mapping overrides the classic Ghost default.
    Words that strictly extend another word are unreachable under the
    stop-at-first-word rule and are dropped with a warning.
    """
    if isinstance(words, Mapping):
        table = {str(w): (float(u[0]), float(u[1])) for w, u in words.items()}
    else:
        given = dict(utilities or {})
        table = {}
        for w in words:
            w = str(w)
            pair = given.get(w)
            table[w] = tuple(map(float, pair)) if pair else _ghost_default_utility(w)
    if not table:
        raise EmptyLanguage("word list is empty")
    kept = {}
    vocabulary = set(table)
    for word in sorted(table, key=len):
        blocker = next(
            (word[:i] for i in range(1, len(word)) if word[:i] in vocabulary), None
        )
        if blocker is not None:
            warnings.warn(
                f"word {word!r} pruned: unreachable because {blocker!r} ends the game first",
                stacklevel=2,
            )
            continue
        kept[word] = table[word]
    return TrieLanguage(kept)
