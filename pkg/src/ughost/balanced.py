"""The balanced balls-and-bins assignment game.

For positive integers j and m, two players alternately place one of
n = 2j(2m+1) balls (half white, half black, drawn from a shared pool) into
one of k = 2j bins of capacity 2m+1.  Player 1 wins a bin that ends with a
white majority (at least m+1 whites); player 2 wins the rest.  The module
provides the state machine, the two proved strategies (player 2's mirror
pairing and player 1's selected-bin strategy), exact solvers for small
instances, and audit instrumentation for the quantities the strategy
analysis tracks (selected bins, non-wasted whites f, empty-bin counts).

Conventions for every "any"/"arbitrary" choice: lowest bin index first,
white before black.  The strategies' guarantees are choice-independent, so
pinning the choices only buys reproducibility.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from math import comb

WHITE = "white"
BLACK = "black"


class BalancedGameError(Exception):
    pass


class BinFull(BalancedGameError):
    pass


class ColorExhausted(BalancedGameError):
    pass


class BudgetExceeded(BalancedGameError):
    def __init__(self, estimate: int, budget: int):
        super().__init__(f"about {estimate} states, budget {budget}")
        self.estimate = estimate


@dataclass(frozen=True)
class BalancedConfig:
    j: int
    m: int

    def __post_init__(self):
        if self.j < 1 or self.m < 1:
            raise ValueError("j and m must be positive")

    @property
    def bins(self) -> int:
        return 2 * self.j

    @property
    def capacity(self) -> int:
        return 2 * self.m + 1

    @property
    def per_color(self) -> int:
        return self.j * (2 * self.m + 1)

    @property
    def total_balls(self) -> int:
        return 2 * self.j * (2 * self.m + 1)

    @property
    def majority(self) -> int:
        return self.m + 1

    def mirror_bin(self, index: int) -> int:
        """Partner under the (a, b) |-> (-a, b) bin pairing."""
        return (index + self.j) % self.bins

    def bin_label(self, index: int) -> tuple[int, int]:
        """(a, b) with a in {+1, -1} and b in [1, j]."""
        return (1 if index < self.j else -1, index % self.j + 1)


@dataclass(frozen=True)
class Move:
    bin: int
    color: str


@dataclass(frozen=True)
class BalancedState:
    config: BalancedConfig
    white: tuple[int, ...]
    black: tuple[int, ...]

    @classmethod
    def initial(cls, config: BalancedConfig) -> "BalancedState":
        zeros = (0,) * config.bins
        return cls(config, zeros, zeros)

    @property
    def placed(self) -> int:
        return sum(self.white) + sum(self.black)

    @property
    def remaining_white(self) -> int:
        return self.config.per_color - sum(self.white)

    @property
    def remaining_black(self) -> int:
        return self.config.per_color - sum(self.black)

    @property
    def mover(self) -> int:
        """1 or 2; player 1 moves when an even number of balls is placed."""
        return self.placed % 2 + 1

    @property
    def round(self) -> int:
        """1-based round number of the next move."""
        return self.placed // 2 + 1

    @property
    def is_over(self) -> bool:
        return self.placed == self.config.total_balls

    def total(self, index: int) -> int:
        return self.white[index] + self.black[index]

    def legal_moves(self) -> list[Move]:
        if self.is_over:
            return []
        colors = [c for c, left in ((WHITE, self.remaining_white), (BLACK, self.remaining_black))
                  if left > 0]
        return [Move(b, c) for b in range(self.config.bins)
                if self.total(b) < self.config.capacity for c in colors]


def apply_move(state: BalancedState, move: Move) -> BalancedState:
    cfg = state.config
    if not (0 <= move.bin < cfg.bins):
        raise BalancedGameError(f"bin index {move.bin} out of range")
    if state.total(move.bin) >= cfg.capacity:
        raise BinFull(f"bin {move.bin} already holds {cfg.capacity} balls")
    if move.color == WHITE:
        if state.remaining_white <= 0:
            raise ColorExhausted("no white balls left")
        white = state.white[:move.bin] + (state.white[move.bin] + 1,) + state.white[move.bin + 1:]
        return BalancedState(cfg, white, state.black)
    if move.color == BLACK:
        if state.remaining_black <= 0:
            raise ColorExhausted("no black balls left")
        black = state.black[:move.bin] + (state.black[move.bin] + 1,) + state.black[move.bin + 1:]
        return BalancedState(cfg, state.white, black)
    raise BalancedGameError(f"unknown color {move.color!r}")


def remove_ball(state: BalancedState, move: Move) -> BalancedState:
    """Inverse of apply_move; used to reconstruct the pre-move snapshot."""
    cfg = state.config
    if move.color == WHITE:
        assert state.white[move.bin] > 0
        white = state.white[:move.bin] + (state.white[move.bin] - 1,) + state.white[move.bin + 1:]
        return BalancedState(cfg, white, state.black)
    assert state.black[move.bin] > 0
    black = state.black[:move.bin] + (state.black[move.bin] - 1,) + state.black[move.bin + 1:]
    return BalancedState(cfg, state.white, black)


def majority_white_bins(state: BalancedState) -> list[int]:
    """Bins where whites strictly outnumber blacks among balls placed so far.

    This is the notion the selected-bin machinery ranks by.  On a full bin
    it coincides with the win condition (at least m+1 whites), but during
    play they differ: one white in an empty bin already makes it
    majority-white, and a tied bin stops being so.
    """
    return [b for b in range(state.config.bins) if state.white[b] > state.black[b]]


def winning_bins(state: BalancedState) -> list[int]:
    """Bins holding at least m+1 whites (player 1's win condition)."""
    need = state.config.majority
    return [b for b in range(state.config.bins) if state.white[b] >= need]


def score(state: BalancedState) -> tuple[int, int]:
    """(player 1 bins, player 2 bins) at the end of the game."""
    if not state.is_over:
        raise BalancedGameError("score is defined once every ball is placed")
    p1 = len(winning_bins(state))
    return p1, state.config.bins - p1


def mirror_move(state: BalancedState, opponent_move: Move) -> Move:
    """Opposite color into the paired bin (-a, b)."""
    other = BLACK if opponent_move.color == WHITE else WHITE
    return Move(state.config.mirror_bin(opponent_move.bin), other)


def mirror_strategy(state: BalancedState, opponent_move: Move | None) -> Move:
    assert state.mover == 2 and opponent_move is not None
    return mirror_move(state, opponent_move)


def check_mirror_invariants(state: BalancedState) -> None:
    """Holds after every mirror reply: equal remaining colors, mirrored bins."""
    assert state.remaining_white == state.remaining_black
    cfg = state.config
    for b in range(cfg.bins):
        partner = cfg.mirror_bin(b)
        assert state.white[b] == state.black[partner]
        assert state.black[b] == state.white[partner]


def select_s(state: BalancedState) -> tuple[int, ...]:
    """The j selected bins at this snapshot.

    All majority-white bins ranked by most whites (up to j of them), padded
    with the fewest-total-balls bins among the rest; ties broken by lowest
    bin index.  Returned sorted by index.
    """
    cfg = state.config
    majority = sorted(majority_white_bins(state), key=lambda b: (-state.white[b], b))
    chosen = majority[: cfg.j]
    if len(chosen) < cfg.j:
        taken = set(chosen)
        rest = sorted((b for b in range(cfg.bins) if b not in taken),
                      key=lambda b: (state.total(b), b))
        chosen += rest[: cfg.j - len(chosen)]
    return tuple(sorted(chosen))


def non_wasted_white(state: BalancedState) -> int:
    """Whites in the selected bins, counting at most m+1 per bin."""
    cap = state.config.majority
    return sum(min(state.white[b], cap) for b in select_s(state))


def max_f(config: BalancedConfig) -> int:
    return config.j * config.majority


def default_move(state: BalancedState) -> Move:
    """White into the fullest selected bin still short of m+1 whites."""
    cfg = state.config
    candidates = [b for b in select_s(state)
                  if state.white[b] < cfg.majority and state.total(b) < cfg.capacity]
    assert candidates, "default move requested with no improvable selected bin"
    best = max(candidates, key=lambda b: (state.total(b), -b))
    return Move(best, WHITE)


def table1_strategy(state: BalancedState, opponent_move: Move | None) -> Move:
    """Player 1's selected-bin strategy.

    The case analysis keys on the opponent's previous move and on whether
    its bin belonged to the selected set at the time (reconstructed by
    removing that ball).  Every branch is legal from positions reached by
    following this strategy; this is asserted, not handled.
    """
    cfg = state.config
    assert state.mover == 1
    s_now = select_s(state)
    improvable = any(state.white[b] < cfg.majority for b in s_now)
    if improvable and state.remaining_white > 0:
        move = _table1_case(state, opponent_move, s_now)
    else:
        move = _fallback_move(state)
    assert state.total(move.bin) < cfg.capacity
    assert (state.remaining_white if move.color == WHITE else state.remaining_black) > 0
    return move


def _table1_case(state: BalancedState, opponent_move: Move | None, s_now) -> Move:
    cfg = state.config
    if opponent_move is None or opponent_move.color == WHITE:
        return default_move(state)
    b = opponent_move.bin
    before = remove_ball(state, opponent_move)
    in_selected = b in select_s(before)
    single_ball = state.total(b) == 1
    empty_selected = [i for i in s_now if state.total(i) == 0]
    if single_ball and empty_selected:
        return Move(empty_selected[0], WHITE)
    if in_selected and state.white[b] < cfg.majority:
        return Move(b, WHITE)
    return default_move(state)


def _fallback_move(state: BalancedState) -> Move:
    color = WHITE if state.remaining_white > 0 else BLACK
    for b in range(state.config.bins):
        if state.total(b) < state.config.capacity:
            return Move(b, color)
    raise BalancedGameError("no legal move: game already over")


def random_strategy(rng):
    """Uniform legal move using the given random.Random-like generator."""

    def strategy(state: BalancedState, opponent_move: Move | None) -> Move:
        moves = state.legal_moves()
        return moves[rng.randrange(len(moves))]

    return strategy


@dataclass
class AuditRow:
    round: int
    mover: int
    bin: int
    color: str
    f: int
    l: int
    e: int
    A: int
    B: int
    W: int
    w1: int


AUDIT_COLUMNS = ("round", "mover", "bin", "color", "f", "l", "e", "A", "B", "W", "w1")


def audit_row(state: BalancedState, move: Move) -> AuditRow:
    """Instrumentation computed fresh from the pre-move snapshot."""
    selected = select_s(state)
    majority = majority_white_bins(state)
    empty = [b for b in range(state.config.bins) if state.total(b) == 0]
    return AuditRow(
        round=state.round,
        mover=state.mover,
        bin=move.bin,
        color=move.color,
        f=non_wasted_white(state),
        l=len(majority),
        e=len(empty),
        A=len([b for b in empty if b in selected]),
        B=len([b for b in empty if b not in selected]),
        W=sum(state.white[b] for b in majority),
        w1=max((state.white[b] for b in selected), default=0),
    )


class FMonotonicityAuditor:
    """Checks the growth of f along a play where player 1 uses table1.

    f is sampled immediately before each player-2 turn.  Between samples,
    growth of at least one is asserted when player 1 had a white ball and a
    selected bin short of m+1 whites at his intervening turn; plain
    monotonicity is asserted whenever a white ball was available or f was
    already maximal.  Once the white pool is empty and f is below maximum
    the selection can drift, so those steps are recorded, not asserted.
    """

    def __init__(self, config: BalancedConfig):
        self.config = config
        self.prev_f: int | None = None
        self.strict_due = False
        self.monotone_due = False
        self.skipped_steps = 0

    def before_p2_move(self, state: BalancedState) -> None:
        f = non_wasted_white(state)
        if self.prev_f is not None:
            if self.strict_due:
                assert f >= self.prev_f + 1, f"f failed to grow: {self.prev_f} -> {f}"
            elif self.monotone_due:
                assert f >= self.prev_f, f"f decreased: {self.prev_f} -> {f}"
            else:
                self.skipped_steps += 1
        self.prev_f = f

    def before_p1_move(self, state: BalancedState) -> None:
        cfg = self.config
        selected = select_s(state)
        improvable = any(state.white[b] < cfg.majority for b in selected)
        white_avail = state.remaining_white > 0
        self.strict_due = improvable and white_avail
        self.monotone_due = white_avail or not improvable


def early_game_bound(config: BalancedConfig, r: int) -> float:
    j = config.j
    return (1 + (j - 1) / (2 * j - 1)) * (r - j) + 1


def play_balanced(config: BalancedConfig, strategy1, strategy2, *,
                  audit: list[AuditRow] | None = None,
                  check_mirror: bool = False,
                  check_table1_f: bool = False):
    """Drive one game; strategies are callables (state, opponent_move) -> Move.

    Optional checks: the mirror invariants after every player-2 reply, and
    the f-growth audit when player 1 follows the table strategy.  The
    early-game lower bound on f is asserted whenever its hypothesis holds
    (round r > 2j, m > 2r, player 2 played at most j blacks so far).
    Returns the final state.
    """
    state = BalancedState.initial(config)
    f_audit = FMonotonicityAuditor(config) if check_table1_f else None
    last_move: Move | None = None
    p2_blacks = 0
    while not state.is_over:
        mover = state.mover
        if f_audit is not None:
            if mover == 1:
                f_audit.before_p1_move(state)
            else:
                f_audit.before_p2_move(state)
                if state.round - 1 > 2 * config.j and config.m > 2 * (state.round - 1) \
                        and p2_blacks <= config.j:
                    bound = early_game_bound(config, state.round - 1)
                    assert non_wasted_white(state) >= bound, (
                        f"early-game bound violated at round {state.round}: "
                        f"f={non_wasted_white(state)} < {bound}"
                    )
        strategy = strategy1 if mover == 1 else strategy2
        move = strategy(state, last_move)
        if audit is not None:
            audit.append(audit_row(state, move))
        state = apply_move(state, move)
        if mover == 2:
            if move.color == BLACK:
                p2_blacks += 1
            if check_mirror:
                check_mirror_invariants(state)
        last_move = move
    if non_wasted_white(state) == max_f(config):
        assert score(state)[0] >= config.j
    return state


# ---------------------------------------------------------------------------
# Exact search
# ---------------------------------------------------------------------------

DEFAULT_BUDGET = 5_000_000


def _content_count(config: BalancedConfig) -> int:
    cap = config.capacity
    return (cap + 1) * (cap + 2) // 2


def _check_budget_canonical(config: BalancedConfig, budget: int) -> None:
    estimate = comb(_content_count(config) + config.bins - 1, config.bins)
    if estimate > budget:
        raise BudgetExceeded(estimate, budget)


def _check_budget_raw(config: BalancedConfig, budget: int) -> None:
    estimate = _content_count(config) ** config.bins
    if estimate > budget:
        raise BudgetExceeded(estimate, budget)


def exact_solve(config: BalancedConfig, budget: int = DEFAULT_BUDGET) -> int:
    """Player 1's bin count under optimal play by both sides.

    Bins are exchangeable when both players are free, so states are
    canonicalized as sorted multisets of (white, black) bin contents; the
    remaining ball counts are implied.  Raises BudgetExceeded when the
    canonical state space is too large.
    """
    _check_budget_canonical(config, budget)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), config.total_balls + 100))
    cap = config.capacity
    per_color = config.per_color
    k = config.bins
    need = config.majority
    memo: dict[tuple, int] = {}

    def search(bins: tuple[tuple[int, int], ...]) -> int:
        placed_white = sum(w for w, _ in bins)
        placed_black = sum(b for _, b in bins)
        placed = placed_white + placed_black
        if placed == config.total_balls:
            return sum(1 for w, _ in bins if w >= need)
        key = bins
        hit = memo.get(key)
        if hit is not None:
            return hit
        maximizing = placed % 2 == 0
        colors = []
        if placed_white < per_color:
            colors.append(0)
        if placed_black < per_color:
            colors.append(1)
        best = None
        seen_contents = set()
        for i in range(k):
            content = bins[i]
            if content in seen_contents or sum(content) >= cap:
                continue
            seen_contents.add(content)
            for color in colors:
                updated = (content[0] + 1, content[1]) if color == 0 else (content[0], content[1] + 1)
                child = tuple(sorted(bins[:i] + (updated,) + bins[i + 1:]))
                value = search(child)
                if best is None or (value > best if maximizing else value < best):
                    best = value
        memo[key] = best
        return best

    start = tuple(((0, 0),) * k)
    return search(start)


def best_response_value(config: BalancedConfig, fixed, fixed_player: int,
                        budget: int = DEFAULT_BUDGET, *,
                        check_table1_f: bool = False) -> int:
    """Best final bin count the free player can force against ``fixed``.

    The fixed player's strategy may depend on the opponent's previous move,
    so search nodes are the free player's turns with the fixed reply folded
    into each edge.  States are memoized raw (bin order preserved): the
    strategies' tie-breaks read bin indices, so exchangeability does not
    hold here.  With ``check_table1_f`` the f-growth audit from
    FMonotonicityAuditor runs on every searched edge (player 1 fixed only).
    """
    if fixed_player not in (1, 2):
        raise ValueError("fixed_player must be 1 or 2")
    _check_budget_raw(config, budget)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 2 * config.total_balls + 100))
    free_player = 3 - fixed_player
    memo: dict[tuple, int] = {}

    def free_value(state: BalancedState) -> int:
        if state.is_over:
            p1, p2 = score(state)
            return p1 if free_player == 1 else p2
        key = (state.white, state.black)
        hit = memo.get(key)
        if hit is not None:
            return hit
        assert state.mover == free_player
        best = None
        for move in state.legal_moves():
            after = apply_move(state, move)
            if after.is_over:
                value = free_value(after)
            else:
                reply = fixed(after, move)
                replied = apply_move(after, reply)
                if check_table1_f and fixed_player == 1:
                    _audit_edge(state, after, replied)
                value = free_value(replied)
            if best is None or value > best:
                best = value
        memo[key] = best
        return best

    def _audit_edge(before_free: BalancedState, mid: BalancedState, after: BalancedState):
        # before_free: snapshot before player 2's move in round r, where
        # f(r) is read; mid: before player 1's reply; after: f(r+1).
        cfg = config
        selected = select_s(mid)
        improvable = any(mid.white[b] < cfg.majority for b in selected)
        white_avail = mid.remaining_white > 0
        f_before = non_wasted_white(before_free)
        f_after = non_wasted_white(after)
        if improvable and white_avail:
            assert f_after >= f_before + 1, f"f failed to grow: {f_before} -> {f_after}"
        elif white_avail or not improvable:
            assert f_after >= f_before, f"f decreased: {f_before} -> {f_after}"

    state = BalancedState.initial(config)
    if fixed_player == 1:
        first = fixed(state, None)
        state = apply_move(state, first)
    return free_value(state)


def exact_policy(config: BalancedConfig, budget: int = DEFAULT_BUDGET):
    """Optimal-play strategy backed by the canonical-state solver."""
    _check_budget_canonical(config, budget)
    values: dict[tuple, int] = {}

    def value(state: BalancedState) -> int:
        if state.is_over:
            return score(state)[0]
        key = tuple(sorted(zip(state.white, state.black)))
        hit = values.get(key)
        if hit is not None:
            return hit
        maximizing = state.mover == 1
        options = [value(apply_move(state, move)) for move in state.legal_moves()]
        best = max(options) if maximizing else min(options)
        values[key] = best
        return best

    def strategy(state: BalancedState, opponent_move: Move | None) -> Move:
        maximizing = state.mover == 1
        moves = state.legal_moves()
        order = {WHITE: 0, BLACK: 1}
        moves.sort(key=lambda mv: (mv.bin, order[mv.color]))
        best_move_ = None
        best_value = None
        for move in moves:
            v = value(apply_move(state, move))
            better = best_value is None or (v > best_value if maximizing else v < best_value)
            if better:
                best_move_, best_value = move, v
        return best_move_

    return strategy
