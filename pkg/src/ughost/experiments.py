"""Votes--seats experiments over small states.

Reproduces the ten-cell-state study (seat counts of a random admissible
map, the best and worst map for party A, and the protocol outcome, as the
number of unanimous-A cells sweeps 0..n) and the New Hampshire case study,
emitting machine-readable tables.

Voter distributions are drawn with a small counter-based generator
(splitmix64 feeding a Fisher-Yates shuffle) so each (x, trial) cell has its
own substream: results are identical under any execution order, and
reproducible from the seed alone on any platform.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from ughost import core
from ughost.districts import (
    Atom,
    Constraints,
    Districting,
    SeatCount,
    StateGraph,
    enumerate_maps,
    make_language,
    seats,
)

CONDITIONS = ("random_map", "max_A", "min_A", "ghost")


class NotTwoDistricts(Exception):
    pass


@dataclass(frozen=True)
class ExperimentRecord:
    condition: str
    x: int
    statistic: str  # mean | std | exact_expectation
    value: float
    trials: int
    seed: int


CSV_HEADER = "condition,x,statistic,value,trials,seed"


def record_csv_lines(records) -> list[str]:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(f"{r.condition},{r.x},{r.statistic},{r.value!r},{r.trials},{r.seed}")
    return lines


def write_records_csv(records, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(record_csv_lines(records)) + "\n")


# ---------------------------------------------------------------------------
# Portable RNG: splitmix64 + Fisher-Yates
# ---------------------------------------------------------------------------

_MASK = (1 << 64) - 1


def _splitmix64(state: int):
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


class SplitMix64:
    """Deterministic 64-bit stream; substreams derive from a key path."""

    def __init__(self, seed: int, *path: int):
        state = seed & _MASK
        for part in path:
            state, mixed = _splitmix64(state ^ (part & _MASK))
            state = mixed
        self._state = state

    def next_u64(self) -> int:
        self._state, out = _splitmix64(self._state)
        return out

    def randbelow(self, bound: int) -> int:
        # Rejection sampling keeps the draw exactly uniform.
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % bound

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]
        return items


def draw_unanimous_a_set(rng: SplitMix64, n: int, x: int) -> int:
    """Bitmask with exactly x atoms unanimous-A, uniform over all choices."""
    order = rng.shuffle(list(range(n)))
    mask = 0
    for atom in order[:x]:
        mask |= 1 << atom
    return mask


# ---------------------------------------------------------------------------
# Seat counts and protocol values over every unanimous distribution
# ---------------------------------------------------------------------------


def map_seats_a(parts: Districting, mask: int) -> int:
    """Majority-A districts when the atoms in ``mask`` vote unanimous-A."""
    count = 0
    for part in parts:
        size = len(part)
        a_cells = sum(1 for atom in part if mask >> atom & 1)
        if 2 * a_cells > size:
            count += 1
    return count


def seats_table(maps, n: int) -> np.ndarray:
    """seats_a per (map, distribution-bitmask), shape (len(maps), 2**n)."""
    out = np.zeros((len(maps), 1 << n), dtype=np.int8)
    for i, parts in enumerate(maps):
        for mask in range(1 << n):
            out[i, mask] = map_seats_a(parts, mask)
    return out


def ghost_value_table(maps, n: int, k: int, first_party: str = "A") -> np.ndarray:
    """Protocol outcome (majority-A districts) for every unanimous distribution.

    One backward induction over the shared game DAG, with the per-
    distribution utility vectors carried in numpy arrays: legality does not
    depend on the voter distribution, so all 2**n instances share every
    non-terminal state.  Requires odd district sizes (no tied districts), so
    the game is zero-sum and min/max on the A-seat count is exact.
    """
    from itertools import permutations

    if any(len(part) % 2 == 0 for parts in maps for part in parts):
        raise ValueError("unanimous-distribution solver needs odd district sizes")

    labeled = sorted({
        tuple(assignment)
        for parts in maps
        for perm in permutations(range(k))
        for assignment in [_labeled_assignment(parts, perm, n)]
    })

    terminal_by_map = {}
    for idx, assignment in enumerate(labeled):
        parts = _parts_of(assignment, k)
        if parts not in terminal_by_map:
            vec = np.zeros(1 << n, dtype=np.int8)
            for mask in range(1 << n):
                vec[mask] = map_seats_a(parts, mask)
            vec.setflags(write=False)
            terminal_by_map[parts] = vec

    memo: dict[tuple, np.ndarray] = {}

    def canonical(assignment: dict[int, int]) -> tuple:
        relabel: dict[int, int] = {}
        items = []
        for atom in sorted(assignment):
            d = assignment[atom]
            if d not in relabel:
                relabel[d] = len(relabel)
            items.append((atom, relabel[d]))
        return tuple(items)

    def value(assignment: dict[int, int], consistent: list[int]) -> np.ndarray:
        if len(assignment) == n:
            return terminal_by_map[_parts_of(labeled[consistent[0]], k)]
        key = canonical(assignment)
        hit = memo.get(key)
        if hit is not None:
            return hit
        moves: dict[tuple[int, int], list[int]] = {}
        for i in consistent:
            lab = labeled[i]
            for atom in range(n):
                if atom not in assignment:
                    moves.setdefault((atom, lab[atom]), []).append(i)
        children = []
        for (atom, district), ids in moves.items():
            assignment[atom] = district
            children.append(value(assignment, ids))
            del assignment[atom]
        stacked = np.stack(children)
        mover_party = first_party if len(assignment) % 2 == 0 else ("B" if first_party == "A" else "A")
        result = stacked.max(axis=0) if mover_party == "A" else stacked.min(axis=0)
        result.setflags(write=False)
        memo[key] = result
        return result

    return value({}, list(range(len(labeled))))


def _labeled_assignment(parts, perm, n: int) -> list[int]:
    assignment = [0] * n
    for label, part in zip(perm, parts):
        for atom in part:
            assignment[atom] = label
    return assignment


def _parts_of(assignment, k: int) -> tuple:
    groups: dict[int, set] = {}
    for atom, district in enumerate(assignment):
        groups.setdefault(district, set()).add(atom)
    return tuple(sorted((frozenset(g) for g in groups.values()), key=min))


# ---------------------------------------------------------------------------
# The ten-cell-state experiment
# ---------------------------------------------------------------------------


def condition_values(mask: int, seat_rows: np.ndarray, ghost_row: np.ndarray):
    """(random_map, max_A, min_A, ghost) for one distribution bitmask."""
    per_map = seat_rows[:, mask]
    return (
        Fraction(int(per_map.sum()), len(per_map)),
        Fraction(int(per_map.max())),
        Fraction(int(per_map.min())),
        Fraction(int(ghost_row[mask])),
    )


def run_decomino(graph: StateGraph, constraints: Constraints, *,
                 trials: int = 100, seed: int = 0,
                 mode: str = "sampled") -> list[ExperimentRecord]:
    """Sweep x = 0..n and report the four seat statistics.

    ``sampled`` draws ``trials`` distributions per x and reports sample mean
    and standard deviation; ``exact`` enumerates all C(n, x) distributions
    and reports exact expectations (protocol values come from the shared
    table, so the full sweep is cheap).
    """
    if mode not in ("sampled", "exact"):
        raise ValueError(f"mode must be 'sampled' or 'exact', got {mode!r}")
    maps = enumerate_maps(graph, constraints)
    n = graph.n
    seat_rows = seats_table(maps, n)
    ghost_row = ghost_value_table(maps, n, constraints.k, first_party="A")

    records: list[ExperimentRecord] = []
    for x in range(n + 1):
        if mode == "exact":
            totals = [Fraction(0)] * 4
            count = 0
            for combo in combinations(range(n), x):
                mask = sum(1 << atom for atom in combo)
                for i, v in enumerate(condition_values(mask, seat_rows, ghost_row)):
                    totals[i] += v
                count += 1
            for name, total in zip(CONDITIONS, totals):
                records.append(ExperimentRecord(name, x, "exact_expectation",
                                                float(total / count), count, seed))
        else:
            samples: list[list[float]] = [[] for _ in CONDITIONS]
            for t in range(trials):
                rng = SplitMix64(seed, x, t)
                mask = draw_unanimous_a_set(rng, n, x)
                for i, v in enumerate(condition_values(mask, seat_rows, ghost_row)):
                    samples[i].append(float(v))
            for name, values in zip(CONDITIONS, samples):
                mean = statistics.fmean(values)
                std = statistics.stdev(values) if len(values) > 1 else 0.0
                records.append(ExperimentRecord(name, x, "mean", mean, trials, seed))
                records.append(ExperimentRecord(name, x, "std", std, trials, seed))
    return records


def exact_std(graph: StateGraph, constraints: Constraints) -> dict[tuple[str, int], float]:
    """Population standard deviation of each condition over the x-ensemble."""
    maps = enumerate_maps(graph, constraints)
    n = graph.n
    seat_rows = seats_table(maps, n)
    ghost_row = ghost_value_table(maps, n, constraints.k, first_party="A")
    out: dict[tuple[str, int], float] = {}
    for x in range(n + 1):
        sums = [Fraction(0)] * 4
        squares = [Fraction(0)] * 4
        count = 0
        for combo in combinations(range(n), x):
            mask = sum(1 << atom for atom in combo)
            for i, v in enumerate(condition_values(mask, seat_rows, ghost_row)):
                sums[i] += v
                squares[i] += v * v
            count += 1
        for name, total, square in zip(CONDITIONS, sums, squares):
            variance = square / count - (total / count) ** 2
            out[(name, x)] = float(variance) ** 0.5
    return out


# ---------------------------------------------------------------------------
# I-cut-you-freeze comparison and the New Hampshire case study
# ---------------------------------------------------------------------------


def icyf_k2(maps, atoms, first_party: str = "A") -> Districting:
    """The two-district freeze protocol: the first mover picks the map.

    Returns the admissible map maximizing the first party's seats, ties
    broken by the deterministic map ordering.
    """
    if any(len(parts) != 2 for parts in maps):
        raise NotTwoDistricts("the freeze comparison is implemented for k = 2 only")
    def gain(parts):
        count = seats(parts, atoms)
        return count.seats_a if first_party == "A" else count.seats_b
    best = maps[0]
    for parts in maps[1:]:
        if gain(parts) > gain(best):
            best = parts
    return best


@dataclass(frozen=True)
class GhostOutcome:
    first_party: str
    final_map: Districting
    map_index: int
    seat_count: SeatCount
    trace: tuple


@dataclass(frozen=True)
class CaseStudyReport:
    maps: tuple
    seat_counts: tuple[SeatCount, ...]
    ghost: tuple[GhostOutcome, ...]       # one per first party
    icyf: tuple[tuple[str, int], ...]     # (first party, chosen map index)
    share_a: float
    share_b: float


def run_nh(graph: StateGraph, constraints: Constraints) -> CaseStudyReport:
    """Full two-district case study: per-map seats, protocol and freeze outcomes."""
    maps = enumerate_maps(graph, constraints)
    counts = tuple(seats(parts, graph.atoms) for parts in maps)
    outcomes = []
    for first_party in ("A", "B"):
        lang = make_language(maps, graph.atoms, constraints.k, first_party=first_party)
        memo: dict = {}
        strategy = core.minimax_strategy(lang, memo)
        word, u1, u2, trace = core.play_out((), lang, strategy, strategy)
        final = lang.final_parts(word)
        outcomes.append(GhostOutcome(first_party, final, maps.index(final),
                                     seats(final, graph.atoms), tuple(trace)))
    icyf = tuple(
        (party, maps.index(icyf_k2(maps, graph.atoms, party))) for party in ("A", "B")
    )
    va = sum(a.votes_a for a in graph.atoms)
    vb = sum(a.votes_b for a in graph.atoms)
    total = va + vb + sum(a.votes_other for a in graph.atoms)
    return CaseStudyReport(maps, counts, tuple(outcomes), icyf,
                           100.0 * va / total, 100.0 * vb / total)


def render_report(report: CaseStudyReport, atoms) -> str:
    names = {a.id: a.name for a in atoms}
    lines = [f"admissible maps: {len(report.maps)}",
             f"state-level shares: A {report.share_a:.2f}%  B {report.share_b:.2f}%", ""]
    for i, (parts, count) in enumerate(zip(report.maps, report.seat_counts)):
        rendered = " | ".join(
            "{" + ", ".join(sorted(names[a] for a in part)) + "}" for part in parts
        )
        lines.append(f"map {i}: A {count.seats_a} - B {count.seats_b}"
                     f"{' (ties ' + str(count.ties) + ')' if count.ties else ''}  {rendered}")
    lines.append("")
    for outcome in report.ghost:
        lines.append(
            f"protocol outcome, {outcome.first_party} first: map {outcome.map_index}, "
            f"A {outcome.seat_count.seats_a} - B {outcome.seat_count.seats_b}"
        )
    for party, index in report.icyf:
        lines.append(f"freeze protocol, {party} first: map {index}")
    return "\n".join(lines) + "\n"
