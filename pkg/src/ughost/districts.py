"""State graphs, admissible-map enumeration, and the districting language.

A state is a connected graph of atoms (counties, precincts, ...), each with
a population and a two-party vote split.  ``enumerate_maps`` lists every
partition into k districts that honors contiguity and the balance rule, up
to district-label permutation.  ``make_language`` turns that map set into a
game language: a move "(atom, district)" is legal exactly when the partial
assignment it creates still extends to at least one admissible map.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Hashable, Iterable, Mapping, Sequence

from ughost.core import InvalidPrefix, LanguageOracle, Prefix, TerminalPrefix


class ParseError(Exception):
    """Malformed instance file; carries the offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ValidationError(Exception):
    """An instance violated a structural invariant (named in the message)."""


class NoAdmissibleMap(Exception):
    """No districting satisfies the given constraints."""


@dataclass(frozen=True)
class Atom:
    id: int
    name: str
    population: int
    votes_a: int
    votes_b: int
    votes_other: int = 0
    x: float | None = None
    y: float | None = None


@dataclass(frozen=True)
class SeatCount:
    seats_a: int
    seats_b: int
    ties: int


@dataclass(frozen=True)
class Constraints:
    """District count plus balance rule.

    ``balance`` is "exact" (every district exactly n/k atoms) or "deviation"
    (max district population minus min strictly less than tolerance x total
    population).
    """

    k: int
    balance: str = "exact"
    tolerance: float | None = None
    contiguity: bool = True

    def __post_init__(self):
        if self.k < 1:
            raise ValidationError(f"k must be >= 1, got {self.k}")
        if self.balance not in ("exact", "deviation"):
            raise ValidationError(f"unknown balance rule {self.balance!r}")
        if self.balance == "deviation":
            if self.tolerance is None or not (0 < self.tolerance <= 1):
                raise ValidationError(
                    f"deviation tolerance must lie in (0, 1], got {self.tolerance!r}"
                )
        elif self.tolerance is not None:
            raise ValidationError("exact-size rule takes no tolerance")


class StateGraph:
    """Atoms plus a symmetric, irreflexive, connected adjacency."""

    def __init__(self, atoms: Sequence[Atom], edges: Iterable[tuple[int, int]]):
        self.atoms = tuple(atoms)
        ids = [a.id for a in self.atoms]
        if sorted(ids) != list(range(len(ids))):
            raise ValidationError("atom ids must be unique and dense in [0, n)")
        if any(a.population < 0 or a.votes_a < 0 or a.votes_b < 0 or a.votes_other < 0
               for a in self.atoms):
            raise ValidationError("populations and votes must be non-negative")
        self.atoms = tuple(sorted(self.atoms, key=lambda a: a.id))
        pairs = set()
        for u, v in edges:
            if u == v:
                raise ValidationError(f"adjacency must be irreflexive: self-loop at {u}")
            if not (0 <= u < len(ids)) or not (0 <= v < len(ids)):
                raise ValidationError(f"edge ({u}, {v}) references an unknown atom id")
            pairs.add((min(u, v), max(u, v)))
        self.edges = frozenset(pairs)
        nbrs: dict[int, set[int]] = {a.id: set() for a in self.atoms}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.neighbors = {u: frozenset(vs) for u, vs in nbrs.items()}
        if not self._connected():
            raise ValidationError("state graph must be connected as a whole")

    @classmethod
    def from_neighbors(cls, atoms: Sequence[Atom], neighbors: Mapping[int, Iterable[int]]):
        """Build from an explicit neighbor map, checking symmetry first."""
        for u, vs in neighbors.items():
            for v in vs:
                if u not in set(neighbors.get(v, ())):
                    raise ValidationError(
                        f"adjacency must be symmetric: {u} -> {v} has no reverse edge"
                    )
        edges = {(min(u, v), max(u, v)) for u, vs in neighbors.items() for v in vs}
        return cls(atoms, edges)

    @property
    def n(self) -> int:
        return len(self.atoms)

    def _connected(self) -> bool:
        if not self.atoms:
            return False
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in self.neighbors[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n

    def is_connected_subset(self, subset: frozenset[int]) -> bool:
        if not subset:
            return False
        start = next(iter(subset))
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in self.neighbors[u]:
                if v in subset and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == len(subset)


# A districting is a tuple of k disjoint frozensets covering all atoms,
# listed in increasing order of each part's smallest atom id (the canonical
# unlabeled form).
Districting = tuple


def canonical_parts(parts: Iterable[frozenset[int]]) -> Districting:
    return tuple(sorted((frozenset(p) for p in parts), key=min))


def parts_from_assignment(assignment: Mapping[int, int]) -> Districting:
    groups: dict[int, set[int]] = {}
    for atom, district in assignment.items():
        groups.setdefault(district, set()).add(atom)
    return canonical_parts(groups.values())


def seats(parts: Districting, atoms: Sequence[Atom]) -> SeatCount:
    """Districts carried by each party; a tied district counts for neither."""
    a = b = t = 0
    for part in parts:
        va = sum(atoms[i].votes_a for i in part)
        vb = sum(atoms[i].votes_b for i in part)
        if va > vb:
            a += 1
        elif vb > va:
            b += 1
        else:
            t += 1
    return SeatCount(a, b, t)


def _connected_subsets(graph: StateGraph, anchor: int, allowed: frozenset[int],
                       min_size: int, max_size: int,
                       pops: Sequence[int], pop_cap: float | None):
    """Connected subsets of ``allowed`` containing ``anchor``, each once.

    Standard include/exclude growth: candidates are taken from the frontier
    in increasing id order, and an excluded candidate stays banned for the
    whole subtree, which makes every subset appear exactly once.
    """
    results: list[frozenset[int]] = []

    def grow(current: set[int], cur_pop: int, banned: set[int]):
        if len(current) >= min_size:
            results.append(frozenset(current))
        if len(current) == max_size:
            return
        frontier = set()
        for u in current:
            frontier |= graph.neighbors[u]
        frontier = (frontier & allowed) - current - banned
        local_ban = set(banned)
        for v in sorted(frontier):
            pop_v = cur_pop + pops[v]
            if pop_cap is None or pop_v <= pop_cap:
                current.add(v)
                grow(current, pop_v, local_ban)
                current.remove(v)
            local_ban.add(v)

    if pop_cap is not None and pops[anchor] > pop_cap:
        return results
    grow({anchor}, pops[anchor], set())
    return results


def _subsets_containing(anchor: int, allowed: frozenset[int], min_size: int, max_size: int):
    rest = sorted(allowed - {anchor})
    from itertools import combinations

    for size in range(min_size, max_size + 1):
        for combo in combinations(rest, size - 1):
            yield frozenset((anchor,) + combo)


def _balanced(parts: Districting, constraints: Constraints, pops: Sequence[int], n: int) -> bool:
    if constraints.balance == "exact":
        return all(len(p) == n // constraints.k for p in parts)
    part_pops = [sum(pops[i] for i in p) for p in parts]
    total = sum(pops)
    return max(part_pops) - min(part_pops) < constraints.tolerance * total


def enumerate_maps(graph: StateGraph, constraints: Constraints) -> tuple[Districting, ...]:
    """Every admissible districting, deduplicated under label permutation.

    Parts are grown recursively, each anchored at the smallest unassigned
    atom, so each unlabeled partition is produced exactly once.  The result
    is sorted by the canonical part encoding (the part containing atom 0
    first), making the ordering deterministic.
    """
    n, k = graph.n, constraints.k
    pops = [a.population for a in graph.atoms]
    total = sum(pops)
    if constraints.balance == "exact":
        if n % k:
            raise ValidationError(f"exact-size rule needs k | n, got n={n}, k={k}")
        min_size = max_size = n // k
        pop_cap = None
    else:
        min_size, max_size = 1, n - k + 1
        # Any single part exceeding this bound forces a violation at the end.
        pop_cap = total / k + constraints.tolerance * total

    results: list[Districting] = []

    def fill(remaining: frozenset[int], parts: tuple):
        parts_left = k - len(parts)
        if parts_left == 0:
            if not remaining and _balanced(parts, constraints, pops, n):
                results.append(parts)
            return
        if not remaining:
            return
        anchor = min(remaining)
        if parts_left == 1:
            ok_size = min_size <= len(remaining) <= max_size
            ok_shape = not constraints.contiguity or graph.is_connected_subset(remaining)
            if ok_size and ok_shape:
                fill(frozenset(), parts + (remaining,))
            return
        if constraints.contiguity:
            candidates = _connected_subsets(graph, anchor, remaining, min_size, max_size,
                                            pops, pop_cap)
        else:
            candidates = _subsets_containing(anchor, remaining, min_size, max_size)
        for part in candidates:
            fill(remaining - part, parts + (part,))

    fill(frozenset(range(n)), ())
    if not results:
        raise NoAdmissibleMap(f"no districting satisfies {constraints}")
    key = lambda parts: tuple(tuple(sorted(p)) for p in parts)
    return tuple(sorted(results, key=key))


class DistrictLanguage(LanguageOracle):
    """Sequential-assignment game over an explicit admissible map set.

    Symbols are (atom_id, district_id) pairs over the alphabet [n] x [k].
    The unlabeled maps are expanded to all k! labelings, so legality never
    depends on which label a player picks first; the memo key relabels
    districts by order of first appearance to exploit exactly that symmetry.
    Terminal utility is (first mover's party seats, second mover's party
    seats).
    """

    def __init__(self, maps: Sequence[Districting], atoms: Sequence[Atom], k: int,
                 first_party: str = "A"):
        if not maps:
            raise NoAdmissibleMap("language needs at least one admissible map")
        if first_party not in ("A", "B"):
            raise ValueError(f"first_party must be 'A' or 'B', got {first_party!r}")
        from itertools import permutations

        self.atoms = tuple(atoms)
        self.n = len(self.atoms)
        self.k = k
        self.first_party = first_party
        self.maps = tuple(maps)

        labeled = set()
        for parts in maps:
            for perm in permutations(range(k)):
                assignment = [0] * self.n
                for label, part in zip(perm, parts):
                    for atom in part:
                        assignment[atom] = label
                labeled.add(tuple(assignment))
        self._labeled = tuple(sorted(labeled))

        self._seat_counts = {parts: seats(parts, self.atoms) for parts in self.maps}
        totals = set()
        self._word_utils = []
        for assignment in self._labeled:
            parts = parts_from_assignment(dict(enumerate(assignment)))
            count = self._seat_counts[parts]
            ua, ub = float(count.seats_a), float(count.seats_b)
            pair = (ua, ub) if first_party == "A" else (ub, ua)
            self._word_utils.append(pair)
            totals.add(ua + ub)
        self.zero_sum_total = totals.pop() if len(totals) == 1 else None

    @property
    def alphabet(self) -> tuple:
        return tuple((a, b) for a in range(self.n) for b in range(self.k))

    @property
    def labeled_maps(self) -> tuple:
        return self._labeled

    def _consistent(self, assignment: dict[int, int]) -> list[int]:
        out = []
        for i, labeled in enumerate(self._labeled):
            if all(labeled[a] == d for a, d in assignment.items()):
                out.append(i)
        return out

    def _assignment(self, prefix: Prefix) -> dict[int, int] | None:
        assignment: dict[int, int] = {}
        for sym in prefix:
            if not (isinstance(sym, tuple) and len(sym) == 2):
                return None
            a, d = sym
            if a in assignment or not (0 <= a < self.n) or not (0 <= d < self.k):
                return None
            assignment[a] = d
        return assignment

    def is_prefix(self, prefix: Prefix) -> bool:
        assignment = self._assignment(prefix)
        return assignment is not None and bool(self._consistent(assignment))

    def is_terminal(self, prefix: Prefix) -> bool:
        return len(prefix) == self.n

    def legal_moves(self, prefix: Prefix) -> tuple:
        assignment = self._assignment(prefix)
        if assignment is None:
            raise InvalidPrefix(f"malformed or duplicate-atom prefix: {list(prefix)!r}")
        moves = set()
        for i in self._consistent(assignment):
            labeled = self._labeled[i]
            for a in range(self.n):
                if a not in assignment:
                    moves.add((a, labeled[a]))
        if not moves and len(prefix) != self.n:
            raise InvalidPrefix(f"not a prefix of any admissible word: {list(prefix)!r}")
        return tuple(sorted(moves))

    def utilities(self, prefix: Prefix) -> tuple[float, float]:
        if len(prefix) != self.n:
            raise TerminalPrefix("utilities requested before the map is complete")
        assignment = self._assignment(prefix)
        ids = self._consistent(assignment) if assignment is not None else []
        if not ids:
            raise InvalidPrefix(f"complete word is not an admissible map: {list(prefix)!r}")
        return self._word_utils[ids[0]]

    def canonical_key(self, prefix: Prefix) -> Hashable:
        relabel: dict[int, int] = {}
        items = []
        for a, d in sorted((a, d) for a, d in prefix):
            if d not in relabel:
                relabel[d] = len(relabel)
            items.append((a, relabel[d]))
        return tuple(items)

    def final_parts(self, prefix: Prefix) -> Districting:
        """Unlabeled map induced by a complete word."""
        if len(prefix) != self.n:
            raise TerminalPrefix("map incomplete")
        return parts_from_assignment(dict(prefix))


def make_language(maps: Sequence[Districting], atoms: Sequence[Atom], k: int,
                  first_party: str = "A") -> DistrictLanguage:
    """LanguageOracle over the given admissible maps (see DistrictLanguage)."""
    return DistrictLanguage(maps, atoms, k, first_party)


# ---------------------------------------------------------------------------
# Instance files
#
# Plain-text format, sections in any order, '#' comments allowed:
#
#   grid: 3x2                 optional RxC shorthand; rook adjacency, ids
#                             row-major from the top-left cell
#   atoms                     one atom per line:
#   id name population votes_a votes_b [votes_other] [x y]
#   edges                     undirected id pairs (forbidden with grid:)
#   0 1
#   constraints
#   k: 2
#   balance: exact            or: balance: deviation 0.10
#   contiguity: true
# ---------------------------------------------------------------------------

_SECTION_NAMES = ("atoms", "edges", "constraints")


def parse_instance(text: str) -> tuple[StateGraph, Constraints]:
    grid: tuple[int, int] | None = None
    atom_rows: list[tuple[int, list[str]]] = []
    edge_rows: list[tuple[int, list[str]]] = []
    constraint_rows: list[tuple[int, list[str]]] = []
    section = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lowered = line.lower()
        if lowered.startswith("grid:"):
            spec = line.split(":", 1)[1].strip().lower()
            try:
                rows, cols = (int(part) for part in spec.split("x"))
            except ValueError:
                raise ParseError(lineno, f"grid shorthand must look like 'grid: RxC', got {line!r}")
            if rows < 1 or cols < 1:
                raise ParseError(lineno, "grid dimensions must be positive")
            grid = (rows, cols)
            continue
        if lowered in _SECTION_NAMES:
            section = lowered
            continue
        if section == "atoms":
            atom_rows.append((lineno, line.split()))
        elif section == "edges":
            edge_rows.append((lineno, line.split()))
        elif section == "constraints":
            constraint_rows.append((lineno, line.split(":", 1)))
        else:
            raise ParseError(lineno, f"content before any section header: {line!r}")

    if grid is not None and edge_rows:
        raise ParseError(edge_rows[0][0], "edges section not allowed with grid shorthand")
    if not atom_rows:
        raise ParseError(0, "missing atoms section")

    atoms = []
    for lineno, fields in atom_rows:
        if len(fields) not in (5, 6, 7, 8):
            raise ParseError(
                lineno,
                "atom line needs: id name population votes_a votes_b"
                " [votes_other] [x y]",
            )
        try:
            atom_id = int(fields[0])
            population = int(fields[2])
            votes_a = int(fields[3])
            votes_b = int(fields[4])
            votes_other = int(fields[5]) if len(fields) in (6, 8) else 0
            if len(fields) >= 7:
                x, y = float(fields[-2]), float(fields[-1])
            else:
                x = y = None
        except ValueError as exc:
            raise ParseError(lineno, f"bad atom field: {exc}")
        atoms.append(Atom(atom_id, fields[1], population, votes_a, votes_b,
                          votes_other, x, y))

    if grid is not None:
        rows, cols = grid
        if len(atoms) != rows * cols:
            raise ParseError(0, f"grid {rows}x{cols} needs {rows * cols} atoms, got {len(atoms)}")
        edges = []
        for r in range(rows):
            for c in range(cols):
                i = r * cols + c
                if c + 1 < cols:
                    edges.append((i, i + 1))
                if r + 1 < rows:
                    edges.append((i, i + cols))
        if all(a.x is None for a in atoms):
            atoms = [
                Atom(a.id, a.name, a.population, a.votes_a, a.votes_b, a.votes_other,
                     float(a.id % cols), float(rows - 1 - a.id // cols))
                for a in atoms
            ]
    else:
        edges = []
        for lineno, fields in edge_rows:
            if len(fields) != 2:
                raise ParseError(lineno, f"edge line needs two atom ids, got {fields!r}")
            try:
                edges.append((int(fields[0]), int(fields[1])))
            except ValueError as exc:
                raise ParseError(lineno, f"bad edge field: {exc}")

    settings: dict[str, str] = {}
    for lineno, parts in constraint_rows:
        if len(parts) != 2:
            raise ParseError(lineno, f"constraint line needs 'key: value', got {parts[0]!r}")
        settings[parts[0].strip().lower()] = parts[1].strip()
    if "k" not in settings:
        raise ParseError(0, "constraints section must set k")
    try:
        k = int(settings["k"])
    except ValueError:
        raise ParseError(0, f"k must be an integer, got {settings['k']!r}")
    balance_spec = settings.get("balance", "exact").split()
    if balance_spec[0] == "exact" and len(balance_spec) == 1:
        balance, tolerance = "exact", None
    elif balance_spec[0] == "deviation" and len(balance_spec) == 2:
        try:
            balance, tolerance = "deviation", float(balance_spec[1])
        except ValueError:
            raise ParseError(0, f"bad deviation tolerance {balance_spec[1]!r}")
    else:
        raise ParseError(0, f"balance must be 'exact' or 'deviation TOL', got {settings.get('balance')!r}")
    contiguity = settings.get("contiguity", "true").lower()
    if contiguity not in ("true", "false"):
        raise ParseError(0, f"contiguity must be true or false, got {contiguity!r}")

    graph = StateGraph(atoms, edges)
    constraints = Constraints(k=k, balance=balance, tolerance=tolerance,
                              contiguity=contiguity == "true")
    if constraints.balance == "exact" and graph.n % k:
        raise ValidationError(f"exact-size rule needs k | n, got n={graph.n}, k={k}")
    return graph, constraints


def ingest_state(path) -> tuple[StateGraph, Constraints]:
    """Parse an instance file; see the format comment above."""
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def bundled_instance_path(name: str) -> Path:
    """Path of a data file shipped with the package (e.g. 'nh_counties')."""
    ref = resources.files("ughost.data").joinpath(f"{name}.state")
    with resources.as_file(ref) as concrete:
        return Path(concrete)


def load_bundled(name: str) -> tuple[StateGraph, Constraints]:
    text = resources.files("ughost.data").joinpath(f"{name}.state").read_text("utf-8")
    return parse_instance(text)
