"""District model tests, with a naive coloring filter as the enumeration oracle."""

import itertools

import pytest
from hypothesis import given, strategies as st

from ughost import core
from ughost.districts import (
    Atom,
    Constraints,
    NoAdmissibleMap,
    ParseError,
    StateGraph,
    ValidationError,
    canonical_parts,
    enumerate_maps,
    make_language,
    parse_instance,
    seats,
)


def unit_atoms(n, votes=None):
    votes = votes or [(0, 0)] * n
    return [Atom(i, f"a{i}", 1, va, vb) for i, (va, vb) in enumerate(votes)]


def coloring_oracle(graph, constraints):
    """Filter all k^n colorings; dedupe under label permutation.

    Independent of the production enumerator: no recursion, no growth, just
    the definition.  Only usable at n <= 12.
    """
    n, k = graph.n, constraints.k
    assert n <= 12
    pops = [a.population for a in graph.atoms]
    total = sum(pops)
    found = set()
    for coloring in itertools.product(range(k), repeat=n):
        parts = {}
        for atom, district in enumerate(coloring):
            parts.setdefault(district, set()).add(atom)
        if len(parts) != k:
            continue
        part_list = [frozenset(p) for p in parts.values()]
        if constraints.contiguity and not all(
            graph.is_connected_subset(p) for p in part_list
        ):
            continue
        if constraints.balance == "exact":
            if any(len(p) != n // k for p in part_list):
                continue
        else:
            part_pops = [sum(pops[i] for i in p) for p in part_list]
            if max(part_pops) - min(part_pops) >= constraints.tolerance * total:
                continue
        found.add(canonical_parts(part_list))
    return sorted(found, key=lambda parts: tuple(tuple(sorted(p)) for p in parts))


GRID_2X3 = """
grid: 2x3
atoms
0 a 1 0 0
1 b 1 0 0
2 c 1 0 0
3 d 1 0 0
4 e 1 0 0
5 f 1 0 0
constraints
k: 2
balance: exact
"""


class TestEnumeration:
    def test_2x3_grid_has_three_maps(self):
        graph, constraints = parse_instance(GRID_2X3)
        maps = enumerate_maps(graph, constraints)
        assert len(maps) == 3
        assert list(maps) == coloring_oracle(graph, constraints)

    def test_oracle_agreement_on_small_graphs(self, six_county, decomino, nh):
        for graph, constraints, maps in (six_county, decomino, nh):
            assert list(maps) == coloring_oracle(graph, constraints)

    def test_decomino_has_seven_maps(self, decomino):
        graph, constraints, maps = decomino
        assert len(maps) == 7

    def test_decomino_corner_separation(self, decomino):
        graph, constraints, maps = decomino
        tr = next(a.id for a in graph.atoms if a.name == "tr")
        bl = next(a.id for a in graph.atoms if a.name == "bl")
        for parts in maps:
            assert (tr in parts[0]) != (bl in parts[0])

    def test_nh_has_seven_maps(self, nh):
        graph, constraints, maps = nh
        assert len(maps) == 7

    def test_no_admissible_map(self):
        # A path of four atoms cannot split into two contiguous pairs with
        # a 1-atom/3-atom population budget this tight.
        atoms = [Atom(0, "a", 100, 0, 0), Atom(1, "b", 1, 0, 0),
                 Atom(2, "c", 1, 0, 0), Atom(3, "d", 1, 0, 0)]
        graph = StateGraph(atoms, [(0, 1), (1, 2), (2, 3)])
        with pytest.raises(NoAdmissibleMap):
            enumerate_maps(graph, Constraints(k=2, balance="deviation", tolerance=0.01))

    def test_exact_size_needs_divisibility(self):
        graph = StateGraph(unit_atoms(5), [(0, 1), (1, 2), (2, 3), (3, 4)])
        with pytest.raises(ValidationError):
            enumerate_maps(graph, Constraints(k=2))

    def test_non_contiguous_enumeration(self):
        graph = StateGraph(unit_atoms(4), [(0, 1), (1, 2), (2, 3)])
        maps = enumerate_maps(graph, Constraints(k=2, contiguity=False))
        # all 2+2 bipartitions of four atoms
        assert len(maps) == 3
        assert list(maps) == coloring_oracle(
            graph, Constraints(k=2, contiguity=False)
        )


class TestSeats:
    def test_strict_majority_by_inspection(self):
        # districts of unanimous cells: 3A+2B and 1A+4B
        atoms = unit_atoms(10, [(1, 0)] * 4 + [(0, 1)] * 6)
        parts = (frozenset({0, 1, 2, 4, 5}), frozenset({3, 6, 7, 8, 9}))
        count = seats(parts, atoms)
        assert (count.seats_a, count.seats_b, count.ties) == (1, 1, 0)

    def test_all_a_votes(self):
        atoms = unit_atoms(6, [(1, 0)] * 6)
        parts = (frozenset({0, 1, 2}), frozenset({3, 4, 5}))
        assert seats(parts, atoms).seats_a == 2

    def test_tied_district_counts_for_neither(self):
        atoms = unit_atoms(4, [(1, 0), (0, 1), (1, 0), (1, 0)])
        parts = (frozenset({0, 1}), frozenset({2, 3}))
        count = seats(parts, atoms)
        assert (count.seats_a, count.seats_b, count.ties) == (1, 0, 1)

    @given(votes=st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)),
                          min_size=6, max_size=6))
    def test_color_swap_symmetry(self, votes):
        atoms = unit_atoms(6, votes)
        swapped = unit_atoms(6, [(vb, va) for va, vb in votes])
        parts = (frozenset({0, 1, 2}), frozenset({3, 4, 5}))
        count = seats(parts, atoms)
        mirrored = seats(parts, swapped)
        assert (count.seats_a, count.seats_b) == (mirrored.seats_b, mirrored.seats_a)
        assert count.ties == mirrored.ties


class TestLanguage:
    def test_word_count_2x3(self, six_county_language):
        # 3 unlabeled maps x 2 labelings x 6! orders
        count = 0
        stack = [()]
        while stack:
            prefix = stack.pop()
            if six_county_language.is_terminal(prefix):
                count += 1
                continue
            for sym in six_county_language.legal_moves(prefix):
                stack.append(prefix + (sym,))
        assert count == 4320

    def test_labeled_expansion_closed_under_permutation(self, six_county):
        graph, constraints, maps = six_county
        lang = make_language(maps, graph.atoms, constraints.k)
        labeled = set(lang.labeled_maps)
        assert len(labeled) == 2 * len(maps)
        for assignment in labeled:
            swapped = tuple(1 - d for d in assignment)
            assert swapped in labeled

    def test_duplicate_atom_rejected(self, six_county_language):
        with pytest.raises(core.InvalidPrefix):
            core.legal_moves(((0, 0), (0, 1)), six_county_language)

    def test_completability_exclusion(self, six_county_language):
        # With nw in district 0 and sw in district 1, no admissible map puts
        # se with nw: the only map separating nw/sw is the column split,
        # which pairs sw with se.
        moves = core.legal_moves(((0, 0), (4, 1)), six_county_language)
        assert (5, 0) not in moves
        assert (5, 1) in moves

    def test_prefix_monotonicity_random_playouts(self, six_county_language):
        import random

        lang = six_county_language
        rng = random.Random(7)
        for _ in range(25):
            prefix = ()
            while not lang.is_terminal(prefix):
                moves = lang.legal_moves(prefix)
                prefix = prefix + (moves[rng.randrange(len(moves))],)
            for i in range(len(prefix) + 1):
                assert lang.is_prefix(prefix[:i])

    def test_zero_sum_declared_for_tie_free_instances(self, six_county_language):
        assert six_county_language.zero_sum_total == 2.0

    def test_canonical_key_merges_label_permutations(self, six_county_language):
        lang = six_county_language
        key_one = lang.canonical_key(((0, 0), (4, 1)))
        key_two = lang.canonical_key(((0, 1), (4, 0)))
        assert key_one == key_two
        # ... and the values agree
        assert core.solve(((0, 0), (4, 1)), lang).u1 == core.solve(((0, 1), (4, 0)), lang).u1


class TestLanguageOracle:
    """Brute-force reference checks for the map-set language adapter."""

    @given(edge_bits=st.integers(0, 2 ** 10 - 1), seed=st.integers(0, 999))
    def test_legal_moves_match_word_enumeration(self, edge_bits, seed):
        from hypothesis import assume
        import random

        all_edges = list(itertools.combinations(range(5), 2))
        edges = [e for i, e in enumerate(all_edges) if edge_bits >> i & 1]
        try:
            graph = StateGraph(unit_atoms(5, [(1, 0)] * 3 + [(0, 1)] * 2), edges)
        except ValidationError:
            assume(False)
        constraints = Constraints(k=2, balance="deviation", tolerance=0.9)
        try:
            maps = enumerate_maps(graph, constraints)
        except NoAdmissibleMap:
            assume(False)
        lang = make_language(maps, graph.atoms, 2)

        words = []

        def expand(prefix):
            if lang.is_terminal(prefix):
                words.append(prefix)
                return
            for sym in lang.legal_moves(prefix):
                expand(prefix + (sym,))

        expand(())
        # walk one random line, checking legal_moves against the word list
        rng = random.Random(seed)
        prefix = ()
        while not lang.is_terminal(prefix):
            from_words = {w[len(prefix)] for w in words if w[:len(prefix)] == prefix}
            assert set(lang.legal_moves(prefix)) == from_words
            moves = lang.legal_moves(prefix)
            prefix = prefix + (moves[rng.randrange(len(moves))],)

    @given(seed=st.integers(0, 10_000))
    def test_solve_invariant_under_label_permutation(self, seed, six_county_language):
        import random

        lang = six_county_language
        rng = random.Random(seed)
        prefix = ()
        for _ in range(rng.randrange(5)):
            if lang.is_terminal(prefix):
                break
            moves = lang.legal_moves(prefix)
            prefix = prefix + (moves[rng.randrange(len(moves))],)
        swapped = tuple((a, 1 - d) for a, d in prefix)
        value = core.solve(prefix, lang)
        mirrored = core.solve(swapped, lang)
        assert (value.u1, value.u2) == (mirrored.u1, mirrored.u2)


class TestIngest:
    def test_grid_shorthand_builds_rook_adjacency(self):
        graph, constraints = parse_instance(GRID_2X3)
        assert graph.n == 6
        assert (0, 1) in graph.edges and (0, 3) in graph.edges
        assert (0, 4) not in graph.edges  # no diagonal

    def test_nh_bundle_shape(self, nh):
        graph, constraints, _ = nh
        assert graph.n == 10
        assert constraints.balance == "deviation"
        assert constraints.tolerance == 0.10

    def test_parse_error_carries_line(self):
        with pytest.raises(ParseError) as err:
            parse_instance("atoms\n0 a 1 0\n")
        assert err.value.line == 2

    def test_content_before_section_rejected(self):
        with pytest.raises(ParseError):
            parse_instance("0 a 1 0 0\natoms\n")

    def test_self_loop_rejected(self):
        text = GRID_2X3.replace("grid: 2x3\n", "") + "edges\n0 0\n"
        with pytest.raises(ValidationError, match="irreflexive"):
            parse_instance(text)

    def test_asymmetric_adjacency_rejected(self):
        with pytest.raises(ValidationError, match="symmetric"):
            StateGraph.from_neighbors(unit_atoms(3), {0: [1], 1: [0, 2], 2: []})

    def test_disconnected_graph_rejected(self):
        with pytest.raises(ValidationError, match="connected"):
            StateGraph(unit_atoms(4), [(0, 1), (2, 3)])

    def test_unknown_edge_id_rejected(self):
        with pytest.raises(ValidationError, match="unknown atom"):
            StateGraph(unit_atoms(3), [(0, 5)])

    def test_sparse_atom_ids_rejected(self):
        atoms = [Atom(0, "a", 1, 0, 0), Atom(2, "b", 1, 0, 0)]
        with pytest.raises(ValidationError, match="dense"):
            StateGraph(atoms, [(0, 2)])

    def test_bad_tolerance_rejected(self):
        with pytest.raises(ValidationError):
            Constraints(k=2, balance="deviation", tolerance=1.5)

    def test_votes_other_parsed(self, nh):
        graph, _, _ = nh
        assert sum(a.votes_other for a in graph.atoms) == 37584
