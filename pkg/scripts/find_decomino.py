#!/usr/bin/env python3
"""Search for the bundled ten-cell state shape.

We need a decomino (10 edge-connected unit cells) whose partitions into two
contiguous five-cell districts number exactly seven, and whose top-right and
bottom-left cells land in different districts in all seven partitions.  The
chosen shape is written as an instance file; cells get unit population, no
votes (experiments inject voter distributions).

Usage: python3 scripts/find_decomino.py [--emit PATH] [--list]
"""

from __future__ import annotations

import argparse
from itertools import combinations

SIZE = 10
HALF = 5


def free_polyominoes(size: int) -> list[frozenset[tuple[int, int]]]:
    shapes = {frozenset({(0, 0)})}
    for _ in range(size - 1):
        grown = set()
        for shape in shapes:
            for (x, y) in shape:
                for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                    cell = (x + dx, y + dy)
                    if cell not in shape:
                        grown.add(canon_free(shape | {cell}))
        shapes = grown
    return sorted(shapes, key=sorted)


def normalize(cells) -> frozenset[tuple[int, int]]:
    cells = list(cells)
    xmin = min(x for x, _ in cells)
    ymin = min(y for _, y in cells)
    return frozenset((x - xmin, y - ymin) for x, y in cells)


def orientations(cells):
    shape = normalize(cells)
    for _ in range(4):
        yield shape
        yield normalize((-x, y) for x, y in shape)
        shape = normalize((-y, x) for x, y in shape)  # rotate 90


def canon_free(cells) -> frozenset[tuple[int, int]]:
    return min(orientations(cells), key=sorted)


def connected(cells: frozenset[tuple[int, int]]) -> bool:
    start = next(iter(cells))
    seen = {start}
    stack = [start]
    while stack:
        x, y = stack.pop()
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)


def bipartitions(cells: frozenset[tuple[int, int]]):
    ordered = sorted(cells)
    anchor = ordered[0]
    rest = ordered[1:]
    found = []
    for combo in combinations(rest, HALF - 1):
        part = frozenset((anchor,) + combo)
        other = cells - part
        if connected(part) and connected(other):
            found.append((part, other))
    return found


def corners(cells):
    top_right = max(cells, key=lambda c: (c[1], c[0]))
    bottom_left = min(cells, key=lambda c: (c[1], c[0]))
    return top_right, bottom_left


def is_candidate(cells) -> tuple | None:
    parts = bipartitions(cells)
    if len(parts) != 7:
        return None
    tr, bl = corners(cells)
    for part, other in parts:
        if (tr in part) == (bl in part):
            return None
    return (cells, parts, tr, bl)


def corner_score(cells, tr, bl) -> int:
    """Prefer shapes where the designated cells sit at true bounding-box corners."""
    xmax = max(x for x, _ in cells)
    ymax = max(y for _, y in cells)
    score = 0
    if tr == (xmax, ymax):
        score += 1
    if bl == (0, 0):
        score += 1
    return score


def render(cells) -> str:
    xmax = max(x for x, _ in cells)
    ymax = max(y for _, y in cells)
    rows = []
    for y in range(ymax, -1, -1):
        rows.append("".join("#" if (x, y) in cells else "." for x in range(xmax + 1)))
    return "\n".join(rows)


def emit_instance(cells) -> str:
    ordered = sorted(cells, key=lambda c: (-c[1], c[0]))  # top row first
    tr, bl = corners(cells)
    index = {cell: i for i, cell in enumerate(ordered)}
    lines = [
        "# Ten-cell state shape: unit-population cells, two contiguous",
        "# five-cell districts, exactly seven admissible partitions.",
        "# Cells named by grid position; 'tr' and 'bl' mark the designated",
        "# top-right and bottom-left cells (separated in all seven maps).",
        "# Votes are zero placeholders; experiments draw voter distributions.",
        "atoms",
    ]
    for cell, i in sorted(index.items(), key=lambda kv: kv[1]):
        x, y = cell
        if cell == tr:
            name = "tr"
        elif cell == bl:
            name = "bl"
        else:
            name = f"c{x}{y}"
        lines.append(f"{i} {name} 1 0 0 {x} {y}")
    lines.append("edges")
    for cell, i in sorted(index.items(), key=lambda kv: kv[1]):
        x, y = cell
        for nb in ((x + 1, y), (x, y - 1)):
            if nb in index:
                lines.append(f"{i} {index[nb]}")
    lines += ["constraints", "k: 2", "balance: exact", "contiguity: true", ""]
    return "\n".join(lines)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--emit", help="write the chosen shape as an instance file")
    parser.add_argument("--list", action="store_true", help="print all candidates")
    args = parser.parse_args()

    candidates = []
    for free in free_polyominoes(SIZE):
        for oriented in set(orientations(free)):
            hit = is_candidate(oriented)
            if hit:
                candidates.append(hit)
    candidates.sort(key=lambda c: (-corner_score(c[0], c[2], c[3]), sorted(c[0])))
    print(f"{len(candidates)} oriented candidates")
    shown = candidates if args.list else candidates[:5]
    for cells, parts, tr, bl in shown:
        print(f"\ntr={tr} bl={bl} corner_score={corner_score(cells, tr, bl)}")
        print(render(cells))
    if args.emit and candidates:
        cells = candidates[0][0]
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(emit_instance(cells))
        print(f"\nwrote {args.emit}")


if __name__ == "__main__":
    main()
