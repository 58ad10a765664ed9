// View-model tests over recorded server payloads: the board must be fully
// reconstructable from a single GET response.

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { boardModel, districtFill, partyOfMoveIndex, splitApplied, UNASSIGNED_FILL } from "../src/board";
import type { SessionView } from "../src/types";

function fixture(name: string): SessionView {
  return JSON.parse(readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf-8"));
}

describe("boardModel", () => {
  it("renders a fresh ten-county board with every cell unassigned", () => {
    const model = boardModel(fixture("session_fresh.json"));
    expect(model.cells).toHaveLength(10);
    expect(model.cells.every((c) => c.district === null)).toBe(true);
    expect(model.cells.every((c) => c.fill === UNASSIGNED_FILL)).toBe(true);
    expect(model.history).toHaveLength(0);
    expect(model.moverParty).toBe("A");
    expect(model.moverController).toBe("human");
  });

  it("reconstructs assignments and history from the prefix alone", () => {
    const session = fixture("session_mid.json");
    const model = boardModel(session);
    for (const [atom, district] of session.prefix) {
      const cell = model.cells.find((c) => c.atom === atom);
      expect(cell?.district).toBe(district);
      expect(cell?.fill).toBe(districtFill(district));
    }
    expect(model.history.map((h) => h.party)).toEqual(["A", "B"]);
    expect(model.history[0]?.atomName).toBe("Hillsborough");
  });

  it("marks exactly the server's legal moves as assignable", () => {
    const session = fixture("session_mid.json");
    const model = boardModel(session);
    const legal = new Set((session.legal_moves ?? []).map(([a, d]) => `${a}:${d}`));
    for (const cell of model.cells) {
      for (const district of cell.legalDistricts) {
        expect(legal.has(`${cell.atom}:${district}`)).toBe(true);
      }
    }
    const fromModel = model.cells.reduce(
      (count, cell) => count + cell.legalDistricts.length,
      0,
    );
    expect(fromModel).toBe(session.legal_moves?.length);
  });

  it("shows the seat summary once the server reports a finished game", () => {
    const model = boardModel(fixture("session_finished.json"));
    expect(model.status).toBe("finished");
    expect(model.seatLine).toBe("A 1 - B 1");
    expect(model.moverParty).toBeNull();
  });

  it("colors party lean from the vote columns", () => {
    const model = boardModel(fixture("session_fresh.json"));
    const cheshire = model.cells.find((c) => c.name === "Cheshire");
    const rockingham = model.cells.find((c) => c.name === "Rockingham");
    expect(cheshire?.lean).toBe("A");
    expect(rockingham?.lean).toBe("B");
  });
});

describe("partyOfMoveIndex", () => {
  it("alternates from the first party", () => {
    expect(partyOfMoveIndex("A", 0)).toBe("A");
    expect(partyOfMoveIndex("A", 1)).toBe("B");
    expect(partyOfMoveIndex("B", 0)).toBe("B");
    expect(partyOfMoveIndex("B", 3)).toBe("A");
  });
});

describe("splitApplied", () => {
  it("separates the player's move from the engine replies", () => {
    const { mine, engine } = splitApplied(fixture("session_mid.json"));
    expect(mine).toEqual([5, 0]);
    expect(engine).toEqual([[0, 0]]);
  });

  it("is empty on plain GET payloads", () => {
    const { mine, engine } = splitApplied(fixture("session_fresh.json"));
    expect(mine).toBeNull();
    expect(engine).toEqual([]);
  });
});
