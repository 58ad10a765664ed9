// Pure view-model builders.  Everything here is derived from a single
// session payload, so the board is always reconstructable from one GET
// (a refresh loses nothing) and never second-guesses the server's rules.

import type { Party, SessionView } from "./types";

export const DISTRICT_COLORS: readonly string[] = [
  "#4e79a7",
  "#e15759",
  "#59a14f",
  "#f28e2b",
  "#b07aa1",
  "#76b7b2",
];

export const UNASSIGNED_FILL = "#e8e4da";

export interface CellView {
  atom: number;
  name: string;
  x: number;
  y: number;
  district: number | null;
  fill: string;
  lean: Party | "even";
  legalDistricts: number[];
}

export interface HistoryEntry {
  index: number;
  party: Party;
  atomName: string;
  atom: number;
  district: number;
}

export interface BoardModel {
  cells: CellView[];
  history: HistoryEntry[];
  status: SessionView["status"];
  moverParty: Party | null;
  moverController: string | null;
  districtCount: number;
  seatLine: string | null;
}

export function districtFill(district: number | null): string {
  if (district === null) return UNASSIGNED_FILL;
  return DISTRICT_COLORS[district % DISTRICT_COLORS.length] ?? UNASSIGNED_FILL;
}

export function partyOfMoveIndex(first: Party, index: number): Party {
  const second: Party = first === "A" ? "B" : "A";
  return index % 2 === 0 ? first : second;
}

export function boardModel(session: SessionView): BoardModel {
  const legalByAtom = new Map<number, number[]>();
  for (const [atom, district] of session.legal_moves ?? []) {
    const existing = legalByAtom.get(atom) ?? [];
    existing.push(district);
    legalByAtom.set(atom, existing);
  }
  const nameOf = new Map(session.atoms.map((a) => [a.id, a.name]));
  const cells: CellView[] = session.atoms.map((atom) => {
    const district = session.board[String(atom.id)] ?? null;
    const lean: CellView["lean"] =
      atom.votes_a > atom.votes_b ? "A" : atom.votes_b > atom.votes_a ? "B" : "even";
    return {
      atom: atom.id,
      name: atom.name,
      x: atom.x ?? atom.id,
      y: atom.y ?? 0,
      district,
      fill: districtFill(district),
      lean,
      legalDistricts: (legalByAtom.get(atom.id) ?? []).sort((a, b) => a - b),
    };
  });
  const history: HistoryEntry[] = session.prefix.map(([atom, district], index) => ({
    index,
    party: partyOfMoveIndex(session.first_party, index),
    atomName: nameOf.get(atom) ?? String(atom),
    atom,
    district,
  }));
  const seatLine = session.result
    ? `A ${session.result.seats.A} - B ${session.result.seats.B}` +
      (session.result.seats.ties ? ` (ties ${session.result.seats.ties})` : "")
    : null;
  return {
    cells,
    history,
    status: session.status,
    moverParty: session.mover_party ?? null,
    moverController: session.mover_controller ?? null,
    districtCount: session.district_count,
    seatLine,
  };
}

// The engine's reply rides along in the move response; splitting it out of
// `applied` lets the UI animate "your move, then theirs".
export function splitApplied(view: SessionView): {
  mine: [number, number] | null;
  engine: [number, number][];
} {
  const applied = view.applied ?? [];
  if (applied.length === 0) return { mine: null, engine: [] };
  const first = applied[0] ?? null;
  return { mine: first, engine: applied.slice(1) };
}
