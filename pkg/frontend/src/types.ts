// Payload types for the play-service JSON API.  The server is authoritative
// for every rule decision; the client only renders what it is told.

export type Party = "A" | "B";
export type Controller = "human" | "engine";

export interface AtomInfo {
  id: number;
  name: string;
  x: number | null;
  y: number | null;
  votes_a: number;
  votes_b: number;
}

export interface Projection {
  u1: number;
  u2: number;
  principal_move: [number, number] | null;
}

export interface SeatSummary {
  A: number;
  B: number;
  ties: number;
}

export interface SessionView {
  id: string;
  status: "in_progress" | "finished";
  first_party: Party;
  controllers: { first: Controller; second: Controller };
  prefix: [number, number][];
  board: Record<string, number | null>;
  atom_count: number;
  district_count: number;
  atoms: AtomInfo[];
  mover_party?: Party;
  mover_controller?: Controller;
  legal_moves?: [number, number][];
  projection?: Projection;
  result?: { seats: SeatSummary; parts: number[][] };
  applied?: [number, number][];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  detail?: unknown;
}

export interface CreateSessionRequest {
  instance?: string;
  instance_text?: string;
  first_party: Party;
  controllers: { first: Controller; second: Controller };
}
