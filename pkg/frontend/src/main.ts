// App wiring: new-game form, click-to-assign play against the service,
// polling after each move, reveal toggle, what-if exploration.

import { ApiRequestError, GhostClient } from "./api";
import { boardModel, splitApplied } from "./board";
import {
  hideBanner,
  renderBoard,
  renderDistrictPicker,
  renderHistory,
  renderProjection,
  renderStatus,
  renderWhatIf,
  showBanner,
} from "./render";
import type { Party, SessionView } from "./types";

function element<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const state = {
  client: new GhostClient(defaultBaseUrl()),
  session: null as SessionView | null,
  selectedDistrict: 0,
  reveal: false,
  whatIfArmed: false,
};

function defaultBaseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("server");
  return fromQuery ?? `${window.location.protocol}//${window.location.host}`;
}

async function refreshInstances(): Promise<void> {
  const select = element<HTMLSelectElement>("instance");
  try {
    const { instances } = await state.client.listInstances();
    select.textContent = "";
    for (const name of instances) {
      const option = document.createElement("option");
      option.value = name;
      option.textContent = name;
      if (name === "nh_counties") option.selected = true;
      select.appendChild(option);
    }
    hideBanner(element("banner"));
  } catch (error) {
    showBanner(element("banner"), `cannot reach server: ${String(error)}`, "error");
  }
}

function redraw(): void {
  const session = state.session;
  if (!session) return;
  const model = boardModel(session);
  renderStatus(element("status"), model);
  renderDistrictPicker(element("picker"), model.districtCount, state.selectedDistrict, (d) => {
    state.selectedDistrict = d;
    redraw();
  });
  renderBoard(element("board"), model, state.selectedDistrict, {
    onAssign: (atom, district) => void assign(atom, district),
    onWhatIf: (atom, district) => void whatIf(atom, district),
  }, state.whatIfArmed);
  renderHistory(element("history"), model);
  renderProjection(element("projection"), session.projection ?? null, state.reveal);
  if (session.status === "finished" && model.seatLine) {
    showBanner(element("banner"), `Game over — final seats ${model.seatLine}`, "info");
  }
}

async function poll(): Promise<void> {
  if (!state.session) return;
  state.session = await state.client.getSession(state.session.id, state.reveal);
  redraw();
}

async function newGame(): Promise<void> {
  const instance = element<HTMLSelectElement>("instance").value;
  const party = element<HTMLSelectElement>("party").value as Party;
  const humanFirst = element<HTMLSelectElement>("order").value === "first";
  const firstParty = humanFirst ? party : party === "A" ? "B" : "A";
  try {
    state.session = await state.client.createSession({
      instance,
      first_party: firstParty,
      controllers: humanFirst
        ? { first: "human", second: "engine" }
        : { first: "engine", second: "human" },
    });
    state.selectedDistrict = 0;
    hideBanner(element("banner"));
    renderWhatIf(element("whatif-result"), null);
    redraw();
  } catch (error) {
    showBanner(element("banner"), describeError(error), "error");
  }
}

function describeError(error: unknown): string {
  if (error instanceof ApiRequestError) return `${error.code}: ${error.message}`;
  return String(error);
}

async function assign(atom: number, district: number): Promise<void> {
  if (!state.session) return;
  try {
    const view = await state.client.postMove(state.session.id, atom, district, state.reveal);
    const { engine } = splitApplied(view);
    state.session = view;
    hideBanner(element("banner"));
    if (engine.length > 0) {
      const names = new Map(view.atoms.map((a) => [a.id, a.name]));
      const described = engine
        .map(([a, d]) => `${names.get(a) ?? a} → district ${d + 1}`)
        .join(", ");
      showBanner(element("banner"), `engine replied: ${described}`, "info");
    }
    redraw();
    await poll();
  } catch (error) {
    // 422 reasons (atom taken, no admissible completion) surface verbatim.
    showBanner(element("banner"), describeError(error), "error");
  }
}

async function whatIf(atom: number, district: number): Promise<void> {
  if (!state.session) return;
  try {
    const projection = await state.client.whatIf(state.session.id, atom, district);
    renderWhatIf(
      element("whatif-result"),
      `if atom ${atom} → district ${district + 1}: first mover ${projection.u1}, ` +
        `second ${projection.u2}`,
    );
  } catch (error) {
    if (error instanceof ApiRequestError && error.status === 422) {
      renderWhatIf(element("whatif-result"), "illegal");
    } else {
      showBanner(element("banner"), describeError(error), "error");
    }
  }
}

function wireControls(): void {
  element<HTMLButtonElement>("new-game").addEventListener("click", () => void newGame());
  element<HTMLInputElement>("reveal").addEventListener("change", (event) => {
    state.reveal = (event.target as HTMLInputElement).checked;
    if (!state.reveal) renderWhatIf(element("whatif-result"), null);
    element<HTMLInputElement>("whatif-mode").disabled = !state.reveal;
    if (!state.reveal) {
      state.whatIfArmed = false;
      element<HTMLInputElement>("whatif-mode").checked = false;
    }
    void poll();
  });
  element<HTMLInputElement>("whatif-mode").addEventListener("change", (event) => {
    state.whatIfArmed = (event.target as HTMLInputElement).checked;
    redraw();
  });
  element<HTMLButtonElement>("server-apply").addEventListener("click", () => {
    const url = element<HTMLInputElement>("server-url").value.trim();
    if (url) {
      state.client = new GhostClient(url);
      void refreshInstances();
    }
  });
}

window.addEventListener("DOMContentLoaded", () => {
  wireControls();
  element<HTMLInputElement>("whatif-mode").disabled = true;
  void refreshInstances();
});
