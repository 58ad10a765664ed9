// DOM rendering: an SVG cell board, move history, status banner, what-if
// panel, and the end-of-game seat summary.

import type { BoardModel, CellView } from "./board";
import { DISTRICT_COLORS, districtFill } from "./board";
import type { Projection } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";
const CELL = 72;
const PAD = 10;

export interface RenderCallbacks {
  onAssign(atom: number, district: number): void;
  onWhatIf(atom: number, district: number): void;
}

function svgElement<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

export function renderBoard(
  container: HTMLElement,
  model: BoardModel,
  selectedDistrict: number,
  callbacks: RenderCallbacks,
  whatIfArmed: boolean,
): void {
  container.textContent = "";
  const xs = model.cells.map((c) => c.x);
  const ys = model.cells.map((c) => c.y);
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const width = (maxX - minX + 1) * CELL + 2 * PAD;
  const height = (maxY - minY + 1) * CELL + 2 * PAD;
  const svg = svgElement("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    height: String(height),
    role: "grid",
  });

  for (const cell of model.cells) {
    const gx = PAD + (cell.x - minX) * CELL;
    const gy = PAD + (maxY - cell.y) * CELL;
    const group = svgElement("g", { transform: `translate(${gx} ${gy})` });
    const assignable = cell.legalDistricts.includes(selectedDistrict);
    const rect = svgElement("rect", {
      x: "2",
      y: "2",
      width: String(CELL - 4),
      height: String(CELL - 4),
      rx: "7",
      fill: cell.fill,
      stroke: cell.district === null ? "#999" : "#333",
      "stroke-width": cell.district === null ? "1.5" : "2.5",
      "stroke-dasharray": cell.district === null ? "4 3" : "none",
      class:
        "cell" +
        (cell.district === null ? " unassigned" : "") +
        (assignable && model.status === "in_progress" ? " assignable" : ""),
      "data-atom": String(cell.atom),
    });
    group.appendChild(rect);

    const label = svgElement("text", {
      x: String(CELL / 2),
      y: String(CELL / 2 - 4),
      "text-anchor": "middle",
      class: "cell-name",
    });
    label.textContent = cell.name;
    group.appendChild(label);

    const leanDot = svgElement("circle", {
      cx: String(CELL / 2),
      cy: String(CELL / 2 + 14),
      r: "6",
      class: `lean lean-${cell.lean}`,
    });
    group.appendChild(leanDot);

    if (cell.district !== null) {
      const tag = svgElement("text", {
        x: String(CELL - 12),
        y: "18",
        "text-anchor": "middle",
        class: "district-tag",
      });
      tag.textContent = String(cell.district + 1);
      group.appendChild(tag);
    }

    if (model.status === "in_progress" && cell.district === null) {
      group.addEventListener("click", () => {
        if (whatIfArmed) callbacks.onWhatIf(cell.atom, selectedDistrict);
        else callbacks.onAssign(cell.atom, selectedDistrict);
      });
      group.classList.add("clickable");
    }
    svg.appendChild(group);
  }
  container.appendChild(svg);
}

export function renderDistrictPicker(
  container: HTMLElement,
  districtCount: number,
  selected: number,
  onPick: (district: number) => void,
): void {
  container.textContent = "";
  for (let d = 0; d < districtCount; d++) {
    const button = document.createElement("button");
    button.type = "button";
    button.className = "district-choice" + (d === selected ? " selected" : "");
    button.style.setProperty("--swatch", districtFill(d));
    button.textContent = `district ${d + 1}`;
    button.addEventListener("click", () => onPick(d));
    container.appendChild(button);
  }
}

export function renderHistory(container: HTMLElement, model: BoardModel): void {
  container.textContent = "";
  const list = document.createElement("ol");
  list.className = "history";
  for (const entry of model.history) {
    const item = document.createElement("li");
    item.textContent = `${entry.party}: ${entry.atomName} → district ${entry.district + 1}`;
    list.appendChild(item);
  }
  container.appendChild(list);
}

export function renderStatus(container: HTMLElement, model: BoardModel): void {
  if (model.status === "finished") {
    container.textContent = `Finished — seats ${model.seatLine ?? ""}`;
    container.className = "status finished";
  } else {
    const who = model.moverController === "engine" ? "engine" : "you";
    container.textContent = `Party ${model.moverParty} to move (${who})`;
    container.className = "status";
  }
}

export function showBanner(container: HTMLElement, message: string, kind: "error" | "info"): void {
  container.textContent = message;
  container.className = `banner ${kind}`;
  container.hidden = false;
}

export function hideBanner(container: HTMLElement): void {
  container.hidden = true;
}

export function renderProjection(
  container: HTMLElement,
  projection: Projection | null,
  revealed: boolean,
): void {
  if (!revealed || projection === null) {
    container.textContent = "";
    container.hidden = true;
    return;
  }
  container.hidden = false;
  container.textContent =
    `projection: first mover ${projection.u1} seats, second ${projection.u2}` +
    (projection.principal_move
      ? ` (best: atom ${projection.principal_move[0]} → district ${projection.principal_move[1] + 1})`
      : "");
}

export function renderWhatIf(container: HTMLElement, text: string | null): void {
  container.hidden = text === null;
  container.textContent = text ?? "";
}

export function legendSwatches(): string {
  return DISTRICT_COLORS.slice(0, 2).join(", ");
}
