/**
 * DOM rendering for the explorer.
 *
 * Pure pass-through of service data: list order in the DOM always equals
 * the response order, and the explanation is shown byte-for-byte.
 */

import type { PhraseGroup, WordOffer } from "./api.js";
import { isDropTarget, polesComplete, type ViewState } from "./state.js";

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

/** Ranked word-1 candidates with pool checkboxes; service order preserved. */
export function renderWordOffers(
  doc: Document,
  container: HTMLElement,
  offers: WordOffer[],
  pool: string[],
): void {
  container.textContent = "";
  if (offers.length === 0) {
    const prompt = el(doc, "p", "empty-state",
      "No candidates yet. Try a word of your own in the search box above.");
    container.appendChild(prompt);
    return;
  }
  const list = el(doc, "ol", "word-offers");
  for (const offer of offers) {
    const item = el(doc, "li", "word-offer");
    item.dataset.lemma = offer.lemma;
    const box = el(doc, "input");
    box.type = "checkbox";
    box.checked = pool.includes(offer.lemma);
    box.dataset.lemma = offer.lemma;
    item.appendChild(box);
    item.appendChild(el(doc, "span", "lemma", offer.lemma));
    item.appendChild(el(doc, "span", "score", offer.usefulness.toFixed(2)));
    list.appendChild(item);
  }
  container.appendChild(list);
}

/** One column per pooled word-1, items in service order with phrase + score. */
export function renderPhraseColumns(
  doc: Document,
  container: HTMLElement,
  groups: PhraseGroup[],
): void {
  container.textContent = "";
  if (groups.every((g) => g.phrases.length === 0)) {
    container.appendChild(el(doc, "p", "empty-state",
      "No phrases passed the filter. Adjust the candidate pool or query manually."));
    return;
  }
  for (const group of groups) {
    const column = el(doc, "div", "phrase-column");
    column.dataset.w1 = group.w1;
    column.appendChild(el(doc, "h3", "column-title", group.w1));
    const list = el(doc, "ol", "phrase-list");
    for (const phrase of group.phrases) {
      const item = el(doc, "li", "phrase-item");
      item.draggable = true;
      item.dataset.w1 = phrase.w1;
      item.dataset.w2 = phrase.w2;
      item.appendChild(el(doc, "span", "display", phrase.display));
      item.appendChild(el(doc, "span", "score", phrase.score.toFixed(2)));
      list.appendChild(item);
    }
    column.appendChild(list);
    container.appendChild(column);
  }
}

/** Two-axis SVG quadrant; pole labels clockwise from the top, target first. */
export function renderQuadrant(doc: Document, container: HTMLElement, state: ViewState): void {
  container.textContent = "";
  const SVG = "http://www.w3.org/2000/svg";
  const svg = doc.createElementNS(SVG, "svg");
  svg.setAttribute("viewBox", "0 0 320 320");
  svg.setAttribute("class", "quadrant");

  for (const [x1, y1, x2, y2] of [[160, 20, 160, 300], [20, 160, 300, 160]]) {
    const line = doc.createElementNS(SVG, "line");
    line.setAttribute("x1", String(x1));
    line.setAttribute("y1", String(y1));
    line.setAttribute("x2", String(x2));
    line.setAttribute("y2", String(y2));
    line.setAttribute("class", "axis");
    svg.appendChild(line);
  }

  const q = state.quadrant;
  const poles: Array<[string, string | null, number, number]> = [
    ["pole-w1", q.w1, 160, 14],
    ["pole-w2", q.w2Noun ?? q.w2, 306, 160],
    ["pole-w3", q.w3, 160, 312],
    ["pole-w4", q.w4, 14, 160],
  ];
  for (const [cls, label, x, y] of poles) {
    const text = doc.createElementNS(SVG, "text");
    text.setAttribute("x", String(x));
    text.setAttribute("y", String(y));
    text.setAttribute("class", `pole ${cls}`);
    text.textContent = label ?? "?";
    svg.appendChild(text);
  }

  // target slot: the upper-right quadrant is the only drop target
  for (let i = 0; i < 4; i++) {
    const zone = doc.createElementNS(SVG, "rect");
    const [x, y] = [[165, 25], [165, 165], [25, 165], [25, 25]][i];
    zone.setAttribute("x", String(x));
    zone.setAttribute("y", String(y));
    zone.setAttribute("width", "130");
    zone.setAttribute("height", "130");
    zone.setAttribute("class", isDropTarget(i) ? "zone target" : "zone");
    zone.setAttribute("data-quadrant", String(i));
    svg.appendChild(zone);
  }

  if (q.w1 !== null && q.w2Noun !== null) {
    const label = doc.createElementNS(SVG, "text");
    label.setAttribute("x", "230");
    label.setAttribute("y", "90");
    label.setAttribute("class", "target-label");
    label.textContent = `${q.w1} ${q.w2Noun}`;
    svg.appendChild(label);
  }
  container.appendChild(svg);
}

/** Pull-down of antonym offers plus a manual-entry slot. */
export function renderAntonymSelect(
  doc: Document,
  select: HTMLSelectElement,
  offers: string[],
  chosen: string | null,
): void {
  select.textContent = "";
  const placeholder = el(doc, "option", undefined, "choose…");
  placeholder.value = "";
  select.appendChild(placeholder);
  for (const lemma of offers) {
    const option = el(doc, "option", undefined, lemma);
    option.value = lemma;
    select.appendChild(option);
  }
  select.value = chosen ?? "";
}

/** Finish button state and the explanation panel. */
export function renderFinish(
  doc: Document,
  button: HTMLButtonElement,
  panel: HTMLElement,
  state: ViewState,
): void {
  button.disabled = !polesComplete(state) || state.pending;
  panel.textContent = "";
  if (state.explanation !== null) {
    const text = el(doc, "p", "explanation-text");
    text.textContent = state.explanation;
    panel.appendChild(text);
    const copy = el(doc, "button", "copy-button", "copy");
    copy.dataset.role = "copy";
    panel.appendChild(copy);
  }
}
