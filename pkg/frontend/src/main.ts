/** Page wiring: binds the controller to the static layout in index.html. */

import { SessionApi, type PhraseOffer } from "./api.js";
import { ExplorerController } from "./controller.js";
import {
  renderAntonymSelect,
  renderFinish,
  renderPhraseColumns,
  renderQuadrant,
  renderWordOffers,
} from "./render.js";
import type { ViewState } from "./state.js";

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

export function mount(): ExplorerController {
  const briefInput = byId<HTMLTextAreaElement>("brief-input");
  const briefButton = byId<HTMLButtonElement>("brief-submit");
  const manualInput = byId<HTMLInputElement>("manual-input");
  const manualButton = byId<HTMLButtonElement>("manual-submit");
  const manualWarning = byId<HTMLElement>("manual-warning");
  const offersBox = byId<HTMLElement>("word-offers");
  const searchButton = byId<HTMLButtonElement>("search-phrases");
  const columnsBox = byId<HTMLElement>("phrase-columns");
  const quadrantBox = byId<HTMLElement>("quadrant");
  const w3Select = byId<HTMLSelectElement>("w3-select");
  const w4Select = byId<HTMLSelectElement>("w4-select");
  const finishButton = byId<HTMLButtonElement>("finish");
  const explanationPanel = byId<HTMLElement>("explanation");
  const errorBox = byId<HTMLElement>("error");

  const render = (state: ViewState): void => {
    renderWordOffers(document, offersBox, state.w1Offers, state.pool);
    renderPhraseColumns(document, columnsBox, state.phraseGroups);
    renderQuadrant(document, quadrantBox, state);
    renderAntonymSelect(document, w3Select, state.w3Offers, state.quadrant.w3);
    renderAntonymSelect(document, w4Select, state.w4Offers, state.quadrant.w4);
    renderFinish(document, finishButton, explanationPanel, state);
    errorBox.textContent = state.error ?? "";
    searchButton.disabled = state.pool.length === 0 || state.pending;
    briefButton.disabled = state.pending;
    w3Select.disabled = state.step < 3;
    w4Select.disabled = state.step < 3;
  };

  const controller = new ExplorerController(new SessionApi(), render);

  briefButton.addEventListener("click", () => {
    void controller.submitBrief(briefInput.value);
  });
  manualButton.addEventListener("click", async () => {
    const warned = await controller.manualQuery(manualInput.value);
    manualWarning.textContent = warned
      ? `"${manualInput.value}" does not look like an adjective`
      : "";
  });
  offersBox.addEventListener("change", (event) => {
    const target = event.target as HTMLInputElement;
    if (target.dataset.lemma) controller.togglePool(target.dataset.lemma);
  });
  searchButton.addEventListener("click", () => {
    void controller.searchPhrases();
  });

  let dragged: PhraseOffer | null = null;
  columnsBox.addEventListener("dragstart", (event) => {
    const item = (event.target as HTMLElement).closest<HTMLElement>(".phrase-item");
    if (!item) return;
    const group = controller.state.phraseGroups.find((g) => g.w1 === item.dataset.w1);
    dragged = group?.phrases.find((p) => p.w2 === item.dataset.w2) ?? null;
  });
  quadrantBox.addEventListener("dragover", (event) => event.preventDefault());
  quadrantBox.addEventListener("drop", (event) => {
    event.preventDefault();
    const zone = (event.target as HTMLElement).closest<SVGRectElement & HTMLElement>("[data-quadrant]");
    if (!zone || !dragged) return;
    void controller.dropPhrase(dragged, Number(zone.dataset.quadrant));
    dragged = null;
  });

  w3Select.addEventListener("change", () =>
    controller.chooseAntonym("w3", w3Select.value || null));
  w4Select.addEventListener("change", () =>
    controller.chooseAntonym("w4", w4Select.value || null));
  finishButton.addEventListener("click", () => {
    void controller.finish();
  });
  explanationPanel.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (target.dataset.role === "copy") void controller.copyExplanation();
  });

  render(controller.state);
  return controller;
}

if (typeof document !== "undefined" && document.getElementById("brief-input")) {
  mount();
}
