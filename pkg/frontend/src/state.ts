/**
 * View state for the explorer page.
 *
 * Step gating mirrors the engine's session states: step 1 is the brief and
 * word-1 exploration, step 2 the phrase quadrant drop, step 3 antonyms and
 * finish.  The state holds offers exactly as the service returned them.
 */

import type { PhraseGroup, PhraseOffer, WordOffer } from "./api.js";

export type Step = 1 | 2 | 3;

export interface QuadrantModel {
  w1: string | null;
  w2: string | null;
  w2Noun: string | null;
  w3: string | null;
  w4: string | null;
}

export interface ViewState {
  sessionId: string | null;
  step: Step;
  queryWords: string[];
  w1Offers: WordOffer[];
  pool: string[];
  phraseGroups: PhraseGroup[];
  selectedPhrase: PhraseOffer | null;
  w3Offers: string[];
  w4Offers: string[];
  quadrant: QuadrantModel;
  explanation: string | null;
  pending: boolean;
  error: string | null;
}

export const MAX_POOL = 5;

export function initialState(): ViewState {
  return {
    sessionId: null,
    step: 1,
    queryWords: [],
    w1Offers: [],
    pool: [],
    phraseGroups: [],
    selectedPhrase: null,
    w3Offers: [],
    w4Offers: [],
    quadrant: { w1: null, w2: null, w2Noun: null, w3: null, w4: null },
    explanation: null,
    pending: false,
    error: null,
  };
}

export function togglePoolWord(state: ViewState, lemma: string): ViewState {
  const pool = state.pool.includes(lemma)
    ? state.pool.filter((w) => w !== lemma)
    : state.pool.length < MAX_POOL
      ? [...state.pool, lemma]
      : state.pool;
  return { ...state, pool };
}

export function applyPhraseSelection(state: ViewState, phrase: PhraseOffer): ViewState {
  return {
    ...state,
    selectedPhrase: phrase,
    quadrant: {
      ...state.quadrant,
      w1: phrase.w1,
      w2: phrase.w2,
      w2Noun: phrase.w2_noun,
      w3: null,
      w4: null,
    },
    explanation: null,
  };
}

export function applyAntonymChoice(
  state: ViewState,
  axis: "w3" | "w4",
  lemma: string | null,
): ViewState {
  return { ...state, quadrant: { ...state.quadrant, [axis]: lemma } };
}

/** Finish stays disabled until all four poles are set. */
export function polesComplete(state: ViewState): boolean {
  const q = state.quadrant;
  return q.w1 !== null && q.w2 !== null && q.w3 !== null && q.w4 !== null;
}

export function poleCount(state: ViewState): number {
  const q = state.quadrant;
  return [q.w1, q.w2, q.w3, q.w4].filter((p) => p !== null).length;
}

/** Only the upper-right quadrant accepts a phrase drop. */
export function isDropTarget(quadrantIndex: number): boolean {
  return quadrantIndex === 0;
}
