/**
 * Session controller: serializes state-changing requests (at most one in
 * flight) and applies responses to the view state.  Rendering is left to
 * the caller via the onChange hook so tests can drive it headlessly.
 */

import { ApiError, SessionApi, type PhraseOffer } from "./api.js";
import {
  applyAntonymChoice,
  applyPhraseSelection,
  initialState,
  polesComplete,
  togglePoolWord,
  type ViewState,
} from "./state.js";

export type ClipboardWriter = (text: string) => Promise<void>;

export class ExplorerController {
  state: ViewState = initialState();

  constructor(
    private readonly api: SessionApi,
    private readonly onChange: (state: ViewState) => void = () => {},
    private readonly clipboard: ClipboardWriter = (text) =>
      navigator.clipboard.writeText(text),
  ) {}

  private emit(next: ViewState): void {
    this.state = next;
    this.onChange(next);
  }

  private async guarded<T>(fn: () => Promise<T>): Promise<T | null> {
    if (this.state.pending) return null;
    this.emit({ ...this.state, pending: true, error: null });
    try {
      return await fn();
    } catch (err) {
      const message = err instanceof ApiError ? err.message : String(err);
      this.emit({ ...this.state, error: message });
      return null;
    } finally {
      this.emit({ ...this.state, pending: false });
    }
  }

  async submitBrief(brief: string): Promise<void> {
    await this.guarded(async () => {
      const created = await this.api.createSession(brief);
      const offers = await this.api.w1Offers(created.session_id);
      this.emit({
        ...this.state,
        sessionId: created.session_id,
        queryWords: created.query_words,
        w1Offers: offers.offers,
        step: 1,
      });
    });
  }

  async manualQuery(word: string): Promise<boolean> {
    const result = await this.guarded(async () => {
      const response = await this.api.manualQuery(this.sessionId(), word);
      this.emit({ ...this.state, w1Offers: response.offers });
      return response.non_adjective_warning;
    });
    return result ?? false;
  }

  togglePool(lemma: string): void {
    this.emit(togglePoolWord(this.state, lemma));
  }

  async searchPhrases(): Promise<void> {
    await this.guarded(async () => {
      const id = this.sessionId();
      await this.api.selectPool(id, this.state.pool);
      const response = await this.api.phraseOffers(id);
      this.emit({ ...this.state, phraseGroups: response.groups, step: 2 });
    });
  }

  /** Drop handler; only the target quadrant accepts the phrase. */
  async dropPhrase(phrase: PhraseOffer, quadrantIndex: number): Promise<boolean> {
    if (quadrantIndex !== 0) return false;
    const ok = await this.guarded(async () => {
      const id = this.sessionId();
      await this.api.selectPhrase(id, phrase.w1, phrase.w2);
      const antonyms = await this.api.antonymOffers(id);
      this.emit({
        ...applyPhraseSelection(this.state, phrase),
        w3Offers: antonyms.w3_offers,
        w4Offers: antonyms.w4_offers,
        step: 3,
      });
      return true;
    });
    return ok ?? false;
  }

  chooseAntonym(axis: "w3" | "w4", lemma: string | null): void {
    this.emit(applyAntonymChoice(this.state, axis, lemma));
  }

  async finish(): Promise<void> {
    if (!polesComplete(this.state)) return;
    await this.guarded(async () => {
      const id = this.sessionId();
      const q = this.state.quadrant;
      const manualW3 = !this.state.w3Offers.includes(q.w3 as string);
      const manualW4 = !this.state.w4Offers.includes(q.w4 as string);
      await this.api.complete(id, q.w3 as string, q.w4 as string, manualW3, manualW4);
      const explanation = await this.api.explanation(id);
      this.emit({ ...this.state, explanation: explanation.text });
    });
  }

  /** Copies exactly the service-provided explanation string. */
  async copyExplanation(): Promise<void> {
    if (this.state.explanation === null) return;
    await this.clipboard(this.state.explanation);
  }

  private sessionId(): string {
    if (this.state.sessionId === null) {
      throw new Error("no active session");
    }
    return this.state.sessionId;
  }
}
