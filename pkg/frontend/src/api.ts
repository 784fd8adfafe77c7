/**
 * Typed client for the /api/v1 session endpoints.
 *
 * The UI never re-ranks or rewrites anything it receives; every array and
 * string below is passed through to rendering in service order.
 */

export interface WordOffer {
  lemma: string;
  usefulness: number;
  source: string;
}

export interface PhraseOffer {
  w1: string;
  w2: string;
  w2_noun: string;
  display: string;
  similarity: number;
  score: number;
}

export interface PhraseGroup {
  w1: string;
  phrases: PhraseOffer[];
}

export interface CreateSessionResponse {
  session_id: string;
  query_words: string[];
  no_query_words: boolean;
}

export interface W1OffersResponse {
  offers: WordOffer[];
  empty: boolean;
}

export interface ManualQueryResponse {
  offers: WordOffer[];
  non_adjective_warning: boolean;
}

export interface PhraseOffersResponse {
  groups: PhraseGroup[];
}

export interface AntonymOffersResponse {
  w3_offers: string[];
  w4_offers: string[];
  manual_w3_required: boolean;
  manual_w4_required: boolean;
}

export interface CompleteResponse {
  w1: string;
  w2: string;
  w2_noun: string;
  w3: string;
  w4: string;
  quadrant_labels: string[];
}

export interface ErrorBody {
  code: string;
  message: string;
  detail: string;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ErrorBody,
  ) {
    super(`${body.code}: ${body.message}`);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class SessionApi {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { Accept: "application/json" } };
    if (body !== undefined) {
      init.headers = { ...init.headers, "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const res = await this.fetchImpl(this.baseUrl + path, init);
    const payload = await res.json();
    if (!res.ok) {
      throw new ApiError(res.status, payload as ErrorBody);
    }
    return payload as T;
  }

  createSession(brief: string): Promise<CreateSessionResponse> {
    return this.request("POST", "/api/v1/sessions", { brief });
  }

  w1Offers(sessionId: string): Promise<W1OffersResponse> {
    return this.request("POST", `/api/v1/sessions/${sessionId}/w1-offers`);
  }

  manualQuery(sessionId: string, word: string): Promise<ManualQueryResponse> {
    return this.request("POST", `/api/v1/sessions/${sessionId}/manual-query`, { word });
  }

  selectPool(sessionId: string, lemmas: string[]): Promise<{ pool: string[] }> {
    return this.request("POST", `/api/v1/sessions/${sessionId}/w1-pool`, { lemmas });
  }

  phraseOffers(sessionId: string): Promise<PhraseOffersResponse> {
    return this.request("POST", `/api/v1/sessions/${sessionId}/phrase-offers`);
  }

  selectPhrase(sessionId: string, w1: string, w2: string): Promise<{ w1: string; w2: string; display: string }> {
    return this.request("POST", `/api/v1/sessions/${sessionId}/phrase`, { w1, w2 });
  }

  antonymOffers(sessionId: string): Promise<AntonymOffersResponse> {
    return this.request("POST", `/api/v1/sessions/${sessionId}/antonym-offers`);
  }

  complete(
    sessionId: string,
    w3: string,
    w4: string,
    manualW3 = false,
    manualW4 = false,
  ): Promise<CompleteResponse> {
    return this.request("POST", `/api/v1/sessions/${sessionId}/complete`, {
      w3, w4, manual_w3: manualW3, manual_w4: manualW4,
    });
  }

  explanation(sessionId: string): Promise<{ text: string }> {
    return this.request("GET", `/api/v1/sessions/${sessionId}/explanation`);
  }
}
