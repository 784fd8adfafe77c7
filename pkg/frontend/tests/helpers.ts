/** Replay transport: serves the recorded service payloads to SessionApi. */

import recorded from "./fixtures/recorded_session.json";
import { SessionApi, type FetchLike } from "../src/api.js";

export type Recorded = typeof recorded;
export const fixture: Recorded = recorded;

export const SESSION_ID = fixture.create.session_id;

interface Route {
  method: string;
  path: RegExp;
  status?: number;
  body: unknown;
}

export function recordedRoutes(): Route[] {
  const id = SESSION_ID;
  return [
    { method: "POST", path: /\/api\/v1\/sessions$/, status: 201, body: fixture.create },
    { method: "POST", path: new RegExp(`${id}/w1-offers$`), body: fixture.w1_offers },
    { method: "POST", path: new RegExp(`${id}/w1-pool$`), body: fixture.w1_pool },
    { method: "POST", path: new RegExp(`${id}/phrase-offers$`), body: fixture.phrase_offers },
    { method: "POST", path: new RegExp(`${id}/phrase$`), body: fixture.phrase },
    { method: "POST", path: new RegExp(`${id}/antonym-offers$`), body: fixture.antonym_offers },
    { method: "POST", path: new RegExp(`${id}/complete$`), body: fixture.complete },
    { method: "GET", path: new RegExp(`${id}/explanation$`), body: fixture.explanation },
  ];
}

export function makeFetch(routes: Route[], log?: string[]): FetchLike {
  return async (url, init) => {
    const method = init?.method ?? "GET";
    log?.push(`${method} ${url}`);
    const route = routes.find((r) => r.method === method && r.path.test(url));
    if (!route) {
      return new Response(
        JSON.stringify({ code: "not_found", message: `no route ${url}`, detail: "" }),
        { status: 404, headers: { "Content-Type": "application/json" } },
      );
    }
    return new Response(JSON.stringify(route.body), {
      status: route.status ?? 200,
      headers: { "Content-Type": "application/json" },
    });
  };
}

export function recordedApi(log?: string[]): SessionApi {
  return new SessionApi("", makeFetch(recordedRoutes(), log));
}
