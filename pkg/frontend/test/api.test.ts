// Client contract tests against recorded server responses.  The client must
// surface the server's legality verdicts verbatim and never invent its own.

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { ApiRequestError, GhostClient } from "../src/api";

function fixtureText(name: string): string {
  return readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf-8");
}

function stubFetch(status: number, body: string, capture?: { url?: string; init?: RequestInit }) {
  return async (url: string, init?: RequestInit): Promise<Response> => {
    if (capture) {
      capture.url = url;
      capture.init = init;
    }
    return new Response(body, {
      status,
      headers: { "content-type": "application/json" },
    });
  };
}

describe("GhostClient", () => {
  it("creates sessions with the documented body shape", async () => {
    const capture: { url?: string; init?: RequestInit } = {};
    const client = new GhostClient("http://server", stubFetch(201, fixtureText("session_fresh.json"), capture));
    const session = await client.createSession({
      instance: "nh_counties",
      first_party: "A",
      controllers: { first: "human", second: "engine" },
    });
    expect(capture.url).toBe("http://server/sessions");
    expect(JSON.parse(String(capture.init?.body))).toEqual({
      instance: "nh_counties",
      first_party: "A",
      controllers: { first: "human", second: "engine" },
    });
    expect(session.atom_count).toBe(10);
    expect(session.legal_moves?.length).toBeGreaterThan(0);
  });

  it("asks for reveal only when told to", async () => {
    const capture: { url?: string } = {};
    const client = new GhostClient("http://server", stubFetch(200, fixtureText("session_fresh.json"), capture));
    await client.getSession("abc");
    expect(capture.url).toBe("http://server/sessions/abc");
    await client.getSession("abc", true);
    expect(capture.url).toBe("http://server/sessions/abc?reveal=true");
  });

  it("surfaces the server's atom-taken reason verbatim", async () => {
    const client = new GhostClient("http://server", stubFetch(422, fixtureText("error_atom_taken.json")));
    const error = await client.postMove("abc", 5, 1).catch((e) => e);
    expect(error).toBeInstanceOf(ApiRequestError);
    expect(error.status).toBe(422);
    expect(error.code).toBe("illegal_move");
    expect(error.message).toBe("atom taken");
  });

  it("surfaces the no-admissible-completion reason verbatim", async () => {
    const client = new GhostClient("http://server", stubFetch(422, fixtureText("error_no_completion.json")));
    const error = await client.postMove("abc", 7, 1).catch((e) => e);
    expect(error.message).toBe("no admissible completion");
  });

  it("parses what-if projections", async () => {
    const client = new GhostClient("http://server", stubFetch(200, fixtureText("whatif_value.json")));
    const value = await client.whatIf("abc", 6, 0);
    expect(typeof value.u1).toBe("number");
    expect(typeof value.u2).toBe("number");
  });

  it("wraps non-json failures in a generic error", async () => {
    const client = new GhostClient("http://server", async () =>
      new Response("", { status: 500 }));
    const error = await client.getSession("abc").catch((e) => e);
    expect(error).toBeInstanceOf(ApiRequestError);
    expect(error.code).toBe("http_error");
  });
});
