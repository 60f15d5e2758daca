import { describe, expect, it, vi } from "vitest";

import { ApiError, TrainerApi } from "../src/api.js";

function jsonResponse(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

describe("TrainerApi", () => {
  it("posts session creation with the right shape", async () => {
    const fetchFn = vi.fn().mockResolvedValue(jsonResponse({ session_id: "s0001" }, 201));
    const api = new TrainerApi("http://band", fetchFn);
    const session = await api.createSession({ subject: "s1", char_gap: 1000, seed: 7 });
    expect(session.session_id).toBe("s0001");
    const [url, init] = fetchFn.mock.calls[0]!;
    expect(url).toBe("http://band/sessions");
    expect(init.method).toBe("POST");
    expect(JSON.parse(init.body)).toEqual({ subject: "s1", char_gap: 1000, seed: 7 });
  });

  it("routes guesses to the session", async () => {
    const fetchFn = vi.fn().mockResolvedValue(jsonResponse({ session_accuracy_pct: 66.7 }));
    const api = new TrainerApi("", fetchFn);
    await api.submitGuess("s0001", "r001", "cbt");
    const [url, init] = fetchFn.mock.calls[0]!;
    expect(url).toBe("/sessions/s0001/guess");
    expect(JSON.parse(init.body)).toEqual({ record_id: "r001", guess: "cbt" });
  });

  it("fetches timelines with GET", async () => {
    const fetchFn = vi.fn().mockResolvedValue(jsonResponse({ record_id: "r001" }));
    const api = new TrainerApi("", fetchFn);
    await api.fetchTimeline("s0001", "r001");
    const [url, init] = fetchFn.mock.calls[0]!;
    expect(url).toBe("/sessions/s0001/timeline/r001");
    expect(init.method).toBe("GET");
    expect(init.body).toBeUndefined();
  });

  it("encodes the report gap filter", async () => {
    const fetchFn = vi.fn().mockResolvedValue(jsonResponse({ gaps: [] }));
    const api = new TrainerApi("", fetchFn);
    await api.fetchReport([2000, 1500]);
    expect(fetchFn.mock.calls[0]![0]).toBe("/report?gaps=2000,1500");
  });

  it("surfaces server error messages", async () => {
    const fetchFn = vi
      .fn()
      .mockImplementation(async () =>
        jsonResponse({ error: "guess 'ca' has length 2, word has 3" }, 400),
      );
    const api = new TrainerApi("", fetchFn);
    await expect(api.submitGuess("s0001", "r001", "ca")).rejects.toThrowError(ApiError);
    await expect(api.submitGuess("s0001", "r001", "ca")).rejects.toThrow(/length 2/);
  });
});
