// End-to-end checks against the real trainer service: playback input comes
// from an actual timeline response and guess scoring round-trips, with the
// displayed accuracy taken from the service, never computed locally.

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { spawn, type ChildProcess } from "node:child_process";

import { TrainerApi } from "../src/api.js";
import { flashes, toWallClock, validateTimeline } from "../src/playback.js";

let service: ChildProcess | null = null;
let baseUrl = "";

beforeAll(async () => {
  service = spawn("python3", ["-m", "hapticbraille.cli", "serve", "--port", "0"], {
    stdio: ["ignore", "pipe", "pipe"],
  });
  baseUrl = await new Promise<string>((resolve, reject) => {
    const timer = setTimeout(() => reject(new Error("service did not start")), 15000);
    let output = "";
    service!.stdout!.on("data", (chunk: Buffer) => {
      output += chunk.toString();
      const match = output.match(/http:\/\/[-\w.]+:\d+/);
      if (match) {
        clearTimeout(timer);
        resolve(match[0]);
      }
    });
    service!.on("error", reject);
    service!.on("exit", (code) => reject(new Error(`service exited early (${code})`)));
  });
}, 20000);

afterAll(() => {
  service?.kill();
});

describe("live service round trips", () => {
  it("plays the q timeline as five flashes at 600 ms pitch at 1x", async () => {
    const api = new TrainerApi(baseUrl);
    const session = await api.createSession({ subject: "ui", char_gap: 1000, word_length: 1 });
    const record = await api.transmit(session.session_id, "q");
    const fetched = await api.fetchTimeline(session.session_id, record.record_id);
    const wall = toWallClock(flashes(validateTimeline(fetched.timeline)), 1);
    expect(wall.map((f) => [f.node, f.start])).toEqual([
      [1, 0],
      [2, 600],
      [3, 1200],
      [4, 1800],
      [5, 2400],
    ]);
    for (const flash of wall) {
      expect(flash.end - flash.start).toBe(300);
    }
  });

  it("round-trips a 2/3-correct guess and displays the service's accuracy", async () => {
    const api = new TrainerApi(baseUrl);
    const session = await api.createSession({ subject: "ui", char_gap: 1000 });
    const record = await api.transmit(session.session_id, "cat");
    const scored = await api.submitGuess(session.session_id, record.record_id, "cbt");
    expect(scored.per_char_correct).toEqual([true, false, true]);
    // what the UI renders is exactly the service's number
    const displayed = `${scored.session_accuracy_pct.toFixed(1)}%`;
    expect(displayed).toBe("66.7%");
    expect(scored.session_accuracy_pct).toBeCloseTo(200 / 3, 10);
  });
});
