// Trainer UI wiring: one active session per tab, all data via the service.

import { ApiError, TrainerApi } from "./api.js";
import { applyActiveNodes, bandHtml, setCursor } from "./band.js";
import { accuracyChartSvg, type AccuracyPoint } from "./charts.js";
import { Player, TimelineFormatError } from "./playback.js";
import { reportHtml } from "./report.js";
import type { RecordView, SessionView } from "./types.js";

const api = new TrainerApi("");

interface UiState {
  session: SessionView | null;
  pendingRecord: (RecordView & { session_id: string }) | null;
  player: Player | null;
  speed: number;
  chartPoints: Map<string, AccuracyPoint>; // session id -> latest accuracy
}

const state: UiState = {
  session: null,
  pendingRecord: null,
  player: null,
  speed: 1,
  chartPoints: new Map(),
};

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) {
    throw new Error(`missing element #${id}`);
  }
  return found as T;
}

function showError(message: string): void {
  const banner = el<HTMLDivElement>("error-banner");
  banner.textContent = message;
  banner.classList.remove("hidden");
}

function clearError(): void {
  el<HTMLDivElement>("error-banner").classList.add("hidden");
}

async function guarded(action: () => Promise<void>): Promise<void> {
  clearError();
  try {
    await action();
  } catch (error) {
    if (error instanceof ApiError || error instanceof TimelineFormatError) {
      showError(error.message);
    } else {
      showError(String(error));
      throw error;
    }
  }
}

// --- playback ---------------------------------------------------------------

let animationHandle = 0;

function playTimeline(timeline: RecordView["timeline"]): void {
  cancelAnimationFrame(animationHandle);
  const player = new Player(timeline, state.speed);
  state.player = player;
  player.start(performance.now());
  const band = el<HTMLDivElement>("band-area");
  const tick = () => {
    const now = performance.now();
    applyActiveNodes(band, player.activeAt(now));
    setCursor(band, player.progressAt(now));
    if (!player.finishedAt(now)) {
      animationHandle = requestAnimationFrame(tick);
    } else {
      applyActiveNodes(band, new Set());
      setCursor(band, 1);
    }
  };
  animationHandle = requestAnimationFrame(tick);
}

// --- session flow -----------------------------------------------------------

function renderSessionMeta(): void {
  const meta = el<HTMLDivElement>("session-meta");
  if (!state.session) {
    meta.textContent = "no active session";
    return;
  }
  const accuracy =
    state.session.accuracy_pct === null
      ? "n/a"
      : `${state.session.accuracy_pct.toFixed(1)}%`;
  meta.textContent =
    `session ${state.session.session_id} - subject ${state.session.subject} - ` +
    `gap ${state.session.char_gap} ms - accuracy ${accuracy}`;
}

function renderChart(): void {
  el<HTMLDivElement>("chart-area").innerHTML = accuracyChartSvg(
    [...state.chartPoints.values()],
  );
}

function appendResultRow(record: RecordView, sessionAccuracy: number): void {
  const results = el<HTMLTableSectionElement>("results-body");
  const row = document.createElement("tr");
  const marks = (record.per_char_correct ?? [])
    .map((ok, i) => {
      const sent = record.word[i] ?? "?";
      const guessed = record.guess?.[i] ?? "?";
      return `<span class="${ok ? "hit" : "miss"}" title="sent ${sent}">${guessed}</span>`;
    })
    .join("");
  const correct = (record.per_char_correct ?? []).filter(Boolean).length;
  const pct = (100 * correct) / record.word.length;
  row.innerHTML =
    `<td>${record.record_id}</td><td>${record.word}</td><td class="marks">${marks}</td>` +
    `<td>${pct.toFixed(1)}%</td><td>${sessionAccuracy.toFixed(1)}%</td>`;
  row.className = correct === record.word.length ? "all-correct" : "has-miss";
  results.prepend(row);
}

async function createSession(): Promise<void> {
  const subject = el<HTMLInputElement>("subject-input").value.trim() || "anonymous";
  const gap = Number(el<HTMLInputElement>("gap-input").value);
  const seedRaw = el<HTMLInputElement>("seed-input").value.trim();
  const session = await api.createSession({
    subject,
    char_gap: gap,
    ...(seedRaw === "" ? {} : { seed: Number(seedRaw) }),
  });
  state.session = session;
  state.pendingRecord = null;
  el<HTMLDivElement>("session-panel").classList.remove("hidden");
  el<HTMLTableSectionElement>("results-body").innerHTML = "";
  renderSessionMeta();
}

async function transmitNext(): Promise<void> {
  if (!state.session) {
    throw new ApiError(0, "create a session first");
  }
  const wordOverride = el<HTMLInputElement>("word-input").value.trim();
  const record = await api.transmit(
    state.session.session_id,
    wordOverride === "" ? undefined : wordOverride,
  );
  state.pendingRecord = record;
  // the word itself stays hidden until the guess is scored
  el<HTMLDivElement>("pending-info").textContent =
    `word ${record.record_id} sent (${record.word.length} letters) - enter what you felt`;
  el<HTMLInputElement>("guess-input").value = "";
  el<HTMLInputElement>("guess-input").focus();
  playTimeline(record.timeline);
}

async function submitGuess(): Promise<void> {
  if (!state.session || !state.pendingRecord) {
    throw new ApiError(0, "transmit a word first");
  }
  const guess = el<HTMLInputElement>("guess-input").value.trim();
  const scored = await api.submitGuess(
    state.session.session_id,
    state.pendingRecord.record_id,
    guess,
  );
  state.session.accuracy_pct = scored.session_accuracy_pct;
  state.chartPoints.set(state.session.session_id, {
    gap_ms: state.session.char_gap,
    accuracy_pct: scored.session_accuracy_pct,
  });
  state.pendingRecord = null;
  el<HTMLDivElement>("pending-info").textContent = "";
  appendResultRow(scored, scored.session_accuracy_pct);
  renderSessionMeta();
  renderChart();
}

async function replayLast(): Promise<void> {
  if (!state.session || state.session.records.length === 0) {
    const record = state.pendingRecord;
    if (record) {
      const payload = await api.fetchTimeline(record.session_id, record.record_id);
      playTimeline(payload.timeline);
    }
    return;
  }
  const last = state.pendingRecord ?? state.session.records[state.session.records.length - 1];
  if (last) {
    const payload = await api.fetchTimeline(state.session.session_id, last.record_id);
    playTimeline(payload.timeline);
  }
}

async function submitRating(): Promise<void> {
  if (!state.session) {
    throw new ApiError(0, "create a session first");
  }
  const rating = Number(el<HTMLInputElement>("rating-input").value);
  const session = await api.submitRating(state.session.session_id, rating);
  state.session = session;
  el<HTMLDivElement>("rating-info").textContent = `rating saved: ${rating}/10`;
}

async function loadReport(): Promise<void> {
  const report = await api.fetchReport();
  el<HTMLDivElement>("report-area").innerHTML = reportHtml(report);
}

// --- boot --------------------------------------------------------------------

function initTabs(): void {
  document.querySelectorAll<HTMLButtonElement>(".tab").forEach((tab) => {
    tab.addEventListener("click", () => {
      document.querySelectorAll(".tab").forEach((t) => t.classList.remove("active"));
      tab.classList.add("active");
      const view = tab.dataset.view;
      document.querySelectorAll<HTMLElement>(".view").forEach((panel) => {
        panel.classList.toggle("hidden", panel.id !== `${view}-view`);
      });
      if (view === "report") {
        void guarded(loadReport);
      }
    });
  });
}

function init(): void {
  el<HTMLDivElement>("band-area").innerHTML =
    bandHtml() + `<div class="playback-cursor"><div class="playback-cursor-fill"></div></div>`;
  initTabs();
  el<HTMLButtonElement>("create-session").addEventListener("click", () =>
    guarded(createSession),
  );
  el<HTMLButtonElement>("transmit-word").addEventListener("click", () =>
    guarded(transmitNext),
  );
  el<HTMLButtonElement>("submit-guess").addEventListener("click", () => guarded(submitGuess));
  el<HTMLInputElement>("guess-input").addEventListener("keydown", (event) => {
    if (event.key === "Enter") {
      void guarded(submitGuess);
    }
  });
  el<HTMLButtonElement>("replay").addEventListener("click", () => guarded(replayLast));
  el<HTMLButtonElement>("submit-rating").addEventListener("click", () =>
    guarded(submitRating),
  );
  el<HTMLSelectElement>("speed-select").addEventListener("change", (event) => {
    state.speed = Number((event.target as HTMLSelectElement).value);
  });
}

if (document.readyState === "loading") {
  document.addEventListener("DOMContentLoaded", init);
} else {
  init();
}
