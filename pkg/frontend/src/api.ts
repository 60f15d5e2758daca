// Typed client for the trainer service; the UI's only data source.

import type {
  GuessResponse,
  RecordView,
  ReportView,
  SessionView,
  TimelineResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

type FetchLike = typeof globalThis.fetch;

export class TrainerApi {
  constructor(
    private readonly baseUrl = "",
    private readonly fetchFn: FetchLike = globalThis.fetch.bind(globalThis),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) {
      const message =
        typeof payload === "object" && payload !== null && "error" in payload
          ? String((payload as { error: unknown }).error)
          : `request failed with status ${response.status}`;
      throw new ApiError(response.status, message);
    }
    return payload as T;
  }

  createSession(options: {
    subject: string;
    char_gap: number;
    seed?: number;
    word_length?: number;
    words_per_block?: number;
  }): Promise<SessionView> {
    return this.request("POST", "/sessions", options);
  }

  transmit(sessionId: string, word?: string): Promise<RecordView & { session_id: string }> {
    return this.request("POST", `/sessions/${sessionId}/transmit`, word ? { word } : {});
  }

  submitGuess(sessionId: string, recordId: string, guess: string): Promise<GuessResponse> {
    return this.request("POST", `/sessions/${sessionId}/guess`, {
      record_id: recordId,
      guess,
    });
  }

  fetchTimeline(sessionId: string, recordId: string): Promise<TimelineResponse> {
    return this.request("GET", `/sessions/${sessionId}/timeline/${recordId}`);
  }

  submitRating(sessionId: string, rating: number): Promise<SessionView> {
    return this.request("POST", `/sessions/${sessionId}/rating`, { rating });
  }

  fetchReport(gaps?: number[]): Promise<ReportView> {
    const query = gaps && gaps.length > 0 ? `?gaps=${gaps.join(",")}` : "";
    return this.request("GET", `/report${query}`);
  }
}
