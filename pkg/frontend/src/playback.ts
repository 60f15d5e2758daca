// Pure playback engine for motor timelines.
//
// The service's timeline is the single source of truth: playback only maps
// timeline milliseconds onto wall-clock milliseconds through the speed
// factor, it never re-times or reorders the stored intervals.

import type { TimelinePayload } from "./types.js";

export class TimelineFormatError extends Error {}

export interface Flash {
  node: number;
  start: number; // timeline ms
  end: number; // timeline ms
}

const NODE_COUNT = 6;

export function validateTimeline(payload: unknown): TimelinePayload {
  if (typeof payload !== "object" || payload === null) {
    throw new TimelineFormatError("timeline payload is not an object");
  }
  const candidate = payload as Partial<TimelinePayload>;
  if (typeof candidate.span_ms !== "number" || candidate.span_ms < 0) {
    throw new TimelineFormatError("timeline span_ms missing or negative");
  }
  if (typeof candidate.intervals !== "object" || candidate.intervals === null) {
    throw new TimelineFormatError("timeline intervals missing");
  }
  for (const [key, spans] of Object.entries(candidate.intervals)) {
    const node = Number(key);
    if (!Number.isInteger(node) || node < 1 || node > NODE_COUNT) {
      throw new TimelineFormatError(`timeline has unknown node ${key}`);
    }
    if (!Array.isArray(spans)) {
      throw new TimelineFormatError(`intervals for node ${key} are not a list`);
    }
    for (const span of spans) {
      if (!Array.isArray(span) || span.length !== 2) {
        throw new TimelineFormatError(`bad interval on node ${key}`);
      }
      const [on, off] = span;
      if (typeof on !== "number" || typeof off !== "number" || off <= on || on < 0) {
        throw new TimelineFormatError(`bad interval [${span}] on node ${key}`);
      }
    }
  }
  return candidate as TimelinePayload;
}

/** All vibration intervals as a flat list ordered by start time. */
export function flashes(timeline: TimelinePayload): Flash[] {
  const result: Flash[] = [];
  for (const [key, spans] of Object.entries(timeline.intervals)) {
    for (const [on, off] of spans) {
      result.push({ node: Number(key), start: on, end: off });
    }
  }
  result.sort((a, b) => a.start - b.start || a.node - b.node);
  return result;
}

/** Nodes vibrating at a given timeline instant (on <= t < off). */
export function activeNodes(timeline: TimelinePayload, timelineMs: number): Set<number> {
  const active = new Set<number>();
  for (const flash of flashes(timeline)) {
    if (flash.start <= timelineMs && timelineMs < flash.end) {
      active.add(flash.node);
    }
  }
  return active;
}

/** Flash list rescaled to wall-clock ms for the given playback speed. */
export function toWallClock(timelineFlashes: Flash[], speed: number): Flash[] {
  if (!(speed > 0)) {
    throw new RangeError(`playback speed must be positive, got ${speed}`);
  }
  return timelineFlashes.map((f) => ({
    node: f.node,
    start: f.start / speed,
    end: f.end / speed,
  }));
}

/** Maps wall-clock time to timeline time for one playback run. */
export class Player {
  readonly timeline: TimelinePayload;
  readonly speed: number;
  private startedAt: number | null = null;

  constructor(timeline: TimelinePayload, speed = 1) {
    if (!(speed > 0)) {
      throw new RangeError(`playback speed must be positive, got ${speed}`);
    }
    this.timeline = validateTimeline(timeline);
    this.speed = speed;
  }

  start(wallNowMs: number): void {
    this.startedAt = wallNowMs;
  }

  /** Timeline position in ms, clamped to the span. */
  positionAt(wallNowMs: number): number {
    if (this.startedAt === null) {
      return 0;
    }
    const elapsed = (wallNowMs - this.startedAt) * this.speed;
    return Math.min(Math.max(elapsed, 0), this.timeline.span_ms);
  }

  activeAt(wallNowMs: number): Set<number> {
    return activeNodes(this.timeline, this.positionAt(wallNowMs));
  }

  /** Progress in 0..1 for the time cursor. */
  progressAt(wallNowMs: number): number {
    return this.timeline.span_ms === 0 ? 1 : this.positionAt(wallNowMs) / this.timeline.span_ms;
  }

  finishedAt(wallNowMs: number): boolean {
    return this.startedAt !== null && this.positionAt(wallNowMs) >= this.timeline.span_ms;
  }
}
