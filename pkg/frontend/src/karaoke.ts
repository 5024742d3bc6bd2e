/**
 * Karaoke timing: map elapsed time onto the segment being spoken.
 *
 * The cursor math is pure; a small interval driver feeds it wall-clock time
 * so tests can use fake timers.
 */

import { KaraokeSegment } from "./types.js";

export interface CursorPosition {
  segmentIndex: number;
  /** 0..1 within the segment. */
  progress: number;
  done: boolean;
}

export function totalDuration(segments: KaraokeSegment[]): number {
  return segments.reduce((sum, segment) => sum + segment.duration_ms, 0);
}

export function cursorAt(segments: KaraokeSegment[], elapsedMs: number): CursorPosition {
  if (!segments.length) {
    return { segmentIndex: 0, progress: 0, done: true };
  }
  let consumed = 0;
  for (let i = 0; i < segments.length; i++) {
    const end = consumed + segments[i].duration_ms;
    if (elapsedMs < end) {
      return {
        segmentIndex: i,
        progress: (elapsedMs - consumed) / segments[i].duration_ms,
        done: false,
      };
    }
    consumed = end;
  }
  return { segmentIndex: segments.length - 1, progress: 1, done: true };
}

export const FRAME_MS = 17; // one animation frame at ~60 fps

export class KaraokePlayer {
  private timer: ReturnType<typeof setInterval> | null = null;
  private startedAt = 0;

  constructor(
    private readonly onTick: (position: CursorPosition) => void,
    private readonly intervalMs: number = FRAME_MS,
  ) {}

  play(segments: KaraokeSegment[]): void {
    this.stop();
    if (!segments.length) return;
    this.startedAt = Date.now();
    this.timer = setInterval(() => {
      const position = cursorAt(segments, Date.now() - this.startedAt);
      this.onTick(position);
      if (position.done) this.stop();
    }, this.intervalMs);
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  get playing(): boolean {
    return this.timer !== null;
  }
}
