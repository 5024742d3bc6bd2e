import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { FRAME_MS, KaraokePlayer, cursorAt, totalDuration } from "../src/karaoke.js";
import { KaraokeSegment } from "../src/types.js";

const SEGMENTS: KaraokeSegment[] = [
  { text: "first bit", duration_ms: 500 },
  { text: "second bit", duration_ms: 300 },
  { text: "third bit", duration_ms: 700 },
];

describe("cursorAt", () => {
  it("walks segments by elapsed time", () => {
    expect(cursorAt(SEGMENTS, 0)).toMatchObject({ segmentIndex: 0, done: false });
    expect(cursorAt(SEGMENTS, 499)).toMatchObject({ segmentIndex: 0, done: false });
    expect(cursorAt(SEGMENTS, 500)).toMatchObject({ segmentIndex: 1, done: false });
    expect(cursorAt(SEGMENTS, 799)).toMatchObject({ segmentIndex: 1, done: false });
    expect(cursorAt(SEGMENTS, 800)).toMatchObject({ segmentIndex: 2, done: false });
  });

  it("reports done exactly at the total duration", () => {
    const total = totalDuration(SEGMENTS);
    expect(cursorAt(SEGMENTS, total - 1).done).toBe(false);
    expect(cursorAt(SEGMENTS, total).done).toBe(true);
    expect(cursorAt(SEGMENTS, total).progress).toBe(1);
  });

  it("handles empty segment lists", () => {
    expect(cursorAt([], 100).done).toBe(true);
  });

  it("progress stays within a segment", () => {
    const position = cursorAt(SEGMENTS, 650);
    expect(position.segmentIndex).toBe(1);
    expect(position.progress).toBeCloseTo(0.5, 5);
  });
});

describe("KaraokePlayer", () => {
  beforeEach(() => {
    vi.useFakeTimers();
  });

  afterEach(() => {
    vi.useRealTimers();
  });

  it("finishes within one animation frame of the total duration", () => {
    const done = vi.fn();
    const player = new KaraokePlayer((position) => {
      if (position.done) done();
    });
    player.play(SEGMENTS);
    const total = totalDuration(SEGMENTS);

    vi.advanceTimersByTime(total - FRAME_MS);
    expect(done).not.toHaveBeenCalled();

    vi.advanceTimersByTime(2 * FRAME_MS); // crosses the boundary within a frame
    expect(done).toHaveBeenCalled();
    expect(player.playing).toBe(false);
  });

  it("advances the highlight while playing", () => {
    const seen: number[] = [];
    const player = new KaraokePlayer((position) => {
      seen.push(position.segmentIndex);
    });
    player.play(SEGMENTS);
    vi.advanceTimersByTime(600);
    expect(seen.at(-1)).toBe(1);
    vi.advanceTimersByTime(400);
    expect(seen.at(-1)).toBe(2);
    player.stop();
  });

  it("stop is idempotent and halts ticks", () => {
    const tick = vi.fn();
    const player = new KaraokePlayer(tick);
    player.play(SEGMENTS);
    vi.advanceTimersByTime(100);
    const calls = tick.mock.calls.length;
    player.stop();
    player.stop();
    vi.advanceTimersByTime(500);
    expect(tick.mock.calls.length).toBe(calls);
  });
});
