import { describe, expect, it, vi } from "vitest";

import {
  addPendingUserMessage,
  advanceCursor,
  applyTurn,
  initialState,
  markLastUserMessage,
} from "../src/state.js";
import { TurnResponse } from "../src/types.js";

function turn(overrides: Partial<TurnResponse> = {}): TurnResponse {
  return {
    session_id: "s",
    bot_text: "Hello there, friend.",
    template_hint: {
      template: "KARAOKE_AVATAR",
      background: "GREETINGS",
      preserve: false,
      karaoke_segments: [
        { text: "Hello there,", duration_ms: 600 },
        { text: "friend.", duration_ms: 400 },
      ],
    },
    ...overrides,
  };
}

describe("applyTurn", () => {
  it("appends the bot message and adopts the hint", () => {
    const state = applyTurn(initialState(), turn());
    expect(state.messages).toHaveLength(1);
    expect(state.messages[0].speaker).toBe("bot");
    expect(state.activeTemplate).toBe("KARAOKE_AVATAR");
    expect(state.background).toBe("GREETINGS");
    expect(state.karaokeCursor).toEqual({ messageIndex: 0, segmentIndex: 0, progress: 0 });
  });

  it("mirrors the server preserve flag", () => {
    const preserved = applyTurn(
      initialState(),
      turn({
        template_hint: {
          template: "KARAOKE_DETAIL",
          background: "IDLE",
          preserve: true,
          karaoke_segments: [],
        },
      }),
    );
    expect(preserved.preserve).toBe(true);
    expect(preserved.activeTemplate).toBe("KARAOKE_DETAIL");
  });

  it("keeps the rendered template when a turn has no hint", () => {
    let state = applyTurn(initialState(), turn());
    expect(state.activeTemplate).toBe("KARAOKE_AVATAR");
    state = applyTurn(state, {
      session_id: "s",
      bot_text: "More words.",
      template_hint: null as unknown as TurnResponse["template_hint"],
    });
    expect(state.activeTemplate).toBe("KARAOKE_AVATAR");
    expect(state.background).toBe("GREETINGS");
  });

  it("falls back to KARAOKE_CHAT on a malformed hint and warns", () => {
    const warn = vi.spyOn(console, "warn").mockImplementation(() => {});
    const state = applyTurn(
      initialState(),
      turn({
        template_hint: {
          template: "HOLOGRAM" as never,
          background: "GREETINGS",
          preserve: false,
          karaoke_segments: [],
        },
      }),
    );
    expect(state.activeTemplate).toBe("KARAOKE_CHAT");
    expect(warn).toHaveBeenCalled();
    warn.mockRestore();
  });

  it("confirms the pending user bubble", () => {
    let state = addPendingUserMessage(initialState(), "hi");
    expect(state.inFlight).toBe(true);
    state = applyTurn(state, turn());
    expect(state.messages[0]).toMatchObject({ speaker: "user", status: "sent" });
    expect(state.inFlight).toBe(false);
  });
});

describe("markLastUserMessage", () => {
  it("marks the newest user bubble unsent on failure", () => {
    let state = addPendingUserMessage(initialState(), "hi");
    state = markLastUserMessage(state, "unsent");
    expect(state.messages[0].status).toBe("unsent");
    expect(state.inFlight).toBe(false);
  });
});

describe("advanceCursor", () => {
  it("only moves forward", () => {
    let state = applyTurn(initialState(), turn());
    state = advanceCursor(state, 1, 0.5);
    expect(state.karaokeCursor).toMatchObject({ segmentIndex: 1, progress: 0.5 });
    state = advanceCursor(state, 0, 0.9); // attempt to rewind
    expect(state.karaokeCursor).toMatchObject({ segmentIndex: 1, progress: 0.5 });
    state = advanceCursor(state, 1, 0.2); // rewind within segment
    expect(state.karaokeCursor).toMatchObject({ segmentIndex: 1, progress: 0.5 });
  });
});
