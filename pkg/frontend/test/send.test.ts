import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { App } from "../src/main.js";
import { TurnResponse } from "../src/types.js";

function turnBody(text: string): TurnResponse {
  return {
    session_id: "sess-1",
    bot_text: `You said: ${text}`,
    template_hint: {
      template: "KARAOKE_CHAT",
      background: "IDLE",
      preserve: false,
      karaoke_segments: [{ text: `You said: ${text}`, duration_ms: 200 }],
    },
  };
}

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

let root: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = '<div id="app"></div>';
  root = document.getElementById("app") as HTMLElement;
});

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("send flow", () => {
  it("happy path: user bubble then bot bubble", async () => {
    const fetchMock = vi.fn(async (url: RequestInfo | URL) => {
      const path = String(url);
      if (path.endsWith("/sessions")) return jsonResponse({ session_id: "sess-1" });
      return jsonResponse(turnBody("hello"));
    });
    vi.stubGlobal("fetch", fetchMock);

    const app = new App(root);
    await app.start();
    await app.send("hello");

    const bubbles = root.querySelectorAll(".bubble");
    expect(bubbles).toHaveLength(2);
    expect(bubbles[0].classList.contains("user")).toBe(true);
    expect(bubbles[1].classList.contains("bot")).toBe(true);
    expect(app.viewState.messages[0].status).toBe("sent");
  });

  it("server failure marks the message unsent with a retry affordance", async () => {
    const fetchMock = vi.fn(async (url: RequestInfo | URL) => {
      const path = String(url);
      if (path.endsWith("/sessions")) return jsonResponse({ session_id: "sess-1" });
      return jsonResponse({ detail: "boom" }, 500);
    });
    vi.stubGlobal("fetch", fetchMock);
    const warn = vi.spyOn(console, "warn").mockImplementation(() => {});

    const app = new App(root);
    await app.start();
    await app.send("hello");

    expect(app.viewState.messages[0].status).toBe("unsent");
    expect(root.querySelector(".retry")).not.toBeNull();
    warn.mockRestore();
  });

  it("retry resends the same text and reconciles", async () => {
    let failures = 1;
    const fetchMock = vi.fn(async (url: RequestInfo | URL) => {
      const path = String(url);
      if (path.endsWith("/sessions")) return jsonResponse({ session_id: "sess-1" });
      if (failures > 0) {
        failures -= 1;
        return jsonResponse({ detail: "boom" }, 500);
      }
      return jsonResponse(turnBody("hello"));
    });
    vi.stubGlobal("fetch", fetchMock);
    const warn = vi.spyOn(console, "warn").mockImplementation(() => {});

    const app = new App(root);
    await app.start();
    await app.send("hello");
    expect(app.viewState.messages[0].status).toBe("unsent");

    await app.send("hello"); // the retry handler calls send with the same text
    const statuses = app.viewState.messages.map((m) => `${m.speaker}:${m.status}`);
    expect(statuses).toContain("bot:sent");
    warn.mockRestore();
  });

  it("refuses to send while a turn is in flight", async () => {
    let resolveTurn: (response: Response) => void = () => {};
    const fetchMock = vi.fn(async (url: RequestInfo | URL) => {
      const path = String(url);
      if (path.endsWith("/sessions")) return jsonResponse({ session_id: "sess-1" });
      return new Promise<Response>((resolve) => {
        resolveTurn = resolve;
      });
    });
    vi.stubGlobal("fetch", fetchMock);

    const app = new App(root);
    await app.start();
    const first = app.send("hello");
    await Promise.resolve();
    expect(app.viewState.inFlight).toBe(true);
    await app.send("second message"); // dropped: one in-flight turn at a time
    resolveTurn(jsonResponse(turnBody("hello")));
    await first;

    const userMessages = app.viewState.messages.filter((m) => m.speaker === "user");
    expect(userMessages).toHaveLength(1);
  });
});
