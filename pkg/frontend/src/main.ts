/** App wiring: state container, send flow with optimistic echo, karaoke driver. */

import { ApiClient } from "./api.js";
import { KaraokePlayer } from "./karaoke.js";
import { Handlers, renderApp } from "./render.js";
import {
  ViewState,
  addPendingUserMessage,
  advanceCursor,
  applyTurn,
  initialState,
  markLastUserMessage,
  toggleDebug,
} from "./state.js";

export class App {
  private state: ViewState = initialState();
  private sessionId: string | null = null;
  private readonly player: KaraokePlayer;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient = new ApiClient(),
  ) {
    this.player = new KaraokePlayer((position) => {
      this.state = advanceCursor(this.state, position.segmentIndex, position.progress);
      this.render();
    });
  }

  async start(): Promise<void> {
    this.render();
    try {
      this.sessionId = await this.api.createSession();
    } catch (error) {
      console.warn("session create failed; retry on first send", error);
    }
  }

  private render(): void {
    const handlers: Handlers = {
      onSend: (text) => void this.send(text),
      onTileClick: (topic) => void this.send(`let's talk about ${topic}`),
      onRetry: (text) => void this.send(text),
      onToggleDebug: () => {
        this.state = toggleDebug(this.state);
        this.render();
      },
    };
    renderApp(this.root, this.state, handlers);
  }

  async send(text: string): Promise<void> {
    if (this.state.inFlight) return;
    this.state = addPendingUserMessage(this.state, text);
    this.render();
    try {
      if (!this.sessionId) {
        this.sessionId = await this.api.createSession();
      }
      const turn = await this.api.sendTurn(this.sessionId, text);
      this.state = applyTurn(this.state, turn);
      this.render();
      this.player.play(turn.template_hint?.karaoke_segments ?? []);
    } catch (error) {
      console.warn("turn failed", error);
      this.state = markLastUserMessage(this.state, "unsent");
      this.render();
    }
  }

  get viewState(): ViewState {
    return this.state;
  }
}

export function boot(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  void new App(root).start();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  boot();
}
