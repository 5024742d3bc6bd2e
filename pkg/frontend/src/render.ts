/**
 * DOM rendering. One exhaustive switch covers every template the server can
 * emit; the compiler proves coverage via the `never` check in the default
 * branch. Backgrounds map onto themed CSS classes, one per animation slot,
 * so real video loops can replace the gradients without code changes.
 */

import { Background, Template } from "./types.js";
import { Message, ViewState } from "./state.js";

export interface Handlers {
  onSend: (text: string) => void;
  onTileClick: (topic: string) => void;
  onRetry: (text: string) => void;
  onToggleDebug: () => void;
}

export const TOPIC_TILES = [
  "music",
  "movies",
  "space",
  "traveling",
  "ice cream",
  "games",
];

const BACKGROUND_CLASSES: Record<Background, string> = {
  IDLE: "bg-idle",
  GREETINGS: "bg-greetings",
  ERROR: "bg-error",
  GAMING: "bg-gaming",
  EDUCATION: "bg-education",
  MUSIC: "bg-music",
  ART: "bg-art",
  TRAVELING: "bg-traveling",
  SCIENCE: "bg-science",
};

export function backgroundClass(background: Background): string {
  return BACKGROUND_CLASSES[background];
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function karaokeText(message: Message, state: ViewState, messageIndex: number): HTMLElement {
  const wrapper = el("p", "karaoke-text");
  const cursor = state.karaokeCursor;
  const active = cursor !== null && cursor.messageIndex === messageIndex;
  if (!message.segments.length || message.speaker !== "bot") {
    wrapper.textContent = message.text;
    return wrapper;
  }
  message.segments.forEach((segment, index) => {
    const cls =
      active && index < (cursor?.segmentIndex ?? -1)
        ? "segment spoken"
        : active && index === cursor?.segmentIndex
          ? "segment speaking"
          : "segment";
    const span = el("span", cls, segment.text + " ");
    wrapper.appendChild(span);
  });
  return wrapper;
}

function bubble(message: Message, state: ViewState, index: number, handlers: Handlers): HTMLElement {
  const node = el("div", `bubble ${message.speaker} ${message.status}`);
  node.appendChild(karaokeText(message, state, index));
  if (message.status === "unsent") {
    const marker = el("span", "unsent-marker", "not sent");
    const retry = el("button", "retry", "retry");
    retry.addEventListener("click", () => handlers.onRetry(message.text));
    node.appendChild(marker);
    node.appendChild(retry);
  }
  return node;
}

function messageList(state: ViewState, handlers: Handlers): HTMLElement {
  const list = el("div", "messages");
  state.messages.forEach((message, index) => {
    list.appendChild(bubble(message, state, index, handlers));
  });
  return list;
}

function latestBot(state: ViewState): { message: Message; index: number } | null {
  for (let i = state.messages.length - 1; i >= 0; i--) {
    if (state.messages[i].speaker === "bot") {
      return { message: state.messages[i], index: i };
    }
  }
  return null;
}

function avatarFigure(): HTMLElement {
  const figure = el("div", "avatar-figure");
  figure.appendChild(el("div", "avatar-face"));
  figure.appendChild(el("div", "avatar-body"));
  return figure;
}

export function renderTemplate(state: ViewState, handlers: Handlers): HTMLElement {
  const template: Template = state.activeTemplate;
  switch (template) {
    case "LANDING": {
      const panel = el("section", "template-landing");
      panel.appendChild(el("h1", "landing-title", "Hi, I'm your chat companion"));
      panel.appendChild(
        el("p", "landing-sub", "Say hello to start a conversation about anything."),
      );
      // A failed first send must still surface its bubble and retry control.
      panel.appendChild(messageList(state, handlers));
      return panel;
    }
    case "IMAGE_LIST": {
      const panel = el("section", "template-image-list");
      const last = latestBot(state);
      if (last) panel.appendChild(karaokeText(last.message, state, last.index));
      const grid = el("div", "tile-grid");
      for (const topic of TOPIC_TILES) {
        const tile = el("button", "topic-tile", topic);
        tile.dataset.topic = topic;
        tile.addEventListener("click", () => handlers.onTileClick(topic));
        grid.appendChild(tile);
      }
      panel.appendChild(grid);
      return panel;
    }
    case "KARAOKE_CHAT": {
      const panel = el("section", "template-karaoke-chat");
      panel.appendChild(messageList(state, handlers));
      return panel;
    }
    case "KARAOKE_DETAIL": {
      const panel = el("section", "template-karaoke-detail");
      const card = el("div", "detail-card");
      const last = latestBot(state);
      if (last) card.appendChild(karaokeText(last.message, state, last.index));
      panel.appendChild(card);
      panel.appendChild(messageList(state, handlers));
      return panel;
    }
    case "KARAOKE_AVATAR": {
      const panel = el("section", "template-karaoke-avatar");
      panel.appendChild(avatarFigure());
      const speech = el("div", "avatar-speech");
      const last = latestBot(state);
      if (last) speech.appendChild(karaokeText(last.message, state, last.index));
      panel.appendChild(speech);
      panel.appendChild(messageList(state, handlers));
      return panel;
    }
    default: {
      const unreachable: never = template;
      throw new Error(`unhandled template: ${unreachable}`);
    }
  }
}

function inputBar(state: ViewState, handlers: Handlers): HTMLElement {
  const bar = el("form", "input-bar");
  const field = el("input", "input-field") as HTMLInputElement;
  field.type = "text";
  field.placeholder = "Say something...";
  field.disabled = state.inFlight;
  const send = el("button", "send-button", "Send") as HTMLButtonElement;
  send.type = "submit";
  send.disabled = state.inFlight;
  bar.appendChild(field);
  bar.appendChild(send);
  bar.addEventListener("submit", (event) => {
    event.preventDefault();
    const text = field.value.trim();
    if (!text || state.inFlight) return;
    field.value = "";
    handlers.onSend(text);
  });
  return bar;
}

function debugPanel(state: ViewState, handlers: Handlers): HTMLElement {
  const panel = el("aside", "debug-panel");
  const toggle = el("button", "debug-toggle", state.debugOpen ? "hide trace" : "show trace");
  toggle.addEventListener("click", handlers.onToggleDebug);
  panel.appendChild(toggle);
  if (state.debugOpen) {
    const pre = el("pre", "debug-trace");
    pre.textContent = JSON.stringify(state.lastTrace ?? {}, null, 2);
    panel.appendChild(pre);
  }
  return panel;
}

export function renderApp(root: HTMLElement, state: ViewState, handlers: Handlers): void {
  root.innerHTML = "";
  root.className = `app ${backgroundClass(state.background)}`;
  root.dataset.template = state.activeTemplate;
  root.dataset.background = state.background;
  root.appendChild(renderTemplate(state, handlers));
  root.appendChild(inputBar(state, handlers));
  root.appendChild(debugPanel(state, handlers));
}
