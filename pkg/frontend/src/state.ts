/**
 * View state and its transitions.
 *
 * The server is the source of truth for template and background; the client
 * mirrors them. A turn that carries no usable hint never changes the
 * rendered template (preserve-mode mirror), and a malformed hint falls back
 * to the plain chat template with a console warning.
 */

import {
  Background,
  KaraokeSegment,
  Template,
  TurnResponse,
  isBackground,
  isTemplate,
} from "./types.js";

export type MessageStatus = "sent" | "pending" | "unsent";

export interface Message {
  speaker: "user" | "bot";
  text: string;
  status: MessageStatus;
  segments: KaraokeSegment[];
}

export interface KaraokeCursor {
  messageIndex: number;
  segmentIndex: number;
  /** 0..1 within the current segment; cursors only ever advance. */
  progress: number;
}

export interface ViewState {
  messages: Message[];
  activeTemplate: Template;
  background: Background;
  preserve: boolean;
  karaokeCursor: KaraokeCursor | null;
  debugOpen: boolean;
  inFlight: boolean;
  lastTrace: Record<string, unknown> | null;
}

export function initialState(): ViewState {
  return {
    messages: [],
    activeTemplate: "LANDING",
    background: "IDLE",
    preserve: false,
    karaokeCursor: null,
    debugOpen: false,
    inFlight: false,
    lastTrace: null,
  };
}

export function addPendingUserMessage(state: ViewState, text: string): ViewState {
  return {
    ...state,
    inFlight: true,
    messages: [
      ...state.messages,
      { speaker: "user", text, status: "pending", segments: [] },
    ],
  };
}

export function markLastUserMessage(state: ViewState, status: MessageStatus): ViewState {
  const messages = [...state.messages];
  for (let i = messages.length - 1; i >= 0; i--) {
    if (messages[i].speaker === "user") {
      messages[i] = { ...messages[i], status };
      break;
    }
  }
  return { ...state, messages, inFlight: false };
}

/** Append the bot turn and adopt its template hint. */
export function applyTurn(state: ViewState, turn: TurnResponse): ViewState {
  const confirmed = markLastUserMessage(state, "sent");
  const hint = turn.template_hint;

  let template = confirmed.activeTemplate;
  let background = confirmed.background;
  let preserve = confirmed.preserve;
  if (hint == null) {
    // No hint at all: preserve whatever is on screen.
  } else if (!isTemplate(hint.template) || !isBackground(hint.background)) {
    console.warn("malformed template hint, falling back to KARAOKE_CHAT", hint);
    template = "KARAOKE_CHAT";
    background = isBackground(hint.background) ? hint.background : "IDLE";
    preserve = false;
  } else {
    template = hint.template;
    background = hint.background;
    preserve = Boolean(hint.preserve);
  }

  const segments = hint?.karaoke_segments ?? [];
  const messages: Message[] = [
    ...confirmed.messages,
    { speaker: "bot", text: turn.bot_text, status: "sent", segments },
  ];
  return {
    ...confirmed,
    messages,
    activeTemplate: template,
    background,
    preserve,
    karaokeCursor: segments.length
      ? { messageIndex: messages.length - 1, segmentIndex: 0, progress: 0 }
      : null,
    lastTrace: turn.debug_trace ?? confirmed.lastTrace,
    inFlight: false,
  };
}

/** Move the karaoke cursor forward; it never goes backwards. */
export function advanceCursor(state: ViewState, segmentIndex: number, progress: number): ViewState {
  const cursor = state.karaokeCursor;
  if (!cursor) return state;
  if (
    segmentIndex < cursor.segmentIndex ||
    (segmentIndex === cursor.segmentIndex && progress < cursor.progress)
  ) {
    return state;
  }
  return { ...state, karaokeCursor: { ...cursor, segmentIndex, progress } };
}

export function toggleDebug(state: ViewState): ViewState {
  return { ...state, debugOpen: !state.debugOpen };
}
