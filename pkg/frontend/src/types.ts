/** Wire types mirrored from the gateway HTTP API. */

export const TEMPLATES = [
  "LANDING",
  "IMAGE_LIST",
  "KARAOKE_CHAT",
  "KARAOKE_DETAIL",
  "KARAOKE_AVATAR",
] as const;

export type Template = (typeof TEMPLATES)[number];

export const BACKGROUNDS = [
  "IDLE",
  "GREETINGS",
  "ERROR",
  "GAMING",
  "EDUCATION",
  "MUSIC",
  "ART",
  "TRAVELING",
  "SCIENCE",
] as const;

export type Background = (typeof BACKGROUNDS)[number];

export interface KaraokeSegment {
  text: string;
  duration_ms: number;
}

export interface TemplateHint {
  template: Template;
  background: Background;
  preserve: boolean;
  karaoke_segments: KaraokeSegment[];
}

export interface TurnResponse {
  session_id: string;
  bot_text: string;
  template_hint: TemplateHint;
  debug_trace?: Record<string, unknown>;
}

export function isTemplate(value: unknown): value is Template {
  return typeof value === "string" && (TEMPLATES as readonly string[]).includes(value);
}

export function isBackground(value: unknown): value is Background {
  return typeof value === "string" && (BACKGROUNDS as readonly string[]).includes(value);
}
