/** Gateway HTTP client: plain request/response polling, one turn at a time. */

import { TurnResponse } from "./types.js";

export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  async createSession(): Promise<string> {
    const response = await fetch(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({}),
    });
    if (!response.ok) throw new Error(`session create failed: ${response.status}`);
    const body = (await response.json()) as { session_id: string };
    return body.session_id;
  }

  async sendTurn(sessionId: string, text: string, debug = true): Promise<TurnResponse> {
    const response = await fetch(
      `${this.baseUrl}/sessions/${encodeURIComponent(sessionId)}/turns?debug=${debug ? 1 : 0}`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ text }),
      },
    );
    if (!response.ok) throw new Error(`turn failed: ${response.status}`);
    return (await response.json()) as TurnResponse;
  }
}
