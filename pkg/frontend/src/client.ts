/** Thin client for the engine's HTTP endpoints and per-session event channel. */

import { Segment, parseTimeline } from "./timeline.js";
import { MioKey } from "./keypad.js";

export interface SessionInfo {
  id: string;
  unit_ms: number;
  committed: string;
  activity: string | null;
  prompt: string | null;
}

export interface ActivityInfo {
  cue: Segment[];
  activity: string;
  prompt: string;
  prompt_count: number;
}

export interface EventResult {
  effect: { kind: string; char: string | null; cue: unknown };
  outcome: string | null;
  cue: Segment[] | null;
  committed: string;
  prompt?: string | null;
  completed?: boolean;
  error?: string;
  detail?: string;
}

export interface PromptInfo {
  prompt: string | null;
  committed?: string;
  timeline: Segment[];
  completed: boolean;
}

async function asJson(resp: Response): Promise<any> {
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      detail = JSON.stringify((await resp.json()).detail);
    } catch {
      /* plain status is fine */
    }
    throw new Error(`${resp.status}: ${detail}`);
  }
  return resp.json();
}

export class SessionClient {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return `${this.baseUrl.replace(/\/$/, "")}${path}`;
  }

  async createSession(unitMs?: number): Promise<SessionInfo> {
    const resp = await fetch(this.url("/sessions"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(unitMs ? { unit_ms: unitMs } : {}),
    });
    return asJson(resp);
  }

  async enterActivity(sid: string, kind: string, seed?: number): Promise<ActivityInfo> {
    const resp = await fetch(this.url(`/sessions/${sid}/activity`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(seed === undefined ? { kind } : { kind, seed }),
    });
    const body = await asJson(resp);
    return { ...body, cue: parseTimeline(body.cue) };
  }

  async promptTimeline(sid: string, suffix?: boolean): Promise<PromptInfo> {
    const query = suffix === undefined ? "" : `?suffix=${suffix}`;
    const body = await asJson(await fetch(this.url(`/sessions/${sid}/prompt${query}`)));
    return { ...body, timeline: parseTimeline(body.timeline) };
  }

  async textTimeline(text: string, unitMs = 200): Promise<Segment[]> {
    const params = new URLSearchParams({ text, unit_ms: String(unitMs) });
    const body = await asJson(await fetch(this.url(`/timeline?${params}`)));
    return parseTimeline(body.timeline);
  }

  async mainScreenCue(unitMs = 200): Promise<Segment[]> {
    const body = await asJson(await fetch(this.url(`/cues/main-screen?unit_ms=${unitMs}`)));
    return parseTimeline(body.timeline);
  }

  connectEvents(sid: string, onResult: (result: EventResult) => void): EventChannel {
    const ws = this.url(`/sessions/${sid}/events`).replace(/^http/, "ws");
    return new EventChannel(ws, onResult);
  }
}

/**
 * Ordered event channel. Events are buffered until the socket is open and
 * kept until the server answers, so a dropped connection replays anything
 * unacknowledged after reconnecting.
 */
export class EventChannel {
  private socket: WebSocket | null = null;
  private pending: { t: number; key: MioKey }[] = [];
  private inFlight = 0;
  private closed = false;
  private reconnectDelayMs = 250;

  constructor(
    private wsUrl: string,
    private onResult: (result: EventResult) => void,
    private socketFactory: (url: string) => WebSocket = (url) => new WebSocket(url),
  ) {
    this.open();
  }

  send(key: MioKey, t: number = Date.now()): void {
    this.pending.push({ t, key });
    this.flush();
  }

  close(): void {
    this.closed = true;
    this.socket?.close();
  }

  get buffered(): number {
    return this.pending.length;
  }

  private open(): void {
    if (this.closed) return;
    this.inFlight = 0;
    const socket = this.socketFactory(this.wsUrl);
    this.socket = socket;
    socket.addEventListener("open", () => this.flush());
    socket.addEventListener("message", (ev) => {
      const result = JSON.parse((ev as MessageEvent).data) as EventResult;
      if (this.inFlight > 0) {
        this.pending.shift(); // acknowledged
        this.inFlight -= 1;
      }
      this.onResult(result);
    });
    socket.addEventListener("close", () => {
      this.socket = null;
      if (!this.closed) {
        setTimeout(() => this.open(), this.reconnectDelayMs);
      }
    });
  }

  private flush(): void {
    const socket = this.socket;
    if (!socket || socket.readyState !== WebSocket.OPEN) return;
    while (this.inFlight < this.pending.length) {
      socket.send(JSON.stringify(this.pending[this.inFlight]));
      this.inFlight += 1;
    }
  }
}
