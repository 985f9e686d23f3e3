/** Wires the landing screen, prompt area, keypad, and renderer together. */

import { EventChannel, EventResult, SessionClient } from "./client.js";
import { Keypad, MioKey } from "./keypad.js";
import { TimelineRenderer } from "./renderer.js";
import { parseTimeline } from "./timeline.js";

const ACTIVITIES: { kind: string; label: string; cues: number }[] = [
  { kind: "WORDS_PRACTICE", label: "Words Practice", cues: 1 },
  { kind: "EXERCISE", label: "Exercise", cues: 2 },
  { kind: "ABC_PRACTICE", label: "ABC Practice", cues: 3 },
  { kind: "PLAYBACK", label: "Playback", cues: 4 },
];

export class TrainerApp {
  private sessionId: string | null = null;
  private channel: EventChannel | null = null;
  private renderer: TimelineRenderer;
  private els: Record<string, HTMLElement> = {};

  constructor(
    private root: HTMLElement,
    private client: SessionClient,
    renderer?: TimelineRenderer,
  ) {
    this.root.innerHTML = `
      <div class="screen">
        <div class="top-half" id="prompt-area">
          <div class="pulse" id="pulse"></div>
          <h1 id="title">MIO</h1>
          <div id="prompt" class="prompt"></div>
          <div id="committed" class="committed"></div>
          <div id="status" class="status"></div>
        </div>
        <nav id="landing" class="landing"></nav>
        <div id="keypad" class="bottom-half" hidden></div>
        <button id="back" class="back" hidden>&#8592; main screen</button>
      </div>`;
    for (const id of ["prompt-area", "pulse", "title", "prompt", "committed", "status", "landing", "keypad", "back"]) {
      this.els[id] = this.root.querySelector(`#${id}`) as HTMLElement;
    }
    this.renderer = renderer ?? new TimelineRenderer(this.els["pulse"]);
    if (!this.renderer.hapticsAvailable) {
      this.els["status"].textContent = "no vibration hardware: visual pulses only";
    }

    for (const activity of ACTIVITIES) {
      const button = document.createElement("button");
      button.textContent = activity.label;
      button.dataset.kind = activity.kind;
      button.addEventListener("click", () => void this.enterActivity(activity.kind));
      this.els["landing"].appendChild(button);
    }
    const keypad = new Keypad(this.els["keypad"], (key) => this.sendKey(key));
    keypad.bindKeyboard(this.root.ownerDocument);
    this.els["prompt-area"].addEventListener("click", () => this.sendKey("TAP_PROMPT"));
    this.els["back"].addEventListener("click", () => void this.toMainScreen());
  }

  async start(): Promise<void> {
    const session = await this.client.createSession();
    this.sessionId = session.id;
    this.channel = this.client.connectEvents(session.id, (result) => this.onResult(result));
    this.els["status"].textContent = `session ${session.id.slice(0, 8)} ready`;
  }

  private sendKey(key: MioKey): void {
    if (!this.channel || this.els["keypad"].hidden) return;
    this.channel.send(key);
  }

  private async enterActivity(kind: string): Promise<void> {
    if (!this.sessionId) return;
    const info = await this.client.enterActivity(this.sessionId, kind);
    this.els["landing"].hidden = true;
    this.els["keypad"].hidden = false;
    this.els["back"].hidden = false;
    this.els["title"].textContent = ACTIVITIES.find((a) => a.kind === kind)?.label ?? kind;
    this.els["prompt"].textContent = info.prompt;
    this.els["committed"].textContent = "";
    this.renderer.render(info.cue);
  }

  private async toMainScreen(): Promise<void> {
    this.els["landing"].hidden = false;
    this.els["keypad"].hidden = true;
    this.els["back"].hidden = true;
    this.els["title"].textContent = "MIO";
    this.els["prompt"].textContent = "";
    this.els["committed"].textContent = "";
    this.renderer.render(await this.client.mainScreenCue());
  }

  private onResult(result: EventResult): void {
    if (result.error) {
      this.els["status"].textContent = `${result.error}: ${result.detail ?? ""}`;
      return;
    }
    this.els["committed"].textContent = result.committed;
    if (result.prompt !== undefined) {
      this.els["prompt"].textContent = result.prompt ?? "all prompts complete";
    }
    if (result.outcome === "WRONG_RESET") {
      this.els["status"].textContent = "wrong entry: input reset";
    } else if (result.outcome === "PROMPT_COMPLETE") {
      this.els["status"].textContent = "prompt complete";
    } else if (result.outcome === "SESSION_COMPLETE") {
      this.els["status"].textContent = "activity complete";
    }
    if (result.cue) {
      this.renderer.render(parseTimeline(result.cue));
    }
  }
}
