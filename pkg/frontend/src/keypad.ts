/** The three-button keypad with swipe-reset and a desktop keyboard fallback. */

export type MioKey = "DOT" | "DASH" | "SQUARE" | "SWIPE_RESET" | "TAP_PROMPT" | "FINALIZE";

export type KeyHandler = (key: MioKey) => void;

// right-to-left travel needed to count as a reset swipe
const SWIPE_MIN_X_PX = 80;
const SWIPE_MAX_Y_PX = 120;
const SWIPE_MAX_MS = 600;

// a press that wanders further than this is a drag, not a tap
const TAP_MAX_TRAVEL_PX = 24;

// left to right, per the device layout
const BUTTONS: { key: MioKey; label: string; name: string }[] = [
  { key: "DOT", label: "•", name: "dot" },
  { key: "SQUARE", label: "□", name: "square" },
  { key: "DASH", label: "—", name: "dash" },
];

const KEYBOARD_MAP: Record<string, MioKey> = {
  j: "DOT",
  k: "SQUARE",
  l: "DASH",
  Backspace: "SWIPE_RESET",
  p: "TAP_PROMPT",
  Enter: "FINALIZE",
};

interface PressStart {
  x: number;
  y: number;
  t: number;
  key: MioKey | null;
}

export class Keypad {
  readonly element: HTMLElement;
  private start: PressStart | null = null;

  constructor(container: HTMLElement, private onKey: KeyHandler) {
    this.element = container;
    container.classList.add("keypad");
    for (const entry of BUTTONS) {
      const button = document.createElement("button");
      button.type = "button";
      button.className = `key key-${entry.name}`;
      button.dataset.key = entry.key;
      button.setAttribute("aria-label", entry.name);
      button.textContent = entry.label;
      container.appendChild(button);
    }
    container.addEventListener("pointerdown", (ev) => this.onPointerDown(ev as PointerEvent));
    container.addEventListener("pointerup", (ev) => this.onPointerUp(ev as PointerEvent));
    container.addEventListener("pointercancel", () => (this.start = null));
  }

  /** Attach the desktop fallback (three adjacent keys) to a focus target. */
  bindKeyboard(target: EventTarget): void {
    target.addEventListener("keydown", (ev) => {
      const key = KEYBOARD_MAP[(ev as KeyboardEvent).key];
      if (key) {
        (ev as KeyboardEvent).preventDefault();
        this.onKey(key);
      }
    });
  }

  private buttonKey(target: EventTarget | null): MioKey | null {
    if (target instanceof Element) {
      const button = target.closest("button[data-key]");
      if (button) return (button as HTMLElement).dataset.key as MioKey;
    }
    return null;
  }

  private onPointerDown(ev: PointerEvent): void {
    this.start = { x: ev.clientX, y: ev.clientY, t: Date.now(), key: this.buttonKey(ev.target) };
  }

  private onPointerUp(ev: PointerEvent): void {
    const start = this.start;
    this.start = null;
    if (!start) return;
    const dx = ev.clientX - start.x;
    const dy = Math.abs(ev.clientY - start.y);
    const dt = Date.now() - start.t;
    if (dx <= -SWIPE_MIN_X_PX && dy <= SWIPE_MAX_Y_PX && dt <= SWIPE_MAX_MS) {
      this.onKey("SWIPE_RESET"); // right-to-left swipe across the keypad
      return;
    }
    const key = this.buttonKey(ev.target) ?? start.key;
    if (key && key === start.key && Math.abs(dx) <= TAP_MAX_TRAVEL_PX && dy <= TAP_MAX_TRAVEL_PX) {
      this.onKey(key);
    }
  }
}
