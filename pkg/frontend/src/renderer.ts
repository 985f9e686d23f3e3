/** Renders timelines as device vibration plus a synchronized visual pulse. */

import { Segment, segmentOffsets, totalMs, vibratePattern } from "./timeline.js";

export interface RenderHandle {
  /** Resolves when the last segment has finished (or after cancel). */
  done: Promise<void>;
  cancel(): void;
}

export type Vibrator = (pattern: number[] | number) => boolean;

function deviceVibrator(): Vibrator | null {
  if (typeof navigator !== "undefined" && "vibrate" in navigator) {
    return (pattern) => navigator.vibrate(pattern);
  }
  return null;
}

export class TimelineRenderer {
  readonly hapticsAvailable: boolean;
  private vibrator: Vibrator | null;
  private timers: ReturnType<typeof setTimeout>[] = [];
  private active = false;

  constructor(
    private pulseEl: HTMLElement,
    vibrator: Vibrator | null | undefined = undefined,
  ) {
    this.vibrator = vibrator === undefined ? deviceVibrator() : vibrator;
    this.hapticsAvailable = this.vibrator !== null;
  }

  /**
   * Play a timeline. ON segments add the `pulsing` class to the pulse element
   * (and buzz the motor where supported); OFF segments remove it. The visual
   * pulse always runs so sighted helpers can follow along.
   */
  render(timeline: Segment[]): RenderHandle {
    this.cancelActive();
    if (timeline.length === 0) {
      return { done: Promise.resolve(), cancel: () => undefined };
    }
    this.active = true;
    if (this.vibrator) {
      this.vibrator(vibratePattern(timeline));
    }
    const offsets = segmentOffsets(timeline);
    timeline.forEach((seg, i) => {
      this.timers.push(
        setTimeout(() => this.pulseEl.classList.toggle("pulsing", seg.on), offsets[i]),
      );
    });
    const done = new Promise<void>((resolve) => {
      this.timers.push(
        setTimeout(() => {
          this.pulseEl.classList.remove("pulsing");
          this.active = false;
          resolve();
        }, totalMs(timeline)),
      );
    });
    return { done, cancel: () => this.cancelActive() };
  }

  private cancelActive(): void {
    if (!this.active && this.timers.length === 0) return;
    this.timers.forEach(clearTimeout);
    this.timers = [];
    this.pulseEl.classList.remove("pulsing");
    if (this.vibrator) {
      this.vibrator(0); // stop any ongoing buzz
    }
    this.active = false;
  }
}
