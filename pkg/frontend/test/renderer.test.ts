import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { TimelineRenderer } from "../src/renderer";
import { Segment, onCount } from "../src/timeline";

const FRAME_MS = 17; // one display frame at 60 Hz

const TEA: Segment[] = [
  { on: true, ms: 600 }, { on: false, ms: 600 },
  { on: true, ms: 200 }, { on: false, ms: 600 },
  { on: true, ms: 200 }, { on: false, ms: 200 },
  { on: true, ms: 600 },
];

/** Advance fake time, recording every visual pulse edge as (t, isOn). */
function playAndRecord(el: HTMLElement, renderer: TimelineRenderer, tl: Segment[]) {
  const edges: { t: number; on: boolean }[] = [];
  let wasOn = false;
  renderer.render(tl);
  const total = tl.reduce((s, seg) => s + seg.ms, 0);
  for (let t = 0; t <= total + FRAME_MS; t += 1) {
    vi.advanceTimersByTime(1);
    const isOn = el.classList.contains("pulsing");
    if (isOn !== wasOn) {
      edges.push({ t: t + 1, on: isOn });
      wasOn = isOn;
    }
  }
  return edges;
}

describe("TimelineRenderer", () => {
  let el: HTMLElement;

  beforeEach(() => {
    vi.useFakeTimers();
    el = document.createElement("div");
  });

  afterEach(() => {
    vi.useRealTimers();
  });

  it("renders one visual pulse per ON segment", () => {
    const renderer = new TimelineRenderer(el, null);
    const edges = playAndRecord(el, renderer, TEA);
    const pulses = edges.filter((e) => e.on).length;
    expect(pulses).toBe(onCount(TEA));
  });

  it("honors segment boundaries within one display frame", () => {
    const renderer = new TimelineRenderer(el, null);
    const edges = playAndRecord(el, renderer, TEA);
    // expected edges: rises at segment starts of ON segments, falls at their ends
    const expected = [0, 600, 1200, 1400, 2000, 2200, 2400, 3000];
    expect(edges).toHaveLength(expected.length);
    edges.forEach((edge, i) => {
      expect(Math.abs(edge.t - expected[i])).toBeLessThanOrEqual(FRAME_MS);
    });
  });

  it("drives the vibration interface with the full pattern", () => {
    const vibrate = vi.fn().mockReturnValue(true);
    const renderer = new TimelineRenderer(el, vibrate);
    renderer.render(TEA);
    expect(vibrate).toHaveBeenCalledWith([600, 600, 200, 600, 200, 200, 600]);
    expect(renderer.hapticsAvailable).toBe(true);
  });

  it("falls back to visual-only when vibration is unsupported", () => {
    const renderer = new TimelineRenderer(el, null);
    expect(renderer.hapticsAvailable).toBe(false);
    const edges = playAndRecord(el, renderer, [{ on: true, ms: 1200 }]);
    expect(edges.filter((e) => e.on)).toHaveLength(1); // reset cue still visible
  });

  it("ignores empty timelines", () => {
    const renderer = new TimelineRenderer(el, null);
    const handle = renderer.render([]);
    expect(el.classList.contains("pulsing")).toBe(false);
    handle.cancel(); // no-op
  });

  it("cancel stops pulses and the motor", () => {
    const vibrate = vi.fn().mockReturnValue(true);
    const renderer = new TimelineRenderer(el, vibrate);
    const handle = renderer.render(TEA);
    vi.advanceTimersByTime(100);
    expect(el.classList.contains("pulsing")).toBe(true);
    handle.cancel();
    expect(el.classList.contains("pulsing")).toBe(false);
    expect(vibrate).toHaveBeenLastCalledWith(0);
    vi.advanceTimersByTime(5000);
    expect(el.classList.contains("pulsing")).toBe(false);
  });

  it("a new render supersedes the previous one", () => {
    const renderer = new TimelineRenderer(el, null);
    renderer.render(TEA);
    vi.advanceTimersByTime(50);
    const edges = playAndRecord(el, renderer, [{ on: true, ms: 200 }]);
    expect(edges.filter((e) => e.on)).toHaveLength(1);
  });

  it("resolves done after the final segment", async () => {
    const renderer = new TimelineRenderer(el, null);
    const handle = renderer.render([{ on: true, ms: 200 }]);
    let finished = false;
    void handle.done.then(() => (finished = true));
    vi.advanceTimersByTime(199);
    await Promise.resolve();
    expect(finished).toBe(false);
    vi.advanceTimersByTime(2);
    await vi.runAllTimersAsync();
    expect(finished).toBe(true);
  });
});
