/** Vibration timelines as served by the engine: alternating ON/OFF segments. */

export interface Segment {
  on: boolean;
  ms: number;
}

/** Validate the wire shape: alternating states, ON at both ends, positive durations. */
export function parseTimeline(data: unknown): Segment[] {
  if (!Array.isArray(data)) {
    throw new Error("timeline must be an array of segments");
  }
  const segments: Segment[] = data.map((raw, i) => {
    if (typeof raw !== "object" || raw === null) {
      throw new Error(`segment ${i} is not an object`);
    }
    const { on, ms } = raw as { on?: unknown; ms?: unknown };
    if (typeof on !== "boolean" || typeof ms !== "number" || !Number.isFinite(ms) || ms <= 0) {
      throw new Error(`segment ${i} must be {on: boolean, ms: positive number}`);
    }
    return { on, ms: Math.round(ms) };
  });
  segments.forEach((seg, i) => {
    if (i > 0 && seg.on === segments[i - 1].on) {
      throw new Error(`segments ${i - 1} and ${i} do not alternate`);
    }
  });
  if (segments.length > 0 && (!segments[0].on || !segments[segments.length - 1].on)) {
    throw new Error("timeline must start and end with an ON segment");
  }
  return segments;
}

export function totalMs(timeline: Segment[]): number {
  return timeline.reduce((sum, seg) => sum + seg.ms, 0);
}

export function onCount(timeline: Segment[]): number {
  return timeline.filter((seg) => seg.on).length;
}

/**
 * The navigator.vibrate pattern: [buzz, pause, buzz, ...]. A timeline's
 * ON-first alternation maps directly onto the API's expectations.
 */
export function vibratePattern(timeline: Segment[]): number[] {
  return timeline.map((seg) => seg.ms);
}

/** Cumulative start offsets of every segment, for scheduling visual pulses. */
export function segmentOffsets(timeline: Segment[]): number[] {
  const offsets: number[] = [];
  let t = 0;
  for (const seg of timeline) {
    offsets.push(t);
    t += seg.ms;
  }
  return offsets;
}
