/**
 * Client-side period re-bucketing.
 *
 * The server serves hourly points (and coarser granularities) as
 * fixed-width windows anchored at the range start. Re-bucketing the
 * hourly series locally uses the same rule, so switching the period
 * selector never needs another request and must agree with the server
 * sum for sum.
 */
import type { SeriesPoint } from "./api.js";

export const GRANULARITY_HOURS = {
  hourly: 1,
  daily: 24,
  weekly: 168,
  monthly: 720,
} as const;

export type Granularity = keyof typeof GRANULARITY_HOURS;

const HOUR_MS = 3_600_000;

function isoHour(ms: number): string {
  return new Date(ms).toISOString().replace(".000Z", "Z");
}

/**
 * Sum consecutive points into fixed windows of `hoursPerBucket` hours,
 * anchored at the first point. A partial trailing window is kept.
 * Points must be consecutive hours, the shape /series returns.
 */
export function rebucket(points: SeriesPoint[], hoursPerBucket: number): SeriesPoint[] {
  if (!Number.isInteger(hoursPerBucket) || hoursPerBucket < 1) {
    throw new RangeError(`bad bucket width: ${hoursPerBucket}`);
  }
  if (points.length === 0) return [];
  const startMs = Date.parse(points[0].bucket);
  const out: SeriesPoint[] = [];
  points.forEach((p, i) => {
    const expected = startMs + i * HOUR_MS;
    if (Date.parse(p.bucket) !== expected) {
      throw new Error(`points are not consecutive hours at index ${i}: ${p.bucket}`);
    }
    const slot = Math.floor(i / hoursPerBucket);
    if (slot === out.length) {
      out.push({ bucket: isoHour(startMs + slot * hoursPerBucket * HOUR_MS), count: 0 });
    }
    out[slot].count += p.count;
  });
  return out;
}

export function toGranularity(points: SeriesPoint[], granularity: Granularity): SeriesPoint[] {
  return rebucket(points, GRANULARITY_HOURS[granularity]);
}

export function seriesTotal(points: SeriesPoint[]): number {
  return points.reduce((acc, p) => acc + p.count, 0);
}
