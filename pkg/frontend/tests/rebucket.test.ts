/** Unit tests for client-side period re-bucketing; no server involved. */
import { describe, expect, it } from "vitest";

import type { SeriesPoint } from "../src/api.js";
import { GRANULARITY_HOURS, rebucket, seriesTotal, toGranularity } from "../src/rebucket.js";

function hourly(startIso: string, counts: number[]): SeriesPoint[] {
  const start = Date.parse(startIso);
  return counts.map((count, i) => ({
    bucket: new Date(start + i * 3_600_000).toISOString().replace(".000Z", "Z"),
    count,
  }));
}

describe("rebucket", () => {
  it("sums fixed windows anchored at the first point", () => {
    const points = hourly("2026-03-01T00:00:00Z", [1, 2, 3, 4, 5, 6]);
    const out = rebucket(points, 2);
    expect(out).toEqual([
      { bucket: "2026-03-01T00:00:00Z", count: 3 },
      { bucket: "2026-03-01T02:00:00Z", count: 7 },
      { bucket: "2026-03-01T04:00:00Z", count: 11 },
    ]);
  });

  it("keeps a partial trailing window", () => {
    const points = hourly("2026-03-01T00:00:00Z", [1, 1, 1, 1, 1]);
    const out = rebucket(points, 3);
    expect(out.map((p) => p.count)).toEqual([3, 2]);
  });

  it("preserves the total for every granularity", () => {
    const counts = Array.from({ length: 48 }, (_, i) => (i * 7) % 5);
    const points = hourly("2026-03-01T05:00:00Z", counts);
    for (const g of Object.keys(GRANULARITY_HOURS) as (keyof typeof GRANULARITY_HOURS)[]) {
      expect(seriesTotal(toGranularity(points, g))).toBe(seriesTotal(points));
    }
  });

  it("is the identity at width 1", () => {
    const points = hourly("2026-03-02T10:00:00Z", [4, 0, 2]);
    expect(rebucket(points, 1)).toEqual(points);
  });

  it("handles empty input and rejects bad widths and gaps", () => {
    expect(rebucket([], 24)).toEqual([]);
    expect(() => rebucket(hourly("2026-03-01T00:00:00Z", [1]), 0)).toThrow(RangeError);
    const gap = [
      { bucket: "2026-03-01T00:00:00Z", count: 1 },
      { bucket: "2026-03-01T02:00:00Z", count: 1 },
    ];
    expect(() => rebucket(gap, 24)).toThrow(/consecutive/);
  });
});
