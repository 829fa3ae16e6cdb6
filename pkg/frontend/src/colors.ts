/**
 * Alert band to color mapping.
 *
 * The server reports integer bands 0..4; every view colors them from
 * this one table so the overview, the legend and the drill-down can
 * never disagree.
 */

export const BAND_COLORS: readonly string[] = [
  "#4caf50", // 0: quiet
  "#fdd835", // 1: watch
  "#fb8c00", // 2: elevated
  "#e53935", // 3: high
  "#7b1fa2", // 4: severe
];

export const BAND_LABELS: readonly string[] = [
  "quiet",
  "watch",
  "elevated",
  "high",
  "severe",
];

export function bandColor(band: number): string {
  if (!Number.isInteger(band) || band < 0 || band >= BAND_COLORS.length) {
    throw new RangeError(`band out of range: ${band}`);
  }
  return BAND_COLORS[band];
}

export const TREND_GLYPHS: Record<string, string> = {
  up: "▲", // filled triangle up
  down: "▼", // filled triangle down
  sideways: "▬", // horizontal bar
};

export function trendGlyph(trend: string): string {
  return TREND_GLYPHS[trend] ?? "?";
}
