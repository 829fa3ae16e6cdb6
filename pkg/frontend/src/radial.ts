/**
 * Radial city chart: one 60-degree wedge per syndrome, colored by the
 * alert band the API reported, radius scaled by the current count.
 *
 * Pure string rendering; the overview page drops the SVG into the DOM
 * and tests assert on the markup directly.
 */
import type { AlertEntry } from "./api.js";
import { bandColor, trendGlyph } from "./colors.js";
import { escapeHtml } from "./html.js";

const SEGMENTS = 6;

function polar(cx: number, cy: number, r: number, deg: number): [number, number] {
  const rad = (deg * Math.PI) / 180;
  return [cx + r * Math.cos(rad), cy + r * Math.sin(rad)];
}

function fmt(n: number): string {
  return n.toFixed(2).replace(/\.?0+$/, "");
}

/**
 * Render one city's six-syndrome radial as an SVG string.
 *
 * Alerts must arrive in the server's fixed syndrome order and are drawn
 * clockwise from twelve o'clock. Wedge radius grows with the hour's
 * count relative to the city's busiest syndrome; a count of zero still
 * shows a thin wedge so the band color stays visible.
 */
export function renderCityRadial(city: string, alerts: AlertEntry[], size = 220): string {
  if (alerts.length !== SEGMENTS) {
    throw new Error(`expected ${SEGMENTS} alerts for ${city}, got ${alerts.length}`);
  }
  const cx = size / 2;
  const cy = size / 2;
  const rMax = size * 0.42;
  const rMin = size * 0.14;
  const maxCount = Math.max(...alerts.map((a) => a.count));

  const parts: string[] = [];
  parts.push(
    `<svg class="radial" viewBox="0 0 ${size} ${size}" width="${size}" height="${size}" role="img">`,
  );
  alerts.forEach((a, i) => {
    const a0 = -90 + i * (360 / SEGMENTS);
    const a1 = a0 + 360 / SEGMENTS;
    const scale = maxCount > 0 ? a.count / maxCount : 0;
    const r = rMin + (rMax - rMin) * scale;
    const [x0, y0] = polar(cx, cy, r, a0);
    const [x1, y1] = polar(cx, cy, r, a1);
    const d =
      `M ${fmt(cx)} ${fmt(cy)} L ${fmt(x0)} ${fmt(y0)} ` +
      `A ${fmt(r)} ${fmt(r)} 0 0 1 ${fmt(x1)} ${fmt(y1)} Z`;
    const title =
      `${a.syndrome}: ${a.count} this hour, band ${a.band} ${trendGlyph(a.trend)}`;
    parts.push(
      `<path class="segment" d="${d}" fill="${bandColor(a.band)}" ` +
        `data-syndrome="${escapeHtml(a.syndrome)}" data-band="${a.band}" ` +
        `data-count="${a.count}" stroke="#ffffff" stroke-width="1.5">` +
        `<title>${escapeHtml(title)}</title></path>`,
    );
    // Syndrome initial just outside the widest possible wedge.
    const [lx, ly] = polar(cx, cy, rMax + size * 0.05, (a0 + a1) / 2);
    parts.push(
      `<text class="segment-label" x="${fmt(lx)}" y="${fmt(ly)}" ` +
        `text-anchor="middle" dominant-baseline="middle" font-size="${size * 0.05}">` +
        `${escapeHtml(a.syndrome.slice(0, 4))}</text>`,
    );
  });
  parts.push(
    `<circle cx="${cx}" cy="${cy}" r="${size * 0.1}" fill="#ffffff" stroke="#cccccc"/>`,
  );
  parts.push(
    `<text class="city-label" x="${cx}" y="${cy}" text-anchor="middle" ` +
      `dominant-baseline="middle" font-size="${size * 0.045}">` +
      `${escapeHtml(city.slice(0, 10))}</text>`,
  );
  parts.push("</svg>");
  return parts.join("");
}

/** Extract the fill of every segment, in drawing order (test helper). */
export function segmentFills(svg: string): string[] {
  const fills: string[] = [];
  const re = /<path class="segment"[^>]*fill="([^"]+)"/g;
  let m: RegExpExecArray | null;
  while ((m = re.exec(svg)) !== null) {
    fills.push(m[1]);
  }
  return fills;
}
