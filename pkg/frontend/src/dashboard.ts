/**
 * Page composition: the all-cities overview and the per-series
 * drill-down, both as plain HTML strings over the pure renderers.
 */
import type { AlertsResponse, ApiMessage, CityAlerts, SeriesPoint } from "./api.js";
import { BAND_COLORS, BAND_LABELS, trendGlyph } from "./colors.js";
import { escapeHtml } from "./html.js";
import { renderMessageList } from "./messages.js";
import { renderCityRadial } from "./radial.js";

export function renderLegend(): string {
  const swatches = BAND_COLORS.map(
    (color, band) =>
      `<span class="legend-item"><span class="swatch" style="background:${color}"></span>` +
      `band ${band} (${BAND_LABELS[band]})</span>`,
  );
  return `<div class="legend">${swatches.join("")}</div>`;
}

function cityCard(entry: CityAlerts): string {
  const rows = entry.alerts.map(
    (a) =>
      `<tr data-syndrome="${escapeHtml(a.syndrome)}">` +
      `<td>${escapeHtml(a.syndrome)}</td>` +
      `<td class="num">${a.count}</td>` +
      `<td class="num">band ${a.band}</td>` +
      `<td class="trend">${trendGlyph(a.trend)}</td></tr>`,
  );
  return (
    `<section class="city-card" data-city="${escapeHtml(entry.city)}">` +
    `<h2>${escapeHtml(entry.city)}</h2>` +
    renderCityRadial(entry.city, entry.alerts) +
    `<table class="city-alerts"><tbody>${rows.join("")}</tbody></table>` +
    `</section>`
  );
}

export function renderOverview(alerts: AlertsResponse): string {
  const cards = alerts.cities.map(cityCard);
  return (
    `<header><h1>Syndromic surveillance</h1>` +
    `<p class="computed-at">last completed hour: ${escapeHtml(alerts.computed_at)}</p>` +
    renderLegend() +
    `</header>` +
    `<main class="overview">${cards.join("")}</main>`
  );
}

export function renderSeriesTable(points: SeriesPoint[], granularity: string): string {
  const rows = points.map(
    (p) =>
      `<tr><td class="bucket">${escapeHtml(p.bucket)}</td>` +
      `<td class="num">${p.count}</td></tr>`,
  );
  return (
    `<table class="series" data-granularity="${escapeHtml(granularity)}">` +
    `<thead><tr><th>bucket (${escapeHtml(granularity)})</th><th>count</th></tr></thead>` +
    `<tbody>${rows.join("")}</tbody></table>`
  );
}

export function renderDrilldown(
  city: string,
  syndrome: string,
  hour: string,
  points: SeriesPoint[],
  granularity: string,
  messages: ApiMessage[],
): string {
  return (
    `<section class="drilldown" data-city="${escapeHtml(city)}" ` +
    `data-syndrome="${escapeHtml(syndrome)}">` +
    `<h2>${escapeHtml(city)} / ${escapeHtml(syndrome)}</h2>` +
    renderSeriesTable(points, granularity) +
    `<h3>messages at ${escapeHtml(hour)}</h3>` +
    renderMessageList(messages) +
    `</section>`
  );
}
