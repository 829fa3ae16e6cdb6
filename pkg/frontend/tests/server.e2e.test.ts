/**
 * End-to-end checks against a live seeded server.
 *
 * The global setup script replays a fixed message corpus through the public
 * CLI and starts the HTTP service; its base URL is handed over through a
 * small JSON file. Everything here exercises the real wire format.
 */
import { readFileSync } from "node:fs";
import { beforeAll, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import type { SeriesPoint } from "../src/api.js";
import { bandColor } from "../src/colors.js";
import { renderMessageList, renderedIds } from "../src/messages.js";
import { renderCityRadial, segmentFills } from "../src/radial.js";
import { rebucket, seriesTotal, toGranularity } from "../src/rebucket.js";
import { DRILL, LATEST_HOUR, SERVER_INFO_PATH, SYNDROMES } from "./fixtures.js";

let baseUrl = "";
let api: ApiClient;

beforeAll(() => {
  baseUrl = JSON.parse(readFileSync(SERVER_INFO_PATH, "utf8")).baseUrl;
  api = new ApiClient(baseUrl);
});

describe("overview against the live API", () => {
  it("renders six segments per city with colors matching the band values", async () => {
    const alerts = await api.alerts();
    expect(alerts.cities.length).toBe(2);
    for (const cityBlock of alerts.cities) {
      const svg = renderCityRadial(cityBlock.city, cityBlock.alerts);
      const fills = segmentFills(svg);
      expect(fills.length).toBe(6);
      expect(fills).toEqual(cityBlock.alerts.map((a) => bandColor(a.band)));
      expect(cityBlock.alerts.map((a) => a.syndrome).sort()).toEqual(
        [...SYNDROMES].sort(),
      );
    }
  });

  it("observes the hour after the last replayed message", async () => {
    const alerts = await api.alerts();
    const london = alerts.cities.find((c) => c.city === "london");
    const paris = alerts.cities.find((c) => c.city === "paris");
    expect(london).toBeDefined();
    expect(paris).toBeDefined();
    const resp = london!.alerts.find((a) => a.syndrome === "respiratory");
    expect(resp!.count).toBe(1);
    expect(resp!.band).toBeGreaterThanOrEqual(1);
    for (const a of paris!.alerts) {
      expect(a.count).toBe(0);
      expect(a.band).toBe(0);
    }
  });
});

describe("drill-down against the live API", () => {
  it("message list equals the raw /messages response, in order", async () => {
    const viaClient = await api.messages(DRILL.city, DRILL.syndrome, DRILL.hour);
    const url = new URL("/messages", baseUrl);
    url.searchParams.set("city", DRILL.city);
    url.searchParams.set("syndrome", DRILL.syndrome);
    url.searchParams.set("hour", DRILL.hour);
    const raw = await (await fetch(url)).json();
    expect(viaClient).toEqual(raw);

    expect(viaClient.messages.length).toBe(DRILL.count);
    const html = renderMessageList(viaClient.messages);
    expect(renderedIds(html)).toEqual(viaClient.messages.map((m) => m.id));
    for (const m of viaClient.messages) {
      expect(m.timestamp.slice(0, 13)).toBe(DRILL.hour.slice(0, 13));
      expect(html).toContain(`data-id="${m.id}"`);
    }
  });

  it("the drill-down hour count matches the hourly series", async () => {
    const series = await api.series(DRILL.city, DRILL.syndrome, "hourly", 2);
    const point = series.points.find((p) => p.bucket === DRILL.hour);
    expect(point).toBeDefined();
    expect(point!.count).toBe(DRILL.count);
    const messages = await api.messages(DRILL.city, DRILL.syndrome, DRILL.hour);
    expect(messages.messages.length).toBe(point!.count);
  });
});

describe("period re-bucketing against the live API", () => {
  it("client daily re-bucketing reproduces the server's daily series exactly", async () => {
    const hourlyRes = await api.series(DRILL.city, DRILL.syndrome, "hourly", 2);
    const dailyRes = await api.series(DRILL.city, DRILL.syndrome, "daily", 2);
    expect(hourlyRes.points.length).toBe(48);
    const rebucketed = rebucket(hourlyRes.points, 24);
    expect(rebucketed).toEqual(dailyRes.points);
  });

  it("totals agree across every granularity for every city and syndrome", async () => {
    const cities = await api.cities();
    for (const city of cities.cities) {
      for (const syndrome of SYNDROMES) {
        const hourlyRes = await api.series(city.name, syndrome, "hourly", 3);
        const total = seriesTotal(hourlyRes.points);
        for (const g of ["daily", "weekly", "monthly"] as const) {
          const serverRes = await api.series(city.name, syndrome, g, 3);
          expect(seriesTotal(serverRes.points)).toBe(total);
          expect(seriesTotal(toGranularity(hourlyRes.points, g))).toBe(total);
        }
      }
    }
  });

  it("the series window ends one hour past the last observation", async () => {
    const series = await api.series("london", "respiratory", "hourly", 1);
    const last: SeriesPoint = series.points[series.points.length - 1];
    expect(last.bucket).toBe(LATEST_HOUR);
    expect(last.count).toBe(1);
  });
});

describe("error handling against the live API", () => {
  it("surfaces a 404 for an unknown city", async () => {
    await expect(api.alerts("atlantis")).rejects.toMatchObject({ status: 404 });
    await expect(api.series("atlantis", "rash")).rejects.toBeInstanceOf(ApiError);
  });
});
