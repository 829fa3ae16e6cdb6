/**
 * Browser entry point. Fetches the overview, wires city-card clicks to
 * the drill-down and the period selector to client-side re-bucketing.
 * All rendering goes through the pure string functions, so everything
 * on screen is also what the tests assert on.
 */
import { ApiClient } from "./api.js";
import { renderDrilldown, renderOverview } from "./dashboard.js";
import type { Granularity } from "./rebucket.js";
import { toGranularity } from "./rebucket.js";

const PERIODS: Granularity[] = ["hourly", "daily", "weekly", "monthly"];

async function showDrilldown(
  api: ApiClient,
  root: HTMLElement,
  city: string,
  syndrome: string,
  granularity: Granularity,
): Promise<void> {
  // One hourly fetch covers every period: coarser views re-bucket
  // locally with the same anchored-window rule the server uses.
  const series = await api.series(city, syndrome, "hourly", 30);
  const msgs = await api.messages(city, syndrome);
  const points = toGranularity(series.points, granularity);
  const selector =
    `<label>period <select id="period">` +
    PERIODS.map(
      (p) => `<option value="${p}"${p === granularity ? " selected" : ""}>${p}</option>`,
    ).join("") +
    `</select></label> <button id="back">back to overview</button>`;
  root.innerHTML =
    selector + renderDrilldown(city, syndrome, msgs.hour, points, granularity, msgs.messages);
  root.querySelector("#period")?.addEventListener("change", (ev) => {
    const value = (ev.target as HTMLSelectElement).value as Granularity;
    void showDrilldown(api, root, city, syndrome, value);
  });
  root.querySelector("#back")?.addEventListener("click", () => void showOverview(api, root));
}

async function showOverview(api: ApiClient, root: HTMLElement): Promise<void> {
  const alerts = await api.alerts();
  root.innerHTML = renderOverview(alerts);
  for (const card of root.querySelectorAll<HTMLElement>(".city-card")) {
    card.addEventListener("click", (ev) => {
      const city = card.dataset.city;
      if (!city) return;
      const row = (ev.target as HTMLElement).closest<HTMLElement>("tr[data-syndrome]");
      const syndrome = row?.dataset.syndrome ?? "respiratory";
      void showDrilldown(api, root, city, syndrome, "hourly");
    });
  }
}

if (typeof document !== "undefined") {
  const root = document.getElementById("app");
  if (root) {
    const api = new ApiClient(window.location.origin);
    void showOverview(api, root).catch((err) => {
      root.innerHTML = `<p class="error">failed to load: ${String(err)}</p>`;
    });
  }
}
