/**
 * Deterministic seed data shared by the server bootstrap and the tests.
 *
 * The message texts reuse phrasings the service's demo classifiers
 * accept, so every emitted message lands in the count store. Counts per
 * (city, syndrome, hour) are chosen irregular on purpose: re-bucketing
 * bugs hide in flat data.
 */

export const SYNDROMES = [
  "constitutional",
  "respiratory",
  "gastrointestinal",
  "hemorrhagic",
  "rash",
  "neurological",
] as const;

export const CITIES_TSV =
  "# name\tlat\tlon\tradius_km\n" +
  "paris\t48.8566\t2.3522\t30\n" +
  "london\t51.5074\t-0.1278\t30\n";

export const CITY_COORDS: Record<string, [number, number]> = {
  paris: [48.8566, 2.3522],
  london: [51.5074, -0.1278],
};

export const TEXTS: Record<string, string> = {
  rash: "itchy rash spreading up my arm",
  respiratory: "awful cough and a sore throat since monday",
  gastrointestinal: "stomach cramps and vomiting since breakfast",
};

export interface Emission {
  hour: string; // ISO hour, minutes given per message
  city: keyof typeof CITY_COORDS;
  syndrome: keyof typeof TEXTS;
  count: number;
}

export const EMISSIONS: Emission[] = [
  { hour: "2026-03-01T00:00:00Z", city: "paris", syndrome: "rash", count: 2 },
  { hour: "2026-03-01T03:00:00Z", city: "paris", syndrome: "rash", count: 1 },
  { hour: "2026-03-01T07:00:00Z", city: "paris", syndrome: "rash", count: 4 },
  { hour: "2026-03-01T12:00:00Z", city: "paris", syndrome: "rash", count: 1 },
  { hour: "2026-03-01T18:00:00Z", city: "paris", syndrome: "rash", count: 2 },
  { hour: "2026-03-01T01:00:00Z", city: "london", syndrome: "respiratory", count: 3 },
  { hour: "2026-03-01T09:00:00Z", city: "london", syndrome: "respiratory", count: 1 },
  { hour: "2026-03-01T15:00:00Z", city: "london", syndrome: "respiratory", count: 2 },
  { hour: "2026-03-01T05:00:00Z", city: "paris", syndrome: "gastrointestinal", count: 1 },
  { hour: "2026-03-01T20:00:00Z", city: "paris", syndrome: "gastrointestinal", count: 2 },
  { hour: "2026-03-02T02:00:00Z", city: "paris", syndrome: "rash", count: 3 },
  { hour: "2026-03-02T08:00:00Z", city: "paris", syndrome: "rash", count: 1 },
  { hour: "2026-03-02T14:00:00Z", city: "paris", syndrome: "rash", count: 2 },
  { hour: "2026-03-02T22:00:00Z", city: "paris", syndrome: "rash", count: 1 },
  { hour: "2026-03-02T04:00:00Z", city: "london", syndrome: "respiratory", count: 2 },
  { hour: "2026-03-02T10:00:00Z", city: "london", syndrome: "respiratory", count: 1 },
  { hour: "2026-03-02T19:00:00Z", city: "london", syndrome: "respiratory", count: 3 },
  { hour: "2026-03-02T06:00:00Z", city: "london", syndrome: "rash", count: 1 },
  { hour: "2026-03-02T11:00:00Z", city: "paris", syndrome: "gastrointestinal", count: 2 },
  { hour: "2026-03-03T00:00:00Z", city: "paris", syndrome: "rash", count: 1 },
  { hour: "2026-03-03T04:00:00Z", city: "paris", syndrome: "rash", count: 3 },
  { hour: "2026-03-03T05:00:00Z", city: "london", syndrome: "respiratory", count: 1 },
];

/** The drill-down hour the e2e test inspects. */
export const DRILL = {
  city: "paris",
  syndrome: "rash",
  hour: "2026-03-03T04:00:00Z",
  count: 3,
};

/** Last hour with data; the server's latest tick after replay. */
export const LATEST_HOUR = "2026-03-03T05:00:00Z";

/** One JSONL line per message, unique user per message. */
export function messagesJsonl(): string {
  const lines: string[] = [];
  for (const e of EMISSIONS) {
    const [lat, lon] = CITY_COORDS[e.city];
    for (let j = 0; j < e.count; j++) {
      const minute = String(7 + 13 * j).padStart(2, "0");
      const ts = `${e.hour.slice(0, 14)}${minute}:00Z`;
      const id = `fx-${e.city}-${e.syndrome}-${e.hour.slice(5, 13)}-${j}`;
      lines.push(
        JSON.stringify({
          id,
          user_id: `user-${id}`,
          timestamp: ts,
          text: TEXTS[e.syndrome],
          location: [lat, lon],
        }),
      );
    }
  }
  return lines.join("\n") + "\n";
}

export interface ServerInfo {
  baseUrl: string;
}

export const SERVER_INFO_PATH = new URL("./.server-info.json", import.meta.url).pathname;
