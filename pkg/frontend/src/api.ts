/**
 * Typed client for the surveillance service's read-only JSON API.
 *
 * Endpoint shapes mirror the server exactly; nothing here reinterprets
 * the data, so a response can be compared field for field with what a
 * raw fetch of the same URL returns.
 */

export interface City {
  name: string;
  lat: number;
  lon: number;
  radius_km: number;
}

export interface AlertEntry {
  syndrome: string;
  score: number;
  band: number;
  trend: "up" | "down" | "sideways";
  count: number;
}

export interface CityAlerts {
  city: string;
  alerts: AlertEntry[];
}

export interface AlertsResponse {
  computed_at: string;
  cities: CityAlerts[];
}

export interface SeriesPoint {
  bucket: string;
  count: number;
}

export interface SeriesResponse {
  city: string;
  syndrome: string;
  granularity: string;
  points: SeriesPoint[];
}

export interface ApiMessage {
  id: string;
  user_id: string;
  timestamp: string;
  text: string;
  location: [number, number] | null;
  is_retweet: boolean;
  has_external_link: boolean;
}

export interface MessagesResponse {
  city: string;
  syndrome: string;
  hour: string;
  messages: ApiMessage[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export type Granularity = "hourly" | "daily" | "weekly" | "monthly";

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private async get<T>(path: string, params?: Record<string, string>): Promise<T> {
    const url = new URL(path, this.baseUrl);
    for (const [k, v] of Object.entries(params ?? {})) {
      url.searchParams.set(k, v);
    }
    const resp = await fetch(url);
    if (!resp.ok) {
      let detail = resp.statusText;
      try {
        const body = (await resp.json()) as { detail?: unknown };
        if (body.detail !== undefined) detail = JSON.stringify(body.detail);
      } catch {
        // non-JSON error body; statusText already set
      }
      throw new ApiError(resp.status, detail);
    }
    return (await resp.json()) as T;
  }

  cities(): Promise<{ cities: City[] }> {
    return this.get("/cities");
  }

  alerts(city?: string): Promise<AlertsResponse> {
    return this.get("/alerts", city === undefined ? {} : { city });
  }

  series(
    city: string,
    syndrome: string,
    granularity: Granularity = "hourly",
    days = 1,
  ): Promise<SeriesResponse> {
    return this.get("/series", {
      city,
      syndrome,
      granularity,
      days: String(days),
    });
  }

  messages(
    city: string,
    syndrome: string,
    hour?: string,
    limit = 50,
  ): Promise<MessagesResponse> {
    const params: Record<string, string> = { city, syndrome, limit: String(limit) };
    if (hour !== undefined) params.hour = hour;
    return this.get("/messages", params);
  }
}
