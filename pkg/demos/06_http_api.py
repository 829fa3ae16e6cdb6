"""
The read-only HTTP API
======================

A dashboard (or curl) reads everything through four JSON endpoints:

    GET /cities
    GET /alerts?city=
    GET /series?city=&syndrome=&granularity=&days=
    GET /messages?city=&syndrome=&hour=&limit=

This script assembles a runtime against a temporary store, ingests a
few synthetic hours, serves the app on an ephemeral port, and walks
each endpoint with plain urllib. In production `syndromic serve -c
config.ini` does the same wiring and adds the hourly scheduler.
"""
import json
import tempfile
import threading
import time
import urllib.request
from datetime import datetime, timedelta, timezone
from pathlib import Path
from urllib.parse import quote

import uvicorn

from syndromic.config import ServiceConfig
from syndromic.service import build_runtime, create_app

tmp = tempfile.TemporaryDirectory()
config = ServiceConfig(
    data_dir=Path(tmp.name) / "data",
    model_dir=Path(tmp.name) / "models",  # empty -> demo models get trained
    source_seed=5,
    source_rate=8.0,
)
runtime = build_runtime(config)

# Ingest three synthetic hours so the endpoints have data to show.
start = datetime(2026, 2, 1, tzinfo=timezone.utc)
for h in range(3):
    report = runtime.tick(start + timedelta(hours=h + 1))
    print(f"tick {report.hour.isoformat()}: {report.processed} messages, "
          f"{report.accepted} accepted")

# Run uvicorn on port 0 in a thread; the OS picks a free port.
server = uvicorn.Server(
    uvicorn.Config(create_app(runtime), host="127.0.0.1", port=0, log_level="warning")
)
thread = threading.Thread(target=server.run, daemon=True)
thread.start()
while not server.started:
    time.sleep(0.02)
port = server.servers[0].sockets[0].getsockname()[1]
base = f"http://127.0.0.1:{port}"
print(f"\nserving on {base}")

def get(path):
    with urllib.request.urlopen(base + path) as resp:
        return json.load(resp)

cities = get("/cities")["cities"]
print(f"\nGET /cities -> {len(cities)} cities: "
      f"{', '.join(c['name'] for c in cities[:5])}, ...")

city = cities[0]["name"]
q = quote(city)  # city names can contain spaces
alerts = get(f"/alerts?city={q}")
print(f"\nGET /alerts?city={city}")
for a in alerts["cities"][0]["alerts"]:
    print(f"  {a['syndrome']:<18} band {a['band']}  score {a['score']:.2f}  "
          f"count {a['count']:.0f}  trend {a['trend']}")
print("  (three hours into a cold store every baseline is empty, so any")
print("  nonzero count scores as a spike; demo 05 warms up a two-week")
print("  baseline first and shows the bands behaving.)")

series = get(f"/series?city={q}&syndrome=respiratory&granularity=hourly&days=1")
tail = series["points"][-4:]
print(f"\nGET /series?city={city}&syndrome=respiratory (last 4 of "
      f"{len(series['points'])} hourly points)")
for p in tail:
    print(f"  {p['bucket']}  {p['count']}")

msgs = get(f"/messages?city={q}&syndrome=respiratory&limit=3")
print(f"\nGET /messages?city={city}&syndrome=respiratory (hour {msgs['hour']})")
for m in msgs["messages"]:
    print(f"  [{m['timestamp']}] {m['text']}")

server.should_exit = True
thread.join(timeout=5)
runtime.store.close()
tmp.cleanup()
print("\nserver stopped.")
