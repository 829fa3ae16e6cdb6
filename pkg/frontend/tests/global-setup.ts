/**
 * Spawns one seeded surveillance server for the whole test run.
 *
 * Everything goes through the backend's public command line: `replay`
 * populates a count store from a deterministic message file, `serve`
 * exposes it over HTTP. The dashboard code under test only ever sees
 * the HTTP API.
 */
import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { CITIES_TSV, messagesJsonl, SERVER_INFO_PATH } from "./fixtures.js";

const PYTHON = process.env.SYNDROMIC_PYTHON ?? "python3";

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const srv = createServer();
    srv.once("error", reject);
    srv.listen(0, "127.0.0.1", () => {
      const addr = srv.address();
      if (addr === null || typeof addr === "string") {
        reject(new Error("no port assigned"));
        return;
      }
      srv.close(() => resolve(addr.port));
    });
  });
}

function cli(args: string[], cwd: string): void {
  const res = spawnSync(PYTHON, ["-m", "syndromic.cli", ...args], {
    cwd,
    encoding: "utf-8",
  });
  if (res.status !== 0) {
    throw new Error(
      `syndromic ${args[0]} failed (${res.status}):\n${res.stdout}\n${res.stderr}`,
    );
  }
}

async function waitForServer(baseUrl: string, timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastErr: unknown = null;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(new URL("/cities", baseUrl));
      if (resp.ok) return;
      lastErr = new Error(`status ${resp.status}`);
    } catch (err) {
      lastErr = err;
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error(`server did not come up at ${baseUrl}: ${String(lastErr)}`);
}

let child: ChildProcess | null = null;
let workDir: string | null = null;

export async function setup(): Promise<void> {
  workDir = mkdtempSync(join(tmpdir(), "syndromic-dash-"));
  writeFileSync(join(workDir, "cities.tsv"), CITIES_TSV);
  writeFileSync(join(workDir, "messages.jsonl"), messagesJsonl());
  const port = await freePort();
  // tick_hours=24 keeps the background scheduler quiet during the run;
  // all data comes from the replay below.
  writeFileSync(
    join(workDir, "config.ini"),
    [
      "[paths]",
      `data_dir = ${join(workDir, "data")}`,
      `model_dir = ${join(workDir, "models")}`,
      `cities = ${join(workDir, "cities.tsv")}`,
      "[server]",
      `port = ${port}`,
      "tick_hours = 24",
      "[source]",
      "kind = replay",
      `path = ${join(workDir, "messages.jsonl")}`,
      "",
    ].join("\n"),
  );

  cli(["replay", "--messages", join(workDir, "messages.jsonl"), "--config", "config.ini"], workDir);

  child = spawn(PYTHON, ["-m", "syndromic.cli", "serve", "--config", "config.ini"], {
    cwd: workDir,
    stdio: ["ignore", "pipe", "pipe"],
  });
  const baseUrl = `http://127.0.0.1:${port}`;
  await waitForServer(baseUrl, 30_000);
  writeFileSync(SERVER_INFO_PATH, JSON.stringify({ baseUrl }));
}

export async function teardown(): Promise<void> {
  if (child !== null) {
    child.kill("SIGTERM");
    await new Promise<void>((resolve) => {
      const timer = setTimeout(() => {
        child?.kill("SIGKILL");
        resolve();
      }, 5000);
      child?.once("exit", () => {
        clearTimeout(timer);
        resolve();
      });
    });
    child = null;
  }
  if (workDir !== null) {
    rmSync(workDir, { recursive: true, force: true });
    workDir = null;
  }
  rmSync(SERVER_INFO_PATH, { force: true });
}
