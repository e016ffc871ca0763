/** Spawns the real evaluation service for end-to-end console tests. */

import { type ChildProcess, spawn } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import WebSocket from "ws";

import type { SocketLike } from "../../src/feed.js";

// vitest runs from frontend/; the Python package sits one level up.
export const E2E_DIR = join(process.cwd(), "tests", "e2e");
const REPO_ROOT = join(process.cwd(), "..");

export interface TestServer {
  base: string;
  feedUrl: string;
  stop: () => void;
}

let nextPort = 8600 + (process.pid % 200);

export async function startServer(
  scenarioPath: string,
  extraArgs: string[] = [],
): Promise<TestServer> {
  const port = nextPort++;
  const store = mkdtempSync(join(tmpdir(), "htrack-e2e-"));
  const child: ChildProcess = spawn(
    "python3",
    [
      "-m",
      "htrack",
      "serve",
      "--port",
      String(port),
      "--scenario",
      scenarioPath,
      "--store",
      store,
      "--pace",
      "0.01",
      ...extraArgs,
    ],
    { cwd: REPO_ROOT, stdio: ["ignore", "pipe", "pipe"] },
  );
  let stderr = "";
  child.stderr?.on("data", (chunk) => {
    stderr += String(chunk);
  });

  const base = `http://127.0.0.1:${port}`;
  const deadline = Date.now() + 20000;
  for (;;) {
    if (child.exitCode !== null) {
      throw new Error(`service exited early: ${stderr}`);
    }
    try {
      const resp = await fetch(`${base}/status`);
      if (resp.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) {
      child.kill();
      throw new Error(`service did not come up: ${stderr}`);
    }
    await sleep(100);
  }
  return {
    base,
    feedUrl: `ws://127.0.0.1:${port}/feed`,
    stop: () => child.kill("SIGTERM"),
  };
}

/** Node 'ws' socket adapted to the browser-style surface the feed uses. */
export function nodeSocketFactory(url: string): SocketLike {
  return new WebSocket(url) as unknown as SocketLike;
}

export function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

export async function until(
  check: () => boolean | Promise<boolean>,
  what: string,
  timeoutMs = 15000,
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (await check()) return;
    await sleep(25);
  }
  throw new Error(`timed out waiting for ${what}`);
}
