// Capture-loop integration: drive the real session service with held forward
// input and verify the persisted log on the server side.
//
// Spawns `python3 -m sitewalk.cli serve` (the backend package must be
// installed, e.g. `pip install -e ..`).

import { spawn, type ChildProcess } from "node:child_process";
import { cpSync, mkdirSync, mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { ServiceClient } from "../src/client.js";
import { DriveLoop, InputTracker } from "../src/drive.js";

const PORT = 8000 + Math.floor(Math.random() * 20000);
const BASE = `http://127.0.0.1:${PORT}`;
const TICK_DT = 0.05;
const HOLD_SECONDS = 5.0;

let server: ChildProcess | null = null;
let dataDir = "";

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

async function waitForServer(timeoutMs = 20000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/scenes`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await sleep(200);
  }
  throw new Error("session service did not come up");
}

beforeAll(async () => {
  dataDir = mkdtempSync(join(tmpdir(), "sitewalk-ui-"));
  mkdirSync(join(dataDir, "scenes"), { recursive: true });
  cpSync(
    fileURLToPath(new URL("./fixtures/demo_scene.json", import.meta.url)),
    join(dataDir, "scenes", "corridor-room.json"),
  );
  server = spawn(
    "python3",
    ["-m", "sitewalk.cli", "serve", "--port", String(PORT), "--data-dir", dataDir],
    { stdio: "ignore" },
  );
  await waitForServer();
}, 30000);

afterAll(() => {
  server?.kill();
  rmSync(dataDir, { recursive: true, force: true });
});

describe("drive mode against a live service", () => {
  it(
    "5 s of held forward input lands ~tick_rate*5 samples moving along the heading",
    async () => {
      const client = new ServiceClient(BASE);
      expect((await client.listScenes()).scenes).toContain("corridor-room");

      const start: [number, number, number] = [1.0, 3.0, 1.5];
      const { id } = await client.createSession({
        scene_name: "corridor-room",
        tick_dt: TICK_DT,
        start_pose: { position: start, yaw: 0.0, pitch: 0.0 },
      });

      const input = new InputTracker();
      input.keyDown("KeyW"); // hold forward for the whole window
      const loop = new DriveLoop(client, id, input, TICK_DT);
      loop.start();
      await sleep(HOLD_SECONDS * 1000);
      loop.stop();
      const summary = await client.endSession(id);

      // the server ticked on its own clock the whole time we held the key
      const target = HOLD_SECONDS / TICK_DT; // 100 at 20 Hz
      expect(summary.samples).toBeGreaterThanOrEqual(target * 0.9);
      expect(summary.samples).toBeLessThanOrEqual(target * 1.1);

      // persisted log agrees with the summary, final pose moved along +x
      const log = readFileSync(join(dataDir, "sessions", `${id}.jsonl`), "utf-8")
        .trim()
        .split("\n");
      expect(log.length - 1).toBe(summary.samples); // header + samples
      const final = JSON.parse(log[log.length - 1]);
      expect(final.position[0]).toBeGreaterThan(start[0] + 4.0);
      expect(Math.abs(final.position[1] - start[1])).toBeLessThan(1e-9);
      expect(Math.abs(final.position[2] - start[2])).toBeLessThan(1e-9);

      // the client only ever sent intent; poses all came from the server
      expect(loop.latestSample).toBeNull();
    },
    30000,
  );

  it("state endpoint reflects server-authoritative motion", async () => {
    const client = new ServiceClient(BASE);
    const { id } = await client.createSession({
      scene_name: "corridor-room",
      tick_dt: TICK_DT,
      start_pose: { position: [1.0, 3.0, 1.5], yaw: 0.0, pitch: 0.0 },
    });
    await client.submitControl(id, { v_forward: 1.0 });
    await sleep(500);
    const { sample } = await client.getState(id);
    expect(sample).not.toBeNull();
    expect(sample!.position[0]).toBeGreaterThan(1.0);
    await client.endSession(id);
  }, 15000);
});
