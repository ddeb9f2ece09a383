// Replay fidelity: rendering is a pure function of the guidance file, and the
// sphere clusters in the scene graph match the file's sphere_count exactly.

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";
import {
  INSTRUCTION_RADIUS,
  ReplayCursor,
  activeWaypoint,
  buildReplayGroup,
  clusterOffsets,
  sphereCountsByWaypoint,
} from "../src/replay.js";
import type { PlanDoc } from "../src/types.js";

const demoPlan: PlanDoc = JSON.parse(
  readFileSync(new URL("./fixtures/demo_plan.json", import.meta.url), "utf-8"),
);

describe("replay scene graph", () => {
  it("renders exactly sphere_count spheres per waypoint for the demo plan", () => {
    // the bundled plan comes from the reference pipeline: 16 spheres as 8/4/2/2
    expect(demoPlan.waypoints.map((w) => w.sphere_count)).toEqual([8, 4, 2, 2]);
    const group = buildReplayGroup(demoPlan);
    const counts = sphereCountsByWaypoint(group);
    for (const waypoint of demoPlan.waypoints) {
      expect(counts[waypoint.object_id]).toBe(waypoint.sphere_count);
    }
  });

  it("is a pure function of the document", () => {
    const a = sphereCountsByWaypoint(buildReplayGroup(demoPlan));
    const b = sphereCountsByWaypoint(buildReplayGroup(demoPlan));
    expect(a).toEqual(b);
  });

  it("renders one polyline per leg with the leg's points", () => {
    const group = buildReplayGroup(demoPlan);
    const legs = group.children.filter((c) => c.name.startsWith("leg:"));
    expect(legs.length).toBe(demoPlan.legs.length);
  });

  it("handles arbitrary sphere counts", () => {
    const plan: PlanDoc = {
      scene_name: "synthetic",
      waypoints: [1, 7, 23].map((count, i) => ({
        object_id: `obj${i}`,
        viewpoint: [i, 0, 0],
        look_at: [i, 1, 0],
        sphere_count: count,
        instructions: [],
        dwell_hint: 0,
      })),
      legs: [],
    };
    const counts = sphereCountsByWaypoint(buildReplayGroup(plan));
    expect(counts).toEqual({ obj0: 1, obj1: 7, obj2: 23 });
  });

  it("keeps cluster offsets near the viewpoint", () => {
    for (const offset of clusterOffsets(40)) {
      expect(Math.hypot(...offset)).toBeLessThan(0.5);
    }
  });
});

describe("instruction panel activation", () => {
  it("activates within the radius and picks the nearest waypoint", () => {
    const first = demoPlan.waypoints[0];
    const at = first.viewpoint;
    expect(activeWaypoint(demoPlan, at)?.object_id).toBe(first.object_id);
    const nearby: [number, number, number] = [at[0] + 1.5, at[1], at[2]];
    expect(activeWaypoint(demoPlan, nearby)?.object_id).toBe(first.object_id);
    const far: [number, number, number] = [at[0] + INSTRUCTION_RADIUS + 3, at[1] - 4, at[2]];
    expect(activeWaypoint(demoPlan, far)).toBeNull();
  });

  it("shows the checklist instruction texts from the file", () => {
    const byId = Object.fromEntries(
      demoPlan.waypoints.map((w) => [w.object_id, w.instructions]),
    );
    expect(byId["E1"]).toEqual(["check the test and maintenance dates"]);
    expect(byId["A1"]).toEqual(["check the battery conditions"]);
  });
});

describe("waypoint stepping", () => {
  it("steps forward and back within bounds", () => {
    const cursor = new ReplayCursor(demoPlan);
    expect(cursor.waypoint.object_id).toBe("E1");
    cursor.next();
    expect(cursor.waypoint.object_id).toBe("A1");
    cursor.prev();
    cursor.prev(); // clamped at the start
    expect(cursor.waypoint.object_id).toBe("E1");
    for (let i = 0; i < 10; i += 1) cursor.next(); // clamped at the end
    expect(cursor.waypoint.object_id).toBe("R1");
  });
});
