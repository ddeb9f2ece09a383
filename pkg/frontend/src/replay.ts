// Guidance replay: waypoints render as clusters of small spheres - the
// cluster size is exactly the plan's sphere_count, so denser clusters mark
// the equipment experts dwelled on longest - joined by leg polylines. An
// instruction panel activates when the camera is within reach of a waypoint.

import * as THREE from "three";
import type { PlanDoc, Vec3, WaypointDoc } from "./types.js";

export const INSTRUCTION_RADIUS = 2.0; // m
export const SPHERE_RADIUS = 0.08;
const CLUSTER_SPREAD = 0.3;
const GOLDEN_ANGLE = Math.PI * (3 - Math.sqrt(5));

/**
 * Deterministic cluster offsets: a golden-angle spiral on a short vertical
 * span so clusters read as a blob, never as a line.
 */
export function clusterOffsets(count: number): Vec3[] {
  const offsets: Vec3[] = [];
  for (let i = 0; i < count; i += 1) {
    if (i === 0) {
      offsets.push([0, 0, 0]);
      continue;
    }
    const angle = i * GOLDEN_ANGLE;
    const radius = CLUSTER_SPREAD * Math.sqrt(i / count);
    offsets.push([
      radius * Math.cos(angle),
      radius * Math.sin(angle),
      0.12 * ((i % 3) - 1),
    ]);
  }
  return offsets;
}

/** Build the replay scene graph. Pure function of the guidance document. */
export function buildReplayGroup(plan: PlanDoc): THREE.Group {
  const group = new THREE.Group();
  group.name = `plan:${plan.scene_name}`;

  const sphereGeometry = new THREE.SphereGeometry(SPHERE_RADIUS, 12, 8);
  const sphereMaterial = new THREE.MeshLambertMaterial({ color: 0x2257d6 });

  for (const waypoint of plan.waypoints) {
    const cluster = new THREE.Group();
    cluster.name = `waypoint:${waypoint.object_id}`;
    cluster.userData = { waypoint };
    for (const offset of clusterOffsets(waypoint.sphere_count)) {
      const sphere = new THREE.Mesh(sphereGeometry, sphereMaterial);
      sphere.name = "sphere";
      sphere.position.set(
        waypoint.viewpoint[0] + offset[0],
        waypoint.viewpoint[1] + offset[1],
        waypoint.viewpoint[2] + offset[2],
      );
      cluster.add(sphere);
    }
    group.add(cluster);
  }

  const legMaterial = new THREE.LineBasicMaterial({ color: 0x2257d6 });
  plan.legs.forEach((leg, index) => {
    const geometry = new THREE.BufferGeometry().setFromPoints(
      leg.map((p) => new THREE.Vector3(...p)),
    );
    const line = new THREE.Line(geometry, legMaterial);
    line.name = `leg:${index}`;
    group.add(line);
  });
  return group;
}

export function sphereCountsByWaypoint(group: THREE.Group): Record<string, number> {
  const counts: Record<string, number> = {};
  for (const child of group.children) {
    if (!child.name.startsWith("waypoint:")) continue;
    counts[child.name.slice("waypoint:".length)] = child.children.filter(
      (node) => node.name === "sphere",
    ).length;
  }
  return counts;
}

function distance(a: Vec3, b: Vec3): number {
  return Math.hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

/**
 * The waypoint whose instructions should be on screen: the nearest one
 * within the activation radius, else none.
 */
export function activeWaypoint(
  plan: PlanDoc,
  cameraPosition: Vec3,
  radius: number = INSTRUCTION_RADIUS,
): WaypointDoc | null {
  let best: WaypointDoc | null = null;
  let bestDistance = radius;
  for (const waypoint of plan.waypoints) {
    const d = distance(waypoint.viewpoint, cameraPosition);
    if (d <= bestDistance) {
      best = waypoint;
      bestDistance = d;
    }
  }
  return best;
}

/** Next/previous stepping through the plan's waypoints. */
export class ReplayCursor {
  index = 0;

  constructor(readonly plan: PlanDoc) {
    if (plan.waypoints.length === 0) throw new Error("plan has no waypoints");
  }

  get waypoint(): WaypointDoc {
    return this.plan.waypoints[this.index];
  }

  next(): WaypointDoc {
    this.index = Math.min(this.index + 1, this.plan.waypoints.length - 1);
    return this.waypoint;
  }

  prev(): WaypointDoc {
    this.index = Math.max(this.index - 1, 0);
    return this.waypoint;
  }
}
