// HUD model: everything shown on screen derives from the latest server
// sample plus the already-loaded scene document.

import type { ObjectClass, SampleDoc, SceneDoc } from "./types.js";

export interface HudEntry {
  id: string;
  objectClass: ObjectClass | "unknown";
}

export interface HudState {
  elapsed: number;
  gaze: HudEntry | null;
  detections: HudEntry[];
  position: [number, number, number];
}

export function hudState(sample: SampleDoc, scene: SceneDoc): HudState {
  const classOf = new Map(scene.objects.map((o) => [o.id, o.class]));
  const entry = (id: string): HudEntry => ({
    id,
    objectClass: classOf.get(id) ?? "unknown",
  });
  return {
    elapsed: sample.time,
    gaze: sample.gaze_object ? entry(sample.gaze_object) : null,
    detections: sample.detections.map(entry),
    position: sample.position,
  };
}

export function formatHud(state: HudState): string {
  const position = state.position.map((c) => c.toFixed(2)).join(", ");
  const gaze = state.gaze ? `${state.gaze.id} (${state.gaze.objectClass})` : "-";
  const detections = state.detections.length
    ? state.detections.map((d) => `${d.id} (${d.objectClass})`).join(", ")
    : "-";
  return [
    `t ${state.elapsed.toFixed(2)} s  @ (${position})`,
    `gaze: ${gaze}`,
    `detections: ${detections}`,
  ].join("\n");
}
