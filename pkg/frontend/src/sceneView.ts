// Scene rendering: bounds as a wireframe shell, every object as a shaded box
// color-coded by equipment class.

import * as THREE from "three";
import type { ObjectClass, SceneDoc, Vec3 } from "./types.js";

export const CLASS_COLORS: Record<ObjectClass, number> = {
  fire_extinguisher: 0xd62828,
  fire_alarm_panel: 0xf77f00,
  exit_sign: 0x2a9d34,
  rescue_equipment: 0x1d6fd6,
  obstacle: 0x8d99ae,
};

function boxCenter(min: Vec3, max: Vec3): Vec3 {
  return [(min[0] + max[0]) / 2, (min[1] + max[1]) / 2, (min[2] + max[2]) / 2];
}

function boxSize(min: Vec3, max: Vec3): Vec3 {
  return [max[0] - min[0], max[1] - min[1], max[2] - min[2]];
}

/** Build the render group for a scene document. Pure: no network, no globals. */
export function buildSceneGroup(scene: SceneDoc): THREE.Group {
  const group = new THREE.Group();
  group.name = `scene:${scene.name}`;

  const size = boxSize(scene.bounds.min, scene.bounds.max);
  const center = boxCenter(scene.bounds.min, scene.bounds.max);
  const shell = new THREE.LineSegments(
    new THREE.EdgesGeometry(new THREE.BoxGeometry(...size)),
    new THREE.LineBasicMaterial({ color: 0x444444 }),
  );
  shell.position.set(...center);
  shell.name = "bounds";
  group.add(shell);

  for (const object of scene.objects) {
    const mesh = new THREE.Mesh(
      new THREE.BoxGeometry(...boxSize(object.aabb.min, object.aabb.max)),
      new THREE.MeshLambertMaterial({
        color: CLASS_COLORS[object.class],
        transparent: object.class === "obstacle",
        opacity: object.class === "obstacle" ? 0.55 : 1.0,
      }),
    );
    mesh.position.set(...boxCenter(object.aabb.min, object.aabb.max));
    mesh.name = `object:${object.id}`;
    mesh.userData = { id: object.id, objectClass: object.class };
    group.add(mesh);
  }
  return group;
}

export function objectMeshes(group: THREE.Group): THREE.Object3D[] {
  return group.children.filter((child) => child.name.startsWith("object:"));
}
