// Wire formats shared with the session service. These mirror the JSON
// documents the service persists; the UI never invents its own schema.

export type Vec3 = [number, number, number];

export type ObjectClass =
  | "fire_extinguisher"
  | "fire_alarm_panel"
  | "exit_sign"
  | "rescue_equipment"
  | "obstacle";

export interface SceneObjectDoc {
  id: string;
  class: ObjectClass;
  aabb: { min: Vec3; max: Vec3 };
  instructions: string[];
}

export interface SceneDoc {
  name: string;
  bounds: { min: Vec3; max: Vec3 };
  voxel_size: number;
  objects: SceneObjectDoc[];
}

// one session-log line / stream message
export interface SampleDoc {
  time: number;
  position: Vec3;
  yaw: number;
  pitch: number;
  gaze_object: string | null;
  detections: string[];
}

export interface ControlInput {
  v_forward?: number;
  v_strafe?: number;
  v_vertical?: number;
  yaw_rate?: number;
  pitch_rate?: number;
}

export interface SessionConfigDoc {
  scene_name: string;
  tick_dt?: number;
  sensor?: {
    max_range: number;
    cone_half_angle: number;
    rays_per_ring: number;
    rings: number;
  };
  limits?: { linear: number; angular: number };
  dwell_threshold?: number;
  gap_tolerance?: number;
  start_pose?: { position: Vec3; yaw: number; pitch: number };
}

export interface WaypointDoc {
  object_id: string;
  viewpoint: Vec3;
  look_at: Vec3;
  sphere_count: number;
  instructions: string[];
  dwell_hint: number;
}

export interface PlanDoc {
  scene_name: string;
  waypoints: WaypointDoc[];
  legs: Vec3[][];
}

export interface SessionSummary {
  session_id: string;
  scene_name: string;
  samples: number;
  duration: number;
  observation_sequence: {
    object_id: string;
    start: number;
    end: number;
    duration: number;
  }[];
}
