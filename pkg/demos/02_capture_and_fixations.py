"""Fly a hand-rolled control sequence, record it, and extract fixations.

Run: python3 demos/02_capture_and_fixations.py
"""

from sitewalk import (ControlInput, SensorConfig, Trajectory, TrajectorySample,
                      extract_fixations, sense, step, to_observation_sequence)
from sitewalk.demo import demo_config, demo_scene


def main():
    scene = demo_scene()
    config = demo_config()
    state = config.start_state()
    trajectory = Trajectory("manual", scene.name, config.tick_dt)

    # cruise down the corridor, then turn right toward the extinguisher and stare
    plan = ([ControlInput(v_forward=1.5)] * 40
            + [ControlInput(yaw_rate=-1.2)] * 31
            + [ControlInput()] * 40)
    for control in plan:
        state = step(scene, state, control, config.tick_dt)
        gaze, detections = sense(scene, state, SensorConfig())
        trajectory.record(TrajectorySample(
            state.time, state, gaze, tuple(d.object_id for d in detections)))

    print(f"recorded {len(trajectory.samples)} samples over {trajectory.span:.2f} s")
    gazed = [s.gaze_object for s in trajectory.samples if s.gaze_object]
    print(f"gaze landed on: {sorted(set(gazed))}")

    fixations = extract_fixations(trajectory, config.dwell_threshold,
                                  config.gap_tolerance, scene.obstacle_ids)
    for fix in fixations:
        print(f"fixation {fix.object_id}: {fix.start:.2f} .. {fix.end:.2f} "
              f"({fix.duration:.2f} s)")
    sequence = to_observation_sequence(fixations, trajectory.session_id)
    print("observation sequence:", " -> ".join(sequence.object_ids) or "(empty)")


if __name__ == "__main__":
    main()
