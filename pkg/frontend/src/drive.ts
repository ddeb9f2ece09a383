// First-person drive mode: keyboard translation + pointer look mapped to
// control intent, posted at the session tick rate. The camera is slaved to
// the latest server sample - the client never predicts motion, so whatever
// the HUD shows is exactly what the server recorded.

import type { ControlInput, SampleDoc } from "./types.js";
import type { ServiceClient } from "./client.js";

export interface DriveLimits {
  linear: number;
  angular: number;
}

export const DEFAULT_LIMITS: DriveLimits = { linear: 2.0, angular: Math.PI / 2 };

export const POINTER_SENSITIVITY = 0.002; // rad per pixel

function clamp(value: number, bound: number): number {
  return Math.max(-bound, Math.min(bound, value)) + 0; // + 0 folds -0 into +0
}

/** Live input state fed by DOM handlers (or tests). */
export class InputTracker {
  private keys = new Set<string>();
  private pointerDx = 0;
  private pointerDy = 0;

  keyDown(code: string): void {
    this.keys.add(code);
  }

  keyUp(code: string): void {
    this.keys.delete(code);
  }

  pointerMove(dx: number, dy: number): void {
    this.pointerDx += dx;
    this.pointerDy += dy;
  }

  held(code: string): boolean {
    return this.keys.has(code);
  }

  /** Drain accumulated pointer motion (once per tick). */
  consumePointer(): { dx: number; dy: number } {
    const moved = { dx: this.pointerDx, dy: this.pointerDy };
    this.pointerDx = 0;
    this.pointerDy = 0;
    return moved;
  }
}

/**
 * Map held keys and pointer motion to one tick's control intent.
 * W/S forward-back, A/D strafe, R/F up-down; pointer drag turns the view
 * (drag right looks right, drag up looks up).
 */
export function controlFromInput(
  input: InputTracker,
  tickDt: number,
  limits: DriveLimits = DEFAULT_LIMITS,
): ControlInput {
  const axis = (positive: string, negative: string) =>
    (input.held(positive) ? 1 : 0) - (input.held(negative) ? 1 : 0);
  const pointer = input.consumePointer();
  return {
    v_forward: axis("KeyW", "KeyS") * limits.linear,
    v_strafe: axis("KeyD", "KeyA") * limits.linear,
    v_vertical: axis("KeyR", "KeyF") * limits.linear,
    yaw_rate: clamp((-pointer.dx * POINTER_SENSITIVITY) / tickDt, limits.angular),
    pitch_rate: clamp((-pointer.dy * POINTER_SENSITIVITY) / tickDt, limits.angular),
  };
}

/**
 * Posts the current control intent every tick and tracks the latest
 * server-authoritative sample. Stop with `stop()`; the session itself is
 * ended through the client (the loop never ends it implicitly).
 */
export class DriveLoop {
  latestSample: SampleDoc | null = null;
  private timer: ReturnType<typeof setInterval> | null = null;
  private inflight = false;

  constructor(
    private client: ServiceClient,
    private sessionId: string,
    private input: InputTracker,
    private tickDt: number,
    private limits: DriveLimits = DEFAULT_LIMITS,
  ) {}

  applySample(sample: SampleDoc): void {
    if (!this.latestSample || sample.time >= this.latestSample.time) {
      this.latestSample = sample;
    }
  }

  async postOnce(): Promise<void> {
    const control = controlFromInput(this.input, this.tickDt, this.limits);
    await this.client.submitControl(this.sessionId, control);
  }

  start(): void {
    if (this.timer !== null) return;
    this.timer = setInterval(() => {
      if (this.inflight) return; // drop a beat rather than queue stale intent
      this.inflight = true;
      this.postOnce()
        .catch(() => undefined)
        .finally(() => {
          this.inflight = false;
        });
    }, this.tickDt * 1000);
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }
}
