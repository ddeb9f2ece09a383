// Browser entry point: wires the service client, the three.js renderer, and
// the three modes (scene view, first-person drive, guidance replay) to a
// minimal toolbar UI. All logic that matters lives in the imported modules.

import * as THREE from "three";
import { ServiceClient, openSampleStream } from "./client.js";
import { DriveLoop, InputTracker } from "./drive.js";
import { formatHud, hudState } from "./hud.js";
import { ReplayCursor, activeWaypoint, buildReplayGroup } from "./replay.js";
import { buildSceneGroup } from "./sceneView.js";
import type { PlanDoc, SampleDoc, SceneDoc } from "./types.js";

const TICK_DT = 0.05;

function element<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

class App {
  private renderer: THREE.WebGLRenderer;
  private world = new THREE.Scene();
  private camera: THREE.PerspectiveCamera;
  private sceneGroup: THREE.Group | null = null;
  private replayGroup: THREE.Group | null = null;

  private client: ServiceClient;
  private sceneDoc: SceneDoc | null = null;
  private planDoc: PlanDoc | null = null;
  private cursor: ReplayCursor | null = null;

  private input = new InputTracker();
  private drive: DriveLoop | null = null;
  private closeStream: (() => void) | null = null;
  private sessionId: string | null = null;

  constructor(private canvas: HTMLCanvasElement) {
    this.renderer = new THREE.WebGLRenderer({ canvas, antialias: true });
    this.renderer.setSize(canvas.clientWidth, canvas.clientHeight, false);
    this.camera = new THREE.PerspectiveCamera(
      70, canvas.clientWidth / canvas.clientHeight, 0.05, 200);
    this.camera.up.set(0, 0, 1); // world frame is z-up
    this.world.add(new THREE.AmbientLight(0xffffff, 0.7));
    const sun = new THREE.DirectionalLight(0xffffff, 1.2);
    sun.position.set(5, -10, 20);
    this.world.add(sun);
    this.client = new ServiceClient(
      (element<HTMLInputElement>("base-url")).value.replace(/\/$/, ""));
    this.bindUi();
    this.renderLoop();
  }

  private bindUi(): void {
    element<HTMLButtonElement>("load-scene").onclick = () => this.loadScene();
    element<HTMLButtonElement>("start-drive").onclick = () => this.startDrive();
    element<HTMLButtonElement>("end-drive").onclick = () => this.endDrive();
    element<HTMLButtonElement>("load-plan").onclick = () => this.loadPlan();
    element<HTMLButtonElement>("wp-next").onclick = () => this.step(+1);
    element<HTMLButtonElement>("wp-prev").onclick = () => this.step(-1);

    window.addEventListener("keydown", (e) => this.input.keyDown(e.code));
    window.addEventListener("keyup", (e) => this.input.keyUp(e.code));
    this.canvas.addEventListener("click", () => {
      if (this.drive) this.canvas.requestPointerLock();
    });
    window.addEventListener("mousemove", (e) => {
      if (document.pointerLockElement === this.canvas) {
        this.input.pointerMove(e.movementX, e.movementY);
      }
    });
  }

  private status(text: string): void {
    element("status").textContent = text;
  }

  private async loadScene(): Promise<void> {
    const name = element<HTMLInputElement>("scene-name").value;
    this.client = new ServiceClient(
      element<HTMLInputElement>("base-url").value.replace(/\/$/, ""));
    this.sceneDoc = await this.client.getScene(name);
    if (this.sceneGroup) this.world.remove(this.sceneGroup);
    this.sceneGroup = buildSceneGroup(this.sceneDoc);
    this.world.add(this.sceneGroup);
    const [bx, by, bz] = this.sceneDoc.bounds.max;
    this.camera.position.set(bx * 1.1, -by * 0.6, bz * 2.2);
    this.camera.lookAt(bx / 2, by / 2, 0);
    this.status(`scene '${name}': ${this.sceneDoc.objects.length} objects`);
  }

  private async startDrive(): Promise<void> {
    if (!this.sceneDoc) await this.loadScene();
    const scene = this.sceneDoc!;
    const created = await this.client.createSession({
      scene_name: scene.name,
      tick_dt: TICK_DT,
      start_pose: { position: [1.0, 3.0, 1.5], yaw: 0.0, pitch: 0.0 },
    });
    this.sessionId = created.id;
    this.drive = new DriveLoop(this.client, created.id, this.input, TICK_DT);
    this.closeStream = openSampleStream(this.client, created.id, (sample) => {
      this.drive?.applySample(sample);
      this.onSample(sample);
    });
    this.drive.start();
    this.status(`driving session ${created.id} - click the canvas to lock the pointer`);
  }

  private async endDrive(): Promise<void> {
    if (!this.sessionId) return;
    this.drive?.stop();
    this.closeStream?.();
    const summary = await this.client.endSession(this.sessionId);
    const sequence = summary.observation_sequence.map((f) => f.object_id).join(" -> ");
    this.status(`session ${summary.session_id}: ${summary.samples} samples, `
      + `sequence ${sequence || "(empty)"}`);
    this.drive = null;
    this.sessionId = null;
  }

  private onSample(sample: SampleDoc): void {
    this.camera.position.set(...sample.position);
    const { yaw, pitch } = sample;
    this.camera.lookAt(
      sample.position[0] + Math.cos(pitch) * Math.cos(yaw),
      sample.position[1] + Math.cos(pitch) * Math.sin(yaw),
      sample.position[2] + Math.sin(pitch),
    );
    if (this.sceneDoc) {
      element("hud").textContent = formatHud(hudState(sample, this.sceneDoc));
    }
  }

  private async loadPlan(): Promise<void> {
    const planId = element<HTMLInputElement>("plan-id").value;
    this.planDoc = await this.client.getPlan(planId);
    if (!this.sceneDoc || this.sceneDoc.name !== this.planDoc.scene_name) {
      element<HTMLInputElement>("scene-name").value = this.planDoc.scene_name;
      await this.loadScene();
    }
    if (this.replayGroup) this.world.remove(this.replayGroup);
    this.replayGroup = buildReplayGroup(this.planDoc);
    this.world.add(this.replayGroup);
    this.cursor = new ReplayCursor(this.planDoc);
    this.flyTo(this.cursor.waypoint.viewpoint, this.cursor.waypoint.look_at);
    this.status(`replaying plan ${planId}: ${this.planDoc.waypoints.length} waypoints`);
  }

  private step(direction: number): void {
    if (!this.cursor) return;
    const waypoint = direction > 0 ? this.cursor.next() : this.cursor.prev();
    this.flyTo(waypoint.viewpoint, waypoint.look_at);
  }

  private flyTo(position: [number, number, number], lookAt: [number, number, number]): void {
    this.camera.position.set(...position);
    this.camera.lookAt(...lookAt);
    this.updateInstructions();
  }

  private updateInstructions(): void {
    if (!this.planDoc) return;
    const camera = this.camera.position;
    const waypoint = activeWaypoint(this.planDoc, [camera.x, camera.y, camera.z]);
    const panel = element("instructions");
    if (!waypoint) {
      panel.textContent = "";
      return;
    }
    panel.textContent = [`${waypoint.object_id} - dwell ~${waypoint.dwell_hint.toFixed(1)} s`,
      ...waypoint.instructions.map((t) => `* ${t}`)].join("\n");
  }

  private renderLoop(): void {
    requestAnimationFrame(() => this.renderLoop());
    if (this.planDoc) this.updateInstructions();
    this.renderer.render(this.world, this.camera);
  }
}

new App(element<HTMLCanvasElement>("view"));
