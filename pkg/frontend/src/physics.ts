/** Client-side force simulation for the ego and global graph views.
 *
 * Charged particles repel, springs pull linked nodes toward a rest
 * length, and a weak gravity keeps disconnected pieces on screen. The
 * server renders maps the same way for headless export; this copy only
 * has to feel responsive, it never feeds data back.
 */

export interface PhysicsParams {
  charge: number; // repulsion magnitude, >= 0 here for convenience
  springConstant: number;
  restLength: number;
  gravity: number;
  damping: number;
  dt: number;
  centerX: number;
  centerY: number;
}

export const DEFAULT_PARAMS: PhysicsParams = {
  charge: 900,
  springConstant: 0.06,
  restLength: 70,
  gravity: 0.03,
  damping: 0.6,
  dt: 1,
  centerX: 0,
  centerY: 0,
};

export interface Body {
  x: number;
  y: number;
  vx: number;
  vy: number;
}

/** Deterministic PRNG so a reloaded view starts from the same scatter. */
export function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

const MIN_DISTANCE = 0.01;

export class Simulation {
  readonly bodies = new Map<string, Body>();
  private readonly springs: Array<[string, string]> = [];
  private params: PhysicsParams;

  constructor(ids: string[], links: Array<[string, string]>, params: PhysicsParams, seed = 1) {
    this.params = { ...params };
    const rand = mulberry32(seed);
    const radius = 40 + 12 * ids.length;
    for (const id of ids) {
      const angle = rand() * 2 * Math.PI;
      const r = radius * Math.sqrt(rand());
      this.bodies.set(id, {
        x: this.params.centerX + r * Math.cos(angle),
        y: this.params.centerY + r * Math.sin(angle),
        vx: 0,
        vy: 0,
      });
    }
    for (const [a, b] of links) {
      if (this.bodies.has(a) && this.bodies.has(b) && a !== b) {
        this.springs.push([a, b]);
      }
    }
  }

  setCharge(charge: number): void {
    this.params.charge = charge;
  }

  /** Pin a node while the user drags it. */
  place(id: string, x: number, y: number): void {
    const body = this.bodies.get(id);
    if (body) {
      body.x = x;
      body.y = y;
      body.vx = 0;
      body.vy = 0;
    }
  }

  step(): void {
    const { charge, springConstant, restLength, gravity, damping, dt, centerX, centerY } =
      this.params;
    const ids = [...this.bodies.keys()];
    const force = new Map<string, [number, number]>();
    for (const id of ids) {
      force.set(id, [0, 0]);
    }
    for (let i = 0; i < ids.length; i++) {
      for (let j = i + 1; j < ids.length; j++) {
        const p = this.bodies.get(ids[i])!;
        const q = this.bodies.get(ids[j])!;
        let dx = p.x - q.x;
        let dy = p.y - q.y;
        let dist = Math.hypot(dx, dy);
        if (dist < MIN_DISTANCE) {
          dx = 1;
          dy = 0;
          dist = MIN_DISTANCE;
        }
        const push = charge / (dist * dist);
        const fx = (push * dx) / dist;
        const fy = (push * dy) / dist;
        const fi = force.get(ids[i])!;
        const fj = force.get(ids[j])!;
        fi[0] += fx;
        fi[1] += fy;
        fj[0] -= fx;
        fj[1] -= fy;
      }
    }
    for (const [a, b] of this.springs) {
      const p = this.bodies.get(a)!;
      const q = this.bodies.get(b)!;
      let dx = q.x - p.x;
      let dy = q.y - p.y;
      let dist = Math.hypot(dx, dy);
      if (dist < MIN_DISTANCE) {
        dx = 1;
        dy = 0;
        dist = MIN_DISTANCE;
      }
      const pull = springConstant * (dist - restLength);
      const fx = (pull * dx) / dist;
      const fy = (pull * dy) / dist;
      const fa = force.get(a)!;
      const fb = force.get(b)!;
      fa[0] += fx;
      fa[1] += fy;
      fb[0] -= fx;
      fb[1] -= fy;
    }
    for (const id of ids) {
      const body = this.bodies.get(id)!;
      const f = force.get(id)!;
      f[0] += gravity * (centerX - body.x);
      f[1] += gravity * (centerY - body.y);
      body.vx = damping * (body.vx + f[0] * dt);
      body.vy = damping * (body.vy + f[1] * dt);
      body.x += body.vx * dt;
      body.y += body.vy * dt;
    }
  }

  run(steps: number): void {
    for (let i = 0; i < steps; i++) {
      this.step();
    }
  }
}

// Slider mappings. The charge slider shows 1..10 and maps log-linearly
// onto the physics charge; the size slider is the node radius in pixels.
export const CHARGE_SLIDER_MIN = 1;
export const CHARGE_SLIDER_MAX = 10;
export const RADIUS_MIN = 2;
export const RADIUS_MAX = 20;

/** Below this radius avatars are hidden and only colored dots remain. */
export const PICTURE_THRESHOLD = 8;

const CHARGE_LOW = 60;
const CHARGE_HIGH = 6000;

export function chargeFromSlider(display: number): number {
  const clamped = Math.min(CHARGE_SLIDER_MAX, Math.max(CHARGE_SLIDER_MIN, display));
  const t = (clamped - CHARGE_SLIDER_MIN) / (CHARGE_SLIDER_MAX - CHARGE_SLIDER_MIN);
  return CHARGE_LOW * Math.pow(CHARGE_HIGH / CHARGE_LOW, t);
}

export function radiusFromSlider(display: number): number {
  return Math.min(RADIUS_MAX, Math.max(RADIUS_MIN, display));
}
