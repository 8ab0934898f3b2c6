import { ApiClient } from "../api.js";
import {
  CHARGE_SLIDER_MAX,
  CHARGE_SLIDER_MIN,
  DEFAULT_PARAMS,
  PICTURE_THRESHOLD,
  RADIUS_MAX,
  RADIUS_MIN,
  Simulation,
  chargeFromSlider,
  radiusFromSlider,
} from "../physics.js";
import { PALETTE, clear, el, initials, svgEl } from "../render.js";
import { EgoLinkPayload, EgoPayload } from "../types.js";

const VIEWBOX = 640;

/** The user's own network: their connections float free (the self node
 * is never drawn), links the user has not confirmed render transparent,
 * and double-clicking such a node confirms it. Dragging one connection
 * onto another files a third-party link between them. */
export class EgoView {
  private readonly api: ApiClient;
  private readonly meId: string;
  private readonly onError: (message: string) => void;
  private ego: EgoPayload | null = null;
  private sim: Simulation | null = null;
  private svg: SVGSVGElement | null = null;
  private container: HTMLElement | null = null;
  private radius = 10;
  private chargeDisplay = 5;
  private readonly confirming = new Set<string>();
  private dragSource: string | null = null;
  private animating = false;

  constructor(api: ApiClient, meId: string, onError: (message: string) => void) {
    this.api = api;
    this.meId = meId;
    this.onError = onError;
  }

  async mount(container: HTMLElement): Promise<void> {
    this.container = container;
    try {
      this.ego = await this.api.myEgo();
    } catch (error) {
      this.onError(
        error instanceof Error ? error.message : "loading your network failed",
      );
      return;
    }
    this.rebuildSimulation();
    this.render();
  }

  dispose(): void {
    this.animating = false;
    this.container = null;
  }

  helpText(): string {
    return (
      "Drag one of your connections onto another to file a link between " +
      "them; it stays visible only to the two of them until both confirm. " +
      "Transparent nodes claimed you: double-click to confirm."
    );
  }

  /** The link that carries this neighbor's transparency flag. */
  private incidentLink(personId: string): EgoLinkPayload | undefined {
    return this.ego?.links.find(
      (link) =>
        (link.a === this.ego?.subject && link.b === personId) ||
        (link.b === this.ego?.subject && link.a === personId),
    );
  }

  private rebuildSimulation(): void {
    if (!this.ego) {
      return;
    }
    const ids = this.ego.neighbors.map((p) => p.id);
    const amongLinks = this.ego.links
      .filter((l) => l.a !== this.ego?.subject && l.b !== this.ego?.subject)
      .map((l): [string, string] => [l.a, l.b]);
    this.sim = new Simulation(
      ids,
      amongLinks,
      { ...DEFAULT_PARAMS, charge: chargeFromSlider(this.chargeDisplay) },
      7,
    );
    this.sim.run(150);
  }

  private render(): void {
    if (!this.container || !this.ego || !this.sim) {
      return;
    }
    clear(this.container);
    const wrap = el("div", "graph-view ego");

    const controls = el("div", "controls");
    controls.appendChild(this.slider("spread", CHARGE_SLIDER_MIN, CHARGE_SLIDER_MAX,
      this.chargeDisplay, (value) => {
        this.chargeDisplay = value;
        this.sim?.setCharge(chargeFromSlider(value));
        this.sim?.run(120);
        this.positionNodes();
      }));
    controls.appendChild(this.slider("size", RADIUS_MIN, RADIUS_MAX,
      this.radius, (value) => {
        this.radius = radiusFromSlider(value);
        this.render();
      }));
    const stats = el("span", "stats",
      `${this.ego.stats.node_count} people, ${this.ego.stats.link_count} links`);
    controls.appendChild(stats);
    wrap.appendChild(controls);

    const svg = svgEl("svg", {
      viewBox: `${-VIEWBOX / 2} ${-VIEWBOX / 2} ${VIEWBOX} ${VIEWBOX}`,
      class: "graph" + (this.radius < PICTURE_THRESHOLD ? " dots-only" : ""),
    });
    this.svg = svg;

    for (const link of this.ego.links) {
      if (link.a === this.ego.subject || link.b === this.ego.subject) {
        continue; // the self node is absent, so its spokes have no anchor
      }
      const line = svgEl("line", {
        class: "edge" + (link.transparent ? " transparent" : ""),
        "data-link-id": link.id,
      });
      svg.appendChild(line);
    }

    for (const person of this.ego.neighbors) {
      if (person.id === this.meId) {
        continue;
      }
      const incident = this.incidentLink(person.id);
      const transparent = incident?.transparent ?? false;
      const group = svgEl("g", {
        class: "node" + (transparent ? " transparent" : ""),
        "data-person-id": person.id,
        "data-link-id": incident?.id ?? "",
      });
      group.appendChild(svgEl("circle", {
        r: this.radius,
        fill: PALETTE[0],
        class: "body",
      }));
      if (this.radius >= PICTURE_THRESHOLD) {
        const label = svgEl("text", {
          class: "avatar-label",
          "text-anchor": "middle",
          dy: "0.35em",
        });
        label.textContent = initials(person.display_name);
        group.appendChild(label);
        const name = svgEl("text", {
          class: "name",
          "text-anchor": "middle",
          y: this.radius + 12,
        });
        name.textContent = person.display_name;
        group.appendChild(name);
      }
      if (transparent && incident) {
        group.addEventListener("dblclick", () => {
          void this.confirm(incident.id);
        });
      }
      group.addEventListener("pointerdown", () => {
        this.dragSource = person.id;
      });
      group.addEventListener("pointerup", () => {
        const source = this.dragSource;
        this.dragSource = null;
        if (source && source !== person.id) {
          void this.linkPair(source, person.id);
        }
      });
      svg.appendChild(group);
    }
    svg.addEventListener("pointerup", () => {
      this.dragSource = null;
    });

    wrap.appendChild(svg);
    this.container.appendChild(wrap);
    this.positionNodes();
    this.animate();
  }

  private slider(
    label: string,
    min: number,
    max: number,
    value: number,
    onChange: (value: number) => void,
  ): HTMLElement {
    const wrap = el("label", "slider");
    wrap.appendChild(el("span", undefined, label));
    const input = el("input") as HTMLInputElement;
    input.type = "range";
    input.min = String(min);
    input.max = String(max);
    input.value = String(value);
    input.addEventListener("input", () => onChange(Number(input.value)));
    wrap.appendChild(input);
    return wrap;
  }

  private positionNodes(): void {
    if (!this.svg || !this.sim) {
      return;
    }
    for (const node of this.svg.querySelectorAll<SVGGElement>("g.node")) {
      const body = this.sim.bodies.get(node.dataset.personId ?? "");
      if (body) {
        node.setAttribute("transform", `translate(${body.x} ${body.y})`);
      }
    }
    for (const edge of this.svg.querySelectorAll<SVGLineElement>("line.edge")) {
      const linkId = edge.getAttribute("data-link-id");
      const link = this.ego?.links.find((l) => l.id === linkId);
      if (!link) {
        continue;
      }
      const a = this.sim.bodies.get(link.a);
      const b = this.sim.bodies.get(link.b);
      if (a && b) {
        edge.setAttribute("x1", String(a.x));
        edge.setAttribute("y1", String(a.y));
        edge.setAttribute("x2", String(b.x));
        edge.setAttribute("y2", String(b.y));
      }
    }
  }

  private animate(): void {
    if (typeof requestAnimationFrame !== "function" || this.animating) {
      return;
    }
    this.animating = true;
    let ticks = 0;
    const tick = () => {
      if (!this.animating || ticks++ > 300) {
        this.animating = false;
        return;
      }
      this.sim?.step();
      this.positionNodes();
      requestAnimationFrame(tick);
    };
    requestAnimationFrame(tick);
  }

  /** Exactly one confirm call per link however fast the clicks come. */
  private async confirm(linkId: string): Promise<void> {
    if (this.confirming.has(linkId)) {
      return;
    }
    this.confirming.add(linkId);
    try {
      await this.api.confirmLink(linkId);
      this.ego = await this.api.myEgo();
    } catch (error) {
      this.onError(
        error instanceof Error ? error.message : "confirming failed",
      );
      return;
    } finally {
      this.confirming.delete(linkId);
    }
    this.rebuildSimulation();
    this.render();
  }

  private async linkPair(a: string, b: string): Promise<void> {
    try {
      await this.api.createLink(a, b, undefined, "Ego");
      this.ego = await this.api.myEgo();
    } catch (error) {
      this.onError(
        error instanceof Error ? error.message : "linking failed",
      );
      return;
    }
    this.rebuildSimulation();
    this.render();
  }
}
