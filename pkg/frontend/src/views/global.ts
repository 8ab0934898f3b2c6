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
import { GlobalPayload } from "../types.js";

const VIEWBOX = 900;
const FLASH_MS = 2500;

/** The whole visible graph, colored by detected community. The signed-in
 * user's node is marked so they can find themselves. */
export class GlobalView {
  private readonly api: ApiClient;
  private readonly meId: string;
  private readonly onError: (message: string) => void;
  private graph: GlobalPayload | null = null;
  private sim: Simulation | null = null;
  private svg: SVGSVGElement | null = null;
  private container: HTMLElement | null = null;
  private radius = 6;
  private chargeDisplay = 5;
  private animating = false;

  constructor(api: ApiClient, meId: string, onError: (message: string) => void) {
    this.api = api;
    this.meId = meId;
    this.onError = onError;
  }

  async mount(container: HTMLElement): Promise<void> {
    this.container = container;
    try {
      this.graph = await this.api.globalView();
    } catch (error) {
      this.onError(
        error instanceof Error ? error.message : "loading the graph failed",
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
      "Every confirmed link in the community, colored by detected group. " +
      "The highlighted node is you; your direct connections have bold " +
      "borders."
    );
  }

  /** Briefly bolds the edge between a and b after a sidebar add. */
  flashLink(a: string, b: string): void {
    if (!this.svg) {
      return;
    }
    for (const edge of this.svg.querySelectorAll<SVGLineElement>("line.edge")) {
      const ea = edge.getAttribute("data-a");
      const eb = edge.getAttribute("data-b");
      if ((ea === a && eb === b) || (ea === b && eb === a)) {
        edge.classList.add("flash");
        setTimeout(() => edge.classList.remove("flash"), FLASH_MS);
      }
    }
  }

  private neighborIds(): Set<string> {
    const out = new Set<string>();
    for (const link of this.graph?.links ?? []) {
      if (link.a === this.meId) {
        out.add(link.b);
      }
      if (link.b === this.meId) {
        out.add(link.a);
      }
    }
    return out;
  }

  private rebuildSimulation(): void {
    if (!this.graph) {
      return;
    }
    this.sim = new Simulation(
      this.graph.nodes.map((n) => n.id),
      this.graph.links.map((l): [string, string] => [l.a, l.b]),
      {
        ...DEFAULT_PARAMS,
        charge: chargeFromSlider(this.chargeDisplay),
        restLength: 40,
      },
      11,
    );
    this.sim.run(200);
  }

  private render(): void {
    if (!this.container || !this.graph || !this.sim) {
      return;
    }
    clear(this.container);
    const wrap = el("div", "graph-view global");

    const controls = el("div", "controls");
    controls.appendChild(this.slider("spread", CHARGE_SLIDER_MIN,
      CHARGE_SLIDER_MAX, this.chargeDisplay, (value) => {
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
    controls.appendChild(el("span", "stats",
      `${this.graph.nodes.length} people, ${this.graph.links.length} links`));
    wrap.appendChild(controls);

    const svg = svgEl("svg", {
      viewBox: `${-VIEWBOX / 2} ${-VIEWBOX / 2} ${VIEWBOX} ${VIEWBOX}`,
      class: "graph" + (this.radius < PICTURE_THRESHOLD ? " dots-only" : ""),
    });
    this.svg = svg;

    for (const link of this.graph.links) {
      svg.appendChild(svgEl("line", {
        class: "edge",
        "data-a": link.a,
        "data-b": link.b,
      }));
    }

    const neighbors = this.neighborIds();
    for (const node of this.graph.nodes) {
      const isMe = node.id === this.meId;
      const classes = ["node"];
      if (isMe) {
        classes.push("me");
      } else if (neighbors.has(node.id)) {
        classes.push("neighbor");
      }
      const group = svgEl("g", {
        class: classes.join(" "),
        "data-person-id": node.id,
        "data-community": node.community,
      });
      if (isMe) {
        // a ring outside the body makes the viewer findable at any zoom
        group.appendChild(svgEl("circle", {
          r: this.radius + 4,
          class: "me-ring",
        }));
      }
      group.appendChild(svgEl("circle", {
        r: this.radius,
        class: "body",
        fill: PALETTE[node.color % PALETTE.length],
      }));
      if (this.radius >= PICTURE_THRESHOLD) {
        const label = svgEl("text", {
          class: "avatar-label",
          "text-anchor": "middle",
          dy: "0.35em",
        });
        label.textContent = initials(node.display_name);
        group.appendChild(label);
      }
      const title = svgEl("title");
      title.textContent = `${node.display_name} (${node.group})`;
      group.appendChild(title);
      svg.appendChild(group);
    }

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
      const a = this.sim.bodies.get(edge.getAttribute("data-a") ?? "");
      const b = this.sim.bodies.get(edge.getAttribute("data-b") ?? "");
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

  async refresh(): Promise<void> {
    if (!this.container) {
      return;
    }
    try {
      this.graph = await this.api.globalView();
    } catch (error) {
      this.onError(
        error instanceof Error ? error.message : "refreshing failed",
      );
      return;
    }
    this.rebuildSimulation();
    this.render();
  }
}
