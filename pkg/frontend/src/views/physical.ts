import { ApiClient } from "../api.js";
import { clear, el, initials, svgEl } from "../render.js";
import { FloorDetailPayload, FloorPayload, PersonPayload } from "../types.js";

const SEAT_RADIUS = 14;

/** Office floor plans with people drawn at their desks. Double-clicking
 * someone adds them to the viewer's network. */
export class PhysicalView {
  private readonly api: ApiClient;
  private readonly meId: string;
  private readonly onError: (message: string) => void;
  private readonly onLinkAdded: (person: PersonPayload) => void;
  private floors: FloorPayload[] = [];
  private detail: FloorDetailPayload | null = null;
  private container: HTMLElement | null = null;
  private readonly pendingAdds = new Set<string>();
  private zoom = 1;
  private panX = 0;
  private panY = 0;

  constructor(
    api: ApiClient,
    meId: string,
    onError: (message: string) => void,
    onLinkAdded: (person: PersonPayload) => void,
  ) {
    this.api = api;
    this.meId = meId;
    this.onError = onError;
    this.onLinkAdded = onLinkAdded;
  }

  async mount(container: HTMLElement): Promise<void> {
    this.container = container;
    try {
      this.floors = await this.api.floors();
      if (this.floors.length > 0) {
        const current = this.detail?.floor.floor_id;
        const keep = this.floors.find((f) => f.floor_id === current);
        const floor = keep ?? this.floors[0];
        this.detail = await this.api.floorDetail(floor.floor_id);
      } else {
        this.detail = null;
      }
    } catch (error) {
      this.onError(
        error instanceof Error ? error.message : "loading floors failed",
      );
      return;
    }
    this.render();
  }

  dispose(): void {
    this.container = null;
  }

  helpText(): string {
    return (
      "Pick a floor, find a desk, and double-click a person you know to " +
      "add them to your network. Scroll to zoom, drag to pan."
    );
  }

  private async switchFloor(floorId: string): Promise<void> {
    try {
      this.detail = await this.api.floorDetail(floorId);
    } catch (error) {
      this.onError(
        error instanceof Error ? error.message : "loading the floor failed",
      );
      return;
    }
    this.zoom = 1;
    this.panX = 0;
    this.panY = 0;
    this.render();
  }

  private render(): void {
    if (!this.container) {
      return;
    }
    clear(this.container);
    const wrap = el("div", "graph-view physical");

    const bar = el("div", "controls");
    for (const floor of this.floors) {
      const button = el("button", "floor-button", floor.name);
      button.dataset.floorId = floor.floor_id;
      if (floor.floor_id === this.detail?.floor.floor_id) {
        button.classList.add("active");
      }
      button.addEventListener("click", () => {
        void this.switchFloor(floor.floor_id);
      });
      bar.appendChild(button);
    }
    wrap.appendChild(bar);

    if (!this.detail) {
      wrap.appendChild(el("p", "empty", "No floor plans are loaded."));
      this.container.appendChild(wrap);
      return;
    }

    const floor = this.detail.floor;
    const svg = svgEl("svg", {
      viewBox: `0 0 ${floor.width} ${floor.height}`,
      class: "floor-plan",
    });
    const stage = svgEl("g", { class: "stage" });
    svg.appendChild(stage);

    if (floor.image_ref) {
      stage.appendChild(svgEl("image", {
        href: floor.image_ref,
        x: 0,
        y: 0,
        width: floor.width,
        height: floor.height,
      }));
    } else {
      stage.appendChild(svgEl("rect", {
        x: 0,
        y: 0,
        width: floor.width,
        height: floor.height,
        class: "floor-blank",
      }));
    }

    for (const person of this.detail.occupants) {
      if (!person.office) {
        continue;
      }
      const seat = svgEl("g", {
        class: "seat" + (person.id === this.meId ? " me" : ""),
        "data-person-id": person.id,
        transform: `translate(${person.office.x} ${person.office.y})`,
      });
      if (person.avatar_ref) {
        seat.appendChild(svgEl("image", {
          href: person.avatar_ref,
          x: -SEAT_RADIUS,
          y: -SEAT_RADIUS,
          width: SEAT_RADIUS * 2,
          height: SEAT_RADIUS * 2,
          "clip-path": "circle()",
        }));
      } else {
        // no picture on file: initials stand in
        seat.appendChild(svgEl("circle", {
          r: SEAT_RADIUS,
          class: "placeholder",
        }));
        const label = svgEl("text", {
          "text-anchor": "middle",
          dy: "0.35em",
          class: "avatar-label",
        });
        label.textContent = initials(person.display_name);
        seat.appendChild(label);
      }
      const name = svgEl("text", {
        class: "name",
        "text-anchor": "middle",
        y: SEAT_RADIUS + 12,
      });
      name.textContent = person.display_name;
      seat.appendChild(name);
      if (person.id !== this.meId) {
        seat.addEventListener("dblclick", () => {
          void this.addPerson(person);
        });
      }
      stage.appendChild(seat);
    }

    this.attachPanZoom(svg, stage);
    wrap.appendChild(svg);
    this.container.appendChild(wrap);
  }

  private attachPanZoom(svg: SVGSVGElement, stage: SVGGElement): void {
    const apply = () => {
      stage.setAttribute(
        "transform",
        `translate(${this.panX} ${this.panY}) scale(${this.zoom})`,
      );
    };
    apply();
    svg.addEventListener("wheel", (event) => {
      event.preventDefault();
      const factor = event.deltaY < 0 ? 1.1 : 1 / 1.1;
      this.zoom = Math.min(8, Math.max(0.25, this.zoom * factor));
      apply();
    });
    let dragging = false;
    let lastX = 0;
    let lastY = 0;
    svg.addEventListener("pointerdown", (event) => {
      dragging = true;
      lastX = event.clientX;
      lastY = event.clientY;
    });
    svg.addEventListener("pointermove", (event) => {
      if (!dragging) {
        return;
      }
      this.panX += event.clientX - lastX;
      this.panY += event.clientY - lastY;
      lastX = event.clientX;
      lastY = event.clientY;
      apply();
    });
    const stop = () => {
      dragging = false;
    };
    svg.addEventListener("pointerup", stop);
    svg.addEventListener("pointerleave", stop);
  }

  /** One create call per double-click, even if events double up. */
  private async addPerson(person: PersonPayload): Promise<void> {
    if (this.pendingAdds.has(person.id)) {
      return;
    }
    this.pendingAdds.add(person.id);
    try {
      await this.api.createLink(this.meId, person.id, "Physical", "Physical");
      this.onLinkAdded(person);
    } catch (error) {
      this.onError(
        error instanceof Error ? error.message : "adding the link failed",
      );
    } finally {
      this.pendingAdds.delete(person.id);
    }
  }
}
