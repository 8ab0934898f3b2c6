import { el } from "../render.js";
import { ViewName } from "../types.js";

/** Introduction shown on first load: what a link means here, and the
 * ground rules (your endpoint is yours to confirm, unconfirmed links
 * stay private, deleting undoes). */
export class SplashView {
  private readonly onStart: (view: ViewName) => void;

  constructor(onStart: (view: ViewName) => void) {
    this.onStart = onStart;
  }

  mount(container: HTMLElement): void {
    container.textContent = "";
    const page = el("div", "splash");
    page.appendChild(el("h1", undefined, "Map who knows whom"));
    page.appendChild(
      el(
        "p",
        "definition",
        "A link here means a connection both people would be comfortable " +
          "seeing on a shared map: you know each other and say hello. " +
          "Each side confirms its own end; until both ends confirm, a " +
          "link is visible only to the two people on it.",
      ),
    );
    const views = el("ul", "view-list");
    const blurbs: Array<[string, string]> = [
      ["Ego", "your own network; confirm or remove what others claimed"],
      ["Physical", "the floor map; add the people who sit around you"],
      ["Global", "the whole community, colored by sub-community"],
    ];
    for (const [name, blurb] of blurbs) {
      const item = el("li");
      item.appendChild(el("strong", undefined, name));
      item.appendChild(document.createTextNode(": " + blurb));
      views.appendChild(item);
    }
    page.appendChild(views);
    page.appendChild(
      el(
        "p",
        undefined,
        "The search box and the suggestion list on the left are the " +
          "quickest ways to add people; deleting a link simply undoes it.",
      ),
    );
    const start = el("button", "primary", "Start with your network");
    start.addEventListener("click", () => this.onStart("Ego"));
    page.appendChild(start);
    container.appendChild(page);
  }
}
