import { ApiClient } from "./api.js";
import { clear, el } from "./render.js";
import { PersonPayload, ViewName } from "./types.js";
import { EgoView } from "./views/ego.js";
import { GlobalView } from "./views/global.js";
import { PhysicalView } from "./views/physical.js";
import { Sidebar } from "./views/sidebar.js";
import { SplashView } from "./views/splash.js";

const ERROR_BANNER_MS = 6000;

/** Wires the sidebar to the four views and keeps them in sync: every
 * gesture maps to one API call, and what renders is always the server's
 * answer. */
export class App {
  private readonly api: ApiClient;
  private readonly meId: string;
  readonly sidebar: Sidebar;
  private readonly splash: SplashView;
  private readonly ego: EgoView;
  private readonly physical: PhysicalView;
  private readonly global: GlobalView;
  private view: ViewName = "Splash";
  private main: HTMLElement | null = null;
  private banner: HTMLElement | null = null;
  private root: HTMLElement | null = null;
  private bannerTimer: ReturnType<typeof setTimeout> | undefined;

  constructor(api: ApiClient, meId: string) {
    this.api = api;
    this.meId = meId;
    this.sidebar = new Sidebar(api, meId, {
      currentView: () => this.view,
      switchView: (view) => this.switchView(view),
      showHelp: () => this.showHelp(),
      onLinkAdded: (person) => this.linkAdded(person),
      onError: (message) => this.showError(message),
    });
    this.splash = new SplashView((view) => this.switchView(view));
    this.ego = new EgoView(api, meId, (m) => this.showError(m));
    this.physical = new PhysicalView(
      api,
      meId,
      (m) => this.showError(m),
      (person) => {
        this.linkAdded(person);
        void this.sidebar.refreshSuggestions();
      },
    );
    this.global = new GlobalView(api, meId, (m) => this.showError(m));
  }

  async mount(root: HTMLElement): Promise<void> {
    this.root = root;
    clear(root);
    this.banner = el("div", "error-banner hidden");
    root.appendChild(this.banner);
    const layout = el("div", "layout");
    layout.appendChild(this.sidebar.root);
    this.main = el("main", "main");
    layout.appendChild(this.main);
    root.appendChild(layout);
    this.sidebar.setActive(this.view);
    this.splash.mount(this.main);
    await this.sidebar.refreshSuggestions();
  }

  currentView(): ViewName {
    return this.view;
  }

  switchView(view: ViewName): void {
    if (!this.main) {
      return;
    }
    // recorded the moment the user navigates, not when the view settles
    this.api
      .postEvent({ kind: "ViewSwitch", view })
      .catch(() => undefined);
    this.ego.dispose();
    this.global.dispose();
    this.physical.dispose();
    this.view = view;
    this.sidebar.setActive(view);
    switch (view) {
      case "Splash":
        this.splash.mount(this.main);
        break;
      case "Ego":
        void this.ego.mount(this.main);
        break;
      case "Physical":
        void this.physical.mount(this.main);
        break;
      case "Global":
        void this.global.mount(this.main);
        break;
    }
  }

  private linkAdded(person: PersonPayload): void {
    if (!this.main) {
      return;
    }
    if (this.view === "Ego") {
      void this.ego.mount(this.main);
    } else if (this.view === "Global") {
      void this.global.refresh().then(() => {
        this.global.flashLink(this.meId, person.id);
      });
    }
  }

  showError(message: string): void {
    if (!this.banner) {
      return;
    }
    this.banner.textContent = message;
    this.banner.classList.remove("hidden");
    if (this.bannerTimer !== undefined) {
      clearTimeout(this.bannerTimer);
    }
    this.bannerTimer = setTimeout(() => {
      this.banner?.classList.add("hidden");
      this.bannerTimer = undefined;
    }, ERROR_BANNER_MS);
  }

  private showHelp(): void {
    if (!this.root) {
      return;
    }
    const existing = this.root.querySelector(".help-overlay");
    if (existing) {
      existing.remove();
      return;
    }
    let text: string;
    switch (this.view) {
      case "Ego":
        text = this.ego.helpText();
        break;
      case "Physical":
        text = this.physical.helpText();
        break;
      case "Global":
        text = this.global.helpText();
        break;
      default:
        text =
          "Use the icons on the left to move between your network, the " +
          "floor map, and the whole community.";
    }
    const overlay = el("div", "help-overlay");
    overlay.appendChild(el("p", undefined, text));
    const close = el("button", undefined, "Got it");
    close.addEventListener("click", () => overlay.remove());
    overlay.appendChild(close);
    this.root.appendChild(overlay);
  }
}
