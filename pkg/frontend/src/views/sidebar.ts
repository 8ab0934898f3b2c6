import { ApiClient, debounce } from "../api.js";
import { el } from "../render.js";
import {
  AddSource,
  LinkPayload,
  PersonPayload,
  SuggestionPayload,
  ViewName,
} from "../types.js";

export const SEARCH_DEBOUNCE_MS = 300;

const NAV_VIEWS: ViewName[] = ["Splash", "Ego", "Physical", "Global"];

export interface SidebarCallbacks {
  currentView(): ViewName;
  switchView(view: ViewName): void;
  showHelp(): void;
  onLinkAdded(person: PersonPayload, link: LinkPayload): void;
  onError(message: string): void;
}

/** Search box, suggestion list, and nav icons; identical in every view. */
export class Sidebar {
  readonly root: HTMLElement;
  private readonly api: ApiClient;
  private readonly meId: string;
  private readonly callbacks: SidebarCallbacks;
  private readonly resultsBox: HTMLElement;
  private readonly suggestionsBox: HTMLElement;
  private readonly navButtons = new Map<ViewName, HTMLButtonElement>();
  private readonly pendingAdds = new Set<string>();
  private readonly emitSearchEvent: (query: string) => void;
  private suggestions: SuggestionPayload[] = [];
  private searchSeq = 0;

  constructor(api: ApiClient, meId: string, callbacks: SidebarCallbacks) {
    this.api = api;
    this.meId = meId;
    this.callbacks = callbacks;
    this.root = el("aside", "sidebar");

    const nav = el("nav", "nav");
    for (const view of NAV_VIEWS) {
      const button = el("button", "nav-button", view);
      button.dataset.view = view;
      button.addEventListener("click", () => this.callbacks.switchView(view));
      this.navButtons.set(view, button);
      nav.appendChild(button);
    }
    const help = el("button", "nav-button help", "?");
    help.title = "help for the current view";
    help.addEventListener("click", () => this.callbacks.showHelp());
    nav.appendChild(help);
    this.root.appendChild(nav);

    const search = el("input", "search") as HTMLInputElement;
    search.type = "search";
    search.placeholder = "find a colleague";
    this.emitSearchEvent = debounce((query: string) => {
      this.api
        .postEvent({ kind: "Search", query })
        .catch(() => undefined); // stats logging must never block the UI
    }, SEARCH_DEBOUNCE_MS);
    search.addEventListener("input", () => {
      void this.runSearch(search.value);
    });
    this.root.appendChild(search);

    this.resultsBox = el("div", "search-results");
    this.root.appendChild(this.resultsBox);

    this.root.appendChild(el("h2", "sidebar-heading", "People you may know"));
    this.suggestionsBox = el("div", "suggestions");
    this.root.appendChild(this.suggestionsBox);
  }

  setActive(view: ViewName): void {
    for (const [name, button] of this.navButtons) {
      button.classList.toggle("active", name === view);
    }
  }

  async refreshSuggestions(): Promise<void> {
    try {
      this.suggestions = await this.api.suggestions();
    } catch (error) {
      this.callbacks.onError(describe(error, "loading suggestions failed"));
      return;
    }
    this.renderSuggestions();
  }

  private renderSuggestions(): void {
    this.suggestionsBox.textContent = "";
    if (this.suggestions.length === 0) {
      this.suggestionsBox.appendChild(
        el("p", "empty", "no suggestions right now"),
      );
      return;
    }
    for (const suggestion of this.suggestions) {
      const row = el("button", "person-row suggestion");
      row.dataset.personId = suggestion.person.id;
      row.appendChild(el("span", "person-name", suggestion.person.display_name));
      const detail =
        suggestion.reason === "MutualConnections"
          ? `${suggestion.score} mutual`
          : suggestion.person.group;
      row.appendChild(el("span", "person-detail", detail));
      row.addEventListener("click", () => {
        void this.addPerson(suggestion.person, "Suggestion");
      });
      this.suggestionsBox.appendChild(row);
    }
  }

  private async runSearch(query: string): Promise<void> {
    const seq = ++this.searchSeq;
    this.resultsBox.textContent = "";
    const trimmed = query.trim();
    if (trimmed === "") {
      return;
    }
    this.emitSearchEvent(trimmed);
    let people: PersonPayload[];
    try {
      people = await this.api.searchPeople(trimmed);
    } catch (error) {
      this.callbacks.onError(describe(error, "search failed"));
      return;
    }
    if (seq !== this.searchSeq) {
      return; // a newer keystroke owns the results box now
    }
    for (const person of people) {
      if (person.id === this.meId) {
        continue;
      }
      const row = el("button", "person-row result");
      row.dataset.personId = person.id;
      row.appendChild(el("span", "person-name", person.display_name));
      row.appendChild(el("span", "person-detail", person.group));
      row.addEventListener("click", () => {
        void this.addPerson(person, "Search");
      });
      this.resultsBox.appendChild(row);
    }
  }

  /** One API call per click; suggestions refresh from the server after. */
  private async addPerson(person: PersonPayload, source: AddSource): Promise<void> {
    if (this.pendingAdds.has(person.id)) {
      return;
    }
    this.pendingAdds.add(person.id);
    try {
      const link = await this.api.createLink(
        this.meId,
        person.id,
        source,
        this.callbacks.currentView(),
      );
      this.callbacks.onLinkAdded(person, link);
    } catch (error) {
      this.callbacks.onError(describe(error, "adding the link failed"));
      return;
    } finally {
      this.pendingAdds.delete(person.id);
    }
    await this.refreshSuggestions();
  }
}

function describe(error: unknown, fallback: string): string {
  if (error instanceof Error && error.message) {
    return error.message;
  }
  return fallback;
}
