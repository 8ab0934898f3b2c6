import { HttpApi } from "./api.js";
import { App } from "./app.js";

const STORAGE_KEY = "atlas.personId";

/** Who is signed in. A reverse proxy would normally inject the header;
 * for a bare deployment the id rides in ?me= once and then sticks. */
function resolvePersonId(): string | null {
  const fromQuery = new URLSearchParams(window.location.search).get("me");
  if (fromQuery) {
    localStorage.setItem(STORAGE_KEY, fromQuery);
    return fromQuery;
  }
  const stored = localStorage.getItem(STORAGE_KEY);
  if (stored) {
    return stored;
  }
  const typed = window.prompt("Enter your person id to sign in:");
  if (typed && typed.trim() !== "") {
    localStorage.setItem(STORAGE_KEY, typed.trim());
    return typed.trim();
  }
  return null;
}

function boot(): void {
  const rootEl = document.getElementById("app");
  if (!rootEl) {
    return;
  }
  const personId = resolvePersonId();
  if (!personId) {
    rootEl.textContent =
      "No identity. Reload with ?me=<your-person-id> in the address bar.";
    return;
  }
  const app = new App(new HttpApi(personId), personId);
  void app.mount(rootEl);
}

boot();
