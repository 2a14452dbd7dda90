/**
 * Browser bootstrap. The only configuration is the service base URL, taken
 * from the `api` query parameter (default: same-origin port 8000).
 */

import { ServiceClient } from "./api.js";
import { ExplorerApp } from "./app.js";

function baseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  if (fromQuery) return fromQuery;
  return `${window.location.protocol}//${window.location.hostname}:8000`;
}

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");

const client = new ServiceClient(baseUrl());
const app = new ExplorerApp(root, client);

void client.health().then((ok) => {
  if (!ok) {
    const banner = root.querySelector('[data-testid="banner"]');
    if (banner) {
      banner.textContent =
        `service not reachable at ${client.baseUrl}; start it with: gudie serve`;
      banner.classList.remove("hidden");
    }
  }
});

declare global {
  interface Window {
    explorer: ExplorerApp;
  }
}
window.explorer = app;
