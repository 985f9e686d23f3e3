import { SessionClient } from "./client.js";
import { TrainerApp } from "./app.js";

const params = new URLSearchParams(window.location.search);
const server = params.get("server") ?? "http://127.0.0.1:8000";

const root = document.getElementById("app");
if (root) {
  const app = new TrainerApp(root, new SessionClient(server));
  app.start().catch((err) => {
    root.querySelector("#status")!.textContent = `cannot reach engine at ${server}: ${err}`;
  });
}
