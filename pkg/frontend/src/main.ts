import "./style.css";
import { App } from "./app";

const root = document.getElementById("app")!;
const app = new App(root);
void app.init("workbench").catch((err) => {
  root.insertAdjacentHTML(
    "afterbegin",
    `<div class="status error">Cannot reach the mlogs service: ${String(err)}</div>`,
  );
});

// Handy for poking around from the devtools console.
(window as unknown as { mlogs: App }).mlogs = app;
