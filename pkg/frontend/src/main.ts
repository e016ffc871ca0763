import { OperatorConsole } from "./console.js";

function wsUrl(): string {
  const proto = location.protocol === "https:" ? "wss" : "ws";
  return `${proto}://${location.host}/feed`;
}

window.addEventListener("load", () => {
  const root = document.getElementById("console");
  if (!root) throw new Error("console root element not found");
  const operatorConsole = new OperatorConsole(root, "", wsUrl());
  operatorConsole.start();
});
