/** Modal pop-up queue: one dialog at a time, buttons resolve a promise. */

export interface PopupSpec {
  title: string;
  lines: string[];
  buttons: string[]; // e.g. ["OK"] or ["YES", "NO"]
}

interface Pending {
  spec: PopupSpec;
  resolve: (choice: string) => void;
}

export class PopupHost {
  private queue: Pending[] = [];
  private current: Pending | null = null;
  private overlay: HTMLElement;

  constructor(root: HTMLElement) {
    this.overlay = document.createElement("div");
    this.overlay.className = "popup-overlay hidden";
    this.overlay.id = "popup";
    root.appendChild(this.overlay);
  }

  show(spec: PopupSpec): Promise<string> {
    return new Promise((resolve) => {
      this.queue.push({ spec, resolve });
      if (!this.current) this.next();
    });
  }

  get isOpen(): boolean {
    return this.current !== null;
  }

  private next(): void {
    const pending = this.queue.shift() ?? null;
    this.current = pending;
    if (!pending) {
      this.overlay.classList.add("hidden");
      this.overlay.replaceChildren();
      return;
    }
    const { spec } = pending;
    const box = document.createElement("div");
    box.className = "popup-box";
    const title = document.createElement("h3");
    title.textContent = spec.title;
    box.appendChild(title);
    const list = document.createElement("div");
    list.className = "popup-lines";
    for (const line of spec.lines) {
      const p = document.createElement("p");
      p.textContent = line;
      list.appendChild(p);
    }
    box.appendChild(list);
    const row = document.createElement("div");
    row.className = "popup-buttons";
    for (const label of spec.buttons) {
      const button = document.createElement("button");
      button.textContent = label;
      button.dataset.choice = label;
      button.addEventListener("click", () => {
        pending.resolve(label);
        this.next();
      });
      row.appendChild(button);
    }
    box.appendChild(row);
    this.overlay.replaceChildren(box);
    this.overlay.classList.remove("hidden");
  }
}
