/** Drag-drop / file-picker upload panel. */

export class UploadPanel {
  readonly element: HTMLElement;
  private readonly status: HTMLElement;

  constructor(container: HTMLElement, onFiles: (files: File[]) => void) {
    this.element = document.createElement("div");
    this.element.className = "upload-panel";
    this.element.innerHTML = `
      <div class="dropzone" id="dropzone">
        Drop LAS files here or
        <label class="browse">browse<input id="file-input" type="file" accept=".las,.LAS" multiple hidden /></label>
      </div>
      <div class="status" id="upload-status"></div>
    `;
    container.appendChild(this.element);
    this.status = this.element.querySelector("#upload-status")!;

    const input = this.element.querySelector<HTMLInputElement>("#file-input")!;
    input.addEventListener("change", () => {
      if (input.files?.length) onFiles(Array.from(input.files));
      input.value = "";
    });

    const zone = this.element.querySelector<HTMLElement>("#dropzone")!;
    zone.addEventListener("dragover", (ev) => {
      ev.preventDefault();
      zone.classList.add("armed");
    });
    zone.addEventListener("dragleave", () => zone.classList.remove("armed"));
    zone.addEventListener("drop", (ev) => {
      ev.preventDefault();
      zone.classList.remove("armed");
      const files = Array.from(ev.dataTransfer?.files ?? []);
      if (files.length) onFiles(files);
    });
  }

  setStatus(text: string, isError = false): void {
    this.status.textContent = text;
    this.status.classList.toggle("error", isError);
  }
}
