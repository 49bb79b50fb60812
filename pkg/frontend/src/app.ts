// DOM bootstrap: event delegation over the controller's rendered HTML.

import { ReviewApi } from "./api.js";
import { ReviewController } from "./controller.js";

const api = new ReviewApi((input, init) => fetch(input, init));
const controller = new ReviewController(api);
const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app container");
}

function paint(): void {
  root!.innerHTML = controller.render();
}

root.addEventListener("click", (event) => {
  const element = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
  if (!element || element instanceof HTMLInputElement) {
    return;
  }
  event.preventDefault();
  const action = element.dataset.action ?? "";
  const id = element.dataset.id ?? "";
  const index = Number(element.dataset.index ?? -1);
  const run = async () => {
    switch (action) {
      case "open":
        await controller.openChat(id);
        break;
      case "back":
        controller.goToList();
        await controller.refreshList();
        break;
      case "refresh":
        await controller.refreshList();
        break;
      case "request-delete":
        controller.requestDelete(index);
        break;
      case "cancel-delete":
        controller.cancelDelete();
        break;
      case "confirm-delete":
        await controller.confirmDelete(index);
        break;
      case "open-preview":
        await controller.openPreview(id);
        break;
      case "submit":
        await controller.submitChat(id);
        break;
    }
  };
  void run().then(paint);
});

root.addEventListener("change", (event) => {
  const element = event.target as HTMLInputElement;
  if (element.dataset.action === "toggle-researcher") {
    controller.toggleResearcher(element.checked);
    paint();
  }
  if (element.dataset.action === "import-file" && element.files?.length) {
    const file = element.files[0];
    void controller.importFile(file, file.name).then(paint);
  }
});

void controller.refreshList().then(paint);
