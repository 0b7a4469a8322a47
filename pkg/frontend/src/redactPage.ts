import { FacadeClient, OfflineError, ServiceError } from "./api.js";
import { RedactionModel } from "./redaction.js";
import type { DisclosureResponse } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function downloadJson(name: string, data: unknown): void {
  const blob = new Blob([JSON.stringify(data, null, 2)], {
    type: "application/json",
  });
  const a = document.createElement("a");
  a.href = URL.createObjectURL(blob);
  a.download = name;
  a.click();
  URL.revokeObjectURL(a.href);
}

export async function initRedactPage(
  client: FacadeClient = new FacadeClient(),
): Promise<void> {
  const status = el<HTMLParagraphElement>("status");
  const table = el<HTMLTableSectionElement>("fields");
  const proveBtn = el<HTMLButtonElement>("prove");

  let model: RedactionModel;
  try {
    const doc = await client.getDocument();
    model = new RedactionModel(doc.fields);
    el<HTMLSpanElement>("template-id").textContent = doc.template_id;
  } catch (err) {
    status.textContent =
      err instanceof OfflineError
        ? "Local prove service is not running. Start it with: zktax serve-local"
        : `Failed to load document: ${(err as Error).message}`;
    status.className = "error";
    return;
  }

  const render = () => {
    table.replaceChildren();
    const preview = model.preview();
    for (const field of model.fields) {
      const tr = document.createElement("tr");
      const check = document.createElement("input");
      check.type = "checkbox";
      check.checked = model.isKept(field.key);
      check.addEventListener("change", () => {
        model.setKeep(field.key, check.checked);
        render();
      });
      const tdCheck = document.createElement("td");
      tdCheck.appendChild(check);
      const tdLabel = document.createElement("td");
      tdLabel.textContent = field.label;
      const tdPreview = document.createElement("td");
      tdPreview.className = model.isKept(field.key) ? "kept" : "redacted";
      tdPreview.textContent = model.isKept(field.key)
        ? (preview[field.key] ?? "")
        : "(redacted)";
      tr.append(tdCheck, tdLabel, tdPreview);
      table.appendChild(tr);
    }
  };
  render();

  proveBtn.addEventListener("click", async () => {
    proveBtn.disabled = true;
    table
      .querySelectorAll("input")
      .forEach((i) => ((i as HTMLInputElement).disabled = true));
    status.className = "";
    status.textContent = "Proving… this runs a zk-SNARK locally.";
    try {
      const disclosure: DisclosureResponse = await client.prove(
        model.redactKeys(),
      );
      status.textContent = "Proof ready — downloading disclosure artifacts.";
      downloadJson("proof.json", disclosure.proof);
      downloadJson("signals.json", disclosure.signals);
      downloadJson("manifest.json", disclosure.manifest);
    } catch (err) {
      status.className = "error";
      status.textContent =
        err instanceof ServiceError
          ? `Prove failed: ${err.message}`
          : err instanceof OfflineError
            ? "Local prove service went away."
            : `Prove failed: ${(err as Error).message}`;
    } finally {
      proveBtn.disabled = false;
      table
        .querySelectorAll("input")
        .forEach((i) => ((i as HTMLInputElement).disabled = false));
    }
  });
}

if (typeof document !== "undefined" && document.getElementById("fields")) {
  void initRedactPage();
}
