import { OfflineError, VerifyClient } from "./api.js";
import {
  collectDroppedFiles,
  FormatError,
  toVerdictView,
} from "./verifyModel.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const DEFAULT_VERIFY_BASE = "http://127.0.0.1:8471";

export async function handleFiles(
  files: { name: string; text: string }[],
  client: VerifyClient,
): Promise<void> {
  const status = el<HTMLParagraphElement>("status");
  const result = el<HTMLDivElement>("result");
  result.replaceChildren();
  status.className = "";
  try {
    const dropped = collectDroppedFiles(files);
    status.textContent = "Verifying…";
    const verdict = await client.verify({
      template_id: dropped.templateId ?? "1040-2020",
      proof: dropped.proof,
      signals: dropped.signals,
      circuit_digest: dropped.circuitDigest,
    });
    const view = toVerdictView(verdict);
    status.textContent = view.headline;
    status.className = view.accepted ? "accepted" : "rejected";
    if (view.signer) {
      const p = document.createElement("p");
      p.textContent = `Signer: ${view.signer}`;
      result.appendChild(p);
    }
    if (view.insecureWarning) {
      const warn = document.createElement("p");
      warn.className = "warning";
      warn.textContent = view.insecureWarning;
      result.appendChild(warn);
    }
    if (view.accepted) {
      const table = document.createElement("table");
      table.className = "form-1040";
      for (const row of view.rows) {
        const tr = document.createElement("tr");
        const th = document.createElement("th");
        th.textContent = row.key;
        const td = document.createElement("td");
        td.textContent = row.redacted ? "" : row.value;
        td.className = row.redacted ? "redacted" : "kept";
        tr.append(th, td);
        table.appendChild(tr);
      }
      result.appendChild(table);
    }
  } catch (err) {
    status.className = "error";
    status.textContent =
      err instanceof FormatError
        ? `File format error: ${err.message}`
        : err instanceof OfflineError
          ? "Verify service is unreachable."
          : `Verification request failed: ${(err as Error).message}`;
  }
}

export function initVerifyPage(
  client: VerifyClient = new VerifyClient(DEFAULT_VERIFY_BASE),
): void {
  const drop = el<HTMLDivElement>("dropzone");
  const input = el<HTMLInputElement>("file-input");

  const readFiles = async (fileList: FileList | null) => {
    if (!fileList) return;
    const files = await Promise.all(
      Array.from(fileList).map(async (f) => ({
        name: f.name,
        text: await f.text(),
      })),
    );
    await handleFiles(files, client);
  };

  drop.addEventListener("dragover", (e) => e.preventDefault());
  drop.addEventListener("drop", (e) => {
    e.preventDefault();
    void readFiles(e.dataTransfer?.files ?? null);
  });
  input.addEventListener("change", () => void readFiles(input.files));
}

if (typeof document !== "undefined" && document.getElementById("dropzone")) {
  initVerifyPage();
}
