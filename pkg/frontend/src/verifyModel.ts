import type { VerdictResponse } from "./types.js";

/**
 * Parsing and presentation logic for the Verify page, kept free of DOM
 * concerns so it is directly testable.
 */

export interface DroppedFiles {
  proof: unknown;
  signals: unknown;
  templateId: string | null;
  circuitDigest: string | null;
}

export class FormatError extends Error {}

function parseJson(name: string, text: string): unknown {
  try {
    return JSON.parse(text);
  } catch {
    throw new FormatError(`${name} is not valid JSON`);
  }
}

/**
 * Accepts the two §4.3 artifacts plus an optional manifest.json and
 * normalizes them for POST /verify. Malformed files raise FormatError —
 * they must never silently become a verdict.
 */
export function collectDroppedFiles(
  files: { name: string; text: string }[],
): DroppedFiles {
  const byName = new Map<string, string>();
  for (const f of files) {
    byName.set(f.name, f.text);
  }
  const proofText = byName.get("proof.json");
  const signalsText = byName.get("signals.json");
  if (proofText === undefined || signalsText === undefined) {
    throw new FormatError("drop both proof.json and signals.json");
  }
  const proof = parseJson("proof.json", proofText);
  const signals = parseJson("signals.json", signalsText);
  if (!Array.isArray(signals)) {
    throw new FormatError("signals.json must be a flat JSON array");
  }
  let templateId: string | null = null;
  let circuitDigest: string | null = null;
  const manifestText = byName.get("manifest.json");
  if (manifestText !== undefined) {
    const manifest = parseJson("manifest.json", manifestText) as {
      template_id?: string;
      circuit_digest?: string;
    };
    templateId = manifest.template_id ?? null;
    circuitDigest = manifest.circuit_digest ?? null;
  }
  return { proof, signals, templateId, circuitDigest };
}

export interface VerdictView {
  accepted: boolean;
  headline: string;
  signer: string | null;
  insecureWarning: string | null;
  /** key -> {value, redacted} for the 1040-style layout */
  rows: { key: string; value: string; redacted: boolean }[];
}

function isBlankValue(value: string): boolean {
  return value.length > 0 && [...value].every((c) => c === " ");
}

/** Mirrors the service verdict without client-side re-interpretation. */
export function toVerdictView(verdict: VerdictResponse): VerdictView {
  const rows = Object.entries(verdict.document ?? {}).map(([key, value]) => ({
    key,
    value,
    redacted: isBlankValue(value),
  }));
  return {
    accepted: verdict.verdict === "accepted",
    headline:
      verdict.verdict === "accepted"
        ? "Accepted — redaction proven against the signed original"
        : `Rejected: ${verdict.reason ?? "UNKNOWN"}${
            verdict.detail ? ` (${verdict.detail})` : ""
          }`,
    signer: verdict.signer,
    insecureWarning: verdict.insecure_setup
      ? "Parameters come from a local DEV-INSECURE setup; do not rely on this proof in production."
      : null,
    rows,
  };
}
