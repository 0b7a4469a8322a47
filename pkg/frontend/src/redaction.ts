import type { TemplateFieldInfo } from "./types.js";

/**
 * Pure selection/preview model for the Redact & Prove page.
 *
 * The invariant mirrored from the proving service: the POST /prove body
 * lists exactly the fields the user left unchecked ("keep" checkboxes),
 * and the preview shows a kept value verbatim while a redacted value is
 * rendered as spaces of the same length — identical to the server-side
 * redaction semantics.
 */
export class RedactionModel {
  private readonly keep = new Set<string>();
  readonly fields: TemplateFieldInfo[];

  constructor(fields: TemplateFieldInfo[]) {
    this.fields = fields.filter((f) => f.present);
    for (const f of this.fields) {
      this.keep.add(f.key); // everything visible until unchecked
    }
  }

  setKeep(key: string, kept: boolean): void {
    if (!this.fields.some((f) => f.key === key)) {
      throw new Error(`unknown field: ${key}`);
    }
    if (kept) {
      this.keep.add(key);
    } else {
      this.keep.delete(key);
    }
  }

  isKept(key: string): boolean {
    return this.keep.has(key);
  }

  /** Exactly the unchecked fields, in template order. */
  redactKeys(): string[] {
    return this.fields.filter((f) => !this.keep.has(f.key)).map((f) => f.key);
  }

  /** Preview value per field: kept verbatim, redacted as same-length blanks. */
  preview(): Record<string, string> {
    const out: Record<string, string> = {};
    for (const f of this.fields) {
      const value = f.value ?? "";
      out[f.key] = this.keep.has(f.key) ? value : " ".repeat(value.length);
    }
    return out;
  }
}

/** True when a preview entry is fully blanked (redacted rendering). */
export function isBlank(value: string): boolean {
  return value.length > 0 && [...value].every((c) => c === " ");
}
