/** Shapes exchanged with the local prove facade and the Verify service. */

export interface TemplateFieldInfo {
  key: string;
  label: string;
  kind: "text" | "numeric";
  value: string | null;
  present: boolean;
  span: [number, number] | null;
}

export interface DocumentResponse {
  template_id: string;
  fields: TemplateFieldInfo[];
}

export interface DisclosureManifest {
  template_id: string;
  circuit_digest: string;
  artifacts: string[];
  rendering: Record<string, string> | null;
}

export interface DisclosureResponse {
  proof: Record<string, unknown>;
  signals: string[];
  manifest: DisclosureManifest;
}

export interface VerdictResponse {
  verdict: "accepted" | "rejected";
  reason: string | null;
  document: Record<string, string> | null;
  signer: string | null;
  insecure_setup: boolean;
  detail: string | null;
}

export interface ApiError {
  code: string;
  message: string;
}
