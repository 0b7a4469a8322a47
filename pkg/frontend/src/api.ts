import type {
  DisclosureResponse,
  DocumentResponse,
  VerdictResponse,
} from "./types.js";

/** Error carrying the service's {code, message} body verbatim. */
export class ServiceError extends Error {
  readonly code: string;

  constructor(code: string, message: string) {
    super(message);
    this.code = code;
  }
}

/** Raised when the local facade / verify service is unreachable. */
export class OfflineError extends Error {}

type FetchLike = typeof fetch;

async function requestJson<T>(
  fetchImpl: FetchLike,
  url: string,
  init?: RequestInit,
): Promise<T> {
  let resp: Response;
  try {
    resp = await fetchImpl(url, init);
  } catch {
    throw new OfflineError(`service unreachable at ${url}`);
  }
  let body: unknown = null;
  try {
    body = await resp.json();
  } catch {
    /* fall through to status handling */
  }
  if (!resp.ok) {
    const err = body as { code?: string; message?: string } | null;
    throw new ServiceError(
      err?.code ?? `HTTP_${resp.status}`,
      err?.message ?? `request failed with status ${resp.status}`,
    );
  }
  return body as T;
}

export class FacadeClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  getDocument(): Promise<DocumentResponse> {
    return requestJson(this.fetchImpl, `${this.base}/document`);
  }

  prove(redactKeys: string[]): Promise<DisclosureResponse> {
    return requestJson(this.fetchImpl, `${this.base}/prove`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ redact_keys: redactKeys }),
    });
  }
}

export class VerifyClient {
  constructor(
    private readonly base: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  verify(payload: {
    template_id: string | null;
    proof: unknown;
    signals: unknown;
    circuit_digest?: string | null;
  }): Promise<VerdictResponse> {
    return requestJson(this.fetchImpl, `${this.base}/verify`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }
}
