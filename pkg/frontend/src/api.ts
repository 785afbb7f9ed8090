import {
  Catalog,
  GraphDocument,
  ResultSetJson,
  RunStatus,
  ValidationError,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** Error from a 4xx/5xx response; carries the server's {error, pointer} body when present. */
export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
    readonly pointer: string = "",
    readonly errors: ValidationError[] = [],
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function readError(resp: Response): Promise<ApiError> {
  let message = `${resp.status} ${resp.statusText}`;
  let pointer = "";
  let errors: ValidationError[] = [];
  try {
    const body = await resp.json();
    if (body && typeof body.error === "string") message = body.error;
    if (body && typeof body.pointer === "string") pointer = body.pointer;
    if (body && Array.isArray(body.errors)) errors = body.errors;
  } catch {
    // non-JSON error body; keep the status line
  }
  return new ApiError(message, resp.status, pointer, errors);
}

/** Thin client over the serve-mode HTTP API. fetch is injectable for tests. */
export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  private async getJson<T>(path: string): Promise<T> {
    const resp = await this.fetchImpl(this.url(path));
    if (!resp.ok) throw await readError(resp);
    return (await resp.json()) as T;
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const resp = await this.fetchImpl(this.url(path), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!resp.ok) throw await readError(resp);
    return (await resp.json()) as T;
  }

  getCatalog(): Promise<Catalog> {
    return this.getJson<Catalog>("/devices");
  }

  async validate(doc: GraphDocument): Promise<ValidationError[]> {
    const body = await this.postJson<{ errors: ValidationError[] }>("/validate", doc);
    return body.errors;
  }

  async submit(doc: GraphDocument): Promise<string> {
    const body = await this.postJson<{ run_id: string }>("/experiments", doc);
    return body.run_id;
  }

  status(runId: string): Promise<RunStatus> {
    return this.getJson<RunStatus>(`/runs/${runId}`);
  }

  results(runId: string): Promise<ResultSetJson> {
    return this.getJson<ResultSetJson>(`/runs/${runId}/results`);
  }
}

export interface PollOptions {
  intervalMs?: number;
  onStatus?: (status: RunStatus) => void;
  /** Injectable for tests; defaults to real timers. */
  sleep?: (ms: number) => Promise<void>;
}

const realSleep = (ms: number) => new Promise<void>((r) => setTimeout(r, ms));

/**
 * Poll a run once a second until it lands in a terminal state, then fetch the
 * results. One request is in flight at a time: the next status check is not
 * scheduled until the previous response arrives.
 */
export async function pollRun(
  client: ApiClient,
  runId: string,
  opts: PollOptions = {},
): Promise<ResultSetJson> {
  const interval = opts.intervalMs ?? 1000;
  const sleep = opts.sleep ?? realSleep;
  for (;;) {
    const status = await client.status(runId);
    opts.onStatus?.(status);
    if (status.status === "done") return client.results(runId);
    if (status.status === "error") {
      throw new ApiError(status.error ?? "run failed", 500);
    }
    await sleep(interval);
  }
}
