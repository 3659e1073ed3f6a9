import type {
  AlphabetInfo,
  ApiErrorBody,
  FetchLike,
  QuestionView,
  SessionView,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly code: string,
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** Thin typed client for the game service endpoints. */
export class GameClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, {
      method,
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    let payload: unknown;
    try {
      payload = await response.json();
    } catch {
      throw new ApiError("bad_payload", response.status, "response was not JSON");
    }
    if (!response.ok) {
      const err = payload as Partial<ApiErrorBody>;
      throw new ApiError(
        err.error ?? "http_error",
        response.status,
        err.message ?? `request failed with status ${response.status}`,
      );
    }
    return payload as T;
  }

  alphabet(): Promise<AlphabetInfo> {
    return this.request("GET", "/alphabet");
  }

  createSession(): Promise<{ id: string }> {
    return this.request("POST", "/sessions");
  }

  getSession(id: string): Promise<SessionView> {
    return this.request("GET", `/sessions/${id}`);
  }

  getQuestion(id: string): Promise<QuestionView> {
    return this.request("GET", `/sessions/${id}/question`);
  }

  answer(id: string, bit: 0 | 1): Promise<SessionView> {
    return this.request("POST", `/sessions/${id}/answer`, { bit });
  }
}
