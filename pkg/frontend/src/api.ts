/** Thin fetch client for the session service. All errors become ApiError. */

import type {
  Plan,
  SessionSummary,
  SystemReply,
  TopicEntry,
  Transcript,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** The surface the UI needs; tests substitute fakes through this. */
export interface Api {
  getTopics(): Promise<TopicEntry[]>;
  createSession(
    topic: string,
    difficulty: number,
    variant?: string,
  ): Promise<SessionSummary>;
  sendMessage(sessionId: string, text: string): Promise<SystemReply>;
  getPlan(sessionId: string): Promise<Plan>;
  getTranscript(sessionId: string): Promise<Transcript>;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class TutorApi implements Api {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async getTopics(): Promise<TopicEntry[]> {
    const body = await this.request("GET", "/topics");
    return body.topics as TopicEntry[];
  }

  createSession(
    topic: string,
    difficulty: number,
    variant = "main",
  ): Promise<SessionSummary> {
    return this.request("POST", "/sessions", { topic, difficulty, variant });
  }

  sendMessage(sessionId: string, text: string): Promise<SystemReply> {
    const path = `/sessions/${encodeURIComponent(sessionId)}/messages`;
    return this.request("POST", path, { text });
  }

  getPlan(sessionId: string): Promise<Plan> {
    return this.request("GET", `/sessions/${encodeURIComponent(sessionId)}/plan`);
  }

  getTranscript(sessionId: string): Promise<Transcript> {
    return this.request(
      "GET",
      `/sessions/${encodeURIComponent(sessionId)}/transcript`,
    );
  }

  // eslint-disable-next-line @typescript-eslint/no-explicit-any
  private async request(method: string, path: string, body?: unknown): Promise<any> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, {
        method,
        headers:
          body === undefined ? undefined : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new ApiError(
        "network_error",
        `could not reach the session service: ${String(err)}`,
        0,
      );
    }
    if (!response.ok) {
      throw await this.toError(response);
    }
    return response.json();
  }

  private async toError(response: Response): Promise<ApiError> {
    let code = "http_error";
    let message = `request failed with status ${response.status}`;
    try {
      const payload = await response.json();
      if (payload && typeof payload.code === "string") code = payload.code;
      if (payload && typeof payload.message === "string") message = payload.message;
    } catch {
      // non-JSON error body; keep the status-line message
    }
    return new ApiError(code, message, response.status);
  }
}
