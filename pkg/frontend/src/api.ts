/** Thin typed client over the service HTTP API. */

import type {
  ApplicationValues,
  RejectedSubmission,
  SessionPayload,
  StatusFrame,
  ValidationResult,
} from "./types.js";

export class ServiceError extends Error {
  constructor(
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

export class SubmissionRejected extends Error {
  constructor(readonly detail: RejectedSubmission) {
    super(detail.rejected);
  }
}

export class ServiceClient {
  constructor(readonly base: string = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const resp = await fetch(this.base + path, {
      method,
      headers: body === undefined ? {} : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (path === "/sessions" && resp.status === 422) {
      throw new SubmissionRejected((await resp.json()) as RejectedSubmission);
    }
    if (!resp.ok) {
      let detail = resp.statusText;
      try {
        const payload = (await resp.json()) as { error?: string };
        if (payload.error) detail = payload.error;
      } catch {
        // not JSON; keep the status text
      }
      throw new ServiceError(detail, resp.status);
    }
    return (await resp.json()) as T;
  }

  getStatus(): Promise<StatusFrame> {
    return this.request("GET", "/status");
  }

  validateApplication(app: ApplicationValues): Promise<ValidationResult> {
    return this.request("POST", "/applications/validate", app);
  }

  submitApplication(app: ApplicationValues): Promise<SessionPayload> {
    return this.request("POST", "/sessions", app);
  }

  startTest(id: string): Promise<SessionPayload> {
    return this.request("POST", `/sessions/${id}/start`);
  }

  stopTest(id: string): Promise<SessionPayload> {
    return this.request("POST", `/sessions/${id}/stop`);
  }

  getSession(id: string): Promise<SessionPayload> {
    return this.request("GET", `/sessions/${id}`);
  }

  resetConsole(): Promise<SessionPayload> {
    return this.request("POST", "/console/reset");
  }

  async getCard(id: string): Promise<string> {
    const resp = await fetch(`${this.base}/sessions/${id}/card`);
    if (!resp.ok) throw new ServiceError(resp.statusText, resp.status);
    return await resp.text();
  }
}
