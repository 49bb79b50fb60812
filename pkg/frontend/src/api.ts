// Typed client for the review-service loopback API. Every method maps to
// exactly one endpoint; the UI performs no other network calls.

export interface ChatSummary {
  chat_id: string;
  chat_label: string;
  state: string;
  edited: boolean;
  num_users: number;
  url_count: number;
  total_messages: number;
  start_date: string;
  end_date: string;
}

export interface PerUserStats {
  alias: number;
  total_messages: number;
  url_messages: number;
  text_messages: number;
}

export interface UrlEntry {
  seq: number;
  domain: string;
  cc_tld: string | null;
  was_shortened: boolean;
  alias: number;
  date: string;
}

export interface MessageMeta {
  seq: number;
  date: string;
  alias: number;
  kind: "url" | "text";
}

export interface ChatPayload {
  schema_version: number;
  chat_id: string;
  chat_label: string;
  edited: boolean;
  start_date: string;
  end_date: string;
  num_users: number;
  per_user: PerUserStats[];
  daily_counts: { date: string; alias: number; count: number }[];
  messages: MessageMeta[];
  urls: UrlEntry[];
}

export interface Receipt {
  chat_id: string;
  targets: string[];
  submitted_at: string;
  payload_sha256: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ReviewApi {
  constructor(
    private readonly fetchImpl: FetchLike,
    private readonly base = "",
  ) {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.base + path, init);
    } catch (err) {
      throw new ApiError(0, "unreachable", `service unreachable: ${String(err)}`);
    }
    if (!response.ok) {
      let code = "error";
      let message = `HTTP ${response.status}`;
      try {
        const body = await response.json();
        if (typeof body.error === "string") code = body.error;
        if (typeof body.message === "string") message = body.message;
      } catch {
        // non-JSON error body; keep the fallback message
      }
      throw new ApiError(response.status, code, message);
    }
    return response;
  }

  async listChats(): Promise<ChatSummary[]> {
    return (await this.request("/chats")).json();
  }

  async getChat(chatId: string): Promise<ChatPayload> {
    return (await this.request(`/chats/${chatId}`)).json();
  }

  /** The exact payload bytes a submission would deliver, verbatim. */
  async previewText(chatId: string): Promise<string> {
    return (await this.request(`/chats/${chatId}/preview`)).text();
  }

  async deleteUrl(chatId: string, index: number): Promise<ChatPayload> {
    return (
      await this.request(`/chats/${chatId}/urls/${index}`, { method: "DELETE" })
    ).json();
  }

  async submit(chatId: string): Promise<Receipt> {
    return (
      await this.request(`/chats/${chatId}/submit`, { method: "POST" })
    ).json();
  }

  async importFile(file: Blob, name: string): Promise<ChatSummary> {
    const form = new FormData();
    form.append("file", file, name);
    return (
      await this.request("/chats", { method: "POST", body: form })
    ).json();
  }
}
