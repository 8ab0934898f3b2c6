import {
  AddSource,
  ClientEvent,
  EgoPayload,
  FloorDetailPayload,
  FloorPayload,
  GlobalPayload,
  LinkPayload,
  PersonPayload,
  SuggestionPayload,
  ViewName,
} from "./types.js";

/** Everything the views need from the server, mockable in tests. */
export interface ApiClient {
  myEgo(): Promise<EgoPayload>;
  globalView(): Promise<GlobalPayload>;
  suggestions(): Promise<SuggestionPayload[]>;
  searchPeople(query: string): Promise<PersonPayload[]>;
  createLink(
    a: string,
    b: string,
    source?: AddSource,
    view?: ViewName,
  ): Promise<LinkPayload>;
  confirmLink(linkId: string): Promise<LinkPayload>;
  deleteLink(linkId: string): Promise<LinkPayload>;
  floors(): Promise<FloorPayload[]>;
  floorDetail(floorId: string): Promise<FloorDetailPayload>;
  postEvent(event: ClientEvent): Promise<void>;
}

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.code = code;
    this.status = status;
  }
}

/** fetch-based client; the person id travels in a header on every call. */
export class HttpApi implements ApiClient {
  private readonly base: string;
  private readonly personId: string;

  constructor(personId: string, base = "") {
    this.personId = personId;
    this.base = base;
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const headers: Record<string, string> = { "X-Person-Id": this.personId };
    if (body !== undefined) {
      headers["Content-Type"] = "application/json";
    }
    const reply = await fetch(this.base + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await reply.json();
    if (!reply.ok) {
      throw new ApiError(
        reply.status,
        payload.code ?? "unknown",
        payload.message ?? reply.statusText,
      );
    }
    return payload as T;
  }

  async myEgo(): Promise<EgoPayload> {
    return this.request("GET", "/api/me/ego");
  }

  async globalView(): Promise<GlobalPayload> {
    return this.request("GET", "/api/global");
  }

  async suggestions(): Promise<SuggestionPayload[]> {
    const reply = await this.request<{ suggestions: SuggestionPayload[] }>(
      "GET",
      "/api/suggestions",
    );
    return reply.suggestions;
  }

  async searchPeople(query: string): Promise<PersonPayload[]> {
    const reply = await this.request<{ people: PersonPayload[] }>(
      "GET",
      `/api/people?q=${encodeURIComponent(query)}`,
    );
    return reply.people;
  }

  async createLink(
    a: string,
    b: string,
    source?: AddSource,
    view?: ViewName,
  ): Promise<LinkPayload> {
    // JSON.stringify drops undefined fields, so omitted source/view
    // never reach the server
    return this.request("POST", "/api/links", { a, b, source, view });
  }

  async confirmLink(linkId: string): Promise<LinkPayload> {
    return this.request("POST", `/api/links/${linkId}/confirm`);
  }

  async deleteLink(linkId: string): Promise<LinkPayload> {
    const reply = await this.request<{ deleted: LinkPayload }>(
      "DELETE",
      `/api/links/${linkId}`,
    );
    return reply.deleted;
  }

  async floors(): Promise<FloorPayload[]> {
    const reply = await this.request<{ floors: FloorPayload[] }>(
      "GET",
      "/api/physical/floors",
    );
    return reply.floors;
  }

  async floorDetail(floorId: string): Promise<FloorDetailPayload> {
    return this.request("GET", `/api/physical/floors/${floorId}`);
  }

  async postEvent(event: ClientEvent): Promise<void> {
    await this.request("POST", "/api/events", event);
  }
}

/** Call `fn` once per settled burst; used for search-as-you-type events. */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) {
      clearTimeout(timer);
    }
    timer = setTimeout(() => {
      timer = undefined;
      fn(...args);
    }, waitMs);
  };
}
