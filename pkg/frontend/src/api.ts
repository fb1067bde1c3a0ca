// Typed client for the demo service's JSON API. Pure wire-level code:
// no interpretation beyond mapping status codes to tagged results.

export interface Finding {
  code: string;
  message: string;
  evidence: Record<string, unknown>;
}

export interface PolicyReport {
  acceptable: boolean;
  violations: Finding[];
  recommendations: Finding[];
  wordCount: number;
  properNounTokens: string[];
  slangTokens: string[];
  nonDictionaryTokens: string[];
  blacklistedWindows: Record<string, unknown>[];
}

export interface CheckResponse {
  report: PolicyReport;
  quickStrengthBits: number | null;
}

export type CreateResult =
  | { kind: "created"; username: string; resetCount: number }
  | { kind: "rejected"; report: PolicyReport }
  | { kind: "taken" };

export type LoginResult =
  | { kind: "result"; accepted: boolean; editDistance: number }
  | { kind: "unknown-user" };

export interface StrengthRecord {
  username: string;
  lowBits: number | null;
  highBits: number | null;
  unigramBits: number | null;
  unfoundWords: string[];
}

export interface ApiClient {
  health(): Promise<{ status: string }>;
  check(passphrase: string): Promise<CheckResponse>;
  createAccount(username: string, passphrase: string, cue: string,
                overwrite?: boolean): Promise<CreateResult>;
  login(username: string, passphrase: string): Promise<LoginResult>;
  strength(username: string): Promise<StrengthRecord>;
}

async function post(fetchFn: typeof fetch, url: string, body: unknown) {
  return fetchFn(url, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
}

async function expectJson(response: Response): Promise<unknown> {
  if (!response.ok) {
    throw new Error(`service returned ${response.status}`);
  }
  return response.json();
}

export function createApi(baseUrl = "",
                          fetchFn: typeof fetch = fetch): ApiClient {
  const url = (path: string) => `${baseUrl}${path}`;
  return {
    async health() {
      return await expectJson(await fetchFn(url("/api/health"))) as
        { status: string };
    },

    async check(passphrase) {
      const response = await post(fetchFn, url("/api/check"), { passphrase });
      return await expectJson(response) as CheckResponse;
    },

    async createAccount(username, passphrase, cue, overwrite = false) {
      const response = await post(fetchFn, url("/api/accounts"),
                                  { username, passphrase, cue, overwrite });
      if (response.status === 422) {
        const body = await response.json() as { report: PolicyReport };
        return { kind: "rejected", report: body.report };
      }
      if (response.status === 409) {
        return { kind: "taken" };
      }
      const body = await expectJson(response) as
        { username: string; resetCount: number };
      return { kind: "created", ...body };
    },

    async login(username, passphrase) {
      const response = await post(fetchFn, url("/api/login"),
                                  { username, passphrase });
      if (response.status === 404) {
        return { kind: "unknown-user" };
      }
      const body = await expectJson(response) as
        { accepted: boolean; editDistance: number };
      return { kind: "result", accepted: body.accepted,
               editDistance: body.editDistance };
    },

    async strength(username) {
      const response = await fetchFn(
        url(`/api/accounts/${encodeURIComponent(username)}/strength`));
      return await expectJson(response) as StrengthRecord;
    },
  };
}
