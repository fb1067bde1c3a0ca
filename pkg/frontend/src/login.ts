// Login form model. The one rendering rule that matters: a rejection
// reveals nothing beyond the fact of rejection, while a tolerant
// acceptance tells the user how many corrections were applied.

import type { ApiClient } from "./api.js";

export type LoginView =
  | { status: "idle" }
  | { status: "pending" }
  | { status: "accepted"; corrections: number }
  | { status: "rejected" }
  | { status: "unknown-user" }
  | { status: "error"; message: string };

export function describe(view: LoginView): string {
  switch (view.status) {
    case "idle":
      return "";
    case "pending":
      return "Checking...";
    case "accepted":
      return view.corrections === 0
        ? "Accepted."
        : `Accepted with ${view.corrections} correction` +
          `${view.corrections === 1 ? "" : "s"}.`;
    case "rejected":
      return "Not accepted.";
    case "unknown-user":
      return "No such account.";
    case "error":
      return view.message;
  }
}

export class LoginForm {
  view: LoginView = { status: "idle" };

  private readonly api: Pick<ApiClient, "login">;
  private readonly onChange: () => void;

  constructor(api: Pick<ApiClient, "login">, onChange: () => void = () => {}) {
    this.api = api;
    this.onChange = onChange;
  }

  async submit(username: string, passphrase: string): Promise<LoginView> {
    this.view = { status: "pending" };
    this.onChange();
    try {
      const result = await this.api.login(username, passphrase);
      if (result.kind === "unknown-user") {
        this.view = { status: "unknown-user" };
      } else if (result.accepted) {
        this.view = { status: "accepted", corrections: result.editDistance };
      } else {
        // deliberately drop the distance detail here
        this.view = { status: "rejected" };
      }
    } catch {
      this.view = { status: "error",
                    message: "Cannot reach the service right now." };
    }
    this.onChange();
    return this.view;
  }
}
