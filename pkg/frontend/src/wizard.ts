// Creation-flow state machine: story prompt, passphrase with live policy
// feedback, mnemonic cue, done. Framework-free so it can be unit tested
// in plain node; the DOM layer just renders snapshots of this object.

import type { ApiClient, PolicyReport } from "./api.js";
import { feedbackModel, type FeedbackModel } from "./policyFeedback.js";

export type WizardStep = "story" | "passphrase" | "cue" | "done";

export type Cancel = () => void;
export type Scheduler = (fn: () => void, ms: number) => Cancel;

const defaultScheduler: Scheduler = (fn, ms) => {
  const id = setTimeout(fn, ms);
  return () => clearTimeout(id);
};

export const OFFLINE_BANNER =
  "Cannot reach the service right now; feedback below may be out of date.";

export interface WizardOptions {
  api: Pick<ApiClient, "check" | "createAccount">;
  debounceMs?: number;
  schedule?: Scheduler;
  onChange?: () => void;
}

export class Wizard {
  step: WizardStep = "story";
  username = "";
  story = "";
  passphrase = "";
  cue = "";
  banner: string | null = null;
  /** latest applied policy report, if any */
  report: PolicyReport | null = null;
  /** the exact text `report` was computed for */
  reportedPhrase: string | null = null;
  checking = false;
  strengthBits: number | null = null;

  private readonly api: WizardOptions["api"];
  private readonly debounceMs: number;
  private readonly schedule: Scheduler;
  private readonly onChange: () => void;
  private cancelPending: Cancel | null = null;
  private seq = 0;

  constructor(options: WizardOptions) {
    this.api = options.api;
    this.debounceMs = options.debounceMs ?? 300;
    this.schedule = options.schedule ?? defaultScheduler;
    this.onChange = options.onChange ?? (() => {});
  }

  // ---- story step ----

  setUsername(name: string) {
    this.username = name;
    this.notify();
  }

  setStory(text: string) {
    this.story = text;
    this.notify();
  }

  get canLeaveStory(): boolean {
    return this.step === "story" && this.username.trim().length > 0;
  }

  beginPassphrase() {
    if (!this.canLeaveStory) return;
    this.step = "passphrase";
    this.notify();
  }

  // ---- passphrase step ----

  setPassphrase(text: string) {
    this.passphrase = text;
    this.cancelPending?.();
    this.cancelPending = this.schedule(() => {
      this.cancelPending = null;
      void this.runCheck();
    }, this.debounceMs);
    this.notify();
  }

  /** immediate check, skipping the debounce (blur, submit attempts) */
  checkNow(): Promise<void> {
    this.cancelPending?.();
    this.cancelPending = null;
    return this.runCheck();
  }

  private async runCheck(): Promise<void> {
    const phrase = this.passphrase;
    const seq = ++this.seq;
    this.checking = true;
    this.notify();
    try {
      const result = await this.api.check(phrase);
      if (seq !== this.seq) return; // a newer request was issued
      this.report = result.report;
      this.reportedPhrase = phrase;
      this.strengthBits = result.quickStrengthBits;
      this.banner = null;
    } catch {
      if (seq !== this.seq) return;
      // keep the last report; just say the service is unreachable
      this.banner = OFFLINE_BANNER;
    } finally {
      if (seq === this.seq) {
        this.checking = false;
        this.notify();
      }
    }
  }

  get feedback(): FeedbackModel | null {
    return this.report === null ? null : feedbackModel(this.report);
  }

  /**
   * True only when the latest report is acceptable AND was computed for
   * exactly the text in the box. Creation stays blocked while violations
   * are present or a newer keystroke has not been checked yet.
   */
  get canLeavePassphrase(): boolean {
    return (
      this.step === "passphrase" &&
      !this.checking &&
      this.report !== null &&
      this.report.acceptable &&
      this.reportedPhrase === this.passphrase
    );
  }

  beginCue() {
    if (!this.canLeavePassphrase) return;
    this.step = "cue";
    this.notify();
  }

  // ---- cue step ----

  setCue(text: string) {
    this.cue = text;
    this.notify();
  }

  /** the cue is mandatory, content free-form */
  get canFinish(): boolean {
    return this.step === "cue" && this.cue.trim().length > 0;
  }

  async finish(): Promise<void> {
    if (!this.canFinish) return;
    try {
      const result = await this.api.createAccount(
        this.username, this.passphrase, this.cue);
      if (result.kind === "created") {
        this.step = "done";
        this.banner = null;
      } else if (result.kind === "rejected") {
        // server re-checked and disagreed; trust it and go back
        this.step = "passphrase";
        this.report = result.report;
        this.reportedPhrase = this.passphrase;
      } else {
        this.banner = `The name "${this.username}" is already taken.`;
      }
    } catch {
      this.banner = OFFLINE_BANNER;
    }
    this.notify();
  }

  private notify() {
    this.onChange();
  }
}
