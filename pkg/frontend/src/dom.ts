// Thin rendering layer: reads Wizard/LoginForm snapshots and pokes the
// document. No decisions happen here; keep it boring.

import type { ApiClient } from "./api.js";
import { LoginForm, describe } from "./login.js";
import { Wizard } from "./wizard.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function renderFeedback(wizard: Wizard, list: HTMLElement) {
  list.textContent = "";
  const feedback = wizard.feedback;
  if (!feedback) return;
  for (const item of [...feedback.blocking, ...feedback.advisory]) {
    const li = document.createElement("li");
    li.textContent = item.message;
    li.className = item.blocking ? "violation" : "recommendation";
    li.dataset.code = item.code;
    list.appendChild(li);
  }
}

export function mount(api: ApiClient) {
  const panels = {
    story: el("step-story"),
    passphrase: el("step-passphrase"),
    cue: el("step-cue"),
    done: el("step-done"),
  };
  const banner = el("banner");
  const feedbackList = el("feedback");
  const strength = el("strength");
  const toPassphrase = el<HTMLButtonElement>("to-passphrase");
  const toCue = el<HTMLButtonElement>("to-cue");
  const finish = el<HTMLButtonElement>("finish");

  const wizard = new Wizard({
    api,
    onChange: () => {
      for (const [step, panel] of Object.entries(panels)) {
        panel.hidden = step !== wizard.step;
      }
      banner.hidden = wizard.banner === null;
      banner.textContent = wizard.banner ?? "";
      toPassphrase.disabled = !wizard.canLeaveStory;
      toCue.disabled = !wizard.canLeavePassphrase;
      finish.disabled = !wizard.canFinish;
      strength.textContent = wizard.strengthBits === null
        ? ""
        : `~${wizard.strengthBits.toFixed(1)} bits against a single-word attack`;
      renderFeedback(wizard, feedbackList);
      el("done-user").textContent = wizard.username;
    },
  });

  el<HTMLInputElement>("username").addEventListener("input", (e) =>
    wizard.setUsername((e.target as HTMLInputElement).value));
  el<HTMLTextAreaElement>("story").addEventListener("input", (e) =>
    wizard.setStory((e.target as HTMLTextAreaElement).value));
  toPassphrase.addEventListener("click", () => wizard.beginPassphrase());

  el<HTMLInputElement>("passphrase").addEventListener("input", (e) =>
    wizard.setPassphrase((e.target as HTMLInputElement).value));
  el<HTMLInputElement>("passphrase").addEventListener("blur", () =>
    void wizard.checkNow());
  toCue.addEventListener("click", () => wizard.beginCue());

  el<HTMLTextAreaElement>("cue").addEventListener("input", (e) =>
    wizard.setCue((e.target as HTMLTextAreaElement).value));
  finish.addEventListener("click", () => void wizard.finish());

  const loginOutcome = el("login-outcome");
  const login = new LoginForm(api, () => {
    loginOutcome.textContent = describe(login.view);
    loginOutcome.dataset.status = login.view.status;
  });
  el<HTMLButtonElement>("login-submit").addEventListener("click", () => {
    void login.submit(
      el<HTMLInputElement>("login-username").value,
      el<HTMLInputElement>("login-passphrase").value);
  });

  return { wizard, login };
}
