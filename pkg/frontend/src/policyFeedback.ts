// Maps machine finding codes to the guideline wording shown to users.
// Every known code has exactly one message; unknown codes fall back to
// whatever the server said so new rules degrade gracefully.

import type { Finding, PolicyReport } from "./api.js";

export const GUIDELINES: Record<string, string> = {
  WORD_COUNT: "At least 7 words in length",
  PROPER_NOUN:
    "Use at least one proper noun (i.e., names, places, things) " +
    "such as 'McDonalds' or 'ThinkPad'",
  BLACKLISTED_NGRAM:
    "Not including sequences of common three word phrases " +
    "(e.g., 'it is a' or 'all of it')",
  EMPTY_PHRASE: "Enter a passphrase",
  WORD_LENGTH: "Use whole words, not single characters",
  NO_SLANG:
    "Use slang or other words not found in a dictionary " +
    "(e.g., 'bazinga' or 'wazzup')",
  COMMON_BIGRAMS:
    "Several adjacent word pairs are very common; rearranging helps",
};

export interface FeedbackItem {
  code: string;
  message: string;
  blocking: boolean;
  /** server-side detail lines, one per finding with this code */
  details: string[];
}

export interface FeedbackModel {
  blocking: FeedbackItem[];
  advisory: FeedbackItem[];
  acceptable: boolean;
}

function collapse(findings: Finding[], blocking: boolean): FeedbackItem[] {
  const byCode = new Map<string, FeedbackItem>();
  for (const finding of findings) {
    const existing = byCode.get(finding.code);
    if (existing) {
      existing.details.push(finding.message);
      continue;
    }
    byCode.set(finding.code, {
      code: finding.code,
      message: GUIDELINES[finding.code] ?? finding.message,
      blocking,
      details: [finding.message],
    });
  }
  return [...byCode.values()];
}

export function feedbackModel(report: PolicyReport): FeedbackModel {
  return {
    blocking: collapse(report.violations, true),
    advisory: collapse(report.recommendations, false),
    acceptable: report.acceptable,
  };
}
