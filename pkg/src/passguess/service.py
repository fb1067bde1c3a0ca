"""Demo HTTP authentication service.

JSON API over the policy, matching, and estimation layers:

* ``POST /api/check`` policy-checks a candidate phrase (no side effects)
* ``POST /api/accounts`` creates an account when the policy passes
* ``POST /api/login`` verifies an attempt with error tolerance
* ``GET /api/accounts/{username}/strength`` returns guess-number estimates
* ``GET /api/accounts/{username}/cue`` returns the mnemonic cue (off by
  default; enable only for demos)
* ``GET /api/health`` liveness plus store table sizes

State is an append-only JSON-lines log replayed at startup, so restarts
lose nothing. Passphrases are stored in PLAINTEXT because the whole point
is to study them; the log carries a warning record saying exactly that.
Never use this service for real authentication.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timezone

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .corpus import NgramStore
from .matching import (
    EmptyPhraseError,
    NormalizedPhrase,
    ToleranceConfig,
    normalize,
    within_tolerance,
)
from .policy import PolicyConfig, check_policy
from .ranker import RankerConfig, estimate, unigram_permutation_estimate

PLAINTEXT_WARNING = (
    "RESEARCH DEMO ONLY: this log stores passphrases in plaintext "
    "for analysis. Do not use with real credentials."
)


@dataclass
class AccountRecord:
    username: str
    passphrase: str
    cue: str
    created_at: str
    reset_count: int = 0

    @property
    def normalized(self) -> NormalizedPhrase:
        return normalize(self.passphrase)


@dataclass(frozen=True)
class LoginAttempt:
    username: str
    attempt: str
    accepted: bool
    edit_distance: int
    relative: float
    timestamp: str


class AccountLog:
    """Append-only event log with in-memory replay.

    All writes go through one lock, so concurrent handlers cannot
    interleave partial lines.
    """

    def __init__(self, data_dir: str):
        os.makedirs(data_dir, exist_ok=True)
        self.path = os.path.join(data_dir, "accounts.jsonl")
        self._lock = threading.Lock()
        self.accounts: dict[str, AccountRecord] = {}
        self.attempts: list[LoginAttempt] = []
        if os.path.exists(self.path):
            self._replay()
        else:
            self._append({"event": "warning", "notice": PLAINTEXT_WARNING})

    def _replay(self):
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                event = json.loads(line)
                kind = event.get("event")
                if kind == "create":
                    self.accounts[event["username"]] = AccountRecord(
                        username=event["username"],
                        passphrase=event["passphrase"],
                        cue=event.get("cue", ""),
                        created_at=event["createdAt"],
                        reset_count=event.get("resetCount", 0),
                    )
                elif kind == "login":
                    self.attempts.append(LoginAttempt(
                        username=event["username"],
                        attempt=event["attempt"],
                        accepted=event["accepted"],
                        edit_distance=event["editDistance"],
                        relative=event["relative"],
                        timestamp=event["timestamp"],
                    ))

    def _append(self, event: dict):
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")

    def create(self, username: str, passphrase: str, cue: str,
               overwrite: bool) -> AccountRecord | None:
        """Store an account; None means the name is taken."""
        with self._lock:
            existing = self.accounts.get(username)
            if existing is not None and not overwrite:
                return None
            record = AccountRecord(
                username=username,
                passphrase=passphrase,
                cue=cue,
                created_at=_now(),
                reset_count=existing.reset_count + 1 if existing else 0,
            )
            self._append({
                "event": "create",
                "username": record.username,
                "passphrase": record.passphrase,
                "cue": record.cue,
                "createdAt": record.created_at,
                "resetCount": record.reset_count,
            })
            self.accounts[username] = record
            return record

    def record_login(self, attempt: LoginAttempt):
        with self._lock:
            self._append({
                "event": "login",
                "username": attempt.username,
                "attempt": attempt.attempt,
                "accepted": attempt.accepted,
                "editDistance": attempt.edit_distance,
                "relative": attempt.relative,
                "timestamp": attempt.timestamp,
            })
            self.attempts.append(attempt)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def create_app(store: NgramStore, data_dir: str,
               tolerance: ToleranceConfig = ToleranceConfig(),
               policy_config: PolicyConfig = PolicyConfig(),
               ranker_config: RankerConfig = RankerConfig(),
               vocab_override: int | None = None,
               enable_cue: bool = False,
               ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="passguess demo service", docs_url=None,
                  redoc_url=None)
    log = AccountLog(data_dir)
    app.state.account_log = log

    def bad_request(message):
        return JSONResponse({"detail": message}, status_code=400)

    async def read_json(request: Request):
        try:
            body = json.loads(await request.body())
        except (json.JSONDecodeError, UnicodeDecodeError):
            return None
        return body if isinstance(body, dict) else None

    def field(body, name, required=True):
        value = body.get(name)
        if value is None and not required:
            return ""
        if not isinstance(value, str) or (required and not value):
            return None
        return value

    @app.get("/api/health")
    async def health():
        return {
            "status": "ok",
            "storeCounts": {str(n): len(rows)
                            for n, rows in store.tables.items()},
        }

    @app.post("/api/check")
    async def check(request: Request):
        body = await read_json(request)
        if body is None:
            return bad_request("malformed JSON body")
        phrase = field(body, "passphrase")
        if phrase is None:
            return bad_request("passphrase must be a non-empty string")
        report = check_policy(phrase, store, policy_config)
        bits = None
        try:
            uni = unigram_permutation_estimate(phrase, store, vocab_override)
            bits = uni.unigram_bits
        except EmptyPhraseError:
            pass
        return {"report": report.to_record(), "quickStrengthBits": bits}

    @app.post("/api/accounts")
    async def create_account(request: Request):
        body = await read_json(request)
        if body is None:
            return bad_request("malformed JSON body")
        username = field(body, "username")
        passphrase = field(body, "passphrase")
        cue = field(body, "cue", required=False)
        if username is None or passphrase is None or cue is None:
            return bad_request(
                "username and passphrase must be non-empty strings")
        overwrite = bool(body.get("overwrite", False))
        report = check_policy(passphrase, store, policy_config)
        if not report.acceptable:
            return JSONResponse({"report": report.to_record()},
                                status_code=422)
        record = log.create(username, passphrase, cue, overwrite)
        if record is None:
            return JSONResponse(
                {"detail": "username already exists"}, status_code=409)
        return JSONResponse(
            {"username": record.username, "resetCount": record.reset_count},
            status_code=201)

    @app.post("/api/login")
    async def login(request: Request):
        body = await read_json(request)
        if body is None:
            return bad_request("malformed JSON body")
        username = field(body, "username")
        attempt = field(body, "passphrase")
        if username is None or attempt is None:
            return bad_request(
                "username and passphrase must be non-empty strings")
        record = log.accounts.get(username)
        if record is None:
            return JSONResponse({"detail": "unknown username"},
                                status_code=404)
        stored = record.normalized
        try:
            result = within_tolerance(stored, normalize(attempt), tolerance)
            accepted, distance, relative = (
                result.accepted, result.distance, result.relative)
        except EmptyPhraseError:
            # nothing usable typed; maximal distance, certain rejection
            accepted = False
            distance = len(stored.canonical)
            relative = 1.0
        log.record_login(LoginAttempt(
            username=username,
            attempt=attempt,
            accepted=accepted,
            edit_distance=distance,
            relative=relative,
            timestamp=_now(),
        ))
        return {"accepted": accepted, "editDistance": distance,
                "relative": relative}

    @app.get("/api/accounts/{username}/strength")
    async def strength(username: str):
        record = log.accounts.get(username)
        if record is None:
            return JSONResponse({"detail": "unknown username"},
                                status_code=404)
        est = estimate(record.passphrase, store, ranker_config,
                       vocab_override)
        payload = est.to_record()
        payload["username"] = username
        return payload

    @app.get("/api/accounts/{username}/cue")
    async def cue(username: str):
        if not enable_cue:
            return JSONResponse({"detail": "not found"}, status_code=404)
        record = log.accounts.get(username)
        if record is None:
            return JSONResponse({"detail": "unknown username"},
                                status_code=404)
        return {"username": username, "cue": record.cue}

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
