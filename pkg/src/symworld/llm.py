"""Chat-completion client and a scripted stand-in for offline runs.

This is the only module that talks to the network.
"""

from __future__ import annotations

import json
import logging
import os
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Protocol, Sequence

import httpx

from .core import ConfigurationError, SymWorldError

log = logging.getLogger(__name__)

API_KEY_ENV = "SYMWORLD_API_KEY"
RETRYABLE_STATUS = {408, 409, 429, 500, 502, 503, 504}


class LLMError(SymWorldError):
    pass


class TransportError(LLMError):
    pass


class ApiError(LLMError):
    def __init__(self, status: int, body: str):
        super().__init__(f"HTTP {status}: {body[:200]}")
        self.status = status
        self.body = body[:200]


class MockExhausted(LLMError):
    pass


@dataclass(frozen=True)
class ChatMessage:
    role: str  # system | user | assistant
    content: str


class LLM(Protocol):
    def complete(self, messages: Sequence[ChatMessage]) -> str: ...


@dataclass
class LLMConfig:
    endpoint: str = "https://api.openai.com/v1"
    model: str = "gpt-3.5-turbo"
    temperature: float = 0.0
    max_tokens: int = 64
    timeout: float = 30.0
    retries: int = 3
    backoff: float = 1.0
    api_key: str | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.retries < 0:
            raise ConfigurationError("retries must be >= 0")
        if self.api_key is None:
            self.api_key = os.environ.get(API_KEY_ENV) or None


def request_body(config: LLMConfig, messages: Sequence[ChatMessage]) -> dict:
    return {
        "model": config.model,
        "messages": [{"role": m.role, "content": m.content} for m in messages],
        "temperature": config.temperature,
        "max_tokens": config.max_tokens,
    }


class ChatClient:
    """Blocking client for ``POST <endpoint>/chat/completions``.

    Transport failures and rate-limit/server statuses are retried with
    exponential backoff; other non-2xx statuses fail immediately.
    """

    def __init__(self, config: LLMConfig, *, transport: httpx.BaseTransport | None = None, sleep=time.sleep):
        if not config.api_key:
            raise ConfigurationError(f"no API credential: set {API_KEY_ENV}")
        self.config = config
        self._sleep = sleep
        self._http = httpx.Client(
            transport=transport,
            timeout=config.timeout,
            headers={"Authorization": f"Bearer {config.api_key}"},
        )

    @property
    def url(self) -> str:
        return self.config.endpoint.rstrip("/") + "/chat/completions"

    def close(self) -> None:
        self._http.close()

    def complete(self, messages: Sequence[ChatMessage]) -> str:
        if not messages:
            raise ValueError("messages must be non-empty")
        body = request_body(self.config, messages)
        attempts = self.config.retries + 1
        for attempt in range(attempts):
            last = attempt == attempts - 1
            try:
                resp = self._http.post(self.url, json=body)
            except httpx.TransportError as exc:
                if last:
                    raise TransportError(f"{type(exc).__name__}: {exc}") from exc
                log.warning("transport error (%s), retrying", exc)
            else:
                if resp.status_code < 300:
                    return _first_choice(resp)
                if resp.status_code not in RETRYABLE_STATUS or last:
                    raise ApiError(resp.status_code, resp.text)
                log.warning("HTTP %d, retrying", resp.status_code)
            self._sleep(self.config.backoff * 2**attempt)
        raise AssertionError("unreachable")


def _first_choice(resp: httpx.Response) -> str:
    try:
        return resp.json()["choices"][0]["message"]["content"] or ""
    except (ValueError, KeyError, IndexError, TypeError) as exc:
        raise ApiError(resp.status_code, f"malformed completion: {resp.text}") from exc


def complete(config: LLMConfig, messages: Sequence[ChatMessage], **client_options) -> str:
    client = ChatClient(config, **client_options)
    try:
        return client.complete(messages)
    finally:
        client.close()


class ScriptedMock:
    """Replays canned replies in order, ignoring the prompts.

    On exhaustion it either repeats the last reply forever or raises
    MockExhausted (``on_exhaust="error"``).
    """

    def __init__(self, replies: Iterable[str], on_exhaust: str = "repeat"):
        if on_exhaust not in ("repeat", "error"):
            raise ValueError("on_exhaust must be 'repeat' or 'error'")
        self.replies = list(replies)
        self.on_exhaust = on_exhaust
        self.calls: list[list[ChatMessage]] = []
        self._lock = threading.Lock()

    def complete(self, messages: Sequence[ChatMessage]) -> str:
        with self._lock:
            i = len(self.calls)
            self.calls.append(list(messages))
        if i < len(self.replies):
            return self.replies[i]
        if self.on_exhaust == "error" or not self.replies:
            raise MockExhausted(f"script of {len(self.replies)} replies exhausted")
        return self.replies[-1]


def scripted_mock(replies: Iterable[str], on_exhaust: str = "repeat") -> ScriptedMock:
    return ScriptedMock(replies, on_exhaust)


# -- mock script files ------------------------------------------------------

def oracle_script(trace) -> list[str]:
    """Replies that make an LLM agent replay ``trace`` action for action."""
    return list(trace.actions)


def write_mock_script(traces, path: str | Path) -> None:
    """One JSON object per reply, keyed by episode so one file serves a whole run."""
    with open(path, "w", encoding="utf-8") as fh:
        for trace in traces:
            for reply in oracle_script(trace):
                fh.write(json.dumps({"task": trace.task, "seed": trace.seed, "reply": reply}) + "\n")


def read_mock_script(path: str | Path) -> dict[tuple[str, int] | None, list[str]]:
    """Load a JSONL mock script.

    Lines are either bare JSON strings or objects with a ``reply`` key and,
    optionally, ``task`` and ``seed``. Unkeyed replies are collected under
    ``None`` and shared by every episode.
    """
    scripts: dict[tuple[str, int] | None, list[str]] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"{path}:{lineno}: {exc}") from None
        if isinstance(rec, str):
            key, reply = None, rec
        elif isinstance(rec, dict) and isinstance(rec.get("reply"), str):
            key = (rec["task"], int(rec["seed"])) if "task" in rec and "seed" in rec else None
            reply = rec["reply"]
        else:
            raise ConfigurationError(f"{path}:{lineno}: expected a string or an object with 'reply'")
        scripts.setdefault(key, []).append(reply)
    return scripts
