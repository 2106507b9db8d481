"""Tool-augmented dispatcher.

Given a conversation and a registry of tool signatures, a pluggable provider
decides whether to chat or to call a tool; the dispatcher validates the
arguments, executes the tool, and appends the outcome to the conversation.
Providers: scripted fixture replay, keyword rules for offline demos, or a
remote LLM speaking an OpenAI-style function-calling protocol.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass
from typing import Callable, Protocol, Sequence

from .model import Conversation, DesignResource, Message

logger = logging.getLogger(__name__)

PARAM_TYPES = ("string", "enum", "number")


class DuplicateToolError(ValueError):
    pass


class ProviderError(RuntimeError):
    """The decision provider itself failed (network, fixture exhausted...)."""


@dataclass(frozen=True)
class ParamSpec:
    """One tool parameter with explanatory text and exemplary values.

    Examples are mandatory: they are what lets a model pick sensible
    arguments, so an empty example list is a registration error.
    """

    name: str
    value_type: str = "string"
    required: bool = False
    description: str = ""
    examples: tuple = ()
    enum_values: tuple = ()

    def __post_init__(self) -> None:
        if self.value_type not in PARAM_TYPES:
            raise ValueError(f"param {self.name}: unknown type {self.value_type!r}")
        if not self.examples:
            raise ValueError(f"param {self.name}: at least one example is required")
        if self.value_type == "enum" and not self.enum_values:
            raise ValueError(f"param {self.name}: enum type needs enum_values")


@dataclass(frozen=True)
class ToolSignature:
    name: str
    description: str
    params: tuple[ParamSpec, ...] = ()

    def __post_init__(self) -> None:
        names = [p.name for p in self.params]
        if len(names) != len(set(names)):
            raise ValueError(f"tool {self.name}: duplicate param names")

    def param(self, name: str) -> ParamSpec | None:
        for p in self.params:
            if p.name == name:
                return p
        return None


@dataclass(frozen=True)
class ToolCall:
    tool_name: str
    args: dict


@dataclass(frozen=True)
class ProviderDecision:
    """Either a chat reply or a single tool call, never both."""

    variant: str  # "chat" | "tool_call"
    chat_text: str = ""
    call: ToolCall | None = None

    @staticmethod
    def chat(text: str) -> "ProviderDecision":
        return ProviderDecision("chat", chat_text=text)

    @staticmethod
    def tool_call(tool_name: str, args: dict) -> "ProviderDecision":
        return ProviderDecision("tool_call", call=ToolCall(tool_name, dict(args)))

    @staticmethod
    def from_json(data: dict) -> "ProviderDecision":
        if data.get("variant") == "chat":
            return ProviderDecision.chat(data.get("chat_text", ""))
        if data.get("variant") == "tool_call":
            call = data.get("call") or {}
            return ProviderDecision.tool_call(call["tool_name"], call.get("args", {}))
        raise ValueError(f"bad decision payload: {data!r}")


@dataclass(frozen=True)
class ArgIssue:
    param: str
    reason: str  # missing | unknown | not-in-enum | not-a-number | not-a-string


@dataclass(frozen=True)
class DispatchError:
    code: str  # unknown_tool | arg_validation | tool_execution
    detail: str
    param: str | None = None


@dataclass
class DispatchOutcome:
    decision: ProviderDecision
    resource: DesignResource | None = None
    error: DispatchError | None = None


Executor = Callable[[dict], DesignResource]


class DecisionProvider(Protocol):
    def decide(
        self, history: Sequence[Message], signatures: Sequence[ToolSignature]
    ) -> ProviderDecision: ...


@dataclass
class _Entry:
    signature: ToolSignature
    executor: Executor


class ToolRegistry:
    """Named tool set; enumeration preserves registration order."""

    def __init__(self) -> None:
        self._entries: dict[str, _Entry] = {}

    def register(self, signature: ToolSignature, executor: Executor) -> "ToolRegistry":
        if signature.name in self._entries:
            raise DuplicateToolError(f"tool {signature.name!r} already registered")
        self._entries[signature.name] = _Entry(signature, executor)
        return self

    def get(self, name: str) -> _Entry | None:
        return self._entries.get(name)

    def signatures(self) -> list[ToolSignature]:
        return [e.signature for e in self._entries.values()]

    def names(self) -> list[str]:
        return list(self._entries)

    def __len__(self) -> int:
        return len(self._entries)


def validate_args(signature: ToolSignature, args: dict) -> ArgIssue | None:
    """First problem with the args, or None when they satisfy the signature.

    Checks run in a fixed order (required params in signature order, then
    unknown keys, then value types) so failures are deterministic.
    """
    for p in signature.params:
        if p.required and p.name not in args:
            return ArgIssue(p.name, "missing")
    for key in args:
        if signature.param(key) is None:
            return ArgIssue(key, "unknown")
    for key, value in args.items():
        p = signature.param(key)
        assert p is not None
        if p.value_type == "enum":
            if value not in p.enum_values:
                return ArgIssue(key, "not-in-enum")
        elif p.value_type == "number":
            if isinstance(value, bool) or not _parses_as_number(value):
                return ArgIssue(key, "not-a-number")
        elif not isinstance(value, str):
            return ArgIssue(key, "not-a-string")
    return None


def _parses_as_number(value) -> bool:
    if isinstance(value, (int, float)):
        return True
    if isinstance(value, str):
        try:
            float(value)
            return True
        except ValueError:
            return False
    return False


def coerce_args(signature: ToolSignature, args: dict) -> dict:
    """Convert numeric strings to numbers; assumes validate_args passed."""
    out = dict(args)
    for key, value in out.items():
        p = signature.param(key)
        if p is not None and p.value_type == "number" and isinstance(value, str):
            out[key] = float(value)
    return out


def dispatch(
    conversation: Conversation,
    registry: ToolRegistry,
    provider: DecisionProvider,
) -> DispatchOutcome:
    """Run one turn: consult the provider, then chat or execute a tool.

    The conversation only ever grows; every path (including failures)
    appends at least one message.
    """
    if not conversation.messages or conversation.messages[-1].role != "user":
        raise ValueError("dispatch requires the conversation to end with a user message")

    signatures = registry.signatures()
    decision = provider.decide(conversation.messages, signatures)

    if decision.variant == "chat":
        conversation.append(Message(role="assistant", text=decision.chat_text))
        return DispatchOutcome(decision=decision)

    call = decision.call
    assert call is not None
    entry = registry.get(call.tool_name)
    if entry is None:
        logger.warning("provider requested unregistered tool %r", call.tool_name)
        conversation.append(
            Message(
                role="assistant",
                text=f"Sorry, I do not have a tool named {call.tool_name!r}. "
                "Could you rephrase your request?",
            )
        )
        return DispatchOutcome(
            decision=decision,
            error=DispatchError("unknown_tool", f"no tool {call.tool_name!r}"),
        )

    issue = validate_args(entry.signature, call.args)
    if issue is not None:
        # One retry with the validation report in the provider's context.
        report = (
            f"The call to {call.tool_name} was rejected: parameter "
            f"{issue.param!r} is {issue.reason}. Please correct the arguments."
        )
        retry_history = list(conversation.messages) + [Message(role="tool", text=report)]
        decision = provider.decide(retry_history, signatures)
        if decision.variant == "chat":
            conversation.append(Message(role="assistant", text=decision.chat_text))
            return DispatchOutcome(decision=decision)
        call = decision.call
        assert call is not None
        entry = registry.get(call.tool_name)
        if entry is None:
            conversation.append(
                Message(role="assistant", text=f"Sorry, I do not have a tool named {call.tool_name!r}.")
            )
            return DispatchOutcome(
                decision=decision,
                error=DispatchError("unknown_tool", f"no tool {call.tool_name!r}"),
            )
        issue = validate_args(entry.signature, call.args)
        if issue is not None:
            conversation.append(
                Message(
                    role="assistant",
                    text=f"I could not run {call.tool_name}: parameter "
                    f"{issue.param!r} is {issue.reason}.",
                )
            )
            return DispatchOutcome(
                decision=decision,
                error=DispatchError("arg_validation", issue.reason, param=issue.param),
            )

    try:
        resource = entry.executor(coerce_args(entry.signature, call.args))
    except Exception as exc:  # executor failures must not corrupt the conversation
        logger.exception("tool %s failed", call.tool_name)
        conversation.append(
            Message(role="assistant", text=f"The {call.tool_name} tool failed: {exc}")
        )
        return DispatchOutcome(
            decision=decision,
            error=DispatchError("tool_execution", str(exc)),
        )

    conversation.append(
        Message(
            role="tool",
            text=f"{call.tool_name} produced resource {resource.resource_id}",
            resources=[resource],
        )
    )
    return DispatchOutcome(decision=decision, resource=resource)


# ---------------------------------------------------------------------------
# Providers
# ---------------------------------------------------------------------------


class ScriptedProvider:
    """Replays a fixture: a JSON list of {expect_last_user_contains, decision}.

    Entries are consumed in order; each asserts that the expected substring
    occurs in the latest user message, which catches fixture/transcript
    drift early.
    """

    def __init__(self, entries: Sequence[dict]):
        self._entries = list(entries)
        self._pos = 0

    @classmethod
    def from_file(cls, path: str) -> "ScriptedProvider":
        with open(path, encoding="utf-8") as fh:
            return cls(json.load(fh))

    def decide(self, history, signatures) -> ProviderDecision:
        if self._pos >= len(self._entries):
            raise ProviderError("scripted fixture exhausted")
        entry = self._entries[self._pos]
        self._pos += 1
        last_user = next((m.text for m in reversed(history) if m.role == "user"), "")
        expect = entry.get("expect_last_user_contains", "")
        if expect and expect.lower() not in last_user.lower():
            raise ProviderError(
                f"fixture entry {self._pos} expected {expect!r} in last user "
                f"message, got {last_user!r}"
            )
        return ProviderDecision.from_json(entry["decision"])


class RuleBasedProvider:
    """Keyword rules for offline demos; deterministic and deliberately naive."""

    _FILLERS = ("please", "now", "again", "then")

    def decide(self, history, signatures) -> ProviderDecision:
        text = next((m.text for m in reversed(history) if m.role == "user"), "")
        lowered = text.lower()

        if "layout" in lowered:
            return ProviderDecision.tool_call("generate_layout", {"instruction": text})
        if "icon" in lowered:
            return ProviderDecision.tool_call(
                "search_icons", {"keyword": self._tail(lowered, ["icon of", "icon for", "icons of", "icons for", "icon"])}
            )
        if "background" in lowered:
            caption = self._tail(lowered, ["background of", "background showing", "background"])
            return ProviderDecision.tool_call(
                "background_figure", {"caption": caption or "an abstract scene"}
            )
        for marker in ("grayscale", "invert", "blur", "make it"):
            if marker in lowered:
                return ProviderDecision.tool_call("edit_image", {"instruction": text})
        for marker in ("draw", "picture of", "image of", "sketch"):
            if marker in lowered:
                return ProviderDecision.tool_call(
                    "pivot_figure", {"caption": self._tail(lowered, [marker])}
                )
        for marker in ("collect", "information about", "tell me about", "facts about"):
            if marker in lowered:
                args: dict = {"topic": self._tail(lowered, [marker, "information about"])}
                hint = self._first_int(lowered)
                if hint is not None and 1 <= hint <= 8:
                    args["bullet_count"] = hint
                return ProviderDecision.tool_call("collect_information", args)
        return ProviderDecision.chat(
            "I can help design an infographic: ask me to collect information, "
            "draw images, search icons, or generate a layout."
        )

    def _tail(self, text: str, markers: list[str]) -> str:
        for marker in markers:
            idx = text.find(marker)
            if idx >= 0:
                tail = self._trim(text[idx + len(marker) :])
                if tail:
                    return tail
        return self._trim(text)

    def _trim(self, text: str) -> str:
        words = text.strip(" .,!?").split()
        while words and words[0] in self._FILLERS:
            words.pop(0)
        while words and words[-1] in self._FILLERS:
            words.pop()
        return " ".join(words)

    @staticmethod
    def _first_int(text: str) -> int | None:
        run = ""
        for ch in text:
            if ch.isdigit():
                run += ch
            elif run:
                break
        return int(run) if run else None


class RemoteProvider:
    """OpenAI-style function-calling client.

    Configured from GM_LLM_ENDPOINT / GM_LLM_KEY / GM_LLM_MODEL; the HTTP
    POST callable is injectable for tests.
    """

    def __init__(
        self,
        endpoint: str | None = None,
        api_key: str | None = None,
        model: str | None = None,
        post=None,
        timeout: float = 60.0,
    ):
        self.endpoint = (endpoint or os.environ.get("GM_LLM_ENDPOINT", "")).rstrip("/")
        self.api_key = api_key or os.environ.get("GM_LLM_KEY", "")
        self.model = model or os.environ.get("GM_LLM_MODEL", "gpt-4")
        self.timeout = timeout
        if post is None:
            import requests

            post = requests.post
        self._post = post
        if not self.endpoint:
            raise ProviderError("GM_LLM_ENDPOINT is not configured")

    def decide(self, history, signatures) -> ProviderDecision:
        payload = {
            "model": self.model,
            "messages": [
                {"role": "tool" if m.role == "tool" else m.role, "content": m.text}
                for m in history
            ],
            "tools": [signature_to_json_schema(sig) for sig in signatures],
        }
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        try:
            resp = self._post(
                f"{self.endpoint}/chat/completions",
                json=payload,
                headers=headers,
                timeout=self.timeout,
            )
            resp.raise_for_status()
            body = resp.json()
        except Exception as exc:
            raise ProviderError(f"LLM endpoint failed: {exc}") from exc
        message = body["choices"][0]["message"]
        tool_calls = message.get("tool_calls") or []
        if tool_calls:
            fn = tool_calls[0]["function"]
            args = fn.get("arguments", "{}")
            if isinstance(args, str):
                args = json.loads(args or "{}")
            return ProviderDecision.tool_call(fn["name"], args)
        return ProviderDecision.chat(message.get("content") or "")


def signature_to_json_schema(sig: ToolSignature) -> dict:
    """Map a signature to the function-calling tool schema, folding the
    exemplary values into each parameter description."""
    properties = {}
    required = []
    for p in sig.params:
        examples = ", ".join(repr(e) for e in p.examples)
        prop: dict = {
            "type": "number" if p.value_type == "number" else "string",
            "description": f"{p.description} Examples: {examples}.",
        }
        if p.value_type == "enum":
            prop["enum"] = list(p.enum_values)
        properties[p.name] = prop
        if p.required:
            required.append(p.name)
    return {
        "type": "function",
        "function": {
            "name": sig.name,
            "description": sig.description,
            "parameters": {
                "type": "object",
                "properties": properties,
                "required": required,
            },
        },
    }
