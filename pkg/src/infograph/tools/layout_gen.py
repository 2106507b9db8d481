"""Layout generation: natural-language directive -> validated layout tree.

A layout source (LLM or offline templates) proposes DSL text; we parse and
validate it, feeding any syntax error or violation report back to the source
for exactly one retry before failing.
"""

from __future__ import annotations

import os
from typing import Protocol, Sequence

from ..dsl import LayoutError, LayoutTree, format_num, parse_layout, validate_layout

GRAMMAR_GUIDE = """\
A layout is one nested tuple expression over the unit square.
Node forms:
  (C,x,y,w,h,[item,item,...])   spatial region; items are more C or G nodes (at least one)
  (G,x,y,w,h,[slot,slot,...])   element group; items are slots only
  (type,x,y,w,h)                slot; type is one of title,image,icon,headline,content
All numbers are decimals in [0,1], relative to the parent region, with
x+w <= 1 and y+h <= 1. The outermost node must be exactly (C,0,0,1,1,[...]).
Rules: sibling regions must not overlap by more than 5% of the smaller one;
at most one title slot in the whole layout; at most one icon, one headline,
and one content slot per group; no empty groups.
Answer with the bare expression only: no prose, no code fences.
"""


class LayoutGenerationError(RuntimeError):
    """Source could not produce a valid layout within the retry budget."""

    def __init__(self, detail: str, last_report: str = ""):
        self.last_report = last_report
        super().__init__(detail)


class LayoutSource(Protocol):
    def suggest(self, instruction: str, grammar: str, feedback: str | None = None) -> str: ...


def generate_layout(instruction: str, source: LayoutSource) -> LayoutTree:
    """Ask the source for DSL text and return the parsed, validated tree."""
    if not instruction:
        raise ValueError("instruction must be non-empty")
    feedback = None
    last_report = ""
    for _ in range(2):
        text = source.suggest(instruction, GRAMMAR_GUIDE, feedback=feedback)
        try:
            tree = parse_layout(text.strip())
        except LayoutError as exc:
            last_report = str(exc)
            feedback = f"Your layout did not parse: {last_report}"
            continue
        report = validate_layout(tree)
        if report.ok:
            return tree
        last_report = report.summary()
        feedback = f"Your layout violates the rules: {last_report}"
    raise LayoutGenerationError(
        f"no valid layout after retry: {last_report}", last_report=last_report
    )


class ScriptedLayoutSource:
    """Returns pre-recorded DSL strings in order; for tests and fixtures."""

    def __init__(self, answers: Sequence[str]):
        self._answers = list(answers)
        self._pos = 0

    def suggest(self, instruction, grammar, feedback=None) -> str:
        if self._pos >= len(self._answers):
            raise LayoutGenerationError("scripted layout source exhausted")
        answer = self._answers[self._pos]
        self._pos += 1
        return answer


# Offline template library. Each template is canonical DSL text; keys are
# matched as substrings of the lowercased instruction.

_ROW = "(G,0,{y},1,{h},[(icon,0.02,0.15,0.12,0.7),(headline,0.18,0.1,0.78,0.3),(content,0.18,0.45,0.78,0.5)])"
_HEADER = "(G,0,0,1,0.14,[(title,0.05,0.1,0.9,0.8)])"


def _body(inner: list[str]) -> str:
    return "(C,0,0,1,1,[" + _HEADER + ",(C,0,0.16,1,0.84,[" + ",".join(inner) + "])])"


def _rows_template(n: int) -> str:
    gap = 0.02
    h = round((1 - gap * (n - 1)) / n, 4)
    rows = []
    for i in range(n):
        y = round(i * (h + gap), 4)
        rows.append(_ROW.format(y=format_num(y), h=format_num(h)))
    return _body(rows)


def _columns_template(n: int) -> str:
    gap = 0.02
    w = round((1 - gap * (n - 1)) / n, 4)
    cols = []
    for i in range(n):
        x = round(i * (w + gap), 4)
        cols.append(
            f"(G,{format_num(x)},0,{format_num(w)},1,"
            "[(icon,0.25,0.02,0.5,0.2),(headline,0.05,0.26,0.9,0.12),(content,0.05,0.42,0.9,0.54)])"
        )
    return _body(cols)


WAVED_TEMPLATE = (
    "(C,0,0,1,1,["
    "(G,0,0,1,0.14,[(title,0.05,0.1,0.9,0.8)]),"
    "(C,0,0.16,1,0.84,["
    "(G,0.01,0.08,0.26,0.84,[(image,0.02,0.02,0.96,0.96)]),"
    "(C,0.3,0,0.7,1,["
    "(G,0.01,0.05,0.3,0.55,[(icon,0.3,0.02,0.4,0.25),(headline,0.05,0.32,0.9,0.18),(content,0.05,0.55,0.9,0.42)]),"
    "(G,0.35,0.4,0.3,0.55,[(icon,0.3,0.02,0.4,0.25),(headline,0.05,0.32,0.9,0.18),(content,0.05,0.55,0.9,0.42)]),"
    "(G,0.69,0.05,0.3,0.55,[(icon,0.3,0.02,0.4,0.25),(headline,0.05,0.32,0.9,0.18),(content,0.05,0.55,0.9,0.42)])"
    "])])])"
)

_TEMPLATES: list[tuple[str, str]] = [
    ("waved", WAVED_TEMPLATE),
    ("wave", WAVED_TEMPLATE),
    ("three rows", _rows_template(3)),
    ("3 rows", _rows_template(3)),
    ("four rows", _rows_template(4)),
    ("4 rows", _rows_template(4)),
    ("two rows", _rows_template(2)),
    ("2 rows", _rows_template(2)),
    ("rows", _rows_template(3)),
    ("three columns", _columns_template(3)),
    ("3 columns", _columns_template(3)),
    ("columns", _columns_template(3)),
    ("grid", _columns_template(2)),
]


class RuleBasedLayoutSource:
    """Picks the first template whose key occurs in the instruction."""

    def suggest(self, instruction, grammar, feedback=None) -> str:
        lowered = instruction.lower()
        for key, template in _TEMPLATES:
            if key in lowered:
                return template
        return WAVED_TEMPLATE


class RemoteLayoutSource:
    """LLM-backed source; the grammar guide rides along in the system prompt."""

    def __init__(self, endpoint: str | None = None, api_key: str | None = None,
                 model: str | None = None, post=None, timeout: float = 60.0):
        self.endpoint = (endpoint or os.environ.get("GM_LLM_ENDPOINT", "")).rstrip("/")
        self.api_key = api_key or os.environ.get("GM_LLM_KEY", "")
        self.model = model or os.environ.get("GM_LLM_MODEL", "gpt-4")
        self.timeout = timeout
        if post is None:
            import requests

            post = requests.post
        self._post = post

    def suggest(self, instruction, grammar, feedback=None) -> str:
        messages = [
            {"role": "system", "content": grammar},
            {"role": "user", "content": instruction},
        ]
        if feedback:
            messages.append({"role": "user", "content": feedback})
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        resp = self._post(
            f"{self.endpoint}/chat/completions",
            json={"model": self.model, "messages": messages},
            headers=headers,
            timeout=self.timeout,
        )
        resp.raise_for_status()
        return resp.json()["choices"][0]["message"]["content"]
