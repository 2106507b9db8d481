"""Information collection: topic -> structured title + bullet points.

The source produces JSON text (an LLM in production, a fixture table in the
stub); collect_information parses it strictly against the bundle schema,
asking the source once more with the error message before giving up.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from typing import Protocol


class SchemaError(ValueError):
    """The source's JSON does not match the bundle schema, even after retry."""

    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


@dataclass(frozen=True)
class BulletPoint:
    icon_keyword: str
    headline: str
    content: str


@dataclass(frozen=True)
class InfoBundle:
    title: str
    bullet_points: tuple[BulletPoint, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if not self.title:
            raise ValueError("bundle title must be non-empty")
        if not self.bullet_points:
            raise ValueError("bundle needs at least one bullet point")
        for i, bp in enumerate(self.bullet_points):
            if not (bp.icon_keyword and bp.headline and bp.content):
                raise ValueError(f"bullet {i} has an empty field")

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "bullet_points": [
                {"icon_keyword": b.icon_keyword, "headline": b.headline, "content": b.content}
                for b in self.bullet_points
            ],
        }


class InfoSource(Protocol):
    def fetch(self, topic: str, bullet_count: int, error_hint: str | None = None) -> str: ...


def _get_key(obj: dict, *names: str):
    for name in names:
        if name in obj:
            return obj[name]
    return None


def parse_bundle(text: str) -> InfoBundle:
    """Strictly parse source JSON into a bundle.

    Accepts both spaced and snake_case key spellings ("bullet points" /
    "bullet_points"); error paths are reported in snake_case.
    """
    payload = _extract_json(text)
    if not isinstance(payload, dict):
        raise SchemaError("$", "top level is not a JSON object")
    title = _get_key(payload, "title")
    if not isinstance(title, str) or not title.strip():
        raise SchemaError("title", "missing" if title is None else "not a non-empty string")
    bullets = _get_key(payload, "bullet points", "bullet_points")
    if bullets is None:
        raise SchemaError("bullet_points", "missing")
    if not isinstance(bullets, list) or not bullets:
        raise SchemaError("bullet_points", "must be a non-empty array")
    parsed = []
    for i, entry in enumerate(bullets):
        if not isinstance(entry, dict):
            raise SchemaError(f"bullet_points[{i}]", "not an object")
        keyword = _get_key(entry, "icon keyword", "icon_keyword")
        headline = _get_key(entry, "headline")
        content = _get_key(entry, "content")
        for name, value in (
            ("icon_keyword", keyword),
            ("headline", headline),
            ("content", content),
        ):
            if not isinstance(value, str) or not value.strip():
                raise SchemaError(
                    f"bullet_points[{i}].{name}",
                    "missing" if value is None else "not a non-empty string",
                )
        parsed.append(BulletPoint(keyword.strip(), headline.strip(), content.strip()))
    return InfoBundle(title.strip(), tuple(parsed))


def _extract_json(text: str):
    """JSON from raw text, tolerating a markdown code fence around it."""
    fenced = re.search(r"```(?:json)?\s*(.*?)\s*```", text, re.DOTALL)
    if fenced:
        text = fenced.group(1)
    start = text.find("{")
    end = text.rfind("}")
    if start >= 0 and end > start:
        text = text[start : end + 1]
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc.msg}") from exc


def collect_information(topic: str, bullet_count_hint: int, source: InfoSource) -> InfoBundle:
    """Fetch and strictly parse a bundle, with one repair retry on bad JSON."""
    if not topic:
        raise ValueError("topic must be non-empty")
    if not 1 <= bullet_count_hint <= 8:
        raise ValueError("bullet_count_hint must be in [1, 8]")
    text = source.fetch(topic, bullet_count_hint)
    try:
        return parse_bundle(text)
    except SchemaError as first:
        repaired = source.fetch(topic, bullet_count_hint, error_hint=str(first))
        return parse_bundle(repaired)


# ---------------------------------------------------------------------------
# Sources
# ---------------------------------------------------------------------------

# Fixture table for the offline stub, keyed by topic substrings. Keywords
# line up with the bundled icon set.
_FIXTURES: dict[str, dict] = {
    "ancient civilizations": {
        "title": "Ancient Civilizations",
        "bullet points": [
            {
                "icon keyword": "pyramid",
                "headline": "Egypt on the Nile",
                "content": "Monumental pyramids, hieroglyphic writing, and a state organized around the river's yearly flood.",
            },
            {
                "icon keyword": "column",
                "headline": "Classical Greece",
                "content": "City-states such as Athens pioneered drama, philosophy, and early democratic assemblies.",
            },
            {
                "icon keyword": "scroll",
                "headline": "Mesopotamian Records",
                "content": "Sumerian scribes pressed cuneiform into clay, leaving the oldest written archives.",
            },
            {
                "icon keyword": "wall",
                "headline": "Dynastic China",
                "content": "Walled cities, bronze casting, and bureaucratic rule grew along the Yellow River.",
            },
            {
                "icon keyword": "temple",
                "headline": "Sacred Architecture",
                "content": "Temples anchored civic life, from ziggurats in Ur to the Parthenon in Athens.",
            },
        ],
    },
    "climate change": {
        "title": "Climate Change",
        "bullet points": [
            {
                "icon keyword": "thermometer",
                "headline": "Rising Temperatures",
                "content": "Global mean surface temperature keeps climbing, with the warmest years on record clustered in the last decade.",
            },
            {
                "icon keyword": "iceberg",
                "headline": "Melting Ice",
                "content": "Glaciers and polar sea ice are shrinking, raising sea levels and reshaping coastlines.",
            },
            {
                "icon keyword": "wave",
                "headline": "Extreme Weather",
                "content": "Heat waves, floods, and stronger storms are becoming more frequent and more damaging.",
            },
            {
                "icon keyword": "recycle",
                "headline": "Mitigation",
                "content": "Cutting emissions, renewable energy, and circular consumption slow the warming trend.",
            },
        ],
    },
    "polar bear": {
        "title": "Polar Bears and a Warming Arctic",
        "bullet points": [
            {
                "icon keyword": "bear",
                "headline": "Apex of the Ice",
                "content": "Polar bears hunt seals from sea ice and depend on it for most of their diet.",
            },
            {
                "icon keyword": "iceberg",
                "headline": "Vanishing Habitat",
                "content": "Earlier ice break-up forces bears ashore sooner each year, shortening the hunting season.",
            },
            {
                "icon keyword": "fish",
                "headline": "Changing Diets",
                "content": "With fewer seals in reach, bears turn to poorer food sources and lose body condition.",
            },
        ],
    },
    "artificial intelligence": {
        "title": "Artificial Intelligence",
        "bullet points": [
            {
                "icon keyword": "robot",
                "headline": "Machines that Learn",
                "content": "Modern systems learn patterns from data instead of following hand-written rules.",
            },
            {
                "icon keyword": "chip",
                "headline": "Compute Hunger",
                "content": "Training frontier models consumes enormous amounts of specialized hardware.",
            },
            {
                "icon keyword": "network",
                "headline": "Everywhere Already",
                "content": "Recommendation, translation, and assistance features quietly run on learned models.",
            },
            {
                "icon keyword": "scale",
                "headline": "Governance",
                "content": "Policy makers debate how to balance innovation against safety and accountability.",
            },
        ],
    },
    "space": {
        "title": "Exploring Space",
        "bullet points": [
            {
                "icon keyword": "rocket",
                "headline": "Cheaper Launches",
                "content": "Reusable boosters cut the cost of reaching orbit by an order of magnitude.",
            },
            {
                "icon keyword": "satellite",
                "headline": "Orbital Infrastructure",
                "content": "Thousands of satellites now provide imaging, navigation, and broadband.",
            },
            {
                "icon keyword": "star",
                "headline": "Deep Space Science",
                "content": "Space telescopes peer back to the earliest galaxies in the universe.",
            },
        ],
    },
}

_DEFAULT_FIXTURE = {
    "title": "Quick Facts",
    "bullet points": [
        {
            "icon keyword": "lightbulb",
            "headline": "Key Idea",
            "content": "The single most important concept of the topic, stated plainly.",
        },
        {
            "icon keyword": "chart",
            "headline": "By the Numbers",
            "content": "A headline statistic that puts the topic's scale into perspective.",
        },
        {
            "icon keyword": "book",
            "headline": "Background",
            "content": "Where the topic comes from and why it matters today.",
        },
        {
            "icon keyword": "arrow",
            "headline": "What's Next",
            "content": "The direction the field is heading over the coming years.",
        },
    ],
}


class StubInfoSource:
    """Deterministic fixture lookup by longest matching topic substring."""

    def fetch(self, topic: str, bullet_count: int, error_hint: str | None = None) -> str:
        lowered = topic.lower()
        best_key = None
        for key in _FIXTURES:
            if key in lowered or lowered in key:
                if best_key is None or len(key) > len(best_key):
                    best_key = key
        fixture = _FIXTURES.get(best_key, _DEFAULT_FIXTURE) if best_key else _DEFAULT_FIXTURE
        bullets = fixture["bullet points"]
        chosen = [bullets[i % len(bullets)] for i in range(bullet_count)]
        title = fixture["title"] if best_key else f"{topic.strip().title()}: Quick Facts"
        return json.dumps({"title": title, "bullet points": chosen})


_PROMPT = """You prepare content for an infographic on the topic: {topic}.
Respond with a single JSON object with exactly two keys:
  "title": a short poster title,
  "bullet points": an array of {count} objects, each with keys
      "icon keyword" (one or two words naming a drawable object),
      "headline" (a few words), and
      "content" (one or two sentences).
Respond with JSON only, no prose.{hint}"""


class RemoteInfoSource:
    """LLM-backed source speaking an OpenAI-style chat completion API."""

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

    def fetch(self, topic: str, bullet_count: int, error_hint: str | None = None) -> str:
        hint = ""
        if error_hint:
            hint = f"\nYour previous answer was rejected: {error_hint}. Fix it."
        prompt = _PROMPT.format(topic=topic, count=bullet_count, hint=hint)
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        resp = self._post(
            f"{self.endpoint}/chat/completions",
            json={"model": self.model, "messages": [{"role": "user", "content": prompt}]},
            headers=headers,
            timeout=self.timeout,
        )
        resp.raise_for_status()
        return resp.json()["choices"][0]["message"]["content"]
