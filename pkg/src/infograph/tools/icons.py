"""Keyword to SVG icon lookup with a total fallback chain.

Order: remote search API (when a client is configured), then the bundled
offline set, then a generic placeholder glyph. Every returned icon is
well-formed XML with a viewBox, whatever the source.
"""

from __future__ import annotations

import os
import xml.etree.ElementTree as ET
from dataclasses import dataclass

from .icon_bundle import ICON_PATHS, PLACEHOLDER_SVG, compose_icon_svg

DEFAULT_ICON_ENDPOINT = "https://api.iconify.design"


@dataclass(frozen=True)
class IconResult:
    keyword: str
    svg: str
    source: str  # remote | local | placeholder


class IconifyClient:
    """Thin client for an Iconify-compatible search API."""

    def __init__(self, endpoint: str | None = None, get=None, timeout: float = 10.0):
        self.endpoint = (endpoint or os.environ.get("GM_ICON_ENDPOINT", DEFAULT_ICON_ENDPOINT)).rstrip("/")
        self.timeout = timeout
        if get is None:
            import requests

            get = requests.get
        self._get = get

    def search(self, keyword: str, limit: int) -> list[str]:
        """Return icon names like 'mdi:pyramid' for a keyword."""
        resp = self._get(
            f"{self.endpoint}/search",
            params={"query": keyword, "limit": limit},
            timeout=self.timeout,
        )
        resp.raise_for_status()
        return list(resp.json().get("icons", []))[:limit]

    def fetch_svg(self, icon_name: str) -> str:
        prefix, _, name = icon_name.partition(":")
        resp = self._get(f"{self.endpoint}/{prefix}/{name}.svg", timeout=self.timeout)
        resp.raise_for_status()
        return resp.text


def _is_valid_icon_svg(markup: str) -> bool:
    try:
        root = ET.fromstring(markup)
    except ET.ParseError:
        return False
    return "viewBox" in root.attrib


def _local_matches(keyword: str) -> list[str]:
    key = keyword.strip().lower()
    if key in ICON_PATHS:
        return [key]
    hits = [name for name in ICON_PATHS if key and (key in name or name in key)]
    if not hits:
        # token-level match: "polar bear" finds "bear"
        tokens = key.replace("-", " ").split()
        hits = [name for name in ICON_PATHS if name in tokens]
    return sorted(hits)


def search_icons(keyword: str, limit: int = 5, client: IconifyClient | None = None) -> list[IconResult]:
    """Up to `limit` icons for a keyword; never fails, never returns malformed SVG."""
    if not keyword:
        raise ValueError("keyword must be non-empty")
    limit = max(1, min(int(limit), 20))

    if client is not None:
        try:
            names = client.search(keyword, limit)
            results = []
            for name in names[:limit]:
                svg = client.fetch_svg(name)
                if _is_valid_icon_svg(svg):
                    results.append(IconResult(keyword, svg, "remote"))
            if results:
                return results
        except Exception:
            pass  # fall through to the local bundle

    local = _local_matches(keyword)
    if local:
        return [
            IconResult(keyword, compose_icon_svg(ICON_PATHS[name]), "local")
            for name in local[:limit]
        ]

    return [IconResult(keyword, PLACEHOLDER_SVG, "placeholder")]
