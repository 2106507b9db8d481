"""Bundled offline icon set.

Small hand-drawn 24x24 glyphs keyed by keyword, covering the demo topics
(history, animals, climate, technology) so the whole pipeline works with no
network. Each value is SVG path data; compose_icon_svg wraps it in a proper
document with a viewBox.
"""

from __future__ import annotations

ICON_PATHS: dict[str, str] = {
    "pyramid": "M12 3 L22 20 H2 Z M12 3 L15 20 H9 Z",
    "column": "M5 4 H19 V6 H17 V18 H19 V20 H5 V18 H7 V6 H5 Z M9 6 V18 H11 V6 Z M13 6 V18 H15 V6 Z",
    "scroll": "M6 4 C4 4 4 7 6 7 H18 V17 C18 19 16 19 16 17 V16 H7 C5 16 5 20 8 20 H17 C20 20 20 16 18 16 M6 4 H17 C19 4 19 7 17 7",
    "temple": "M12 3 L21 8 H3 Z M4 9 H20 V11 H4 Z M6 11 V18 H8 V11 Z M11 11 V18 H13 V11 Z M16 11 V18 H18 V11 Z M3 19 H21 V21 H3 Z",
    "vase": "M9 3 H15 V5 C15 8 17 9 17 13 C17 18 14 21 12 21 C10 21 7 18 7 13 C7 9 9 8 9 5 Z",
    "wall": "M3 6 H21 V10 H3 Z M3 10 H11 V14 H3 Z M13 10 H21 V14 H13 Z M3 14 H21 V18 H3 Z",
    "crown": "M4 18 L3 8 L8 12 L12 5 L16 12 L21 8 L20 18 Z",
    "shield": "M12 3 L20 6 V12 C20 17 16 20 12 21 C8 20 4 17 4 12 V6 Z",
    "sword": "M19 3 L21 5 L12 14 L14 16 L12 18 L10 16 L6 20 L4 18 L8 14 L6 12 L8 10 L10 12 Z",
    "coin": "M12 4 A8 8 0 1 0 12 20 A8 8 0 1 0 12 4 M12 8 V16 M9 10 H15 M9 14 H15",
    "scale": "M12 4 V20 M8 20 H16 M4 8 H20 M6 8 L4 13 H8 Z M18 8 L16 13 H20 Z",
    "map": "M4 5 L9 3 L15 5 L20 3 V19 L15 21 L9 19 L4 21 Z M9 3 V19 M15 5 V21",
    "flag": "M5 3 V21 M5 4 H18 L15 8 L18 12 H5",
    "book": "M4 4 C8 2 11 4 12 5 C13 4 16 2 20 4 V19 C16 17 13 19 12 20 C11 19 8 17 4 19 Z M12 5 V20",
    "clock": "M12 3 A9 9 0 1 0 12 21 A9 9 0 1 0 12 3 M12 7 V12 L16 14",
    "hourglass": "M6 3 H18 V7 L13 12 L18 17 V21 H6 V17 L11 12 L6 7 Z",
    "globe": "M12 3 A9 9 0 1 0 12 21 A9 9 0 1 0 12 3 M3 12 H21 M12 3 C8 8 8 16 12 21 C16 16 16 8 12 3",
    "sun": "M12 7 A5 5 0 1 0 12 17 A5 5 0 1 0 12 7 M12 2 V5 M12 19 V22 M2 12 H5 M19 12 H22 M4.9 4.9 L7 7 M17 17 L19.1 19.1 M19.1 4.9 L17 7 M7 17 L4.9 19.1",
    "cloud": "M7 18 A4 4 0 0 1 7 10 A5 5 0 0 1 17 9 A4 4 0 0 1 17 18 Z",
    "rain": "M7 14 A4 4 0 0 1 7 6 A5 5 0 0 1 17 5 A4 4 0 0 1 17 14 Z M8 16 L7 19 M12 16 L11 19 M16 16 L15 19",
    "snowflake": "M12 2 V22 M3 7 L21 17 M21 7 L3 17 M12 2 L10 5 M12 2 L14 5 M12 22 L10 19 M12 22 L14 19",
    "thermometer": "M10 4 A2 2 0 0 1 14 4 V14 A4 4 0 1 1 10 14 Z M12 8 V16",
    "wave": "M2 12 C5 8 8 8 11 12 C14 16 17 16 20 12 M2 18 C5 14 8 14 11 18 C14 22 17 22 20 18",
    "drop": "M12 3 C16 9 18 12 18 15 A6 6 0 1 1 6 15 C6 12 8 9 12 3 Z",
    "leaf": "M5 19 C5 9 12 4 20 4 C20 14 13 19 7 17 M5 19 C8 13 12 9 16 7",
    "tree": "M12 3 L17 10 H14 L19 17 H13 V21 H11 V17 H5 L10 10 H7 Z",
    "recycle": "M12 4 L15 9 H9 Z M5 19 L8 14 L11 19 Z M19 19 L13 19 L16 14 Z M9 9 L5 16 M15 9 L19 16 M8 19 H14",
    "fire": "M12 3 C14 7 17 9 17 14 A5 5 0 0 1 7 14 C7 11 9 9 9 7 C10 9 12 9 12 3 Z",
    "mountain": "M3 20 L10 6 L14 13 L17 9 L21 20 Z M8 12 L10 10 L12 12",
    "factory": "M3 20 V10 L9 13 V10 L15 13 V10 L21 13 V20 Z M5 5 H8 V10 H5 Z",
    "car": "M4 16 L6 10 H18 L20 16 Z M3 16 H21 V18 H3 Z M7 18 A1.5 1.5 0 1 0 7 21 A1.5 1.5 0 1 0 7 18 M17 18 A1.5 1.5 0 1 0 17 21 A1.5 1.5 0 1 0 17 18",
    "plane": "M2 14 L22 10 L20 12 L14 14 L16 20 L14 21 L10 15 L5 17 L4 20 L2 19 Z",
    "rocket": "M12 2 C16 5 17 10 15 16 H9 C7 10 8 5 12 2 Z M9 16 L6 20 M15 16 L18 20 M12 16 V21 M12 8 A1.5 1.5 0 1 0 12 11 A1.5 1.5 0 1 0 12 8",
    "satellite": "M4 10 L10 4 L14 8 L8 14 Z M14 8 L17 11 M15 14 A4 4 0 0 1 19 18 M14 17 A7 7 0 0 1 21 24",
    "robot": "M7 8 H17 V18 H7 Z M12 4 V8 M9 11 A1 1 0 1 0 9 13 A1 1 0 1 0 9 11 M15 11 A1 1 0 1 0 15 13 A1 1 0 1 0 15 11 M9 16 H15 M4 11 V15 M20 11 V15",
    "chip": "M7 7 H17 V17 H7 Z M10 10 H14 V14 H10 Z M9 2 V7 M15 2 V7 M9 17 V22 M15 17 V22 M2 9 H7 M2 15 H7 M17 9 H22 M17 15 H22",
    "computer": "M4 5 H20 V15 H4 Z M9 18 H15 M12 15 V18 M7 19 H17 V20 H7 Z",
    "phone": "M8 3 H16 V21 H8 Z M10 5 H14 M11 18 H13",
    "lightbulb": "M12 3 A6 6 0 0 1 15 14 V16 H9 V14 A6 6 0 0 1 12 3 Z M10 18 H14 M10 20 H14",
    "gear": "M12 8 A4 4 0 1 0 12 16 A4 4 0 1 0 12 8 M12 2 V6 M12 18 V22 M2 12 H6 M18 12 H22 M4.9 4.9 L7.7 7.7 M16.3 16.3 L19.1 19.1 M19.1 4.9 L16.3 7.7 M7.7 16.3 L4.9 19.1",
    "network": "M6 6 A2 2 0 1 0 6 10 A2 2 0 1 0 6 6 M18 6 A2 2 0 1 0 18 10 A2 2 0 1 0 18 6 M12 16 A2 2 0 1 0 12 20 A2 2 0 1 0 12 16 M7.5 9.5 L10.8 16 M16.5 9.5 L13.2 16 M8 8 H16",
    "atom": "M12 11 A1.5 1.5 0 1 0 12 14 A1.5 1.5 0 1 0 12 11 M12 4 C17 4 21 8 21 12 C21 16 17 20 12 20 C7 20 3 16 3 12 C3 8 7 4 12 4 M5 6 C8 2 16 2 19 6 M5 18 C8 22 16 22 19 18",
    "dna": "M7 3 C7 9 17 9 17 15 C17 18 15 21 12 21 M17 3 C17 9 7 9 7 15 C7 18 9 21 12 21 M8 6 H16 M8 18 H16 M10 12 H14",
    "microscope": "M9 3 L14 8 L10 12 L5 7 Z M12 10 L16 14 A6 6 0 0 1 8 20 M4 20 H20 M10 16 L8 18",
    "battery": "M3 8 H19 V16 H3 Z M19 10 H21 V14 H19 Z M5 10 H9 V14 H5 Z",
    "chart": "M4 4 V20 H20 M7 16 V10 M11 16 V6 M15 16 V12 M19 16 V8",
    "magnifier": "M10 3 A7 7 0 1 0 10 17 A7 7 0 1 0 10 3 M15 15 L21 21",
    "heart": "M12 20 C4 14 3 9 6 6 C9 3 12 6 12 8 C12 6 15 3 18 6 C21 9 20 14 12 20 Z",
    "star": "M12 3 L14.5 9 L21 9.5 L16 13.7 L17.7 20 L12 16.5 L6.3 20 L8 13.7 L3 9.5 L9.5 9 Z",
    "arrow": "M3 12 H18 M13 6 L19 12 L13 18",
    "bear": "M7 5 A2.5 2.5 0 1 0 7 10 M17 5 A2.5 2.5 0 1 0 17 10 M12 5 A7 7 0 0 0 5 12 A7 7 0 0 0 19 12 A7 7 0 0 0 12 5 M10 11 A1 1 0 1 0 10 13 M14 11 A1 1 0 1 0 14 13 M11 15 H13 L12 17 Z",
    "dog": "M5 9 L8 6 H14 L17 9 L20 8 V11 L17 12 V16 L14 19 H9 L6 16 V12 Z M9 11 A1 1 0 1 0 9 13 M13 14 H15",
    "cat": "M6 4 L9 7 H15 L18 4 V9 A6 6 0 0 1 18 14 A6 7 0 0 1 6 14 A6 6 0 0 1 6 9 Z M9 11 A1 1 0 1 0 9 13 M15 11 A1 1 0 1 0 15 13 M11 15 H13",
    "fish": "M3 12 C7 6 14 6 18 12 C14 18 7 18 3 12 Z M18 12 L22 8 V16 Z M8 11 A1 1 0 1 0 8 13",
    "bird": "M4 14 C7 6 14 5 16 8 L21 9 L16 11 C16 17 9 19 4 17 L8 14 Z M16 8 A1 1 0 1 0 17 9",
    "paw": "M8 6 A1.8 1.8 0 1 0 8 10 M12 4 A1.8 1.8 0 1 0 12 8 M16 6 A1.8 1.8 0 1 0 16 10 M12 10 C15 10 18 13 17 16 C16 19 13 18 12 18 C11 18 8 19 7 16 C6 13 9 10 12 10 Z",
    "iceberg": "M4 14 L9 5 L13 9 L16 6 L20 14 Z M2 14 H22 M6 14 L9 20 L14 14 Z",
    "wheat": "M12 21 V8 M12 8 C9 8 8 5 8 3 C11 3 12 5 12 8 C12 5 13 3 16 3 C16 5 15 8 12 8 M12 13 C9 13 8 11 8 9 C11 9 12 10 12 13 C12 10 13 9 16 9 C16 11 15 13 12 13",
}


def compose_icon_svg(path_data: str, fill: str = "currentColor") -> str:
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 24 24" '
        f'fill="none" stroke="{fill}" stroke-width="1.5" '
        'stroke-linecap="round" stroke-linejoin="round">'
        f'<path d="{path_data}"/></svg>'
    )


PLACEHOLDER_SVG = (
    '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 24 24" fill="none" '
    'stroke="currentColor" stroke-width="1.5">'
    '<circle cx="12" cy="12" r="9"/>'
    '<path d="M9 10 A3 3 0 0 1 15 10 C15 12 12 12 12 14 M12 17 V17.5"/></svg>'
)
