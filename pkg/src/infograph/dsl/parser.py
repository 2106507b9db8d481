"""Recursive-descent parser and canonical serializer for the layout DSL.

Concrete grammar (whitespace insignificant everywhere):

    tree   := cnode
    cnode  := "(" "C" "," num "," num "," num "," num "," "[" node ("," node)* "]" ")"
    gnode  := "(" "G" "," num "," num "," num "," num "," "[" slots? "]" ")"
    node   := cnode | gnode
    slots  := slot ("," slot)*
    slot   := "(" slotType "," num "," num "," num "," num ")"
    slotType := "title" | "image" | "icon" | "headline" | "content"
    num    := decimal literal in [0, 1]

Coordinate nodes require at least one child; containers may be empty (the
validator reports EMPTY_CONTAINER rather than the parser rejecting it).
"""

from __future__ import annotations

from .nodes import (
    CONTAINER,
    COORDINATE,
    MAX_CONTAINERS,
    MAX_DEPTH,
    SLOT_TYPES,
    DepthError,
    LayoutLimitError,
    LayoutNode,
    LayoutSyntaxError,
    LayoutTree,
    RelRect,
    Slot,
)

__all__ = ["parse_layout", "serialize_layout", "format_num"]


class _Scanner:
    """Character cursor with line/col tracking; skips whitespace between tokens."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _location(self, pos: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, pos) + 1
        last_nl = self.text.rfind("\n", 0, pos)
        return line, pos - last_nl

    def error(self, expected: str) -> LayoutSyntaxError:
        line, col = self._location(self.pos)
        found = self.text[self.pos : self.pos + 8] if self.pos < len(self.text) else "end of input"
        return LayoutSyntaxError(line, col, expected, found)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str) -> None:
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != char:
            raise self.error(f"'{char}'")
        self.pos += 1

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalpha() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        if self.pos == start:
            raise self.error("a tag or slot type")
        return self.text[start : self.pos]

    def number(self) -> float:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isdigit() or self.text[self.pos] == "."):
            self.pos += 1
        token = self.text[start : self.pos]
        if not token:
            raise self.error("a number in [0,1]")
        try:
            value = float(token)
        except ValueError:
            self.pos = start
            raise self.error("a number in [0,1]") from None
        if not 0.0 <= value <= 1.0:
            self.pos = start
            raise self.error("a number in [0,1]")
        return value

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


class _Parser:
    def __init__(self, text: str):
        self.scan = _Scanner(text)
        self.container_count = 0

    def parse(self) -> LayoutNode:
        root = self._node(depth=1, root=True)
        if not self.scan.at_end():
            raise self.scan.error("end of input")
        return root

    def _rect(self) -> RelRect:
        vals = []
        for _ in range(4):
            self.scan.expect(",")
            vals.append(self.scan.number())
        return RelRect(*vals)

    def _node(self, depth: int, root: bool = False) -> LayoutNode:
        if depth > MAX_DEPTH:
            raise DepthError(f"nesting exceeds {MAX_DEPTH} levels")
        self.scan.expect("(")
        tag = self.scan.word()
        if root and tag != "C":
            raise self.scan.error("'C' (the root must be a coordinate node)")
        if tag == "C":
            rel = self._rect()
            self.scan.expect(",")
            children = self._items(lambda: self._node(depth + 1), "a node")
            self.scan.expect(")")
            if not children:
                raise self.scan.error("at least one child in a coordinate node")
            return LayoutNode(COORDINATE, rel, children=tuple(children))
        if tag == "G":
            self.container_count += 1
            if self.container_count > MAX_CONTAINERS:
                raise LayoutLimitError(f"more than {MAX_CONTAINERS} containers")
            rel = self._rect()
            self.scan.expect(",")
            slots = self._items(self._slot, "a slot")
            self.scan.expect(")")
            return LayoutNode(CONTAINER, rel, slots=tuple(slots))
        raise self.scan.error("'C' or 'G'")

    def _items(self, parse_one, what: str) -> list:
        self.scan.expect("[")
        items = []
        if self.scan.peek() == "]":
            self.scan.expect("]")
            return items
        items.append(parse_one())
        while self.scan.peek() == ",":
            self.scan.expect(",")
            items.append(parse_one())
        self.scan.expect("]")
        return items

    def _slot(self) -> Slot:
        self.scan.expect("(")
        name = self.scan.word()
        if name not in SLOT_TYPES:
            raise self.scan.error(f"a slot type {SLOT_TYPES}")
        rel = self._rect()
        self.scan.expect(")")
        return Slot(name, rel)


def parse_layout(source: str) -> LayoutTree:
    """Parse DSL text into a layout tree.

    Raises LayoutSyntaxError (with line/col/expected), DepthError past
    MAX_DEPTH nesting, or LayoutLimitError past MAX_CONTAINERS containers.
    """
    if not source or not source.strip():
        raise LayoutSyntaxError(1, 1, "a layout expression", "empty input")
    root = _Parser(source).parse()
    return LayoutTree(root=root, source_text=source)


def format_num(value: float) -> str:
    """Canonical number form: up to 4 fractional digits, no trailing zeros."""
    text = f"{value:.4f}".rstrip("0").rstrip(".")
    return text if text else "0"


def _emit(node: LayoutNode, out: list[str]) -> None:
    rel = node.rel
    nums = ",".join(format_num(v) for v in (rel.x, rel.y, rel.w, rel.h))
    if node.node_kind == COORDINATE:
        out.append(f"(C,{nums},[")
        for i, child in enumerate(node.children):
            if i:
                out.append(",")
            _emit(child, out)
        out.append("])")
    else:
        out.append(f"(G,{nums},[")
        for i, s in enumerate(node.slots):
            if i:
                out.append(",")
            snums = ",".join(format_num(v) for v in (s.rel.x, s.rel.y, s.rel.w, s.rel.h))
            out.append(f"({s.slot_type},{snums})")
        out.append("])")


def serialize_layout(tree: LayoutTree) -> str:
    """Canonical text form: fixed decimal formatting, no whitespace.

    parse_layout(serialize_layout(t)) reproduces t structurally for any tree
    whose rel values are exact 4-decimal floats.
    """
    out: list[str] = []
    _emit(tree.root, out)
    return "".join(out)
