"""Headless driver.

    infograph run <script.yaml> -o out.svg [--seed N] [--link-assets] [--provider stub|rules|remote]
    infograph lint <file.layout>
    infograph parse <file.layout> [--wireframe out.svg]

`run` replays a scripted conversation through an in-process engine with
stub backends (fully offline, deterministic) and writes the exported SVG.
Exit codes: 0 success, 1 failed step or lint violations, 2 unreadable
script/fixture/file.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import yaml

from .agent import RemoteProvider, RuleBasedProvider, ScriptedProvider
from .composer import export_svg
from .dsl import (
    LayoutError,
    LayoutSyntaxError,
    draw_layout,
    parse_layout,
    serialize_layout,
    validate_layout,
)
from .model import CanvasSpec
from .server.store import EngineConfig, SessionStore


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load_script(path: Path) -> dict:
    text = path.read_text(encoding="utf-8")
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}" if mark else ""
        raise ValueError(f"script does not parse{where}: {exc}") from exc
    if not isinstance(data, dict) or "steps" not in data:
        raise ValueError("script must be a mapping with a 'steps' list")
    return data


def _build_provider(kind: str, script: dict, script_dir: Path):
    if kind == "remote":
        return RemoteProvider()
    if kind == "rules":
        return RuleBasedProvider()
    fixture = script.get("fixture")
    if fixture:
        fixture_path = script_dir / fixture
        if not fixture_path.exists():
            raise FileNotFoundError(f"provider fixture not found: {fixture_path}")
        return ScriptedProvider.from_file(str(fixture_path))
    return RuleBasedProvider()


def _last_layout_resource(store: SessionStore, session_id: str) -> str | None:
    session = store.get(session_id)
    found = None
    for message in session.conversation.messages:
        for res in message.resources:
            if res.task == "layout":
                found = res.resource_id
    return found


def run_script(script_path: str, out_path: str, seed: int | None = None,
               provider: str = "stub", link_assets: bool = False) -> int:
    path = Path(script_path)
    if not path.exists():
        return _fail(f"script not found: {path}", 2)
    try:
        script = _load_script(path)
    except ValueError as exc:
        return _fail(str(exc), 2)

    try:
        decision_provider = _build_provider(provider, script, path.parent)
    except FileNotFoundError as exc:
        return _fail(str(exc), 2)

    canvas_cfg = script.get("canvas") or {}
    config = EngineConfig(
        canvas=CanvasSpec(
            width=int(canvas_cfg.get("width", 1280)),
            height=int(canvas_cfg.get("height", 720)),
            background_color=canvas_cfg.get("background_color", "#FFFFFF"),
        ),
        seed=int(seed if seed is not None else script.get("seed", 0)),
        provider=decision_provider,
    )
    store = SessionStore(None, config)
    session = store.create_session("cli")

    for index, step in enumerate(script["steps"], start=1):
        label = f"step {index} ({json.dumps(step, default=str)[:60]})"
        try:
            if not isinstance(step, dict):
                raise ValueError("each step must be a mapping")
            if "say" in step:
                response = store.post_message(session.id, str(step["say"]))
                error = response["outcome"].get("error")
                if error:
                    raise RuntimeError(f"dispatch failed: {error['code']}: {error['detail']}")
            elif "apply_layout" in step:
                marker = step["apply_layout"]
                resource_id = (
                    _last_layout_resource(store, session.id) if marker == "last" else str(marker)
                )
                if resource_id is None:
                    raise RuntimeError("no layout resource to apply")
                store.apply_layout_resource(session.id, resource_id)
            elif "canvas" in step:
                op = dict(step["canvas"])
                store.canvas_op(session.id, op.pop("op"), op)
            else:
                raise ValueError(f"unknown step keys: {sorted(step)}")
        except Exception as exc:
            return _fail(f"{label} failed: {exc}", 1)

    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    asset_paths = None
    if link_assets:
        asset_paths = {}
        asset_dir = out.parent / "assets"
        asset_dir.mkdir(parents=True, exist_ok=True)
        for asset in store.get(session.id).document.assets:
            if isinstance(asset.payload, bytes):
                rel = f"assets/{asset.id}.png"
                (out.parent / rel).write_bytes(asset.payload)
                asset_paths[asset.id] = rel
    out.write_text(export_svg(store.get(session.id).document, asset_paths), encoding="utf-8")
    print(f"wrote {out}")
    return 0


def lint_layout(path_str: str) -> int:
    path = Path(path_str)
    if not path.exists():
        return _fail(f"file not found: {path}", 2)
    try:
        tree = parse_layout(path.read_text(encoding="utf-8").strip())
    except LayoutSyntaxError as exc:
        print(f"{path}: syntax error: {exc}")
        return 1
    except LayoutError as exc:
        print(f"{path}: {exc}")
        return 1
    report = validate_layout(tree)
    if report.ok:
        print(f"{path}: ok")
        return 0
    for violation in report.violations:
        print(f"{path}: {violation.code} at {violation.path}: {violation.detail}")
    return 1


def parse_file(path_str: str, wireframe: str | None) -> int:
    path = Path(path_str)
    if not path.exists():
        return _fail(f"file not found: {path}", 2)
    try:
        tree = parse_layout(path.read_text(encoding="utf-8").strip())
    except LayoutError as exc:
        print(f"{path}: {exc}")
        return 1
    print(serialize_layout(tree))
    if wireframe:
        report = validate_layout(tree)
        if not report.ok:
            print(f"{path}: cannot draw an invalid layout: {report.summary()}")
            return 1
        canvas = CanvasSpec()
        targets = draw_layout(tree, canvas)
        parts = [
            '<?xml version="1.0" encoding="UTF-8"?>\n',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{canvas.width}" '
            f'height="{canvas.height}" viewBox="0 0 {canvas.width} {canvas.height}">\n',
            f'<rect x="0" y="0" width="{canvas.width}" height="{canvas.height}" fill="#FFFFFF"/>\n',
        ]
        for t in targets:
            r = t.abs_rect
            parts.append(
                f'<rect x="{r.x:.1f}" y="{r.y:.1f}" width="{r.w:.1f}" height="{r.h:.1f}" '
                'fill="none" stroke="#5577AA" stroke-width="1.5"/>\n'
                f'<text x="{r.x + 4:.1f}" y="{r.y + 14:.1f}" font-family="sans-serif" '
                f'font-size="11" fill="#5577AA">{t.slot_type}</text>\n'
            )
        parts.append("</svg>\n")
        Path(wireframe).write_text("".join(parts), encoding="utf-8")
        print(f"wrote {wireframe}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="infograph", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="replay a scripted conversation to an SVG")
    p_run.add_argument("script")
    p_run.add_argument("-o", "--out", required=True)
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--link-assets", action="store_true")
    p_run.add_argument("--provider", choices=("stub", "rules", "remote"), default="stub")

    p_lint = sub.add_parser("lint", help="validate a .layout file")
    p_lint.add_argument("file")

    p_parse = sub.add_parser("parse", help="parse a .layout file, optionally render a wireframe")
    p_parse.add_argument("file")
    p_parse.add_argument("--wireframe", default=None)

    args = parser.parse_args(argv)
    if args.command == "run":
        return run_script(args.script, args.out, seed=args.seed,
                          provider=args.provider, link_assets=args.link_assets)
    if args.command == "lint":
        return lint_layout(args.file)
    return parse_file(args.file, args.wireframe)


if __name__ == "__main__":
    sys.exit(main())
