"""Agent-managed tool library.

Six executors sit behind provider adapters, each with a deterministic
offline stub so the whole system runs with no network or GPU. build_registry
wires them to their signatures for a given session context.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from ..agent import ParamSpec, ToolRegistry, ToolSignature
from ..dsl import serialize_layout
from ..model import CanvasSpec, DesignResource
from .icons import IconifyClient, IconResult, search_icons
from .images import (
    EFFECTS,
    STYLES,
    BackendUnavailable,
    FallbackImageBackend,
    ImageRequest,
    RemoteImageBackend,
    RemoteSegmentationBackend,
    SegmentationUnavailable,
    StubImageBackend,
    clip_image,
    edit_image,
    generate_image,
)
from .info import (
    InfoBundle,
    RemoteInfoSource,
    SchemaError,
    StubInfoSource,
    collect_information,
    parse_bundle,
)
from .layout_gen import (
    GRAMMAR_GUIDE,
    LayoutGenerationError,
    RemoteLayoutSource,
    RuleBasedLayoutSource,
    ScriptedLayoutSource,
    generate_layout,
)

__all__ = [
    "BackendUnavailable",
    "FallbackImageBackend",
    "GRAMMAR_GUIDE",
    "IconResult",
    "IconifyClient",
    "ImageRequest",
    "InfoBundle",
    "LayoutGenerationError",
    "RemoteImageBackend",
    "RemoteInfoSource",
    "RemoteLayoutSource",
    "RemoteSegmentationBackend",
    "RuleBasedLayoutSource",
    "SchemaError",
    "ScriptedLayoutSource",
    "SegmentationUnavailable",
    "StubImageBackend",
    "StubInfoSource",
    "ToolContext",
    "build_registry",
    "clip_image",
    "collect_information",
    "edit_image",
    "generate_image",
    "generate_layout",
    "parse_bundle",
    "search_icons",
]


def _counter_factory(prefix: str = "r") -> Callable[[], str]:
    counter = itertools.count(1)
    return lambda: f"{prefix}{next(counter):04d}"


@dataclass
class ToolContext:
    """Everything executors need for one session.

    resolve_resource maps a resource id (or None for "most recent PNG") to a
    DesignResource; the server supplies it, tests fake it.
    """

    canvas: CanvasSpec = field(default_factory=CanvasSpec)
    seed: int = 0
    image_backend: object = field(default_factory=StubImageBackend)
    info_source: object = field(default_factory=StubInfoSource)
    layout_source: object = field(default_factory=RuleBasedLayoutSource)
    icon_client: IconifyClient | None = None
    segmentation_backend: object | None = None
    resolve_resource: Callable[[str | None], DesignResource | None] = lambda rid: None
    next_resource_id: Callable[[], str] = field(default_factory=_counter_factory)


def _image_signature(name: str, description: str, caption_examples: tuple) -> ToolSignature:
    return ToolSignature(
        name=name,
        description=description,
        params=(
            ParamSpec(
                "caption",
                "string",
                required=True,
                description="What the image should show.",
                examples=caption_examples,
            ),
            ParamSpec(
                "style",
                "enum",
                description="Rendering style of the generated image.",
                examples=("watercolor",),
                enum_values=STYLES,
            ),
            ParamSpec(
                "effect",
                "enum",
                description="Optical effect applied to the image.",
                examples=("blur",),
                enum_values=EFFECTS,
            ),
        ),
    )


def default_signatures() -> list[ToolSignature]:
    """The six agent-managed tool signatures."""
    return [
        _image_signature(
            "pivot_figure",
            "Generate the central thematic image of the infographic. Use it when "
            "the user wants a picture of a concrete subject with accompanying focus, "
            "like a single animal, object, or scene protagonist.",
            ("a smiling dog wearing a hat", "a cute cat", "a crying polar bear"),
        ),
        _image_signature(
            "background_figure",
            "Generate a backdrop image for the whole canvas. Use it when the user "
            "asks for an environment, scenery, or ambience rather than a subject.",
            ("the park under warm sunlight", "the melting iceberg"),
        ),
        ToolSignature(
            name="collect_information",
            description="Research a topic and return a structured bundle: a title plus "
            "bullet points, each with an icon keyword, a headline, and content text.",
            params=(
                ParamSpec(
                    "topic",
                    "string",
                    required=True,
                    description="Subject to collect information about.",
                    examples=("Ancient Civilizations", "climate change"),
                ),
                ParamSpec(
                    "bullet_count",
                    "number",
                    description="How many bullet points to produce (1 to 8).",
                    examples=(3,),
                ),
            ),
        ),
        ToolSignature(
            name="search_icons",
            description="Find SVG icons matching a keyword for use as visual elements.",
            params=(
                ParamSpec(
                    "keyword",
                    "string",
                    required=True,
                    description="Short name of the pictured object.",
                    examples=("pyramid", "dog"),
                ),
                ParamSpec(
                    "limit",
                    "number",
                    description="Maximum number of icons to return (1 to 20).",
                    examples=(5,),
                ),
            ),
        ),
        ToolSignature(
            name="generate_layout",
            description="Design the arrangement of titles, images, icons, and text on "
            "the canvas from a natural-language directive.",
            params=(
                ParamSpec(
                    "instruction",
                    "string",
                    required=True,
                    description="Desired layout in plain words.",
                    examples=("Generate a waved layout", "three rows"),
                ),
            ),
        ),
        ToolSignature(
            name="edit_image",
            description="Modify an existing image in the conversation by instruction.",
            params=(
                ParamSpec(
                    "instruction",
                    "string",
                    required=True,
                    description="The edit to apply.",
                    examples=("make it snowy", "grayscale"),
                ),
                ParamSpec(
                    "resource_id",
                    "string",
                    description="Image resource to edit; defaults to the most recent one.",
                    examples=("r0003",),
                ),
            ),
        ),
    ]


def build_registry(ctx: ToolContext) -> ToolRegistry:
    """Registry with all six built-ins bound to the context's backends."""

    def run_pivot(args: dict) -> DesignResource:
        req = ImageRequest(
            caption=args["caption"],
            kind="pivot",
            style=args.get("style", "none"),
            effect=args.get("effect", "none"),
            seed=ctx.seed,
        )
        return generate_image(
            req,
            ctx.image_backend,
            canvas_size=(ctx.canvas.width, ctx.canvas.height),
            resource_id=ctx.next_resource_id(),
        )

    def run_background(args: dict) -> DesignResource:
        req = ImageRequest(
            caption=args["caption"],
            kind="background",
            style=args.get("style", "none"),
            effect=args.get("effect", "none"),
            seed=ctx.seed,
        )
        return generate_image(
            req,
            ctx.image_backend,
            canvas_size=(ctx.canvas.width, ctx.canvas.height),
            resource_id=ctx.next_resource_id(),
        )

    def run_collect(args: dict) -> DesignResource:
        count = int(args.get("bullet_count", 4))
        count = max(1, min(count, 8))
        bundle = collect_information(args["topic"], count, ctx.info_source)
        icons = {}
        for bullet in bundle.bullet_points:
            if bullet.icon_keyword not in icons:
                hits = search_icons(bullet.icon_keyword, limit=1, client=ctx.icon_client)
                icons[bullet.icon_keyword] = {
                    "svg": hits[0].svg,
                    "source": hits[0].source,
                }
        return DesignResource(
            ctx.next_resource_id(),
            "information_collection",
            "text_bundle",
            {"bundle": bundle.to_dict(), "icons": icons},
            meta={"topic": args["topic"], "bullet_count": count},
        )

    def run_icons(args: dict) -> DesignResource:
        limit = int(args.get("limit", 5))
        results = search_icons(args["keyword"], limit=limit, client=ctx.icon_client)
        first = results[0]
        return DesignResource(
            ctx.next_resource_id(),
            "visual_element",
            "svg",
            first.svg,
            meta={
                "keyword": args["keyword"],
                "source": first.source,
                "alternatives": [r.svg for r in results[1:]],
            },
        )

    def run_layout(args: dict) -> DesignResource:
        tree = generate_layout(args["instruction"], ctx.layout_source)
        return DesignResource(
            ctx.next_resource_id(),
            "layout",
            "layout_dsl",
            serialize_layout(tree),
            meta={"instruction": args["instruction"]},
        )

    def run_edit(args: dict) -> DesignResource:
        resource = ctx.resolve_resource(args.get("resource_id"))
        if resource is None or resource.media != "png":
            raise ValueError("no image resource available to edit")
        return edit_image(
            resource.content,
            args["instruction"],
            ctx.image_backend,
            resource_id=ctx.next_resource_id(),
        )

    executors = {
        "pivot_figure": run_pivot,
        "background_figure": run_background,
        "collect_information": run_collect,
        "search_icons": run_icons,
        "generate_layout": run_layout,
        "edit_image": run_edit,
    }
    registry = ToolRegistry()
    for signature in default_signatures():
        registry.register(signature, executors[signature.name])
    return registry
