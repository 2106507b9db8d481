from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from infograph.model import CanvasSpec  # noqa: E402
from infograph.tools import ToolContext, build_registry  # noqa: E402


@pytest.fixture
def canvas() -> CanvasSpec:
    return CanvasSpec(1280, 720)


@pytest.fixture
def stub_registry():
    """Registry with all-stub backends and no resource resolution."""
    return build_registry(ToolContext())


REPO_ROOT = Path(__file__).resolve().parents[1]
DEMO_DIR = REPO_ROOT / "demo"
FIXTURE_DIR = Path(__file__).parent / "fixtures"
