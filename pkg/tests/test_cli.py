from __future__ import annotations

import xml.etree.ElementTree as ET

from conftest import DEMO_DIR
from infograph.cli import main

DEMO_SCRIPT = DEMO_DIR / "ancient_civilizations.yaml"


def test_demo_script_produces_structured_svg(tmp_path):
    out = tmp_path / "out.svg"
    assert main(["run", str(DEMO_SCRIPT), "-o", str(out)]) == 0
    root = ET.fromstring(out.read_text(encoding="utf-8"))
    groups = [g for g in root if g.get("data-kind")]
    kinds = [g.get("data-kind") for g in groups]
    roles = [g.get("data-role") for g in groups]
    assert kinds.count("background") == 1
    assert roles.count("title") == 1
    assert roles.count("icon") == 3
    assert roles.count("headline") == 3
    assert roles.count("content") == 3
    assert kinds.count("image") == 1  # the pivot


def test_same_script_twice_is_byte_identical(tmp_path):
    out1, out2 = tmp_path / "a.svg", tmp_path / "b.svg"
    assert main(["run", str(DEMO_SCRIPT), "-o", str(out1)]) == 0
    assert main(["run", str(DEMO_SCRIPT), "-o", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_seed_changes_output(tmp_path):
    out1, out2 = tmp_path / "a.svg", tmp_path / "b.svg"
    assert main(["run", str(DEMO_SCRIPT), "-o", str(out1), "--seed", "1"]) == 0
    assert main(["run", str(DEMO_SCRIPT), "-o", str(out2), "--seed", "2"]) == 0
    assert out1.read_bytes() != out2.read_bytes()


def test_missing_fixture_exits_2(tmp_path):
    script = tmp_path / "bad.yaml"
    script.write_text("fixture: nowhere.json\nsteps:\n  - say: hi\n", encoding="utf-8")
    assert main(["run", str(script), "-o", str(tmp_path / "x.svg")]) == 2


def test_missing_script_exits_2(tmp_path):
    assert main(["run", str(tmp_path / "ghost.yaml"), "-o", str(tmp_path / "x.svg")]) == 2


def test_failing_step_exits_1(tmp_path, capsys):
    script = tmp_path / "bad.yaml"
    script.write_text("steps:\n  - apply_layout: last\n", encoding="utf-8")
    assert main(["run", str(script), "-o", str(tmp_path / "x.svg")]) == 1
    assert "step 1" in capsys.readouterr().err


def test_rules_provider_runs_offline(tmp_path):
    script = tmp_path / "rules.yaml"
    script.write_text(
        "steps:\n"
        '  - say: "tell me about climate change with 3 bullet points"\n'
        '  - say: "Generate a three rows layout"\n'
        "  - apply_layout: last\n",
        encoding="utf-8",
    )
    out = tmp_path / "r.svg"
    assert main(["run", str(script), "-o", str(out), "--provider", "rules"]) == 0
    assert out.exists()


def test_canvas_step_is_executed(tmp_path):
    script = tmp_path / "ops.yaml"
    script.write_text(
        "steps:\n"
        '  - say: "draw a cute cat"\n'
        "  - canvas: {op: move, asset_id: a0001, x: 10, y: 20}\n",
        encoding="utf-8",
    )
    out = tmp_path / "c.svg"
    assert main(["run", str(script), "-o", str(out), "--provider", "rules"]) == 0
    root = ET.fromstring(out.read_text(encoding="utf-8"))
    image = next(g for g in root if g.get("data-kind") == "image")
    href_holder = list(image)[0]
    assert href_holder.get("x") == "10" and href_holder.get("y") == "20"


def test_link_assets_writes_files(tmp_path):
    out = tmp_path / "linked.svg"
    assert main(["run", str(DEMO_SCRIPT), "-o", str(out), "--link-assets"]) == 0
    text = out.read_text(encoding="utf-8")
    assert "base64" not in text
    assert (tmp_path / "assets").is_dir()
    assert any((tmp_path / "assets").iterdir())


# ---------------------------------------------------------------------------
# lint / parse
# ---------------------------------------------------------------------------


def test_lint_valid_file_exits_0(capsys):
    assert main(["lint", str(DEMO_DIR / "three_rows.layout")]) == 0
    assert "ok" in capsys.readouterr().out


def test_lint_two_titles_reports_title_multiplicity(tmp_path, capsys):
    path = tmp_path / "two_titles.layout"
    path.write_text(
        "(C,0,0,1,1,[(G,0,0,1,0.4,[(title,0,0,1,1)]),(G,0,0.5,1,0.4,[(title,0,0,1,1)])])",
        encoding="utf-8",
    )
    assert main(["lint", str(path)]) == 1
    assert "TITLE_MULTIPLICITY" in capsys.readouterr().out


def test_lint_overlap_prints_measured_ratio(capsys):
    assert main(["lint", str(DEMO_DIR / "bad_overlap.layout")]) == 1
    out = capsys.readouterr().out
    assert "OVERLAP" in out
    assert "20.0%" in out


def test_lint_syntax_error_prints_location(tmp_path, capsys):
    path = tmp_path / "broken.layout"
    path.write_text("(C,0,0,1", encoding="utf-8")
    assert main(["lint", str(path)]) == 1
    assert "line 1" in capsys.readouterr().out


def test_parse_wireframe_renders_slot_rects(tmp_path):
    out = tmp_path / "wire.svg"
    assert main(["parse", str(DEMO_DIR / "three_rows.layout"), "--wireframe", str(out)]) == 0
    root = ET.fromstring(out.read_text(encoding="utf-8"))
    ns = "{http://www.w3.org/2000/svg}"
    rects = root.findall(f"{ns}rect")
    labels = [t.text for t in root.findall(f"{ns}text")]
    assert len(rects) == 1 + 10  # canvas + 1 title + 3x3 slots
    assert labels.count("icon") == 3 and labels.count("title") == 1
