import pytest
from hypothesis import given

from dblfrac.cli import ParseError, format_category_file, parse_category_file, run
from dblfrac.fincat import find_isomorphism
from dblfrac.fixtures import FIXTURES

from conftest import DATA
from strategies import posets_with_w


def _run(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.splitlines(), captured.err


def test_parse_interval():
    cat, W = parse_category_file("category I\nobjects: 0 1\narrow w : 0 -> 1 [W]\n").to_category()
    assert sorted(cat.arrows) == ["id_0", "id_1", "w"]
    assert W == {"id_0", "id_1", "w"}


def test_parse_compositions_and_comments():
    text = (DATA / "iso.cat").read_text()
    cat, W = parse_category_file("# walking iso\n" + text + "\n\n").to_category()
    assert cat.compose("i", "j") == "id_b" and cat.compose("j", "i") == "id_a"
    assert W == set(cat.arrows)


def test_trailing_comment_on_a_line():
    parsed = parse_category_file("objects: 0 1  # two of them\narrow f : 0 -> 1\n")
    assert parsed.objects == ["0", "1"]
    assert not parsed.arrows[0].in_w


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("objects: 0\narrow f : 0 -> 0\narrow f : 0 -> 0\n", 3, "duplicate arrow id f"),
        ("objects: 0 0\n", 1, "duplicate object"),
        ("objects: 0\narrow id_0 : 0 -> 0\n", 2, "duplicate arrow id"),
        ("objects: 0\narrow f : 0 -> 1\n", 2, "unknown object 1"),
        ("objects: 0\narrow f : 0 -> 0\n", 2, "missing compose line for f . f"),
        ("objects: 0 1\narrow f : 0 -> 1\ncompose f . f = f\n", 3, "not composable"),
        ("objects: 0\nmorphism f\n", 2, "unrecognized line"),
        ("objects: 0\narrow f 0 -> 0\n", 2, "expected"),
        ("objects: 0\narrow f : 0 -> 0\ncompose f . f = f\ncompose f . f = id_0\n", 4, "second compose line"),
        ("objects: 0\narrow f : 0 -> 0\ncompose f . id_0 = id_0\ncompose f . f = f\n", 3, "identity law"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError, match=fragment) as info:
        parse_category_file(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_data_files_match_fixtures(name):
    cat, W = FIXTURES[name]()
    text = (DATA / f"{name}.cat").read_text()
    assert text == format_category_file(cat, W)
    parsed, pW = parse_category_file(text).to_category()
    assert find_isomorphism(parsed, cat) is not None
    assert pW == W | set(cat.identity.values())


@given(posets_with_w(max_objects=4))
def test_print_parse_round_trip(data):
    cat, W = data
    text = format_category_file(cat, W)
    parsed, pW = parse_category_file(text).to_category()
    assert parsed.arrows == cat.arrows
    assert parsed.table == cat.table
    assert pW == W
    assert format_category_file(parsed, pW) == text


def test_cf_check_on_interval(capsys):
    code, out, _ = _run(capsys, "cf-check", str(DATA / "interval.cat"))
    assert code == 0
    assert out == ["cf1=PASS cf2=PASS cf3=PASS three_for_two=PASS"]


def test_build_cw_on_interval(capsys):
    code, out, _ = _run(capsys, "build-cw", str(DATA / "interval.cat"))
    assert code == 0
    assert out == ["objects=3 vertical=5 horizontal=7 cells=15 weakly_globular=PASS"]


def test_cospan_fails_cf2(capsys):
    code, out, _ = _run(capsys, "cf-check", str(DATA / "cospan.cat"))
    assert code == 1
    assert out == ["cf1=PASS cf2=FAIL cf3=PASS three_for_two=PASS", "cf2_counterexample=(ac,bc)"]


@pytest.mark.parametrize("command", ["localize", "build-cw", "verify-lemmas", "bic-equiv", "friendly", "export-dot"])
def test_commands_that_need_fractions_refuse_cospan(capsys, command):
    code, out, _ = _run(capsys, command, str(DATA / "cospan.cat"))
    assert code == 1
    assert "cf2_counterexample=(ac,bc)" in out
    assert out[-1] == f"{command}=FAIL reason=fractions_conditions"


def test_parallel_pair_fails_cf3(capsys, frozen):
    code, out, _ = _run(capsys, "cf-check", str(DATA / "parallel.cat"))
    assert code == 1
    assert out == ["cf1=PASS cf2=PASS cf3=FAIL three_for_two=PASS", "cf3_counterexample=(f,g,w)"]
    assert frozen["parallel"]["cf"]["cf3"] is False


@pytest.mark.parametrize("name", ["terminal", "interval", "iso", "poset"])
@pytest.mark.parametrize("command", ["validate", "cf-check", "localize", "build-cw", "verify-lemmas", "bic-equiv", "friendly"])
def test_every_command_passes_on_good_input(capsys, name, command):
    code, out, _ = _run(capsys, command, str(DATA / f"{name}.cat"))
    assert code == 0, out
    assert out and not any("FAIL" in line for line in out)


def test_friendly_report(capsys):
    code, out, _ = _run(capsys, "friendly", str(DATA / "interval.cat"))
    assert code == 0
    assert out[0] == "nabla_objects=3 nabla_arrows=4"
    assert "lift_is_identity=PASS" in out and "transformation_roundtrip=PASS" in out


def test_localize_report(capsys):
    code, out, _ = _run(capsys, "localize", str(DATA / "interval.cat"))
    assert code == 0
    assert out[0].startswith("fractions_objects=2 fractions_arrows=4 oracle_objects=2 oracle_arrows=4")


def test_out_writes_file(capsys, tmp_path):
    target = tmp_path / "report.txt"
    code, out, _ = _run(capsys, "build-cw", str(DATA / "interval.cat"), "--out", str(target))
    assert code == 0 and out == []
    assert target.read_text() == "objects=3 vertical=5 horizontal=7 cells=15 weakly_globular=PASS\n"


def test_export_dot(capsys):
    code, out, _ = _run(capsys, "export-dot", str(DATA / "interval.cat"))
    assert code == 0
    assert out[0].startswith("digraph") and out[-1] == "}"
    assert sum(line.strip().startswith("// cell ") for line in out) == 15
    code, out, _ = _run(capsys, "export-dot", str(DATA / "interval.cat"), "--format", "text", "--embed", "vertical")
    assert out == ["objects=2 vertical=3 horizontal=2 cells=3"]


def test_verbose_goes_to_stderr(capsys):
    code, out, err = _run(capsys, "cf-check", str(DATA / "interval.cat"), "--verbose")
    assert code == 0 and len(out) == 1
    assert err and all(line.startswith("# ") for line in err.splitlines())


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate", "x.cat"],
        ["cf-check", "/nonexistent/none.cat"],
        ["build-cw", "interval", "--segal-bound", "0"],
    ],
)
def test_usage_and_io_errors_exit_two(capsys, argv):
    argv = [str(DATA / "interval.cat") if a == "interval" else a for a in argv]
    assert run(argv) == 2


def test_parse_error_reported_with_line(capsys, tmp_path):
    bad = tmp_path / "bad.cat"
    bad.write_text("objects: 0\narrow f : 0 -> 0\narrow f : 0 -> 0\n")
    code, out, err = _run(capsys, "validate", str(bad))
    assert code == 2
    assert "line 3" in err and "duplicate arrow id f" in err


def test_category_law_failure_exits_one(capsys, tmp_path):
    bad = tmp_path / "assoc.cat"
    bad.write_text(
        "objects: 0\narrow e : 0 -> 0\narrow f : 0 -> 0\n"
        "compose e . e = e\ncompose e . f = f\ncompose f . e = e\ncompose f . f = e\n"
    )
    code, out, _ = _run(capsys, "validate", str(bad))
    assert code == 1
    assert out[0].endswith("category=FAIL")
    assert out[1].startswith("problem=")
    code, out, _ = _run(capsys, "build-cw", str(bad))
    assert code == 1 and out[0].startswith("category=FAIL problem=")
