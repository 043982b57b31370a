import subprocess
import sys

import pytest

from _support import run_cli

PROMPT = ("Degrees and weights  `d1 w11 w12 ... d2 w21 w22 ...'\n"
          "  or `#lines #columns' (= `PolyDim #Points' or `#Points PolyDim'):\n")
TRIANGLE = "3 2\n1 0\n0 1\n-1 -1\n"


def test_interactive_prompts_and_quintic_line():
    rc, out, _ = run_cli(["poly"], "5 1 1 1 1 1\n")
    assert rc == 0
    assert out == PROMPT + "5 1 1 1 1 1 M:126 5 N:6 5 H:1,101 [-200]\n" + PROMPT


def test_matrix_prompt_names_the_shape():
    rc, out, _ = run_cli(["poly", "-v"], TRIANGLE)
    assert "Type the 6 coordinates as #pts=3 lines with dim=2 columns:\n" in out


def test_filter_mode_prints_no_prompts():
    rc, out, _ = run_cli(["poly", "-fe"], TRIANGLE)
    assert rc == 0
    assert out == ("3 2  Vertices of P-dual <-> Equations of P\n"
                   "   2  -1\n  -1   2\n  -1  -1\n")


def test_dual_round_trip_through_text():
    _, first, _ = run_cli(["poly", "-fe"], TRIANGLE)
    # the printed dual vertices are valid matrix input again
    _, second, _ = run_cli(["poly", "-fe"], "3 2\n" + first.split("\n", 1)[1])
    rows = [tuple(int(x) for x in line.split()) for line in second.splitlines()[1:]]
    assert sorted(rows) == sorted([(1, 0), (0, 1), (-1, -1)])


def test_transposed_matrix_input_is_accepted():
    _, a, _ = run_cli(["poly", "-fv"], TRIANGLE)
    _, b, _ = run_cli(["poly", "-fv"], "2 3\n1 0 -1\n0 1 -1\n")
    assert a == b


@pytest.mark.parametrize("args, stdin, code", [
    (["poly", "-f"], "5 1 1 1 1\n", 1),
    (["poly", "-fl"], "5 1 1 1 1 1\n", 2),
    (["bogus"], "", 1),
    (["cws", "-w3"], "", 2),
    (["cws", "-f"], "", 1),
    (["nef", "-f", "-H"], "", 2),
    (["mori", "-fb"], "", 2),
    (["mori", "-fMK"], "", 1),
    (["mori", "-fM"], "", 1),
    (["mori", "-f"], TRIANGLE, 1),
])
def test_exit_codes(args, stdin, code):
    rc, _, err = run_cli(args, stdin)
    assert rc == code
    assert err.startswith("latpoly")


def test_parse_error_reports_line():
    rc, out, err = run_cli(["poly", "-f"], "5 1 1 1 1 1\n3 1 x 1\n")
    assert rc == 1
    assert out.startswith("5 1 1 1 1 1 M:126")
    assert "line 2" in err


def test_capability_errors_do_not_stop_later_records():
    # the second record is not reflexive, so its Hodge data are skipped
    rc, out, _ = run_cli(["poly", "-fr"], "5 1 1 1 1 1\n3 2\n2 0\n0 2\n-2 -2\n4 1 1 1 1\n")
    assert rc == 0
    assert out.count("M:") == 2


def test_files_and_jobs(tmp_path):
    src = tmp_path / "in.txt"
    dst = tmp_path / "out.txt"
    src.write_text("5 1 1 1 1 1\n4 1 1 1 1\n6 1 1 1 1 2\n")
    rc, out, _ = run_cli(["poly", "--jobs", "2", str(src), str(dst)])
    assert rc == 0 and out == ""
    assert dst.read_text() == ("5 1 1 1 1 1 M:126 5 N:6 5 H:1,101 [-200]\n"
                               "4 1 1 1 1 M:35 4 N:5 4 Pic:1 Cor:0\n"
                               "6 1 1 1 1 2 M:130 5 N:6 5 H:1,103 [-204]\n")
    rc, serial, _ = run_cli(["poly", "-f"], src.read_text())
    assert serial == dst.read_text()


def test_symmetry_and_normal_form_lines():
    _, out, _ = run_cli(["poly", "-fS"], "5 1 1 1 1 1 /Z5: 0 1 2 3 4\n")
    assert out == "#GL(Z,4)-Symmetries=20, #VPM-Symmetries=120\n"
    _, a, _ = run_cli(["poly", "-fN"], "3402 40 41 486 1134 1701\n")
    _, b, _ = run_cli(["poly", "-fN"], "3486 41 42 498 1162 1743\n")
    assert a.splitlines()[1:] == b.splitlines()[1:]


def test_cws_subcommand():
    rc, out, _ = run_cli(["cws", "-f", "-N"], "4 5\n1 0 0 0 -1\n0 1 0 0 -1\n0 0 1 0 -1\n0 0 0 1 -1\n")
    assert out == "5 1 1 1 1 1\n"
    _, out, _ = run_cli(["cws", "-f", "-N"], "5 1 1 1 1 1\n")
    assert out == "Only PPL-input in Npoly2cws!\n"
    _, out, _ = run_cli(["cws", "-f", "-i"], "5 1 1 1 1 1\n7 1 1 1 2 3 3 3\n")
    assert out.splitlines()[0] == "5 1 1 1 1 1 M:126 5 N:6 5"


def test_nef_standard_output():
    rc, out, _ = run_cli(["nef", "-f", "-P"], "4 1 1 1 1\n")
    lines = out.splitlines()
    assert lines[0] == "4 1 1 1 1 M:35 4 N:5 4  codim=2 #part=2"
    assert lines[1].startswith("H:[0] P:0 V:")
    assert lines[-1].startswith("np=1 d:0 p:1")


def test_nef_gorenstein_mode():
    rc, out, _ = run_cli(["nef", "-f", "-G"], "4 2\n0 0\n0 1\n1 0\n1 1\n3 2\n0 0\n1 0\n0 1\n")
    lines = out.splitlines()
    assert lines[0].startswith("M:4 4 N:4 4")
    assert lines[1].startswith("Warning: Input has index 3, should be 2!")


def test_mori_filter_and_manual_mode():
    rc, out, _ = run_cli(["mori", "-fI"], "8 4 1 1 1 1 0  6 3 1 0 1 0 1\n")
    assert out.startswith("Incidence: ") and len(out.split()) == 8
    heptagon = ("2 7\n1 0 -1 -1 -1 -1 0\n0 1 2 1 0 -1 -1\n1\n"
                "7 1100000 0110000 0011000 0001100 0000110 0000011 1000001\n")
    rc, out, _ = run_cli(["mori", "-fMDgm"], heptagon)
    assert rc == 0
    assert "14 SR-ideal" in out and "6 MORI GENERATORS / dim(cone)=5 " in out
    rc, out, _ = run_cli(["mori", "-MDg"], heptagon)
    assert "`#triangulations': " in out


def test_help_screens():
    for sub in ("poly", "cws", "nef", "mori"):
        rc, out, _ = run_cli([sub, "-h"])
        assert rc == 0 and out.startswith("latpoly " + sub)


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "latpoly.cli.main", "poly", "-f"],
                         input="4 1 1 1 1\n", capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout == "4 1 1 1 1 M:35 4 N:5 4 Pic:1 Cor:0\n"
