import io
import subprocess
import sys

import pytest

from bbpdigits import cli, report


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_extract_log2():
    code, out = run("extract", "--constant", "log2", "--base", "2", "--pos", "0", "--count", "8")
    assert code == cli.EXIT_OK
    assert out == "1: 10110001 [confident]\n"


def test_extract_flawed_differs_from_exact():
    c1, flawed = run("extract", "--constant", "pi", "--base", "5", "--pos", "30", "--count", "5",
                     "--variant", "flawed", "--format", "structured")
    c2, exact = run("extract", "--constant", "pi", "--base", "5", "--pos", "30", "--count", "5",
                    "--variant", "exact", "--format", "structured")
    assert c1 == c2 == cli.EXIT_OK
    im = lambda text: [l for l in text.splitlines() if "name=Im" in l][0]
    assert im(flawed) != im(exact)
    assert "digits=31421" in im(exact)


@pytest.mark.parametrize("argv", [
    ("extract", "--pos", "0", "--count", "0"),
    ("extract", "--constant", "log2", "--base", "16", "--pos", "0", "--count", "4"),
    ("extract", "--constant", "pi", "--base", "16", "--variant", "flawed", "--pos", "0", "--count", "4"),
    ("extract", "--constant", "pi", "--method", "split", "--pos", "0", "--count", "4"),
    ("flaw-report", "--pos", "0", "--count", "1"),
    ("bn-table", "--count", "10001"),
    ("nonsense",),
])
def test_usage_errors(argv, capsys):
    code, _ = run(*argv)
    assert code == cli.EXIT_USAGE


def test_flaw_report_condition_message(capsys):
    run("flaw-report", "--pos", "0", "--count", "1")
    assert "log(2d+4r-1)/log(5) <= d" in capsys.readouterr().err


def test_verify_log2_and_pi():
    code, out = run("verify", "--constant", "log2", "--grid", "0,10,100,1000", "--count", "16")
    assert code == cli.EXIT_OK
    assert "8 windows tested, 8 match, 0 mismatch" in out
    code, out = run("verify", "--constant", "pi", "--base", "16", "--format", "structured")
    assert code == cli.EXIT_OK
    assert all("match=1" in l for l in out.splitlines()[1:])


def test_verify_base5_variants():
    code, out = run("verify", "--constant", "pi", "--base", "5", "--variant", "flawed", "--count", "8")
    assert code == cli.EXIT_FLAW_BY_DESIGN
    assert "MISMATCH" in out
    code, _ = run("verify", "--constant", "pi", "--base", "5", "--variant", "exact", "--count", "8")
    assert code == cli.EXIT_OK


def test_flaw_report_formats(tmp_path):
    fig = tmp_path / "frontier.png"
    code, text = run("flaw-report", "--pos", "30", "--count", "5", "--figure", str(fig))
    assert code == cli.EXIT_OK and fig.exists()
    assert "first mismatch (Im): 31" in text
    code, structured = run("flaw-report", "--pos", "30", "--count", "5", "--format", "structured")
    rep = report.parse_flaw_report(structured)
    assert rep.first_mismatch_im is not None and rep.invalid_terms
    assert report.parse_text_table(text) == [
        tuple(report._fmt(v) for v in report.term_values(t)) for t in rep.term_forensics
    ]


def test_bn_table(tmp_path):
    code, out = run("bn-table", "--count", "5", "--format", "structured", "--figure", str(tmp_path / "bn.png"))
    assert code == cli.EXIT_OK
    lines = out.splitlines()
    assert lines[1].startswith("row n=0 b=1 ") and lines[2].startswith("row n=1 b=-1 ")
    assert lines[3].startswith("row n=2 b=-19 ")
    assert (tmp_path / "bn.png").exists()


def test_oracle_cache_env(tmp_path, monkeypatch):
    path = tmp_path / "oracle.txt"
    monkeypatch.setenv(cli.CACHE_ENV, str(path))
    code, _ = run("verify", "--constant", "log2", "--grid", "0,5", "--count", "8")
    assert code == cli.EXIT_OK
    assert path.read_text().startswith("# bbpdigits oracle cache v1")


def test_precision_refusal_exit(monkeypatch):
    from bbpdigits import oracle

    def refuse(*a, **k):
        raise oracle.PrecisionError("too coarse")

    monkeypatch.setattr(oracle, "oracle_window", refuse)
    code, _ = run("verify", "--constant", "log2", "--grid", "0", "--count", "8")
    assert code == cli.EXIT_PRECISION


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bbpdigits", "extract", "--constant", "pi",
                           "--base", "16", "--pos", "0", "--count", "6"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "1: 243f6a [confident]"
