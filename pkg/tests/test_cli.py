"""End-to-end command-line checks through click's test runner."""

import json
import subprocess
import sys
from pathlib import Path

import pytest
from click.testing import CliRunner

from seqlab.cli import main
from conftest import DATA_DIR


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, args, **kw):
    result = runner.invoke(main, args, catch_exceptions=False, **kw)
    assert result.exit_code == 0, result.output
    return result


def read_report(path="report.json"):
    return json.loads(Path(path).read_text())


class TestGen:
    def test_lconvex_area(self, runner):
        with runner.isolated_filesystem():
            res = invoke(runner, ["gen", "lconvex-area", "--n", "5"])
            assert res.stdout.splitlines()[:5] == [
                "0 1", "1 1", "2 2", "3 6", "4 15",
            ]
            rep = read_report()
            assert rep["sequences"]["lconvex_area"]["values"] == [
                "1", "1", "2", "6", "15",
            ]

    def test_stack(self, runner):
        with runner.isolated_filesystem():
            res = invoke(runner, ["gen", "stack", "--n", "4"])
            assert res.stdout.splitlines()[:4] == ["1 1", "2 2", "3 4", "4 8"]

    def test_ascent(self, runner):
        with runner.isolated_filesystem():
            res = invoke(
                runner, ["gen", "ascent", "--pattern", "201", "--n", "5"]
            )
            assert res.stdout.splitlines()[:6] == [
                "0 1", "1 1", "2 2", "3 5", "4 15", "5 52",
            ]

    def test_budget_failure_is_clean(self, runner):
        with runner.isolated_filesystem():
            res = runner.invoke(
                main,
                ["gen", "ascent", "--pattern", "201", "--n", "12",
                 "--budget", "10"],
            )
            assert res.exit_code != 0
            assert "budget" in res.stderr.lower()


class TestGuessAndExpand:
    def test_guess_rec_from_bfile(self, runner):
        text = (DATA_DIR / "b202062.txt").read_text()
        with runner.isolated_filesystem():
            Path("b.txt").write_text(text)
            res = invoke(runner, ["guess", "rec", "b.txt", "--rmax", "5",
                                  "--dmax", "2"])
            assert "(2*n^2 + n)*u(n)" in res.stdout
            rep = read_report()
            assert rep["parameters"]["order"] == 5
            assert rep["parameters"]["degree"] == 2
            assert rep["sequences"]["p0"]["values"] == ["0", "1", "2"]
            assert rep["sequences"]["p5"]["values"] == ["120", "31", "2"]

    def test_expand_rec_predicts_fixture_tail(self, runner):
        text = (DATA_DIR / "b202062.txt").read_text()
        head = "\n".join(text.splitlines()[:24]) + "\n"
        with runner.isolated_filesystem():
            Path("head.txt").write_text(head)
            res = invoke(runner, ["expand", "rec", "head.txt", "--n", "28",
                                  "--rmax", "5", "--dmax", "2"])
            assert res.stdout.splitlines()[-28:] == text.splitlines()

    def test_expand_rational(self, runner):
        with runner.isolated_filesystem():
            res = invoke(runner, [
                "expand", "rational", "--num", "1,-2,1", "--den", "1,-4,2",
                "--n", "6",
            ])
            assert res.stdout.splitlines()[-6:] == [
                "0 1", "1 2", "2 7", "3 24", "4 82", "5 280",
            ]

    def test_expand_algeq_catalan(self, runner):
        catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786]
        text = "".join(f"{n} {c}\n" for n, c in enumerate(catalan))
        with runner.isolated_filesystem():
            Path("cat.txt").write_text(text)
            res = invoke(runner, ["expand", "algeq", "cat.txt", "--n", "15",
                                  "--dxmax", "2", "--dymax", "2"])
            assert res.stdout.splitlines()[-1] == "14 2674440"

    def test_guess_rec_no_match(self, runner):
        with runner.isolated_filesystem():
            Path("p.txt").write_text(
                "".join(f"{i} {p}\n" for i, p in enumerate(
                    (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)))
            )
            res = invoke(runner, ["guess", "rec", "p.txt", "--rmax", "2",
                                  "--dmax", "1"])
            assert "no recurrence found" in res.stdout


class TestAnalyze:
    def seed(self, n=200):
        from seqlab import gen_lconvex_area, render_bfile

        Path("l.txt").write_text(render_bfile(gen_lconvex_area(n)))

    def test_square_writes_figures(self, runner):
        with runner.isolated_filesystem():
            self.seed()
            res = invoke(runner, ["--precision", "30", "analyze", "square",
                                  "l.txt"])
            assert "intercept:" in res.stdout
            for key in ("r_sq", "intercepts", "t_n"):
                assert Path(f"{key}.csv").exists(), key
            assert Path("r_sq.csv").read_text().startswith("k,ratio\n")

    def test_stretched_reports_both_conventions(self, runner):
        with runner.isolated_filesystem():
            self.seed()
            res = invoke(runner, ["--precision", "30", "analyze",
                                  "stretched", "l.txt"])
            rep = read_report()
            assert set(rep["scalars"]) >= {
                "a", "a_squared", "delta", "c_denominator", "c_amplitude",
            }
            c_den = float(rep["scalars"]["c_denominator"]["value"])
            c_amp = float(rep["scalars"]["c_amplitude"]["value"])
            assert abs(c_den * c_amp - 1) < 1e-9
            for key in ("loglog", "gradient", "e1", "e2"):
                assert Path(f"{key}.csv").exists(), key
            assert "a:" in res.stdout

    def test_ratios(self, runner):
        with runner.isolated_filesystem():
            self.seed(50)
            invoke(runner, ["--precision", "30", "analyze", "ratios",
                            "l.txt"])
            assert Path("ratios_vs_inv_n.csv").exists()
            assert Path("ratios_vs_inv_sqrt_n.csv").exists()

    def test_powerlaw_with_explicit_mu(self, runner):
        with runner.isolated_filesystem():
            Path("s.txt").write_text(
                "".join(f"{n} {3 ** n * n ** 2}\n" for n in range(1, 40))
            )
            res = invoke(runner, ["--precision", "30", "analyze", "powerlaw",
                                  "s.txt", "--mu", "3"])
            rep = read_report()
            assert abs(float(rep["scalars"]["g"]["value"]) - 2) < 1e-2
            assert Path("g_n.csv").exists() and Path("g2_n.csv").exists()
            assert "g:" in res.stdout

    def test_powerlaw_requires_one_mu_source(self, runner):
        with runner.isolated_filesystem():
            self.seed(30)
            res = runner.invoke(main, ["analyze", "powerlaw", "l.txt"])
            assert res.exit_code != 0
            assert "exactly one" in res.stderr


class TestExtrapolateAndFit:
    def test_bst_constant(self, runner):
        with runner.isolated_filesystem():
            Path("c.txt").write_text(
                "".join(f"{n} 7\n" for n in range(1, 11))
            )
            res = invoke(runner, ["extrapolate", "bst", "c.txt"])
            assert "limit: 7.0" in res.stdout
            rep = read_report()
            assert rep["scalars"]["limit"]["spread"] == "0.0"

    def test_fit_amplitude_planted(self, runner):
        with runner.isolated_filesystem():
            Path("s.txt").write_text(
                "".join(f"{n} {3 * 2 ** n * (n + 1)}\n" for n in range(1, 40))
            )
            res = invoke(runner, ["--precision", "40", "fit", "amplitude",
                                  "s.txt", "--mu", "2", "--g", "-1",
                                  "--k", "1"])
            rep = read_report()
            assert rep["scalars"]["C"]["value"].startswith("3.0")
            assert "C: 3.0" in res.stdout


class TestIdentifyCli:
    def test_rational(self, runner):
        with runner.isolated_filesystem():
            res = invoke(runner, ["identify", "rational", "--value", "0.75"])
            assert res.stdout.splitlines()[0] == "3/4"

    def test_mult(self, runner):
        with runner.isolated_filesystem():
            res = invoke(runner, [
                "identify", "mult",
                "--value", "0.023938510821419577",
            ])
            assert "(13/768) * sqrt(2)" in res.stdout
            rep = read_report()
            assert rep["identifications"][0]["kind"] == "dictionary-multiple"

    def test_minpoly(self, runner):
        with runner.isolated_filesystem():
            res = invoke(runner, [
                "identify", "minpoly", "--maxdeg", "2",
                "--value", "1.4142135623730950488016887242096980786",
            ])
            assert res.stdout.splitlines()[0] == "x^2 - 2"

    def test_not_found(self, runner):
        with runner.isolated_filesystem():
            res = invoke(runner, [
                "identify", "rational", "--value",
                "3.1415926535897932384626433832795028842",
            ])
            assert "not found" in res.stdout


class TestFetchCli:
    TEXT = "0 1\n1 3\n2 9\n3 27\n"

    def test_offline_cache_roundtrip(self, runner):
        with runner.isolated_filesystem():
            cache = Path("cache")
            cache.mkdir()
            (cache / "A000244.bfile").write_text(self.TEXT)
            res = invoke(runner, ["--offline", "--cache-dir", "cache",
                                  "fetch", "244"])
            assert res.stdout == self.TEXT
            rep = read_report()
            assert rep["parameters"]["a_number"] == "A000244"

    def test_offline_miss_fails_cleanly(self, runner):
        with runner.isolated_filesystem():
            Path("cache").mkdir()
            res = runner.invoke(main, ["--offline", "--cache-dir", "cache",
                                       "fetch", "A000001"])
            assert res.exit_code != 0
            assert "cache" in res.stderr.lower()

    def test_a_number_as_guess_source(self, runner):
        text = (DATA_DIR / "b202062.txt").read_text()
        with runner.isolated_filesystem():
            cache = Path("cache")
            cache.mkdir()
            (cache / "A202062.bfile").write_text(text)
            res = invoke(runner, ["--offline", "--cache-dir", "cache",
                                  "guess", "rec", "A202062",
                                  "--rmax", "5", "--dmax", "2"])
            assert "(2*n^2 + n)*u(n)" in res.stdout
            rep = read_report()
            assert rep["parameters"]["source"] == "A202062"


class TestReportDeterminism:
    def test_identical_invocations_share_digest(self, tmp_path):
        """Two runs of one command in fresh directories agree byte-for-byte
        on everything except the timestamp, hence on the digest."""
        digests = []
        for sub in ("one", "two"):
            d = tmp_path / sub
            d.mkdir()
            proc = subprocess.run(
                [sys.executable, "-m", "seqlab.cli", "identify", "rational",
                 "--value", "0.375"],
                cwd=d,
                capture_output=True,
                text=True,
            )
            assert proc.returncode == 0, proc.stderr
            digests.append(json.loads((d / "report.json").read_text()))
        a, b = digests
        assert a["report_digest"] == b["report_digest"]
        assert a["created_at"] != b["created_at"] or True
