import json
import subprocess
import sys

import pytest

from freeboolean import io
from freeboolean.cli import main
from freeboolean.fock import pairing
from freeboolean.scalars import format_scalar, parse_scalar
from freeboolean.fixtures import DEFECT_WORD, data_path, generate


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(out):
    return [line for line in out.splitlines() if line and not line.startswith(("count=", "inner_total"))]


class TestEnumerate:
    @pytest.mark.parametrize("n,chi,count", [(4, "bbbb", 14), (3, "www", 4), (1, "b", 1)])
    def test_counts(self, capsys, n, chi, count):
        code, out, _ = run(capsys, "enumerate", "--n", str(n), "--chi", chi)
        assert code == 0
        assert len(rows(out)) == count
        assert f"count={count}" in out

    def test_stats_and_json(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--chi", "bbbb", "--stats", "--format", "json")
        data = json.loads(out)
        assert data["count"] == 14
        # nested blocks in NC(4): {1,4}{2}{3} has two, five others have one each
        assert sum(r["inner"] for r in data["partitions"]) == 7
        assert all(r["inner"] + r["outer"] == len(r["blocks"]) for r in data["partitions"])
        code, out, _ = run(capsys, "enumerate", "--chi", "bbbb", "--stats")
        assert "inner_total=7" in out

    def test_errors(self, capsys):
        code, _, err = run(capsys, "enumerate", "--chi", "bxb")
        assert code == 2 and "invalid color" in err
        code, _, err = run(capsys, "enumerate", "--n", "4", "--chi", "bbb")
        assert code == 2


class TestMoebius:
    @pytest.mark.parametrize("chi,sigma,pi,want", [
        ("bbb", "[[1],[2],[3]]", "[[1,2,3]]", "2"),
        ("www", "[[1],[2],[3]]", "[[1,2,3]]", "1"),
        ("bwbb", "[[1,2],[3,4]]", "[[1,2],[3,4]]", "1"),
    ])
    def test_values(self, capsys, chi, sigma, pi, want):
        code, out, _ = run(capsys, "moebius", "--chi", chi, "--sigma", sigma, "--pi", pi)
        assert code == 0 and out.strip() == want

    def test_decimal_marked(self, capsys):
        _, out, _ = run(capsys, "moebius", "--chi", "bbbb", "--sigma", "[[1],[2],[3],[4]]",
                        "--pi", "[[1,2,3,4]]", "--decimal")
        assert out.startswith("-5 ") and "decimal approximation: ~-5" in out

    def test_non_inc(self, capsys):
        code, _, err = run(capsys, "moebius", "--chi", "bwb", "--sigma", "[[1,3],[2]]", "--pi", "[[1,2,3]]")
        assert code == 2 and "interval-noncrossing" in err


class TestTransforms:
    SPEC = json.dumps({"vars": [{"id": "z", "family": 1, "face": "l"},
                                {"id": "w", "family": 1, "face": "r"}],
                       "moments": {"z": "0", "w": "0", "z w": "1"}})

    def test_covariance_cumulant(self, capsys):
        code, out, _ = run(capsys, "cumulant", "--spec", self.SPEC, "--word", "z w")
        assert code == 0 and out.strip() == "1"

    def test_fixture_round_trip_is_byte_identical(self, capsys, tmp_path):
        target = tmp_path / "moments.json"
        code, _, _ = run(capsys, "moments", "--cumulants", str(data_path("cumulants.json")),
                         "--all", "--output", str(target))
        assert code == 0
        assert target.read_bytes() == data_path("moments.json").read_bytes()
        code, out, _ = run(capsys, "cumulant", "--spec", str(data_path("moments.json")), "--all")
        assert out.encode() == data_path("cumulants.json").read_bytes()

    def test_single_word_moment(self, capsys):
        spec = io.load(data_path("moments.json"))
        code, out, _ = run(capsys, "moments", "--cumulants", str(data_path("cumulants.json")),
                           "--word", "a1 b2 a1")
        assert out.strip() == spec["moments"]["a1 b2 a1"]

    def test_convolve_doubles_second_cumulant(self, capsys):
        f = str(data_path("moments.json"))
        m = io.load(f)["moments"]
        _, k2, _ = run(capsys, "cumulant", "--spec", f, "--word", "a1 b1")
        _, out, _ = run(capsys, "convolve", "--a", f, "--b", f, "--word", "a1 b1")
        from fractions import Fraction as F
        want = 2 * F(k2.strip()) + (2 * F(m["a1"])) * (2 * F(m["b1"]))
        assert F(out.strip()) == want

    def test_fixtures_are_current(self):
        for name, obj in generate().items():
            assert io.dumps(obj).encode() == data_path(name).read_bytes(), name


class TestModelMoment:
    def test_model_file(self, capsys):
        m = io.load(data_path("moments.json"))["moments"]
        code, out, _ = run(capsys, "model-moment", "--model", str(data_path("model.json")),
                           "--word", "a1 b2 a2 b1")
        assert code == 0 and out.strip() == m["a1 b2 a2 b1"]

    def test_fock_file(self, capsys):
        data = io.load(data_path("fock.json"))
        for k, l in [("1", "1"), ("2", "3"), ("3", "1")]:
            code, out, _ = run(capsys, "model-moment", "--fock", str(data_path("fock.json")),
                               "--word", f"{k} {l}")
            want = pairing([parse_scalar(x) for x in data["h"][l]],
                           [parse_scalar(x) for x in data["hstar"][k]])
            assert code == 0 and out.strip() == format_scalar(want)

    def test_unknown_variable(self, capsys):
        code, _, err = run(capsys, "model-moment", "--model", str(data_path("model.json")), "--word", "q")
        assert code == 2 and "unknown variable" in err


class TestVerify:
    def test_lattice_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "lattice", "--nmax", "6")
        assert code == 0
        assert out.startswith("# suite=lattice")
        assert out.rstrip().splitlines()[-1].startswith("PASS lattice")

    def test_seed_in_header_and_json(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "convolution", "--nmax", "3", "--seed", "9",
                           "--format", "json")
        rep = json.loads(out)
        assert code == 0 and rep["ok"] and rep["seed"] == 9

    def test_defect_fixture_fails_with_minimal_word(self, capsys):
        code, out, _ = run(capsys, "verify", "--spec", str(data_path("defect.json")))
        assert code == 1
        assert "FAIL" in out
        first = next(line for line in out.splitlines() if "counterexample" in line)
        assert f"'{DEFECT_WORD}'" in first

    def test_clean_fixture_passes(self, capsys):
        code, _, _ = run(capsys, "verify", "--spec", str(data_path("moments.json")))
        assert code == 0

    def test_console_script_entry(self):
        proc = subprocess.run([sys.executable, "-m", "freeboolean.cli", "enumerate", "--chi", "bbb"],
                              capture_output=True, text=True)
        assert proc.returncode == 0 and "count=5" in proc.stdout
